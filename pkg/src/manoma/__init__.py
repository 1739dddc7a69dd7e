"""Two-user downlink NOMA with receiver-side movable antennas.

Far-field channel evaluation as a function of antenna position, closed-form
two-user power allocation with outage case analysis, a damped
majorize-minimize position optimizer, and a reproducible Monte Carlo harness
comparing the proposed scheme against fixed-antenna NOMA and orthogonal
baselines.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .allocation import (
    AllocBounds,
    AllocationCase,
    AllocationOutcome,
    GainPair,
    LinkBudget,
    alloc_bounds,
    alloc_metric,
    alloc_metric_derivative,
    classify_and_allocate,
    sinr_and_rates,
)
from .channel import (
    CouplingMatrix,
    UserChannelModel,
    channel_gain,
    channel_power_expansion,
    coupling_matrix,
    expansion_terms,
    propagation_diff_rx,
    propagation_diff_tx,
    receive_frv,
    transmit_frm,
)
from .config import ConfigError, RunConfig, default_config, parse_config
from .geometry import ORIGIN, AntennaArray, MoveRegion, PathAngles, Position2D, planar_array
from .oracles import GridSpec, fd_gradient, fd_hessian, grid_search_alpha, grid_search_position
from .scenario import (
    AggregateStats,
    ScenarioDraw,
    ScenarioSpec,
    SchemeStats,
    Sweep,
    SweepAxis,
    TrialRecord,
    aggregate,
    draw_scenario,
    run_sweep,
    run_trial,
    run_trials,
)
from .sca import (
    ScaConfig,
    ScaTrace,
    Termination,
    gradient,
    lipschitz_delta,
    objective,
    optimize_position,
    surrogate,
    surrogate_step,
)
from .schemes import (
    Scheme,
    SchemeResult,
    eval_conventional_noma,
    eval_oma,
    eval_oma_ma,
    eval_proposed,
)
from .units import db_to_linear, dbm_to_watts

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "__version__",
    # geometry
    "ORIGIN",
    "AntennaArray",
    "MoveRegion",
    "PathAngles",
    "Position2D",
    "planar_array",
    # channel
    "CouplingMatrix",
    "UserChannelModel",
    "channel_gain",
    "channel_power_expansion",
    "coupling_matrix",
    "expansion_terms",
    "propagation_diff_rx",
    "propagation_diff_tx",
    "receive_frv",
    "transmit_frm",
    # allocation
    "AllocBounds",
    "AllocationCase",
    "AllocationOutcome",
    "GainPair",
    "LinkBudget",
    "alloc_bounds",
    "alloc_metric",
    "alloc_metric_derivative",
    "classify_and_allocate",
    "sinr_and_rates",
    # sca
    "ScaConfig",
    "ScaTrace",
    "Termination",
    "gradient",
    "lipschitz_delta",
    "objective",
    "optimize_position",
    "surrogate",
    "surrogate_step",
    # schemes
    "Scheme",
    "SchemeResult",
    "eval_conventional_noma",
    "eval_oma",
    "eval_oma_ma",
    "eval_proposed",
    # scenario
    "AggregateStats",
    "ScenarioDraw",
    "ScenarioSpec",
    "SchemeStats",
    "Sweep",
    "SweepAxis",
    "TrialRecord",
    "aggregate",
    "draw_scenario",
    "run_sweep",
    "run_trial",
    "run_trials",
    # oracles
    "GridSpec",
    "fd_gradient",
    "fd_hessian",
    "grid_search_alpha",
    "grid_search_position",
    # config / units
    "ConfigError",
    "RunConfig",
    "default_config",
    "parse_config",
    "db_to_linear",
    "dbm_to_watts",
]
