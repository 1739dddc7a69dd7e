"""Random scenario generation, Monte Carlo trials, sweeps and aggregation.

Channel statistics: per user, all departure/arrival elevations and azimuths
are i.i.d. uniform on [-pi/2, pi/2]; the path coupling matrix is diagonal
with i.i.d. complex Gaussian entries of variance c0 * d^-beta / L, where
c0 = (wavelength / 4 pi)^2 is the reference-distance gain, d the user's
distance and L the path count.

Reproducibility: the generator for trial i is ``default_rng([master_seed, i])``
(NumPy SeedSequence entropy, PCG64), a pure function of the master seed and
the trial index.  Trials are therefore independent of execution order and of
worker count, and sweeps that keep the seed share identical channel draws
across sweep points (common random numbers): the region size and the
transmit power do not touch the draw stream.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from .allocation import LinkBudget
from .channel import UserChannelModel
from .geometry import AntennaArray, MoveRegion, PathAngles, planar_array
from .sca import ScaConfig
from .schemes import (
    Scheme,
    SchemeResult,
    eval_conventional_noma,
    eval_oma,
    eval_oma_ma,
    eval_proposed,
)


@dataclass(frozen=True)
class ScenarioSpec:
    """Physical and statistical parameters of the two-user downlink scenario."""

    n_antennas: int = 16
    distances: tuple[float, float] = (60.0, 100.0)
    carrier_wavelength: float = 0.1
    path_count: int = 10
    path_loss_exponent: float = 2.8
    noise_power: float = 1e-12
    sinr_threshold: float = 10.0
    region_half_side: float = 0.15
    total_power: float = 1.0
    master_seed: int = 42

    def __post_init__(self):
        if self.n_antennas < 1:
            raise ValueError("n_antennas must be >= 1")
        if len(self.distances) != 2 or any(d <= 0 for d in self.distances):
            raise ValueError("distances must be two positive values")
        for name in ("carrier_wavelength", "path_loss_exponent", "noise_power",
                     "sinr_threshold", "total_power"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0.0):
                raise ValueError(f"{name} must be positive, got {v}")
        if self.path_count < 1:
            raise ValueError("path_count must be >= 1")
        if not (math.isfinite(self.region_half_side) and self.region_half_side >= 0.0):
            raise ValueError("region_half_side must be >= 0")
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must fit in 64 bits")

    @property
    def per_antenna_power(self) -> float:
        return self.total_power / self.n_antennas

    @property
    def reference_gain(self) -> float:
        """Expected channel gain at 1 m, (wavelength / 4 pi)^2; derived, never stored."""
        return (self.carrier_wavelength / (4.0 * math.pi)) ** 2

    def path_gain(self, distance: float) -> float:
        return self.reference_gain * distance ** (-self.path_loss_exponent)

    def link_budget(self) -> LinkBudget:
        return LinkBudget(
            per_antenna_power=self.per_antenna_power,
            noise_power=self.noise_power,
            sinr_threshold=self.sinr_threshold,
        )

    def make_array(self) -> AntennaArray:
        return planar_array(self.n_antennas, self.carrier_wavelength / 2.0)


@dataclass
class ScenarioDraw:
    """One realized channel pair plus everything needed to grade the schemes."""

    users: tuple[UserChannelModel, UserChannelModel]
    array: AntennaArray
    link: LinkBudget
    regions: tuple[MoveRegion, MoveRegion]
    trial_index: int
    start_seeds: tuple[int, int]


def _draw_angles(rng, count: int) -> tuple[PathAngles, ...]:
    half_pi = math.pi / 2.0
    elev = rng.uniform(-half_pi, half_pi, count)
    azim = rng.uniform(-half_pi, half_pi, count)
    return tuple(PathAngles(float(e), float(a)) for e, a in zip(elev, azim))


def draw_scenario(spec: ScenarioSpec, trial_index: int) -> ScenarioDraw:
    """Deterministic draw for (master_seed, trial_index); bit-stable across reruns."""
    if trial_index < 0:
        raise ValueError("trial_index must be >= 0")
    rng = np.random.default_rng([spec.master_seed, trial_index])
    users = []
    for distance in spec.distances:
        tx_paths = _draw_angles(rng, spec.path_count)
        rx_paths = _draw_angles(rng, spec.path_count)
        variance = spec.path_gain(distance) / spec.path_count
        sd = math.sqrt(variance / 2.0)
        diag = rng.normal(0.0, sd, spec.path_count) + 1j * rng.normal(0.0, sd, spec.path_count)
        users.append(
            UserChannelModel(
                tx_paths=tx_paths,
                rx_paths=rx_paths,
                prm=np.diag(diag),
                carrier_wavelength=spec.carrier_wavelength,
            )
        )
    start_seeds = tuple(int(s) for s in rng.integers(0, 2**63, size=2))
    region = MoveRegion(spec.region_half_side)
    return ScenarioDraw(
        users=(users[0], users[1]),
        array=spec.make_array(),
        link=spec.link_budget(),
        regions=(region, region),
        trial_index=trial_index,
        start_seeds=start_seeds,
    )


@dataclass(frozen=True)
class TrialRecord:
    """All four scheme results on one draw."""

    trial_index: int
    proposed: SchemeResult
    conventional_noma: SchemeResult
    conventional_oma: SchemeResult
    oma_ma: SchemeResult

    def result(self, scheme: Scheme) -> SchemeResult:
        return {
            Scheme.PROPOSED_MA_NOMA: self.proposed,
            Scheme.CONVENTIONAL_NOMA: self.conventional_noma,
            Scheme.CONVENTIONAL_OMA: self.conventional_oma,
            Scheme.OMA_MA: self.oma_ma,
        }[scheme]


@dataclass(frozen=True)
class SchemeStats:
    """Monte Carlo aggregate for one scheme."""

    mean_rate_user1: float
    mean_rate_user2: float
    outage_prob_user1: float
    outage_prob_user2: float

    @property
    def mean_sum_rate(self) -> float:
        return self.mean_rate_user1 + self.mean_rate_user2


@dataclass(frozen=True)
class AggregateStats:
    trials: int
    per_scheme: dict[Scheme, SchemeStats] = field(repr=False)


def run_trial(draw: ScenarioDraw, cfg: ScaConfig) -> TrialRecord:
    """Grade all four schemes on one draw; pure function of its inputs."""
    return TrialRecord(
        trial_index=draw.trial_index,
        proposed=eval_proposed(draw, cfg),
        conventional_noma=eval_conventional_noma(draw),
        conventional_oma=eval_oma(draw),
        oma_ma=eval_oma_ma(draw, cfg),
    )


def run_trials(
    spec: ScenarioSpec, trials: int, cfg: ScaConfig, workers: int = 1
) -> list[TrialRecord]:
    """Run ``trials`` independent trials; results ordered by trial index.

    Each trial is a pure function of (spec, index, cfg), so the outcome is
    identical for any worker count.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")

    def one(index: int) -> TrialRecord:
        return run_trial(draw_scenario(spec, index), cfg)

    if workers <= 1:
        return [one(i) for i in range(trials)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, range(trials)))


def aggregate(records: list[TrialRecord]) -> AggregateStats:
    """Per-scheme means and outage frequencies, reduced in trial order."""
    if not records:
        raise ValueError("cannot aggregate an empty record list")
    n = len(records)
    per_scheme = {}
    for scheme in Scheme:
        results = [rec.result(scheme) for rec in records]
        per_scheme[scheme] = SchemeStats(
            mean_rate_user1=math.fsum(r.rate_user1 for r in results) / n,
            mean_rate_user2=math.fsum(r.rate_user2 for r in results) / n,
            outage_prob_user1=sum(r.outage_user1 for r in results) / n,
            outage_prob_user2=sum(r.outage_user2 for r in results) / n,
        )
    return AggregateStats(per_scheme=per_scheme, trials=n)


class SweepAxis(Enum):
    REGION_SIZE = "region_size"
    TOTAL_POWER = "total_power"


@dataclass(frozen=True)
class Sweep:
    """One experiment axis with its values.

    REGION_SIZE values are normalized region sides (region side over
    wavelength); TOTAL_POWER values are in watts.
    """

    axis: SweepAxis
    values: tuple[float, ...]

    def __post_init__(self):
        if not self.values:
            raise ValueError("sweep needs at least one value")


def _spec_at(spec: ScenarioSpec, axis: SweepAxis, value: float) -> ScenarioSpec:
    if axis is SweepAxis.REGION_SIZE:
        if value < 0:
            raise ValueError("normalized region size must be >= 0")
        return replace(spec, region_half_side=value * spec.carrier_wavelength / 2.0)
    if axis is SweepAxis.TOTAL_POWER:
        if value <= 0:
            raise ValueError("total power must be positive")
        return replace(spec, total_power=value)
    raise ValueError(f"unknown sweep axis: {axis}")


def run_sweep(
    spec: ScenarioSpec,
    sweep: Sweep,
    trials: int,
    cfg: ScaConfig,
    workers: int = 1,
) -> list[tuple[float, AggregateStats]]:
    """Aggregate stats per sweep value, under common random numbers.

    The same (master_seed, trial_index) draws recur at every sweep point:
    a power sweep reuses identical channels and positions, a region sweep
    reuses identical angles and path couplings and varies only the feasible
    region.
    """
    return [
        (value, aggregate(run_trials(_spec_at(spec, sweep.axis, value), trials, cfg, workers)))
        for value in sweep.values
    ]
