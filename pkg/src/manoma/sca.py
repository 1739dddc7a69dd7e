"""Antenna-position search by damped majorize-minimize descent.

Minimizes F(r) = -|h(r)|^2 over the square move region.  F is a finite sum
of cosines of affine functions of r, so every second derivative is bounded;
``lipschitz_delta`` turns those bounds into a single curvature constant
delta with delta*I >= hess F everywhere.  Each iteration minimizes the
isotropic quadratic model

    F(anchor) + grad(anchor).(r - anchor) + delta/2 * |r - anchor|^2

over the box (a separable clamp of anchor - grad/delta), then blends with the
previous iterate using the damping factor eta.  Because the quadratic model
upper-bounds F and is convex, any eta in (0, 1] gives monotone descent:
F(new) <= model(new) <= eta*model(step) + (1-eta)*model(anchor)
<= model(anchor) = F(anchor).  The loop therefore admits eta = 1 even though
damping below 1 is the conventional choice.

Per-iteration cost scales with the number of receive-path pairs, O(L^2) for
L receive paths; forming the coupling vector beforehand costs O(N*L^2) for
an N-element array.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernels
from .channel import CouplingMatrix, UserChannelModel, _direction_cosines, expansion_terms
from .geometry import MoveRegion, Position2D


class Termination(Enum):
    CONVERGED = "converged"
    MAX_ITERATIONS = "max_iterations"
    STATIONARY = "stationary"


_TERM_FROM_CODE = {
    _kernels.TERM_CONVERGED: Termination.CONVERGED,
    _kernels.TERM_MAX_ITERATIONS: Termination.MAX_ITERATIONS,
    _kernels.TERM_STATIONARY: Termination.STATIONARY,
}


@dataclass(frozen=True)
class ScaConfig:
    """Iteration controls for the position search.

    damping: blend factor eta in (0, 1] toward the surrogate minimizer.
    tolerance: step-norm stopping threshold, in meters.
    max_iterations: iteration cap per start.
    multistart_count: number of descent starts (the given start plus
        screened pseudo-random points in the region); the best final
        objective wins.
    delta_floor: curvature below this is treated as zero (stationary guard
        for channels whose power does not depend on position).
    """

    damping: float = 0.9
    tolerance: float = 1e-6
    max_iterations: int = 200
    multistart_count: int = 1
    delta_floor: float = 1e-18

    def __post_init__(self):
        if not (0.0 < self.damping <= 1.0):
            raise ValueError(f"damping must lie in (0, 1], got {self.damping}")
        if not (math.isfinite(self.tolerance) and self.tolerance > 0.0):
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if self.multistart_count < 1:
            raise ValueError(f"multistart_count must be >= 1, got {self.multistart_count}")
        if self.delta_floor < 0.0:
            raise ValueError(f"delta_floor must be >= 0, got {self.delta_floor}")


@dataclass(frozen=True)
class ScaTrace:
    """Iterate path of one descent run; objective values are nonincreasing."""

    iterates: tuple[Position2D, ...]
    objective_values: tuple[float, ...]
    termination: Termination

    def __post_init__(self):
        if len(self.iterates) != len(self.objective_values):
            raise ValueError("iterates and objective_values must have equal length")
        prev = None
        for v in self.objective_values:
            if prev is not None and v > prev + 1e-12 * abs(prev) + 1e-15:
                raise ValueError(f"objective increased along the trace: {prev} -> {v}")
            prev = v

    @property
    def final_position(self) -> Position2D:
        return self.iterates[-1]

    @property
    def final_objective(self) -> float:
        return self.objective_values[-1]


def objective(r: Position2D, m: CouplingMatrix, model: UserChannelModel) -> float:
    """F(r) = -|h(r)|^2 (nonpositive up to rounding)."""
    diag_sum, amp, da, db, phase = expansion_terms(m, model)
    return -_kernels.power_one(r.x, r.y, diag_sum, amp, da, db, phase, model.wavenumber)


def gradient(r: Position2D, m: CouplingMatrix, model: UserChannelModel) -> np.ndarray:
    """Analytic gradient of F at r.

    From the cosine expansion: dF/dx = sum over path pairs of
    (2*pi/wavelength) * amp * sin(u) * da (and analogously for y with db),
    with u the per-pair phase argument.
    """
    _, amp, da, db, phase = expansion_terms(m, model)
    gx, gy = _kernels.grad_one(r.x, r.y, amp, da, db, phase, model.wavenumber)
    return np.array([gx, gy])


def lipschitz_delta(m: CouplingMatrix, model: UserChannelModel) -> float:
    """Curvature constant delta with delta*I >= hess F everywhere.

    Bounds each second derivative by the pair sums

        A = (8*pi^2/wl^2) * sum |M[k,l]| * (a_k - a_l)^2
        B = (8*pi^2/wl^2) * sum |M[k,l]| * (b_k - b_l)^2
        C = (8*pi^2/wl^2) * sum |M[k,l]| * |a_k - a_l| * |b_k - b_l|

    and returns sqrt(A^2 + B^2 + 2*C^2), which dominates the Frobenius (hence
    spectral) norm of the Hessian.  The cross factors enter in absolute value
    so C is a valid bound on |d2F/dxdy| regardless of sign cancellation.
    Position-independent.
    """
    a, b = _direction_cosines(model.rx_paths)
    k_idx, l_idx = np.triu_indices(m.order, k=1)
    if len(k_idx) == 0:
        return 0.0
    mags = np.abs(m.entries[k_idx, l_idx])
    da = a[k_idx] - a[l_idx]
    db = b[k_idx] - b[l_idx]
    scale = 8.0 * math.pi**2 / model.carrier_wavelength**2
    a_bound = scale * float(np.dot(mags, da * da))
    b_bound = scale * float(np.dot(mags, db * db))
    c_bound = scale * float(np.dot(mags, np.abs(da) * np.abs(db)))
    return math.sqrt(a_bound**2 + b_bound**2 + 2.0 * c_bound**2)


def surrogate(
    r: Position2D,
    anchor: Position2D,
    m: CouplingMatrix,
    model: UserChannelModel,
    delta: float,
) -> float:
    """Quadratic upper model of F around the anchor, evaluated at r."""
    dr = np.array([r.x - anchor.x, r.y - anchor.y])
    g = gradient(anchor, m, model)
    return objective(anchor, m, model) + float(g @ dr) + 0.5 * delta * float(dr @ dr)


def surrogate_step(
    anchor: Position2D,
    m: CouplingMatrix,
    model: UserChannelModel,
    delta: float,
    region: MoveRegion,
    delta_floor: float = 1e-18,
) -> Position2D:
    """Exact minimizer of the surrogate over the box.

    The isotropic quadratic makes the box projection separable, so the
    minimizer is the coordinate-wise clamp of anchor - grad/delta.  With
    vanishing curvature or gradient the anchor is returned unchanged.
    """
    if delta <= delta_floor:
        return anchor
    g = gradient(anchor, m, model)
    if g[0] == 0.0 and g[1] == 0.0:
        return anchor
    x, y = region.clamp(anchor.x - g[0] / delta, anchor.y - g[1] / delta)
    return Position2D(x, y)


def optimize_position(
    start: Position2D,
    m: CouplingMatrix,
    model: UserChannelModel,
    region: MoveRegion,
    cfg: ScaConfig,
    multistart_seed: int = 0,
) -> tuple[Position2D, ScaTrace]:
    """Run the damped descent from ``start``; return best position and its trace.

    With multistart_count > 1, the extra starts are deterministic
    pseudo-random points in the region, drawn from a generator seeded by
    ``multistart_seed`` (so reruns are reproducible).  The candidate pool is
    oversampled (16 points per extra start) and screened by objective value,
    keeping only the most promising candidates as starts: the descent is
    local, and plain i.i.d. starts waste runs on weak basins.  The run with
    the lowest final objective wins; ties go to the earliest start.  Every
    iterate of every run stays inside the region.  Raises ValueError when
    ``start`` lies outside the region.
    """
    if not region.contains(start):
        raise ValueError(f"start {start} lies outside the region (half_side={region.half_side})")
    diag_sum, amp, da, db, phase = expansion_terms(m, model)
    delta = lipschitz_delta(m, model)

    starts = [start]
    if cfg.multistart_count > 1:
        rng = np.random.default_rng(multistart_seed)
        h = region.half_side
        extra = cfg.multistart_count - 1
        cand_x = rng.uniform(-h, h, 16 * extra)
        cand_y = rng.uniform(-h, h, 16 * extra)
        vals = _kernels.power_many(cand_x, cand_y, diag_sum, amp, da, db, phase, model.wavenumber)
        for i in np.argsort(-vals, kind="stable")[:extra]:
            starts.append(Position2D(float(cand_x[i]), float(cand_y[i])))

    best_trace = None
    for s in starts:
        xs, ys, fs, code = _kernels.sca_path(
            s.x,
            s.y,
            diag_sum,
            amp,
            da,
            db,
            phase,
            model.wavenumber,
            delta,
            region.half_side,
            cfg.damping,
            cfg.tolerance,
            cfg.max_iterations,
            cfg.delta_floor,
        )
        trace = ScaTrace(
            iterates=tuple(Position2D(float(x), float(y)) for x, y in zip(xs, ys)),
            objective_values=tuple(float(f) for f in fs),
            termination=_TERM_FROM_CODE[code],
        )
        if best_trace is None or trace.final_objective < best_trace.final_objective:
            best_trace = trace
    return best_trace.final_position, best_trace
