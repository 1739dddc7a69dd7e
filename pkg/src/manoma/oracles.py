"""Brute-force and finite-difference oracles.

These back the test suite and the ``validate`` CLI command.  They share no
stepping or bound arithmetic with the position optimizer or the allocator's
case rules: the grid searches enumerate candidates exhaustively, and the
difference quotients below touch only the objective callables they are
given.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .allocation import GainPair, LinkBudget, alloc_metric
from .channel import CouplingMatrix, UserChannelModel, expansion_terms
from .geometry import MoveRegion, PathAngles, Position2D


@dataclass(frozen=True)
class GridSpec:
    """Uniform scan resolution (points per axis or per interval)."""

    resolution: int

    def __post_init__(self):
        if self.resolution < 2:
            raise ValueError(f"resolution must be >= 2, got {self.resolution}")


def grid_search_position(
    m: CouplingMatrix,
    model: UserChannelModel,
    region: MoveRegion,
    grid: GridSpec,
) -> tuple[Position2D, float]:
    """Exhaustive |h|^2 maximization on a resolution x resolution grid.

    Ties break toward the lowest linear grid index, so the result does not
    depend on evaluation order.
    """
    diag_sum, amp, da, db, phase = expansion_terms(m, model)
    x, y, val = _kernels.grid_scan(
        grid.resolution, region.half_side, diag_sum, amp, da, db, phase, model.wavenumber
    )
    return Position2D(x, y), val


def grid_search_alpha(
    g: GainPair, lb: LinkBudget, grid: GridSpec
) -> tuple[float, float] | None:
    """Scan the allocation metric over the feasible power-share interval.

    The interval [lower, min(upper_strong, upper_weak)] is recomputed here
    from first principles and clipped to [0, 1]; returns (argmax, max) or
    None when the interval is empty (no feasible share exists).
    """
    rho = lb.snr_ratio
    g0 = lb.sinr_threshold
    if g.strong_gain <= 0.0:
        return None
    rs = rho * g.strong_gain
    lo = g0 / rs
    hi = (rs - g0) / (rs * (1.0 + g0))
    if g.weak_gain > 0.0:
        rw = rho * g.weak_gain
        hi = min(hi, (rw - g0) / (rw * (1.0 + g0)))
    else:
        return None
    lo = max(lo, 0.0)
    hi = min(hi, 1.0)
    if hi < lo:
        return None
    alphas = np.linspace(lo, hi, grid.resolution)
    vals = alloc_metric(alphas, g, lb)
    i = int(np.argmax(vals))
    return float(alphas[i]), float(vals[i])


def fd_gradient(f, r: Position2D, step: float) -> np.ndarray:
    """Central-difference gradient of a scalar function of position."""
    if step <= 0.0:
        raise ValueError("step must be positive")
    gx = (f(Position2D(r.x + step, r.y)) - f(Position2D(r.x - step, r.y))) / (2.0 * step)
    gy = (f(Position2D(r.x, r.y + step)) - f(Position2D(r.x, r.y - step))) / (2.0 * step)
    return np.array([gx, gy])


def fd_hessian(f, r: Position2D, step: float, return_residual: bool = False):
    """Central-difference Hessian, symmetrized as (H + H^T)/2.

    The two off-diagonal estimates use the same four corner evaluations in
    different summation orders, so the pre-symmetrization residual measures
    pure rounding noise.  With ``return_residual`` the Frobenius norm of
    H - H^T (relative to the symmetrized norm) is returned alongside.
    """
    if step <= 0.0:
        raise ValueError("step must be positive")
    h2 = step * step
    f0 = f(r)
    fxp = f(Position2D(r.x + step, r.y))
    fxm = f(Position2D(r.x - step, r.y))
    fyp = f(Position2D(r.x, r.y + step))
    fym = f(Position2D(r.x, r.y - step))
    fpp = f(Position2D(r.x + step, r.y + step))
    fpm = f(Position2D(r.x + step, r.y - step))
    fmp = f(Position2D(r.x - step, r.y + step))
    fmm = f(Position2D(r.x - step, r.y - step))
    hxx = (fxp - 2.0 * f0 + fxm) / h2
    hyy = (fyp - 2.0 * f0 + fym) / h2
    hxy = ((fpp - fpm) - (fmp - fmm)) / (4.0 * h2)
    hyx = ((fpp - fmp) - (fpm - fmm)) / (4.0 * h2)
    raw = np.array([[hxx, hxy], [hyx, hyy]])
    sym = 0.5 * (raw + raw.T)
    if not return_residual:
        return sym
    denom = max(float(np.linalg.norm(sym)), 1e-300)
    residual = float(np.linalg.norm(raw - raw.T)) / denom
    return sym, residual


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _sample_model(rng, n_paths: int, wavelength: float, gain_scale: float) -> UserChannelModel:
    half_pi = math.pi / 2.0
    tx = tuple(
        PathAngles(float(e), float(a))
        for e, a in zip(rng.uniform(-half_pi, half_pi, n_paths), rng.uniform(-half_pi, half_pi, n_paths))
    )
    rx = tuple(
        PathAngles(float(e), float(a))
        for e, a in zip(rng.uniform(-half_pi, half_pi, n_paths), rng.uniform(-half_pi, half_pi, n_paths))
    )
    sd = math.sqrt(gain_scale / n_paths / 2.0)
    diag = rng.normal(0.0, sd, n_paths) + 1j * rng.normal(0.0, sd, n_paths)
    return UserChannelModel(tx, rx, np.diag(diag), wavelength)


def validation_report(seed: int = 0) -> list[CheckResult]:
    """Run the oracle battery; used by the ``validate`` CLI command.

    Covers: cosine expansion vs direct gain product, analytic gradient vs
    central differences, curvature constant vs finite-difference Hessian
    eigenvalues, descent runs vs exhaustive grid search, the closed-form
    power share vs a metric scan, and a case-rule scan checking coverage and
    that the unreachable strong-user-only-outage branch never fires.
    """
    from .allocation import AllocationCase, classify_and_allocate
    from .channel import channel_gain, channel_power_expansion, coupling_matrix
    from .geometry import planar_array
    from .sca import ScaConfig, gradient, lipschitz_delta, objective, optimize_position

    rng = np.random.default_rng(seed)
    wavelength = 0.1
    array = planar_array(16, wavelength / 2.0)
    region = MoveRegion(1.5 * wavelength)
    checks: list[CheckResult] = []

    # Expansion identity: cosine expansion vs |f^T S G 1|^2.
    worst = 0.0
    for _ in range(200):
        model = _sample_model(rng, 10, wavelength, 1.0)
        m = coupling_matrix(array, model)
        r = Position2D(*(rng.uniform(-region.half_side, region.half_side, 2)))
        direct = abs(channel_gain(r, array, model)) ** 2
        expand = channel_power_expansion(r, m, model)
        worst = max(worst, abs(expand - direct) / max(direct, 1e-300))
    checks.append(
        CheckResult("expansion-vs-gain", worst < 1e-9, f"max relative error {worst:.3e} (< 1e-9)")
    )

    # Analytic gradient vs central differences.
    worst = 0.0
    for _ in range(20):
        model = _sample_model(rng, 8, wavelength, 1.0)
        m = coupling_matrix(array, model)
        for _ in range(5):
            r = Position2D(*(rng.uniform(-region.half_side, region.half_side, 2)))
            ana = gradient(r, m, model)
            num = fd_gradient(lambda p: objective(p, m, model), r, 1e-6 * wavelength)
            scale = max(float(np.linalg.norm(ana)), float(np.linalg.norm(num)), 1e-12)
            worst = max(worst, float(np.linalg.norm(ana - num)) / scale)
    checks.append(
        CheckResult("gradient-vs-fd", worst < 1e-5, f"max relative error {worst:.3e} (< 1e-5)")
    )

    # Curvature constant dominates finite-difference Hessian eigenvalues.
    violations = 0
    for _ in range(20):
        model = _sample_model(rng, 8, wavelength, 1.0)
        m = coupling_matrix(array, model)
        delta = lipschitz_delta(m, model)
        for _ in range(5):
            r = Position2D(*(rng.uniform(-region.half_side, region.half_side, 2)))
            hess = fd_hessian(lambda p: objective(p, m, model), r, 1e-4 * wavelength)
            top = float(np.max(np.abs(np.linalg.eigvalsh(hess))))
            if top > delta * (1.0 + 1e-6):
                violations += 1
    checks.append(
        CheckResult("hessian-bound", violations == 0, f"{violations} eigenvalue excesses (want 0)")
    )

    # Descent runs vs exhaustive grid search.
    cfg = ScaConfig(multistart_count=8)
    grid = GridSpec(201)
    hits = 0
    trials = 20
    for t in range(trials):
        model = _sample_model(rng, 10, wavelength, 1.0)
        m = coupling_matrix(array, model)
        _, trace = optimize_position(
            Position2D(0.0, 0.0), m, model, region, cfg, multistart_seed=seed * 1000 + t
        )
        _, best = grid_search_position(m, model, region, grid)
        if -trace.final_objective >= 0.90 * best:
            hits += 1
    checks.append(
        CheckResult("sca-vs-grid", hits >= int(0.9 * trials), f"{hits}/{trials} within 90% of grid max")
    )

    # Closed-form share vs metric scan on feasible draws.
    lb = LinkBudget(per_antenna_power=1.0, noise_power=1.0, sinr_threshold=10.0)
    scanned = 0
    worst = 0.0
    while scanned < 200:
        gains = sorted(rng.lognormal(4.0, 2.0, 2), reverse=True)
        g = GainPair(gains[0], gains[1], 1)
        outcome = classify_and_allocate(g, lb)
        if outcome.case_label is not AllocationCase.I:
            continue
        scanned += 1
        scan = grid_search_alpha(g, lb, GridSpec(10_000))
        achieved = alloc_metric(outcome.alpha_s, g, lb)
        worst = max(worst, (scan[1] - achieved) / abs(scan[1]))
    checks.append(
        CheckResult("alpha-vs-scan", worst <= 1e-12, f"max metric shortfall {worst:.3e} (<= 1e-12)")
    )

    # Case coverage / unreachable-branch scan.
    seen = set()
    case_iv = 0
    for _ in range(100_000):
        base = 10.0 ** rng.uniform(-3.0, 5.0)
        ratio = 10.0 ** rng.uniform(0.0, 3.0)
        g = GainPair(base * ratio, base, 1)
        outcome = classify_and_allocate(g, lb)
        seen.add(outcome.case_label)
        if outcome.case_label is AllocationCase.IV:
            case_iv += 1
    expected = {AllocationCase.I, AllocationCase.II, AllocationCase.III, AllocationCase.V}
    ok = case_iv == 0 and expected <= seen
    checks.append(
        CheckResult(
            "case-scan",
            ok,
            f"cases seen {sorted(c.value for c in seen)}, strong-only-outage branch fired {case_iv} times",
        )
    )
    return checks
