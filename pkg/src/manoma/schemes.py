"""Per-draw evaluation of the four transmission schemes.

On one channel draw the same link budget is graded four ways: NOMA with
position-optimized receive antennas (the proposed scheme), NOMA with both
antennas pinned at their origins, orthogonal access with pinned antennas,
and orthogonal access with position-optimized antennas.

Orthogonal access means equal time shares: each user is served alone in its
slot with the full per-antenna power, decodes iff its SNR reaches the same
threshold used for NOMA (boundary inclusive), and achieves half the
single-user Shannon rate.
"""

from dataclasses import dataclass
from enum import Enum
from math import log2

from .allocation import AllocationCase, GainPair, classify_and_allocate
from .channel import channel_power_expansion, coupling_matrix
from .geometry import ORIGIN, Position2D
from .sca import ScaConfig, optimize_position


class Scheme(Enum):
    PROPOSED_MA_NOMA = "proposed_ma_noma"
    CONVENTIONAL_NOMA = "conventional_noma"
    CONVENTIONAL_OMA = "conventional_oma"
    OMA_MA = "oma_ma"


@dataclass(frozen=True)
class SchemeResult:
    """Rates, outage flags and placement of one scheme on one draw."""

    scheme: Scheme
    rate_user1: float
    rate_user2: float
    sum_rate: float
    outage_user1: bool
    outage_user2: bool
    alpha_s: float | None
    positions: tuple[Position2D, Position2D]
    case_label: AllocationCase | None


def _origin_gains(draw) -> tuple[float, float]:
    return tuple(
        channel_power_expansion(ORIGIN, coupling_matrix(draw.array, user), user)
        for user in draw.users
    )


def _optimized(draw, cfg: ScaConfig) -> tuple[tuple[Position2D, Position2D], tuple[float, float]]:
    """Independently maximize each user's |h|^2 from the origin start."""
    positions = []
    gains = []
    for user, region, seed in zip(draw.users, draw.regions, draw.start_seeds):
        m = coupling_matrix(draw.array, user)
        pos, trace = optimize_position(ORIGIN, m, user, region, cfg, multistart_seed=seed)
        positions.append(pos)
        gains.append(-trace.final_objective)
    return tuple(positions), tuple(gains)


def _noma_result(scheme: Scheme, draw, gains, positions) -> SchemeResult:
    """Allocate power for given gains and map SU/WU roles back to user indices."""
    pair = GainPair.from_gains(gains[0], gains[1])
    outcome = classify_and_allocate(pair, draw.link)
    if pair.strong_user == 1:
        rates = (outcome.rate_strong, outcome.rate_weak)
        outages = (outcome.outage_strong, outcome.outage_weak)
    else:
        rates = (outcome.rate_weak, outcome.rate_strong)
        outages = (outcome.outage_weak, outcome.outage_strong)
    return SchemeResult(
        scheme=scheme,
        rate_user1=rates[0],
        rate_user2=rates[1],
        sum_rate=rates[0] + rates[1],
        outage_user1=outages[0],
        outage_user2=outages[1],
        alpha_s=outcome.alpha_s,
        positions=positions,
        case_label=outcome.case_label,
    )


def _oma_result(scheme: Scheme, draw, gains, positions) -> SchemeResult:
    rho = draw.link.snr_ratio
    threshold = draw.link.sinr_threshold
    rates = []
    outages = []
    for gain in gains:
        snr = rho * gain
        if snr >= threshold:
            rates.append(0.5 * log2(1.0 + snr))
            outages.append(False)
        else:
            rates.append(0.0)
            outages.append(True)
    return SchemeResult(
        scheme=scheme,
        rate_user1=rates[0],
        rate_user2=rates[1],
        sum_rate=rates[0] + rates[1],
        outage_user1=outages[0],
        outage_user2=outages[1],
        alpha_s=None,
        positions=positions,
        case_label=None,
    )


def eval_proposed(draw, cfg: ScaConfig) -> SchemeResult:
    """NOMA after per-user position optimization."""
    positions, gains = _optimized(draw, cfg)
    return _noma_result(Scheme.PROPOSED_MA_NOMA, draw, gains, positions)


def eval_conventional_noma(draw) -> SchemeResult:
    """NOMA with both antennas pinned at their origins."""
    return _noma_result(Scheme.CONVENTIONAL_NOMA, draw, _origin_gains(draw), (ORIGIN, ORIGIN))


def eval_oma(draw) -> SchemeResult:
    """Equal-time-share orthogonal access, antennas pinned at origins."""
    return _oma_result(Scheme.CONVENTIONAL_OMA, draw, _origin_gains(draw), (ORIGIN, ORIGIN))


def eval_oma_ma(draw, cfg: ScaConfig) -> SchemeResult:
    """Equal-time-share orthogonal access after position optimization."""
    positions, gains = _optimized(draw, cfg)
    return _oma_result(Scheme.OMA_MA, draw, gains, positions)
