"""Closed-form two-user NOMA power allocation with outage case analysis.

The user with the larger instantaneous gain (strong user, SU) is assigned
the smaller power share alpha_s; the weak user (WU) gets 1 - alpha_s and is
decoded first by both receivers.  Feasibility of decoding at the SINR
threshold reduces to one lower bound and two upper bounds on alpha_s:

    lower        = g0 / (rho*gs)                       (SU's own SINR)
    upper_strong = (rho*gs - g0) / (rho*gs*(1 + g0))   (SU decoding WU's signal)
    upper_weak   = (rho*gw - g0) / (rho*gw*(1 + g0))   (WU decoding its own)

with rho the per-antenna transmit/noise ratio, gs/gw the strong/weak gains
and g0 the linear SINR threshold.  The product (1+sinr_s)(1+sinr_w) is
nondecreasing in alpha_s, so when the bounds admit a feasible interval the
optimum sits at its upper end; otherwise one or both users are dropped to
outage according to the case rules below.
"""

import math
from dataclasses import dataclass
from enum import Enum


class AllocationCase(Enum):
    """Outcome class of the bound ordering (see ``classify_and_allocate``)."""

    I = "I"
    II = "II"
    III = "III"
    IV = "IV"
    V = "V"


@dataclass(frozen=True)
class LinkBudget:
    """Per-antenna transmit power, noise power and decoding threshold (linear)."""

    per_antenna_power: float
    noise_power: float
    sinr_threshold: float

    def __post_init__(self):
        if not (self.per_antenna_power > 0.0 and math.isfinite(self.per_antenna_power)):
            raise ValueError(f"per_antenna_power must be positive, got {self.per_antenna_power}")
        if not (self.noise_power > 0.0 and math.isfinite(self.noise_power)):
            raise ValueError(f"noise_power must be positive, got {self.noise_power}")
        if not (self.sinr_threshold > 0.0 and math.isfinite(self.sinr_threshold)):
            raise ValueError(f"sinr_threshold must be positive, got {self.sinr_threshold}")

    @property
    def snr_ratio(self) -> float:
        """rho = per-antenna power over noise power."""
        return self.per_antenna_power / self.noise_power


@dataclass(frozen=True)
class GainPair:
    """Strong/weak squared channel gains plus which physical user is strong."""

    strong_gain: float
    weak_gain: float
    strong_user: int

    def __post_init__(self):
        if not (self.strong_gain >= self.weak_gain >= 0.0):
            raise ValueError(
                f"need strong_gain >= weak_gain >= 0, got ({self.strong_gain}, {self.weak_gain})"
            )
        if self.strong_user not in (1, 2):
            raise ValueError(f"strong_user must be 1 or 2, got {self.strong_user}")

    @classmethod
    def from_gains(cls, gain_user1: float, gain_user2: float) -> "GainPair":
        """Order two physical gains; ties go to user 1."""
        if gain_user1 >= gain_user2:
            return cls(gain_user1, gain_user2, 1)
        return cls(gain_user2, gain_user1, 2)


@dataclass(frozen=True)
class AllocBounds:
    """Feasibility bounds on the strong user's power share alpha_s."""

    lower: float
    upper_strong: float
    upper_weak: float


@dataclass(frozen=True)
class AllocationOutcome:
    """Case label, chosen power share and the resulting SU/WU SINRs and rates."""

    case_label: AllocationCase
    alpha_s: float
    sinr_strong: float
    sinr_weak: float
    rate_strong: float
    rate_weak: float
    outage_strong: bool
    outage_weak: bool

    @property
    def sum_rate(self) -> float:
        return self.rate_strong + self.rate_weak


def alloc_bounds(g: GainPair, lb: LinkBudget) -> AllocBounds:
    """Feasibility bounds for alpha_s; requires strong_gain > 0.

    A zero weak gain yields upper_weak = -inf, which forces the weak user
    into outage downstream.
    """
    if g.strong_gain <= 0.0:
        raise ValueError("alloc_bounds needs strong_gain > 0; classify handles dead channels")
    rho = lb.snr_ratio
    g0 = lb.sinr_threshold
    rs = rho * g.strong_gain
    lower = g0 / rs
    upper_strong = (rs - g0) / (rs * (1.0 + g0))
    if g.weak_gain > 0.0:
        rw = rho * g.weak_gain
        upper_weak = (rw - g0) / (rw * (1.0 + g0))
    else:
        upper_weak = float("-inf")
    return AllocBounds(lower=lower, upper_strong=upper_strong, upper_weak=upper_weak)


def sinr_and_rates(alpha_s: float, g: GainPair, lb: LinkBudget) -> tuple[float, float, float, float]:
    """SU/WU SINRs and Shannon rates at a given power share.

    sinr_strong = rho*alpha_s*gs (interference-free after cancellation);
    sinr_weak treats the strong user's share as noise.
    """
    if not 0.0 <= alpha_s <= 1.0:
        raise ValueError(f"alpha_s must lie in [0, 1], got {alpha_s}")
    rho = lb.snr_ratio
    sinr_strong = rho * alpha_s * g.strong_gain
    sinr_weak = rho * (1.0 - alpha_s) * g.weak_gain / (rho * alpha_s * g.weak_gain + 1.0)
    return (
        sinr_strong,
        sinr_weak,
        math.log2(1.0 + sinr_strong),
        math.log2(1.0 + sinr_weak),
    )


def alloc_metric(alpha_s, g: GainPair, lb: LinkBudget):
    """(1 + sinr_strong) * (1 + sinr_weak); array-transparent in alpha_s."""
    rho = lb.snr_ratio
    sinr_strong = rho * alpha_s * g.strong_gain
    sinr_weak = rho * (1.0 - alpha_s) * g.weak_gain / (rho * alpha_s * g.weak_gain + 1.0)
    return (1.0 + sinr_strong) * (1.0 + sinr_weak)


def alloc_metric_derivative(alpha_s, g: GainPair, lb: LinkBudget):
    """d/d(alpha_s) of ``alloc_metric``; nonnegative since strong_gain >= weak_gain."""
    rho = lb.snr_ratio
    num = rho * (1.0 + rho * g.weak_gain) * abs(g.strong_gain - g.weak_gain)
    den = (rho * alpha_s * g.weak_gain + 1.0) ** 2
    return num / den


def classify_and_allocate(g: GainPair, lb: LinkBudget) -> AllocationOutcome:
    """Pick the power share by the bound-ordering cases.

    Case I   (lower <= upper_weak <= upper_strong): feasible; alpha_s at the
             binding weak-user bound, nobody in outage.
    Case II  (0 <= upper_weak < lower <= 1): one user must be dropped.  The
             reference rates log2(1 + (rho*gs - g0)/(1 + g0)) for the SU and
             log2(1 + rho*gw) for the WU are compared; the loser is dropped
             and the outage user's share is set to 0 (so alpha_s is 1 or 0).
    Case III (upper_weak < 0 < lower <= 1): the weak user can never decode;
             alpha_s = 1.
    Case IV  (0 <= upper_weak < 1 < lower): the strong user can never decode;
             alpha_s = 0.  Unreachable for ordered gains (lower > 1 forces
             rho*gs < g0 <= rho*gw, contradicting gw <= gs) but kept so the
             classification is total over its printed definition.
    Case V   (anything else, including dead channels): both users in outage.

    Rates of outage users are forced to 0; drops happen exactly when the
    corresponding SINR constraint cannot be met.
    """
    rho = lb.snr_ratio
    g0 = lb.sinr_threshold

    if g.strong_gain <= 0.0:
        return AllocationOutcome(
            case_label=AllocationCase.V,
            alpha_s=0.0,
            sinr_strong=0.0,
            sinr_weak=0.0,
            rate_strong=0.0,
            rate_weak=0.0,
            outage_strong=True,
            outage_weak=True,
        )

    b = alloc_bounds(g, lb)
    l1, mu1, mu2 = b.lower, b.upper_strong, b.upper_weak

    if l1 <= mu2 <= mu1:
        case = AllocationCase.I
        alpha = mu2
        outage_strong = outage_weak = False
    elif 0.0 <= mu2 < l1 <= 1.0:
        case = AllocationCase.II
        r1 = math.log2(1.0 + (rho * g.strong_gain - g0) / (1.0 + g0))
        r2 = math.log2(1.0 + rho * g.weak_gain)
        if r1 > r2:
            alpha, outage_strong, outage_weak = 1.0, False, True
        else:
            alpha, outage_strong, outage_weak = 0.0, True, False
    elif mu2 < 0.0 < l1 <= 1.0:
        case = AllocationCase.III
        alpha, outage_strong, outage_weak = 1.0, False, True
    elif 0.0 <= mu2 < 1.0 < l1:
        case = AllocationCase.IV
        alpha, outage_strong, outage_weak = 0.0, True, False
    else:
        case = AllocationCase.V
        alpha, outage_strong, outage_weak = 0.0, True, True

    sinr_strong, sinr_weak, rate_strong, rate_weak = sinr_and_rates(alpha, g, lb)
    if outage_strong:
        rate_strong = 0.0
    if outage_weak:
        rate_weak = 0.0
    return AllocationOutcome(
        case_label=case,
        alpha_s=alpha,
        sinr_strong=sinr_strong,
        sinr_weak=sinr_weak,
        rate_strong=rate_strong,
        rate_weak=rate_weak,
        outage_strong=outage_strong,
        outage_weak=outage_weak,
    )
