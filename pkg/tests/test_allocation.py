import math

import numpy as np
import pytest

from manoma import (
    AllocationCase,
    GainPair,
    LinkBudget,
    alloc_bounds,
    alloc_metric,
    alloc_metric_derivative,
    classify_and_allocate,
    sinr_and_rates,
)

G0 = 10.0


def budget(threshold=G0):
    # unit rho so gains can be read directly as rho*gain
    return LinkBudget(per_antenna_power=1.0, noise_power=1.0, sinr_threshold=threshold)


def pair(rho_strong, rho_weak):
    return GainPair(rho_strong, rho_weak, 1)


class TestBounds:
    def test_case_one_instance(self):
        b = alloc_bounds(pair(10_000.0, 1_000.0), budget())
        assert b.lower == pytest.approx(0.001, rel=1e-15)
        assert b.upper_strong == pytest.approx(0.09081818181818181, rel=1e-14)
        assert b.upper_weak == pytest.approx(0.09, rel=1e-14)

    def test_case_two_instance(self):
        b = alloc_bounds(pair(100.0, 50.0), budget())
        assert b.lower == pytest.approx(0.1, rel=1e-15)
        assert b.upper_strong == pytest.approx(0.08181818181818182, rel=1e-14)
        assert b.upper_weak == pytest.approx(0.07272727272727272, rel=1e-14)

    def test_threshold_degeneracy(self):
        b = alloc_bounds(pair(G0, G0), budget())
        assert b.lower == 1.0
        assert b.upper_strong == 0.0
        assert b.upper_weak == 0.0

    def test_zero_weak_gain_sentinel(self):
        b = alloc_bounds(pair(100.0, 0.0), budget())
        assert b.upper_weak == float("-inf")

    def test_zero_strong_gain_rejected(self):
        with pytest.raises(ValueError):
            alloc_bounds(GainPair(0.0, 0.0, 1), budget())

    def test_ordering_property(self, rng):
        lb = budget()
        for _ in range(500):
            g = sorted(10.0 ** rng.uniform(-2, 5, 2), reverse=True)
            b = alloc_bounds(pair(g[0], g[1]), lb)
            assert b.upper_weak <= b.upper_strong
            assert b.lower > 0.0


class TestSinrAndRates:
    def test_all_power_to_strong(self):
        gs, gw, rs, rw = sinr_and_rates(1.0, pair(100.0, 50.0), budget())
        assert gw == 0.0 and rw == 0.0
        assert gs == 100.0

    def test_all_power_to_weak(self):
        gs, gw, rs, rw = sinr_and_rates(0.0, pair(100.0, 50.0), budget())
        assert gs == 0.0 and rs == 0.0
        assert gw == pytest.approx(50.0, rel=1e-15)

    def test_case_one_operating_point(self):
        gs, gw, _, _ = sinr_and_rates(0.09, pair(10_000.0, 1_000.0), budget())
        assert gs == pytest.approx(900.0, rel=1e-13)
        assert gw == pytest.approx(10.0, rel=1e-13)

    def test_alpha_range_enforced(self):
        with pytest.raises(ValueError):
            sinr_and_rates(1.5, pair(10.0, 5.0), budget())


class TestClassify:
    def test_case_one(self):
        out = classify_and_allocate(pair(10_000.0, 1_000.0), budget())
        assert out.case_label is AllocationCase.I
        assert out.alpha_s == pytest.approx(0.09, rel=1e-14)
        assert out.sinr_strong == pytest.approx(900.0, rel=1e-13)
        assert out.sinr_weak == pytest.approx(10.0, rel=1e-13)
        # oracle: log2(901), log2(11)
        assert out.rate_strong == pytest.approx(9.815383295813538, rel=1e-12)
        assert out.rate_weak == pytest.approx(3.4594316186372973, rel=1e-12)
        assert not out.outage_strong and not out.outage_weak

    def test_case_two_drops_strong_user(self):
        # reference rates: log2(1+90/11)=3.1988 < log2(51)=5.6724
        out = classify_and_allocate(pair(100.0, 50.0), budget())
        assert out.case_label is AllocationCase.II
        assert out.alpha_s == 0.0
        assert out.outage_strong and not out.outage_weak
        assert out.rate_strong == 0.0
        assert out.rate_weak == pytest.approx(5.672425341971495, rel=1e-12)

    def test_case_two_drops_weak_user(self):
        # strong gain large enough that its reference rate wins:
        # log2(1+490/11)=5.509 > log2(11.5)=3.524
        out = classify_and_allocate(pair(500.0, 10.5), budget())
        b = alloc_bounds(pair(500.0, 10.5), budget())
        assert 0.0 <= b.upper_weak < b.lower <= 1.0
        assert out.case_label is AllocationCase.II
        assert out.alpha_s == 1.0
        assert out.outage_weak and not out.outage_strong
        assert out.rate_strong == pytest.approx(8.968666793195208, rel=1e-12)  # log2(501)
        assert out.rate_weak == 0.0

    def test_case_three(self):
        out = classify_and_allocate(pair(100.0, 5.0), budget())
        assert out.case_label is AllocationCase.III
        assert out.alpha_s == 1.0
        assert out.outage_weak and not out.outage_strong
        assert out.rate_strong == pytest.approx(6.658211482751795, rel=1e-12)
        assert out.rate_weak == 0.0

    def test_case_five(self):
        out = classify_and_allocate(pair(5.0, 2.0), budget())
        assert out.case_label is AllocationCase.V
        assert out.alpha_s == 0.0
        assert out.outage_strong and out.outage_weak
        assert out.rate_strong == 0.0 and out.rate_weak == 0.0

    def test_dead_channel_is_case_five(self):
        out = classify_and_allocate(GainPair(0.0, 0.0, 1), budget())
        assert out.case_label is AllocationCase.V
        assert out.outage_strong and out.outage_weak

    def test_outage_flag_counts_per_case(self, rng):
        lb = budget()
        expected = {
            AllocationCase.I: (False, False),
            AllocationCase.III: (False, True),
            AllocationCase.V: (True, True),
        }
        for _ in range(2000):
            g = sorted(10.0 ** rng.uniform(-2, 5, 2), reverse=True)
            out = classify_and_allocate(pair(g[0], g[1]), lb)
            assert 0.0 <= out.alpha_s <= 1.0
            if out.outage_strong:
                assert out.rate_strong == 0.0
            if out.outage_weak:
                assert out.rate_weak == 0.0
            if out.case_label in expected:
                assert (out.outage_strong, out.outage_weak) == expected[out.case_label]
            elif out.case_label is AllocationCase.II:
                assert out.outage_strong != out.outage_weak

    def test_tie_goes_to_user_one(self):
        g = GainPair.from_gains(3.0, 3.0)
        assert g.strong_user == 1
        assert GainPair.from_gains(1.0, 2.0).strong_user == 2

    def test_sum_rate_can_drop_when_weak_gain_crosses_threshold(self):
        # characterization of the case rules: serving the strong user alone
        # (weak gain below threshold) can beat the post-threshold selection,
        # which drops the strong user by the reference-rate comparison.
        below = classify_and_allocate(pair(50.0, 9.9), budget())
        above = classify_and_allocate(pair(50.0, 10.5), budget())
        assert below.case_label is AllocationCase.III
        assert above.case_label is AllocationCase.II
        assert below.sum_rate == pytest.approx(math.log2(51.0), rel=1e-12)
        assert above.sum_rate == pytest.approx(3.523561956057013, rel=1e-12)  # log2(11.5)
        assert above.sum_rate < below.sum_rate


class TestMetric:
    def test_equal_gains_flat(self):
        g = GainPair(7.0, 7.0, 1)
        lb = budget()
        for alpha in (0.0, 0.3, 1.0):
            assert alloc_metric_derivative(alpha, g, lb) == 0.0

    def test_alpha_zero_value(self):
        g = pair(100.0, 50.0)
        assert alloc_metric(0.0, g, budget()) == pytest.approx(51.0, rel=1e-15)

    def test_derivative_matches_finite_difference(self, rng):
        # well-separated gains: near-ties push the derivative under the FD
        # rounding floor (the flat case is covered by the equal-gains test)
        lb = budget()
        h = 1e-7
        checked = 0
        while checked < 300:
            g = sorted(10.0 ** rng.uniform(-1, 2.5, 2), reverse=True)
            if g[0] - g[1] < 0.1 * g[0]:
                continue
            checked += 1
            gp = pair(g[0], g[1])
            alpha = float(rng.uniform(h, 1 - h))
            ana = alloc_metric_derivative(alpha, gp, lb)
            num = (alloc_metric(alpha + h, gp, lb) - alloc_metric(alpha - h, gp, lb)) / (2 * h)
            assert ana >= 0.0
            assert ana == pytest.approx(num, rel=1e-5)

    def test_metric_nondecreasing_on_grid(self, rng):
        lb = budget()
        for _ in range(50):
            g = sorted(10.0 ** rng.uniform(-1, 4, 2), reverse=True)
            gp = pair(g[0], g[1])
            vals = alloc_metric(np.linspace(0.0, 1.0, 200), gp, lb)
            assert np.all(np.diff(vals) >= -1e-12 * np.abs(vals[:-1]))

    def test_case_one_threshold_tightness(self, rng):
        lb = budget()
        found = 0
        while found < 200:
            g = sorted(10.0 ** rng.uniform(0, 5, 2), reverse=True)
            out = classify_and_allocate(pair(g[0], g[1]), lb)
            if out.case_label is not AllocationCase.I:
                continue
            found += 1
            assert out.sinr_weak == pytest.approx(lb.sinr_threshold, rel=1e-9)
