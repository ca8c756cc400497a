import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prulab.bounds import (
    RomPruParams,
    improved_support_bound,
    prior_support_bound,
    prior_support_bound_exact,
    rom_input_length_bounds,
    scalable_check,
    trivial_rompru_params,
)


class TestPriorSupportBound:
    def test_pauli_point(self):
        assert prior_support_bound(2, 1, 0.0) == pytest.approx(4.0)

    def test_arithmetic_example(self):
        assert prior_support_bound(4, 3, 0.0) == pytest.approx(4**6 / 6, rel=1e-12)

    def test_delta_one_keeps_second_branch(self):
        v = prior_support_bound(3, 2, 1.0)
        assert v == pytest.approx(3**4 / (2 * 2))

    def test_log_matches_exact_on_grid(self):
        worst = 0.0
        for d in (2, 3, 4):
            for t in range(1, 21):
                for delta in (0.0, 0.25, 0.5):
                    approx = prior_support_bound(d, t, delta)
                    exact = float(prior_support_bound_exact(d, t, Fraction(delta)))
                    worst = max(worst, abs(approx - exact) / exact)
        assert worst < 1e-9

    def test_log_space_no_overflow(self):
        v = prior_support_bound(64, 10_000, 0.1, as_log=True)
        assert math.isfinite(v) and v > 0

    def test_delta_validation(self):
        with pytest.raises(ValueError):
            prior_support_bound(2, 1, -0.1)


class TestImprovedSupportBound:
    def test_magic_t_closed_form(self):
        d = 2
        t = d * d * math.log(4.0) * math.e
        assert improved_support_bound(d, t, 0.0, 1.0) == pytest.approx(
            (2 / 3) * math.e**1.5)

    def test_prefactor_vanishes_near_delta_one(self):
        lo = improved_support_bound(2, 100.0, 0.999, 1.0)
        hi = improved_support_bound(2, 100.0, 0.5, 1.0)
        assert lo < hi

    @given(st.integers(2, 5), st.floats(1.0, 1e5), st.floats(1.1, 3.0))
    @settings(max_examples=50, deadline=None)
    def test_monotone_in_t(self, d, t, factor):
        a = improved_support_bound(d, t, 0.0, as_log=True)
        b = improved_support_bound(d, t * factor, 0.0, as_log=True)
        assert b > a

    def test_constant_scales_base(self):
        a = improved_support_bound(2, 50.0, 0.0, 1.0, as_log=True)
        b = improved_support_bound(2, 25.0, 0.0, 2.0, as_log=True)
        assert a == pytest.approx(b)

    def test_domain(self):
        with pytest.raises(ValueError):
            improved_support_bound(2, 10.0, 1.0)


class TestDominationCrossover:
    def test_improved_beats_prior_large_d_grid(self):
        # with the placeholder constant 1 the crossover of the two bounds
        # sits near d = 16 at t = 4 d^2 ln 4; scan from there up
        for d in (16, 18, 20):
            t0 = 4 * d * d * math.log(4.0)
            for mult in (1.0, 2.0, 4.0):
                t = math.ceil(t0 * mult)
                imp = improved_support_bound(d, t, 0.0, 1.0, as_log=True)
                pri = prior_support_bound(d, t, 0.0, as_log=True)
                assert imp > pri


class TestRomInputLength:
    def test_t_equals_d_regime(self):
        d = 1 << 10
        r = rom_input_length_bounds(d, d, 0.1, 0.01, additive_slack=0.0)
        assert r.m_design_1 == pytest.approx(math.log2(d) + math.log2(math.log2(d)))

    def test_boundary_t_equals_d_squared(self):
        r = rom_input_length_bounds(16, 256.0, 0.1, 0.01)
        assert r.m_design_1 is None and r.m_design_2 is None
        assert "m_design_1" in r.regime_notes and "m_design_2" in r.regime_notes

    def test_net_formula(self):
        r = rom_input_length_bounds(1 << 10, 2.0, 0.1, 2.0**-16, additive_slack=0.0)
        assert r.m_net == pytest.approx(20 + 4)

    def test_design2_requires_flag(self):
        r = rom_input_length_bounds(4, 1000.0, 0.99, 0.01, delta_bounded_away=False)
        assert r.m_design_2 is None
        r = rom_input_length_bounds(4, 1000.0, 0.5, 0.01, delta_bounded_away=True)
        assert r.m_design_2 is not None


class TestTrivialConstruction:
    def test_kappa_zero_point(self):
        p = trivial_rompru_params(2, 0)
        assert p.t == 1
        assert p.support_size_log2 == pytest.approx(4.0)  # binom(4,3)^2 = 16
        assert p.q == pytest.approx(4.0)
        assert p.m == pytest.approx(2.0)

    def test_query_upper_bound_holds(self):
        for d, kappa in ((2, 3), (4, 10), (8, 6)):
            p = trivial_rompru_params(d, kappa)
            assert p.q <= p.q_upper + 1e-9

    def test_upper_bound_value_d4_k10(self):
        p = trivial_rompru_params(4, 10)
        expect = 2 * 15 * math.log2(math.e * (16 + 1023) / 15)
        assert p.q_upper == pytest.approx(expect)

    def test_monotone_in_kappa(self):
        vals = [trivial_rompru_params(3, k).support_size_log2 for k in range(6)]
        assert all(a < b for a, b in zip(vals, vals[1:]))

    def test_validation(self):
        with pytest.raises(ValueError):
            trivial_rompru_params(1, 2)
        with pytest.raises(ValueError):
            trivial_rompru_params(2, -1)


class TestScalableCheck:
    def test_trivial_construction_fails_efficiency(self):
        d, kappa = 16, 10
        tp = trivial_rompru_params(d, kappa)
        params = RomPruParams(d, kappa, tp.q, tp.m, 0.0, float(tp.t), 0.0)
        rep = scalable_check(params, poly_budget=2.0)
        assert not rep.efficiency_ok  # q scales like d^2 kappa, not polylog d
        assert rep.alpha_ok and rep.queries_ok and rep.advantage_ok
        assert not rep.passes
        assert rep.induced_design == (float(tp.t), 0.0)

    def test_sqrt_d_query_budget_boundary(self):
        d = 1 << 10
        t = math.isqrt(d)
        kappa = int(math.log2(t))
        good = RomPruParams(d, kappa, 4.0, 2.0, 0.0, float(t), 2.0**-kappa)
        assert scalable_check(good).queries_ok
        over = RomPruParams(d, kappa + 1, 4.0, 2.0, 0.0, float(t), 2.0**-kappa)
        assert not scalable_check(over).queries_ok

    def test_all_zero_errors_pass(self):
        p = RomPruParams(16, 2, 3.0, 2.0, 0.0, 100.0, 0.0)
        assert scalable_check(p).passes

    def test_params_validation(self):
        with pytest.raises(ValueError):
            RomPruParams(1, 2, 3.0, 2.0, 0.0, 1.0, 0.0)
        with pytest.raises(ValueError):
            RomPruParams(4, 2, -3.0, 2.0, 0.0, 1.0, 0.0)
