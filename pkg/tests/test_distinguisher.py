import math
from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prulab.distinguisher import (
    DistinguisherParams,
    PFCOracle,
    blocked_collision_counts,
    collision_count,
    concentration_reference,
    estimate_advantage,
    haar_oracle_factory,
    net_membership_distinguisher,
    pfc_distinguish_experiment,
    run_collision_distinguisher,
)
from prulab.ensembles import reference_design
from prulab.linalg import RandomSeed, haar_unitary
from prulab.nets import NetSpec, exposure_estimate
from prulab.tomography import ChannelOracle


class TestCollisionCount:
    def test_simple_cases(self):
        assert collision_count(["a", "a", "b"]) == 1
        assert collision_count([7] * 5) == math.comb(5, 2)
        assert collision_count([1, 2]) == 0

    def test_too_short(self):
        with pytest.raises(ValueError):
            collision_count([3])

    @given(st.lists(st.integers(0, 4), min_size=2, max_size=12))
    @settings(max_examples=100, deadline=None)
    def test_matches_pairwise_bruteforce(self, xs):
        brute = sum(1 for i in range(len(xs)) for j in range(i + 1, len(xs))
                    if xs[i] == xs[j])
        assert collision_count(xs) == brute

    @given(st.integers(0, 10_000), st.integers(2, 10), st.integers(2, 40))
    @settings(max_examples=40, deadline=None)
    def test_blocked_counts_match_rowwise(self, seed, t, k):
        samples = np.random.default_rng(seed).integers(0, 5, size=(k, t))
        blocked = blocked_collision_counts(samples)
        assert blocked.tolist() == [collision_count(row) for row in samples]


class TestParams:
    def test_canonical(self):
        p = DistinguisherParams.canonical(1024)
        assert p.t == 32 and p.alpha == 0.25 and p.k_blocks == 100000
        assert DistinguisherParams.canonical(1023).t == 32
        assert DistinguisherParams.canonical(1025).t == 33

    def test_center_exact_value(self):
        p = DistinguisherParams(d=1024, t=32, k_blocks=1000)
        assert p.center == pytest.approx(992 / 1025)

    def test_validation(self):
        with pytest.raises(ValueError):
            DistinguisherParams(d=4, t=1, k_blocks=10)
        with pytest.raises(ValueError):
            DistinguisherParams(d=4, t=2, k_blocks=0)
        with pytest.raises(ValueError):
            DistinguisherParams(d=4, t=2, k_blocks=1, alpha=0.0)


class _ConstantOracle:
    def draw(self, shots):
        return np.zeros(shots, dtype=np.int64)


class _UniformOracle:
    def __init__(self, d, rng):
        self.d, self.rng = d, rng

    def draw(self, shots):
        return self.rng.integers(0, self.d, size=shots)


class TestCollisionDistinguisher:
    def test_constant_oracle_screams_pfc(self):
        p = DistinguisherParams(d=64, t=8, k_blocks=20)
        rep = run_collision_distinguisher(_ConstantOracle(), p)
        assert rep.mean_collisions == math.comb(8, 2)
        assert rep.verdict == "PFC"

    def test_uniform_oracle_mean_near_expectation(self):
        d = 4096
        p = DistinguisherParams(d=d, t=64, k_blocks=300)
        rep = run_collision_distinguisher(
            _UniformOracle(d, RandomSeed(5).generator()), p)
        expect = math.comb(64, 2) / d
        sd = math.sqrt(expect / 300) * 2  # generous
        assert abs(rep.mean_collisions - expect) < 6 * sd
        # uniform over the full space sits below the Haar center by ~half
        assert rep.verdict == "PFC"

    def test_verdict_invariant_under_relabeling(self):
        p = DistinguisherParams(d=16, t=4, k_blocks=50)
        base = PFCOracle(4, RandomSeed(7))
        rep1 = run_collision_distinguisher(base, p)

        class Relabeled:
            def __init__(self):
                self.inner = PFCOracle(4, RandomSeed(7))
                self.perm = np.random.default_rng(1).permutation(16)

            def draw(self, shots):
                return self.perm[self.inner.draw(shots)]

        rep2 = run_collision_distinguisher(Relabeled(), p)
        assert rep1.verdict == rep2.verdict
        assert np.array_equal(rep1.blocks, rep2.blocks)

    def test_factory_needs_seed(self):
        p = DistinguisherParams(d=4, t=2, k_blocks=2)
        with pytest.raises(ValueError):
            run_collision_distinguisher(haar_oracle_factory(4), p)

    def test_median_variant(self):
        p = DistinguisherParams(d=64, t=8, k_blocks=21)
        rep = run_collision_distinguisher(_ConstantOracle(), p, estimator="median")
        assert rep.estimator == "median"
        assert rep.verdict == "PFC"

    def test_report_serialization(self):
        p = DistinguisherParams(d=16, t=4, k_blocks=5)
        rep = run_collision_distinguisher(haar_oracle_factory(16), p, RandomSeed(3))
        d = rep.to_json_dict()
        assert d["params"]["d"] == 16 and len(d["blocks"]) == 5


class TestConcentrationReference:
    def test_formula_substitution(self):
        mu, tau, bound = concentration_reference(3, 1.0, 1.0, beta=1.0, k_blocks=1)
        assert mu == pytest.approx(3.0)
        assert tau == pytest.approx(63.0)
        assert bound == pytest.approx(63.0)

    def test_zero_probabilities(self):
        mu, tau, bound = concentration_reference(5, 0.0, 0.0, beta=0.5, k_blocks=10)
        assert mu == tau == bound == 0.0

    def test_full_support_stabilizer_case(self):
        mu, tau, _ = concentration_reference(3, 1 / 8, 1 / 64, beta=0.5, k_blocks=10)
        assert mu == pytest.approx(3 / 8)
        assert tau == pytest.approx(9 / 8 + 2 * 27 / 64)

    def test_invalid_probabilities(self):
        with pytest.raises(ValueError):
            concentration_reference(3, 0.1, 0.2, beta=0.5, k_blocks=10)
        with pytest.raises(ValueError):
            concentration_reference(3, 1.2, 0.1, beta=0.5, k_blocks=10)


class TestExactMoments:
    """Exact enumeration of E[M] and Var[M] for fixed outcome distributions."""

    @pytest.mark.parametrize("d,t", [(4, 3), (6, 3), (8, 4)])
    def test_expectation_and_variance_vs_formulas(self, d, t):
        rng = np.random.default_rng(d * 100 + t)
        w = rng.integers(1, 5, size=d)
        p = Fraction(1)  # build exact probabilities
        probs = [Fraction(int(x), int(w.sum())) for x in w]
        e_m = Fraction(0)
        e_m2 = Fraction(0)
        for tup in product(range(d), repeat=t):
            prob = Fraction(1)
            for x in tup:
                prob *= probs[x]
            m = collision_count(list(tup))
            e_m += prob * m
            e_m2 += prob * m * m
        p2 = sum(q * q for q in probs)
        p3 = sum(q**3 for q in probs)
        assert e_m == math.comb(t, 2) * p2
        var = e_m2 - e_m * e_m
        tau = t * t * p2 + 2 * t**3 * p3
        assert var <= tau

    def test_deviation_rate_bounded_empirically(self):
        d, t, k = 8, 4, 40
        probs = np.full(d, 1 / d)
        mu, tau, bound = concentration_reference(
            t, float(np.sum(probs**2)), float(np.sum(probs**3)), beta=0.35, k_blocks=k)
        rng = RandomSeed(60).generator()
        fails = 0
        trials = 400
        for _ in range(trials):
            samples = rng.integers(0, d, size=(k, t))
            m = blocked_collision_counts(samples).mean()
            fails += int(abs(m - mu) >= 0.35)
        assert fails / trials <= min(1.0, bound) + 0.05


class TestAdvantage:
    def test_identical_ensembles_no_advantage(self):
        p = DistinguisherParams(d=16, t=4, k_blocks=30)

        def test_fn(oracle, seed):
            return run_collision_distinguisher(oracle, p).verdict == "Haar"

        rep = estimate_advantage(haar_oracle_factory(16), haar_oracle_factory(16),
                                 test_fn, 60, RandomSeed(70))
        assert rep.advantage <= rep.ci_half_width

    def test_exact_1_design_matches_haar_single_query(self):
        # one query, accept iff the measured outcome is 0
        pauli = reference_design("pauli-1-design", 1)

        def pauli_oracle(seed):
            u = pauli.sample(seed)
            probs = np.abs(u[:, 0]) ** 2
            rng = seed.generator()

            class O:
                def draw(self, shots):
                    return rng.choice(2, size=shots, p=probs / probs.sum())

            return O()

        def test_fn(oracle, seed):
            return int(oracle.draw(1)[0]) == 0

        rep = estimate_advantage(pauli_oracle, haar_oracle_factory(2, "dense"),
                                 test_fn, 400, RandomSeed(71))
        assert rep.advantage <= rep.ci_half_width

    def test_pfc_vs_haar_visible_at_moderate_scale(self):
        rep = pfc_distinguish_experiment(8, 40, RandomSeed(72), k_blocks=400)
        assert rep.haar_rate >= 0.9
        assert rep.pfc_rate >= 0.25
        assert rep.advantage >= 0.2


class TestNetMembership:
    def test_member_accepted(self):
        net = NetSpec.haar_sample(2, 12, RandomSeed(80))
        hidden = net.unitaries[4]
        out = net_membership_distinguisher(
            ChannelOracle(hidden), net, eps=0.8, eta0=0.05, seed=RandomSeed(81))
        assert out == 0

    def test_far_unitary_flagged(self):
        net = NetSpec(2, [np.eye(2, dtype=complex)])
        hidden = np.diag([1.0, -1.0]).astype(complex)  # distance 2 from identity
        out = net_membership_distinguisher(
            ChannelOracle(hidden), net, eps=0.9, eta0=0.05, seed=RandomSeed(82))
        assert out == 1

    def test_acceptance_rate_bracketed_by_exposures(self):
        # rate in [(1-eta0) eta_eps - CI, eta_{eps/3} + eta0 + CI]
        net = NetSpec.haar_sample(2, 50, RandomSeed(83))
        eps, eta0 = 0.9, 0.1
        trials = 200
        seed = RandomSeed(84)
        hits = 0
        for i in range(trials):
            hidden = haar_unitary(2, seed.child(2 * i))
            hits += net_membership_distinguisher(
                ChannelOracle(hidden), net, eps, eta0, seed.child(2 * i + 1))
        rate = hits / trials
        lo_rep = exposure_estimate(net, eps, 400, RandomSeed(85))
        hi_rep = exposure_estimate(net, eps / 3, 400, RandomSeed(86))
        ci = 1.96 * math.sqrt(rate * (1 - rate) / trials) + 0.02
        assert rate >= (1 - eta0) * lo_rep.eta_hat - lo_rep.ci_half - ci
        assert rate <= hi_rep.eta_hat + eta0 + hi_rep.ci_half + ci
