import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prulab.linalg import RandomSeed, is_unitary
from prulab.stabilizer import (
    GammaParams,
    Tableau,
    full_support_probability,
    gamma_amplitudes,
    gamma_state,
    gf2_nullspace,
    gf2_rank,
    gf2_rref,
    gf2_solve,
    measurement_support,
    pack_bits,
    pauli_matrix,
    random_clifford,
    random_clifford_rng,
    sample_measurement,
    stabilizer_state_count,
    symplectic_from_index,
    symplectic_group_order,
    tableau_from_json_dict,
    tableau_to_json_dict,
    tableau_to_statevector,
    tableau_to_unitary,
)


class TestGF2:
    @given(st.integers(0, 10_000), st.integers(1, 6), st.integers(1, 6))
    @settings(max_examples=40, deadline=None)
    def test_nullspace_annihilates(self, seed, rows, cols):
        a = np.random.default_rng(seed).integers(0, 2, size=(rows, cols)).astype(np.uint8)
        ns = gf2_nullspace(a)
        assert ns.shape[0] == cols - gf2_rank(a)
        if ns.size:
            assert not ((a @ ns.T) % 2).any()

    @given(st.integers(0, 10_000))
    @settings(max_examples=40, deadline=None)
    def test_solve_consistent_systems(self, seed):
        rng = np.random.default_rng(seed)
        a = rng.integers(0, 2, size=(4, 5)).astype(np.uint8)
        x_true = rng.integers(0, 2, size=5).astype(np.uint8)
        b = (a @ x_true) % 2
        x = gf2_solve(a, b.astype(np.uint8))
        assert x is not None
        assert np.array_equal((a @ x) % 2, b)

    def test_solve_inconsistent(self):
        a = np.array([[1, 0], [1, 0]], dtype=np.uint8)
        b = np.array([0, 1], dtype=np.uint8)
        assert gf2_solve(a, b) is None

    def test_rref_idempotent(self):
        a = np.array([[1, 1, 0], [1, 0, 1], [0, 1, 1]], dtype=np.uint8)
        m, piv = gf2_rref(a)
        m2, piv2 = gf2_rref(m)
        assert np.array_equal(m, m2) and piv == piv2


class TestSymplecticSampling:
    def test_enumeration_is_bijective_n1(self):
        mats = {symplectic_from_index(i, 1).tobytes() for i in range(6)}
        assert symplectic_group_order(1) == 6
        assert len(mats) == 6

    def test_symplectic_form_preserved(self):
        for n in (1, 2, 3):
            lam = np.zeros((2 * n, 2 * n), dtype=np.uint8)
            for i in range(n):
                lam[2 * i, 2 * i + 1] = lam[2 * i + 1, 2 * i] = 1
            order = symplectic_group_order(n)
            rng = np.random.default_rng(5)
            for _ in range(25):
                g = symplectic_from_index(int(rng.integers(order)), n)
                assert np.array_equal((g @ lam @ g.T) % 2, lam)


class TestRandomClifford:
    def test_symplectic_invariant(self):
        for n in (1, 2, 5):
            t = random_clifford(n, RandomSeed(n))
            assert t.check_symplectic()

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            random_clifford(0, RandomSeed(0))
        with pytest.raises(ValueError):
            random_clifford(64, RandomSeed(0))

    def test_determinism(self):
        assert random_clifford(3, RandomSeed(12)) == random_clifford(3, RandomSeed(12))

    def test_single_qubit_uniform_over_24(self):
        rng = RandomSeed(971).generator()
        n_samples = 100_000
        counts: dict = {}
        for _ in range(n_samples):
            t = random_clifford_rng(1, rng)
            key = (t.x.tobytes(), t.z.tobytes(), t.r.tobytes())
            counts[key] = counts.get(key, 0) + 1
        assert len(counts) == 24
        p = 1 / 24
        se = np.sqrt(p * (1 - p) / n_samples)
        for c in counts.values():
            assert abs(c / n_samples - p) < 3.5 * se

    def test_conjugation_matches_dense(self):
        # the tableau rows must be exactly U P U^dag for the dense synthesis
        seed = RandomSeed(11)
        for n in (1, 2, 3):
            for k in range(3):
                t = random_clifford(n, seed.child(100 * n + k))
                u = tableau_to_unitary(t)
                assert is_unitary(u, 1e-9)
                for j in range(n):
                    xb = np.zeros(n, dtype=np.uint8)
                    zb = np.zeros(n, dtype=np.uint8)
                    xb[j] = 1
                    xj = pauli_matrix(xb, zb, 0)
                    zj = pauli_matrix(zb, xb, 0)
                    assert np.allclose(u @ xj @ u.conj().T,
                                       pauli_matrix(t.x[j], t.z[j], t.r[j]), atol=1e-9)
                    assert np.allclose(u @ zj @ u.conj().T,
                                       pauli_matrix(t.x[n + j], t.z[n + j], t.r[n + j]),
                                       atol=1e-9)


class TestMeasurementSupport:
    def test_identity_supports_zero_string(self):
        sup = measurement_support(Tableau(3))
        assert sup.k_dim == 0
        assert not sup.offset.any()

    def test_hadamard_full_support(self):
        t = Tableau(3)
        for q in range(3):
            t.apply_h(q)
        sup = measurement_support(t)
        assert sup.k_dim == 3

    def test_support_matches_dense_exactly(self):
        seed = RandomSeed(31)
        for n in (2, 3, 4, 5, 6):
            for k in range(4):
                t = random_clifford(n, seed.child(10 * n + k))
                sup = measurement_support(t)
                probs = np.abs(tableau_to_statevector(t)) ** 2
                hot = set(np.nonzero(probs > 1e-12)[0].tolist())
                members = {int(v) for v in pack_bits(sup.members())}
                assert hot == members
                assert np.allclose(probs[sorted(hot)], 1 / len(hot), atol=1e-9)

    def test_sampling_tv_against_dense(self):
        n, shots = 4, 10_000
        t = random_clifford(n, RandomSeed(47))
        samples = sample_measurement(t, shots, RandomSeed(48))
        probs = np.abs(tableau_to_statevector(t)) ** 2
        keys = pack_bits(samples)
        emp = np.bincount(keys.astype(np.int64), minlength=2**n) / shots
        tv = 0.5 * np.abs(emp - probs).sum()
        assert tv <= 0.05

    def test_identity_sampling_constant(self):
        out = sample_measurement(Tableau(4), 5, RandomSeed(0))
        assert out.shape == (5, 4)
        assert not out.any()

    def test_hadamard_pair_uniform(self):
        t = Tableau(2)
        t.apply_h(0)
        t.apply_h(1)
        samples = sample_measurement(t, 10_000, RandomSeed(3))
        counts = np.bincount(pack_bits(samples).astype(np.int64), minlength=4)
        se = np.sqrt(0.25 * 0.75 / 10_000)
        assert np.all(np.abs(counts / 10_000 - 0.25) < 3.5 * se)

    def test_affine_contains_members(self):
        t = random_clifford(4, RandomSeed(99))
        sup = measurement_support(t)
        for row in sup.members():
            assert sup.contains(row)


class TestGammaFamily:
    def test_plus_state_at_zero_params(self):
        n = 2
        p = GammaParams(n, np.zeros((n, n), dtype=np.uint8),
                        np.zeros(n, dtype=np.uint8), np.zeros(n, dtype=np.uint8))
        psi = tableau_to_statevector(gamma_state(p))
        assert np.allclose(psi, np.full(4, 0.5), atol=1e-9)

    def test_single_qubit_s_phase(self):
        p = GammaParams(1, np.zeros((1, 1), dtype=np.uint8),
                        np.array([1], dtype=np.uint8), np.array([0], dtype=np.uint8))
        psi = tableau_to_statevector(gamma_state(p))
        target = np.array([1, 1j]) / np.sqrt(2)
        overlap = abs(np.vdot(psi, target))
        assert overlap == pytest.approx(1.0, abs=1e-9)

    def test_all_32_states_distinct_full_support_n2(self):
        states = set()
        for mbit in range(2):
            for packed in range(16):
                u = np.array([(packed >> 0) & 1, (packed >> 1) & 1], dtype=np.uint8)
                v = np.array([(packed >> 2) & 1, (packed >> 3) & 1], dtype=np.uint8)
                m = np.array([[0, mbit], [0, 0]], dtype=np.uint8)
                p = GammaParams(2, m, u, v)
                t = gamma_state(p)
                assert measurement_support(t).k_dim == 2
                amps = gamma_amplitudes(p)
                psi = tableau_to_statevector(t)
                assert abs(np.vdot(psi, amps)) == pytest.approx(1.0, abs=1e-9)
                states.add(tuple(np.round(amps / amps[0], 8)))
        assert len(states) == 32

    @given(st.integers(0, 100_000), st.integers(1, 5))
    @settings(max_examples=30, deadline=None)
    def test_full_support_always(self, seed, n):
        rng = np.random.default_rng(seed)
        m = np.triu(rng.integers(0, 2, size=(n, n)), k=1).astype(np.uint8)
        p = GammaParams(n, m, rng.integers(0, 2, n).astype(np.uint8),
                        rng.integers(0, 2, n).astype(np.uint8))
        assert measurement_support(gamma_state(p)).k_dim == n

    def test_nonzero_diagonal_rejected(self):
        m = np.eye(2, dtype=np.uint8)
        with pytest.raises(ValueError):
            GammaParams(2, m, np.zeros(2, dtype=np.uint8), np.zeros(2, dtype=np.uint8))


class TestFullSupportProbability:
    def test_small_values(self):
        from fractions import Fraction

        assert full_support_probability(1, exact=True) == Fraction(2, 3)
        assert full_support_probability(2, exact=True) == Fraction(8, 15)

    def test_count_crosscheck_n2(self):
        # 32 gamma states over 60 stabilizer states, at least the formula value
        assert stabilizer_state_count(2) == 60
        assert 32 / 60 == pytest.approx(float(full_support_probability(2)))

    def test_limit_above_inverse_e(self):
        for n in (1, 5, 20, 60):
            assert full_support_probability(n) >= np.exp(-1)

    def test_monotone_decreasing(self):
        vals = [full_support_probability(n) for n in range(1, 12)]
        assert all(a > b for a, b in zip(vals, vals[1:]))


class TestSerialization:
    def test_tableau_round_trip(self):
        t = random_clifford(5, RandomSeed(2))
        d = tableau_to_json_dict(t)
        assert tableau_from_json_dict(d) == t
