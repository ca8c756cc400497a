"""Unitary ensemble generators.

The permutation/phase/Clifford product ensemble, Haar-state measurement
samplers (dense and urn-based), and small exact reference designs used as
oracles by the moment-operator tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

import numpy as np

from prulab.linalg import RandomSeed, as_seed, ensure_budget, haar_state
from prulab.stabilizer import (
    Tableau,
    measurement_support,
    pack_bits,
    random_clifford_rng,
    sample_from_support,
    tableau_to_unitary,
)

# ---------------------------------------------------------------------------
# PFC ensemble
# ---------------------------------------------------------------------------


def _splitmix64(x: np.ndarray) -> np.ndarray:
    """Vectorized splitmix64 finalizer; cheap stateless PRF on uint64."""
    z = (x + np.uint64(0x9E3779B97F4A7C15)).astype(np.uint64)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


@dataclass
class PFCSample:
    """One draw of the permutation-phase-Clifford product at a given width.

    The phase diagonal is never materialized: values come from a seeded
    counter-based PRF, so widths up to n = 30 stay cheap.  ``phase_order``
    of 2 means +-1 entries; higher orders use the corresponding roots of
    unity.  The dense matrix P.F.C is available lazily for n <= 12.
    """

    n: int
    permutation: np.ndarray  # index array: |x> -> |perm[x]>
    phase_key: int
    phase_order: int
    clifford: Tableau
    _dense: np.ndarray | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return 1 << self.n

    def phase_values(self, indices: np.ndarray) -> np.ndarray:
        """Root-of-unity phases at the given basis indices."""
        h = _splitmix64(np.asarray(indices, dtype=np.uint64) ^ np.uint64(self.phase_key))
        if self.phase_order == 2:
            return np.where((h >> np.uint64(63)).astype(bool), -1.0 + 0j, 1.0 + 0j)
        k = (h % np.uint64(self.phase_order)).astype(np.float64)
        return np.exp(2j * np.pi * k / self.phase_order)

    def dense(self) -> np.ndarray:
        """P.F.C as a matrix; n <= 12 only."""
        if self._dense is None:
            if self.n > 12:
                raise ValueError("dense form capped at n = 12")
            ensure_budget(16 * 4**self.n * 4, "dense PFC materialization")
            c = tableau_to_unitary(self.clifford)
            f = self.phase_values(np.arange(self.dim))
            out = np.empty_like(c)
            out[self.permutation] = f[:, None] * c
            self._dense = out
        return self._dense

    def to_json_dict(self) -> dict:
        from prulab.stabilizer import tableau_to_json_dict

        return {
            "n": self.n,
            "permutation": [int(v) for v in self.permutation],
            "phase_key": self.phase_key,
            "phase_order": self.phase_order,
            "clifford": tableau_to_json_dict(self.clifford),
        }


def sample_pfc(n: int, seed: RandomSeed | int, phase_order: int = 2) -> PFCSample:
    """Draw P uniform over permutations, F a uniform phase diagonal (lazy),
    and C a uniform Clifford; 1 <= n <= 30."""
    if not 1 <= n <= 30:
        raise ValueError("qubit count out of range [1, 30]")
    if phase_order < 2:
        raise ValueError("phase order must be >= 2")
    rng = as_seed(seed).generator()
    perm = rng.permutation(1 << n)
    phase_key = int(rng.integers(0, 2**63, dtype=np.uint64))
    cliff = random_clifford_rng(n, rng)
    return PFCSample(n, perm, phase_key, phase_order, cliff)


def pfc_measure_zero_state(s: PFCSample, shots: int, seed: RandomSeed | int) -> np.ndarray:
    """Computational-basis samples of (PFC)|0...0>, as integer outcomes.

    The phase diagonal never affects outcome probabilities and the
    permutation is a relabeling, so this is stabilizer sampling of C
    followed by the permutation.
    """
    rng = as_seed(seed).generator()
    sup = measurement_support(s.clifford)
    bits = sample_from_support(sup, shots, rng)
    return s.permutation[pack_bits(bits).astype(np.int64)]


# ---------------------------------------------------------------------------
# Haar-state measurement samplers
# ---------------------------------------------------------------------------


def haar_state_measure_dense(d: int, shots: int, seed: RandomSeed | int) -> np.ndarray:
    """Sample one Haar state |psi> on C^d, then `shots` i.i.d. basis outcomes."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    ensure_budget(16 * d * 4, "dense Haar-state sampling")
    rng = as_seed(seed).generator()
    psi = haar_state(d, rng)
    probs = np.abs(psi) ** 2
    probs /= probs.sum()
    return rng.choice(d, size=shots, p=probs)


class PolyaUrnSampler:
    """Outcome-equality sampler equivalent in distribution to measuring a
    fixed Haar state.

    The basis probabilities of a Haar state are flat-Dirichlet, so i.i.d.
    outcome draws marginalize to a d-color Polya urn; amortized O(1) per
    draw via the copy-or-fresh decomposition of the predictive rule.  State
    persists across calls: all draws share one hidden state.
    """

    def __init__(self, d: int, rng: np.random.Generator):
        if d < 1:
            raise ValueError("dimension must be >= 1")
        self.d = d
        self._rng = rng
        self._history: list[int] = []
        self._labels: dict[int, int] = {}

    def draw(self, shots: int) -> np.ndarray:
        d = self.d
        rng = self._rng
        coins = rng.random(shots)
        copy_pick = rng.random(shots)
        fresh_cats = rng.integers(0, d, size=shots)
        out = np.empty(shots, dtype=np.int64)
        hist = self._history
        labels = self._labels
        for i in range(shots):
            m = len(hist)
            if coins[i] * (m + d) < m:
                lab = hist[int(copy_pick[i] * m)]
            else:
                cat = int(fresh_cats[i])
                lab = labels.setdefault(cat, len(labels))
            hist.append(lab)
            out[i] = lab
        return out


def haar_collision_polya(d: int, shots: int, seed: RandomSeed | int) -> np.ndarray:
    """One-shot urn draw: abstract labels whose joint equality pattern matches
    haar_state_measure_dense; cost independent of d."""
    rng = as_seed(seed).generator()
    return PolyaUrnSampler(d, rng).draw(shots)


def partition_probability_dirichlet(d: int, block_sizes: list[int]) -> Fraction:
    """Exact probability that t basis draws from a Haar state realize a given
    set partition of positions, via the flat-Dirichlet moment integral:
    [d]_k (d-1)!/(d+t-1)! prod_i b_i!."""
    k = len(block_sizes)
    t = sum(block_sizes)
    if k > d:
        return Fraction(0)
    falling = 1
    for j in range(k):
        falling *= d - j
    num = falling * factorial(d - 1)
    for b in block_sizes:
        num *= factorial(b)
    return Fraction(num, factorial(d + t - 1))


def partition_probability_urn(d: int, blocks: list[list[int]]) -> Fraction:
    """Same event probability via the urn predictive product along positions.

    `blocks` lists the positions (0-based) of each block; exchangeability
    makes the product depend only on the pattern, giving an independent
    route to the Dirichlet integral.
    """
    t = sum(len(b) for b in blocks)
    owner = {}
    for bi, b in enumerate(blocks):
        for pos in b:
            owner[pos] = bi
    if len(owner) != t or set(owner) != set(range(t)):
        raise ValueError("blocks must partition positions 0..t-1")
    if len(blocks) > d:
        return Fraction(0)
    counts = [0] * len(blocks)
    seen = 0
    prob = Fraction(1)
    for pos in range(t):
        bi = owner[pos]
        if counts[bi] == 0:
            prob *= Fraction(d - seen, pos + d)
            seen += 1
        else:
            prob *= Fraction(counts[bi] + 1, pos + d)
        counts[bi] += 1
    return prob


# ---------------------------------------------------------------------------
# Finite ensembles and reference designs
# ---------------------------------------------------------------------------


@dataclass
class EnsembleSpec:
    """A distribution over U(d): an explicit weighted list or a seedable sampler."""

    dim: int
    mode: str  # "finite-list" | "generator"
    unitaries: list[np.ndarray] | None = None
    weights: np.ndarray | None = None
    sampler: object = None  # callable(RandomSeed) -> unitary, generator mode
    name: str = ""

    def __post_init__(self):
        if self.mode == "finite-list":
            if not self.unitaries:
                raise ValueError("finite-list ensemble needs unitaries")
            if self.weights is None:
                self.weights = np.full(len(self.unitaries), 1.0 / len(self.unitaries))
            self.weights = np.asarray(self.weights, dtype=float)
            if np.any(self.weights < 0) or abs(self.weights.sum() - 1.0) > 1e-12:
                raise ValueError("weights must be nonnegative and sum to 1")
            for u in self.unitaries:
                if u.shape != (self.dim, self.dim):
                    raise ValueError("ensemble element dimension mismatch")
        elif self.mode == "generator":
            if self.sampler is None:
                raise ValueError("generator ensemble needs a sampler")
        else:
            raise ValueError("mode must be 'finite-list' or 'generator'")

    def sample(self, seed: RandomSeed | int) -> np.ndarray:
        rng = as_seed(seed).generator()
        if self.mode == "finite-list":
            i = rng.choice(len(self.unitaries), p=self.weights)
            return self.unitaries[i]
        return self.sampler(as_seed(seed))

    def __len__(self) -> int:
        if self.mode != "finite-list":
            raise TypeError("generator ensembles have no fixed support size")
        return len(self.unitaries)


_PAULI_1 = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.diag([1.0, -1.0]).astype(complex),
}


def _phase_canonical(u: np.ndarray) -> bytes:
    """Byte key identifying u modulo global phase (for group closure)."""
    flat = u.reshape(-1)
    idx = int(np.argmax(np.abs(flat) > 1e-8))
    v = u / (flat[idx] / abs(flat[idx]))
    return (np.round(v, 8) + (0.0 + 0.0j)).tobytes()  # also collapses -0.0


def single_qubit_cliffords() -> list[np.ndarray]:
    """The 24 single-qubit Cliffords modulo phase, by closure of {H, S}."""
    h = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
    s = np.diag([1, 1j]).astype(complex)
    found: dict[bytes, np.ndarray] = {}
    frontier = [np.eye(2, dtype=complex)]
    found[_phase_canonical(frontier[0])] = frontier[0]
    while frontier:
        nxt = []
        for u in frontier:
            for g in (h, s):
                v = g @ u
                key = _phase_canonical(v)
                if key not in found:
                    found[key] = v
                    nxt.append(v)
        frontier = nxt
    assert len(found) == 24
    return list(found.values())


def pauli_group(n: int) -> list[np.ndarray]:
    """The 4^n Pauli tensor products modulo phase; n <= 4."""
    if not 1 <= n <= 4:
        raise ValueError("Pauli reference design is capped at n = 4")
    out = [np.array([[1.0 + 0j]])]
    for _ in range(n):
        out = [np.kron(u, p) for u in out for p in _PAULI_1.values()]
    return out


def reference_design(kind: str, n: int = 1) -> EnsembleSpec:
    """Exact reference designs used as moment-operator oracles.

    "pauli-1-design": the 4^n Pauli group (exact 1-design).
    "single-qubit-clifford-3-design": the 24-element Clifford group at d=2
    (exact 3-design, not a 4-design).
    """
    if kind == "pauli-1-design":
        us = pauli_group(n)
        return EnsembleSpec(2**n, "finite-list", us, name=f"pauli({n})")
    if kind == "single-qubit-clifford-3-design":
        us = single_qubit_cliffords()
        return EnsembleSpec(2, "finite-list", us, name="clifford(1)")
    raise ValueError(f"unknown reference design {kind!r}")
