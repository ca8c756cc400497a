"""Collision-statistics distinguisher and advantage harnesses.

The sqrt(d)-query collision test on repeated |0...0> queries, the
Chebyshev concentration reference for its block estimator, a generic
Monte Carlo advantage estimator, and the tomography-based net-membership
distinguisher.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from prulab.linalg import RandomSeed, as_seed
from prulab.ensembles import PolyaUrnSampler, sample_pfc
from prulab.stabilizer import measurement_support, pack_bits, sample_from_support
from prulab.util import wilson_interval


@dataclass(frozen=True)
class DistinguisherParams:
    """Collision-test parameters: t copies per block, block count, threshold.

    Canonical settings at dimension d are t = ceil(sqrt(d)), alpha = 1/4
    and 100000 blocks; desk-scale runs usually lower k_blocks.  Other
    (t, alpha) pairings are accepted but carry no acceptance guarantee.
    """

    d: int
    t: int
    k_blocks: int
    alpha: float = 0.25

    def __post_init__(self):
        if self.t < 2:
            raise ValueError("need at least two copies per block")
        if self.k_blocks < 1:
            raise ValueError("need at least one block")
        if self.alpha <= 0:
            raise ValueError("threshold must be positive")

    @classmethod
    def canonical(cls, d: int, k_blocks: int = 100000) -> "DistinguisherParams":
        return cls(d=d, t=math.isqrt(d - 1) + 1, k_blocks=k_blocks, alpha=0.25)

    @property
    def center(self) -> float:
        """Reference collision mean of a typical Haar state: C(t,2) 2/(d+1)."""
        return math.comb(self.t, 2) * 2.0 / (self.d + 1)


def collision_count(outcomes) -> int:
    """Number of equal pairs sum_{i<j} 1{x_i = x_j} among the outcomes."""
    arr = np.asarray(outcomes)
    if arr.shape[0] < 2:
        raise ValueError("need at least two outcomes")
    _, counts = np.unique(arr, return_counts=True, axis=0 if arr.ndim > 1 else None)
    return int(np.sum(counts * (counts - 1) // 2))


def blocked_collision_counts(samples: np.ndarray) -> np.ndarray:
    """Per-row collision counts of a (k_blocks, t) integer outcome array."""
    s = np.sort(samples, axis=1)
    eq = (s[:, 1:] == s[:, :-1]).astype(np.int64)
    run = np.zeros(s.shape[0], dtype=np.int64)
    total = np.zeros(s.shape[0], dtype=np.int64)
    for j in range(eq.shape[1]):
        run = (run + 1) * eq[:, j]
        total += run
    return total


# ---------------------------------------------------------------------------
# State-measurement oracles
# ---------------------------------------------------------------------------


class HaarUrnOracle:
    """Measurement oracle of a hidden Haar state, urn realization.

    No state vector is ever formed; the equality pattern is exact and the
    cost per draw is O(1) independent of d.
    """

    def __init__(self, d: int, seed: RandomSeed):
        self._urn = PolyaUrnSampler(d, seed.generator())

    def draw(self, shots: int) -> np.ndarray:
        return self._urn.draw(shots)


class HaarDenseOracle:
    """Measurement oracle of a hidden Haar state, dense realization."""

    def __init__(self, d: int, seed: RandomSeed):
        from prulab.linalg import ensure_budget, haar_state

        ensure_budget(16 * d * 4, "dense Haar oracle")
        rng = seed.generator()
        psi = haar_state(d, rng)
        self._probs = np.abs(psi) ** 2
        self._probs /= self._probs.sum()
        self._cum = np.cumsum(self._probs)
        self._rng = rng

    def draw(self, shots: int) -> np.ndarray:
        u = self._rng.random(shots)
        return np.searchsorted(self._cum, u)


class PFCOracle:
    """Measurement oracle of a hidden permutation-phase-Clifford draw."""

    def __init__(self, n: int, seed: RandomSeed):
        self.sample = sample_pfc(n, seed.child(0))
        self._support = measurement_support(self.sample.clifford)
        self._rng = seed.child(1).generator()

    def draw(self, shots: int) -> np.ndarray:
        bits = sample_from_support(self._support, shots, self._rng)
        return self.sample.permutation[pack_bits(bits).astype(np.int64)]


def haar_oracle_factory(d: int, mode: str = "urn"):
    if mode == "urn":
        return lambda seed: HaarUrnOracle(d, seed)
    if mode == "dense":
        return lambda seed: HaarDenseOracle(d, seed)
    raise ValueError("mode must be 'urn' or 'dense'")


def pfc_oracle_factory(n: int):
    return lambda seed: PFCOracle(n, seed)


# ---------------------------------------------------------------------------
# The collision test
# ---------------------------------------------------------------------------


@dataclass
class CollisionReport:
    """Outcome of one collision-test run on a hidden state oracle."""

    params: DistinguisherParams
    blocks: np.ndarray
    mean_collisions: float
    center: float
    verdict: str  # "Haar" | "PFC"
    estimator: str = "mean"
    seed: RandomSeed | None = None
    mu_ref: float | None = None
    tau_ref: float | None = None

    def to_json_dict(self) -> dict:
        return {
            "params": {
                "d": self.params.d,
                "t": self.params.t,
                "k_blocks": self.params.k_blocks,
                "alpha": self.params.alpha,
            },
            "blocks": [int(b) for b in self.blocks],
            "M": self.mean_collisions,
            "center": self.center,
            "verdict": self.verdict,
            "estimator": self.estimator,
            "seed": None if self.seed is None else [self.seed.seed, self.seed.stream],
        }


def run_collision_distinguisher(oracle, params: DistinguisherParams,
                                seed: RandomSeed | int | None = None,
                                estimator: str = "mean") -> CollisionReport:
    """Run the blocked collision test against a state-measurement oracle.

    `oracle` is either an object with draw(shots) or a factory
    callable(RandomSeed) -> such an object, instantiated from `seed`.
    Verdict is "Haar" iff the block average M lands within alpha of the
    Haar reference center.  `estimator`="median" switches the block
    aggregation to a median-of-blocks variant.
    """
    if estimator not in ("mean", "median"):
        raise ValueError("estimator must be 'mean' or 'median'")
    sd = None if seed is None else as_seed(seed)
    if callable(oracle):
        if sd is None:
            raise ValueError("a factory oracle needs a seed")
        oracle = oracle(sd.child(0))
    t, k = params.t, params.k_blocks
    samples = np.empty((k, t), dtype=np.int64)
    for r in range(k):
        got = np.asarray(oracle.draw(t))
        if got.shape[0] != t:
            raise ValueError("oracle returned short block (oracle exhaustion)")
        samples[r] = got
    blocks = blocked_collision_counts(samples)
    m = float(np.mean(blocks)) if estimator == "mean" else float(np.median(blocks))
    verdict = "Haar" if abs(m - params.center) <= params.alpha else "PFC"
    return CollisionReport(params, blocks, m, params.center, verdict,
                           estimator=estimator, seed=sd)


def concentration_reference(t: int, p_psi: float, q_psi: float, beta: float,
                            k_blocks: int) -> tuple[float, float, float]:
    """Chebyshev reference for the block estimator at fixed state statistics.

    mu = C(t,2) p, tau = t^2 p + 2 t^3 q (a variance upper bound), and the
    deviation bound Pr[|M - mu| >= beta] <= tau / (k beta^2).
    """
    if not (0.0 <= q_psi <= p_psi <= 1.0):
        raise ValueError("need 0 <= q_psi <= p_psi <= 1")
    if beta <= 0 or k_blocks < 1:
        raise ValueError("beta must be positive and k_blocks >= 1")
    mu = math.comb(t, 2) * p_psi
    tau = t * t * p_psi + 2 * t**3 * q_psi
    return mu, tau, tau / (k_blocks * beta * beta)


# ---------------------------------------------------------------------------
# Advantage estimation
# ---------------------------------------------------------------------------


@dataclass
class AdvantageReport:
    accept_rate_a: float
    accept_rate_b: float
    ci_half_a: float
    ci_half_b: float
    trials: int

    @property
    def advantage(self) -> float:
        return abs(self.accept_rate_a - self.accept_rate_b)

    @property
    def ci_half_width(self) -> float:
        return self.ci_half_a + self.ci_half_b

    def to_json_dict(self) -> dict:
        return {
            "accept_rate_a": self.accept_rate_a,
            "accept_rate_b": self.accept_rate_b,
            "ci_half_a": self.ci_half_a,
            "ci_half_b": self.ci_half_b,
            "advantage": self.advantage,
            "ci_half_width": self.ci_half_width,
            "trials": self.trials,
        }


def estimate_advantage(ens_a, ens_b, test, trials: int,
                       seed: RandomSeed | int) -> AdvantageReport:
    """Monte Carlo acceptance gap of a binary test between two ensembles.

    `ens_a`/`ens_b` are oracle factories callable(RandomSeed) -> oracle and
    `test` is callable(oracle, RandomSeed) -> bool.  Each trial draws a
    fresh hidden unitary; trials are seeded individually so fan-out order
    cannot change the report.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    sd = as_seed(seed)
    hits_a = hits_b = 0
    for i in range(trials):
        oa = ens_a(sd.child(4 * i))
        hits_a += bool(test(oa, sd.child(4 * i + 1)))
        ob = ens_b(sd.child(4 * i + 2))
        hits_b += bool(test(ob, sd.child(4 * i + 3)))
    _, ha = wilson_interval(hits_a, trials)
    _, hb = wilson_interval(hits_b, trials)
    return AdvantageReport(hits_a / trials, hits_b / trials, ha, hb, trials)


@dataclass
class PFCDistinguishReport:
    """Two-sided summary of the collision test: PFC detection vs Haar retention."""

    n: int
    params: DistinguisherParams
    trials: int
    haar_rate: float  # fraction of Haar-side trials answered "Haar"
    pfc_rate: float  # fraction of PFC-side trials answered "PFC"
    haar_ci_half: float
    pfc_ci_half: float
    advantage: float
    advantage_ci_half: float

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "params": {
                "d": self.params.d,
                "t": self.params.t,
                "k_blocks": self.params.k_blocks,
                "alpha": self.params.alpha,
            },
            "trials": self.trials,
            "haar_verdict_rate": self.haar_rate,
            "pfc_verdict_rate": self.pfc_rate,
            "haar_ci_half": self.haar_ci_half,
            "pfc_ci_half": self.pfc_ci_half,
            "advantage": self.advantage,
            "advantage_ci_half": self.advantage_ci_half,
        }


def pfc_distinguish_experiment(n: int, trials: int, seed: RandomSeed | int,
                               t: int | None = None, k_blocks: int = 100000,
                               alpha: float = 0.25, haar_mode: str = "urn",
                               estimator: str = "mean") -> PFCDistinguishReport:
    """Run the collision test on fresh hidden draws from both ensembles."""
    d = 1 << n
    params = DistinguisherParams(
        d=d, t=t if t is not None else math.isqrt(d - 1) + 1,
        k_blocks=k_blocks, alpha=alpha,
    )

    def test(oracle, s):
        rep = run_collision_distinguisher(oracle, params, s, estimator=estimator)
        return rep.verdict == "Haar"

    adv = estimate_advantage(
        haar_oracle_factory(d, haar_mode), pfc_oracle_factory(n), test, trials, seed
    )
    return PFCDistinguishReport(
        n=n,
        params=params,
        trials=trials,
        haar_rate=adv.accept_rate_a,
        pfc_rate=1.0 - adv.accept_rate_b,
        haar_ci_half=adv.ci_half_a,
        pfc_ci_half=adv.ci_half_b,
        advantage=adv.advantage,
        advantage_ci_half=adv.ci_half_width,
    )


# ---------------------------------------------------------------------------
# Net-membership distinguisher
# ---------------------------------------------------------------------------


def net_membership_distinguisher(oracle, net, eps: float, eta0: float,
                                 seed: RandomSeed | int) -> int:
    """Tomography-based exposure test behind the designs-to-nets reduction.

    Learns the hidden channel to accuracy eps/3 (failure eta0), then
    outputs 1 iff the estimate sits farther than 2 eps/3 from every net
    element; equivalent to accepting when the estimate lands near the
    eps-far complement of the net.
    """
    from prulab.nets import min_diamond_distance
    from prulab.tomography import naive_process_tomography

    result = naive_process_tomography(oracle, eps / 3.0, eta0, seed)
    dist, _ = min_diamond_distance(result.u_hat, net)
    return int(dist > 2.0 * eps / 3.0)
