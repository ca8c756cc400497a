"""Epsilon-net coverage estimation over the unitary group.

Monte Carlo exposure estimates in diamond distance, net composition and
dagger closure, brute-force product covering, and the ball-volume
cardinality lower bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from prulab.linalg import (
    RandomSeed,
    as_seed,
    diamond_distance_batch,
    ensure_budget,
    haar_unitary_rng,
)
from prulab.util import wilson_interval


@dataclass
class NetSpec:
    """A finite set of same-dimension unitaries treated as a candidate net."""

    dim: int
    unitaries: list[np.ndarray]

    def __post_init__(self):
        if not self.unitaries:
            raise ValueError("a net must be nonempty")
        for u in self.unitaries:
            if u.shape != (self.dim, self.dim):
                raise ValueError("net element dimension mismatch")

    def __len__(self) -> int:
        return len(self.unitaries)

    def stacked(self) -> np.ndarray:
        return np.stack(self.unitaries)

    @classmethod
    def haar_sample(cls, dim: int, size: int, seed: RandomSeed | int) -> "NetSpec":
        rng = as_seed(seed).generator()
        return cls(dim, [haar_unitary_rng(dim, rng) for _ in range(size)])


@dataclass
class CoverageReport:
    """Monte Carlo exposure estimate: share of Haar draws farther than eps."""

    epsilon: float
    eta_hat: float
    samples: int
    ci_half: float

    @property
    def vol_hat(self) -> float:
        return 1.0 - self.eta_hat

    def to_json_dict(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "eta_hat": self.eta_hat,
            "vol_hat": self.vol_hat,
            "samples": self.samples,
            "ci_half": self.ci_half,
        }


def _distances_to_net(u: np.ndarray, stacked: np.ndarray) -> np.ndarray:
    """Diamond distances from u to every net element, batched."""
    ws = np.einsum("kij,il->kjl", stacked.conj(), u)  # V_k^dag @ u
    return diamond_distance_batch(ws)


def min_diamond_distance(u: np.ndarray, net: NetSpec) -> tuple[float, int]:
    """Minimum diamond distance from u to the net, with the argmin index
    (lowest index on ties)."""
    if u.shape != (net.dim, net.dim):
        raise ValueError("dimension mismatch")
    dists = _distances_to_net(u, net.stacked())
    i = int(np.argmin(dists))
    return float(dists[i]), i


def exposure_estimate(net: NetSpec, eps: float, samples: int,
                      seed: RandomSeed | int) -> CoverageReport:
    """Fraction of Haar-sampled unitaries at distance > eps from the net.

    Monte Carlo with a Wilson interval; the estimator cannot distinguish
    a true zero exposure from a tiny one, so only the interval is
    reported.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    sd = as_seed(seed)
    stacked = net.stacked()
    exposed = 0
    for i in range(samples):
        u = haar_unitary_rng(net.dim, sd.child(i).generator())
        if float(_distances_to_net(u, stacked).min()) > eps:
            exposed += 1
    _, half = wilson_interval(exposed, samples)
    return CoverageReport(eps, exposed / samples, samples, half)


def compose_nets(n1: NetSpec, n2: NetSpec) -> NetSpec:
    """All products V1 V2^dag (|n1| |n2| elements, before deduplication)."""
    if n1.dim != n2.dim:
        raise ValueError("dimension mismatch")
    ensure_budget(16 * n1.dim**2 * len(n1) * len(n2), "net composition")
    out = [v1 @ v2.conj().T for v1 in n1.unitaries for v2 in n2.unitaries]
    return NetSpec(n1.dim, out)


def dagger_net(net: NetSpec) -> NetSpec:
    """Elementwise Hermitian conjugates; exposure-preserving."""
    return NetSpec(net.dim, [u.conj().T for u in net.unitaries])


def cover_with_product(u: np.ndarray, net: NetSpec) -> tuple[np.ndarray, np.ndarray, float]:
    """Best two-element product cover of u: minimize dist(V1 V2^dag, u).

    Exhaustive over all |net|^2 ordered pairs.  When the net is an
    (eps, eta)-relaxed net with eta < 1/2 this lands within 2 eps of a
    Haar-sampled u with certainty in theory and is checked empirically at
    that strength, not promised unconditionally.
    """
    if u.shape != (net.dim, net.dim):
        raise ValueError("dimension mismatch")
    m = len(net)
    d = net.dim
    ensure_budget(16 * m * m + 32 * m * d * d, "product cover search")
    stacked = net.stacked()
    if d == 2:
        # dist(V1 V2^dag, u) = sqrt(4 - |tr(V2 V1^dag u)|^2); the trace is a
        # 4-vector inner product, so the pair search is a single gemm
        h = np.einsum("kij,il->klj", stacked.conj(), u).reshape(m, 4)  # rows vec((V1_i^dag u)^T)
        g = stacked.reshape(m, 4)
        tr = g @ h.T  # tr[j, i] = tr(V2_j V1_i^dag u)
        d2 = 4.0 - np.minimum(np.abs(tr) ** 2, 4.0)
        j, i = np.unravel_index(int(np.argmin(d2)), d2.shape)
        best = math.sqrt(max(float(d2[j, i]), 0.0))
        return net.unitaries[i], net.unitaries[j], best
    best = (np.inf, 0, 0)
    for i, v1 in enumerate(net.unitaries):
        a = v1.conj().T @ u
        dists = diamond_distance_batch(stacked @ a)  # W_k = V2_k V1_i^dag u
        k = int(np.argmin(dists))
        if dists[k] < best[0]:
            best = (float(dists[k]), i, k)
    return net.unitaries[best[1]], net.unitaries[best[2]], best[0]


def net_size_lower_bound(d: int, eps: float, eta: float, c_diamond: float = 1.0) -> float:
    """Ball-volume cardinality bound for an (eps, eta)-net:
    (1 - eta) (c_diamond / eps)^(d^2 - 1).

    The universal ball-volume constant is caller-supplied; its true value
    is open, the default 1 is a placeholder.
    """
    if eps <= 0 or c_diamond <= 0:
        raise ValueError("eps and c_diamond must be positive")
    if not 0.0 <= eta <= 1.0:
        raise ValueError("eta must be in [0, 1]")
    return (1.0 - eta) * (c_diamond / eps) ** (d * d - 1)


def exposure_bound(delta: float, eta0: float) -> float:
    """Exposure guaranteed for the support of a (t, delta)-design when the
    tomography inside the reduction has failure rate eta0:
    eta = (delta + eta0) / (1 - eta0)."""
    if not 0 <= eta0 < 1:
        raise ValueError("eta0 must be in [0, 1)")
    return (delta + eta0) / (1.0 - eta0)
