"""Shared brute-force oracles for the test suite.

These deliberately avoid the closed forms they are checking: the diamond
oracle maximizes the output trace distance over pure inputs with an
ancilla by direct numerical optimization.
"""

from __future__ import annotations

import numpy as np
from scipy.optimize import minimize

from prulab.linalg import schatten_norm


def brute_force_diamond(u: np.ndarray, v: np.ndarray, restarts: int = 8,
                        seed: int = 0) -> float:
    """max over pure |psi> on system x ancilla of ||(U x I)psi - (V x I)psi||_1."""
    d = u.shape[0]
    big = d * d
    ui = np.kron(u, np.eye(d))
    vi = np.kron(v, np.eye(d))
    rng = np.random.default_rng(seed)

    def neg_trace_dist(x):
        psi = x[:big] + 1j * x[big:]
        nrm = np.linalg.norm(psi)
        if nrm < 1e-12:
            return 0.0
        psi = psi / nrm
        a = ui @ psi
        b = vi @ psi
        diff = np.outer(a, a.conj()) - np.outer(b, b.conj())
        return -schatten_norm(diff, 1)

    best = 0.0
    for _ in range(restarts):
        x0 = rng.standard_normal(2 * big)
        res = minimize(neg_trace_dist, x0, method="L-BFGS-B")
        best = max(best, -res.fun)
    return best


def total_variation(counts_a: dict, counts_b: dict, n_a: int, n_b: int) -> float:
    keys = set(counts_a) | set(counts_b)
    return 0.5 * sum(
        abs(counts_a.get(k, 0) / n_a - counts_b.get(k, 0) / n_b) for k in keys
    )


def empirical_counts(values) -> dict:
    out: dict = {}
    for v in values:
        key = int(v)
        out[key] = out.get(key, 0) + 1
    return out
