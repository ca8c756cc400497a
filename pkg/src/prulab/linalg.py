"""Dense complex linear algebra foundation.

Haar sampling, Schatten norms, operator vectorization, Kronecker powers,
and the exact diamond distance between unitary channels via the
eigenvalue-hull closed form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

UNITARY_TOL = 1e-10
METRIC_TOL = 1e-9

_DEFAULT_BUDGET_BYTES = 8 << 30  # 8 GiB working-set cap
_budget_bytes = _DEFAULT_BUDGET_BYTES


class ResourceLimitError(RuntimeError):
    """A dense materialization or sampling plan exceeds the configured budget."""


class PropertyViolationError(AssertionError):
    """A mathematically guaranteed bound failed numerically."""


def memory_budget_bytes() -> int:
    return _budget_bytes


def set_memory_budget_bytes(n: int) -> None:
    global _budget_bytes
    if n <= 0:
        raise ValueError("memory budget must be positive")
    _budget_bytes = int(n)


def ensure_budget(nbytes: float, what: str = "allocation") -> None:
    if nbytes > _budget_bytes:
        raise ResourceLimitError(
            f"{what} needs {nbytes:.3g} bytes, budget is {_budget_bytes} "
            "(raise it with set_memory_budget_bytes)"
        )


@dataclass(frozen=True)
class RandomSeed:
    """Reproducible randomness handle: (seed, stream) pairs map to one RNG stream.

    Identical pairs reproduce identical sample sequences.  ``child(i)``
    derives an independent stream deterministically, so trial fan-out does
    not depend on worker scheduling.
    """

    seed: int
    stream: int = 0

    def __post_init__(self):
        if not (0 <= self.seed < 2**64 and 0 <= self.stream < 2**64):
            raise ValueError("seed and stream must be unsigned 64-bit integers")

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream,))
        return np.random.default_rng(ss)

    def child(self, index: int) -> "RandomSeed":
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream, index))
        a, b = ss.generate_state(2, dtype=np.uint64)
        return RandomSeed(int(a), int(b))


def as_seed(seed: "RandomSeed | int") -> RandomSeed:
    return seed if isinstance(seed, RandomSeed) else RandomSeed(int(seed))


def is_unitary(u: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    if u.ndim != 2 or u.shape[0] != u.shape[1] or u.shape[0] < 1:
        return False
    dev = u @ u.conj().T - np.eye(u.shape[0])
    return float(np.max(np.abs(dev))) <= tol


def assert_unitary(u: np.ndarray, tol: float = UNITARY_TOL) -> None:
    if not is_unitary(u, tol):
        raise ValueError("matrix fails the unitarity invariant")


def haar_unitary(d: int, seed: RandomSeed | int) -> np.ndarray:
    """Sample a Haar-distributed d x d unitary.

    Ginibre matrix, QR factorization, then the R-diagonal phase correction;
    the plain QR of a Gaussian matrix is not Haar-distributed without it.
    """
    if d < 1:
        raise ValueError("dimension must be >= 1")
    rng = as_seed(seed).generator()
    return haar_unitary_rng(d, rng)


def haar_unitary_rng(d: int, rng: np.random.Generator) -> np.ndarray:
    ensure_budget(16 * d * d * 3, "Haar sample")
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r)
    phases = diag / np.abs(diag)
    return q * phases


def haar_state(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random pure state: normalized complex Gaussian vector."""
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def schatten_norm(x: np.ndarray, k) -> float:
    """Schatten-k norm (singular-value l_k); k = "inf" or np.inf is the operator norm."""
    s = np.linalg.svd(x, compute_uv=False)
    if k == 1:
        return float(np.sum(s))
    if k == 2:
        return float(np.sqrt(np.sum(s * s)))
    if k in ("inf", np.inf):
        return float(s[0]) if s.size else 0.0
    raise ValueError("k must be one of 1, 2, inf")


def vectorize(x: np.ndarray) -> np.ndarray:
    """Row-major vec: vec(A X B) = (A kron B^T) vec(X)."""
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise ValueError("expected a square matrix")
    return x.reshape(-1)


def devectorize(v: np.ndarray) -> np.ndarray:
    d = round(np.sqrt(v.size))
    if d * d != v.size:
        raise ValueError("vector length is not a perfect square")
    return v.reshape(d, d)


def kron_power(u: np.ndarray, t: int) -> np.ndarray:
    """t-fold Kronecker power; budget-checked since the result has dim d^t."""
    if t < 1:
        raise ValueError("t must be >= 1")
    d = u.shape[0]
    ensure_budget(16 * (d**t) ** 2, "Kronecker power")
    out = u
    for _ in range(t - 1):
        out = np.kron(out, u)
    return out


def _hull_distance_to_origin(eigs: np.ndarray) -> float:
    """Distance from 0 to the convex hull of unit-modulus points.

    The hull contains the origin iff no angular gap between consecutive
    points exceeds pi; otherwise the nearest hull feature is the chord
    spanning the largest gap (this also covers the collinear degenerate
    hulls: one point, two points, antipodal pairs).
    """
    pts = eigs / np.abs(eigs)
    if pts.size == 1:
        return 1.0
    ang = np.sort(np.angle(pts))
    gaps = np.diff(ang)
    wrap = ang[0] + 2 * np.pi - ang[-1]
    i = int(np.argmax(gaps)) if gaps.size and np.max(gaps) > wrap else -1
    max_gap = wrap if i == -1 else gaps[i]
    if max_gap < np.pi:
        return 0.0
    if i == -1:
        a, b = np.exp(1j * ang[-1]), np.exp(1j * ang[0])
    else:
        a, b = np.exp(1j * ang[i]), np.exp(1j * ang[i + 1])
    return _segment_distance_to_origin(a, b)


def _segment_distance_to_origin(a: complex, b: complex) -> float:
    ab = b - a
    denom = (ab * ab.conjugate()).real
    if denom < 1e-30:
        return float(abs(a))
    t = -(a.conjugate() * ab).real / denom
    t = min(max(t, 0.0), 1.0)
    return float(abs(a + t * ab))


def diamond_distance_unitaries(u: np.ndarray, v: np.ndarray) -> float:
    """Exact diamond distance between the channels U(.)U^dag and V(.)V^dag.

    Closed form for unitary channels: 2 sqrt(1 - dist(0, conv(spec(U^dag V)))^2).
    Symmetric, zero iff U = e^{i theta} V, range [0, 2].
    """
    if u.shape != v.shape:
        raise ValueError("dimension mismatch")
    w = u.conj().T @ v
    if w.shape[0] == 2:
        return _diamond_from_trace_2x2(np.trace(w))
    eigs = np.linalg.eigvals(w)
    h = _hull_distance_to_origin(eigs)
    return 2.0 * np.sqrt(max(0.0, 1.0 - h * h))


def _diamond_from_trace_2x2(tr: complex) -> float:
    # two eigenvalues on the circle: hull distance is |tr|/2, so the
    # distance reduces to sqrt(4 - |tr|^2)
    t2 = min((tr * tr.conjugate()).real, 4.0)
    return float(np.sqrt(4.0 - t2))


def diamond_distance_batch(ws: np.ndarray) -> np.ndarray:
    """Diamond distances for a stack of relative unitaries W_i = U_i^dag V_i."""
    if ws.ndim != 3 or ws.shape[1] != ws.shape[2]:
        raise ValueError("expected a stack of square matrices")
    d = ws.shape[1]
    if d == 1:
        return np.zeros(ws.shape[0])
    if d == 2:
        tr = np.einsum("kii->k", ws)
        t2 = np.minimum(np.abs(tr) ** 2, 4.0)
        return np.sqrt(4.0 - t2)
    eigs = np.linalg.eigvals(ws)
    hull = np.array([_hull_distance_to_origin(e) for e in eigs])
    return 2.0 * np.sqrt(np.maximum(0.0, 1.0 - hull * hull))
