"""Diagonal-oracle truncation machinery.

Phase rounding to k fractional bits, diamond-distance verification of the
per-call and per-circuit truncation bounds, and the input-length
arithmetic for re-encoding truncated diagonals as binary functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from prulab.linalg import (
    PropertyViolationError,
    _hull_distance_to_origin,
    ensure_budget,
)


def round_k(x: float, k: int) -> float:
    """Round x in (-1, 1] to k fractional bits, breaking ties upwards.

    2^{-k} round(2^k x); |x - round_k(x)| <= 2^{-(k+1)}.  The output can be
    exactly -1 (phase-equivalent to +1); callers storing phases canonicalize.
    """
    if not (-1.0 < x <= 1.0):
        raise ValueError("phase value must lie in (-1, 1]")
    if k < 0:
        raise ValueError("k must be >= 0")
    scale = float(1 << k)
    return math.floor(x * scale + 0.5) / scale


@dataclass
class DiagonalPhase:
    """Phase function of a diagonal unitary: values in (-1, 1], unitary entry
    e^{i pi phase}.  Explicit vector for m <= 20."""

    m: int
    phases: np.ndarray

    def __post_init__(self):
        if self.m < 0 or self.m > 20:
            raise ValueError("explicit phase vectors supported for 0 <= m <= 20")
        p = np.asarray(self.phases, dtype=float)
        if p.shape != (1 << self.m,):
            raise ValueError("phase vector must have length 2^m")
        if np.any(p <= -1.0) or np.any(p > 1.0):
            raise ValueError("phase values must lie in (-1, 1]")
        self.phases = p

    @property
    def dim(self) -> int:
        return 1 << self.m

    def matrix(self) -> np.ndarray:
        return np.diag(np.exp(1j * np.pi * self.phases))

    @classmethod
    def random(cls, m: int, rng: np.random.Generator) -> "DiagonalPhase":
        vals = rng.uniform(-1.0, 1.0, size=1 << m)
        vals[vals <= -1.0] = 1.0
        return cls(m, vals)


def truncate_diagonal(f: DiagonalPhase, k: int) -> tuple[DiagonalPhase, int]:
    """Pointwise k-bit rounding; the result is a classical function with
    k+1 output bits.  Values rounding to -1 are stored as +1 (same entry)."""
    vals = np.array([round_k(float(x), k) for x in f.phases])
    vals[vals <= -1.0] = 1.0
    return DiagonalPhase(f.m, vals), k + 1


def diag_truncation_distance(f: DiagonalPhase, k: int) -> float:
    """Exact diamond distance between the diagonal channel and its k-truncation.

    Diagonal unitaries have their entries as eigenvalues, so the
    unitary-channel closed form applies directly.  Guaranteed
    <= 2^{-k} pi; violation raises.
    """
    if f.m > 12:
        raise ValueError("exact evaluation capped at m = 12")
    g, _ = truncate_diagonal(f, k)
    rel = np.exp(1j * np.pi * (g.phases - f.phases))
    h = _hull_distance_to_origin(rel)
    dist = 2.0 * math.sqrt(max(0.0, 1.0 - h * h))
    bound = math.pi * 2.0 ** (-k)
    if dist > bound + 1e-9:
        raise PropertyViolationError(
            f"truncation distance {dist} exceeds the bound {bound}"
        )
    return dist


@dataclass
class DiagonalOracleCircuit:
    """Fixed unitary layers interleaved with calls to diagonal oracles.

    Each of the ell oracles acts on the first m of the n qubits; `sequence`
    lists items ("fixed", matrix) and ("oracle", index) in application
    order.  Every oracle must be called at least once, so ell <= s.
    """

    n: int
    m: int
    oracles: list[DiagonalPhase]
    sequence: list[tuple]

    def __post_init__(self):
        if self.m > self.n:
            raise ValueError("oracle width exceeds circuit width")
        used = set()
        for item in self.sequence:
            kind = item[0]
            if kind == "fixed":
                if item[1].shape != (1 << self.n, 1 << self.n):
                    raise ValueError("fixed layer has wrong dimension")
            elif kind == "oracle":
                idx = item[1]
                if not 0 <= idx < len(self.oracles):
                    raise ValueError("oracle slot out of range")
                used.add(idx)
            else:
                raise ValueError(f"unknown sequence item {kind!r}")
        if used != set(range(len(self.oracles))):
            raise ValueError("every oracle must be referenced by some slot")
        for f in self.oracles:
            if f.m != self.m:
                raise ValueError("oracle width mismatch")

    @property
    def call_count(self) -> int:
        return sum(1 for item in self.sequence if item[0] == "oracle")

    def materialize(self, k_trunc: int | None = None) -> np.ndarray:
        """Dense unitary, optionally with every oracle k-truncated."""
        dim = 1 << self.n
        ensure_budget(16 * dim * dim * 4, "dense circuit materialization")
        pad = 1 << (self.n - self.m)
        mats = []
        for f in self.oracles:
            g = f if k_trunc is None else truncate_diagonal(f, k_trunc)[0]
            mats.append(np.repeat(np.exp(1j * np.pi * g.phases), pad))
        u = np.eye(dim, dtype=complex)
        for item in self.sequence:
            if item[0] == "fixed":
                u = item[1] @ u
            else:
                u = mats[item[1]][:, None] * u
        return u


@dataclass
class CircuitTruncationReport:
    s_calls: int
    k: int
    distance: float
    bound: float

    def to_json_dict(self) -> dict:
        return {
            "s_calls": self.s_calls,
            "k": self.k,
            "distance": self.distance,
            "bound": self.bound,
        }


def circuit_truncation_bound(c: DiagonalOracleCircuit, k: int) -> CircuitTruncationReport:
    """Exact diamond distance between the circuit and its k-truncated twin,
    checked against the union bound s 2^{-k} pi."""
    if 1 << c.n > 1 << 10:
        raise ValueError("dense circuit comparison capped at total dim 2^10")
    u = c.materialize()
    v = c.materialize(k_trunc=k)
    w = u.conj().T @ v
    eigs = np.linalg.eigvals(w)
    h = _hull_distance_to_origin(eigs)
    dist = 2.0 * math.sqrt(max(0.0, 1.0 - h * h))
    bound = c.call_count * math.pi * 2.0 ** (-k)
    if dist > bound + 1e-9:
        raise PropertyViolationError(
            f"circuit truncation distance {dist} exceeds the bound {bound}"
        )
    return CircuitTruncationReport(c.call_count, k, dist, bound)


@dataclass
class PackedLayout:
    """Switch-bit layout packing several output-width functions into one
    binary function: ell = sum of widths, switch bits = ceil(log2 ell)."""

    total_width: int
    switch_bits: int
    offsets: list[int]


def pack_functions(widths: list[int]) -> PackedLayout:
    if not widths or any(w < 1 for w in widths):
        raise ValueError("need at least one positive output width")
    total = sum(widths)
    offsets = [0]
    for w in widths[:-1]:
        offsets.append(offsets[-1] + w)
    return PackedLayout(total, math.ceil(math.log2(total)) if total > 1 else 0, offsets)


def equivalent_binary_input_length(m: int, s: int, eps: float, const_c: float = 1.0) -> int:
    """Input length of the single binary function replacing s calls to
    2^m-dimensional diagonal oracles at overall accuracy eps:
    m + ceil(log2 s) + ceil(log2 log2 (s/eps + const_c)).

    The additive constant inside the loglog is open; the default 1 is a
    placeholder.
    """
    if m < 0 or s < 1 or eps <= 0:
        raise ValueError("need m >= 0, s >= 1, eps > 0")
    inner = s / eps + const_c
    if inner <= 2.0:
        raise ValueError("parameters leave the loglog term undefined")
    switch = math.ceil(math.log2(s)) if s > 1 else 0
    return m + switch + math.ceil(math.log2(math.log2(inner)))
