"""Closed-form cardinality/entropy bound calculators.

Support-size lower bounds for approximate designs, oracle input-length
bounds, the trivial scalable construction's parameter arithmetic, and the
scalability predicate.  Everything is evaluated in log-space with exact
big-integer cross-checks available at desk scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class BoundParams:
    """Universal constants the bound formulas depend on.

    None of these is pinned by theory; the defaults of 1 are placeholders
    for desk-scale exploration and every consumer takes them as explicit
    arguments.
    """

    c_diamond: float = 1.0
    c_design: float = 1.0
    additive_slack: float = 1.0

    def __post_init__(self):
        if self.c_diamond <= 0 or self.c_design <= 0:
            raise ValueError("constants must be positive")


def _log_binom(n: int, k: int) -> float:
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def prior_support_bound(d: int, t: int, delta: float, as_log: bool = False) -> float:
    """max{ (1-delta) C(d+t-1, t)^2, d^{2t} / ((1+delta) t!) }.

    Natural-log value with ``as_log``; the plain value may overflow to inf
    for large parameters.
    """
    if not 0.0 <= delta <= 1.0:
        raise ValueError("delta must be in [0, 1]")
    log_b2 = -math.log1p(delta) + 2 * t * math.log(d) - math.lgamma(t + 1)
    if delta >= 1.0:
        log_best = log_b2
    else:
        log_b1 = math.log1p(-delta) + 2 * _log_binom(d + t - 1, t)
        log_best = max(log_b1, log_b2)
    return log_best if as_log else _safe_exp(log_best)


def prior_support_bound_exact(d: int, t: int, delta: Fraction) -> Fraction:
    """Big-integer ground truth for the prior bound (tests and cross-checks)."""
    b1 = (1 - delta) * Fraction(math.comb(d + t - 1, t)) ** 2
    b2 = Fraction(d ** (2 * t), math.factorial(t)) / (1 + delta)
    return max(b1, b2)


def improved_support_bound(d: int, t: float, delta: float, c_design: float = 1.0,
                           as_log: bool = False) -> float:
    """((2-2delta)/(3+delta)) (c_design t / (d^2 ln(4/(1-delta))))^((d^2-1)/2).

    Valid for 0 <= delta < 1; the unspecified constant enters linearly in
    the base.
    """
    if not 0.0 <= delta < 1.0:
        raise ValueError("delta must be in [0, 1)")
    if t <= 0 or c_design <= 0:
        raise ValueError("t and c_design must be positive")
    pref = math.log(2.0 - 2.0 * delta) - math.log(3.0 + delta)
    denom = d * d * math.log(4.0 / (1.0 - delta))
    log_val = pref + 0.5 * (d * d - 1) * math.log(c_design * t / denom)
    return log_val if as_log else _safe_exp(log_val)


def _safe_exp(x: float) -> float:
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


@dataclass
class InputLengthBounds:
    """Oracle input-length lower bounds; None marks an out-of-regime formula."""

    m_design_1: float | None
    m_design_2: float | None
    m_net: float | None
    regime_notes: dict

    def to_json_dict(self) -> dict:
        return {
            "m_design_1": self.m_design_1,
            "m_design_2": self.m_design_2,
            "m_net": self.m_net,
            "regime_notes": self.regime_notes,
        }


def rom_input_length_bounds(d: int, t: float, delta: float, epsilon: float,
                            additive_slack: float = 1.0,
                            delta_bounded_away: bool = True) -> InputLengthBounds:
    """Input-length lower bounds for implementing designs/nets from one
    binary oracle.

    m_design_1 = log2 t + loglog2(d^2/t) - slack        (regime t < d^2)
    m_design_2 = 2 log2 d + loglog2(t/d^2) - slack      (regime t > d^2,
                 reported only when the advantage is bounded away from 1)
    m_net      = 2 log2 d + loglog2(1/epsilon) - slack
    """
    notes: dict = {}

    def loglog2(x: float) -> float | None:
        if x <= 1.0:
            return None
        return math.log2(math.log2(x))

    m1 = None
    v = loglog2(d * d / t) if t > 0 else None
    if v is None:
        notes["m_design_1"] = "undefined: needs t < d^2"
    else:
        m1 = math.log2(t) + v - additive_slack

    m2 = None
    if not delta_bounded_away:
        notes["m_design_2"] = "not reported: needs 1 - delta bounded away from 0"
    else:
        v = loglog2(t / (d * d)) if t > 0 else None
        if v is None:
            notes["m_design_2"] = "undefined: needs t > d^2"
        else:
            m2 = 2 * math.log2(d) + v - additive_slack

    m3 = None
    if epsilon <= 0:
        notes["m_net"] = "undefined: epsilon must be positive"
    else:
        v = loglog2(1.0 / epsilon)
        if v is None:
            notes["m_net"] = "undefined: needs epsilon < 1"
        else:
            m3 = 2 * math.log2(d) + v - additive_slack

    return InputLengthBounds(m1, m2, m3, notes)


@dataclass
class TrivialRomPruParams:
    """Parameter arithmetic of the exact-design lookup construction.

    The oracle stores the index of one element of an exact design of
    support size C(d^2+t-1, d^2-1)^2 with t = 2^kappa; the implementation
    reads that index bit by bit, so q = log2(support) and m = log2 q.
    Scalable in security but with q growing like d^2 kappa, not
    polylog(d).
    """

    d: int
    kappa: int
    t: int
    support_size_log2: float
    q: float
    m: float
    q_upper: float

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "kappa": self.kappa,
            "t": self.t,
            "support_size_log2": self.support_size_log2,
            "q": self.q,
            "m": self.m,
            "q_upper": self.q_upper,
        }


def trivial_rompru_params(d: int, kappa: int) -> TrivialRomPruParams:
    """Evaluate the trivial construction at t = 2^kappa; kappa >= 0."""
    if d < 2 or kappa < 0:
        raise ValueError("need d >= 2 and kappa >= 0")
    t = 1 << kappa
    log2_support = 2 * _log_binom(d * d + t - 1, d * d - 1) / math.log(2)
    q = log2_support
    m = math.log2(q) if q > 0 else 0.0
    q_upper = 2 * (d * d - 1) * math.log2(math.e * (d * d + t - 1) / (d * d - 1))
    return TrivialRomPruParams(d, kappa, t, log2_support, q, m, q_upper)


@dataclass(frozen=True)
class RomPruParams:
    """One point in ROM-PRU parameter space."""

    d: int
    kappa: int
    q: float
    m: float
    alpha_impl: float
    t: float
    delta: float

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("d must be >= 2")
        for name in ("kappa", "q", "m", "alpha_impl", "t", "delta"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")


@dataclass
class ScalableCheckReport:
    """Itemized scalability predicate plus the induced design record."""

    efficiency_ok: bool
    alpha_ok: bool
    queries_ok: bool
    advantage_ok: bool
    qm: float
    qm_budget: float
    induced_design: tuple[float, float]  # the construction is a (t, delta)-diamond-design

    @property
    def passes(self) -> bool:
        return self.efficiency_ok and self.alpha_ok and self.queries_ok and self.advantage_ok

    def to_json_dict(self) -> dict:
        return {
            "efficiency_ok": self.efficiency_ok,
            "alpha_ok": self.alpha_ok,
            "queries_ok": self.queries_ok,
            "advantage_ok": self.advantage_ok,
            "qm": self.qm,
            "qm_budget": self.qm_budget,
            "induced_design_t": self.induced_design[0],
            "induced_design_delta": self.induced_design[1],
            "passes": self.passes,
        }


def scalable_check(p: RomPruParams, poly_budget: float = 2.0) -> ScalableCheckReport:
    """Fixed-scale reading of the scalability definition.

    Efficiency is checked as q m <= (log2(d) kappa)^poly_budget, the
    polynomial cap standing in for poly(log d, kappa); the security items
    are alpha <= 2^-kappa, t >= 2^kappa and delta <= 2^-kappa.  The
    security parameters always induce a (t, delta)-diamond-design record.
    """
    qm = p.q * p.m
    budget = (math.log2(p.d) * p.kappa) ** poly_budget
    return ScalableCheckReport(
        efficiency_ok=qm <= budget,
        alpha_ok=p.alpha_impl <= 2.0 ** (-p.kappa),
        queries_ok=p.t >= 2.0**p.kappa,
        advantage_ok=p.delta <= 2.0 ** (-p.kappa),
        qm=qm,
        qm_budget=budget,
        induced_design=(p.t, p.delta),
    )
