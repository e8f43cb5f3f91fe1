"""Gamma evaluation, Khintchine constants, the critical exponent and the
unboundedness margin for the Riesz projection between L^q and L^p.

The Gamma function uses the Lanczos rational approximation (g=7, n=9
coefficients), accurate to ~15 significant digits on the positive axis,
with the reflection formula below 1/2. Negative non-integer arguments are
needed for the random-walk moment formula and the d=2 lift coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

INF = math.inf


def gamma(x: float) -> float:
    """Gamma(x) for real non-pole x."""
    if x == math.floor(x):
        if x <= 0:
            raise ValueError(f"Gamma pole at {x}")
        if x <= 20:  # exact for small integers
            return float(math.factorial(int(x) - 1))
    if x < 0.5:
        # reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return math.pi / (math.sin(math.pi * x) * gamma(1.0 - x))
    x -= 1.0
    acc = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        acc += _LANCZOS[i] / (x + i)
    t = x + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (x + 0.5) * math.exp(-t) * acc


def rgamma(x: float) -> float:
    """1/Gamma(x); zero at the poles (nonpositive integers)."""
    if x <= 0 and x == math.floor(x):
        return 0.0
    return 1.0 / gamma(x)


def beta(x: float, y: float) -> float:
    return gamma(x) * gamma(y) * rgamma(x + y)


def gamma_moment_constant(p: float) -> float:
    """Gamma(1 + p/2)^(1/p), the p-th moment constant of the complex
    normal limit of (z_1 + ... + z_d)/sqrt(d)."""
    if p < 1:
        raise ValueError(f"need p >= 1, got {p}")
    return gamma(1.0 + p / 2.0) ** (1.0 / p)


@dataclass(frozen=True)
class KhintchineConstants:
    p: float
    a: float  # lower constant, min(1, Gamma(1+p/2)^(1/p))
    b: float  # upper constant, max(1, Gamma(1+p/2)^(1/p))


def khintchine_constants(p: float) -> KhintchineConstants:
    if not 1 <= p < INF:
        raise ValueError(f"need 1 <= p < inf, got {p}")
    g = gamma_moment_constant(p)
    return KhintchineConstants(p=p, a=min(1.0, g), b=max(1.0, g))


@dataclass(frozen=True)
class ExponentTriple:
    """(p, q, r) with 1/q + 1/r = 1; q may be inf, in which case r = 1."""

    p: float
    q: float
    r: float

    def __post_init__(self):
        if self.p < 1:
            raise ValueError(f"need p >= 1, got {self.p}")
        if self.q == INF:
            if self.r != 1.0:
                raise ValueError("q = inf requires r = 1 exactly")
        elif not (1.0 < self.q):
            raise ValueError(f"need q in (1, inf], got {self.q}")
        elif abs(1.0 / self.q + 1.0 / self.r - 1.0) > 1e-12:
            raise ValueError(f"conjugacy 1/q + 1/r = 1 violated for q={self.q}, r={self.r}")

    @staticmethod
    def from_pq(p: float, q: float) -> "ExponentTriple":
        return ExponentTriple(p=p, q=q, r=conjugate(q))


def conjugate(q: float) -> float:
    """Hoelder conjugate; exact 1 at q = inf."""
    if q == INF:
        return 1.0
    if q <= 1.0:
        raise ValueError(f"need q > 1, got {q}")
    return q / (q - 1.0)


def unboundedness_margin(t: ExponentTriple) -> float:
    """Gamma(1+p/2)^(1/p) * Gamma(1+r/2)^(1/r); > 1 means the Riesz
    projection is unbounded from L^q to L^p."""
    if not 2.0 <= t.p <= t.q:
        raise ValueError(f"need 2 <= p <= q, got p={t.p}, q={t.q}")
    return gamma_moment_constant(t.p) * gamma_moment_constant(t.r)


def legacy_condition(t: ExponentTriple) -> float:
    """The older one-variable criterion p*r/4 (> 1 means unbounded)."""
    if not 2.0 <= t.p <= t.q:
        raise ValueError(f"need 2 <= p <= q, got p={t.p}, q={t.q}")
    return t.p * t.r / 4.0


def _bracketed_root(f, lo: float, hi: float, width: float = 1e-10) -> float:
    """Bisection to the requested bracket width, then one secant polish."""
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0:
        raise ValueError(f"root not bracketed on [{lo}, {hi}]")
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if fmid == 0.0:
            return mid
        if flo * fmid < 0:
            hi, fhi = mid, fmid
        else:
            lo, flo = mid, fmid
    if fhi != flo:
        return lo - flo * (hi - lo) / (fhi - flo)
    return 0.5 * (lo + hi)


@lru_cache(maxsize=1)
def solve_critical_p() -> float:
    """Unique positive root of Gamma(1+p/2)^(1/p) = 2/sqrt(pi); the
    L^infty -> L^p unboundedness threshold (= 3.31138...)."""
    target = 2.0 / math.sqrt(math.pi)
    return _bracketed_root(lambda p: gamma_moment_constant(p) - target, 2.0, 6.0)


def critical_curve(q: float) -> float:
    """The p in [2, q] where the unboundedness margin crosses 1 for the
    given q; clamps at q if the margin stays below 1 on the whole range."""
    if q < 2.0:
        raise ValueError(f"need q >= 2, got {q}")
    if q == 2.0:
        return 2.0
    factor = gamma_moment_constant(conjugate(q))

    def margin_minus_one(p: float) -> float:
        return gamma_moment_constant(p) * factor - 1.0

    hi = 6.0 if q == INF else min(q, 6.0)
    if margin_minus_one(hi) <= 0.0:
        return hi if hi < 6.0 else INF
    if margin_minus_one(2.0) >= 0.0:
        return 2.0
    return _bracketed_root(margin_minus_one, 2.0, hi)


def legacy_curve(q: float) -> float:
    """p solving p*r/4 = 1, clamped to [2, q]."""
    if q < 2.0:
        raise ValueError(f"need q >= 2, got {q}")
    p = 4.0 / conjugate(q)
    return min(max(p, 2.0), q)


MARZO_SEIP_BOUND = 3.67632  # earlier two-variable upper bound for the q=inf threshold
