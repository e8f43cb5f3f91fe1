"""L^p norms of trigonometric polynomials on truncated tori.

General polynomials go through grid quadrature with N-doubling. Linear
polynomials have specialized paths: exact multinomial sums for even
integer p, a hypergeometric closed form for two terms, nested quadrature
for three and four variables, counter-based Monte Carlo for large d, and
the Bessel-integral moments of the Pearson random walk for symmetric
coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate, special

from . import constants
from ._kernels import abs_power_mean
from .config import DEFAULT, Config
from .fourier import FourierSeries, LinearPolynomial


@dataclass(frozen=True)
class NormEstimate:
    value: float
    method: str  # grid | reduction1d | multinomial | montecarlo | bessel | cltLimit
    error_bound: float  # absolute; 0 for exact methods
    samples_or_points: int
    converged: bool = True

    def __float__(self) -> float:
        return self.value


def grid_norm(
    f: FourierSeries, p: float, n: int | None = None, config: Config = DEFAULT
) -> NormEstimate:
    """((1/N^d) sum |f(theta)|^p)^(1/p) with N doubled until successive
    values agree to the configured relative tolerance."""
    if p < 1:
        raise ValueError(f"need p >= 1, got {p}")
    d = max(f.dim, 1)
    if d > 4:
        raise ValueError(f"grid quadrature limited to d <= 4, got d={d}")
    n = max(n or config.grid_start_n, 4, 2 * f.max_abs_exponent() + 1)
    prev = None
    while True:
        grid = f.sample_grid(n)
        value = abs_power_mean(grid.values, p) ** (1.0 / p)
        if prev is not None:
            diff = abs(value - prev)
            if diff <= config.grid_rtol * max(value, 1e-300):
                return NormEstimate(value, "grid", diff, n**d)
            if (2 * n) ** d > config.grid_max_points:
                return NormEstimate(value, "grid", diff, n**d, converged=False)
        prev = value
        n *= 2


def two_term_norm(c1: complex, c2: complex, p: float) -> NormEstimate:
    """Norm of c1*z1 + c2*z2 by reduction to one angular variable."""
    if p < 1:
        raise ValueError(f"need p >= 1, got {p}")
    a, b = abs(c1), abs(c2)
    if a == 0.0 and b == 0.0:
        return NormEstimate(0.0, "reduction1d", 0.0, 0)
    moment, err, info = integrate.quad(
        lambda t: (a * a + b * b + 2 * a * b * math.cos(t)) ** (p / 2.0),
        0.0,
        math.pi,
        epsabs=1e-13,
        epsrel=1e-13,
        limit=200,
        full_output=True,
    )[:3]
    moment /= math.pi
    value = moment ** (1.0 / p)
    # propagate the quadrature error through the 1/p power
    bound = (err / math.pi) * value / (p * max(moment, 1e-300))
    return NormEstimate(value, "reduction1d", max(bound, 1e-14), info["neval"])


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def multinomial_moment(weights, k: int) -> float:
    """E |sum_j c_j z_j|^(2k) given weights |c_j|^2, by diagonal pairings:
    sum over |beta| = k of multinomial(k, beta)^2 * prod w_j^beta_j."""
    w = [float(x) for x in weights]
    total = 0.0
    kfact = math.factorial(k)
    for beta in _compositions(k, len(w)):
        coef = kfact
        for b in beta:
            coef //= math.factorial(b)
        term = float(coef) ** 2
        for wj, b in zip(w, beta):
            term *= wj**b
        total += term
    return total


def multinomial_norm(f: LinearPolynomial, p: int) -> NormEstimate:
    """Exact L^p norm of a linear polynomial for even integer p."""
    if p not in (2, 4, 6, 8):
        raise ValueError(f"even-p path supports p in {{2,4,6,8}}, got {p}")
    k = p // 2
    if f.dim**k > 2_000_000:
        raise ValueError(f"multinomial expansion too large: d={f.dim}, p={p}")
    moment = multinomial_moment([abs(c) ** 2 for c in f.coeffs], k)
    return NormEstimate(moment ** (1.0 / p), "multinomial", 0.0, f.dim**k)


def monte_carlo_norm(
    f: LinearPolynomial,
    p: float,
    samples: int,
    seed: int,
    config: Config = DEFAULT,
) -> NormEstimate:
    """Monte Carlo estimate with a counter-based generator (Philox), so the
    sample stream is a pure function of the seed. Reports a 99% confidence
    half-width propagated through the 1/p power."""
    if p < 1:
        raise ValueError(f"need p >= 1, got {p}")
    if samples < 1000:
        raise ValueError(f"need at least 10^3 samples, got {samples}")
    rng = np.random.Generator(np.random.Philox(seed))
    coeffs = np.asarray(f.coeffs, dtype=np.complex128)
    total = 0.0
    total_sq = 0.0
    chunk = 1_000_000
    done = 0
    while done < samples:
        m = min(chunk, samples - done)
        theta = rng.uniform(0.0, 2.0 * math.pi, size=(m, f.dim))
        vals = np.abs(np.exp(1j * theta) @ coeffs) ** p
        total += float(vals.sum())
        total_sq += float((vals * vals).sum())
        done += m
    mean = total / samples
    var = max(total_sq / samples - mean * mean, 0.0)
    half_width = config.mc_confidence_z * math.sqrt(var / samples)
    value = mean ** (1.0 / p)
    bound = half_width * value / (p * max(mean, 1e-300))
    return NormEstimate(value, "montecarlo", bound, samples)


# -- Pearson random walk moments --------------------------------------------


@lru_cache(maxsize=None)
def _even_walk_moment(d: int, j: int) -> float:
    """E R^(2j) for the d-step unit walk, exact."""
    return multinomial_moment((1.0,) * d, j) if j else 1.0


@lru_cache(maxsize=None)
def _char_series(d: int, nterms: int) -> np.ndarray:
    """Coefficients a_j of J0(t)^d = sum_j a_j t^(2j), j < nterms.

    The head through j = floor(p/2) reproduces the exact even moments
    (-1)^j E R^(2j) / (4^j (j!)^2)."""
    j0 = np.array([(-1.0) ** j / (4.0**j * math.factorial(j) ** 2) for j in range(nterms)])
    acc = np.zeros(nterms)
    acc[0] = 1.0
    for _ in range(d):
        acc = np.convolve(acc, j0)[:nterms]
    return acc


@lru_cache(maxsize=8)
def _gauss_legendre(order: int):
    return np.polynomial.legendre.leggauss(order)


def _piecewise_integral(func, edges: np.ndarray, order: int = 16) -> float:
    """Fixed-order Gauss-Legendre on each cell, summed in index order."""
    x, w = _gauss_legendre(order)
    a, b = edges[:-1, None], edges[1:, None]
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    vals = func(mid + half * x[None, :])
    return float(np.sum((vals * w[None, :] * half).sum(axis=1)))


def pearson_walk_moment(d: int, p: float, config: Config = DEFAULT) -> NormEstimate:
    """(E R^p)^(1/p) for R = |z_1 + ... + z_d|, the endpoint distance of a
    d-step Pearson random walk.

    The radial density is a Hankel integral of J0(t)^d; exchanging the
    order of integration gives the single oscillatory integral

        E R^p = int_0^inf (J0(t)^d - T(t)) t^(-1-p) dt
                / (2^(-p-1) Gamma(-p/2) / Gamma(1+p/2)),

    where T is the Taylor polynomial of the characteristic function through
    degree 2*floor(p/2) (exact even moments). The integral is split at the
    zeros of J0 and each cell integrated with fixed Gauss-Legendre; the
    polynomial tail is added in closed form.
    """
    if d < 1:
        raise ValueError(f"need d >= 1, got {d}")
    if not 1 <= p < d:
        raise ValueError(f"need 1 <= p < d for the walk representation, got p={p}, d={d}")
    if p == 2 * round(p / 2):  # even integer: exact moment, no quadrature
        moment = _even_walk_moment(d, int(round(p / 2)))
        return NormEstimate(moment ** (1.0 / p), "bessel", 0.0, 0)

    k = math.floor(p / 2)
    coeffs = _char_series(d, k + 1)  # Taylor head of J0(t)^d in powers of t^2
    zeros = special.jn_zeros(0, config.bessel_zeros)

    def integrand(t):
        poly = np.zeros_like(t)
        for j in range(k + 1):
            poly += coeffs[j] * t ** (2 * j)
        return (special.j0(t) ** d - poly) * t ** (-1.0 - p)

    # first cell [0, z_1] termwise from the series: the subtraction of the
    # Taylor head is exact there, avoiding float cancellation at small t
    tail_series = _char_series(d, 80)[k + 1 :]
    powers = 2.0 * np.arange(k + 1, k + 1 + tail_series.size) - p
    head_terms = tail_series * zeros[0] ** powers / powers
    if abs(head_terms[-1]) > 1e-15 * max(abs(head_terms).max(), 1e-300):
        raise RuntimeError("series head of the walk integral failed to converge")
    integral = float(head_terms.sum())
    integral += _piecewise_integral(integrand, zeros)
    big_t = zeros[-1]
    integral -= float(
        np.sum([coeffs[j] * big_t ** (2 * j - p) / (p - 2 * j) for j in range(k + 1)])
    )
    denom = 2.0 ** (-p - 1.0) * constants.gamma(-p / 2.0) / constants.gamma(1.0 + p / 2.0)
    moment = integral / denom
    # truncated oscillatory tail, bounded via the J0 envelope sqrt(2/(pi t))
    tail = (2.0 / math.pi) ** (d / 2.0) * big_t ** (-d / 2.0 - p) / (d / 2.0 + p)
    err_moment = tail / abs(denom) + 1e-10
    value = moment ** (1.0 / p)
    bound = err_moment * value / (p * moment)
    return NormEstimate(value, "bessel", bound, config.bessel_zeros)


def clt_limit_norm(p: float) -> float:
    """Large-d limit of the norm of (z_1+...+z_d)/sqrt(d): Gamma(1+p/2)^(1/p)."""
    return constants.gamma_moment_constant(p)


# -- fast dispatch for linear polynomials ------------------------------------


def _two_term_moment(hi, lo, p: float):
    """E |hi + lo e^(it)|^p for hi >= lo >= 0, hypergeometric closed form."""
    hi = np.asarray(hi, dtype=float)
    lo = np.asarray(lo, dtype=float)
    safe = np.where(hi > 0.0, hi, 1.0)
    ratio = np.where(hi > 0.0, (lo / safe) ** 2, 0.0)
    return np.where(hi > 0.0, hi**p * special.hyp2f1(-p / 2.0, -p / 2.0, 1.0, ratio), 0.0)


def linear_norm(
    f: LinearPolynomial,
    p: float,
    samples: int | None = None,
    seed: int = 0,
    config: Config = DEFAULT,
) -> NormEstimate:
    """Best available estimator for the L^p norm of a linear polynomial.

    Exact multinomial sums for even p; closed forms and nested quadrature
    for d <= 4; walk moments for symmetric coefficients; Monte Carlo
    otherwise. Phase invariance lets everything work with |c_j|.
    """
    if p < 1:
        raise ValueError(f"need p >= 1, got {p}")
    a = np.sort(np.abs(np.asarray(f.coeffs, dtype=np.complex128)))[::-1]
    a = a[a > 0.0]
    d = a.size
    if d == 0:
        return NormEstimate(0.0, "multinomial", 0.0, 0)
    if p in (2, 4, 6, 8) and d ** (int(p) // 2) <= 2_000_000:
        return multinomial_norm(LinearPolynomial(a), int(p))
    if d == 1:
        return NormEstimate(float(a[0]), "reduction1d", 0.0, 1)
    if d == 2:
        moment = float(_two_term_moment(a[0], a[1], p))
        return NormEstimate(moment ** (1.0 / p), "reduction1d", 1e-13, 1)
    if d == 3:
        moment, err = integrate.quad(
            lambda t: float(
                _two_term_moment(
                    max(a[0], abs(a[1] + a[2] * np.exp(1j * t))),
                    min(a[0], abs(a[1] + a[2] * np.exp(1j * t))),
                    p,
                )
            ),
            0.0,
            math.pi,
            epsabs=1e-11,
            limit=200,
        )
        moment /= math.pi
        value = moment ** (1.0 / p)
        return NormEstimate(value, "reduction1d", max(err, 1e-11) * value / p, 0)
    if d == 4:
        x, w = _gauss_legendre(64)
        t = math.pi * (x + 1.0) / 2.0
        wt = w * math.pi / 2.0
        w1 = np.abs(a[0] + a[1] * np.exp(1j * t))
        w2 = np.abs(a[2] + a[3] * np.exp(1j * t))
        big, small = np.meshgrid(w1, w2, indexing="ij")
        hi = np.maximum(big, small)
        lo = np.minimum(big, small)
        moment = float(wt @ _two_term_moment(hi, lo, p) @ wt) / math.pi**2
        value = moment ** (1.0 / p)
        return NormEstimate(value, "reduction1d", 1e-5 * value, 64 * 64)
    if np.allclose(a, a[0]) and p < d:
        walk = pearson_walk_moment(d, p, config=config)
        scale = float(a[0])
        return NormEstimate(
            walk.value * scale, "bessel", walk.error_bound * scale, walk.samples_or_points
        )
    return monte_carlo_norm(f, p, samples or config.mc_default_samples, seed, config=config)
