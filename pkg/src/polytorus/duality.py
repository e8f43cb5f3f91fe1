"""Dual norms of linear functions on the truncated polytorus.

The dual norm sup |<f, phi>| / ||f||_p may be computed over linear f only
(homogeneous projection and tail restriction are both contractive), which
turns it into a low-dimensional maximization over the nonnegative part of
the unit sphere. The reported value is a certified lower bound, bracketed
by the ratio at phi itself and the dual Khintchine upper bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .config import DEFAULT, Config
from .constants import khintchine_constants
from .fourier import LinearPolynomial, symmetric_linear
from .norms import linear_norm


@dataclass(frozen=True)
class DualNormResult:
    value: float
    maximizer: LinearPolynomial  # unit H^2 norm
    lower_certificate: float  # ratio at the test vector itself
    upper_certificate: float  # ||phi||_2 / a_p


def _ratio(c: np.ndarray, weights: np.ndarray, p: float, config: Config) -> float:
    norm = linear_norm(LinearPolynomial(c), p, config=config).value
    if norm == 0.0:
        return 0.0
    return float(c @ weights) / norm


def _project(c: np.ndarray) -> np.ndarray:
    c = np.maximum(c, 0.0)
    n = np.linalg.norm(c)
    if n == 0.0:
        c = np.ones_like(c)
        n = np.linalg.norm(c)
    return c / n


def dual_norm_linear(
    phi: LinearPolynomial,
    p: float,
    restarts: int | None = None,
    seed: int = 0,
    maxiter: int = 60,
    polish: bool = True,
    config: Config = DEFAULT,
) -> DualNormResult:
    """Maximize |<f, phi>| / ||f||_p over unit-H^2 linear f.

    Phases are rotated away first (all working coefficients nonnegative);
    projected gradient ascent with finite-difference gradients, followed by
    a Nelder-Mead polish, over the stated number of restarts.
    """
    if not 1 <= p < math.inf:
        raise ValueError(f"need 1 <= p < inf, got {p}")
    weights = np.abs(np.asarray(phi.coeffs, dtype=np.complex128)).astype(float)
    if weights.size == 0 or not weights.any():
        raise ValueError("phi must be non-trivial")
    restarts = config.dual_restarts if restarts is None else restarts
    d = weights.size

    phi2 = float(np.linalg.norm(weights))
    lower = phi2**2 / linear_norm(LinearPolynomial(weights), p, config=config).value
    upper = phi2 / khintchine_constants(p).a

    rng = np.random.Generator(np.random.Philox(seed))
    starts = [_project(weights.copy())]
    while len(starts) < max(restarts, 1):
        starts.append(_project(np.abs(rng.standard_normal(d))))

    best_val, best_c = -math.inf, starts[0]
    for start in starts:
        c = _ascend(start, weights, p, maxiter, config)
        val = _ratio(c, weights, p, config)
        # Nelder-Mead polish on the projected objective
        if polish and d > 1:
            res = optimize.minimize(
                lambda x: -_ratio(_project(x), weights, p, config),
                c,
                method="Nelder-Mead",
                options={"maxiter": 40 * d, "xatol": 1e-7, "fatol": 1e-10},
            )
            polished = _project(res.x)
            pval = _ratio(polished, weights, p, config)
            if pval > val:
                c, val = polished, pval
        if val > best_val + 1e-15:
            best_val, best_c = val, c

    raw = np.asarray(phi.coeffs, dtype=np.complex128)
    mod = np.abs(raw)
    phases = np.where(mod > 0.0, raw / np.where(mod > 0.0, mod, 1.0), 1.0)
    maximizer = LinearPolynomial(best_c * phases)
    best_val = max(best_val, lower)
    return DualNormResult(
        value=best_val,
        maximizer=maximizer,
        lower_certificate=lower,
        upper_certificate=upper,
    )


def _ascend(
    c: np.ndarray, weights: np.ndarray, p: float, maxiter: int, config: Config
) -> np.ndarray:
    """Projected gradient ascent on the nonnegative unit sphere."""
    h = 1e-5
    step = 0.5
    val = _ratio(c, weights, p, config)
    for _ in range(maxiter):
        grad = np.zeros_like(c)
        for j in range(c.size):
            e = np.zeros_like(c)
            e[j] = h
            grad[j] = (_ratio(_project(c + e), weights, p, config)
                       - _ratio(_project(c - e), weights, p, config)) / (2 * h)
        gnorm = np.linalg.norm(grad)
        if gnorm < 1e-10:
            break
        improved = False
        while step > 1e-10:
            cand = _project(c + step * grad / gnorm)
            cval = _ratio(cand, weights, p, config)
            if cval > val + 1e-14:
                c, val = cand, cval
                improved = True
                step = min(step * 2.0, 1.0)
                break
            step *= 0.5
        if not improved:
            break
    return c


def shift_average(f: LinearPolynomial) -> tuple[float, LinearPolynomial]:
    """Cyclic-shift symmetrization of a nonnegative-coefficient linear
    polynomial: returns (sum c_j / sqrt(d), polynomial with all
    coefficients equal to the mean)."""
    coeffs = np.asarray(f.coeffs, dtype=np.complex128)
    if np.any(coeffs.imag != 0.0) or np.any(coeffs.real < 0.0):
        raise ValueError("coefficients must be phase-normalized nonnegative")
    d = coeffs.size
    total = float(coeffs.real.sum())
    lam = total / math.sqrt(d)
    return lam, LinearPolynomial([total / d] * d)


def verify_dual_inverse(
    d: int,
    p: float,
    restarts: int | None = None,
    seed: int = 0,
    config: Config = DEFAULT,
) -> tuple[float, float]:
    """Measured dual norm of (z_1+...+z_d)/sqrt(d) against the predicted
    inverse of its own norm."""
    if d > 4:
        raise ValueError(f"limited to d <= 4, got {d}")
    phi = symmetric_linear(d)
    measured = dual_norm_linear(phi, p, restarts=restarts, seed=seed, config=config).value
    predicted = 1.0 / linear_norm(phi, p, config=config).value
    return measured, predicted


def sup_norm_dual_linear(f: LinearPolynomial) -> float:
    """Dual norm against H^infty: the largest coefficient modulus."""
    return max((abs(c) for c in f.coeffs), default=0.0)


@dataclass(frozen=True)
class PointEvaluationReport:
    dual_norm: float
    hp_norm: float
    dual_expansion_error: float
    hp_expansion_error: float


def point_evaluation_check(eps: float, r: float, p: float) -> PointEvaluationReport:
    """One-variable point-evaluation functional at w = eps.

    Its dual norm on H^r is (1-eps^2)^(-1/r); the H^p norm of the symbol
    is the H^2 norm of (1-eps*z)^(-p/2) raised to 2/p, summed from the
    binomial series. Both expand as 1 + eps^2 * {1/r, p/4} + O(eps^4).
    """
    if not 0 < eps < 0.5:
        raise ValueError(f"need 0 < eps < 1/2, got {eps}")
    if r < 1 or p < 1:
        raise ValueError("need r, p >= 1")
    dual = (1.0 - eps * eps) ** (-1.0 / r)

    a = p / 2.0
    coeff = 1.0  # (a)_n / n!
    total = 0.0
    x = eps * eps
    n = 0
    while True:
        term = coeff * coeff * x**n
        total += term
        if term < 1e-16 and n > 2:
            break
        n += 1
        coeff *= (a + n - 1.0) / n
        if n > 10_000:
            raise RuntimeError("binomial series failed to truncate")
    hp = total ** (1.0 / p)
    return PointEvaluationReport(
        dual_norm=dual,
        hp_norm=hp,
        dual_expansion_error=abs(dual - (1.0 + x / r)),
        hp_expansion_error=abs(hp - (1.0 + p * x / 4.0)),
    )
