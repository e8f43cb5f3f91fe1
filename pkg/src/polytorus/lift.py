"""Minimal-norm preimages of phi(z) = z_1 + ... + z_d under the Riesz
projection.

For conjugate exponents 1/p + 1/q = 1 the unique minimal-L^q element with
analytic part phi is C |phi|^(p-2) phi with C = d / ||phi||_p^p; it is
1-homogeneous, so only the degree-one coefficients need checking. For
d = 2 its Fourier coefficients have a closed form in Gamma functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._kernels import abs_power_mean, lift_weight
from .config import DEFAULT, Config
from .constants import INF, conjugate, gamma, rgamma
from .fourier import (
    FourierSeries,
    GridFunction,
    canonical,
    extract_coefficients,
    is_analytic,
)


@dataclass
class MinimalLift:
    d: int
    q: float
    p: float
    normalizer: float  # C = d / ||phi||_p^p
    phi_norm_p: float
    grid: GridFunction  # samples of psi


def build_lift(d: int, q: float, n: int | None = None, config: Config = DEFAULT) -> MinimalLift:
    """Sample psi = C |phi|^(p-2) phi on the N^d grid.

    Grid points where phi vanishes (a measure-zero set) get psi = 0, which
    keeps 1-homogeneity exact on the grid.
    """
    if not 1 <= d <= 4:
        raise ValueError(f"need d in 1..4, got {d}")
    if not (q == INF or q > 1.0):
        raise ValueError(f"need q in (1, inf], got {q}")
    p = conjugate(q) if q != INF else 1.0
    n = n or config.lift_grid_n(d)
    if n**d > config.grid_max_points:
        raise ValueError(f"grid of {n}^{d} points exceeds the cost cap")

    phi = FourierSeries({(0,) * j + (1,): 1.0 for j in range(d)}, dim=d)
    grid = phi.sample_grid(n)
    moment = abs_power_mean(grid.values, p)  # ||phi||_p^p at this N
    normalizer = d / moment
    psi = lift_weight(grid.values, p, normalizer)
    return MinimalLift(
        d=d,
        q=q,
        p=p,
        normalizer=normalizer,
        phi_norm_p=moment ** (1.0 / p),
        grid=GridFunction(dim=d, points_per_axis=n, values=psi),
    )


@dataclass
class ProjectionReport:
    ok: bool
    tolerance: float
    unit_coefficient_error: float  # worst |c(e_j) - 1|
    max_analytic_violation: float  # largest spurious analytic coefficient
    worst_index: tuple  # multi-index of the largest violation
    dominant_nonanalytic: list = field(default_factory=list)  # [(alpha, |c|), ...]


def verify_projection(
    lift: MinimalLift, max_deg: int | None = None, config: Config = DEFAULT
) -> ProjectionReport:
    """Check spectrally that the analytic part of psi is exactly phi.

    The coefficient at each e_j must be 1 and every other analytic
    coefficient below tolerance (1e-6 for p >= 2, relaxed to 1e-3 for the
    singular-weight regime p < 2).
    """
    max_deg = max_deg or config.lift_max_deg
    tol = 1e-6 if lift.p >= 2.0 else 1e-3
    series = extract_coefficients(lift.grid, max_deg, config=config)

    unit_err = 0.0
    worst_unit = ()
    for j in range(lift.d):
        alpha = canonical((0,) * j + (1,))
        err = abs(series.terms.get(alpha, 0j) - 1.0)
        if err > unit_err:
            unit_err, worst_unit = err, alpha

    spurious = 0.0
    worst_spurious = ()
    nonanalytic = []
    units = {canonical((0,) * j + (1,)) for j in range(lift.d)}
    for alpha, c in series.terms.items():
        if alpha in units:
            continue
        if is_analytic(alpha):
            if abs(c) > spurious:
                spurious, worst_spurious = abs(c), alpha
        else:
            nonanalytic.append((alpha, abs(c)))
    nonanalytic.sort(key=lambda item: -item[1])

    ok = unit_err <= tol and spurious <= tol
    worst = worst_unit if unit_err >= spurious else worst_spurious
    return ProjectionReport(
        ok=ok,
        tolerance=tol,
        unit_coefficient_error=unit_err,
        max_analytic_violation=spurious,
        worst_index=worst,
        dominant_nonanalytic=nonanalytic[:5],
    )


def d2_closed_form_coefficient(p: float, k: int) -> float:
    """Coefficient of z_1^k z_2^(1-k) in the d=2 lift:
    Gamma(1+p/2) Gamma(p/2) / (Gamma(1+p/2-k) Gamma(p/2+k)), with the
    reciprocal-Gamma convention (0 at the poles)."""
    if p <= 1:
        raise ValueError(f"need p > 1, got {p}")
    return gamma(1.0 + p / 2.0) * gamma(p / 2.0) * rgamma(1.0 + p / 2.0 - k) * rgamma(p / 2.0 + k)


def minimal_norm_identity(lift: MinimalLift) -> tuple[float, float]:
    """(||psi||_q on the grid, d / ||phi||_p); equal for the true minimizer."""
    values = lift.grid.values
    if lift.q == INF:
        lhs = float(np.max(np.abs(values)))
    else:
        lhs = abs_power_mean(values, lift.q) ** (1.0 / lift.q)
    rhs = lift.d / lift.phi_norm_p
    return lhs, rhs


def grid_q_norm(lift: MinimalLift, values: np.ndarray) -> float:
    """q-norm of arbitrary samples on the lift's grid (used by the
    perturbation spot-checks)."""
    if lift.q == INF:
        return float(np.max(np.abs(values)))
    return abs_power_mean(values, lift.q) ** (1.0 / lift.q)
