"""End-to-end certification that the Riesz projection is unbounded from
L^q to L^p.

The witness ratio for the minimal lift of the symmetric linear function
equals the norm product ||phi_d||_p * ||phi_d||_r with 1/q + 1/r = 1, so
the scan never needs to build the lift: it evaluates both norms with
rigorous error bars for d = 1..d_max and certifies as soon as the
conservative lower bound of the product exceeds 1.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import config as config_mod
from .config import DEFAULT, Config
from .constants import INF, ExponentTriple, unboundedness_margin
from .fourier import FourierSeries, symmetric_linear
from .norms import NormEstimate, grid_norm, linear_norm, monte_carlo_norm, pearson_walk_moment

EXIT_CERTIFIED = 0
EXIT_CONDITION_UNSATISFIED = 2
EXIT_INCONCLUSIVE = 3


@dataclass(frozen=True)
class Certificate:
    p: float
    q: float
    r: float
    d: int  # witness dimension
    product_lower_bound: float
    margin: float  # product_lower_bound - 1
    method_log: tuple = ()


@dataclass(frozen=True)
class CertificationFailure:
    p: float
    q: float
    r: float
    reason: str  # "condition-not-satisfied" | "inconclusive"
    best_margin: float
    clt_product: float
    method_log: tuple = ()

    @property
    def exit_code(self) -> int:
        if self.reason == "condition-not-satisfied":
            return EXIT_CONDITION_UNSATISFIED
        return EXIT_INCONCLUSIVE


def phi_norm_estimate(d: int, exponent: float, seed: int, config: Config = DEFAULT) -> NormEstimate:
    """||phi_d||_exponent with an error bar; the sharpest valid method wins."""
    if d == 1:
        return NormEstimate(1.0, "multinomial", 0.0, 1)
    phi = symmetric_linear(d)
    if exponent in (2, 4, 6, 8) and d ** (int(exponent) // 2) <= 2_000_000:
        return linear_norm(phi, exponent, config=config)
    if 1 <= exponent < d:
        walk = pearson_walk_moment(d, exponent, config=config)
        scale = 1.0 / math.sqrt(d)
        return NormEstimate(
            walk.value * scale, "bessel", walk.error_bound * scale, walk.samples_or_points
        )
    if d <= 4:
        return linear_norm(phi, exponent, config=config)
    return monte_carlo_norm(phi, exponent, config.mc_default_samples, seed, config=config)


def certify_unbounded(
    p: float,
    q: float,
    d_max: int = 12,
    seed: int | None = None,
    config: Config = DEFAULT,
):
    """Scan witness dimensions and return a Certificate or a failure report.

    Error bars are subtracted before comparing with 1, so a certificate is
    conservative: Monte Carlo noise cannot produce a false positive.
    """
    if not 2.0 <= p <= q:
        raise ValueError(f"need 2 <= p <= q, got p={p}, q={q}")
    if d_max > 12:
        raise ValueError(f"d_max capped at 12, got {d_max}")
    seed = config.default_seed if seed is None else seed
    triple = ExponentTriple.from_pq(p, q)
    clt_product = unboundedness_margin(triple)

    def entry(d: int) -> dict:
        est_p = phi_norm_estimate(d, p, seed + 2 * d, config)
        est_r = phi_norm_estimate(d, triple.r, seed + 2 * d + 1, config)
        lower = (est_p.value - est_p.error_bound) * (est_r.value - est_r.error_bound)
        return {
            "d": d,
            "norm_p": est_p.value,
            "norm_p_error": est_p.error_bound,
            "norm_p_method": est_p.method,
            "norm_r": est_r.value,
            "norm_r_error": est_r.error_bound,
            "norm_r_method": est_r.method,
            "product_lower_bound": lower,
        }

    dims = list(range(1, d_max + 1))
    with ThreadPoolExecutor(max_workers=min(config_mod.threads(), len(dims))) as pool:
        log = tuple(pool.map(entry, dims))

    for row in log:  # ordered by d; the scan never stops at a dip
        if row["product_lower_bound"] > 1.0:
            return Certificate(
                p=p,
                q=q,
                r=triple.r,
                d=row["d"],
                product_lower_bound=row["product_lower_bound"],
                margin=row["product_lower_bound"] - 1.0,
                method_log=log[: row["d"]],
            )
    best = max(row["product_lower_bound"] for row in log)
    reason = (
        "condition-not-satisfied" if clt_product <= 1.0 + 1e-12 else "inconclusive"
    )
    return CertificationFailure(
        p=p,
        q=q,
        r=triple.r,
        reason=reason,
        best_margin=best - 1.0,
        clt_product=clt_product,
        method_log=log,
    )


def revalidate(cert: Certificate, seed: int = 9999, config: Config = DEFAULT) -> bool:
    """Recompute both witness norms with an independent method and check
    agreement within the combined error bars."""
    phi = symmetric_linear(cert.d)
    row = cert.method_log[-1]
    checks = []
    for exponent, value, err in (
        (cert.p, row["norm_p"], row["norm_p_error"]),
        (cert.r, row["norm_r"], row["norm_r_error"]),
    ):
        if cert.d <= 4:
            alt = grid_norm(phi.to_series(), exponent, config=config)
        else:
            alt = monte_carlo_norm(phi, exponent, config.mc_default_samples, seed, config=config)
        combined = err + alt.error_bound + 1e-9
        checks.append(abs(alt.value - value) <= 3.0 * combined)
        seed += 1
    return all(checks)


def critical_table(q_values) -> list[dict]:
    """Rows (q, theorem curve p, legacy curve p, comparison bound).

    The two-variable comparison bound 3.67632 applies only on the q = inf
    row; other rows carry None in that column.
    """
    from .constants import MARZO_SEIP_BOUND, critical_curve, legacy_curve

    rows = []
    for q in q_values:
        if q < 2.0:
            raise ValueError(f"need q >= 2, got {q}")
        rows.append(
            {
                "q": q,
                "theorem3_p": critical_curve(q),
                "legacy_p": legacy_curve(q),
                "marzo_seip_reference": MARZO_SEIP_BOUND if q == INF else None,
            }
        )
    return rows


def amplification_demo(
    f: FourierSeries, p: float, q: float, n: int | None = None, config: Config = DEFAULT
) -> tuple[float, float]:
    """(||Pf||_p/||f||_q, same ratio for the tensor-doubled f); the second
    must be the square of the first."""
    if f.dim > 2:
        raise ValueError(f"doubling needs f.dim <= 2 for grid norms, got {f.dim}")
    if p < 1 or q < 1:
        raise ValueError("need p, q >= 1")
    ratio = (
        grid_norm(f.riesz_project(), p, n=n, config=config).value
        / grid_norm(f, q, n=n, config=config).value
    )
    doubled = f.tensor_double()
    ratio2 = (
        grid_norm(doubled.riesz_project(), p, n=n, config=config).value
        / grid_norm(doubled, q, n=n, config=config).value
    )
    return ratio, ratio2
