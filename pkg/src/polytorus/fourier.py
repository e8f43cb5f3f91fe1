"""Truncated Fourier series on the d-torus.

A series is a sparse map from integer exponent tuples (trailing zeros
stripped) to complex coefficients. Negative exponents are conjugate
powers, z^(-m) = conj(z)^m on the torus. The grid transforms use the
normalized Haar measure, i.e. plain means over uniform grids.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from ._kernels import grid_evaluate
from .config import DEFAULT, Config


class DimensionMismatchError(ValueError):
    pass


class AliasingError(ValueError):
    pass


def canonical(alpha) -> tuple[int, ...]:
    """Canonical multi-index: integer tuple with no trailing zeros."""
    a = tuple(int(x) for x in alpha)
    while a and a[-1] == 0:
        a = a[:-1]
    return a


def degree(alpha) -> int:
    return sum(alpha)


def is_analytic(alpha) -> bool:
    return all(x >= 0 for x in alpha)


class FourierSeries:
    """Sparse trigonometric polynomial  f(z) = sum_alpha c_alpha z^alpha."""

    __slots__ = ("terms", "dim")

    def __init__(self, terms=None, dim: int = 0):
        clean: dict[tuple[int, ...], complex] = {}
        for alpha, c in (terms or {}).items():
            a = canonical(alpha)
            c = complex(c)
            if c != 0:
                clean[a] = clean.get(a, 0j) + c
        clean = {a: c for a, c in clean.items() if c != 0}
        self.terms = clean
        self.dim = max([dim] + [len(a) for a in clean])

    # -- constructors -------------------------------------------------

    @staticmethod
    def monomial(alpha, coeff=1.0) -> "FourierSeries":
        return FourierSeries({canonical(alpha): coeff})

    @staticmethod
    def zero() -> "FourierSeries":
        return FourierSeries({})

    # -- algebra ------------------------------------------------------

    def __add__(self, other: "FourierSeries") -> "FourierSeries":
        terms = dict(self.terms)
        for a, c in other.terms.items():
            terms[a] = terms.get(a, 0j) + c
        return FourierSeries(terms, dim=max(self.dim, other.dim))

    def __sub__(self, other: "FourierSeries") -> "FourierSeries":
        return self + other.scale(-1.0)

    def __mul__(self, other: "FourierSeries") -> "FourierSeries":
        terms: dict[tuple[int, ...], complex] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                width = max(len(a), len(b))
                key = canonical(
                    tuple(
                        (a[j] if j < len(a) else 0) + (b[j] if j < len(b) else 0)
                        for j in range(width)
                    )
                )
                terms[key] = terms.get(key, 0j) + ca * cb
        return FourierSeries(terms, dim=max(self.dim, other.dim))

    def scale(self, factor) -> "FourierSeries":
        return FourierSeries({a: factor * c for a, c in self.terms.items()}, dim=self.dim)

    def __eq__(self, other) -> bool:
        return isinstance(other, FourierSeries) and self.terms == other.terms

    def __repr__(self) -> str:
        return f"FourierSeries({len(self.terms)} terms, dim={self.dim})"

    def approx_equal(self, other: "FourierSeries", tol: float = 1e-12) -> bool:
        keys = set(self.terms) | set(other.terms)
        return all(abs(self.terms.get(k, 0j) - other.terms.get(k, 0j)) <= tol for k in keys)

    # -- structure ----------------------------------------------------

    def evaluate(self, point) -> complex:
        """Value at angles theta; point must cover every active variable."""
        theta = np.asarray(point, dtype=float)
        if theta.ndim != 1 or theta.size < self.dim:
            raise DimensionMismatchError(
                f"need at least {self.dim} angles, got shape {theta.shape}"
            )
        total = 0j
        for alpha, c in self.terms.items():
            total += c * np.exp(1j * sum(a * theta[j] for j, a in enumerate(alpha)))
        return complex(total)

    def riesz_project(self) -> "FourierSeries":
        """Keep exactly the analytic terms (componentwise nonnegative)."""
        return FourierSeries(
            {a: c for a, c in self.terms.items() if is_analytic(a)}, dim=self.dim
        )

    def homogeneous_part(self, k: int) -> "FourierSeries":
        return FourierSeries(
            {a: c for a, c in self.terms.items() if degree(a) == k}, dim=self.dim
        )

    def homogeneous_degrees(self) -> list[int]:
        return sorted({degree(a) for a in self.terms})

    def restrict(self, d: int) -> "FourierSeries":
        """Drop every term that touches a variable beyond position d."""
        if d < 0:
            raise ValueError("d must be nonnegative")
        return FourierSeries(
            {a: c for a, c in self.terms.items() if len(a) <= d}, dim=min(self.dim, d)
        )

    def tensor_double(self) -> "FourierSeries":
        """f(z1,z3,...) * f(z2,z4,...), the norm-amplification doubling."""
        odd = FourierSeries({_spread(a, 0): c for a, c in self.terms.items()})
        even = FourierSeries({_spread(a, 1): c for a, c in self.terms.items()})
        out = odd * even
        out.dim = max(out.dim, 2 * self.dim)
        return out

    def inner_product(self, other: "FourierSeries") -> complex:
        small, big = (self, other) if len(self.terms) <= len(other.terms) else (other, self)
        total = 0j
        for a, c in small.terms.items():
            if a in big.terms:
                if small is self:
                    total += c * np.conj(big.terms[a])
                else:
                    total += big.terms[a] * np.conj(c)
        return complex(total)

    def norm2(self) -> float:
        return float(np.sqrt(sum(abs(c) ** 2 for c in self.terms.values())))

    def max_abs_exponent(self) -> int:
        return max((max(abs(x) for x in a) for a in self.terms if a), default=0)

    # -- grids ----------------------------------------------------------

    def sample_grid(self, n: int) -> "GridFunction":
        """Sample on the uniform n^d grid; requires n alias-free."""
        if n <= 2 * self.max_abs_exponent():
            raise AliasingError(
                f"grid of {n} points per axis aliases degree {self.max_abs_exponent()}"
            )
        d = max(self.dim, 1)
        alphas = np.zeros((len(self.terms), d), dtype=np.int64)
        coeffs = np.zeros(len(self.terms), dtype=np.complex128)
        for t, (a, c) in enumerate(self.terms.items()):
            alphas[t, : len(a)] = a
            coeffs[t] = c
        values = grid_evaluate(alphas, coeffs, n, d)
        return GridFunction(dim=d, points_per_axis=n, values=np.asarray(values))

    # -- serialization ----------------------------------------------------

    def to_payload(self) -> dict:
        return {
            "dim": self.dim,
            "terms": [
                {"alpha": list(a), "re": c.real, "im": c.imag}
                for a, c in sorted(self.terms.items())
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_payload())

    @staticmethod
    def from_payload(payload: dict) -> "FourierSeries":
        terms = {
            tuple(t["alpha"]): complex(t["re"], t["im"]) for t in payload["terms"]
        }
        return FourierSeries(terms, dim=int(payload.get("dim", 0)))

    @staticmethod
    def from_json(text: str) -> "FourierSeries":
        return FourierSeries.from_payload(json.loads(text))


def _spread(alpha, offset: int) -> tuple[int, ...]:
    """Re-index variable j to variable 2j+offset (0-based)."""
    out = [0] * (2 * len(alpha))
    for j, a in enumerate(alpha):
        out[2 * j + offset] = a
    return tuple(out)


@dataclass
class LinearPolynomial:
    """f(z) = sum_j coeffs[j] * z_j."""

    coeffs: tuple

    def __init__(self, coeffs):
        self.coeffs = tuple(complex(c) for c in coeffs)

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def norm2(self) -> float:
        return float(np.sqrt(sum(abs(c) ** 2 for c in self.coeffs)))

    def to_series(self) -> FourierSeries:
        terms = {}
        for j, c in enumerate(self.coeffs):
            alpha = (0,) * j + (1,)
            terms[alpha] = c
        return FourierSeries(terms, dim=self.dim)


def symmetric_linear(d: int) -> LinearPolynomial:
    """The normalized symmetric linear function (z_1 + ... + z_d)/sqrt(d)."""
    return LinearPolynomial([1.0 / np.sqrt(d)] * d)


@dataclass
class GridFunction:
    """Samples on the uniform N^d grid of the d-torus, flat in C order.

    theta_j = 2 pi n_j / N; integration against Haar measure is the plain
    mean of the values.
    """

    dim: int
    points_per_axis: int
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.complex128).reshape(-1)
        if self.values.size != self.points_per_axis**self.dim:
            raise ValueError("values length must be N^d")

    def as_array(self) -> np.ndarray:
        return self.values.reshape((self.points_per_axis,) * self.dim)

    def mean(self) -> complex:
        return complex(self.values.mean())


def extract_coefficients(
    grid: GridFunction, max_deg: int, config: Config = DEFAULT
) -> FourierSeries:
    """All Fourier coefficients with every |exponent| <= max_deg, by FFT.

    Exact for trigonometric polynomials of degree <= max_deg per axis on
    alias-free grids; coefficients below the purge tolerance are dropped.
    """
    n = grid.points_per_axis
    if n <= 2 * max_deg:
        raise AliasingError(f"need N > 2*max_deg, got N={n}, max_deg={max_deg}")
    spectrum = np.fft.fftn(grid.as_array()) / n**grid.dim
    rng = np.arange(-max_deg, max_deg + 1)
    terms = {}
    for alpha in np.stack(
        np.meshgrid(*([rng] * grid.dim), indexing="ij"), axis=-1
    ).reshape(-1, grid.dim):
        c = complex(spectrum[tuple(alpha % n)])
        if abs(c) > config.coeff_purge_tol:
            terms[canonical(alpha)] = c
    return FourierSeries(terms, dim=grid.dim)
