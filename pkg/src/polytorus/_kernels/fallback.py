"""Pure-NumPy versions of the hot kernels.

These are the reference implementations; the Cython module in ``_core``
computes the same quantities with fused loops. Both must agree to within
float accumulation error (see bench/benchmark_kernels.py).
"""

import numpy as np

BACKEND = "numpy"


def grid_evaluate(alphas, coeffs, n, dim):
    """Evaluate sum_t coeffs[t] * exp(i alpha_t . theta) on the uniform grid.

    alphas: (T, dim) integer exponents, coeffs: (T,) complex.
    Grid points are theta_j = 2*pi*n_j/n; the result is flat in C order,
    axis j of the reshaped array corresponding to variable j+1.
    """
    alphas = np.asarray(alphas, dtype=np.int64)
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    out = np.zeros((n,) * dim, dtype=np.complex128)
    theta = 2.0 * np.pi * np.arange(n) / n
    for alpha, c in zip(alphas, coeffs):
        term = np.asarray(c, dtype=np.complex128)
        for j in range(dim):
            shape = [1] * dim
            shape[j] = n
            term = term * np.exp(1j * alpha[j] * theta).reshape(shape)
        out += term
    return out.reshape(-1)


def abs_power_mean(values, p):
    """Mean of |values|**p, the quadrature workhorse of the grid norms."""
    return float(np.mean(np.abs(values) ** p))


def lift_weight(values, p, scale):
    """scale * |v|**(p-2) * v elementwise, with the zero set mapped to 0.

    Grid points that land exactly on the zero set carry only float
    cancellation noise (|v| ~ 1e-16 with arbitrary phase); for p < 2 the
    singular weight would blow that noise up to O(1), so anything within
    rounding error of zero is clamped to zero outright.
    """
    a = np.abs(values)
    cutoff = 1e-12 * a.max() if a.size else 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        w = np.where(a > cutoff, a ** (p - 2.0), 0.0)
    return scale * w * values
