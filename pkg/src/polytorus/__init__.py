"""Riesz projection, Khintchine constants and dual norms on truncated
polytori, with a certifier for the unboundedness region of the projection
between L^q and L^p."""

from ._kernels import BACKEND as kernel_backend
from .certify import (
    Certificate,
    CertificationFailure,
    amplification_demo,
    certify_unbounded,
    critical_table,
)
from .config import Config, load_config
from .constants import (
    ExponentTriple,
    KhintchineConstants,
    critical_curve,
    gamma_moment_constant,
    khintchine_constants,
    legacy_condition,
    solve_critical_p,
    unboundedness_margin,
)
from .duality import (
    DualNormResult,
    dual_norm_linear,
    point_evaluation_check,
    shift_average,
    sup_norm_dual_linear,
    verify_dual_inverse,
)
from .fourier import (
    FourierSeries,
    GridFunction,
    LinearPolynomial,
    extract_coefficients,
    symmetric_linear,
)
from .lift import (
    MinimalLift,
    build_lift,
    d2_closed_form_coefficient,
    minimal_norm_identity,
    verify_projection,
)
from .norms import (
    NormEstimate,
    clt_limit_norm,
    grid_norm,
    linear_norm,
    monte_carlo_norm,
    multinomial_norm,
    pearson_walk_moment,
    two_term_norm,
)

__version__ = "0.1.0"
