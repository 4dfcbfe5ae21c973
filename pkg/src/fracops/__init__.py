"""Fractional integral operators at desk scale.

Riemann-Liouville fractional integration by product-trapezoid quadrature,
its Stieltjes variant for smooth increasing integrators (both directly
and by conjugation with the substitution operator), and the truncated
lower-triangular Toeplitz convolution algebra in which the plus/minus
square-root uniqueness of the integration operator can be checked
exactly. A deterministic CLI exposes the verification studies.
"""

from .convalg import (
    CmRootReport,
    SupportProfile,
    ToeplitzKernel,
    algebra_mul,
    algebra_pow,
    cm_root_experiment,
    commutation_residual,
    conv_operator,
    convolve,
    gl_weights,
    integration_kernel,
    titchmarsh_support,
    toeplitz_roots,
)
from .discretization import (
    Grid,
    SampledFunction,
    TriangularOperator,
    build_grid,
    evaluate,
    lp_norm,
    operator_norm,
)
from .fracint import (
    continuity_scan,
    index_law_residual,
    product_trapezoid_weights,
    rl_integrate,
    rl_kernel,
    rl_weights,
)
from .gammafn import gamma
from .lcg import Lcg64
from .stieltjes import (
    Integrator,
    NormBoundCheck,
    conjugated_integrate,
    conjugation_residual,
    invert,
    make_integrator,
    rh_norm_bound_check,
    stieltjes_integrate,
    stieltjes_weights,
    substitute,
    substitute_inverse,
)

__version__ = "0.1.0"

__all__ = [
    "CmRootReport",
    "Grid",
    "Integrator",
    "Lcg64",
    "NormBoundCheck",
    "SampledFunction",
    "SupportProfile",
    "ToeplitzKernel",
    "TriangularOperator",
    "algebra_mul",
    "algebra_pow",
    "build_grid",
    "cm_root_experiment",
    "commutation_residual",
    "conjugated_integrate",
    "conjugation_residual",
    "continuity_scan",
    "conv_operator",
    "convolve",
    "evaluate",
    "gamma",
    "gl_weights",
    "index_law_residual",
    "integration_kernel",
    "invert",
    "lp_norm",
    "make_integrator",
    "operator_norm",
    "product_trapezoid_weights",
    "rh_norm_bound_check",
    "rl_integrate",
    "rl_kernel",
    "rl_weights",
    "stieltjes_integrate",
    "stieltjes_weights",
    "substitute",
    "substitute_inverse",
    "titchmarsh_support",
    "toeplitz_roots",
]
