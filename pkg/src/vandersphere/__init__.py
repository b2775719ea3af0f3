"""Extreme points of the Vandermonde determinant on the unit sphere.

The determinant of the square Vandermonde matrix, restricted to the unit
sphere in R^n, attains its extrema exactly at the n! coordinate permutations
of the root vector of a rescaled Hermite polynomial.  This package constructs
and certifies those points, cross-checks them with a projected gradient
ascent and an equivalent inverse-square-sum identity, implements the limit
relations tying generalized Vandermonde determinants to ordinary ones, and
exports sphere-grid evaluation data for dimensions 3 through 7.
"""

from .vandermonde import (
    IndexOutOfRange,
    NonSquareMatrix,
    RepeatedNodes,
    ZeroNodeWithNonIntegerExponent,
    build_generalized,
    build_vandermonde,
    det_general,
    det_vandermonde,
    elementary_symmetric,
    grad_vn,
    log_branch,
)
from .extrema import (
    CapExceeded,
    ClosedFormEntry,
    ClosedFormReport,
    DimensionTooSmall,
    ExtremePointSet,
    MonicPolynomial,
    RootFindingFailure,
    MAX_DIMENSION,
    closed_form_roots,
    enumerate_extrema,
    hermite_coeffs,
    hermite_roots,
    pn_from_hermite,
    pn_recursive,
    solve_extrema,
)
from .optimizer import (
    OptimizationTrace,
    OptimizerConfig,
    equi_residual,
    hyperplane_restricted_maximize,
    maximize_vn,
    restart_traces,
    riemannian_grad,
)
from .limits import (
    DegenerateExponents,
    DimensionGuard,
    LengthMismatch,
    RatioLimitReport,
    ZeroNode,
    default_t_schedule,
    exponent_sum,
    factorial_diagonal,
    minor,
    minor_series_gn,
    ratio_limit,
    truncated_factorization,
)
from .grids import (
    EmbeddingTransform,
    GeneralizedOnlyFor3D,
    SphereGrid,
    TRANSFORMS,
    UnsupportedDimension,
    embed,
    grid_eval,
    grid_local_maxima,
    rodrigues_circle,
    rodrigues_matrix,
    sign_change_edges,
    spherical_to_t,
)

__version__ = "0.1.0"
