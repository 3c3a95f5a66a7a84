"""Zero boundaries of heat-evolved generalized Airy kernels (Pearcey family)."""

__version__ = "0.1.0"

from .boundary import (  # noqa: E402
    BoundaryTrajectory,
    Branch,
    RayleighState,
    Sample,
    abel_implicit_residual,
    asymptotic_boundary,
    closed_form_boundary,
    closed_form_trajectory,
    initial_slope,
    rayleigh_rhs,
    restart_at,
    slope_from_v,
    trace_abel,
    trace_rayleigh,
)
from .errors import (  # noqa: E402
    AccuracyError,
    BlowUpError,
    DomainError,
    DoubleZeroError,
    InvalidKernelError,
    NotFoundError,
    PearceyError,
    RangeError,
    SingularityError,
)
from .evolve import (  # noqa: E402
    EvolvedKernel,
    Kernel,
    airy3_closed_form,
    get_kernel,
    hermite_closed_form,
    linear_boundary_closed_form,
    quartic_kernel,
)
from .kernels import airy_ai, airy_ai_prime, find_zeros, phi4, phi4_derivative, phi4_series  # noqa: E402
from .quadrature import ExponentPolynomial, QuadratureSpec, oscillatory_integral, truncation_radius  # noqa: E402
from .verify import (  # noqa: E402
    ResidualReport,
    check_airy4_identities,
    check_heat_equation,
    check_hermite_discrepancy,
    check_hit_identities,
    check_scaled_limit,
    check_zero_residual,
)
