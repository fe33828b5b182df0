"""Stability of spherical catenoids and helicoids in hyperbolic 3-space.

Numerics for the catenary family ``sigma_a``, its Jacobi fields, the
least-area threshold and the conjugate helicoids. The hot integrands run in
a compiled extension when it is available, with a pure Python fallback.
"""
__version__ = "0.1.0"

from ._backend import backend_name, compiled_available, use_backend
from .catenary import (
    NearDegenerateWarning,
    arclength,
    catenary_curve,
    rho,
    sin_theta,
    varrho,
    varrho_prime,
    varrho_second,
    x_of,
    y_of,
)
from .helicoid import classify_helicoid, pitch_from_hyperbolic, pitch_from_spherical
from .jacobi import (
    BracketError,
    E_of,
    classify_catenoid,
    envelope_point,
    find_a_c,
    find_z,
    intersect_catenaries,
    xi,
    zeta,
)
from .leastarea import K_const, a_l_const, area_deficit, band_area, compare_areas, disk_pair_area
from .lemmas import A3_const, A4_const, verify_all
from .models import DomainError
from .quad import (
    BudgetExhausted,
    DivergenceError,
    IntegrandError,
    QuadratureError,
    QuadResult,
    Tolerance,
    integrate_semi_infinite,
    integrate_smooth,
    integrate_sqrt_singular_lo,
    using_tolerance,
)

__all__ = [
    "__version__",
    "backend_name",
    "compiled_available",
    "use_backend",
    "NearDegenerateWarning",
    "arclength",
    "catenary_curve",
    "rho",
    "sin_theta",
    "varrho",
    "varrho_prime",
    "varrho_second",
    "x_of",
    "y_of",
    "classify_helicoid",
    "pitch_from_hyperbolic",
    "pitch_from_spherical",
    "BracketError",
    "E_of",
    "classify_catenoid",
    "envelope_point",
    "find_a_c",
    "find_z",
    "intersect_catenaries",
    "xi",
    "zeta",
    "K_const",
    "a_l_const",
    "area_deficit",
    "band_area",
    "compare_areas",
    "disk_pair_area",
    "A3_const",
    "A4_const",
    "verify_all",
    "DomainError",
    "BudgetExhausted",
    "DivergenceError",
    "IntegrandError",
    "QuadratureError",
    "QuadResult",
    "Tolerance",
    "integrate_semi_infinite",
    "integrate_smooth",
    "integrate_sqrt_singular_lo",
    "using_tolerance",
]
