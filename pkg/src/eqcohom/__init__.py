"""Bigraded Z/2-equivariant cohomology rings: points, spheres, twisted
projective spaces, rotation groups with the half-twisted involution, and
the associated Stiefel manifolds."""

from .coeff import (
    BiDegree,
    CoeffElement,
    ConeMonomial,
    ONE,
    RHO,
    TAU,
    THETA,
    ZERO,
    coeff_mul,
    dim_at,
    monomial_at,
    orbit_dim_at,
)
from .forgetful import (
    ClassicalElement,
    PoincarePolynomial,
    classical_poincare,
    les_exactness_check,
    psi_coeff,
    psi_element,
    psi_image_poincare,
)
from .grading import (
    BettiTable,
    FreeModule,
    SphereElement,
    betti,
    module_iso_check,
    sphere_mul,
    sphere_product_module,
    tensor_module,
)
from .projective import (
    INFINITE,
    ProjElement,
    ProjMonomial,
    TensorElement,
    expand_in_basis,
    rp_basis,
    rp_mul,
    tensor_mul,
)
from .rotation import (
    PresentationReport,
    RotElement,
    admissible_sequences,
    check_presentation,
    exponent_bound,
    omega_star,
    so_generators,
    so_mul,
)
from .spaces import get_space
from .stiefel import (
    StiefelElement,
    pi_star,
    stiefel_basis,
    stiefel_mul,
)

__version__ = "0.1.0"
