"""Discrete exterior calculus over commutative rings on lattice boxes.

Forms, chains, the exterior derivative and boundary maps, the integral
pairing, and a constructive solver that recovers potentials of closed forms
(simultaneous difference equations ``∂_i F = f_i`` and their higher-degree
analogues).
"""

from .chains import Cell, Chain, StokesReport, boundary, cell, pair, stokes_verify
from .errors import (
    CompatibilityError,
    ConfigurationError,
    DegreeError,
    DomainError,
    EmptyDomainError,
    FormatError,
    LatticeDECError,
    NotClosedError,
    OutOfDomainError,
    ResourceError,
    RingMismatchError,
    ValidationError,
)
from .forms import (
    Box,
    GridForm,
    exterior_derivative,
    form_from_function,
    form_get,
    form_is_zero,
    make_form,
    multi_indices,
    partial,
    sign_s,
    wedge,
    zero_form,
)
from .poincare import (
    PotentialResult,
    check_closed,
    h0_kernel_check,
    homotopy_K,
    pathsum_scalar_potential,
    pullback_cylinder,
    restrict_base,
    solve_potential,
)
from .ring import QQ, ZZ, FloatRing, ModularRing, Ring, RingSpec, Zmod, ring_eval, ring_from_spec
from .vec3 import (
    VectorField3,
    curl,
    div,
    grad,
    scalar_potential3,
    vector_potential3,
)

__version__ = "0.1.0"
