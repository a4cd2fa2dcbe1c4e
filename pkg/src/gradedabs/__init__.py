"""Graded rings and modules over small carriers, with decision procedures for
graded prime, 2-absorbing, A-prime and A-2-absorbing submodules."""

from .core import (
    DEFAULT_BOUND,
    Carrier,
    GradingGroup,
    PreconditionError,
    StructureError,
    UnsupportedModeError,
    canonical_compare,
    deg_combine,
    deg_invert,
    enumerate_carrier,
)
from .localization import localize_module, localize_ring, localize_submodule, saturation_cross_check
from .predicates import (
    MultiplicativeSet,
    check_component_ideal_condition,
    check_ideal_component_condition,
    colon_characterization,
    colon_quotient_2abs,
    is_graded_2_absorbing,
    is_graded_A_2_absorbing,
    is_graded_A_prime,
    is_graded_prime,
    is_witness,
    mult_closure,
    nonzero_integers,
    saturate,
    stabilization_check,
    units,
)
from .structures import (
    CheckOutcome,
    GradedHomomorphism,
    GradedSubmodule,
    Verdict,
    colon_module,
    colon_ring,
    cyclic_product,
    generate_submodule,
    group_algebra,
    hom_image,
    hom_preimage,
    integers,
    intersect,
    is_graded_submodule,
    kernel,
    modular,
    product_ring,
    ring_as_module,
    validate_graded_module,
    validate_graded_ring,
)

__version__ = "0.1.0"
