"""Frobenius descent computations over F_p[x_1, ..., x_n]."""

from .polynomials import (
    ContextMismatch,
    NotDivisible,
    ParseError,
    Polynomial,
    RingContext,
    exact_divide,
    frobenius_power,
    parse_polynomial,
    ring_arithmetic,
)
from .groebner import (
    GREVLEX,
    LEX,
    Ideal,
    MonomialOrder,
    ResourceLimitError,
    bracket_power,
    groebner_basis,
    ideal_contains,
    ideal_equal,
    ideal_product,
    ideal_sum,
    lift,
    normal_form,
)
from .frobenius import (
    FrobeniusBasis,
    FrobeniusDecomposition,
    cartier_project,
    decompose,
    recompose,
    frobenius_root_chain,
    root_ideal,
    root_ideal_of_multiple,
    splitting_compose,
)
from .diffops import (
    DiffOp,
    DualElement,
    ann_je,
    apply,
    compose,
    de_orbit,
    embed,
    frobenius_twist,
    is_de_stable,
    je_membership,
    phi_map,
    psi_inverse,
    psi_map,
)
from .localization import (
    ChainReport,
    FracSubmodule,
    HypothesisError,
    LocalizedElement,
    UnitStructure,
    chain_report,
    de_generated,
    frobenius_action,
    generation_witness,
    is_unit_submodule,
    pullback,
    root_check,
    apply_fraction,
    theta,
    theta_inverse,
)

__version__ = "0.1.0"
