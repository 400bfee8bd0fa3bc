"""Star product, creation operators x~ and annihilation operators Omega~."""

from .star import (
    StarCase,
    StarMultiplier,
    StarProduct,
    star_case,
    star_pair,
    straighten,
    xtilde
)
from .omega import (
    OmegaVariant,
    OmegaOperator,
    min_struct_support,
    p_exponent,
    omega,
    omega_support
)
from .soundness import check_rewrite_step, inversion_measure

__all__ = [
    'StarCase',
    'StarMultiplier',
    'StarProduct',
    'star_case',
    'star_pair',
    'straighten',
    'xtilde',
    'OmegaVariant',
    'OmegaOperator',
    'min_struct_support',
    'p_exponent',
    'omega',
    'omega_support',
    'check_rewrite_step',
    'inversion_measure'
]
