"""Evaluation package: the form, crystal checks, verification suites and reports."""

from .pairing import (
    pair,
    gram,
    check_window,
    length_two_closed_form
)
from .crystal import (
    HighestWeight,
    ModQClass,
    verma_is_irreducible,
    reduced_is_irreducible,
    classify_mod_q,
    check_lattice,
    check_basis,
    basis_set,
    predicted_single_node_reduction
)
from .batch import Window
from .reports import build_report, validate_report, summary_frame

__all__ = [
    'pair',
    'gram',
    'check_window',
    'length_two_closed_form',
    'HighestWeight',
    'ModQClass',
    'verma_is_irreducible',
    'reduced_is_irreducible',
    'classify_mod_q',
    'check_lattice',
    'check_basis',
    'basis_set',
    'predicted_single_node_reduction',
    'Window',
    'build_report',
    'validate_report',
    'summary_frame'
]
