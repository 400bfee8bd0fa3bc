"""Coefficient ring, Cartan data and the word model of the reduced module."""

from .laurent import LaurentQ
from .cartan import CartanData, build_cartan, pairing_value, g_qinv, g_from_pairing
from .words import (
    Generator,
    Word,
    Weight,
    Element,
    is_ordered,
    word_weight,
    format_word,
    enumerate_ordered
)

__all__ = [
    'LaurentQ',
    'CartanData',
    'build_cartan',
    'pairing_value',
    'g_qinv',
    'g_from_pairing',
    'Generator',
    'Word',
    'Weight',
    'Element',
    'is_ordered',
    'word_weight',
    'format_word',
    'enumerate_ordered'
]
