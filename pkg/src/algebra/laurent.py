"""
Exact Laurent polynomials in q^(1/2) with integer coefficients.

Exponents are stored doubled (the key 2e stands for q^e) so half-integer
powers stay exact. Values are canonical: no zero coefficients are stored, and
equality is equality of the term maps.
"""

import logging
from typing import Dict, Iterable, List, Optional, Tuple, Union

logger = logging.getLogger(__name__)

# Sentinels returned (not raised) by the reduction predicates.
NOT_CONGRUENT = None
POLE = None


class LaurentQ:
    """Sparse element of Z[q^(1/2), q^(-1/2)]."""

    __slots__ = ('_terms', '_hash')

    def __init__(self, terms: Optional[Dict[int, int]] = None):
        clean = {}
        if terms:
            for e2, coeff in terms.items():
                if not isinstance(e2, int) or not isinstance(coeff, int):
                    raise TypeError(f"LaurentQ terms must be int -> int, got {e2!r}: {coeff!r}")
                if coeff:
                    clean[e2] = coeff
        self._terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> 'LaurentQ':
        return cls()

    @classmethod
    def one(cls) -> 'LaurentQ':
        return cls({0: 1})

    @classmethod
    def constant(cls, n: int) -> 'LaurentQ':
        return cls({0: n})

    @classmethod
    def qpow(cls, e2: int, coeff: int = 1) -> 'LaurentQ':
        """coeff * q^(e2/2)."""
        return cls({e2: coeff})

    @classmethod
    def q(cls, e: int = 1, coeff: int = 1) -> 'LaurentQ':
        """coeff * q^e for an integer exponent e."""
        return cls({2 * e: coeff})

    @classmethod
    def coerce(cls, value: Union['LaurentQ', int]) -> 'LaurentQ':
        if isinstance(value, LaurentQ):
            return value
        if isinstance(value, int):
            return cls.constant(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to LaurentQ")

    # -- inspection ---------------------------------------------------------

    def terms(self) -> List[Tuple[int, int]]:
        """(2e, coefficient) pairs sorted by exponent ascending."""
        return sorted(self._terms.items())

    def coefficient(self, e2: int) -> int:
        return self._terms.get(e2, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def min_exponent(self) -> Optional[int]:
        """Smallest stored 2e, or None for zero."""
        return min(self._terms) if self._terms else None

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        try:
            other = LaurentQ.coerce(other)
        except TypeError:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for e2, coeff in other._terms.items():
            out[e2] = out.get(e2, 0) + coeff
        return LaurentQ(out)

    __radd__ = __add__

    def __neg__(self) -> 'LaurentQ':
        return LaurentQ({e2: -c for e2, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = LaurentQ.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        try:
            other = LaurentQ.coerce(other)
        except TypeError:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, LaurentQ):
            return NotImplemented
        if not self._terms or not other._terms:
            return LaurentQ()
        if len(other._terms) == 1:
            (e2, c), = other._terms.items()
            return LaurentQ({k + e2: v * c for k, v in self._terms.items()})
        out: Dict[int, int] = {}
        for a2, ca in self._terms.items():
            for b2, cb in other._terms.items():
                out[a2 + b2] = out.get(a2 + b2, 0) + ca * cb
        return LaurentQ(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> 'LaurentQ':
        if not isinstance(n, int) or n < 0:
            raise ValueError("LaurentQ powers must be non-negative integers")
        result = LaurentQ.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, n: int) -> 'LaurentQ':
        if n == 0:
            return LaurentQ()
        return LaurentQ({e2: c * n for e2, c in self._terms.items()})

    def shift(self, e2: int) -> 'LaurentQ':
        """Multiply by q^(e2/2)."""
        if e2 == 0:
            return self
        return LaurentQ({k + e2: c for k, c in self._terms.items()})

    # -- predicates ---------------------------------------------------------

    def is_regular_at_zero(self) -> bool:
        return all(e2 >= 0 for e2 in self._terms)

    def is_int_poly(self) -> bool:
        return all(e2 >= 0 and e2 % 2 == 0 for e2 in self._terms)

    def has_half_exponents(self) -> bool:
        return any(e2 % 2 for e2 in self._terms)

    def mod_q2(self) -> Optional[Tuple[int, int]]:
        """(c0, c1) with self - c0 - c1*q in q^2 Z[q], or NOT_CONGRUENT."""
        if not self.is_int_poly():
            return NOT_CONGRUENT
        return self._terms.get(0, 0), self._terms.get(2, 0)

    def at_q0(self) -> Optional[int]:
        """Constant term when regular at zero, else POLE."""
        if not self.is_regular_at_zero():
            return POLE
        return self._terms.get(0, 0)

    # -- comparison / hashing -----------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentQ.constant(other)
        if not isinstance(other, LaurentQ):
            return NotImplemented
        return self._terms == other._terms

    def __ne__(self, other) -> bool:
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- encoding -----------------------------------------------------------

    def to_json(self) -> List[List[int]]:
        return [[e2, c] for e2, c in self.terms()]

    @classmethod
    def from_json(cls, data: Iterable[Iterable[int]]) -> 'LaurentQ':
        terms: Dict[int, int] = {}
        for pair in data:
            e2, coeff = pair
            if e2 in terms:
                raise ValueError(f"duplicate exponent {e2} in LaurentQ encoding")
            terms[int(e2)] = int(coeff)
        return cls(terms)

    def __repr__(self) -> str:
        return f"LaurentQ({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e2, coeff in sorted(self._terms.items(), reverse=True):
            mono = _format_power(e2)
            mag = abs(coeff)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            sign = '-' if coeff < 0 else '+'
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ('-' if first_sign == '-' else '') + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def _format_power(e2: int) -> str:
    if e2 == 0:
        return ''
    if e2 % 2:
        return f"q^({e2}/2)"
    e = e2 // 2
    return 'q' if e == 1 else f"q^{e}"


# Function forms of the ring operations.

def lp_add(a: LaurentQ, b: LaurentQ) -> LaurentQ:
    return a + b


def lp_mul(a: LaurentQ, b: LaurentQ) -> LaurentQ:
    return a * b


def lp_scale(a: LaurentQ, n: int) -> LaurentQ:
    return a.scale(n)


def lp_qpow(e2: int) -> LaurentQ:
    return LaurentQ.qpow(e2)


def lp_is_regular_at_zero(a: LaurentQ) -> bool:
    return a.is_regular_at_zero()


def lp_is_int_poly(a: LaurentQ) -> bool:
    return a.is_int_poly()


def lp_mod_q2(a: LaurentQ) -> Optional[Tuple[int, int]]:
    return a.mod_q2()


def lp_at_q0(a: LaurentQ) -> Optional[int]:
    return a.at_q0()
