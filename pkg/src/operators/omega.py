"""
Annihilation operators Omega~_{psi_i}(m) (twisted) and Omega_{psi_i}(m) at
gamma = 1 (classic), with exact finite cutoffs for the r-sums.
"""

import logging
from enum import Enum
from functools import lru_cache
from typing import Dict, List, Optional, Set, Tuple

from algebra.cartan import CartanData
from algebra.errors import NotOrderedInput, SearchExhausted
from algebra.laurent import LaurentQ
from algebra.words import Element, ElementBuilder, Word, format_word, is_ordered

from .star import CLEAN, Diagnostics, StarMultiplier, default_multiplier, merge_diagnostics

logger = logging.getLogger(__name__)


class OmegaVariant(Enum):
    TWISTED = 'twisted'
    CLASSIC = 'classic'

    @classmethod
    def parse(cls, text: str) -> 'OmegaVariant':
        return cls(text.strip().lower())


@lru_cache(maxsize=65536)
def _struct_support(i: int, w: Word) -> Optional[int]:
    if not w:
        return None
    head = w[0]
    candidates = []
    if head.node == i:
        candidates.append(-head.degree)
    inner = _struct_support(i, w[1:])
    if inner is not None:
        candidates.append(inner)
    return min(candidates) if candidates else None


def min_struct_support(C: CartanData, i: int, w: Word) -> Optional[int]:
    """
    Lower bound s with Omega(n)(w) = 0 for every n < s; None means no
    argument reaches a nonzero value (the empty word, or no factor on node i).
    """
    C.check_node(i)
    return _struct_support(i, tuple(w))


class OmegaOperator:
    """
    Evaluates one variant of the annihilation operators on words.

    Evaluations are memoized per instance unless memoize is False; a fresh
    instance gives an independent evaluation (used by the finiteness witnesses).
    """

    def __init__(self, C: CartanData,
                 variant: OmegaVariant = OmegaVariant.TWISTED,
                 star: Optional[StarMultiplier] = None,
                 cutoff_slack: int = 0,
                 search_slack: int = 0,
                 memoize: bool = True):
        """
        Args:
            C: Cartan data
            variant: TWISTED applies q^p per recursion node, CLASSIC applies 1
            star: Multiplier used for the inner x~ products (shared caches)
            cutoff_slack: Extra r values summed past the structural cutoff
            search_slack: Extra l values allowed in the p-exponent search
            memoize: Cache word evaluations and p-exponents; False recomputes
                every recursion node from scratch
        """
        self.C = C
        self.variant = variant
        self.star = star if star is not None else StarMultiplier(C)
        self.cutoff_slack = cutoff_slack
        self.search_slack = search_slack
        self.memoize = memoize
        self._words: Dict[Tuple[int, int, Word], Tuple[Element, Diagnostics]] = {}
        self._p: Dict[Tuple[int, int, int, Word], Tuple[int, Diagnostics]] = {}
        # p-exponents always come from the twisted operator
        self._twisted = self if variant is OmegaVariant.TWISTED else None

    def _twisted_operator(self) -> 'OmegaOperator':
        if self._twisted is None:
            self._twisted = OmegaOperator(self.C, OmegaVariant.TWISTED, self.star,
                                          self.cutoff_slack, self.search_slack, self.memoize)
        return self._twisted

    def p_exponent(self, i: int, i1: int, m: int, tail: Word) -> int:
        """
        Exponent p attached to a recursion node with head node i1.

        Returns:
            0 for positive pairing, 2 for zero pairing, otherwise
            -pairing * l + 1 with l the least l >= 0 such that
            Omega~_i(m - l)(tail) = 0
        """
        return self._search_p(i, i1, m, tail)[0]

    def _search_p(self, i: int, i1: int, m: int, tail: Word) -> Tuple[int, Diagnostics]:
        p = self.C.pairing_value(i, i1)
        if p > 0:
            return 0, CLEAN
        if p == 0:
            return 2, CLEAN
        key = (i, i1, m, tail)
        if self.memoize and key in self._p:
            return self._p[key]

        s = _struct_support(i, tail)
        bound = self.search_slack if s is None else max(0, m - s + 1) + self.search_slack
        twisted = self._twisted_operator()
        diag = CLEAN
        for ell in range(bound + 1):
            value, inner_diag = twisted._evaluate(i, m - ell, tail)
            diag = diag.merge(inner_diag)
            if value.is_zero():
                found = (-p * ell + 1, diag)
                if self.memoize:
                    self._p[key] = found
                return found
        raise SearchExhausted(f"no vanishing argument for Omega_{i} below {m} on {format_word(tail)}",
                              node=i, m=m, bound=bound, tail=format_word(tail))

    def _r_range(self, m: int, s: Optional[int]) -> range:
        if s is None:
            return range(self.cutoff_slack)
        return range(max(0, m - s + 1 + self.cutoff_slack))

    def _evaluate(self, i: int, m: int, w: Word) -> Tuple[Element, Diagnostics]:
        key = (i, m, w)
        if self.memoize:
            cached = self._words.get(key)
            if cached is not None:
                return cached

        diag = CLEAN
        if not w:
            result = Element.zero()
        else:
            head, tail = w[0], w[1:]
            acc = ElementBuilder()
            if head.node == i and head.degree == -m:
                acc.add_word(tail, 1)
            s = _struct_support(i, tail)
            factor = None
            for r in self._r_range(m, s):
                g = self.C.g_qinv(i, head.node, r)
                if g.is_zero():
                    continue
                inner, inner_diag = self._evaluate(i, m - r, tail)
                diag = diag.merge(inner_diag)
                if inner.is_zero():
                    continue
                if factor is None:
                    factor, p_diag = self._factor(i, head.node, m, tail)
                    diag = diag.merge(p_diag)
                shifted = head.shifted(r)
                acc.add(self.star.apply_xtilde(shifted, inner), factor * g)
                diag = diag.merge(self.star.xtilde_diagnostics(shifted, inner))
            result = acc.build()

        if self.memoize:
            self._words[key] = (result, diag)
        return result, diag

    def omega_word(self, i: int, m: int, w: Word) -> Element:
        return self._evaluate(i, m, w)[0]

    def word_diagnostics(self, i: int, m: int, w: Word) -> Diagnostics:
        """NoCase and residual pairs met anywhere in the recursion for (i, m, w)."""
        return self._evaluate(i, m, w)[1]

    def diagnostics(self, i: int, m: int, e: Element) -> Diagnostics:
        return merge_diagnostics(self.word_diagnostics(i, m, w) for w in e.support())

    def _factor(self, i: int, i1: int, m: int, tail: Word) -> Tuple[LaurentQ, Diagnostics]:
        if self.variant is OmegaVariant.CLASSIC:
            return LaurentQ.one(), CLEAN
        p, diag = self._search_p(i, i1, m, tail)
        return LaurentQ.q(p), diag

    def apply(self, i: int, m: int, e: Element) -> Element:
        """Linear extension of omega_word, no orderedness check."""
        acc = ElementBuilder()
        for w, c in e.items():
            acc.add(self.omega_word(i, m, w), c)
        return acc.build()

    def omega(self, i: int, m: int, e: Element) -> Element:
        self.C.check_node(i)
        if not e.is_ordered_basis():
            bad = next(w for w in e.support() if not is_ordered(w))
            raise NotOrderedInput(f"omega needs ordered words, got {format_word(bad)}")
        return self.apply(i, m, e)

    def omega_support(self, i: int, w: Word, window: Tuple[int, int]) -> Set[int]:
        lo, hi = window
        return {m for m in range(lo, hi + 1) if not self.omega_word(i, m, tuple(w)).is_zero()}

    def trace(self, i: int, m: int, w: Word) -> Dict:
        """Full recursion tree of one evaluation, JSON-ready."""
        node: Dict = {
            'word': format_word(w),
            'i': i,
            'm': m,
            'result': self.omega_word(i, m, w).to_json(),
        }
        if not w:
            return node
        head, tail = w[0], w[1:]
        s = _struct_support(i, tail)
        node['delta'] = head.node == i and head.degree == -m
        node['support_bound'] = s
        terms: List[Dict] = []
        for r in self._r_range(m, s):
            g = self.C.g_qinv(i, head.node, r)
            if g.is_zero():
                continue
            inner = self.omega_word(i, m - r, tail)
            if inner.is_zero():
                continue
            factor, _ = self._factor(i, head.node, m, tail)
            terms.append({
                'r': r,
                'g': str(g),
                'factor': str(factor),
                'inner': self.trace(i, m - r, tail),
            })
        node['terms'] = terms
        if self.variant is OmegaVariant.TWISTED and terms:
            node['p'] = self.p_exponent(i, head.node, m, tail)
        return node


@lru_cache(maxsize=64)
def default_operator(C: CartanData, variant: OmegaVariant = OmegaVariant.TWISTED,
                     max_steps: Optional[int] = None) -> OmegaOperator:
    return OmegaOperator(C, variant, star=default_multiplier(C, max_steps=max_steps))


def omega(variant: OmegaVariant, C: CartanData, i: int, m: int, e: Element) -> Element:
    return default_operator(C, variant).omega(i, m, e)


def p_exponent(C: CartanData, i: int, i1: int, m: int, tail: Word) -> int:
    return default_operator(C).p_exponent(i, i1, m, tuple(tail))


def omega_support(variant: OmegaVariant, C: CartanData, i: int, w: Word,
                  window: Tuple[int, int]) -> Set[int]:
    return default_operator(C, variant).omega_support(i, w, window)

