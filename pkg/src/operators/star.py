"""
Twisted concatenation product, straightening by the ordering relation, and the
creation operators x~_{j,m} on ordered words.
"""

import logging
from collections import Counter
from enum import Enum
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Tuple

from algebra.cartan import CartanData
from algebra.errors import NoCaseError, NotOrderedInput, ResidualNotOrdered, StraightenDiverged
from algebra.laurent import LaurentQ
from algebra.words import (
    Element,
    ElementBuilder,
    Generator,
    Word,
    format_word,
    is_ordered,
)

logger = logging.getLogger(__name__)

# Nesting bound for junction repair inside xtilde.
DEFAULT_MAX_DEPTH = 200


class StarCase(Enum):
    C1 = 'C1'
    C2 = 'C2'
    C3 = 'C3'
    C4 = 'C4'
    C5 = 'C5'
    C6 = 'C6'
    NO_CASE = 'NoCase'


class RewriteKind(Enum):
    GAP = 'gap'
    SWAP = 'swap'


class RewriteStep(NamedTuple):
    """One local rewrite left*right -> replacement."""
    kind: RewriteKind
    left: Generator
    right: Generator
    pairing: int
    replacement: Element

    def to_dict(self) -> Dict:
        return {
            'kind': self.kind.value,
            'left': format_word((self.left,)),
            'right': format_word((self.right,)),
            'pairing': self.pairing,
            'replacement': self.replacement.to_json(),
        }


class StraightenResult(NamedTuple):
    element: Element
    residuals: Tuple[Word, ...]
    steps: Tuple[RewriteStep, ...]
    n_steps: int


class StarProduct(NamedTuple):
    """Straightened star product of two generators plus its diagnostics."""
    element: Element
    case: StarCase
    raw: Element
    residuals: Tuple[Word, ...]
    integral: bool
    ordered: bool
    steps: Tuple[RewriteStep, ...]

    def to_dict(self) -> Dict:
        return {
            'case': self.case.value,
            'raw': self.raw.to_json(),
            'result': self.element.to_json(),
            'residuals': [format_word(w) for w in self.residuals],
            'integral': self.integral,
            'ordered': self.ordered,
            'steps': len(self.steps),
        }


GeneratorPair = Tuple[Generator, Generator]


def _pair_text(pair: GeneratorPair) -> str:
    return f"{format_word((pair[0],))} * {format_word((pair[1],))}"


class Diagnostics(NamedTuple):
    """NoCase and residual generator pairs met while computing one value."""
    no_case: FrozenSet[GeneratorPair] = frozenset()
    residual_pairs: FrozenSet[GeneratorPair] = frozenset()

    def merge(self, other: 'Diagnostics') -> 'Diagnostics':
        if other.is_clean():
            return self
        if self.is_clean():
            return other
        return Diagnostics(self.no_case | other.no_case, self.residual_pairs | other.residual_pairs)

    def is_clean(self) -> bool:
        return not self.no_case and not self.residual_pairs

    def to_dict(self) -> Dict:
        return {
            'no_case': [_pair_text(p) for p in sorted(self.no_case)],
            'residual_pairs': [_pair_text(p) for p in sorted(self.residual_pairs)],
        }

    def annotate(self, row: Dict) -> Dict:
        """Add the pair lists to a report row unless there is nothing to report."""
        if not self.is_clean():
            row.update(self.to_dict())
        return row


CLEAN = Diagnostics()


def merge_diagnostics(parts: Iterable[Diagnostics]) -> Diagnostics:
    total = CLEAN
    for part in parts:
        total = total.merge(part)
    return total


def _two(a: Generator, b: Generator) -> Word:
    return (a, b)


def star_case(C: CartanData, g1: Generator, g2: Generator) -> Tuple[Element, StarCase]:
    """
    Literal right-hand side of the first matching branch of the case table.

    Args:
        C: Cartan data
        g1: Left factor x_{i,m}
        g2: Right factor x_{j,n}

    Returns:
        (raw length-two combination, case id); NoCase carries an empty combination
    """
    i, m = g1
    j, n = g2
    p = C.pairing_value(i, j)
    base = _two(g1, g2)
    qinv = LaurentQ.q(-p)

    if i + m >= j + n or p > 0:
        return Element.from_word(base), StarCase.C1
    if (j == i + 1 and n == m + 1) or (i == j + 2 and n == m + 4):
        return Element.from_word(base, qinv), StarCase.C2
    if (i == j + 1 and m + 1 < n and j + n - 1 < i + m + 1) or (i == j + 2 and n > m + 4):
        other = _two(Generator(j, n - 1), Generator(i, m + 1))
        return Element.from_terms([(base, qinv), (other, -qinv)]), StarCase.C3
    if ((i == j + 1 and m + 1 < n and i + m + 1 < j + n - 1)
            or (i == j + 2 and m + 2 < n < m + 4)
            or (j == i + 2 and m < n)):
        other = _two(Generator(i, m + 1), Generator(j, n - 1))
        return Element.from_terms([(base, qinv), (other, -1)]), StarCase.C4
    if (j == i + 1 and m + 1 < n) or (j == i + 2 and n == m + 1):
        other = _two(Generator(i, m + 1), Generator(j, n - 1))
        return Element.from_terms([(base, qinv), (other, -qinv)]), StarCase.C5
    if j == i + 2 and m == n + 1:
        other = _two(Generator(i, m - 1), Generator(j, n + 1))
        return Element.from_terms([(base, 1), (other, -1)]), StarCase.C6
    return Element.zero(), StarCase.NO_CASE


@lru_cache(maxsize=65536)
def rewrite_rule(C: CartanData, left: Generator, right: Generator) -> Optional[RewriteStep]:
    """
    Local rewrite for an adjacent pair, or None when the pair is not reducible.

    A gap >= 2 pair x_{p,u} x_{r,v} becomes
    q^a x_{p,u+1} x_{r,v-1} - x_{r,v-1} x_{p,u+1} + q^a x_{r,v} x_{p,u}, a = (alpha_p|alpha_r).
    A same-node gap-1 pair x_{i,m} x_{i,m+1} becomes q^{2 d_i} x_{i,m+1} x_{i,m}.
    """
    gap = right.index_sum - left.index_sum
    a = C.pairing_value(left.node, right.node)
    if gap >= 2:
        acc = ElementBuilder()
        acc.add_word(_two(left.shifted(1), right.shifted(-1)), LaurentQ.q(a))
        acc.add_word(_two(right.shifted(-1), left.shifted(1)), -1)
        acc.add_word(_two(right, left), LaurentQ.q(a))
        return RewriteStep(RewriteKind.GAP, left, right, a, acc.build())
    if gap == 1 and left.node == right.node:
        replacement = Element.from_word(_two(right, left), LaurentQ.q(a))
        return RewriteStep(RewriteKind.SWAP, left, right, a, replacement)
    return None


def _reducible_position(C: CartanData, w: Word) -> Tuple[int, Optional[RewriteStep]]:
    for t in range(len(w) - 1):
        step = rewrite_rule(C, w[t], w[t + 1])
        if step is not None:
            return t, step
    return -1, None


def default_max_steps(e: Element) -> int:
    """16 x (word length) x (degree window width) over the support of e."""
    degrees = [g.degree for w in e.support() for g in w]
    if not degrees:
        return 16
    width = max(degrees) - min(degrees) + 1
    length = max(len(w) for w in e.support())
    return 16 * max(length, 1) * width


def straighten_with_diagnostics(C: CartanData, e: Element,
                                max_steps: Optional[int] = None) -> StraightenResult:
    """
    Rewrite every word of e, leftmost reducible position first, until only
    distinct-node gap-1 inversions remain.

    Raises:
        StraightenDiverged: more than max_steps rewrites were applied
    """
    if max_steps is None:
        max_steps = default_max_steps(e)
    done = ElementBuilder()
    pending = e
    used: Dict[Tuple[Generator, Generator], RewriteStep] = {}
    n_steps = 0

    while pending:
        nxt = ElementBuilder()
        for w, c in pending.items():
            t, step = _reducible_position(C, w)
            if step is None:
                done.add_word(w, c)
                continue
            n_steps += 1
            if n_steps > max_steps:
                raise StraightenDiverged(max_steps, format_word(w))
            used.setdefault((step.left, step.right), step)
            for pair_word, coeff in step.replacement.items():
                nxt.add_word(w[:t] + pair_word + w[t + 2:], c * coeff)
        pending = nxt.build()

    result = done.build()
    residuals = tuple(w for w in result.support() if not is_ordered(w))
    return StraightenResult(result, residuals, tuple(used.values()), n_steps)


def straighten(C: CartanData, e: Element, max_steps: Optional[int] = None) -> Element:
    return straighten_with_diagnostics(C, e, max_steps).element


class StarMultiplier:
    """Cached star products and x~ operators for one algebra."""

    def __init__(self, C: CartanData,
                 strict: bool = False,
                 max_steps: Optional[int] = None,
                 max_depth: int = DEFAULT_MAX_DEPTH):
        """
        Initialize the multiplier.

        Args:
            C: Cartan data
            strict: Raise NoCaseError / ResidualNotOrdered instead of recording them
            max_steps: Straightening budget per star product (None: size-based default)
            max_depth: Bound on nested junction repairs inside xtilde
        """
        self.C = C
        self.strict = strict
        self.max_steps = max_steps
        self.max_depth = max_depth
        self._pairs: Dict[Tuple[Generator, Generator], StarProduct] = {}
        self._xtilde: Dict[Tuple[Generator, Word], Element] = {}
        self._xtilde_diag: Dict[Tuple[Generator, Word], Diagnostics] = {}
        self.steps: Dict[Tuple[Generator, Generator], RewriteStep] = {}
        self.case_counts: Counter = Counter()
        self.no_case: List[Tuple[Generator, Generator]] = []
        self.residual_pairs: List[Tuple[Generator, Generator]] = []

    def star_pair(self, g1: Generator, g2: Generator) -> StarProduct:
        key = (g1, g2)
        cached = self._pairs.get(key)
        if cached is not None:
            return cached

        self.C.check_node(g1.node)
        self.C.check_node(g2.node)
        raw, case = star_case(self.C, g1, g2)
        self.case_counts[case.value] += 1
        if case is StarCase.NO_CASE:
            if self.strict:
                raise NoCaseError(f"no case matches {g1} * {g2}", left=str(g1), right=str(g2))
            logger.debug(f"No case for {g1} * {g2}; falling back to concatenation")
            self.no_case.append(key)
            raw = Element.from_word(_two(g1, g2))

        result = straighten_with_diagnostics(self.C, raw, self.max_steps)
        for step in result.steps:
            self.steps.setdefault((step.left, step.right), step)
        if result.residuals:
            if self.strict:
                raise ResidualNotOrdered(f"{g1} * {g2} leaves unordered words",
                                         residuals=", ".join(format_word(w) for w in result.residuals))
            self.residual_pairs.append(key)

        product = StarProduct(
            element=result.element,
            case=case,
            raw=raw,
            residuals=result.residuals,
            integral=all(c.is_int_poly() for c in result.element.coefficients()),
            ordered=not result.residuals,
            steps=result.steps,
        )
        self._pairs[key] = product
        return product

    def xtilde(self, g: Generator, e: Element) -> Element:
        """
        x~_{g} applied to an element in ordered-basis normal form.

        Raises:
            NotOrderedInput: some word of e is not ordered
        """
        if not e.is_ordered_basis():
            bad = next(w for w in e.support() if not is_ordered(w))
            raise NotOrderedInput(f"xtilde needs ordered words, got {format_word(bad)}")
        return self.apply_xtilde(g, e)

    def apply_xtilde(self, g: Generator, e: Element) -> Element:
        """Linear extension of xtilde_word without the input check."""
        acc = ElementBuilder()
        for w, c in e.items():
            acc.add(self.xtilde_word(g, w), c)
        return acc.build()

    def pair_diagnostics(self, g1: Generator, g2: Generator) -> Diagnostics:
        """NoCase / residual flags of the product g1 * g2 as a Diagnostics value."""
        product = self.star_pair(g1, g2)
        key = frozenset([(g1, g2)])
        return Diagnostics(
            no_case=key if product.case is StarCase.NO_CASE else frozenset(),
            residual_pairs=key if product.residuals else frozenset(),
        )

    def xtilde_word(self, g: Generator, w: Word, depth: int = 0) -> Element:
        key = (g, w)
        cached = self._xtilde.get(key)
        if cached is not None:
            return cached
        if depth > self.max_depth:
            raise StraightenDiverged(self.max_depth, format_word((g,) + w))

        diag = CLEAN
        if not w:
            result = Element.from_word((g,))
        else:
            tail = w[1:]
            acc = ElementBuilder()
            diag = self.pair_diagnostics(g, w[0])
            for ab, c in self.star_pair(g, w[0]).element.items():
                a, b = ab
                if not tail or b.index_sum >= tail[0].index_sum:
                    acc.add_word(ab + tail, c)
                    continue
                # junction repair: b must be starred into the tail first
                repaired = self.xtilde_word(b, tail, depth + 1)
                diag = diag.merge(self._xtilde_diag[(b, tail)])
                for u, c2 in repaired.items():
                    if a.index_sum >= u[0].index_sum:
                        acc.add_word((a,) + u, c * c2)
                    else:
                        acc.add(self.xtilde_word(a, u, depth + 1), c * c2)
                        diag = diag.merge(self._xtilde_diag[(a, u)])
            result = acc.build()

        self._xtilde[key] = result
        self._xtilde_diag[key] = diag
        return result

    def xtilde_diagnostics(self, g: Generator, e: Element) -> Diagnostics:
        """
        Every NoCase and residual pair met while computing x~_g(e).

        The pairs are stored with the cached words, so the answer does not
        depend on which products were already cached when it is asked.
        """
        total = CLEAN
        for w in e.support():
            self.xtilde_word(g, w)
            total = total.merge(self._xtilde_diag[(g, w)])
        return total

    def recorded_steps(self) -> List[RewriteStep]:
        return [self.steps[k] for k in sorted(self.steps)]


@lru_cache(maxsize=64)
def default_multiplier(C: CartanData, strict: bool = False, max_steps: Optional[int] = None) -> StarMultiplier:
    """Shared per-process multiplier; caches persist across calls."""
    return StarMultiplier(C, strict=strict, max_steps=max_steps)


def star_pair(C: CartanData, g1: Generator, g2: Generator, strict: bool = False) -> StarProduct:
    return default_multiplier(C, strict).star_pair(g1, g2)


def xtilde(C: CartanData, g: Generator, e: Element, strict: bool = False) -> Element:
    return default_multiplier(C, strict).xtilde(g, e)
