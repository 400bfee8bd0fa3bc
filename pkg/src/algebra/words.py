"""
Words in the generators x-_{i,k}, weights, and finite LaurentQ-combinations of
words (elements) in normal form.

A word is a plain tuple of Generator values; the empty tuple is v_lambda (the
unit of N_q^-). Orderedness is a predicate, never a constructor constraint.
"""

import logging
from typing import Callable, Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

from .errors import WindowTooLarge
from .laurent import LaurentQ

logger = logging.getLogger(__name__)

DEFAULT_WORD_CAP = 20000


class Generator(NamedTuple):
    """x-_{node,degree}."""
    node: int
    degree: int

    @property
    def index_sum(self) -> int:
        return self.node + self.degree

    def shifted(self, dk: int) -> 'Generator':
        return Generator(self.node, self.degree + dk)

    def __str__(self) -> str:
        return f"x[{self.node},{self.degree}]"


Word = Tuple[Generator, ...]

EMPTY_WORD: Word = ()


def make_word(pairs: Iterable[Sequence[int]]) -> Word:
    return tuple(Generator(int(i), int(k)) for i, k in pairs)


def format_word(w: Word) -> str:
    """Inverse of cli.parser.parse_word."""
    if not w:
        return "1"
    return " ".join(str(g) for g in w)


def word_to_json(w: Word) -> List[List[int]]:
    return [[g.node, g.degree] for g in w]


def word_from_json(data: Iterable[Sequence[int]]) -> Word:
    return make_word(data)


def word_sort_key(w: Word) -> Tuple:
    return (len(w), tuple((g.index_sum, g.node, g.degree) for g in w))


def is_ordered(w: Word) -> bool:
    """True iff i_t + k_t is weakly decreasing along the word."""
    return all(w[t].index_sum >= w[t + 1].index_sum for t in range(len(w) - 1))


def index_sum(w: Word) -> int:
    return sum(g.index_sum for g in w)


class Weight(NamedTuple):
    """Content (multiplicity of -alpha_i per node) plus delta-degree."""
    content: Tuple[int, ...]
    delta_degree: int

    def __add__(self, other: 'Weight') -> 'Weight':
        n = max(len(self.content), len(other.content))
        a = self.content + (0,) * (n - len(self.content))
        b = other.content + (0,) * (n - len(other.content))
        return Weight(tuple(x + y for x, y in zip(a, b)), self.delta_degree + other.delta_degree)

    def __sub__(self, other: 'Weight') -> 'Weight':
        return self + Weight(tuple(-x for x in other.content), -other.delta_degree)

    def to_json(self) -> Dict:
        return {'content': list(self.content), 'delta_degree': self.delta_degree}


def word_weight(w: Word, rank: Optional[int] = None) -> Weight:
    n = rank if rank is not None else max((g.node for g in w), default=0)
    content = [0] * n
    for g in w:
        content[g.node - 1] += 1
    return Weight(tuple(content), sum(g.degree for g in w))


def generator_weight(i: int, m: int, rank: int, sign: int = 1) -> Weight:
    """Weight of x-_{i,m} (sign=1) or of the shift of an annihilator (sign=-1)."""
    content = [0] * rank
    content[i - 1] = sign
    return Weight(tuple(content), m)


Coefficient = Union[LaurentQ, int]


class Element:
    """Finite map Word -> LaurentQ with no zero coefficients."""

    __slots__ = ('_terms',)

    def __init__(self, terms: Optional[Dict[Word, Coefficient]] = None):
        clean: Dict[Word, LaurentQ] = {}
        if terms:
            for w, c in terms.items():
                c = LaurentQ.coerce(c)
                if c:
                    clean[tuple(w)] = c
        self._terms = clean

    @classmethod
    def zero(cls) -> 'Element':
        return cls()

    @classmethod
    def unit(cls) -> 'Element':
        return cls({EMPTY_WORD: LaurentQ.one()})

    @classmethod
    def from_word(cls, w: Word, coeff: Coefficient = 1) -> 'Element':
        return cls({tuple(w): coeff})

    @classmethod
    def from_terms(cls, pairs: Iterable[Tuple[Word, Coefficient]]) -> 'Element':
        acc = ElementBuilder()
        for w, c in pairs:
            acc.add_word(w, c)
        return acc.build()

    # -- inspection ---------------------------------------------------------

    def items(self) -> List[Tuple[Word, LaurentQ]]:
        """Terms sorted deterministically by word_sort_key."""
        return sorted(self._terms.items(), key=lambda kv: word_sort_key(kv[0]))

    def support(self) -> List[Word]:
        return [w for w, _ in self.items()]

    def coefficient(self, w: Word) -> LaurentQ:
        return self._terms.get(tuple(w), LaurentQ.zero())

    def coefficients(self) -> List[LaurentQ]:
        return [c for _, c in self.items()]

    def is_zero(self) -> bool:
        return not self._terms

    def is_ordered_basis(self) -> bool:
        return all(is_ordered(w) for w in self._terms)

    def lengths(self) -> List[int]:
        return sorted({len(w) for w in self._terms})

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Tuple[Word, LaurentQ]]:
        return iter(self.items())

    # -- module operations --------------------------------------------------

    def __add__(self, other: 'Element') -> 'Element':
        if not isinstance(other, Element):
            return NotImplemented
        acc = ElementBuilder(self)
        acc.add(other)
        return acc.build()

    def __neg__(self) -> 'Element':
        return Element({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: 'Element') -> 'Element':
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def scale(self, c: Coefficient) -> 'Element':
        c = LaurentQ.coerce(c)
        if not c:
            return Element()
        return Element({w: v * c for w, v in self._terms.items()})

    def map_words(self, fn: Callable[[Word], Word]) -> 'Element':
        acc = ElementBuilder()
        for w, c in self._terms.items():
            acc.add_word(fn(w), c)
        return acc.build()

    def prepend(self, g: Generator) -> 'Element':
        return Element({(g,) + w: c for w, c in self._terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    # -- encoding -----------------------------------------------------------

    def to_json(self) -> List[Dict]:
        return [{'word': word_to_json(w), 'coeff': c.to_json()} for w, c in self.items()]

    @classmethod
    def from_json(cls, data: Iterable[Dict]) -> 'Element':
        return cls.from_terms((word_from_json(t['word']), LaurentQ.from_json(t['coeff'])) for t in data)

    def __repr__(self) -> str:
        return f"Element({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for w, c in self.items():
            word_text = format_word(w)
            if c == 1:
                parts.append(word_text)
            elif c == -1:
                parts.append(f"-{word_text}")
            elif c.is_monomial():
                parts.append(f"{c}*{word_text}")
            else:
                parts.append(f"({c})*{word_text}")
        return " + ".join(parts).replace("+ -", "- ")


class ElementBuilder:
    """Mutable accumulator; build() returns a canonical Element."""

    def __init__(self, start: Optional[Element] = None):
        self._acc: Dict[Word, LaurentQ] = dict(start._terms) if start is not None else {}

    def add_word(self, w: Word, c: Coefficient):
        c = LaurentQ.coerce(c)
        if not c:
            return
        w = tuple(w)
        prev = self._acc.get(w)
        self._acc[w] = c if prev is None else prev + c

    def add(self, e: Element, c: Coefficient = 1):
        c = LaurentQ.coerce(c)
        if not c:
            return
        one = c == 1
        for w, v in e._terms.items():
            self.add_word(w, v if one else v * c)

    def build(self) -> Element:
        return Element(self._acc)


def elem_add(a: Element, b: Element) -> Element:
    """Sum of two elements; words whose coefficients cancel are dropped."""
    return a + b


def elem_scale(a: Element, c: Coefficient) -> Element:
    """
    Multiply every coefficient of a by c.

    Args:
        a: Element to scale
        c: LaurentQ or int; 0 gives the zero element

    Returns:
        A new Element
    """
    return a.scale(c)


def elem_map_words(a: Element, fn: Callable[[Word], Word]) -> Element:
    """Apply fn to every word of a, summing coefficients of words that collide."""
    return a.map_words(fn)


def enumerate_ordered(C, max_len: int, kmin: int, kmax: int,
                      nodes: Optional[Sequence[int]] = None,
                      cap: int = DEFAULT_WORD_CAP) -> List[Word]:
    """
    All ordered words of length <= max_len with degrees in [kmin, kmax].

    Args:
        C: CartanData supplying the node set
        max_len: Maximum word length (the empty word is always included)
        kmin: Smallest degree
        kmax: Largest degree
        nodes: Optional subset of I_0
        cap: Raise WindowTooLarge once more than this many words are produced

    Returns:
        Words sorted by (length, (sum, node, degree) triples)
    """
    if kmin > kmax:
        raise ValueError(f"empty degree window [{kmin}, {kmax}]")
    node_list = sorted(nodes) if nodes is not None else C.nodes
    for i in node_list:
        C.check_node(i)
    letters = sorted((Generator(i, k) for i in node_list for k in range(kmin, kmax + 1)),
                     key=lambda g: (g.index_sum, g.node, g.degree))

    words: List[Word] = [EMPTY_WORD]
    frontier: List[Word] = [EMPTY_WORD]
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            bound = w[-1].index_sum if w else None
            for g in letters:
                if bound is not None and g.index_sum > bound:
                    break
                nxt.append(w + (g,))
        words.extend(nxt)
        if len(words) > cap:
            raise WindowTooLarge(f"window produces more than {cap} words",
                                 cap=cap, max_len=max_len, kmin=kmin, kmax=kmax)
        frontier = nxt
    words.sort(key=word_sort_key)
    return words
