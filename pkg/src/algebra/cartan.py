"""
Cartan data for the untwisted affine types and the coefficient functions
g_{ij,q^-1}(r) that drive the annihilation operators.

Node labels follow Bourbaki. Classical types are chains 1-2-...-N with i and
i+1 adjacent; the branch conventions are in LABELINGS below and are printed by
the ``describe`` subcommand.
"""

import logging
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np

from .errors import IndexOutOfRange, InvalidRank, UnsupportedPairing
from .laurent import LaurentQ

logger = logging.getLogger(__name__)

FAMILIES = ('A', 'B', 'C', 'D', 'E6', 'E7', 'E8', 'F4', 'G2')

FIXED_RANKS = {'E6': 6, 'E7': 7, 'E8': 8, 'F4': 4, 'G2': 2}

MIN_RANKS = {'A': 1, 'B': 2, 'C': 2, 'D': 4}

# Pairing values (alpha_i|alpha_j) covered by the g-table.
G_TABLE_DOMAIN = (6, 4, 2, 0, -1, -2, -3)

LABELINGS = {
    'A': "1 - 2 - ... - N",
    'B': "1 - 2 - ... - (N-1) => N        (N short)",
    'C': "1 - 2 - ... - (N-1) <= N        (N long)",
    'D': "1 - 2 - ... - (N-2) < (N-1), N  (N-1 and N both attached to N-2)",
    'E6': "1 - 3 - 4 - 5 - 6, 2 attached to 4",
    'E7': "1 - 3 - 4 - 5 - 6 - 7, 2 attached to 4",
    'E8': "1 - 3 - 4 - 5 - 6 - 7 - 8, 2 attached to 4",
    'F4': "1 - 2 => 3 - 4                 (1, 2 long)",
    'G2': "1 <= 2                         (1 long, triple bond)",
}


def _edges(family: str, rank: int) -> List[Tuple[int, int]]:
    """Simple-laced edges of the Dynkin diagram (1-based, unordered)."""
    if family in ('A', 'B', 'C'):
        return [(i, i + 1) for i in range(1, rank)]
    if family == 'D':
        chain = [(i, i + 1) for i in range(1, rank - 1)]
        return chain + [(rank - 2, rank)]
    if family in ('E6', 'E7', 'E8'):
        chain = [(1, 3)] + [(i, i + 1) for i in range(3, rank)]
        return chain + [(2, 4)]
    if family == 'F4':
        return [(1, 2), (2, 3), (3, 4)]
    if family == 'G2':
        return [(1, 2)]
    raise InvalidRank(f"unknown family {family!r}", family=family)


def _symmetrizer(family: str, rank: int) -> Tuple[int, ...]:
    """Restriction of the affine symmetrizer (d_0, ..., d_N) to I_0."""
    if family in ('A', 'D', 'E6', 'E7', 'E8'):
        return tuple([1] * rank)
    if family == 'B':
        return tuple([2] * (rank - 1) + [1])
    if family == 'C':
        return tuple([1] * (rank - 1) + [2])
    if family == 'F4':
        return (2, 2, 1, 1)
    if family == 'G2':
        return (3, 1)
    raise InvalidRank(f"unknown family {family!r}", family=family)


class CartanData:
    """Finite Cartan matrix, symmetrizers and pairing of one algebra."""

    def __init__(self, family: str, rank: int, a: np.ndarray, d: Tuple[int, ...]):
        self.family = family
        self.rank = rank
        self.a = np.array(a, dtype=np.int64)
        self.a.setflags(write=False)
        self.d = tuple(int(x) for x in d)
        self._check_invariants()
        self._hashkey = (family, rank, self.d, tuple(map(tuple, self.a.tolist())))

    @property
    def name(self) -> str:
        return self.family if self.family in FIXED_RANKS else f"{self.family}{self.rank}"

    @property
    def nodes(self) -> List[int]:
        return list(range(1, self.rank + 1))

    def _check_invariants(self):
        n = self.rank
        if self.a.shape != (n, n) or len(self.d) != n:
            raise InvalidRank(f"shape mismatch for {self.family}{n}")
        sym = np.diag(self.d) @ self.a
        if not np.array_equal(sym, sym.T):
            raise InvalidRank(f"{self.family}{n}: D*A is not symmetric")
        for i in range(n):
            if self.a[i, i] != 2:
                raise InvalidRank(f"{self.family}{n}: a[{i + 1}][{i + 1}] != 2")
            for j in range(n):
                if i != j and (self.a[i, j] > 0 or (self.a[i, j] == 0) != (self.a[j, i] == 0)):
                    raise InvalidRank(f"{self.family}{n}: bad off-diagonal entry at ({i + 1},{j + 1})")

    def check_node(self, i: int):
        if not isinstance(i, (int, np.integer)) or not 1 <= i <= self.rank:
            raise IndexOutOfRange(f"node {i} outside 1..{self.rank} for {self.name}",
                                  node=i, rank=self.rank)

    def pairing_value(self, i: int, j: int) -> int:
        """(alpha_i|alpha_j) = d_i a_ij."""
        self.check_node(i)
        self.check_node(j)
        return self.d[i - 1] * int(self.a[i - 1, j - 1])

    def pairing_matrix(self) -> np.ndarray:
        return np.diag(self.d) @ self.a

    def g_qinv(self, i: int, j: int, r: int) -> LaurentQ:
        return g_from_pairing(self.pairing_value(i, j), r)

    def pairing_values(self) -> List[int]:
        """Distinct pairing values occurring in this algebra, descending."""
        return sorted({int(v) for v in self.pairing_matrix().flatten()}, reverse=True)

    def diagram(self) -> str:
        return LABELINGS[self.family]

    def to_dict(self) -> Dict:
        return {
            'family': self.family,
            'rank': self.rank,
            'cartan_matrix': self.a.tolist(),
            'd': list(self.d),
            'pairing_matrix': self.pairing_matrix().tolist(),
            'labeling': self.diagram(),
        }

    def _key(self) -> Tuple:
        return self._hashkey

    def __eq__(self, other) -> bool:
        return isinstance(other, CartanData) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"CartanData({self.name}, d={self.d})"

    def __reduce__(self):
        return (CartanData, (self.family, self.rank, self.a.tolist(), self.d))


def build_cartan(family: str, rank: Optional[int] = None) -> CartanData:
    """
    Build the finite Cartan data of an untwisted affine type.

    Args:
        family: One of FAMILIES (exceptional names carry their rank)
        rank: Number of finite nodes; optional for exceptional families

    Returns:
        CartanData with Bourbaki labeling
    """
    family = family.upper()
    if family not in FAMILIES:
        raise InvalidRank(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}",
                          family=family)
    if family in FIXED_RANKS:
        fixed = FIXED_RANKS[family]
        if rank is None:
            rank = fixed
        if rank != fixed:
            raise InvalidRank(f"{family} has rank {fixed}, got {rank}", family=family, rank=rank)
    else:
        if rank is None or rank < MIN_RANKS[family]:
            raise InvalidRank(f"type {family} needs rank >= {MIN_RANKS[family]}, got {rank}",
                              family=family, rank=rank)

    d = _symmetrizer(family, rank)
    a = 2 * np.eye(rank, dtype=np.int64)
    for i, j in _edges(family, rank):
        # d_i a_ij = d_j a_ji = -max(d_i, d_j) on every edge
        bond = max(d[i - 1], d[j - 1])
        a[i - 1, j - 1] = -(bond // d[i - 1])
        a[j - 1, i - 1] = -(bond // d[j - 1])
    logger.debug(f"Built Cartan data for {family}{rank}")
    return CartanData(family, rank, a, d)


def pairing_value(C: CartanData, i: int, j: int) -> int:
    return C.pairing_value(i, j)


@lru_cache(maxsize=4096)
def g_from_pairing(p: int, r: int) -> LaurentQ:
    """
    Table entry g_{ij,q^-1}(r) for pairing value p.

    r = 0 gives q^p; r > 0 gives q^{p(r+1)} - q^{p(r-1)}, which is 0 for p = 0.
    """
    if p not in G_TABLE_DOMAIN:
        raise UnsupportedPairing(f"pairing value {p} outside the g-table", pairing=p)
    if r < 0:
        raise ValueError(f"g-table index must be >= 0, got {r}")
    if r == 0:
        return LaurentQ.q(p)
    if p == 0:
        return LaurentQ.zero()
    return LaurentQ({2 * p * (r + 1): 1, 2 * p * (r - 1): -1})


def g_qinv(C: CartanData, i: int, j: int, r: int) -> LaurentQ:
    return C.g_qinv(i, j, r)
