"""
Verification windows and the ordered worker-pool map used by every suite.
"""

import os
import logging
from multiprocessing import Pool
from typing import Callable, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple, TypeVar

from tqdm import tqdm

from algebra.cartan import CartanData
from algebra.words import DEFAULT_WORD_CAP, Word, enumerate_ordered

logger = logging.getLogger(__name__)

T = TypeVar('T')
R = TypeVar('R')

THREADS_ENV = 'IMCRYSTAL_THREADS'


class Window(NamedTuple):
    """Bounds for basis words and operator parameters."""
    max_len: int
    kmin: int
    kmax: int
    mmin: int = 0
    mmax: int = 0
    nodes: Optional[Tuple[int, ...]] = None
    cap: int = DEFAULT_WORD_CAP
    max_steps: Optional[int] = None

    def words(self, C: CartanData) -> List[Word]:
        return enumerate_ordered(C, self.max_len, self.kmin, self.kmax,
                                 nodes=self.nodes, cap=self.cap)

    def node_list(self, C: CartanData) -> List[int]:
        return list(self.nodes) if self.nodes is not None else C.nodes

    def m_range(self) -> range:
        return range(self.mmin, self.mmax + 1)

    def width(self) -> int:
        return self.kmax - self.kmin + 1

    def to_dict(self) -> Dict:
        return {
            'max_len': self.max_len,
            'k_min': self.kmin,
            'k_max': self.kmax,
            'm_min': self.mmin,
            'm_max': self.mmax,
            'nodes': list(self.nodes) if self.nodes is not None else None,
        }


def resolve_workers(requested: Optional[int] = None) -> int:
    """
    Worker count: IMCRYSTAL_THREADS wins, then the requested value, then cpu_count.
    """
    env = os.getenv(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            logger.warning(f"Ignoring non-integer {THREADS_ENV}={env!r}")
    if requested is not None:
        return max(1, requested)
    return os.cpu_count() or 1


def ordered_map(fn: Callable[[T], R], items: Sequence[T],
                workers: int = 1,
                desc: Optional[str] = None,
                progress: bool = False) -> List[R]:
    """
    Map fn over items, preserving input order.

    Args:
        fn: Module-level (picklable) function
        items: Task arguments
        workers: Pool size; 1 or less evaluates inline
        desc: Progress-bar label
        progress: Show a tqdm progress bar

    Returns:
        Results in the order of items
    """
    items = list(items)
    disable = not progress
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in tqdm(items, desc=desc, disable=disable)]
    chunksize = max(1, len(items) // (workers * 4))
    with Pool(processes=workers) as pool:
        results = list(tqdm(pool.imap(fn, items, chunksize=chunksize),
                            total=len(items), desc=desc, disable=disable))
    return results


def merge_counts(parts: Iterable[Dict[str, int]]) -> Dict[str, int]:
    total: Dict[str, int] = {}
    for part in parts:
        for key, value in part.items():
            total[key] = total.get(key, 0) + value
    return dict(sorted(total.items()))
