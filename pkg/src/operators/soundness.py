"""
Independent check that rewrite steps are instances of the ordering relation

    x_{i,k+1} x_{j,l} - q^{-a} x_{j,l} x_{i,k+1} - q^{-a} x_{i,k} x_{j,l+1} + x_{j,l+1} x_{i,k} = 0,

with a = (alpha_i|alpha_j), and the termination measure used for diagnostics.
"""

import logging
from typing import Dict, Iterable, NamedTuple

from algebra.cartan import CartanData
from algebra.laurent import LaurentQ
from algebra.words import Element, ElementBuilder, Generator, Word

logger = logging.getLogger(__name__)


class StepCheck(NamedTuple):
    valid: bool
    left: str
    right: str
    reason: str

    def to_dict(self) -> Dict:
        return self._asdict()


def ordering_relation(C: CartanData, i: int, k: int, j: int, l: int) -> Element:
    a = C.pairing_value(i, j)
    acc = ElementBuilder()
    acc.add_word((Generator(i, k + 1), Generator(j, l)), 1)
    acc.add_word((Generator(j, l), Generator(i, k + 1)), LaurentQ.q(-a, -1))
    acc.add_word((Generator(i, k), Generator(j, l + 1)), LaurentQ.q(-a, -1))
    acc.add_word((Generator(j, l + 1), Generator(i, k)), 1)
    return acc.build()


def _proportional(d: Element, r: Element) -> bool:
    """d = c*r for a nonzero scalar c in the fraction field (cross-multiplication)."""
    if d.is_zero() or r.is_zero():
        return False
    if set(d.support()) != set(r.support()):
        return False
    anchor = d.support()[0]
    d0 = d.coefficient(anchor)
    r0 = r.coefficient(anchor)
    return all(d.coefficient(w) * r0 == d0 * r.coefficient(w) for w in d.support())


def check_rewrite_step(C: CartanData, step) -> StepCheck:
    """
    Verify that source - replacement is a scalar multiple of the relation
    instance with (i, k, j, l) = (left.node, left.degree, right.node, right.degree - 1).
    """
    left, right = step.left, step.right
    source = Element.from_word((left, right))
    difference = source - step.replacement
    relation = ordering_relation(C, left.node, left.degree, right.node, right.degree - 1)
    if step.pairing != C.pairing_value(left.node, right.node):
        return StepCheck(False, str(left), str(right), "pairing mismatch")
    if not _proportional(difference, relation):
        return StepCheck(False, str(left), str(right), "not a multiple of the relation instance")
    return StepCheck(True, str(left), str(right), "")


def check_steps(C: CartanData, steps: Iterable) -> Dict:
    checks = [check_rewrite_step(C, s) for s in steps]
    failed = [c for c in checks if not c.valid]
    for c in failed:
        logger.error(f"Unsound rewrite {c.left} {c.right}: {c.reason}")
    return {
        'steps': len(checks),
        'valid': len(checks) - len(failed),
        'fraction_valid': 1.0 if not checks else (len(checks) - len(failed)) / len(checks),
        'failures': [c.to_dict() for c in failed],
    }


def inversion_measure(w: Word) -> int:
    """Sum over adjacent pairs of max(0, gap)."""
    return sum(max(0, w[t + 1].index_sum - w[t].index_sum) for t in range(len(w) - 1))

