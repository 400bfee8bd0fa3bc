"""
The bilinear form on ordered monomials, Gram matrices, and the vanishing,
integrality and congruence checks over enumerated windows.
"""

import logging
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from algebra.cartan import CartanData
from algebra.errors import ImcrystalError, NotOrderedInput
from algebra.laurent import LaurentQ
from algebra.words import Element, Word, format_word, index_sum, is_ordered
from operators.omega import OmegaOperator, OmegaVariant, default_operator
from operators.star import CLEAN, Diagnostics

from .batch import Window, ordered_map

logger = logging.getLogger(__name__)

VERDICTS = ('vanishing', 'integrality', 'congruence', 'closed_form')


class GramReport(NamedTuple):
    window: Dict
    rows: List[Dict]
    summary: Dict

    def to_dict(self) -> Dict:
        return {'window': self.window, 'rows': self.rows, 'summary': self.summary}


def _require_ordered(e: Element, side: str):
    for w in e.support():
        if not is_ordered(w):
            raise NotOrderedInput(f"{side} argument of the form is not ordered: {format_word(w)}",
                                  word=format_word(w))


def pair_word(op: OmegaOperator, w: Word, v: Element) -> LaurentQ:
    """<w, v> for a single word w: peel w from the left with Omega~."""
    return pair_word_with_diagnostics(op, w, v)[0]


def pair_word_with_diagnostics(op: OmegaOperator, w: Word, v: Element) -> Tuple[LaurentQ, Diagnostics]:
    diag = CLEAN
    for h in w:
        diag = diag.merge(op.diagnostics(h.node, -h.degree, v))
        v = op.apply(h.node, -h.degree, v)
        if v.is_zero():
            return LaurentQ.zero(), diag
    return v.coefficient(()), diag


def pair(C: CartanData, u: Element, v: Element, op: Optional[OmegaOperator] = None) -> LaurentQ:
    """
    Bilinear form <u, v> on ordered-basis elements.

    Args:
        C: Cartan data
        u: Left argument (ordered words only)
        v: Right argument (ordered words only)
        op: Twisted operator to evaluate with (default: shared per algebra)

    Returns:
        Exact LaurentQ value
    """
    _require_ordered(u, 'left')
    _require_ordered(v, 'right')
    op = op or default_operator(C, OmegaVariant.TWISTED)
    total = LaurentQ.zero()
    for w, c in u.items():
        total = total + c * pair_word(op, w, v)
    return total


def gram(C: CartanData, basis: Sequence[Word], op: Optional[OmegaOperator] = None) -> List[List[LaurentQ]]:
    """G[a][b] = <basis[a], basis[b]>; no symmetry assumed."""
    for w in basis:
        if not is_ordered(w):
            raise NotOrderedInput(f"Gram basis word is not ordered: {format_word(w)}")
    op = op or default_operator(C, OmegaVariant.TWISTED)
    return [[pair_word(op, u, Element.from_word(v)) for v in basis] for u in basis]


def constant_terms(matrix: List[List[LaurentQ]]) -> np.ndarray:
    """Values at q = 0 (NaN where a pole appears)."""
    out = np.full((len(matrix), len(matrix[0]) if matrix else 0), np.nan)
    for a, row in enumerate(matrix):
        for b, value in enumerate(row):
            c0 = value.at_q0()
            if c0 is not None:
                out[a, b] = c0
    return out


def length_two_closed_form(C: CartanData, u: Word, v: Word,
                           op: Optional[OmegaOperator] = None) -> LaurentQ:
    """
    <x_{i1,m1} x_{i2,m2}, x_{j1,n1} x_{j2,n2}> in closed form:
    delta-delta + sum_r q^p g(r) [i1=j2, m1+r=n2, i2=j1, m2=n1+r].
    """
    if len(u) != 2 or len(v) != 2:
        raise ValueError("closed form needs two words of length two")
    op = op or default_operator(C, OmegaVariant.TWISTED)
    (i1, m1), (i2, m2) = u
    (j1, n1), (j2, n2) = v
    value = LaurentQ.one() if (i1, m1, i2, m2) == (j1, n1, j2, n2) else LaurentQ.zero()
    r = n2 - m1
    if i1 == j2 and i2 == j1 and r >= 0 and m2 == n1 + r:
        g = C.g_qinv(i1, j1, r)
        if g:
            p = op.p_exponent(i1, j1, -m1, (v[1],))
            value = value + LaurentQ.q(p) * g
    return value


def _judge(u: Word, v: Word, value: LaurentQ, closed: Optional[LaurentQ]) -> Dict:
    mod = value.mod_q2()
    equal_sums = index_sum(u) == index_sum(v)
    verdicts = {
        'vanishing': (value.is_zero() if len(u) > len(v) else None),
        'integrality': value.is_int_poly(),
        'congruence': None,
        'closed_form': None if closed is None else closed == value,
    }
    if equal_sums:
        expected = 1 if u == v else 0
        verdicts['congruence'] = mod is not None and mod[0] == expected
    return {
        'key': f"{format_word(u)} | {format_word(v)}",
        'left': format_word(u),
        'right': format_word(v),
        'value': value.to_json(),
        'value_text': str(value),
        'c0': None if mod is None else mod[0],
        'c1': None if mod is None else mod[1],
        'equal_sums': equal_sums,
        'verdicts': verdicts,
        'passed': all(x is not False for x in verdicts.values()),
    }


def gram_rows(task: Tuple[CartanData, Word, Tuple[Word, ...], Optional[int]]) -> List[Dict]:
    """Rows for one left word against the whole basis (pool task)."""
    C, u, basis, max_steps = task
    op = default_operator(C, OmegaVariant.TWISTED, max_steps)
    rows = []
    for v in basis:
        try:
            value, diag = pair_word_with_diagnostics(op, u, Element.from_word(v))
            closed = length_two_closed_form(C, u, v, op) if len(u) == 2 and len(v) == 2 else None
            rows.append(diag.annotate(_judge(u, v, value, closed)))
        except ImcrystalError as e:
            logger.error(f"Engine error pairing {format_word(u)} with {format_word(v)}: {e}", exc_info=True)
            rows.append({
                'key': f"{format_word(u)} | {format_word(v)}",
                'left': format_word(u),
                'right': format_word(v),
                'error': e.to_dict(),
                'passed': False,
            })
    return rows


def asymmetry(rows: List[Dict]) -> Dict:
    """Pairs whose transposed value differs (recorded, never judged)."""
    values = {(r['left'], r['right']): r.get('value') for r in rows}
    checked = 0
    asymmetric = []
    for (a, b), value in values.items():
        if a < b and (b, a) in values:
            checked += 1
            if value != values[(b, a)]:
                asymmetric.append(f"{a} | {b}")
    return {'pairs_checked': checked, 'asymmetric': len(asymmetric), 'examples': asymmetric[:10]}


def summarize_verdicts(rows: List[Dict], families: Sequence[str]) -> Dict:
    summary: Dict = {'instances': len(rows),
                     'failed': sum(1 for r in rows if not r['passed']),
                     'engine_errors': sum(1 for r in rows if 'error' in r)}
    for family in families:
        judged = [r['verdicts'][family] for r in rows if 'verdicts' in r and r['verdicts'].get(family) is not None]
        summary[family] = {'checked': len(judged), 'failed': sum(1 for x in judged if not x)}
    return summary


def summarize_diagnostics(rows: List[Dict]) -> Dict:
    """Distinct NoCase and residual pairs over all rows, and how many rows met any."""
    no_case = sorted({p for r in rows for p in r.get('no_case', ())})
    residuals = sorted({p for r in rows for p in r.get('residual_pairs', ())})
    return {
        'no_case': len(no_case),
        'residual_pairs': len(residuals),
        'rows_with_no_case': sum(1 for r in rows if r.get('no_case')),
        'rows_with_residuals': sum(1 for r in rows if r.get('residual_pairs')),
        'no_case_examples': no_case[:10],
        'residual_examples': residuals[:10],
    }


def check_window(C: CartanData, window: Window, workers: int = 1, progress: bool = False) -> GramReport:
    """
    Evaluate the form on every ordered pair of window words and judge the
    vanishing, integrality and congruence properties.
    """
    basis = tuple(window.words(C))
    logger.info(f"Gram window {window.to_dict()} on {C.name}: {len(basis)} words, {len(basis) ** 2} pairs")
    tasks = [(C, u, basis, window.max_steps) for u in basis]
    chunks = ordered_map(gram_rows, tasks, workers=workers, desc="Gram rows", progress=progress)
    rows = sorted((row for chunk in chunks for row in chunk), key=lambda r: r['key'])
    summary = summarize_verdicts(rows, VERDICTS)
    summary['asymmetry'] = asymmetry(rows)
    summary.update(summarize_diagnostics(rows))
    return GramReport(window.to_dict(), rows, summary)
