"""
Crystal lattice and basis checks.

The lattice L(lambda) is the A_0-span of the ordered words, so membership is
"ordered support plus coefficients regular at q = 0". The basis B(lambda) is
the set of ordered words taken mod qL.
"""

import logging
from enum import Enum
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from algebra.cartan import CartanData
from algebra.errors import ImcrystalError
from algebra.words import (
    Element,
    ElementBuilder,
    Generator,
    Word,
    format_word,
    generator_weight,
    is_ordered,
    word_weight,
)
from operators.omega import OmegaOperator, OmegaVariant, default_operator
from operators.star import StarMultiplier, default_multiplier

from .batch import Window, ordered_map
from .pairing import summarize_diagnostics, summarize_verdicts

logger = logging.getLogger(__name__)

LATTICE_VERDICTS = ('ordered', 'regular', 'weight')
BASIS_VERDICTS = ('monomial', 'single_node')


class HighestWeight(NamedTuple):
    h: Tuple[int, ...]
    dval: int = 0
    cval: int = 0

    def to_dict(self) -> Dict:
        return {'h': list(self.h), 'd': self.dval, 'c': self.cval}


def verma_is_irreducible(hw: HighestWeight) -> bool:
    """
    Whether the Verma module M(lambda) is irreducible.

    Args:
        hw: Highest weight lambda, given by its values on h_i, d and c

    Returns:
        True iff lambda(c) != 0
    """
    return hw.cval != 0


def reduced_is_irreducible(hw: HighestWeight) -> bool:
    """Reduced modules presuppose lambda(c) = 0."""
    return hw.cval == 0 and all(x != 0 for x in hw.h)


class ModQClass(Enum):
    ZERO = 'Zero'
    PLUS_BASIS = 'PlusBasis'
    MINUS_BASIS = 'MinusBasis'
    NOT_MONOMIAL = 'NotMonomial'
    POLE = 'Pole'


def reduce_mod_q(e: Element) -> Optional[Element]:
    """Coefficient-wise value at q = 0, or None when some coefficient has a pole."""
    acc = ElementBuilder()
    for w, c in e.items():
        c0 = c.at_q0()
        if c0 is None:
            return None
        acc.add_word(w, c0)
    return acc.build()


def classify_mod_q(e: Element) -> Tuple[ModQClass, Optional[Element]]:
    reduced = reduce_mod_q(e)
    if reduced is None:
        return ModQClass.POLE, None
    if reduced.is_zero():
        return ModQClass.ZERO, reduced
    if len(reduced) == 1:
        (w, c), = reduced.items()
        if is_ordered(w) and c == 1:
            return ModQClass.PLUS_BASIS, reduced
        if is_ordered(w) and c == -1:
            return ModQClass.MINUS_BASIS, reduced
    return ModQClass.NOT_MONOMIAL, reduced


def predicted_single_node_reduction(i: int, m: int, b: Word) -> Element:
    """
    Closed form of Omega~_i(m) b mod qL for a word on node i only:
    sum_j (-1)^(j-1) [m - j + 1 = -m_j] x_{m_1+1} ... x_{m_{j-1}+1} x_{m_{j+1}} ... x_{m_k}.
    """
    acc = ElementBuilder()
    for j, g in enumerate(b, start=1):
        if m - j + 1 == -g.degree:
            head = tuple(Generator(i, x.degree + 1) for x in b[:j - 1])
            acc.add_word(head + b[j:], (-1) ** (j - 1))
    return acc.build()


def _shift(kind: str, i: int, m: int, rank: int):
    return generator_weight(i, m, rank, sign=1 if kind == 'xtilde' else -1)


def _row_key(kind: str, i: int, m: int, b: Word) -> str:
    return f"{kind} i={i} m={m:+d} | {format_word(b)}"


def lattice_rows(task: Tuple[CartanData, Word, Tuple[int, ...], Tuple[int, ...], Optional[int]]) -> List[Dict]:
    """Lattice rows for one basis word (pool task)."""
    C, b, nodes, ms, max_steps = task
    star = default_multiplier(C, max_steps=max_steps)
    op = default_operator(C, OmegaVariant.TWISTED, max_steps)
    source = Element.from_word(b)
    base_weight = word_weight(b, C.rank)
    rows = []
    for i in nodes:
        for m in ms:
            for kind in ('xtilde', 'omega'):
                key = _row_key(kind, i, m, b)
                try:
                    if kind == 'xtilde':
                        out = star.apply_xtilde(Generator(i, m), source)
                        diag = star.xtilde_diagnostics(Generator(i, m), source)
                    else:
                        out = op.apply(i, m, source)
                        diag = op.diagnostics(i, m, source)
                except ImcrystalError as e:
                    logger.error(f"Engine error at {key}: {e}", exc_info=True)
                    rows.append({'key': key, 'error': e.to_dict(), 'passed': False})
                    continue
                expected = base_weight + _shift(kind, i, m, C.rank)
                verdicts = {
                    'ordered': out.is_ordered_basis(),
                    'regular': all(c.is_regular_at_zero() for c in out.coefficients()),
                    'weight': all(word_weight(w, C.rank) == expected for w in out.support()),
                }
                rows.append(diag.annotate({
                    'key': key,
                    'operator': kind,
                    'i': i,
                    'm': m,
                    'input': format_word(b),
                    'output': out.to_json(),
                    'integral': all(c.is_int_poly() for c in out.coefficients()),
                    'verdicts': verdicts,
                    'passed': all(verdicts.values()),
                }))
    return rows


def basis_rows(task: Tuple[CartanData, Word, Tuple[int, ...], Tuple[int, ...], Optional[int]]) -> Tuple[List[Dict], List[Dict]]:
    """Classification rows and commutation rows for one basis word (pool task)."""
    C, b, nodes, ms, max_steps = task
    star = default_multiplier(C, max_steps=max_steps)
    op = default_operator(C, OmegaVariant.TWISTED, max_steps)
    source = Element.from_word(b)
    rows: List[Dict] = []
    commutations: List[Dict] = []
    for i in nodes:
        for m in ms:
            outputs: Dict[str, Element] = {}
            for kind in ('xtilde', 'omega'):
                key = _row_key(kind, i, m, b)
                try:
                    if kind == 'xtilde':
                        out = star.apply_xtilde(Generator(i, m), source)
                        case = star.star_pair(Generator(i, m), b[0]).case.value if b else 'unit'
                        diag = star.xtilde_diagnostics(Generator(i, m), source)
                    else:
                        out = op.apply(i, m, source)
                        case = None
                        diag = op.diagnostics(i, m, source)
                except ImcrystalError as e:
                    logger.error(f"Engine error at {key}: {e}", exc_info=True)
                    rows.append({'key': key, 'error': e.to_dict(), 'passed': False})
                    continue
                outputs[kind] = out
                cls, reduced = classify_mod_q(out)
                verdicts = {'monomial': cls not in (ModQClass.NOT_MONOMIAL, ModQClass.POLE),
                            'single_node': None}
                if kind == 'omega' and b and all(g.node == i for g in b):
                    verdicts['single_node'] = reduced == predicted_single_node_reduction(i, m, b)
                row = {
                    'key': key,
                    'operator': kind,
                    'i': i,
                    'm': m,
                    'input': format_word(b),
                    'class': cls.value,
                    'reduced': None if reduced is None else reduced.to_json(),
                    'case': case,
                    'verdicts': verdicts,
                    'passed': all(x is not False for x in verdicts.values()),
                }
                if cls in (ModQClass.NOT_MONOMIAL, ModQClass.POLE):
                    row['output'] = out.to_json()
                    if kind == 'omega':
                        row['trace'] = op.trace(i, m, b)
                rows.append(diag.annotate(row))

            commutation = commutation_row(star, op, i, m, b, source)
            if commutation is not None:
                commutations.append(commutation)
    return rows, commutations


def commutation_row(star: StarMultiplier, op: OmegaOperator, i: int, m: int, b: Word,
                    source: Element) -> Optional[Dict]:
    """
    x~_{im} Omega~_i(-m) b versus Omega~_i(-m) x~_{im} b.

    Returns None when either side is zero mod q. A side with a pole at q = 0
    cannot be compared and gives a failed row with status 'pole'.
    """
    key = f"commute i={i} m={m:+d} | {format_word(b)}"
    g = Generator(i, m)
    try:
        down = op.apply(i, -m, source)
        up = star.apply_xtilde(g, source)
        diag = op.diagnostics(i, -m, source).merge(star.xtilde_diagnostics(g, source))
        down_red, up_red = reduce_mod_q(down), reduce_mod_q(up)
        if down_red is None or up_red is None:
            sides = [side for side, red in (('omega', down_red), ('xtilde', up_red)) if red is None]
            logger.warning(f"Pole at q = 0 on the {', '.join(sides)} side of {key}")
            return diag.annotate({
                'key': key,
                'i': i,
                'm': m,
                'input': format_word(b),
                'status': 'pole',
                'pole_sides': sides,
                'verdicts': {'commutation': False},
                'passed': False,
            })
        if down_red.is_zero() or up_red.is_zero():
            return None
        lhs = reduce_mod_q(star.apply_xtilde(g, down))
        rhs = reduce_mod_q(op.apply(i, -m, up))
        diag = diag.merge(star.xtilde_diagnostics(g, down)).merge(op.diagnostics(i, -m, up))
    except ImcrystalError as e:
        logger.error(f"Engine error at {key}: {e}", exc_info=True)
        return {'key': key, 'error': e.to_dict(), 'passed': False}
    ok = lhs is not None and rhs is not None and lhs == rhs
    return diag.annotate({
        'key': key,
        'i': i,
        'm': m,
        'input': format_word(b),
        'status': 'checked',
        'lhs': None if lhs is None else lhs.to_json(),
        'rhs': None if rhs is None else rhs.to_json(),
        'verdicts': {'commutation': ok},
        'passed': ok,
    })


class CrystalReport(NamedTuple):
    window: Dict
    rows: List[Dict]
    commutations: List[Dict]
    summary: Dict

    def to_dict(self) -> Dict:
        return {'window': self.window, 'rows': self.rows,
                'commutations': self.commutations, 'summary': self.summary}


def _tasks(C: CartanData, window: Window) -> List[Tuple]:
    nodes = tuple(window.node_list(C))
    ms = tuple(window.m_range())
    return [(C, b, nodes, ms, window.max_steps) for b in basis_set(C, window)]


def basis_set(C: CartanData, window: Window) -> List[Word]:
    """Ordered words of the window, the representatives of B(lambda) the checks run over."""
    return window.words(C)


def check_lattice(C: CartanData, window: Window, workers: int = 1, progress: bool = False) -> CrystalReport:
    tasks = _tasks(C, window)
    logger.info(f"Lattice check on {C.name}: {len(tasks)} basis words")
    chunks = ordered_map(lattice_rows, tasks, workers=workers, desc="Lattice rows", progress=progress)
    rows = sorted((r for chunk in chunks for r in chunk), key=lambda r: r['key'])
    summary = summarize_verdicts(rows, LATTICE_VERDICTS)
    summary.update(summarize_diagnostics(rows))
    return CrystalReport(window.to_dict(), rows, [], summary)


def check_basis(C: CartanData, window: Window, workers: int = 1, progress: bool = False) -> CrystalReport:
    """
    Classify every operator output mod q and check the commutation condition.
    """
    tasks = _tasks(C, window)
    logger.info(f"Basis check on {C.name}: {len(tasks)} basis words")
    parts = ordered_map(basis_rows, tasks, workers=workers, desc="Basis rows", progress=progress)
    rows = sorted((r for part in parts for r in part[0]), key=lambda r: r['key'])
    commutations = sorted((r for part in parts for r in part[1]), key=lambda r: r['key'])

    summary = summarize_verdicts(rows, BASIS_VERDICTS)
    summary['classes'] = class_counts(rows)
    summary['commutation'] = {
        'checked': len(commutations),
        'failed': sum(1 for r in commutations if not r['passed']),
        'poles': sum(1 for r in commutations if r.get('status') == 'pole'),
        'engine_errors': sum(1 for r in commutations if 'error' in r),
    }
    summary['failed'] += summary['commutation']['failed']
    summary['engine_errors'] += summary['commutation']['engine_errors']
    summary.update(summarize_diagnostics(rows + commutations))
    summary['classes_by_case'] = classes_by_case(rows)
    return CrystalReport(window.to_dict(), rows, commutations, summary)


def class_counts(rows: Sequence[Dict]) -> Dict[str, int]:
    """Number of rows per mod-q class, keyed by class name in sorted order."""
    counts: Dict[str, int] = {}
    for r in rows:
        if 'class' in r:
            counts[r['class']] = counts.get(r['class'], 0) + 1
    return dict(sorted(counts.items()))


def classes_by_case(rows: Sequence[Dict]) -> Dict[str, Dict[str, int]]:
    """Mod-q class counts of x~ rows per leading star case id."""
    table: Dict[str, Dict[str, int]] = {}
    for r in rows:
        if r.get('operator') == 'xtilde' and 'class' in r:
            bucket = table.setdefault(r['case'], {})
            bucket[r['class']] = bucket.get(r['class'], 0) + 1
    return {k: dict(sorted(v.items())) for k, v in sorted(table.items())}
