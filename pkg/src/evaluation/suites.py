"""
Verification suites: star-order, omega-order, predicates, and the "all" driver
that also runs the Gram, lattice and basis checks.
"""

import logging
from typing import Callable, Dict, List, NamedTuple, Optional, Tuple

from algebra.cartan import CartanData
from algebra.errors import ImcrystalError
from algebra.words import Element, ElementBuilder, Generator, Word, format_word, is_ordered
from operators.omega import OmegaOperator, OmegaVariant, default_operator, min_struct_support
from operators.soundness import check_steps, inversion_measure
from operators.star import CLEAN, Diagnostics, StarMultiplier, default_multiplier

from .batch import Window, merge_counts, ordered_map
from .crystal import HighestWeight, check_basis, check_lattice, reduced_is_irreducible, verma_is_irreducible
from .pairing import check_window, summarize_diagnostics, summarize_verdicts

logger = logging.getLogger(__name__)

SUITES = ('star-order', 'omega-order', 'gram', 'lattice', 'basis', 'predicates', 'all')

# (h, lambda(d), lambda(c), verma irreducible, reduced irreducible)
PREDICATE_TABLE = [
    ((2, -1), 0, 0, False, True),
    ((0, 5), 0, 0, False, False),
    ((1, 1), 0, 3, True, False),
    ((0, 0), 0, 0, False, False),
    ((-3, 2), 1, 0, False, True),
    ((4, 0), 2, 0, False, False),
    ((1, 2), 0, -1, True, False),
    ((-1, -1), -2, 0, False, True),
    ((0, -2), 0, 5, True, False),
    ((7,), 0, 0, False, True),
    ((0,), 3, 0, False, False),
    ((0,), 0, 2, True, False),
    ((1, 2, 3), 0, 0, False, True),
    ((1, 0, 3), 0, 0, False, False),
    ((-1, 2, -3), 4, -4, True, False),
    ((2, 2), 0, 1, True, False),
    ((5, -5), -1, 0, False, True),
    ((0, 1, 0), 0, 0, False, False),
    ((3, 3, 3, 3), 0, 0, False, True),
    ((3, 0, 3, 3), 0, -7, True, False),
]


class SuiteResult(NamedTuple):
    suite: str
    rows: List[Dict]
    summary: Dict

    def failed(self) -> int:
        return self.summary.get('failed', 0)


# -- star-order -------------------------------------------------------------

def star_rows(task: Tuple[CartanData, Generator, Tuple[Generator, ...], Optional[int]]) -> Tuple[List[Dict], list]:
    """Star products of one left generator with every right generator (pool task)."""
    C, g1, generators, max_steps = task
    star = default_multiplier(C, max_steps=max_steps)
    rows = []
    for g2 in generators:
        key = f"{format_word((g1,))} * {format_word((g2,))}"
        try:
            product = star.star_pair(g1, g2)
        except ImcrystalError as e:
            logger.error(f"Engine error at {key}: {e}", exc_info=True)
            rows.append({'key': key, 'error': e.to_dict(), 'passed': False})
            continue
        verdicts = {'ordered': product.ordered, 'integral': product.integral}
        rows.append(star.pair_diagnostics(g1, g2).annotate({
            'key': key,
            'left': format_word((g1,)),
            'right': format_word((g2,)),
            'case': product.case.value,
            'raw': product.raw.to_json(),
            'result': product.element.to_json(),
            'residuals': [format_word(w) for w in product.residuals],
            'measure': inversion_measure((g1, g2)),
            'verdicts': verdicts,
            'passed': all(verdicts.values()),
        }))
    return rows, star.recorded_steps()


def _generators(C: CartanData, window: Window) -> Tuple[Generator, ...]:
    return tuple(Generator(i, k) for i in window.node_list(C) for k in range(window.kmin, window.kmax + 1))


def _soundness(C: CartanData, step_lists: List[list]) -> Dict:
    unique = {}
    for steps in step_lists:
        for s in steps:
            unique.setdefault((s.left, s.right), s)
    return check_steps(C, [unique[k] for k in sorted(unique)])


def run_star_order(C: CartanData, window: Window, workers: int = 1, progress: bool = False) -> SuiteResult:
    generators = _generators(C, window)
    tasks = [(C, g, generators, window.max_steps) for g in generators]
    parts = ordered_map(star_rows, tasks, workers=workers, desc="Star pairs", progress=progress)
    rows = sorted((r for part in parts for r in part[0]), key=lambda r: r['key'])

    summary = summarize_verdicts(rows, ('ordered', 'integral'))
    summary['cases'] = merge_counts({r['case']: 1} for r in rows if 'case' in r)
    summary['no_case'] = summary['cases'].get('NoCase', 0)
    summary['residual_pairs'] = sum(1 for r in rows if r.get('residuals'))
    summary['residuals_by_case'] = merge_counts({r['case']: 1} for r in rows if r.get('residuals'))
    summary['soundness'] = _soundness(C, [part[1] for part in parts])
    summary['failed'] += len(summary['soundness']['failures'])
    return SuiteResult('star-order', rows, summary)


# -- omega-order ------------------------------------------------------------

def _classic_rhs(C: CartanData, classic: OmegaOperator, star: StarMultiplier,
                 j: int, k: int, g: Generator, w: Word) -> Tuple[Element, Diagnostics]:
    """delta_{ij} delta_{k,-m} w + sum_r g(r) x~_{i,m+r} Omega_j(k-r) w, at gamma = 1."""
    acc = ElementBuilder()
    diag = CLEAN
    if g.node == j and g.degree == -k:
        acc.add_word(w, 1)
    s = min_struct_support(C, j, w)
    if s is not None:
        for r in range(max(0, k - s + 1)):
            coeff = C.g_qinv(j, g.node, r)
            if coeff.is_zero():
                continue
            inner = classic.omega_word(j, k - r, w)
            diag = diag.merge(classic.word_diagnostics(j, k - r, w))
            if not inner.is_zero():
                acc.add(star.apply_xtilde(g.shifted(r), inner), coeff)
                diag = diag.merge(star.xtilde_diagnostics(g.shifted(r), inner))
    return acc.build(), diag


def omega_rows(task: Tuple[CartanData, Word, Tuple[int, ...], Tuple[int, ...], Tuple[Generator, ...], Optional[int]]) -> Tuple[List[Dict], List[Dict], list]:
    """Omega-order rows plus classic-consistency rows for one word (pool task)."""
    C, w, nodes, ms, generators, max_steps = task
    star = default_multiplier(C, max_steps=max_steps)
    op = default_operator(C, OmegaVariant.TWISTED, max_steps)
    classic = default_operator(C, OmegaVariant.CLASSIC, max_steps)
    # independent caches with inflated cutoffs
    wide = OmegaOperator(C, OmegaVariant.TWISTED, star=StarMultiplier(C, max_steps=max_steps),
                         cutoff_slack=5, search_slack=5)
    rows: List[Dict] = []
    consistency: List[Dict] = []

    for i in nodes:
        s = min_struct_support(C, i, w)
        for m in ms:
            key = f"omega i={i} m={m:+d} | {format_word(w)}"
            try:
                out = op.omega_word(i, m, w)
                diag = op.word_diagnostics(i, m, w)
                widened = wide.omega_word(i, m, w)
            except ImcrystalError as e:
                logger.error(f"Engine error at {key}: {e}", exc_info=True)
                rows.append({'key': key, 'error': e.to_dict(), 'passed': False})
                continue
            below = s is None or m < s
            verdicts = {
                'ordered': out.is_ordered_basis(),
                'length': all(len(u) == len(w) - 1 for u in out.support()),
                'integral': all(c.is_int_poly() for c in out.coefficients()),
                'cutoff_exact': widened == out,
                'annihilation': out.is_zero() if below else None,
            }
            row = {
                'key': key,
                'i': i,
                'm': m,
                'input': format_word(w),
                'output': out.to_json(),
                'support_bound': s,
                'verdicts': verdicts,
                'passed': all(x is not False for x in verdicts.values()),
            }
            if not row['passed']:
                row['trace'] = op.trace(i, m, w)
            rows.append(diag.annotate(row))

    for g in generators:
        product_ordered = is_ordered((g,) + w)
        for j in nodes:
            for k in ms:
                key = f"classic j={j} k={k:+d} | {format_word((g,))} . {format_word(w)}"
                try:
                    source = Element.from_word(w)
                    product = star.apply_xtilde(g, source)
                    lhs = classic.apply(j, k, product)
                    rhs, diag = _classic_rhs(C, classic, star, j, k, g, w)
                    diag = diag.merge(star.xtilde_diagnostics(g, source)).merge(classic.diagnostics(j, k, product))
                except ImcrystalError as e:
                    logger.error(f"Engine error at {key}: {e}", exc_info=True)
                    consistency.append({'key': key, 'error': e.to_dict(), 'passed': False})
                    continue
                consistency.append(diag.annotate({
                    'key': key,
                    'concatenation_ordered': product_ordered,
                    'verdicts': {'classic_consistency': lhs == rhs},
                    'passed': lhs == rhs,
                }))
    return rows, consistency, star.recorded_steps()


def run_omega_order(C: CartanData, window: Window, workers: int = 1, progress: bool = False) -> SuiteResult:
    words = [w for w in window.words(C) if w]
    nodes = tuple(window.node_list(C))
    ms = tuple(window.m_range())
    generators = _generators(C, window)
    tasks = [(C, w, nodes, ms, generators, window.max_steps) for w in words]
    parts = ordered_map(omega_rows, tasks, workers=workers, desc="Omega words", progress=progress)
    rows = sorted((r for part in parts for r in part[0]), key=lambda r: r['key'])
    consistency = sorted((r for part in parts for r in part[1]), key=lambda r: r['key'])

    summary = summarize_verdicts(rows, ('ordered', 'length', 'integral', 'cutoff_exact', 'annihilation'))
    ordered_products = [r for r in consistency if r.get('concatenation_ordered')]
    summary['classic_consistency'] = {
        'checked': len(consistency),
        'failed': sum(1 for r in consistency if not r['passed']),
        'checked_ordered_products': len(ordered_products),
        'failed_ordered_products': sum(1 for r in ordered_products if not r['passed']),
    }
    summary['failed'] += summary['classic_consistency']['failed']
    summary['engine_errors'] += sum(1 for r in consistency if 'error' in r)
    summary.update(summarize_diagnostics(rows + consistency))
    summary['soundness'] = _soundness(C, [part[2] for part in parts])
    summary['failed'] += len(summary['soundness']['failures'])
    return SuiteResult('omega-order', rows + consistency, summary)


# -- predicates -------------------------------------------------------------

def run_predicates(C: CartanData = None, window: Window = None, workers: int = 1,
                   progress: bool = False) -> SuiteResult:
    rows = []
    for n, (h, dval, cval, verma, reduced) in enumerate(PREDICATE_TABLE):
        hw = HighestWeight(tuple(h), dval, cval)
        got_verma = verma_is_irreducible(hw)
        got_reduced = reduced_is_irreducible(hw)
        verdicts = {'verma': got_verma == verma, 'reduced': got_reduced == reduced}
        rows.append({
            'key': f"hw {n:02d}",
            'highest_weight': hw.to_dict(),
            'verma_irreducible': got_verma,
            'reduced_irreducible': got_reduced,
            'verdicts': verdicts,
            'passed': all(verdicts.values()),
        })
    return SuiteResult('predicates', rows, summarize_verdicts(rows, ('verma', 'reduced')))


# -- wrappers for the report-producing checks -------------------------------

def run_gram(C: CartanData, window: Window, workers: int = 1, progress: bool = False) -> SuiteResult:
    report = check_window(C, window, workers=workers, progress=progress)
    return SuiteResult('gram', report.rows, report.summary)


def run_lattice(C: CartanData, window: Window, workers: int = 1, progress: bool = False) -> SuiteResult:
    report = check_lattice(C, window, workers=workers, progress=progress)
    return SuiteResult('lattice', report.rows, report.summary)


def run_basis(C: CartanData, window: Window, workers: int = 1, progress: bool = False) -> SuiteResult:
    report = check_basis(C, window, workers=workers, progress=progress)
    return SuiteResult('basis', report.rows + report.commutations, report.summary)


RUNNERS: Dict[str, Callable[..., SuiteResult]] = {
    'star-order': run_star_order,
    'omega-order': run_omega_order,
    'gram': run_gram,
    'lattice': run_lattice,
    'basis': run_basis,
    'predicates': run_predicates,
}


def run_all(C: CartanData, window: Window, workers: int = 1, progress: bool = False) -> SuiteResult:
    rows: List[Dict] = []
    summary: Dict = {'suites': {}, 'failed': 0, 'engine_errors': 0}
    for name, runner in RUNNERS.items():
        logger.info("=" * 80)
        logger.info(f"Suite {name}")
        logger.info("=" * 80)
        result = runner(C, window, workers=workers, progress=progress)
        for row in result.rows:
            rows.append(dict(row, key=f"{name} :: {row['key']}", suite=name))
        summary['suites'][name] = result.summary
        summary['failed'] += result.summary.get('failed', 0)
        summary['engine_errors'] += result.summary.get('engine_errors', 0)
        logger.info(f"{name}: {result.summary.get('instances', len(result.rows))} instances, "
                    f"{result.summary.get('failed', 0)} failed")
    rows.sort(key=lambda r: r['key'])
    summary.update(summarize_diagnostics(rows))
    return SuiteResult('all', rows, summary)


def run_suite(name: str, C: CartanData, window: Window, workers: int = 1, progress: bool = False) -> SuiteResult:
    if name == 'all':
        return run_all(C, window, workers=workers, progress=progress)
    return RUNNERS[name](C, window, workers=workers, progress=progress)
