"""
Subcommand dispatch for the imcrystal command line.

run(config) returns the process exit code:
    0  success (verify: no failed verdict)
    1  failed verdicts, engine errors, invalid reports, unexpected faults
    2  configuration or parse errors
    130  interrupted

Errors other than failed verdicts print a JSON error object on stderr.
"""

import sys
import json
import time
import logging
from typing import Callable, Dict, List

import pandas as pd

from algebra.cartan import G_TABLE_DOMAIN, CartanData, g_from_pairing
from algebra.errors import (
    ConfigError,
    ImcrystalError,
    IndexOutOfRange,
    InvalidRank,
    NotOrderedInput,
    ParseError,
    WindowTooLarge,
)
from algebra.laurent import LaurentQ
from algebra.words import Element, format_word, word_to_json
from evaluation.batch import resolve_workers
from evaluation.pairing import gram, pair
from evaluation.reports import (
    build_report,
    format_summary,
    run_metadata,
    validate_report,
    write_csv,
    write_report,
)
from evaluation.suites import run_suite
from operators.omega import OmegaOperator
from operators.soundness import check_steps
from operators.star import StarMultiplier

from .config import RunConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_INTERRUPTED = 130

# Errors caused by what the user typed rather than by the engine.
USAGE_ERRORS = (ConfigError, ParseError, InvalidRank, IndexOutOfRange, NotOrderedInput, WindowTooLarge)

G_TABLE_ROWS = range(4)


def emit_error(error: Exception):
    if isinstance(error, ImcrystalError):
        payload = error.to_dict()
    else:
        payload = {'error': type(error).__name__, 'message': str(error)}
    print(json.dumps(payload, sort_keys=True), file=sys.stderr)


def _print_json(payload):
    print(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False))


def _value_dict(value: LaurentQ) -> Dict:
    return {
        'value': value.to_json(),
        'text': str(value),
        'mod_q2': list(value.mod_q2()) if value.mod_q2() is not None else None,
        'at_q0': value.at_q0(),
    }


# -- describe ---------------------------------------------------------------

def g_table(C: CartanData) -> Dict[int, List[str]]:
    """g(p, r) for r = 0..3 and every pairing value occurring in C."""
    return {p: [str(g_from_pairing(p, r)) for r in G_TABLE_ROWS]
            for p in C.pairing_values() if p in G_TABLE_DOMAIN}


def cmd_describe(config: RunConfig, C: CartanData) -> int:
    table = g_table(C)
    if config.json_output:
        payload = C.to_dict()
        payload['name'] = C.name
        payload['g_table'] = {str(p): row for p, row in table.items()}
        _print_json(payload)
        return EXIT_OK

    print(f"Algebra: {C.name}  (family {C.family}, rank {C.rank})")
    print(f"Labeling: {C.diagram()}")
    print("Cartan matrix:")
    print(pd.DataFrame(C.a, index=C.nodes, columns=C.nodes).to_string())
    print(f"d = ({','.join(str(x) for x in C.d)})")
    print("Pairing matrix (alpha_i|alpha_j):")
    print(pd.DataFrame(C.pairing_matrix(), index=C.nodes, columns=C.nodes).to_string())
    print("g-table g(p, r):")
    frame = pd.DataFrame.from_dict(table, orient='index', columns=[f"r={r}" for r in G_TABLE_ROWS])
    frame.index.name = 'p'
    print(frame.to_string())
    return EXIT_OK


# -- single evaluations -----------------------------------------------------

def _multiplier(config: RunConfig, C: CartanData) -> StarMultiplier:
    return StarMultiplier(C, strict=config.strict, max_steps=config.max_steps)


def cmd_star(config: RunConfig, C: CartanData) -> int:
    left, right = config.left_generator(), config.right_generator()
    product = _multiplier(config, C).star_pair(left, right)
    payload = product.to_dict()
    payload.update({
        'algebra': C.name,
        'left': format_word((left,)),
        'right': format_word((right,)),
        'result_text': str(product.element),
        'raw_text': str(product.raw),
        'soundness': check_steps(C, list(product.steps)),
    })
    if config.json_output:
        _print_json(payload)
        return EXIT_OK

    print(f"{payload['left']} * {payload['right']} in {C.name}")
    print(f"  case:         {product.case.value}")
    print(f"  raw:          {product.raw}")
    print(f"  straightened: {product.element}")
    print(f"  ordered:      {product.ordered}")
    print(f"  integral:     {product.integral}")
    print(f"  rewrites:     {len(product.steps)} distinct, "
          f"{payload['soundness']['valid']} valid")
    if product.residuals:
        print(f"  residuals:    {', '.join(payload['residuals'])}")
    return EXIT_OK


def cmd_omega(config: RunConfig, C: CartanData) -> int:
    w = config.word_arg()
    op = OmegaOperator(C, config.omega_variant(), star=_multiplier(config, C))
    result = op.omega(config.i, config.m, Element.from_word(w))
    if config.trace:
        _print_json(op.trace(config.i, config.m, w))
        return EXIT_OK
    if config.json_output:
        _print_json({
            'algebra': C.name,
            'variant': op.variant.value,
            'i': config.i,
            'm': config.m,
            'word': format_word(w),
            'result': result.to_json(),
            'result_text': str(result),
        })
        return EXIT_OK
    print(f"Omega~_{config.i}({config.m}) [{op.variant.value}] {format_word(w)} = {result}")
    return EXIT_OK


def cmd_pair(config: RunConfig, C: CartanData) -> int:
    u, v = config.left_word(), config.right_word()
    op = OmegaOperator(C, star=_multiplier(config, C))
    value = pair(C, Element.from_word(u), Element.from_word(v), op)
    if config.json_output:
        payload = _value_dict(value)
        payload.update({'algebra': C.name, 'left': format_word(u), 'right': format_word(v)})
        _print_json(payload)
        return EXIT_OK
    print(f"<{format_word(u)}, {format_word(v)}> = {value}")
    return EXIT_OK


def cmd_gram(config: RunConfig, C: CartanData) -> int:
    basis = config.window().words(C)
    op = OmegaOperator(C, star=_multiplier(config, C))
    matrix = gram(C, basis, op)
    labels = [format_word(w) for w in basis]
    if config.json_output:
        _print_json({
            'algebra': C.name,
            'window': config.window().to_dict(),
            'words': [word_to_json(w) for w in basis],
            'matrix': [[value.to_json() for value in row] for row in matrix],
        })
        return EXIT_OK
    frame = pd.DataFrame([[str(value) for value in row] for row in matrix], index=labels, columns=labels)
    print(f"Gram matrix on {len(basis)} words of {C.name}")
    print(frame.to_string())
    return EXIT_OK


def cmd_enumerate(config: RunConfig, C: CartanData) -> int:
    words = config.window().words(C)
    if config.json_output:
        _print_json([word_to_json(w) for w in words])
        return EXIT_OK
    for w in words:
        print(format_word(w))
    logger.info(f"{len(words)} ordered words")
    return EXIT_OK


# -- verify -----------------------------------------------------------------

def cmd_verify(config: RunConfig, C: CartanData) -> int:
    workers = resolve_workers(config.workers)
    progress = not config.quiet and sys.stderr.isatty()
    logger.info(f"Running {config.suite} on {C.name} with {workers} worker(s)")

    started = time.time()
    result = run_suite(config.suite, C, config.window(), workers=workers, progress=progress)
    elapsed = time.time() - started

    report = build_report(config.suite, config.report_config(), result.rows, result.summary)
    problems = validate_report(report)
    for problem in problems:
        logger.error(f"Report problem: {problem}")

    if config.output:
        write_report(report, config.output, run_metadata(workers, elapsed))
    if config.csv:
        write_csv(report['rows'], config.csv)
    print(format_summary(report))
    logger.info(f"Finished in {elapsed:.1f}s")

    if problems:
        return EXIT_FAILED
    if result.failed() > 0:
        logger.warning(f"{result.failed()} failed verdict(s)")
        return EXIT_FAILED
    return EXIT_OK


COMMANDS: Dict[str, Callable[[RunConfig, CartanData], int]] = {
    'describe': cmd_describe,
    'star': cmd_star,
    'omega': cmd_omega,
    'pair': cmd_pair,
    'gram': cmd_gram,
    'enumerate': cmd_enumerate,
    'verify': cmd_verify,
}


def run(config: RunConfig) -> int:
    """
    Validate the configuration and execute its subcommand.

    Returns:
        Process exit code
    """
    try:
        C = config.validate()
        return COMMANDS[config.command](config, C)
    except USAGE_ERRORS as e:
        emit_error(e)
        return EXIT_USAGE
    except ImcrystalError as e:
        logger.error(f"{type(e).__name__}: {e}", exc_info=config.verbose)
        emit_error(e)
        return EXIT_FAILED
    except KeyboardInterrupt:
        logger.warning("Interrupted")
        return EXIT_INTERRUPTED
    except Exception as e:
        logger.error(f"Unexpected error: {e}", exc_info=True)
        emit_error(e)
        return EXIT_FAILED
