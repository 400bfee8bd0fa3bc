#!/usr/bin/env python3
"""
Command-line interface for exact computations in the negative half of the
twisted quantum affine algebra: star products, annihilation operators, the
bilinear form and crystal-basis verification suites.
"""

import os
import sys
import argparse
import logging

# Add src to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from algebra.cartan import FAMILIES
from algebra.errors import ImcrystalError
from algebra.words import DEFAULT_WORD_CAP
from cli.config import RunConfig
from cli.runner import EXIT_USAGE, emit_error, run
from evaluation.suites import SUITES

logger = logging.getLogger(__name__)


def setup_logging(command: str, verbose: bool, quiet: bool):
    """WARNING for interactive subcommands, INFO for verify, DEBUG with --verbose."""
    if verbose:
        level = logging.DEBUG
    elif command == 'verify' and not quiet:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )


def _add_algebra(p: argparse.ArgumentParser):
    p.add_argument('--algebra', type=str, default='A',
                   help=f"Family: {', '.join(FAMILIES)} (default: A)")
    p.add_argument('--rank', type=int, default=None,
                   help='Number of finite nodes (optional for E6/E7/E8/F4/G2)')


def _add_window(p: argparse.ArgumentParser, with_m: bool = False):
    p.add_argument('--max-len', type=int, default=2, help='Maximum word length (default: 2)')
    p.add_argument('--k-min', type=int, default=0, help='Smallest generator degree (default: 0)')
    p.add_argument('--k-max', type=int, default=1, help='Largest generator degree (default: 1)')
    p.add_argument('--nodes', type=str, default=None,
                   help='Comma-separated node subset, e.g. "1,2" (default: all nodes)')
    p.add_argument('--max-words', type=int, default=DEFAULT_WORD_CAP,
                   help=f'Enumeration cap (default: {DEFAULT_WORD_CAP})')
    if with_m:
        p.add_argument('--m-min', type=int, default=-1, help='Smallest operator degree (default: -1)')
        p.add_argument('--m-max', type=int, default=1, help='Largest operator degree (default: 1)')


def _add_engine(p: argparse.ArgumentParser):
    p.add_argument('--strict', action='store_true',
                   help='Treat unmatched cases and unordered residuals as errors')
    p.add_argument('--max-steps', type=int, default=None,
                   help='Straightening step budget per product (default: size-based)')
    p.add_argument('--verbose', '-v', action='store_true', help='Debug logging')
    p.add_argument('--quiet', '-q', action='store_true', help='No progress bars or info logging')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description='Exact star products, annihilation operators and crystal checks',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Cartan data, symmetrizers and g-table
  python src/imcrystal.py describe --algebra G2

  # Star product of two generators
  python src/imcrystal.py star --algebra A --rank 2 --left "x[1,0]" --right "x[2,1]" --json

  # One annihilation operator with its recursion tree
  python src/imcrystal.py omega --algebra A --rank 1 --i 1 --m 0 --word "x[1,1] x[1,0]" --trace

  # Bilinear form and Gram matrix
  python src/imcrystal.py pair --algebra A --rank 1 --left "x[1,0] x[1,0]" --right "x[1,0] x[1,0]"
  python src/imcrystal.py gram --algebra A --rank 1 --max-len 2 --k-min 0 --k-max 1

  # Verification suites
  python src/imcrystal.py verify gram --algebra A --rank 1 --max-len 2 --k-min 0 --k-max 1
  python src/imcrystal.py verify basis --algebra A --rank 2 --max-len 2 --k-min -1 --k-max 1 \\
      --m-min -1 --m-max 1 --json reports/basis_A2.json --csv reports/basis_A2.csv
        """
    )
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('describe', help='Print Cartan data, labeling and g-table')
    _add_algebra(p)
    p.add_argument('--json', action='store_true', help='JSON output')
    _add_engine(p)

    p = sub.add_parser('star', help='Straightened star product of two generators')
    _add_algebra(p)
    p.add_argument('--left', type=str, required=True, help='Left generator, e.g. "x[1,0]"')
    p.add_argument('--right', type=str, required=True, help='Right generator, e.g. "x[2,1]"')
    p.add_argument('--json', action='store_true', help='JSON output')
    _add_engine(p)

    p = sub.add_parser('omega', help='Apply one annihilation operator to a word')
    _add_algebra(p)
    p.add_argument('--variant', type=str, default='twisted', choices=['twisted', 'classic'],
                   help='Operator variant (default: twisted)')
    p.add_argument('--i', type=int, required=True, help='Operator node')
    p.add_argument('--m', type=int, required=True, help='Operator degree')
    p.add_argument('--word', type=str, required=True, help='Ordered word, e.g. "x[1,1] x[1,0]" or "1"')
    p.add_argument('--trace', action='store_true', help='Print the recursion tree as JSON')
    p.add_argument('--json', action='store_true', help='JSON output')
    _add_engine(p)

    p = sub.add_parser('pair', help='Bilinear form of two ordered words')
    _add_algebra(p)
    p.add_argument('--left', type=str, required=True, help='Left word')
    p.add_argument('--right', type=str, required=True, help='Right word')
    p.add_argument('--json', action='store_true', help='JSON output')
    _add_engine(p)

    p = sub.add_parser('gram', help='Gram matrix on a window of ordered words')
    _add_algebra(p)
    _add_window(p)
    p.add_argument('--json', action='store_true', help='JSON output')
    _add_engine(p)

    p = sub.add_parser('enumerate', help='List the ordered words of a window')
    _add_algebra(p)
    _add_window(p)
    p.add_argument('--json', action='store_true', help='JSON output')
    _add_engine(p)

    p = sub.add_parser('verify', help='Run a verification suite and write a report')
    p.add_argument('suite', choices=SUITES, help='Suite to run')
    _add_algebra(p)
    _add_window(p, with_m=True)
    p.add_argument('--json', type=str, default=None, metavar='PATH',
                   help='Write the report to PATH (metadata goes to PATH.meta.json)')
    p.add_argument('--csv', type=str, default=None, metavar='PATH', help='Write the row table as CSV')
    p.add_argument('--workers', type=int, default=None,
                   help='Worker processes (default: IMCRYSTAL_THREADS or all cores)')
    _add_engine(p)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.command, args.verbose, args.quiet)

    try:
        config = RunConfig.from_args(args)
    except ImcrystalError as e:
        emit_error(e)
        return EXIT_USAGE
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
