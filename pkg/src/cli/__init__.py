"""Command-line surface: word grammar, run configuration and subcommand dispatch."""

from .parser import parse_word, parse_generator, parse_nodes
from .config import RunConfig
from .runner import run, emit_error, EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_INTERRUPTED

__all__ = [
    'parse_word',
    'parse_generator',
    'parse_nodes',
    'RunConfig',
    'run',
    'emit_error',
    'EXIT_OK',
    'EXIT_FAILED',
    'EXIT_USAGE',
    'EXIT_INTERRUPTED'
]
