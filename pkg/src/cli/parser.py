"""
Text grammar for words on the command line.

    word := "1" | term (term)*        whitespace allowed around terms
    term := "x[" int "," int "]"

Offsets in ParseError are 0-based positions in the input string.
"""

import re
from typing import List, Optional, Tuple

from algebra.errors import ParseError
from algebra.words import EMPTY_WORD, Generator, Word

_WS = re.compile(r'\s*')
_INT = re.compile(r'[+-]?\d+')
_UNIT = re.compile(r'\s*1\s*$')


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        self.pos = _WS.match(self.text, self.pos).end()

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def literal(self, token: str):
        if not self.text.startswith(token, self.pos):
            self.fail(repr(token))
        self.pos += len(token)

    def integer(self) -> int:
        self.skip_ws()
        m = _INT.match(self.text, self.pos)
        if m is None:
            self.fail("integer")
        self.pos = m.end()
        self.skip_ws()
        return int(m.group())

    def fail(self, expected: str):
        found = self.text[self.pos] if not self.at_end() else "end of input"
        raise ParseError(f"expected {expected} at offset {self.pos}, found {found!r}",
                         offset=self.pos, expected=expected)


def _term(sc: _Scanner) -> Generator:
    sc.literal('x')
    sc.literal('[')
    i = sc.integer()
    sc.literal(',')
    k = sc.integer()
    sc.literal(']')
    return Generator(i, k)


def parse_word(text: str) -> Word:
    """
    Parse the text form of a word.

    Raises:
        ParseError: with the offset of the first unexpected character
    """
    if _UNIT.match(text):
        return EMPTY_WORD
    sc = _Scanner(text)
    sc.skip_ws()
    if sc.at_end():
        sc.fail("'x[' or '1'")
    terms: List[Generator] = []
    while not sc.at_end():
        terms.append(_term(sc))
        sc.skip_ws()
    return tuple(terms)


def parse_generator(text: str) -> Generator:
    w = parse_word(text)
    if len(w) != 1:
        raise ParseError(f"expected exactly one generator, got {len(w)}", offset=0,
                         expected="x[i,k]")
    return w[0]


def parse_nodes(text: Optional[str]) -> Optional[Tuple[int, ...]]:
    """Comma-separated node list such as "1,2"; None or empty means every node."""
    if text is None or not text.strip():
        return None
    nodes = []
    offset = 0
    for part in text.split(','):
        stripped = part.strip()
        if not _INT.fullmatch(stripped):
            raise ParseError(f"bad node {stripped!r} in {text!r}", offset=offset, expected="integer")
        nodes.append(int(stripped))
        offset += len(part) + 1
    return tuple(sorted(set(nodes)))
