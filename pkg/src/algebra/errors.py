"""
Exception hierarchy shared by the algebra, operator and evaluation packages.
"""

from typing import Any, Dict, Optional


class ImcrystalError(Exception):
    """Base class for every error raised by the library."""

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self) -> Dict[str, Any]:
        """Machine-readable error object used by the CLI."""
        payload = {'error': type(self).__name__, 'message': self.message}
        for key, value in self.details.items():
            payload[key] = value if isinstance(value, (int, str, bool, type(None))) else str(value)
        return payload


class InvalidRank(ImcrystalError):
    pass


class IndexOutOfRange(ImcrystalError):
    pass


class UnsupportedPairing(ImcrystalError):
    pass


class WindowTooLarge(ImcrystalError):
    pass


class StraightenDiverged(ImcrystalError):
    """Rewriting exceeded its step budget."""

    def __init__(self, max_steps: int, word: Any):
        super().__init__(f"straightening exceeded {max_steps} steps at {word}",
                         max_steps=max_steps, word=word)
        self.max_steps = max_steps
        self.word = word


class SearchExhausted(ImcrystalError):
    """The p-exponent search ran past its structural bound (engine bug)."""
    pass


class NoCaseError(ImcrystalError):
    pass


class ResidualNotOrdered(ImcrystalError):
    pass


class NotOrderedInput(ImcrystalError):
    pass


class ParseError(ImcrystalError):
    """Word text did not match the grammar."""

    def __init__(self, message: str, offset: int, expected: Optional[str] = None):
        super().__init__(message, offset=offset, expected=expected)
        self.offset = offset
        self.expected = expected


class ConfigError(ImcrystalError):
    pass
