"""
Run configuration for the command line, built from argparse and validated
before any computation starts.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from algebra.cartan import CartanData, build_cartan
from algebra.errors import ConfigError, ImcrystalError
from algebra.words import DEFAULT_WORD_CAP, Generator, Word
from evaluation.batch import Window
from evaluation.suites import SUITES
from operators.omega import OmegaVariant

from .parser import parse_generator, parse_nodes, parse_word

logger = logging.getLogger(__name__)

COMMANDS = ('describe', 'star', 'omega', 'pair', 'gram', 'enumerate', 'verify')


@dataclass
class RunConfig:
    command: str
    family: str
    rank: Optional[int] = None
    max_len: int = 2
    kmin: int = 0
    kmax: int = 1
    mmin: int = -1
    mmax: int = 1
    nodes: Optional[Tuple[int, ...]] = None
    suite: Optional[str] = None
    strict: bool = False
    output: Optional[str] = None
    csv: Optional[str] = None
    json_output: bool = False
    workers: Optional[int] = None
    quiet: bool = False
    verbose: bool = False
    max_words: int = DEFAULT_WORD_CAP
    max_steps: Optional[int] = None
    # single-evaluation arguments
    left: Optional[str] = None
    right: Optional[str] = None
    word: Optional[str] = None
    variant: str = 'twisted'
    i: Optional[int] = None
    m: Optional[int] = None
    trace: bool = False
    cartan: Optional[CartanData] = field(default=None, repr=False, compare=False)

    @classmethod
    def from_args(cls, args) -> 'RunConfig':
        """Build a config from an argparse namespace; absent options keep their defaults."""
        def opt(name, default=None):
            value = getattr(args, name, None)
            return default if value is None else value

        json_arg = getattr(args, 'json', None)
        return cls(
            command=args.command,
            family=opt('algebra', 'A'),
            rank=opt('rank'),
            max_len=opt('max_len', 2),
            kmin=opt('k_min', 0),
            kmax=opt('k_max', 1),
            mmin=opt('m_min', -1),
            mmax=opt('m_max', 1),
            nodes=parse_nodes(getattr(args, 'nodes', None)),
            suite=opt('suite'),
            strict=bool(opt('strict', False)),
            # verify takes --json PATH, the other subcommands take a bare --json switch
            output=json_arg if isinstance(json_arg, str) else None,
            csv=opt('csv'),
            json_output=json_arg is True,
            workers=opt('workers'),
            quiet=bool(opt('quiet', False)),
            verbose=bool(opt('verbose', False)),
            max_words=opt('max_words', DEFAULT_WORD_CAP),
            max_steps=opt('max_steps'),
            left=opt('left'),
            right=opt('right'),
            word=opt('word'),
            variant=opt('variant', 'twisted'),
            i=opt('i'),
            m=opt('m'),
            trace=bool(opt('trace', False)),
        )

    def validate(self) -> CartanData:
        """
        Check every bound and parse every word argument.

        Returns:
            The Cartan data of the selected algebra

        Raises:
            ConfigError: inconsistent bounds or unknown names
            ParseError: malformed word text
        """
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}", command=self.command)
        try:
            C = build_cartan(self.family, self.rank)
        except ImcrystalError as e:
            raise ConfigError(e.message, **e.details) from e

        if self.max_len < 0:
            raise ConfigError(f"--max-len must be >= 0, got {self.max_len}", max_len=self.max_len)
        if self.kmin > self.kmax:
            raise ConfigError(f"--k-min {self.kmin} exceeds --k-max {self.kmax}",
                              k_min=self.kmin, k_max=self.kmax)
        if self.mmin > self.mmax:
            raise ConfigError(f"--m-min {self.mmin} exceeds --m-max {self.mmax}",
                              m_min=self.mmin, m_max=self.mmax)
        if self.nodes is not None:
            bad = [n for n in self.nodes if n not in C.nodes]
            if bad:
                raise ConfigError(f"nodes {bad} outside 1..{C.rank} for {C.name}", nodes=str(bad))
        if self.max_words < 1:
            raise ConfigError(f"--max-words must be positive, got {self.max_words}")
        if self.max_steps is not None and self.max_steps < 1:
            raise ConfigError(f"--max-steps must be positive, got {self.max_steps}")
        if self.workers is not None and self.workers < 1:
            raise ConfigError(f"--workers must be positive, got {self.workers}")

        if self.command == 'verify' and self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}; expected one of {', '.join(SUITES)}",
                              suite=self.suite)
        if self.command == 'star':
            for g in (self.left_generator(), self.right_generator()):
                self._check_node(C, g.node)
        if self.command == 'omega':
            try:
                OmegaVariant.parse(self.variant)
            except ValueError as e:
                raise ConfigError(str(e), variant=self.variant) from e
            if self.i is None or self.m is None or self.word is None:
                raise ConfigError("omega needs --i, --m and --word")
            self._check_node(C, self.i)
            self._check_words(C, self.word_arg())
        if self.command == 'pair':
            self._check_words(C, self.left_word(), self.right_word())

        self.cartan = C
        return C

    @staticmethod
    def _check_node(C: CartanData, i: int):
        if i not in C.nodes:
            raise ConfigError(f"node {i} outside 1..{C.rank} for {C.name}", node=i)

    def _check_words(self, C: CartanData, *words: Word):
        for w in words:
            for g in w:
                self._check_node(C, g.node)

    def _require(self, name: str) -> str:
        value = getattr(self, name)
        if value is None:
            raise ConfigError(f"{self.command} needs --{name}")
        return value

    def left_generator(self) -> Generator:
        return parse_generator(self._require('left'))

    def right_generator(self) -> Generator:
        return parse_generator(self._require('right'))

    def left_word(self) -> Word:
        return parse_word(self._require('left'))

    def right_word(self) -> Word:
        return parse_word(self._require('right'))

    def word_arg(self) -> Word:
        return parse_word(self._require('word'))

    def omega_variant(self) -> OmegaVariant:
        return OmegaVariant.parse(self.variant)

    def window(self) -> Window:
        return Window(self.max_len, self.kmin, self.kmax, self.mmin, self.mmax,
                      nodes=self.nodes, cap=self.max_words, max_steps=self.max_steps)

    def report_config(self) -> Dict:
        """Configuration recorded in the hashed report body (no worker count, no paths)."""
        C = self.cartan
        return {
            'algebra': C.name if C is not None else self.family,
            'family': C.family if C is not None else self.family,
            'rank': C.rank if C is not None else self.rank,
            'window': self.window().to_dict(),
            'strict': self.strict,
            'max_words': self.max_words,
            'max_steps': self.max_steps,
        }
