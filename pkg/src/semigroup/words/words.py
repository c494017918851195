"""
Words of the free semigroup on m generators and finite windows of shift sequences.

A word ``i_1 i_2 ... i_n`` is acted out by applying ``f_{i_1}`` first. The
empty word never appears as a ``Word`` value, but it is accepted by
``is_suffix_le`` where it plays the role of the identity map.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

import numpy as np

from src.semigroup.errors import BudgetExceededError, ConfigError
from src.semigroup.numerics_config import WORD_BUDGET
from src.semigroup.parallel import philox_generator

MAX_GENERATORS = 16
_SYMBOL_DIGITS = "0123456789abcdef"


@dataclass(frozen=True)
class Alphabet:
    m: int

    def __post_init__(self) -> None:
        if not 1 <= self.m <= MAX_GENERATORS:
            raise ConfigError(f"alphabet size must be in [1, {MAX_GENERATORS}], got {self.m}")

    def word_count(self, n: int) -> int:
        return self.m**n


@dataclass(frozen=True, order=True)
class Word:
    symbols: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.symbols) < 1:
            raise ConfigError("a word has at least one symbol")
        if any(s < 0 for s in self.symbols):
            raise ConfigError(f"negative symbol in {self.symbols}")

    @classmethod
    def parse(cls, text: str) -> Word:
        """Build a word from its digit string, e.g. ``Word.parse("012")``."""
        try:
            return cls(tuple(_SYMBOL_DIGITS.index(ch) for ch in text.lower()))
        except ValueError as exc:
            raise ConfigError(f"invalid word literal {text!r}") from exc

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[int]:
        return iter(self.symbols)

    def __getitem__(self, index: int) -> int:
        return self.symbols[index]

    def __add__(self, other: Word) -> Word:
        return Word(self.symbols + other.symbols)

    def __str__(self) -> str:
        return "".join(_SYMBOL_DIGITS[s] for s in self.symbols)

    def check_alphabet(self, alphabet: Alphabet) -> None:
        if max(self.symbols) >= alphabet.m:
            raise ConfigError(f"word {self} uses a symbol outside an alphabet of size {alphabet.m}")

    def as_array(self) -> np.ndarray:
        return np.asarray(self.symbols, dtype=np.int64)


def reverse(w: Word) -> Word:
    return Word(w.symbols[::-1])


def is_suffix_le(w_prime: Word | Sequence[int], w: Word | Sequence[int]) -> bool:
    """Return True when ``w = w'' w_prime`` for some possibly empty ``w''``.

    An empty ``w_prime`` is a suffix of every word.
    """
    tail = tuple(w_prime)
    whole = tuple(w)
    if not tail:
        return True
    if len(tail) > len(whole):
        return False
    return whole[len(whole) - len(tail) :] == tail


def prefixes(w: Word) -> list[Word]:
    return [Word(w.symbols[: k + 1]) for k in range(len(w))]


def enumerate_words(alphabet: Alphabet, n: int, budget: int = WORD_BUDGET) -> list[Word]:
    """
    List every word of length n in lexicographic order.

    Args:
        alphabet: Generators to draw symbols from
        n: Word length, at least 1
        budget: Largest number of words the caller accepts

    Returns:
        The m**n words of length n

    Raises:
        BudgetExceededError: If m**n exceeds the budget; sample_words is the fallback
    """
    if n < 1:
        raise ConfigError(f"word length must be at least 1, got {n}")
    count = alphabet.word_count(n)
    if count > budget:
        raise BudgetExceededError(f"{alphabet.m}**{n} = {count} words exceed the budget {budget}")
    return [Word(symbols) for symbols in itertools.product(range(alphabet.m), repeat=n)]


def sample_words(alphabet: Alphabet, n: int, k: int, seed: int) -> list[Word]:
    """Draw k words of length n uniformly and independently from a seeded stream."""
    if n < 1 or k < 1:
        raise ConfigError(f"sample_words needs n >= 1 and k >= 1, got n={n}, k={k}")
    rng = philox_generator(seed, "words", n)
    draws = rng.integers(0, alphabet.m, size=(k, n))
    return [Word(tuple(int(s) for s in row)) for row in draws]


def words_array(words: Sequence[Word]) -> np.ndarray:
    """Stack equal-length words into an integer array of shape (len(words), n)."""
    return np.asarray([w.symbols for w in words], dtype=np.int64)


@dataclass(frozen=True)
class OmegaWindow:
    """The window ``omega|_[a, b]`` of a one- or two-sided sequence.

    ``center_offset`` is the sequence index ``a`` of the first stored symbol.
    """

    center_offset: int
    symbols: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.symbols) < 1:
            raise ConfigError("a window holds at least one symbol")

    @property
    def first(self) -> int:
        return self.center_offset

    @property
    def last(self) -> int:
        return self.center_offset + len(self.symbols) - 1

    def covers(self, index: int) -> bool:
        return self.first <= index <= self.last

    def symbol(self, index: int) -> int:
        if not self.covers(index):
            raise ConfigError(f"index {index} outside window [{self.first}, {self.last}]")
        return self.symbols[index - self.center_offset]

    def restrict(self, a: int, b: int) -> Word:
        if a > b or not (self.covers(a) and self.covers(b)):
            raise ConfigError(f"[{a}, {b}] is not inside window [{self.first}, {self.last}]")
        start = a - self.center_offset
        return Word(self.symbols[start : start + b - a + 1])

    def shift(self) -> OmegaWindow:
        """Apply the left shift: index j of the result reads index j + 1 of self."""
        return OmegaWindow(self.center_offset - 1, self.symbols)


def symbolic_distance(omega: OmegaWindow, omega_prime: OmegaWindow, k_max: int) -> float:
    """
    Distance ``2**-k`` with k the smallest |j| <= k_max where the windows differ.

    Indices outside either window are not compared; windows that agree on every
    shared index up to k_max are at distance 0 for this resolution.
    """
    for k in range(k_max + 1):
        for j in (k, -k) if k else (0,):
            if omega.covers(j) and omega_prime.covers(j) and omega.symbol(j) != omega_prime.symbol(j):
                return 2.0**-k
    return 0.0
