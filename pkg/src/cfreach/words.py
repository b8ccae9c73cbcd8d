"""Words over the alphabet {x_0, ..., x_m} and sparse formal power series.

Letter 0 is the drift letter x_0; letters 1..m index the input channels.
"""
from __future__ import annotations

import itertools
import re
from typing import Iterable, Iterator, Mapping

__all__ = [
    "Word",
    "EMPTY",
    "FormalPowerSeries",
    "word_length",
    "count_letter",
    "enumerate_words",
    "length_lex_key",
]

_TOKEN = re.compile(r"x(\d+)")


class Word(tuple):
    """Immutable sequence of letter indices.

    ``Word((1, 0, 1))`` is x_1 x_0 x_1. Serializes as ``"x1x0x1"``; the
    empty word serializes as ``"e"``.
    """

    __slots__ = ()

    def __new__(cls, letters: Iterable[int] = ()):
        letters = tuple(int(i) for i in letters)
        if any(i < 0 for i in letters):
            raise ValueError(f"negative letter index in {letters}")
        return super().__new__(cls, letters)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    def __str__(self) -> str:
        if not self:
            return "e"
        return "".join(f"x{i}" for i in self)

    def __add__(self, other) -> "Word":
        return Word(tuple(self) + tuple(other))

    @classmethod
    def parse(cls, text: str) -> "Word":
        text = text.strip()
        if text in ("e", ""):
            return EMPTY
        letters = _TOKEN.findall(text)
        if "".join(f"x{i}" for i in letters) != text:
            raise ValueError(f"cannot parse word {text!r}")
        return cls(int(i) for i in letters)


EMPTY = Word()


def word_length(w: Word) -> int:
    return len(w)


def count_letter(w: Word, i: int) -> int:
    """Number of occurrences of letter ``i`` in ``w``."""
    return sum(1 for j in w if j == i)


def length_lex_key(w: Iterable[int]) -> tuple:
    w = tuple(w)
    return (len(w), w)


def enumerate_words(m: int, N: int) -> list[Word]:
    """All words of length <= N over {x_0..x_m}, in length-then-lexicographic order."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    if m < 0:
        raise ValueError("m must be nonnegative")
    out = []
    for k in range(N + 1):
        out.extend(Word(p) for p in itertools.product(range(m + 1), repeat=k))
    return out


class FormalPowerSeries:
    """Scalar formal power series truncated at ``max_order``.

    Only nonzero coefficients are stored; every other word reads as 0.
    """

    __slots__ = ("alphabet_size", "max_order", "_coeffs")

    def __init__(self, alphabet_size: int, max_order: int,
                 coeffs: Mapping[Iterable[int], float] | None = None):
        if alphabet_size < 0 or max_order < 0:
            raise ValueError("alphabet_size and max_order must be nonnegative")
        self.alphabet_size = alphabet_size
        self.max_order = max_order
        store: dict[Word, float] = {}
        for w, v in (coeffs or {}).items():
            w = w if isinstance(w, Word) else Word(w)
            if len(w) > max_order:
                raise ValueError(f"word {w} longer than max_order={max_order}")
            if any(i > alphabet_size for i in w):
                raise ValueError(f"word {w} uses a letter outside x0..x{alphabet_size}")
            v = float(v)
            if v != 0.0:
                store[w] = v
        self._coeffs = dict(sorted(store.items(), key=lambda kv: length_lex_key(kv[0])))

    def __getitem__(self, w) -> float:
        w = w if isinstance(w, Word) else Word(w)
        return self._coeffs.get(w, 0.0)

    def __contains__(self, w) -> bool:
        return Word(w) in self._coeffs

    def __len__(self) -> int:
        return len(self._coeffs)

    def __iter__(self) -> Iterator[Word]:
        return iter(self._coeffs)

    def items(self):
        """(word, coefficient) pairs in length-lex order."""
        return self._coeffs.items()

    def support(self) -> list[Word]:
        return list(self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormalPowerSeries):
            return NotImplemented
        return (self.alphabet_size == other.alphabet_size
                and self.max_order == other.max_order
                and self._coeffs == other._coeffs)

    def __add__(self, other: "FormalPowerSeries") -> "FormalPowerSeries":
        if self.alphabet_size != other.alphabet_size:
            raise ValueError("alphabet size mismatch")
        acc = dict(self._coeffs)
        for w, v in other.items():
            acc[w] = acc.get(w, 0.0) + v
        return FormalPowerSeries(self.alphabet_size, max(self.max_order, other.max_order), acc)

    def __mul__(self, scalar: float) -> "FormalPowerSeries":
        return FormalPowerSeries(self.alphabet_size, self.max_order,
                                 {w: scalar * v for w, v in self.items()})

    __rmul__ = __mul__

    def truncate(self, N: int) -> "FormalPowerSeries":
        return FormalPowerSeries(self.alphabet_size, min(N, self.max_order),
                                 {w: v for w, v in self.items() if len(w) <= N})

    def __repr__(self) -> str:
        body = ", ".join(f"{w}: {v:g}" for w, v in list(self.items())[:6])
        more = ", ..." if len(self) > 6 else ""
        return f"FormalPowerSeries(m={self.alphabet_size}, N={self.max_order}, {{{body}{more}}})"
