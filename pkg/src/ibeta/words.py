"""Infinite {0,1}-words that are eventually periodic, plus truncated prefixes."""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import lcm
from typing import Iterator, Sequence


def _primitive(block: tuple[int, ...]) -> tuple[int, ...]:
    n = len(block)
    for d in range(1, n + 1):
        if n % d == 0 and block[:d] * (n // d) == block:
            return block[:d]
    return block


@dataclass(frozen=True)
class EventuallyPeriodicWord:
    """``preperiod`` followed by ``period`` repeated forever.

    Construction canonicalises: the period is primitive and the preperiod
    is as short as possible, so equality of words is equality of fields.
    """

    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self):
        pre = tuple(int(c) for c in self.preperiod)
        per = tuple(int(c) for c in self.period)
        if not per:
            raise ValueError("period block must be nonempty")
        if any(c not in (0, 1) for c in pre + per):
            raise ValueError("letters must be 0 or 1")
        per = _primitive(per)
        while pre and pre[-1] == per[-1]:
            pre = pre[:-1]
            per = per[-1:] + per[:-1]
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    @classmethod
    def parse(cls, text: str) -> "EventuallyPeriodicWord":
        """Read ``"01(10)"``: preperiod, then the period in parentheses."""
        m = re.fullmatch(r"\s*([01]*)\s*\(\s*([01]+)\s*\)\s*", text)
        if m is None:
            raise ValueError(f"not an eventually periodic word: {text!r}")
        return cls(tuple(map(int, m.group(1))), tuple(map(int, m.group(2))))

    def __str__(self) -> str:
        return "".join(map(str, self.preperiod)) + "(" + "".join(map(str, self.period)) + ")"

    @property
    def is_periodic(self) -> bool:
        return not self.preperiod

    def __getitem__(self, i: int) -> int:
        k = len(self.preperiod)
        if i < k:
            return self.preperiod[i]
        return self.period[(i - k) % len(self.period)]

    def prefix(self, n: int) -> tuple[int, ...]:
        return tuple(self[i] for i in range(n))

    def __iter__(self) -> Iterator[int]:
        i = 0
        while True:
            yield self[i]
            i += 1

    def shift(self, n: int = 1) -> "EventuallyPeriodicWord":
        k = len(self.preperiod)
        if n <= k:
            return EventuallyPeriodicWord(self.preperiod[n:], self.period)
        r = (n - k) % len(self.period)
        return EventuallyPeriodicWord((), self.period[r:] + self.period[:r])

    def decisive_length(self, other: "EventuallyPeriodicWord") -> int:
        """Length after which agreement implies equality of the two words."""
        return max(len(self.preperiod), len(other.preperiod)) + lcm(
            len(self.period), len(other.period)
        )

    def compare(self, other: "EventuallyPeriodicWord") -> int:
        """Lexicographic order: -1, 0 or 1."""
        return self.compare_from(0, other)

    def compare_from(self, start: int, other: "EventuallyPeriodicWord") -> int:
        """Compare ``shift(start)`` with ``other`` without building the shifted word."""
        pre = max(len(self.preperiod) - start, 0)
        n = max(pre, len(other.preperiod)) + lcm(len(self.period), len(other.period))
        for i in range(n):
            a, b = self[start + i], other[i]
            if a != b:
                return -1 if a < b else 1
        return 0

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def positions(self) -> int:
        """Number of distinct suffixes ``shift(i)``."""
        return len(self.preperiod) + len(self.period)

    def normalise_position(self, i: int) -> int:
        k = len(self.preperiod)
        if i < k + len(self.period):
            return i
        return k + (i - k) % len(self.period)


@dataclass(frozen=True)
class Truncated:
    """A word known only through a finite prefix (orbit cap exhausted)."""

    prefix: tuple[int, ...]

    def __str__(self) -> str:
        return "".join(map(str, self.prefix)) + "..."


Word = EventuallyPeriodicWord | Truncated


def word_from_digits(digits: Sequence[int], k: int, n: int) -> EventuallyPeriodicWord:
    """Word of a digit list whose tail from index ``k`` repeats with period ``n``."""
    return EventuallyPeriodicWord(tuple(digits[:k]), tuple(digits[k : k + n]))


def compare_prefix(word: Sequence[int], bound) -> int:
    """Compare a finite word with the same-length prefix of an infinite word.

    Returns -1 or 1 when the order is decided inside the finite word and 0
    when the finite word is a prefix of ``bound``.
    """
    for i, a in enumerate(word):
        b = bound[i]
        if a != b:
            return -1 if a < b else 1
    return 0
