"""Rank/unrank codec and text round-trips for permutations.

The codec is the factorial number system over lexicographic order: the rank
of a permutation is its index among all permutations of the same degree
sorted by one-line notation.  The identity always has rank 0 and the
reversal has rank n! - 1.  The scheme is stamped into reports as
``lehmer-lex/1`` so results can name the encoding they used.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import factorial

from .perm import Permutation, cycle_decomposition, from_cycles

CODEC_VERSION = "lehmer-lex/1"


@dataclass(frozen=True)
class RankCodec:
    """Bijection between permutations of degree n and {0, ..., n!-1}."""

    n: int
    scheme: str = field(default=CODEC_VERSION)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("degree must be at least 1")
        if self.scheme != CODEC_VERSION:
            raise ValueError(f"unknown codec scheme {self.scheme!r}")

    @property
    def size(self) -> int:
        return factorial(self.n)

    def rank(self, p: Permutation) -> int:
        if p.n != self.n:
            raise ValueError(f"degree mismatch: permutation has {p.n}, codec {self.n}")
        n = self.n
        r = 0
        seen = 0
        for k, v in enumerate(p.image):
            # values smaller than v already consumed, via popcount of a mask
            digit = v - 1 - (seen & ((1 << (v - 1)) - 1)).bit_count()
            seen |= 1 << (v - 1)
            if k < n - 1:
                r = (r + digit) * (n - 1 - k)
        return r

    def unrank(self, k: int) -> Permutation:
        if not 0 <= k < self.size:
            raise ValueError(f"rank {k} out of range 0..{self.size - 1}")
        n = self.n
        avail = list(range(1, n + 1))
        img = []
        rem = k
        for pos in range(n):
            f = factorial(n - 1 - pos)
            digit, rem = divmod(rem, f)
            img.append(avail.pop(digit))
        return Permutation(tuple(img))


_TOKEN = re.compile(r"[,\s]+")


def _parse_int(tok: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ValueError(f"malformed token {tok!r}") from None


def parse_one_line(text: str) -> Permutation:
    """Parse one-line notation like ``"3 2 4 5 1"`` (commas also allowed)."""
    toks = [t for t in _TOKEN.split(text.strip()) if t]
    if not toks:
        raise ValueError("empty permutation text")
    values = [_parse_int(t) for t in toks]
    n = len(values)
    seen = set()
    for v in values:
        if not 1 <= v <= n:
            raise ValueError(f"value {v} out of range 1..{n}")
        if v in seen:
            raise ValueError(f"duplicate value {v}")
        seen.add(v)
    return Permutation(tuple(values))


def parse_cycles(text: str, n: int | None = None) -> Permutation:
    """Parse cycle notation like ``"(1 7)(2 3 4 5 6)"``.

    Unmentioned points are fixed.  When n is omitted it is taken to be the
    largest point mentioned.
    """
    s = text.strip()
    if not s.startswith("("):
        raise ValueError(f"cycle notation must start with '(', got {s[:10]!r}")
    cycles: list[list[int]] = []
    pos = 0
    while pos < len(s):
        if s[pos].isspace():
            pos += 1
            continue
        if s[pos] != "(":
            raise ValueError(f"expected '(' at position {pos}, got {s[pos]!r}")
        end = s.find(")", pos)
        if end == -1:
            raise ValueError("unclosed cycle: missing ')'")
        body = s[pos + 1 : end]
        toks = [t for t in _TOKEN.split(body.strip()) if t]
        if not toks:
            raise ValueError("empty cycle '()'")
        cycles.append([_parse_int(t) for t in toks])
        pos = end + 1
    points = [v for cyc in cycles for v in cyc]
    if n is None:
        n = max(points)
    if len(set(points)) != len(points):
        dup = next(v for v in points if points.count(v) > 1)
        raise ValueError(f"duplicate point {dup} across cycles")
    return from_cycles(n, cycles)


def parse_permutation(text: str, n: int | None = None) -> Permutation:
    """Parse either notation, auto-detected by a leading ``(``."""
    if text.strip().startswith("("):
        return parse_cycles(text, n)
    return parse_one_line(text)


def format_one_line(p: Permutation) -> str:
    return " ".join(str(v) for v in p.image)


def format_cycles(p: Permutation) -> str:
    """Cycle notation in normal form, fixed points included as 1-cycles."""
    return str(cycle_decomposition(p))
