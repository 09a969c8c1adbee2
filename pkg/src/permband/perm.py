"""Value types and primitive algebra for permutations of {1, ..., n}.

Conventions used throughout the package:

- One-line notation is 1-based: ``Permutation(image=(3, 2, 4, 5, 1))`` is the
  map sending 1 to 3, 2 to 2, and so on.  ``p(k)`` returns ``image[k-1]``.
- ``compose(p, q)`` applies the RIGHT factor first: the result maps ``x`` to
  ``p(q(x))``.  A factor list ``[t1, ..., tk]`` therefore multiplies out to
  ``t1 * t2 * ... * tk`` with ``tk`` acting first.
- Cycle normal form: each cycle is rotated to start at its smallest element
  and cycles are sorted by smallest element; fixed points appear as 1-cycles.

All types are immutable values; they can be shared freely across threads.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True)
class Permutation:
    """A bijection on {1..n} in one-line notation."""

    image: tuple[int, ...]

    def __post_init__(self):
        n = len(self.image)
        if n < 1:
            raise ValueError("permutation degree must be at least 1")
        seen = [False] * n
        for v in self.image:
            if not isinstance(v, int) or not 1 <= v <= n:
                raise ValueError(f"value {v!r} out of range 1..{n}")
            if seen[v - 1]:
                raise ValueError(f"duplicate value {v} in one-line notation")
            seen[v - 1] = True

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, k: int) -> int:
        if not 1 <= k <= self.n:
            raise ValueError(f"point {k} out of range 1..{self.n}")
        return self.image[k - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __str__(self) -> str:
        return " ".join(str(v) for v in self.image)

    def is_identity(self) -> bool:
        return all(v == k for k, v in enumerate(self.image, start=1))

    def inverse(self) -> "Permutation":
        return invert(self)


def identity(n: int) -> Permutation:
    """The identity permutation of degree n."""
    return Permutation(tuple(range(1, n + 1)))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Product p*q mapping x to p(q(x)); q acts first."""
    if p.n != q.n:
        raise ValueError(f"degree mismatch: {p.n} != {q.n}")
    pi = p.image
    return Permutation(tuple(pi[v - 1] for v in q.image))


def invert(p: Permutation) -> Permutation:
    """The inverse permutation."""
    img = [0] * p.n
    for k, v in enumerate(p.image, start=1):
        img[v - 1] = k
    return Permutation(tuple(img))


@dataclass(frozen=True, order=True)
class Transposition:
    """The transposition (i, j) with i < j; its width is j - i."""

    i: int
    j: int

    def __post_init__(self):
        if not (isinstance(self.i, int) and isinstance(self.j, int)):
            raise ValueError("transposition endpoints must be integers")
        if not 1 <= self.i < self.j:
            raise ValueError(f"need 1 <= i < j, got ({self.i}, {self.j})")

    @property
    def width(self) -> int:
        return self.j - self.i

    def __str__(self) -> str:
        return f"({self.i},{self.j})"

    def as_permutation(self, n: int) -> Permutation:
        if self.j > n:
            raise ValueError(f"transposition {self} does not fit in degree {n}")
        img = list(range(1, n + 1))
        img[self.i - 1], img[self.j - 1] = self.j, self.i
        return Permutation(tuple(img))


def transposition(a: int, b: int) -> Transposition:
    """Transposition of the two distinct points a and b, order-normalised."""
    if a == b:
        raise ValueError("transposition endpoints must differ")
    return Transposition(min(a, b), max(a, b))


@dataclass(frozen=True)
class CycleDecomposition:
    """Disjoint cycles of a permutation, fixed points included as 1-cycles.

    Cycles are in normal form: each starts at its smallest element and the
    list is sorted by those smallest elements.
    """

    n: int
    cycles: tuple[tuple[int, ...], ...]

    @property
    def r(self) -> int:
        """Number of cycles, 1-cycles included."""
        return len(self.cycles)

    def to_permutation(self) -> Permutation:
        img = list(range(1, self.n + 1))
        for cyc in self.cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a - 1] = b
        return Permutation(tuple(img))

    def __str__(self) -> str:
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles)


def normalize_cycle(cycle: Sequence[int]) -> tuple[int, ...]:
    """Rotate a cycle so its smallest element comes first."""
    k = min(range(len(cycle)), key=cycle.__getitem__)
    return tuple(cycle[k:]) + tuple(cycle[:k])


def cycle_decomposition(p: Permutation) -> CycleDecomposition:
    """Disjoint cycle decomposition of p in normal form."""
    n = p.n
    seen = [False] * n
    cycles = []
    for start in range(1, n + 1):
        if seen[start - 1]:
            continue
        cyc = []
        x = start
        while not seen[x - 1]:
            seen[x - 1] = True
            cyc.append(x)
            x = p(x)
        cycles.append(tuple(cyc))
    return CycleDecomposition(n, tuple(cycles))


def from_cycles(n: int, cycles: Iterable[Sequence[int]]) -> Permutation:
    """Permutation of degree n with the given disjoint cycles.

    Points not mentioned are fixed.  Raises on repeated or out-of-range
    entries.
    """
    img = list(range(1, n + 1))
    used = set()
    for cyc in cycles:
        for v in cyc:
            if not 1 <= v <= n:
                raise ValueError(f"cycle entry {v} out of range 1..{n}")
            if v in used:
                raise ValueError(f"cycles are not disjoint at {v}")
            used.add(v)
        for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
            img[a - 1] = b
    return Permutation(tuple(img))


class _Fenwick:
    """Prefix-sum tree over 1..n used for inversion counting."""

    def __init__(self, n: int):
        self.n = n
        self.tree = [0] * (n + 1)

    def add(self, i: int, delta: int = 1) -> None:
        while i <= self.n:
            self.tree[i] += delta
            i += i & -i

    def prefix(self, i: int) -> int:
        s = 0
        while i > 0:
            s += self.tree[i]
            i -= i & -i
        return s


def inversion_count(p: Permutation) -> int:
    """Number of inversions of p, computed in O(n log n).

    An inversion is a pair of positions a < b with p(a) > p(b).
    """
    fw = _Fenwick(p.n)
    count = 0
    for pos, v in enumerate(p.image):
        # values already placed that are greater than v
        count += pos - fw.prefix(v)
        fw.add(v)
    return count


def parity(p: Permutation) -> int:
    """0 for even permutations, 1 for odd.

    Computed as (n - r) mod 2 from the cycle decomposition, which agrees
    with the inversion count mod 2.
    """
    return (p.n - cycle_decomposition(p).r) % 2


def all_permutations(n: int) -> Iterator[Permutation]:
    """All permutations of degree n in lexicographic (= rank) order."""
    for img in itertools.permutations(range(1, n + 1)):
        yield Permutation(img)
