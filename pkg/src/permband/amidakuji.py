"""Ladder (ghost-leg) lotteries: validation, evaluation, and synthesis.

A ladder has n vertical lines and a stack of levels read top to bottom;
each level holds rungs, where rung c joins lines c and c+1.  Rungs in one
level may not share a line.  Tracing every line from top to bottom yields
a permutation: person j ends at job ``apply_ladder(l)(j)``.

``synthesize`` builds a ladder for any target permutation using the fewest
possible rungs, which is exactly the inversion count of the target.
"""
from __future__ import annotations

from dataclasses import dataclass

from .perm import Permutation, compose, identity, inversion_count, transposition


@dataclass(frozen=True)
class Ladder:
    n: int
    levels: tuple[tuple[int, ...], ...]  # rung columns per level, ascending

    def rung_count(self) -> int:
        return sum(len(level) for level in self.levels)


@dataclass(frozen=True)
class LadderViolation:
    level: int  # 1-based level index
    column: int
    reason: str


def validate(ladder: Ladder) -> LadderViolation | None:
    """Check rung ranges and the no-touching rule; report the first breach."""
    if ladder.n < 1:
        return LadderViolation(0, 0, f"line count {ladder.n} must be at least 1")
    for li, level in enumerate(ladder.levels, start=1):
        prev = None
        for c in sorted(level):
            if not 1 <= c <= ladder.n - 1:
                return LadderViolation(li, c, f"rung column {c} out of range 1..{ladder.n - 1}")
            if prev is not None and c - prev < 2:
                return LadderViolation(li, c, f"rungs {prev} and {c} share a line")
            prev = c
    return None


def apply_ladder(ladder: Ladder) -> Permutation:
    """Permutation induced by tracing all lines top to bottom."""
    bad = validate(ladder)
    if bad is not None:
        raise ValueError(f"invalid ladder: level {bad.level}, column {bad.column}: {bad.reason}")
    acc = identity(ladder.n)
    for level in ladder.levels:
        for c in sorted(level):
            acc = compose(transposition(c, c + 1).as_permutation(ladder.n), acc)
    return acc


def synthesize(p: Permutation) -> Ladder:
    """Minimal ladder realising p: rung count equals the inversion count.

    Rungs come from bubble-sorting p; non-conflicting consecutive rungs are
    packed greedily into shared levels (first fit) for compact rendering.
    """
    arr = list(p.image)
    n = len(arr)
    rungs: list[int] = []
    swapped = True
    while swapped:
        swapped = False
        for k in range(n - 1):
            if arr[k] > arr[k + 1]:
                arr[k], arr[k + 1] = arr[k + 1], arr[k]
                rungs.append(k + 1)
                swapped = True
    assert len(rungs) == inversion_count(p)
    # pack keeping every rung below earlier rungs that touch a shared line
    level_of: list[int] = []
    for idx, c in enumerate(rungs):
        floor = 0
        for jdx in range(idx):
            if abs(rungs[jdx] - c) < 2:
                floor = max(floor, level_of[jdx])
        level_of.append(floor + 1)
    depth = max(level_of, default=0)
    levels = [[] for _ in range(depth)]
    for c, lv in zip(rungs, level_of):
        levels[lv - 1].append(c)
    return Ladder(n, tuple(tuple(sorted(level)) for level in levels))


def parse_ladder(text: str) -> Ladder:
    """Ladder text: first line ``n=<int>``, then one line of columns per
    level; ``#`` starts a comment; blank lines are skipped."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ValueError("empty ladder text")
    head = lines[0].replace(" ", "")
    if not head.startswith("n="):
        raise ValueError(f"first line must be 'n=<int>', got {lines[0]!r}")
    try:
        n = int(head[2:])
    except ValueError:
        raise ValueError(f"malformed line count {head[2:]!r}") from None
    levels = []
    for line in lines[1:]:
        cols = []
        for tok in line.split():
            try:
                cols.append(int(tok))
            except ValueError:
                raise ValueError(f"malformed rung column {tok!r}") from None
        levels.append(tuple(sorted(cols)))
    return Ladder(n, tuple(levels))


def format_ladder(ladder: Ladder) -> str:
    out = [f"n={ladder.n}"]
    for level in ladder.levels:
        out.append(" ".join(str(c) for c in sorted(level)))
    return "\n".join(out) + "\n"


def render(ladder: Ladder, gap: int = 3) -> str:
    """ASCII picture: '|' for lines, '-' filling rung gaps, one row per level."""
    n = ladder.n
    width = (n - 1) * (gap + 1) + 1
    rows = []
    for level in ladder.levels:
        row = [" "] * width
        for k in range(n):
            row[k * (gap + 1)] = "|"
        for c in level:
            a = (c - 1) * (gap + 1)
            for x in range(a + 1, a + gap + 1):
                row[x] = "-"
        rows.append("".join(row))
    return "\n".join(rows)
