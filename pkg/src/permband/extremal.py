"""Closed-form diameters, recursive bounds, and the farthest-set classification.

For width bound m on degree n, the diameter of the transposition band graph
is known exactly in three regimes:

- m = 1:            n(n-1)/2 (the inversion count of the reversal),
- m = n-1:          n - 1 (attained exactly at the n-cycles),
- 5 <= n <= 2m+1:   n + floor((n-m)/2) - 1.

In the third regime the permutations attaining the diameter are classified
by shape.  With d = floor((n-m)/2), lows = {1..d} (or {1..d+1}) and highs =
{n-d+1..n} (or {n-d..n}), every extremal permutation is d-1 or d low-high
2-cycles plus one distinguished cycle plus one long cycle through the
middle.  The five shapes are named by their distinguished cycle below.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from math import ceil
from typing import Iterator, Mapping

from . import cayley
from .perm import Permutation, cycle_decomposition, from_cycles

# Exact diameters for 2 <= n <= 10, every valid m.  Closed-form cells follow
# the formulas above; the rest were computed by the exhaustive search engine
# and are re-verified against it by the acceptance suite.
EXACT_DELTA: dict[tuple[int, int], int] = {
    (2, 1): 1,
    (3, 1): 3, (3, 2): 2,
    (4, 1): 6, (4, 2): 4, (4, 3): 3,
    (5, 1): 10, (5, 2): 5, (5, 3): 5, (5, 4): 4,
    (6, 1): 15, (6, 2): 7, (6, 3): 6, (6, 4): 6, (6, 5): 5,
    (7, 1): 21, (7, 2): 10, (7, 3): 8, (7, 4): 7, (7, 5): 7, (7, 6): 6,
    (8, 1): 28, (8, 2): 14, (8, 3): 10, (8, 4): 9, (8, 5): 8, (8, 6): 8,
    (8, 7): 7,
    (9, 1): 36, (9, 2): 16, (9, 3): 11, (9, 4): 10, (9, 5): 10, (9, 6): 9,
    (9, 7): 9, (9, 8): 8,
    (10, 1): 45, (10, 2): 19, (10, 3): 14, (10, 4): 12, (10, 5): 11,
    (10, 6): 11, (10, 7): 10, (10, 8): 10, (10, 9): 9,
}


def _check_nm(n: int, m: int) -> None:
    if n < 2 or not 1 <= m <= n - 1:
        raise ValueError(f"need n >= 2 and 1 <= m <= n-1, got n={n}, m={m}")


def delta_closed_form(n: int, m: int) -> int | None:
    """Exact diameter when a closed form applies, else None."""
    _check_nm(n, m)
    if m == 1:
        return n * (n - 1) // 2
    if m == n - 1:
        return n - 1
    if 5 <= n <= 2 * m + 1:
        return n + (n - m) // 2 - 1
    return None


@dataclass(frozen=True)
class DeltaBounds:
    n: int
    m: int
    lower: int
    upper: int
    exact: bool
    lower_method: str
    upper_method: str


def delta_bounds(
    n: int, m: int, known: Mapping[tuple[int, int], int] | None = None
) -> DeltaBounds:
    """Best available bounds from closed forms, cached exact values, and the
    peel recursions (move one end: ceil((n-1)/m) extra; move both ends:
    2*ceil((n-1)/m) - 1 extra)."""
    _check_nm(n, m)
    table = dict(EXACT_DELTA)
    if known:
        table.update(known)

    memo: dict[int, tuple[int, str]] = {}

    def up(k: int) -> tuple[int, str]:
        if k in memo:
            return memo[k]
        cf = delta_closed_form(k, m) if 1 <= m <= k - 1 else None
        if cf is not None:
            memo[k] = (cf, "closed_form")
            return memo[k]
        if (k, m) in table:
            memo[k] = (table[(k, m)], "exact_table")
            return memo[k]
        best: tuple[int, str] | None = None
        if k >= 5 and m <= k - 4:
            sub, _ = up(k - 1)
            cand = ceil((k - 1) / m) + sub
            best = (cand, f"move_last:{k}<-{k - 1}")
        if k >= 5 and 2 * m <= k - 1:
            sub, _ = up(k - 2)
            cand = 2 * ceil((k - 1) / m) - 1 + sub
            if best is None or cand < best[0]:
                best = (cand, f"move_ends:{k}<-{k - 2}")
        if best is None:
            raise AssertionError(f"no bound route for n={k}, m={m}")
        memo[k] = best
        return best

    upper, upper_method = up(n)
    cf = delta_closed_form(n, m)
    if cf is not None:
        lower, lower_method = cf, "closed_form"
    elif (n, m) in table:
        lower, lower_method = table[(n, m)], "exact_table"
    else:
        lower, lower_method = n - 1, "cycle_count_floor"
    return DeltaBounds(
        n=n,
        m=m,
        lower=lower,
        upper=upper,
        exact=lower == upper,
        lower_method=lower_method,
        upper_method=upper_method,
    )


# ---------------------------------------------------------------------------
# classification of the farthest set for 5 <= n <= 2m+1


class ExtremalTag(Enum):
    PAIR_MATCHING = "pair_matching"  # d low-high 2-cycles + middle cycle
    OFFSET_PAIR_MATCHING = "offset_pair_matching"  # a boundary point rides the long cycle
    LOW_TRIPLE = "low_triple"  # 3-cycle holding two lows and one high
    HIGH_TRIPLE = "high_triple"  # 3-cycle holding one low and two highs
    ALTERNATING_QUAD = "alternating_quad"  # low-high-low-high 4-cycle
    FULL_CYCLE = "full_cycle"  # m = n-1: any n-cycle
    REVERSAL = "reversal"  # m = 1: the order-reversing permutation
    NONE = "none"


@dataclass(frozen=True)
class ExtremalCase:
    tag: ExtremalTag
    d: int
    pairs: tuple[tuple[int, int], ...] = ()
    special: tuple[int, ...] | None = None
    core: tuple[int, ...] | None = None


def _in_classified_regime(n: int, m: int) -> bool:
    return 5 <= n <= 2 * m + 1 and m <= n - 2


def _require_regime(n: int, m: int) -> None:
    _check_nm(n, m)
    if m == 1 or m == n - 1:
        return
    if not _in_classified_regime(n, m):
        raise ValueError(
            f"no extremal classification for n={n}, m={m}: "
            "need m=1, m=n-1, or 5 <= n <= 2m+1 with m <= n-2"
        )


def _match_pairs(
    two_cycles: list[tuple[int, ...]], lows: set[int], highs: set[int]
) -> tuple[tuple[int, int], ...] | None:
    """Check the 2-cycles form a partial low-high matching; return it sorted."""
    pairs = []
    used_lo: set[int] = set()
    used_hi: set[int] = set()
    for a, b in two_cycles:
        lo, hi = min(a, b), max(a, b)
        if lo not in lows or hi not in highs or lo in used_lo or hi in used_hi:
            return None
        used_lo.add(lo)
        used_hi.add(hi)
        pairs.append((lo, hi))
    return tuple(sorted(pairs))


def is_extremal(p: Permutation, m: int) -> ExtremalCase:
    """Match p against the extremal shapes for (n, m); NONE if no shape fits."""
    n = p.n
    _require_regime(n, m)
    dec = cycle_decomposition(p)
    if m == 1:
        if all(p(k) == n + 1 - k for k in range(1, n + 1)):
            pairs = tuple((k, n + 1 - k) for k in range(1, n // 2 + 1))
            return ExtremalCase(ExtremalTag.REVERSAL, 0, pairs=pairs)
        return ExtremalCase(ExtremalTag.NONE, 0)
    if m == n - 1:
        if dec.r == 1:
            return ExtremalCase(ExtremalTag.FULL_CYCLE, 0, core=dec.cycles[0])
        return ExtremalCase(ExtremalTag.NONE, 0)

    d = (n - m) // 2
    cycles = list(dec.cycles)
    if len(cycles) != d + 1:
        return ExtremalCase(ExtremalTag.NONE, d)
    lows = set(range(1, d + 1))
    lows_ext = set(range(1, d + 2))
    highs = set(range(n - d + 1, n + 1))
    highs_ext = set(range(n - d, n + 1))
    core_mid = set(range(d + 2, n - d))  # between the extended bands

    if (n - m) % 2 == 0:
        mid = set(range(d + 1, n - d + 1))
        twos = [c for c in cycles if len(c) == 2 and min(c) in lows and max(c) in highs]
        others = [c for c in cycles if c not in twos]
        if len(twos) == d and len(others) == 1 and set(others[0]) == mid:
            pairs = _match_pairs(twos, lows, highs)
            if pairs is not None:
                return ExtremalCase(
                    ExtremalTag.PAIR_MATCHING, d, pairs=pairs, core=others[0]
                )
        return ExtremalCase(ExtremalTag.NONE, d)

    # odd n - m: four shapes
    by_len: dict[int, list[tuple[int, ...]]] = {}
    for c in cycles:
        by_len.setdefault(len(c), []).append(c)

    # offset pair matching: d 2-cycles + one (m+1)-cycle
    if len(by_len.get(2, [])) >= d:
        for big in cycles:
            if len(big) != n - 2 * d:
                continue
            twos = [c for c in cycles if c is not big]
            if any(len(c) != 2 for c in twos):
                continue
            support = set(big)
            if not core_mid <= support:
                continue
            extra = support - core_mid
            if len(extra) != 2:
                continue
            ls = extra & lows_ext
            hs = extra & highs_ext
            if len(ls) != 1 or len(hs) != 1:
                continue
            l_star, h_star = next(iter(ls)), next(iter(hs))
            if l_star != d + 1 and h_star != n - d:
                continue
            pairs = _match_pairs(twos, lows_ext - {l_star}, highs_ext - {h_star})
            if pairs is not None:
                return ExtremalCase(
                    ExtremalTag.OFFSET_PAIR_MATCHING, d, pairs=pairs, special=None, core=big
                )

    # low triple: d-1 2-cycles + (2 lows, 1 high) 3-cycle + cycle on {d+2..n-d}
    res = _match_triple_or_quad(cycles, n, d, lows_ext, highs, core_mid | {n - d}, kind="low")
    if res is not None:
        return res
    # high triple
    res = _match_triple_or_quad(cycles, n, d, lows, highs_ext, core_mid | {d + 1}, kind="high")
    if res is not None:
        return res
    # alternating quad
    res = _match_triple_or_quad(cycles, n, d, lows_ext, highs_ext, core_mid, kind="quad")
    if res is not None:
        return res
    return ExtremalCase(ExtremalTag.NONE, d)


def _match_triple_or_quad(cycles, n, d, lo_band, hi_band, core_set, kind):
    """Shared matcher for the 3-cycle and 4-cycle odd shapes."""
    speclen = 4 if kind == "quad" else 3
    for special in cycles:
        if len(special) != speclen:
            continue
        core = [c for c in cycles if c is not special and set(c) == core_set]
        if len(core) != 1:
            continue
        twos = [c for c in cycles if c is not special and c is not core[0]]
        if any(len(c) != 2 for c in twos) or len(twos) != d - 1:
            continue
        sp_lo = [x for x in special if x in lo_band]
        sp_hi = [x for x in special if x in hi_band]
        if kind == "low" and (len(sp_lo), len(sp_hi)) != (2, 1):
            continue
        if kind == "high" and (len(sp_lo), len(sp_hi)) != (1, 2):
            continue
        if kind == "quad":
            if (len(sp_lo), len(sp_hi)) != (2, 2):
                continue
            # must alternate low, high, low, high around the cycle
            band = [x in lo_band for x in special]
            if band[0] == band[1] or band[1] == band[2] or band[2] == band[3]:
                continue
            # a boundary point must ride the quad
            if d + 1 not in special and n - d not in special:
                continue
        pairs = _match_pairs(twos, set(lo_band) - set(sp_lo), set(hi_band) - set(sp_hi))
        if pairs is None:
            continue
        # every band point must be used exactly once overall
        if set(sp_lo) | {a for a, _ in pairs} != set(lo_band):
            continue
        if set(sp_hi) | {b for _, b in pairs} != set(hi_band):
            continue
        tag = {
            "low": ExtremalTag.LOW_TRIPLE,
            "high": ExtremalTag.HIGH_TRIPLE,
            "quad": ExtremalTag.ALTERNATING_QUAD,
        }[kind]
        return ExtremalCase(tag, d, pairs=pairs, special=special, core=core[0])
    return None


def _cycle_arrangements(points: frozenset[int] | set[int]) -> Iterator[tuple[int, ...]]:
    """All distinct cycles on a point set, smallest point first."""
    pts = sorted(points)
    if len(pts) == 1:
        yield (pts[0],)
        return
    head, rest = pts[0], pts[1:]
    for tail in itertools.permutations(rest):
        yield (head,) + tail


def enumerate_extremal(n: int, m: int) -> Iterator[Permutation]:
    """All permutations attaining the diameter, sorted by one-line notation.

    Covers m = 1 (the reversal), m = n-1 (all n-cycles) and the classified
    regime 5 <= n <= 2m+1, m <= n-2.
    """
    _require_regime(n, m)
    if m == 1:
        yield Permutation(tuple(range(n, 0, -1)))
        return
    if m == n - 1:
        perms = [from_cycles(n, [c]) for c in _cycle_arrangements(set(range(1, n + 1)))]
        for p in sorted(perms, key=lambda q: q.image):
            yield p
        return

    d = (n - m) // 2
    lows = list(range(1, d + 1))
    lows_ext = list(range(1, d + 2))
    highs = list(range(n - d + 1, n + 1))
    highs_ext = list(range(n - d, n + 1))
    core_mid = set(range(d + 2, n - d))
    out: set[tuple[int, ...]] = set()

    def emit(cycles: list[tuple[int, ...]]) -> None:
        out.add(from_cycles(n, cycles).image)

    if (n - m) % 2 == 0:
        mid = set(range(d + 1, n - d + 1))
        for matching in itertools.permutations(highs):
            twos = [(lo, hi) for lo, hi in zip(lows, matching)]
            for core in _cycle_arrangements(mid):
                emit([*twos, core])
    else:
        # offset pair matching
        for l_star in lows_ext:
            for h_star in highs_ext:
                if l_star != d + 1 and h_star != n - d:
                    continue
                rem_lo = [x for x in lows_ext if x != l_star]
                rem_hi = [x for x in highs_ext if x != h_star]
                support = core_mid | {l_star, h_star}
                for matching in itertools.permutations(rem_hi):
                    twos = [(lo, hi) for lo, hi in zip(rem_lo, matching)]
                    for core in _cycle_arrangements(support):
                        emit([*twos, core])
        # low triple
        for pair_lo in itertools.combinations(lows_ext, 2):
            for h in highs:
                a, b = pair_lo
                for tri in ((a, h, b), (a, b, h)):
                    rem_lo = [x for x in lows_ext if x not in pair_lo]
                    rem_hi = [x for x in highs if x != h]
                    for matching in itertools.permutations(rem_hi):
                        twos = [(lo, hi) for lo, hi in zip(rem_lo, matching)]
                        for core in _cycle_arrangements(core_mid | {n - d}):
                            emit([*twos, tri, core])
        # high triple
        for pair_hi in itertools.combinations(highs_ext, 2):
            for lo in lows:
                g, h = pair_hi
                for tri in ((lo, g, h), (lo, h, g)):
                    rem_lo = [x for x in lows if x != lo]
                    rem_hi = [x for x in highs_ext if x not in pair_hi]
                    for matching in itertools.permutations(rem_hi):
                        twos = [(a, b) for a, b in zip(rem_lo, matching)]
                        for core in _cycle_arrangements(core_mid | {d + 1}):
                            emit([*twos, tri, core])
        # alternating quad
        for pair_lo in itertools.combinations(lows_ext, 2):
            for pair_hi in itertools.combinations(highs_ext, 2):
                if d + 1 not in pair_lo and n - d not in pair_hi:
                    continue
                a, b = pair_lo
                g, h = pair_hi
                for quad in ((a, g, b, h), (a, h, b, g)):
                    rem_lo = [x for x in lows_ext if x not in pair_lo]
                    rem_hi = [x for x in highs_ext if x not in pair_hi]
                    for matching in itertools.permutations(rem_hi):
                        twos = [(x, y) for x, y in zip(rem_lo, matching)]
                        for core in _cycle_arrangements(core_mid):
                            emit([*twos, quad, core])

    for img in sorted(out):
        yield Permutation(img)


@dataclass(frozen=True)
class ClassificationReport:
    """Comparison of the shape classification against the exhaustive search."""

    n: int
    m: int
    delta: int
    matches: bool
    missing: tuple[Permutation, ...]  # farthest by search, not enumerated
    extra: tuple[Permutation, ...]  # enumerated, not farthest by search


def classification_report(
    n: int, m: int, *, memory_cap: int = cayley.DEFAULT_MEMORY_CAP
) -> ClassificationReport:
    report = cayley.bfs_diameter(n, m, collect_farthest=True, memory_cap=memory_cap)
    searched = {p.image for p in report.farthest}
    claimed = {p.image for p in enumerate_extremal(n, m)}
    missing = tuple(Permutation(i) for i in sorted(searched - claimed))
    extra = tuple(Permutation(i) for i in sorted(claimed - searched))
    return ClassificationReport(
        n=n,
        m=m,
        delta=report.delta,
        matches=not missing and not extra,
        missing=missing,
        extra=extra,
    )
