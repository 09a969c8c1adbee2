"""Constructive factorizations into transpositions of bounded width.

Every routine here returns a :class:`Factorization` whose factors multiply
(rightmost factor acting first) back to the target permutation.  The
methods:

- ``adjacent``      bubble sort by adjacent swaps; length = inversion count.
- ``unrestricted``  width bound n-1 via cycle splitting; length = n - r.
- ``hub``           a single spread cycle routed through the hub point m+1.
- ``pivot``         a single clustered cycle fanned out from a pivot term.
- ``pair``          two spread cycles factored jointly in p+q steps.
- ``banded``        whole permutation for n <= 2m+1: classify cycles, pair
                    spread ones greedily, assemble hub/pivot/pair blocks.
- ``move_last``     peel the point n into place with jumps of m, recurse.
- ``move_ends``     restore both 1 and n along a shared grid, recurse.
- ``bfs``           exact shortest factorization read off a full search.

A cycle is *spread* (for a width bound m) when every term has a partner
term more than m away; otherwise some pivot term is within m of all others.
Spread cycles cost one extra transposition each unless they can be paired.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from math import ceil
from typing import Sequence

from . import cayley
from .codec import RankCodec
from .perm import (
    CycleDecomposition,
    Permutation,
    Transposition,
    compose,
    cycle_decomposition,
    from_cycles,
    identity,
    inversion_count,
    normalize_cycle,
    parity,
    transposition,
)


@dataclass(frozen=True, eq=False)
class Factorization:
    """An ordered transposition product equal to ``target``.

    ``factors[0]`` is applied last: target = factors[0] * ... * factors[-1].
    ``claimed_bound`` is the a-priori length bound the construction promises.
    ``details`` carries method-specific counters (e.g. spread/paired cycle
    counts for the banded method).
    """

    target: Permutation
    m: int
    factors: tuple[Transposition, ...]
    method: str
    claimed_bound: int | None = None
    details: dict = field(default_factory=dict)

    @property
    def length(self) -> int:
        return len(self.factors)

    def product(self) -> Permutation:
        acc = identity(self.target.n)
        for t in reversed(self.factors):
            acc = compose(t.as_permutation(self.target.n), acc)
        return acc

    def __str__(self) -> str:
        body = "".join(str(t) for t in self.factors)
        return f"{self.method} {self.length} {self.m} : {body}"


@dataclass(frozen=True)
class Violation:
    kind: str  # "width" | "product" | "parity" | "degree"
    index: int | None
    message: str


def verify(f: Factorization) -> Violation | None:
    """Check product, widths and parity; return the first violation found."""
    n = f.target.n
    for idx, t in enumerate(f.factors):
        if t.j > n:
            return Violation("degree", idx, f"factor {t} exceeds degree {n}")
        if t.width > f.m:
            return Violation(
                "width", idx, f"factor {t} has width {t.width} > bound {f.m}"
            )
    if f.product() != f.target:
        return Violation("product", None, "factor product differs from target")
    if f.length % 2 != parity(f.target):
        return Violation(
            "parity", None, f"length {f.length} does not match target parity"
        )
    return None


class TranspositionEffect(Enum):
    """What left-multiplying by a transposition does to the cycle count."""

    SPLIT = "split"  # endpoints share a cycle: count goes up by one
    JOIN = "join"  # endpoints in different cycles: count goes down by one


def classify_transposition(t: Transposition, p: Permutation) -> TranspositionEffect:
    """SPLIT if t's endpoints lie in the same cycle of p, else JOIN."""
    if t.j > p.n:
        raise ValueError(f"transposition {t} exceeds degree {p.n}")
    x = p(t.i)
    while x != t.i:
        if x == t.j:
            return TranspositionEffect.SPLIT
        x = p(x)
    return TranspositionEffect.JOIN


@dataclass(frozen=True)
class CycleClass:
    """Width-m classification of one cycle.

    spread: every term has some partner more than m away.
    pivot:  present iff not spread; a term within m of all others (smallest
            such term).
    lo, hi: smallest and largest terms.
    """

    spread: bool
    pivot: int | None
    lo: int
    hi: int


def cycle_class(cycle: Sequence[int], m: int) -> CycleClass:
    terms = tuple(cycle)
    if not terms:
        raise ValueError("empty cycle")
    if len(set(terms)) != len(terms) or min(terms) < 1:
        raise ValueError(f"cycle terms must be distinct positive integers: {terms}")
    if m < 1:
        raise ValueError("width bound must be at least 1")
    lo, hi = min(terms), max(terms)
    pivots = [x for x in terms if all(abs(t - x) <= m for t in terms)]
    if pivots:
        return CycleClass(spread=False, pivot=min(pivots), lo=lo, hi=hi)
    return CycleClass(spread=True, pivot=None, lo=lo, hi=hi)


def pair_condition(
    ci: Sequence[int], cj: Sequence[int], m: int
) -> tuple[int, int] | None:
    """Witness terms (r in ci, s in cj) with every term of ci within m of s
    and every term of cj within m of r; None when no such pair exists.

    Checked exhaustively over term pairs, in cycle order (first hit wins).
    """
    if set(ci) & set(cj):
        raise ValueError("cycles must be disjoint")
    for r in ci:
        for s in cj:
            if all(abs(t - s) <= m for t in ci) and all(abs(u - r) <= m for u in cj):
                return (r, s)
    return None


# ---------------------------------------------------------------------------
# step bookkeeping: position swaps applied while sorting, factors recovered
# by reversal (sigma * s1 * ... * sk = id  implies  sigma = sk * ... * s1)


def _steps_to_factors(steps: Sequence[tuple[int, int]]) -> list[Transposition]:
    return [transposition(a, b) for a, b in reversed(steps)]


def adjacent_sort(p: Permutation) -> Factorization:
    """Width-1 factorization by bubble sort; length equals the inversion count."""
    arr = list(p.image)
    n = len(arr)
    steps: list[tuple[int, int]] = []
    swapped = True
    while swapped:
        swapped = False
        for k in range(n - 1):
            if arr[k] > arr[k + 1]:
                arr[k], arr[k + 1] = arr[k + 1], arr[k]
                steps.append((k + 1, k + 2))
                swapped = True
    inv = inversion_count(p)
    assert len(steps) == inv
    return Factorization(
        target=p,
        m=1,
        factors=tuple(_steps_to_factors(steps)),
        method="adjacent",
        claimed_bound=inv,
    )


def unrestricted_factor(p: Permutation) -> Factorization:
    """Factorization with no effective width bound (m = n-1); length n - r.

    Each factor splits one cycle of the remaining permutation, which is the
    cheapest possible schedule for unrestricted transpositions.
    """
    n = p.n
    dec = cycle_decomposition(p)
    factors: list[Transposition] = []
    for cyc in dec.cycles:
        for a, b in zip(cyc, cyc[1:]):
            factors.append(transposition(a, b))
    bound = n - dec.r
    assert len(factors) == bound
    return Factorization(
        target=p,
        m=max(1, n - 1),
        factors=tuple(factors),
        method="unrestricted",
        claimed_bound=bound,
    )


# ---------------------------------------------------------------------------
# constructions for the wide-band regime n <= 2m+1


def _check_regime(n: int, m: int) -> None:
    if not (5 <= n <= 2 * m + 1):
        raise ValueError(f"unsupported regime: need 5 <= n <= 2m+1, got n={n}, m={m}")
    if m > n - 1:
        raise ValueError(f"width bound m={m} exceeds n-1={n - 1}")


def single_cycle_factor(cycle: Sequence[int], m: int, n: int) -> Factorization:
    """Factor one cycle: p+1 hub steps if spread, p-1 pivot steps otherwise."""
    _check_regime(n, m)
    terms = normalize_cycle(tuple(cycle))
    if max(terms) > n:
        raise ValueError(f"cycle {terms} does not fit in degree {n}")
    target = from_cycles(n, [terms])
    p = len(terms)
    if p == 1:
        return Factorization(target, m, (), "pivot", 0)
    cls = cycle_class(terms, m)
    if cls.spread:
        hub = m + 1
        assert hub not in terms, "a spread cycle never contains the hub point"
        seq = [transposition(hub, terms[-1])]
        seq += [transposition(hub, terms[k]) for k in range(p - 2, -1, -1)]
        seq.append(transposition(hub, terms[-1]))
        return Factorization(target, m, tuple(seq), "hub", p + 1)
    # rotate so the pivot is the last term
    k = terms.index(cls.pivot)
    rot = terms[k + 1 :] + terms[: k + 1]
    seq = [transposition(rot[-1], rot[t]) for t in range(p - 2, -1, -1)]
    return Factorization(target, m, tuple(seq), "pivot", p - 1)


def cycle_pair_factor(
    ci: Sequence[int], cj: Sequence[int], m: int, n: int
) -> Factorization:
    """Factor the product of two disjoint spread cycles in p+q steps."""
    _check_regime(n, m)
    ci = tuple(ci)
    cj = tuple(cj)
    if not cycle_class(ci, m).spread:
        raise ValueError(f"first cycle {ci} is not spread for m={m}")
    if not cycle_class(cj, m).spread:
        raise ValueError(f"second cycle {cj} is not spread for m={m}")
    witness = pair_condition(ci, cj, m)  # also rejects non-disjoint cycles
    if witness is None:
        raise ValueError(f"cycles {ci} and {cj} admit no joint-proximity witness")
    r, s = witness
    # rotate so r is last in ci and s is last in cj
    a = ci[ci.index(r) + 1 :] + ci[: ci.index(r) + 1]
    b = cj[cj.index(s) + 1 :] + cj[: cj.index(s) + 1]
    p, q = len(a), len(b)
    seq = [transposition(b[-1], a[t]) for t in range(p - 1, -1, -1)]
    seq += [transposition(a[-1], b[u]) for u in range(q - 2, -1, -1)]
    seq.append(transposition(a[-1], b[-1]))
    target = from_cycles(n, [a, b])
    assert len(seq) == p + q
    return Factorization(target, m, tuple(seq), "pair", p + q)


def _greedy_pairs(
    cycles: Sequence[tuple[int, ...]], m: int
) -> tuple[list[tuple[int, int]], list[int]]:
    """Greedy pairing of spread cycles by the cross-proximity shortcut.

    Cycles are taken in ascending order of their smallest term; each is
    matched to the unmatched spread cycle with the smallest largest-term
    among compatible partners.  Two spread cycles are compatible when one's
    largest term is within m of the other's smallest term (a sufficient
    test for the joint-proximity condition in this regime).

    Returns (pairs as index tuples, unpaired indices).
    """
    info = [(min(c), max(c), idx) for idx, c in enumerate(cycles)]
    info.sort()
    matched = set()
    pairs: list[tuple[int, int]] = []
    for lo_i, hi_i, idx_i in info:
        if idx_i in matched:
            continue
        best = None
        for lo_j, hi_j, idx_j in info:
            if idx_j == idx_i or idx_j in matched:
                continue
            if hi_j - lo_i <= m or hi_i - lo_j <= m:
                if best is None or hi_j < best[0]:
                    best = (hi_j, idx_j)
        if best is not None:
            matched.update({idx_i, best[1]})
            pairs.append((idx_i, best[1]))
    unpaired = [idx for _, _, idx in info if idx not in matched]
    return pairs, unpaired


def banded_factor(p: Permutation, m: int) -> Factorization:
    """Factor any permutation in the regime n <= 2m+1.

    Classifies every cycle, pairs spread cycles greedily, then assembles
    pair / hub / pivot blocks.  The length always comes out to
    n - r + 2s - 2t where r counts cycles, s spread cycles and t pairs.
    """
    n = p.n
    _check_regime(n, m)
    dec = cycle_decomposition(p)
    spread_idx = [
        k for k, c in enumerate(dec.cycles) if len(c) > 1 and cycle_class(c, m).spread
    ]
    spread_cycles = [dec.cycles[k] for k in spread_idx]
    pairs_local, unpaired_local = _greedy_pairs(spread_cycles, m)
    paired_of = {}
    for a, b in pairs_local:
        paired_of[spread_idx[a]] = spread_idx[b]
        paired_of[spread_idx[b]] = spread_idx[a]

    factors: list[Transposition] = []
    emitted = set()
    for k, cyc in enumerate(dec.cycles):
        if k in emitted:
            continue
        if k in paired_of:
            j = paired_of[k]
            emitted.update({k, j})
            factors.extend(cycle_pair_factor(cyc, dec.cycles[j], m, n).factors)
        else:
            emitted.add(k)
            factors.extend(single_cycle_factor(cyc, m, n).factors)

    s = len(spread_idx)
    t = len(pairs_local)
    bound = n - dec.r + 2 * s - 2 * t
    assert len(factors) == bound
    return Factorization(
        target=p,
        m=m,
        factors=tuple(factors),
        method="banded",
        claimed_bound=bound,
        details={"cycles": dec.r, "spread": s, "paired": t},
    )


# ---------------------------------------------------------------------------
# recursive constructions for general m


def _ascend_to_last(arr: list[int], m: int, steps: list[tuple[int, int]]) -> None:
    """Move the largest value to the last position with jumps of at most m."""
    n = len(arr)
    pos = arr.index(n) + 1
    while pos != n:
        nxt = n if n - pos <= m else pos + m
        arr[pos - 1], arr[nxt - 1] = arr[nxt - 1], arr[pos - 1]
        steps.append((pos, nxt))
        pos = nxt


def _fix_ends(arr: list[int], m: int) -> list[tuple[int, int]]:
    """Move both 1 and n home along the shared grid {k*m+1}.

    The value n ascends through grid points, the value 1 descends through
    them.  When 1 starts deeper into the grid than n, 1 is first parked on
    the grid so that n's ascent carries it one grid step down for free; this
    keeps the total step count at 2*ceil((n-1)/m) - 1 or fewer.
    """
    n = len(arr)
    steps: list[tuple[int, int]] = []

    def swap(a: int, b: int) -> None:
        arr[a - 1], arr[b - 1] = arr[b - 1], arr[a - 1]
        steps.append((a, b))

    pos_n = arr.index(n) + 1
    pos_1 = arr.index(1) + 1
    if pos_n != n and pos_1 != 1:
        s = (pos_n - 1) // m + 1  # first grid index strictly above pos_n
        t = ceil((pos_1 - 1) / m) - 1  # last grid index strictly below pos_1
        if s < t:
            swap(pos_1, t * m + 1)  # park 1 on n's ascent path
    # ascend n through grid points k*m+1
    pos = arr.index(n) + 1
    while pos != n:
        nxt = n if n - pos <= m else ((pos - 1) // m + 1) * m + 1
        swap(pos, nxt)
        pos = nxt
    # descend 1 through grid points (recomputed: the ascent may have carried it)
    pos = arr.index(1) + 1
    while pos != 1:
        nxt = 1 if pos - 1 <= m else ((pos - 2) // m) * m + 1
        swap(pos, nxt)
        pos = nxt
    return steps


def recursive_factor(p: Permutation, m: int, scheme: str = "auto") -> Factorization:
    """Valid width-m factorization for any (n, m) by peeling boundary points.

    Moves n (scheme ``move_last``) or the pair {1, n} (scheme ``move_ends``)
    into place, then recurses on the untouched block; bottoms out in
    ``adjacent`` (m = 1), ``banded`` (n <= 2m+1) or an exact search for
    n < 5.  The auto scheme uses move_ends whenever m <= (n-1)/2, matching
    the hypotheses under which each peeling step is cheap.  Lengths are
    upper-bound witnesses, not necessarily optimal.
    """
    n = p.n
    if not 1 <= m <= n - 1:
        raise ValueError(f"need 1 <= m <= n-1, got n={n}, m={m}")
    if scheme not in ("auto", "move_last", "move_ends"):
        raise ValueError(f"unknown scheme {scheme!r}")
    if m == 1:
        return adjacent_sort(p)
    if n < 5:
        return bfs_factor(p, m)
    if n <= 2 * m + 1:
        return banded_factor(p, m)

    use = scheme
    if use == "auto":
        use = "move_ends" if 2 * m <= n - 1 else "move_last"

    arr = list(p.image)
    steps: list[tuple[int, int]] = []
    if use == "move_last":
        _ascend_to_last(arr, m, steps)
        assert arr[-1] == n and len(steps) <= ceil((n - 1) / m)
        inner_perm = Permutation(tuple(arr[:-1]))
        offset = 0
        step_bound = ceil((n - 1) / m)
    else:
        steps = _fix_ends(arr, m)
        assert arr[0] == 1 and arr[-1] == n
        assert len(steps) <= 2 * ceil((n - 1) / m) - 1
        inner_perm = Permutation(tuple(v - 1 for v in arr[1:-1]))
        offset = 1
        step_bound = 2 * ceil((n - 1) / m) - 1

    inner = recursive_factor(inner_perm, m, scheme)
    lifted = [Transposition(t.i + offset, t.j + offset) for t in inner.factors]
    factors = tuple(lifted) + tuple(_steps_to_factors(steps))
    claimed = None
    if inner.claimed_bound is not None:
        claimed = step_bound + inner.claimed_bound
    return Factorization(
        target=p,
        m=m,
        factors=factors,
        method=use,
        claimed_bound=claimed,
        details={"peel_steps": len(steps)},
    )


def bfs_factor(
    p: Permutation, m: int, *, memory_cap: int = cayley.DEFAULT_MEMORY_CAP
) -> Factorization:
    """Exact shortest width-m factorization, read off a full level search."""
    n = p.n
    if not 1 <= m <= max(1, n - 1):
        raise ValueError(f"need 1 <= m <= n-1, got n={n}, m={m}")
    if n == 1 or p.is_identity():
        return Factorization(p, m, (), "bfs", 0)
    levels = cayley.bfs_levels(n, m, memory_cap=memory_cap)
    codec = RankCodec(n)
    gens = cayley.generator_set(n, m).members
    steps: list[tuple[int, int]] = []
    cur = list(p.image)
    d = int(levels[codec.rank(p)])
    while d > 0:
        for t in gens:
            cur[t.i - 1], cur[t.j - 1] = cur[t.j - 1], cur[t.i - 1]
            if int(levels[codec.rank(Permutation(tuple(cur)))]) == d - 1:
                steps.append((t.i, t.j))
                d -= 1
                break
            cur[t.i - 1], cur[t.j - 1] = cur[t.j - 1], cur[t.i - 1]
        else:
            raise AssertionError("no level-decreasing neighbour found")
    return Factorization(
        target=p,
        m=m,
        factors=tuple(_steps_to_factors(steps)),
        method="bfs",
        claimed_bound=len(steps),
    )


def auto_factor(p: Permutation, m: int) -> Factorization:
    """The regime-appropriate constructive method for (n, m)."""
    n = p.n
    if not 1 <= m <= max(1, n - 1):
        raise ValueError(f"need 1 <= m <= n-1, got n={n}, m={m}")
    if m == 1:
        return adjacent_sort(p)
    if n < 5:
        return bfs_factor(p, m)
    if m == n - 1:
        return unrestricted_factor(p)
    if n <= 2 * m + 1:
        return banded_factor(p, m)
    return recursive_factor(p, m)
