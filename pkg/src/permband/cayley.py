"""Exact distances and diameters on the transposition band graph.

Vertices are the n! permutations of degree n; two are adjacent when they
differ by one transposition of width at most m.  The graph is vertex
transitive, so the diameter equals the eccentricity of the identity and a
single breadth-first search from the identity settles it.

The search is levelized over rank-encoded states: three packed 64-bit
bitsets (visited / current / next) of n! bits each, with the current level
swept in blocks, decoded to permutation matrices, expanded by column swaps
and re-ranked, all vectorised with numpy.  Memory is dominated by the
bitsets (n = 12 needs about 60 MB per bitset), which is what makes degrees
beyond the reach of dictionary BFS feasible.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from math import factorial

import numpy as np

from .codec import CODEC_VERSION, RankCodec
from .perm import Permutation, Transposition

DEFAULT_MEMORY_CAP = 2 << 30  # 2 GiB

_POP8 = np.unpackbits(np.arange(256, dtype=np.uint8)[:, None], axis=1).sum(axis=1)


class MemoryCapExceeded(Exception):
    """Raised when a search would not fit under the configured cap."""

    def __init__(self, required_bytes: int, cap_bytes: int, detail: str = ""):
        self.required_bytes = required_bytes
        self.cap_bytes = cap_bytes
        msg = (
            f"search needs about {required_bytes} bytes but the memory cap is "
            f"{cap_bytes} bytes"
        )
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


@dataclass(frozen=True)
class GeneratorSet:
    """All transpositions (i, j) with j - i <= m in degree n.

    Members are ordered by (width, i); the set is closed under inversion
    because every member is an involution.
    """

    n: int
    m: int
    members: tuple[Transposition, ...]

    def __len__(self) -> int:
        return len(self.members)


def generator_set(n: int, m: int) -> GeneratorSet:
    if n < 2 or not 1 <= m <= n - 1:
        raise ValueError(f"need n >= 2 and 1 <= m <= n-1, got n={n}, m={m}")
    members = tuple(
        Transposition(i, i + w) for w in range(1, m + 1) for i in range(1, n - w + 1)
    )
    return GeneratorSet(n, m, members)


@dataclass(frozen=True)
class DiameterReport:
    """Result of a full breadth-first sweep for one (n, m)."""

    n: int
    m: int
    delta: int
    level_counts: tuple[int, ...]
    farthest_count: int
    farthest: tuple[Permutation, ...] | None
    codec_version: str
    elapsed_seconds: float

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "delta": self.delta,
            "level_counts": list(self.level_counts),
            "farthest_count": self.farthest_count,
            "farthest": None
            if self.farthest is None
            else [" ".join(map(str, p.image)) for p in self.farthest],
            "codec_version": self.codec_version,
            "elapsed_seconds": self.elapsed_seconds,
        }


# ---------------------------------------------------------------------------
# vectorised rank/unrank over rows


_WEIGHTS: dict[int, np.ndarray] = {}


def _rank_weights(n: int) -> np.ndarray:
    """Flattened weight matrix: entry (k, l) is (n-1-k)! for l > k, else 0."""
    if n not in _WEIGHTS:
        w = np.zeros((n, n), dtype=np.float64)
        for k in range(n - 1):
            w[k, k + 1 :] = float(factorial(n - 1 - k))
        _WEIGHTS[n] = w.reshape(n * n)
    return _WEIGHTS[n]


def _rank_rows(P: np.ndarray) -> np.ndarray:
    """Ranks of each row of a (N, n) matrix of 0-based permutations.

    rank = sum over pairs k < l of [p_k > p_l] * (n-1-k)!, evaluated as one
    weighted inner product per row.  Exact in float64 up to degree 18.
    """
    N, n = P.shape
    B = (P[:, :, None] > P[:, None, :]).reshape(N, n * n)
    return (B.astype(np.float64) @ _rank_weights(n)).astype(np.int64)


def _unrank_rows(ranks: np.ndarray, n: int) -> np.ndarray:
    """Inverse of _rank_rows: (N,) ranks to (N, n) 0-based permutations."""
    return _unrank_digits(ranks, n)[0]


def _unrank_digits(ranks: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Decode ranks to permutations plus their factorial-base digit rows.

    Digit k of a row counts the entries right of position k that are
    smaller, so rank = sum digit_k * (n-1-k)!.
    """
    N = len(ranks)
    out = np.empty((N, n), dtype=np.uint8)
    digits = np.empty((N, n), dtype=np.uint8)
    avail = np.tile(np.arange(n, dtype=np.uint8), (N, 1))
    rem = ranks.astype(np.int64).copy()
    rows = np.arange(N)
    for k in range(n):
        f = factorial(n - 1 - k)
        d = rem // f
        rem -= d * f
        digits[:, k] = d
        out[:, k] = avail[rows, d]
        if k < n - 1:
            width = n - k
            keep = np.arange(width)[None, :] != d[:, None]
            avail = avail[keep].reshape(N, width - 1)
    return out, digits


_FACTS: dict[int, tuple[int, ...]] = {}


def _fact_weights(n: int) -> tuple[int, ...]:
    if n not in _FACTS:
        _FACTS[n] = tuple(factorial(n - 1 - k) for k in range(n))
    return _FACTS[n]


def _swap_ranks(
    P: np.ndarray, D: np.ndarray, base: np.ndarray, i: int, j: int
) -> np.ndarray:
    """Ranks after swapping columns i < j, via digit deltas.

    Only digits i..j change under the swap, so each edge costs O(j - i)
    vector operations instead of a full re-rank.
    """
    F = _fact_weights(P.shape[1])
    a = P[:, i]
    b = P[:, j]
    delta = np.zeros(len(base), dtype=np.int64)
    wa = np.zeros(len(base), dtype=np.int64)  # entries between, smaller than a
    wb = np.zeros(len(base), dtype=np.int64)  # entries between, smaller than b
    for k in range(i + 1, j):
        pk = P[:, k]
        diff = (a < pk).astype(np.int64)
        diff -= b < pk
        delta += diff * F[k]
        wa += pk < a
        wb += pk < b
    ci = D[:, i].astype(np.int64)
    cj = D[:, j].astype(np.int64)
    ci_new = wb + (a < b) + cj
    cj_new = ci - (b < a) - wa
    delta += (ci_new - ci) * F[i]
    delta += (cj_new - cj) * F[j]
    return base + delta


# ---------------------------------------------------------------------------
# packed bitsets


def _new_bits(total: int) -> np.ndarray:
    return np.zeros((total + 63) // 64, dtype=np.uint64)


def _set_bits(words: np.ndarray, idx: np.ndarray) -> None:
    w = (idx >> 6).astype(np.int64)
    vals = np.uint64(1) << (idx.astype(np.uint64) & np.uint64(63))
    np.bitwise_or.at(words, w, vals)


def _test_bits(words: np.ndarray, idx: np.ndarray) -> np.ndarray:
    w = (idx >> 6).astype(np.int64)
    b = idx.astype(np.uint64) & np.uint64(63)
    return ((words[w] >> b) & np.uint64(1)).astype(bool)


def _popcount(words: np.ndarray) -> int:
    return int(_POP8[words.view(np.uint8)].sum(dtype=np.int64))


def _iter_set_ranks(words: np.ndarray, total: int, block_words: int):
    """Yield int64 arrays of set-bit positions, block by block, ascending."""
    for start in range(0, len(words), block_words):
        chunk = words[start : start + block_words]
        if not chunk.any():
            continue
        bits = np.unpackbits(chunk.view(np.uint8), bitorder="little")
        idx = np.flatnonzero(bits).astype(np.int64) + start * 64
        if idx.size and idx[-1] >= total:
            idx = idx[idx < total]
        if idx.size:
            yield idx


# ---------------------------------------------------------------------------
# the search proper


def estimate_bytes(n: int, collect_farthest: bool = False, want_levels: bool = False) -> int:
    """Rough peak memory of a full sweep: bitsets plus block working space."""
    total = factorial(n)
    words_bytes = ((total + 63) // 64) * 8
    bitsets = 3 + (1 if collect_farthest else 0)
    block = 1 << 16
    working = block * (2 * n + 24) * 2  # decoded rows, swapped rows, ranks
    levels = total if want_levels else 0
    return bitsets * words_bytes + working + levels + (64 << 10)


def _sweep(
    n: int,
    m: int,
    *,
    collect_farthest: bool = False,
    want_levels: bool = False,
    memory_cap: int = DEFAULT_MEMORY_CAP,
    block_words: int = 1 << 10,
):
    """Core levelized BFS.

    Returns (level_counts, farthest_ranks or None, levels array or None).
    Output is deterministic: level sets are canonical and ranks ascend.
    """
    total = factorial(n)
    gens0 = [(t.i - 1, t.j - 1) for t in generator_set(n, m).members]
    required = estimate_bytes(n, collect_farthest, want_levels)
    if required > memory_cap:
        raise MemoryCapExceeded(required, memory_cap, f"n={n}, m={m}")

    visited = _new_bits(total)
    current = _new_bits(total)
    zero = np.array([0], dtype=np.int64)
    _set_bits(visited, zero)
    _set_bits(current, zero)
    levels = np.full(total, -1, dtype=np.int8) if want_levels else None
    if levels is not None:
        levels[0] = 0
    counts = [1]
    seen = 1
    level = 0
    while seen < total:
        nxt = _new_bits(total)
        for ranks in _iter_set_ranks(current, total, block_words):
            P, D = _unrank_digits(ranks, n)
            for i, j in gens0:
                _set_bits(nxt, _swap_ranks(P, D, ranks, i, j))
        np.bitwise_and(nxt, ~visited, out=nxt)
        cnt = _popcount(nxt)
        if cnt == 0:
            break
        level += 1
        counts.append(cnt)
        seen += cnt
        np.bitwise_or(visited, nxt, out=visited)
        if levels is not None:
            for ranks in _iter_set_ranks(nxt, total, block_words):
                levels[ranks] = level
        current = nxt
    if seen != total:
        raise AssertionError(f"search visited {seen} of {total} states")

    farthest = None
    if collect_farthest:
        parts = list(_iter_set_ranks(current, total, block_words))
        farthest = np.concatenate(parts) if parts else np.array([], dtype=np.int64)
    return tuple(counts), farthest, levels


def bfs_diameter(
    n: int,
    m: int,
    *,
    collect_farthest: bool = False,
    memory_cap: int = DEFAULT_MEMORY_CAP,
) -> DiameterReport:
    """Exact diameter, level histogram and (optionally) the farthest set.

    The farthest set is returned sorted by one-line notation.
    """
    t0 = time.perf_counter()
    counts, far_ranks, _ = _sweep(
        n, m, collect_farthest=collect_farthest, memory_cap=memory_cap
    )
    farthest = None
    if far_ranks is not None:
        codec = RankCodec(n)
        farthest = tuple(codec.unrank(int(r)) for r in far_ranks)
    return DiameterReport(
        n=n,
        m=m,
        delta=len(counts) - 1,
        level_counts=counts,
        farthest_count=counts[-1],
        farthest=farthest,
        codec_version=CODEC_VERSION,
        elapsed_seconds=time.perf_counter() - t0,
    )


def distance_histogram(
    n: int, m: int, *, memory_cap: int = DEFAULT_MEMORY_CAP
) -> tuple[int, ...]:
    """level_counts[k] = number of permutations at distance exactly k."""
    counts, _, _ = _sweep(n, m, memory_cap=memory_cap)
    return counts


def bfs_levels(
    n: int, m: int, *, memory_cap: int = DEFAULT_MEMORY_CAP
) -> np.ndarray:
    """Distance of every permutation, indexed by rank (int8 array of n!)."""
    _, _, levels = _sweep(n, m, want_levels=True, memory_cap=memory_cap)
    return levels


# ---------------------------------------------------------------------------
# single-target distance via bidirectional search


def _expand_ranks(ranks: np.ndarray, n: int, gens0) -> np.ndarray:
    """Sorted unique ranks of all neighbours of the given states."""
    P, D = _unrank_digits(ranks, n)
    outs = [_swap_ranks(P, D, ranks, i, j) for i, j in gens0]
    return np.unique(np.concatenate(outs))


def _setdiff_sorted(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """a \\ b for sorted unique arrays."""
    if len(b) == 0:
        return a
    pos = np.searchsorted(b, a)
    pos[pos == len(b)] = len(b) - 1
    return a[b[pos] != a]


def distance(
    p: Permutation,
    m: int,
    *,
    memory_cap: int = DEFAULT_MEMORY_CAP,
    frontier_limit: int = 2_000_000,
) -> int:
    """Exact distance from the identity to p using width-<= m transpositions.

    Runs a bidirectional level search meeting in the middle (the generators
    are involutions, so both directions use the same expansion step), with
    sorted rank arrays as frontiers.  Falls back to a full sweep with early
    exit if the frontiers outgrow frontier_limit.
    """
    n = p.n
    if n == 1:
        return 0
    gens0 = [(t.i - 1, t.j - 1) for t in generator_set(n, m).members]
    codec = RankCodec(n)
    target = codec.rank(p)
    if target == 0:
        return 0

    sides = [
        {"levels": [np.array([0], dtype=np.int64)], "all": np.array([0], dtype=np.int64)},
        {
            "levels": [np.array([target], dtype=np.int64)],
            "all": np.array([target], dtype=np.int64),
        },
    ]
    best = None
    while True:
        depth = [len(s["levels"]) - 1 for s in sides]
        if best is not None and depth[0] + depth[1] >= best:
            return best
        k = 0 if len(sides[0]["levels"][-1]) <= len(sides[1]["levels"][-1]) else 1
        side, other = sides[k], sides[1 - k]
        frontier = side["levels"][-1]
        if len(frontier) == 0:
            if best is None:
                raise AssertionError("frontier died before meeting")
            return best
        if len(side["all"]) + len(frontier) * len(gens0) > frontier_limit:
            return _distance_by_sweep(n, m, target, memory_cap=memory_cap)
        new = _setdiff_sorted(_expand_ranks(frontier, n, gens0), side["all"])
        side["levels"].append(new)
        side["all"] = np.union1d(side["all"], new)
        d_new = len(side["levels"]) - 1
        for j, lev in enumerate(other["levels"]):
            if len(np.intersect1d(new, lev, assume_unique=True)):
                cand = d_new + j
                if best is None or cand < best:
                    best = cand
                break  # smallest j gives the best sum for this side


def _distance_by_sweep(
    n: int, m: int, target: int, *, memory_cap: int = DEFAULT_MEMORY_CAP
) -> int:
    """Levelized full-space search that stops as soon as target is reached."""
    total = factorial(n)
    gens0 = [(t.i - 1, t.j - 1) for t in generator_set(n, m).members]
    required = estimate_bytes(n)
    if required > memory_cap:
        raise MemoryCapExceeded(required, memory_cap, f"n={n}, m={m}")
    visited = _new_bits(total)
    current = _new_bits(total)
    zero = np.array([0], dtype=np.int64)
    _set_bits(visited, zero)
    _set_bits(current, zero)
    t_arr = np.array([target], dtype=np.int64)
    level = 0
    while True:
        if _test_bits(visited, t_arr)[0]:
            return level
        nxt = _new_bits(total)
        for ranks in _iter_set_ranks(current, total, 1 << 10):
            P, D = _unrank_digits(ranks, n)
            for i, j in gens0:
                _set_bits(nxt, _swap_ranks(P, D, ranks, i, j))
        np.bitwise_and(nxt, ~visited, out=nxt)
        if _popcount(nxt) == 0:
            raise AssertionError("target not reached by exhaustive search")
        np.bitwise_or(visited, nxt, out=visited)
        current = nxt
        level += 1
