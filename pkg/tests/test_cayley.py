from math import factorial

import numpy as np
import pytest

from permband.cayley import (
    MemoryCapExceeded,
    bfs_diameter,
    bfs_levels,
    distance,
    distance_histogram,
    estimate_bytes,
    generator_set,
)
from permband.codec import RankCodec
from permband.perm import Permutation, all_permutations, identity, parity

from oracles import brute_levels


class TestGeneratorSet:
    def test_member_count(self):
        for n in range(2, 9):
            for m in range(1, n):
                g = generator_set(n, m)
                assert len(g) == sum(n - w for w in range(1, m + 1))

    def test_full_band_is_all_transpositions(self):
        assert len(generator_set(6, 5)) == 15

    def test_ordering_by_width_then_start(self):
        g = generator_set(4, 3).members
        assert [(t.i, t.j) for t in g] == [
            (1, 2), (2, 3), (3, 4), (1, 3), (2, 4), (1, 4),
        ]

    def test_invalid(self):
        with pytest.raises(ValueError):
            generator_set(3, 0)
        with pytest.raises(ValueError):
            generator_set(3, 3)


class TestAgainstBruteForce:
    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_levels_match_dictionary_search(self, n):
        codec = RankCodec(n)
        for m in range(1, n):
            oracle = brute_levels(n, m)
            levels = bfs_levels(n, m)
            for image, d in oracle.items():
                assert levels[codec.rank(Permutation(image))] == d

    def test_histogram_3_1(self):
        assert distance_histogram(3, 1) == (1, 2, 2, 1)

    def test_spot_check_7_2(self):
        oracle = brute_levels(7, 2)
        got = distance_histogram(7, 2)
        want = [0] * (max(oracle.values()) + 1)
        for d in oracle.values():
            want[d] += 1
        assert got == tuple(want)


class TestDiameterReports:
    def test_known_small_diameters(self):
        assert bfs_diameter(6, 2).delta == 7
        assert bfs_diameter(8, 3).delta == 10

    def test_level_counts_partition_everything(self):
        for n in range(2, 8):
            for m in range(1, n):
                counts = distance_histogram(n, m)
                assert sum(counts) == factorial(n)
                assert counts[0] == 1
                assert counts[1] == len(generator_set(n, m))

    def test_adjacent_band_reaches_inversion_maximum(self):
        for n in range(2, 7):
            counts = distance_histogram(n, 1)
            assert len(counts) - 1 == n * (n - 1) // 2

    def test_farthest_collection(self):
        rep = bfs_diameter(5, 4, collect_farthest=True)
        assert rep.delta == 4
        assert rep.farthest_count == len(rep.farthest) == rep.level_counts[-1]
        images = [p.image for p in rep.farthest]
        assert images == sorted(images)

    def test_determinism(self):
        a = bfs_diameter(6, 3, collect_farthest=True)
        b = bfs_diameter(6, 3, collect_farthest=True)
        assert a.level_counts == b.level_counts
        assert a.farthest == b.farthest

    def test_parity_stratification(self, levels_for):
        for n in range(2, 7):
            codec = RankCodec(n)
            for m in range(1, n):
                levels = levels_for(n, m)
                for p in all_permutations(n):
                    assert levels[codec.rank(p)] % 2 == parity(p)

    def test_monotone_in_band_width(self, levels_for):
        for n in range(2, 8):
            for m in range(1, n - 1):
                a = levels_for(n, m)
                b = levels_for(n, m + 1)
                assert (a >= b).all()

    def test_distance_floor_from_cycle_count(self, levels_for):
        from permband.perm import cycle_decomposition

        for n in range(2, 8):
            codec = RankCodec(n)
            floors = np.empty(factorial(n), dtype=np.int64)
            for p in all_permutations(n):
                floors[codec.rank(p)] = n - cycle_decomposition(p).r
            for m in range(1, n):
                assert (levels_for(n, m) >= floors).all()

    def test_band_extremes_have_closed_distances(self, levels_for):
        from permband.perm import cycle_decomposition, inversion_count

        for n in range(2, 8):
            codec = RankCodec(n)
            lv1 = levels_for(n, 1)
            lvfull = levels_for(n, n - 1)
            for p in all_permutations(n):
                r = codec.rank(p)
                assert lv1[r] == inversion_count(p)
                assert lvfull[r] == n - cycle_decomposition(p).r


class TestDistance:
    def test_identity(self):
        assert distance(identity(6), 3) == 0

    def test_worked_examples(self):
        p = Permutation((6, 7, 4, 5, 2, 3, 1))
        assert distance(p, 2) == 10
        # the same permutation is a single 7-cycle with every point within
        # 3 of the pivot 4, so width 3 resolves it in 6 steps
        assert distance(p, 3) == 6
        rev8 = Permutation(tuple(range(8, 0, -1)))
        assert distance(rev8, 2) == 14

    def test_exhaustive_against_levels(self, levels_for):
        for n in range(2, 7):
            codec = RankCodec(n)
            for m in range(1, n):
                levels = levels_for(n, m)
                for p in all_permutations(n):
                    assert distance(p, m) == int(levels[codec.rank(p)])

    def test_diameter_is_max_distance(self, levels_for):
        for n in range(2, 7):
            for m in range(1, n):
                assert bfs_diameter(n, m).delta == int(levels_for(n, m).max())

    def test_fallback_sweep_agrees(self):
        p = Permutation((5, 6, 3, 4, 1, 2))
        assert distance(p, 2, frontier_limit=10) == distance(p, 2)


class TestMemoryCap:
    def test_refusal_names_requirement(self):
        with pytest.raises(MemoryCapExceeded) as err:
            bfs_diameter(10, 2, memory_cap=1000)
        assert err.value.required_bytes >= estimate_bytes(10)
        assert err.value.cap_bytes == 1000

    def test_estimate_scales(self):
        assert estimate_bytes(13) > 2 << 30  # degree 13 refused at the default cap
        assert estimate_bytes(12) < 2 << 30

    def test_invalid_degree_pairs(self):
        with pytest.raises(ValueError):
            distance_histogram(3, 3)
