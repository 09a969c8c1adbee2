import random
from math import ceil, factorial

import pytest

from permband import extremal
from permband.codec import RankCodec, parse_permutation
from permband.factorize import (
    Factorization,
    TranspositionEffect,
    adjacent_sort,
    auto_factor,
    banded_factor,
    bfs_factor,
    classify_transposition,
    cycle_class,
    cycle_pair_factor,
    pair_condition,
    recursive_factor,
    single_cycle_factor,
    unrestricted_factor,
    verify,
)
from permband.perm import (
    Permutation,
    Transposition,
    all_permutations,
    compose,
    cycle_decomposition,
    identity,
    inversion_count,
    transposition,
)


def rand_perm(rng, n):
    img = list(range(1, n + 1))
    rng.shuffle(img)
    return Permutation(tuple(img))


class TestAdjacentSort:
    def test_worked_example(self):
        assert adjacent_sort(parse_permutation("3 2 4 5 1")).length == 5

    def test_identity(self):
        assert adjacent_sort(identity(5)).factors == ()

    def test_single_swap(self):
        assert adjacent_sort(Permutation((2, 1))).factors == (Transposition(1, 2),)

    def test_length_is_inversion_count_and_width_one(self):
        for p in all_permutations(6):
            f = adjacent_sort(p)
            assert f.m == 1
            assert f.length == inversion_count(p)
            assert verify(f) is None


class TestUnrestrictedFactor:
    def test_lengths(self):
        assert unrestricted_factor(Permutation((2, 1, 4, 3))).length == 2
        assert unrestricted_factor(identity(4)).length == 0
        assert unrestricted_factor(Permutation((2, 3, 4, 5, 1))).length == 4

    def test_length_is_cycle_deficit(self):
        for n in range(2, 8):
            for p in all_permutations(n):
                f = unrestricted_factor(p)
                assert f.length == n - cycle_decomposition(p).r
                assert verify(f) is None

    def test_split_discipline(self):
        # peeling factors off the left must split a cycle at every step
        rng = random.Random(5)
        for _ in range(40):
            p = rand_perm(rng, rng.randint(2, 8))
            f = unrestricted_factor(p)
            cur = p
            for t in f.factors:
                if not cur.is_identity():
                    assert classify_transposition(t, cur) == TranspositionEffect.SPLIT
                cur = compose(t.as_permutation(p.n), cur)
            assert cur.is_identity()


class TestClassifyTransposition:
    def test_same_cycle_splits(self):
        p = parse_permutation("(1 2)(3 4)", 4)
        assert classify_transposition(Transposition(1, 2), p) == TranspositionEffect.SPLIT

    def test_across_cycles_joins(self):
        p = parse_permutation("(1 2)(3 4)", 4)
        assert classify_transposition(Transposition(1, 3), p) == TranspositionEffect.JOIN

    def test_identity_always_joins(self):
        for t in [Transposition(1, 2), Transposition(2, 5), Transposition(1, 5)]:
            assert classify_transposition(t, identity(5)) == TranspositionEffect.JOIN

    def test_cycle_count_change_exhaustive(self):
        import itertools

        for n in range(2, 7):
            for p in all_permutations(n):
                r = cycle_decomposition(p).r
                for i, j in itertools.combinations(range(1, n + 1), 2):
                    t = Transposition(i, j)
                    tp = compose(t.as_permutation(n), p)
                    r2 = cycle_decomposition(tp).r
                    if classify_transposition(t, p) == TranspositionEffect.SPLIT:
                        assert r2 == r + 1
                    else:
                        assert r2 == r - 1

    def test_distance_law_under_full_band(self):
        # SPLIT lowers the unrestricted distance n - r by one, JOIN raises it
        import itertools

        for n in range(2, 7):
            for p in all_permutations(n):
                d = n - cycle_decomposition(p).r
                for i, j in itertools.combinations(range(1, n + 1), 2):
                    t = Transposition(i, j)
                    tp = compose(t.as_permutation(n), p)
                    d2 = n - cycle_decomposition(tp).r
                    if classify_transposition(t, p) == TranspositionEffect.SPLIT:
                        assert d2 == d - 1
                    else:
                        assert d2 == d + 1


class TestCycleClass:
    def test_spread_pair(self):
        c = cycle_class((1, 9), 5)
        assert c.spread and c.pivot is None and (c.lo, c.hi) == (1, 9)

    def test_clustered_run(self):
        c = cycle_class((2, 3, 4, 5, 6), 5)
        assert not c.spread and c.pivot is not None

    def test_fixed_point_is_clustered(self):
        c = cycle_class((3,), 4)
        assert not c.spread and c.pivot == 3

    def test_spread_definition_exhaustive(self):
        import itertools

        for terms in itertools.permutations(range(1, 7), 3):
            for m in (1, 2, 3):
                c = cycle_class(terms, m)
                spread = all(
                    any(abs(u - v) > m for v in terms) for u in terms
                )
                assert c.spread == spread
                if not c.spread:
                    assert all(abs(t - c.pivot) <= m for t in terms)

    def test_rejects_bad_cycles(self):
        with pytest.raises(ValueError):
            cycle_class((), 2)
        with pytest.raises(ValueError):
            cycle_class((1, 1), 2)


class TestPairCondition:
    def test_witness_found(self):
        assert pair_condition((1, 7), (3, 9), 5) == (7, 3)

    def test_no_witness(self):
        assert pair_condition((1, 9), (2, 8), 5) is None

    def test_rejects_overlap(self):
        with pytest.raises(ValueError, match="disjoint"):
            pair_condition((1, 2), (2, 3), 5)

    def test_witness_matches_exhaustive_definition(self):
        import itertools

        rng = random.Random(13)
        for _ in range(200):
            n = rng.randint(5, 9)
            m = rng.randint(2, n - 1)
            pts = rng.sample(range(1, n + 1), rng.randint(4, min(6, n)))
            k = rng.randint(2, len(pts) - 2)
            ci, cj = tuple(pts[:k]), tuple(pts[k:])
            got = pair_condition(ci, cj, m)
            want = None
            for r, s in itertools.product(ci, cj):
                if all(abs(t - s) <= m for t in ci) and all(
                    abs(u - r) <= m for u in cj
                ):
                    want = (r, s)
                    break
            assert got == want


class TestSingleCycleFactor:
    def test_spread_pair_through_hub(self):
        f = single_cycle_factor((1, 9), 5, 9)
        assert f.method == "hub"
        assert f.factors == (
            Transposition(6, 9),
            Transposition(1, 6),
            Transposition(6, 9),
        )
        assert verify(f) is None

    def test_clustered_triple(self):
        f = single_cycle_factor((2, 3, 4), 2, 5)
        assert f.method == "pivot" and f.length == 2
        assert verify(f) is None

    def test_fixed_point_empty(self):
        assert single_cycle_factor((5,), 4, 9).factors == ()

    def test_lengths_by_class(self):
        rng = random.Random(17)
        for _ in range(200):
            m = rng.randint(2, 6)
            n = rng.randint(5, 2 * m + 1)
            k = rng.randint(2, n)
            cyc = tuple(rng.sample(range(1, n + 1), k))
            f = single_cycle_factor(cyc, m, n)
            expect = k + 1 if cycle_class(cyc, m).spread else k - 1
            assert f.length == expect
            assert verify(f) is None

    def test_regime_error(self):
        with pytest.raises(ValueError, match="regime"):
            single_cycle_factor((1, 9), 3, 9)


class TestCyclePairFactor:
    def test_worked_pair(self):
        f = cycle_pair_factor((1, 7), (3, 9), 5, 9)
        assert f.length == 4
        assert verify(f) is None
        assert f.target == parse_permutation("(1 7)(3 9)", 9)

    def test_every_width_within_bound(self):
        f = cycle_pair_factor((1, 7), (3, 9), 5, 9)
        assert all(t.width <= 5 for t in f.factors)

    def test_no_witness_is_an_error(self):
        with pytest.raises(ValueError, match="witness"):
            cycle_pair_factor((1, 9), (2, 8), 5, 9)

    def test_not_spread_is_an_error(self):
        with pytest.raises(ValueError, match="spread"):
            cycle_pair_factor((1, 2), (3, 9), 5, 9)


class TestBandedFactor:
    def test_meets_diameter_on_hard_instance(self):
        p = parse_permutation("(1 9)(2 8)(3 4 5 6 7)", 9)
        f = banded_factor(p, 5)
        assert f.length == 10  # 9 - 3 + 2*2 - 0
        assert f.details == {"cycles": 3, "spread": 2, "paired": 0}
        assert verify(f) is None

    def test_pairing_shortens(self):
        p = parse_permutation("(1 7)(3 9)", 9)
        f = banded_factor(p, 5)
        assert f.length == 4  # 9 - 7 + 2*2 - 2*1
        assert f.details["paired"] == 1
        assert verify(f) is None

    def test_identity(self):
        f = banded_factor(identity(9), 5)
        assert f.length == 0

    def test_length_formula_and_soundness(self):
        rng = random.Random(23)
        for _ in range(300):
            m = rng.randint(2, 6)
            n = rng.randint(5, 2 * m + 1)
            p = rand_perm(rng, n)
            f = banded_factor(p, m)
            dec = cycle_decomposition(p)
            s = f.details["spread"]
            t = f.details["paired"]
            assert f.length == n - dec.r + 2 * s - 2 * t
            assert verify(f) is None

    def test_never_beats_the_exact_distance(self, levels_for):
        codec_cache = {}
        rng = random.Random(29)
        for _ in range(200):
            m = rng.randint(2, 4)
            n = rng.randint(5, min(8, 2 * m + 1))
            p = rand_perm(rng, n)
            f = banded_factor(p, m)
            codec = codec_cache.setdefault(n, RankCodec(n))
            assert f.length >= int(levels_for(n, m)[codec.rank(p)])


class TestRecursiveFactor:
    def test_reverse_seven_within_bound(self):
        p = Permutation(tuple(range(7, 0, -1)))
        f = recursive_factor(p, 2)
        assert verify(f) is None
        assert f.length <= ceil(6 / 2) + 7  # one peel plus the exact 6-degree value

    def test_eleven_wide_bound(self):
        rng = random.Random(31)
        for _ in range(60):
            p = rand_perm(rng, 11)
            f = recursive_factor(p, 4)
            assert verify(f) is None
            assert f.length <= 15

    def test_identity(self):
        assert recursive_factor(identity(9), 3).length == 0

    def test_length_within_claimed_bound(self):
        rng = random.Random(37)
        for _ in range(300):
            n = rng.randint(2, 10)
            m = rng.randint(1, n - 1)
            p = rand_perm(rng, n)
            f = recursive_factor(p, m)
            assert verify(f) is None
            assert f.claimed_bound is not None and f.length <= f.claimed_bound

    def test_unrolled_chain_bound_exhaustive(self):
        # each peel obeys its per-step budget, so the whole chain obeys the
        # recurrence unrolled down to an exactly-solved base
        for n, m in [(6, 2), (7, 2), (7, 3), (8, 3)]:
            step = 2 * ceil((n - 1) / m) - 1
            for p in all_permutations(n):
                f = recursive_factor(p, m)
                assert verify(f) is None
                assert f.details.get("peel_steps", 0) <= step
                assert f.length <= f.claimed_bound

    def test_move_last_scheme(self):
        rng = random.Random(41)
        for _ in range(100):
            n = rng.randint(6, 9)
            m = rng.randint(2, (n - 2) // 2)
            p = rand_perm(rng, n)
            f = recursive_factor(p, m, scheme="move_last")
            assert verify(f) is None
            assert f.details.get("peel_steps", 0) <= ceil((n - 1) / m)

    def test_bad_scheme(self):
        with pytest.raises(ValueError, match="scheme"):
            recursive_factor(identity(6), 2, scheme="sideways")


class TestBfsFactor:
    def test_optimal_exhaustive(self, levels_for):
        codec = RankCodec(5)
        for m in (1, 2, 3, 4):
            levels = levels_for(5, m)
            for p in all_permutations(5):
                f = bfs_factor(p, m)
                assert verify(f) is None
                assert f.length == int(levels[codec.rank(p)])


class TestAutoFactor:
    def test_dispatch(self):
        assert auto_factor(identity(9), 1).method == "adjacent"
        assert auto_factor(identity(4), 2).method == "bfs"
        assert auto_factor(identity(9), 8).method == "unrestricted"
        assert auto_factor(identity(9), 5).method == "banded"
        assert auto_factor(identity(9), 2).method in ("move_ends", "move_last")


class TestVerify:
    def test_sound_outputs_pass(self):
        rng = random.Random(43)
        for _ in range(50):
            n = rng.randint(2, 9)
            m = rng.randint(1, n - 1)
            p = rand_perm(rng, n)
            assert verify(auto_factor(p, m)) is None

    def test_detects_missing_factor(self):
        f = adjacent_sort(parse_permutation("3 2 4 5 1"))
        tampered = Factorization(f.target, f.m, f.factors[1:], f.method)
        bad = verify(tampered)
        assert bad is not None and bad.kind in ("product", "parity")

    def test_detects_width_violation_with_index(self):
        f = adjacent_sort(parse_permutation("2 1 3"))
        smuggled = Factorization(
            f.target, f.m, f.factors + (Transposition(1, 3), Transposition(1, 3)), f.method
        )
        bad = verify(smuggled)
        assert bad is not None and bad.kind == "width" and bad.index == 1

    def test_serialisation_shape(self):
        f = adjacent_sort(Permutation((2, 1)))
        assert str(f) == "adjacent 1 1 : (1,2)"


class TestSoundnessSweep:
    def test_every_method_on_random_inputs(self, levels_for):
        rng = random.Random(47)
        codecs = {}
        for _ in range(300):
            n = rng.randint(2, 9)
            m = rng.randint(1, n - 1)
            p = rand_perm(rng, n)
            fs = [adjacent_sort(p), unrestricted_factor(p), recursive_factor(p, m)]
            if 5 <= n <= 2 * m + 1:
                fs.append(banded_factor(p, m))
            for f in fs:
                assert verify(f) is None
                codec = codecs.setdefault(n, RankCodec(n))
                if f.m <= n - 1:
                    d = int(levels_for(n, f.m)[codec.rank(p)])
                    assert f.length >= d
