import pytest

from permband.cayley import bfs_diameter
from permband.codec import parse_permutation
from permband.extremal import (
    EXACT_DELTA,
    ExtremalTag,
    classification_report,
    delta_bounds,
    delta_closed_form,
    enumerate_extremal,
    is_extremal,
)
from permband.perm import Permutation, identity

from oracles import brute_levels


class TestClosedForm:
    def test_examples(self):
        assert delta_closed_form(9, 4) == 10
        assert delta_closed_form(6, 1) == 15
        assert delta_closed_form(10, 5) == 11
        assert delta_closed_form(8, 2) is None

    def test_adjacent_band(self):
        for n in range(2, 13):
            assert delta_closed_form(n, 1) == n * (n - 1) // 2

    def test_full_band(self):
        for n in range(2, 13):
            assert delta_closed_form(n, n - 1) == n - 1

    def test_wide_band_formula(self):
        for n in range(5, 13):
            for m in range((n + 1) // 2, n):
                assert delta_closed_form(n, m) == n + (n - m) // 2 - 1

    def test_regime_gate(self):
        assert delta_closed_form(11, 2) is None
        assert delta_closed_form(4, 2) is None  # small degrees have no formula

    def test_invalid(self):
        with pytest.raises(ValueError):
            delta_closed_form(5, 5)

    def test_agrees_with_exact_table(self):
        for (n, m), value in EXACT_DELTA.items():
            cf = delta_closed_form(n, m)
            if cf is not None:
                assert cf == value


class TestDeltaBounds:
    def test_paper_grade_bounds(self):
        assert delta_bounds(11, 2).upper == 24
        assert delta_bounds(11, 3).upper == 18
        assert delta_bounds(11, 4).upper == 15

    def test_exact_when_closed(self):
        b = delta_bounds(12, 1)
        assert b.exact and b.lower == b.upper == 66

    def test_exact_from_table(self):
        b = delta_bounds(10, 3)
        assert b.exact and b.upper == 14

    def test_upper_dominates_exact_values(self):
        for (n, m), value in EXACT_DELTA.items():
            b = delta_bounds(n, m, known={})
            assert b.lower <= value <= b.upper

    def test_recursions_without_table(self):
        # strip the cached exact values: the pure recursion must still hold
        b = delta_bounds(11, 2, known={(10, 2): 19})
        assert b.upper == 24

    def test_consistency(self):
        for n in range(2, 14):
            for m in range(1, n):
                b = delta_bounds(n, m)
                assert b.lower <= b.upper
                assert b.exact == (b.lower == b.upper)


class TestIsExtremal:
    def test_even_shape(self):
        p = parse_permutation("7 3 4 5 6 2 1")  # (1 7)(2 3 4 5 6)
        case = is_extremal(p, 5)
        assert case.tag == ExtremalTag.PAIR_MATCHING
        assert case.d == 1 and case.pairs == ((1, 7),)

    def test_low_triple_shape(self):
        p = parse_permutation("(1 9 2)(3 4 5 6 7 8)", 9)
        case = is_extremal(p, 6)
        assert case.tag == ExtremalTag.LOW_TRIPLE
        assert case.d == 1 and case.special == (1, 9, 2)

    def test_identity_is_none(self):
        assert is_extremal(identity(9), 5).tag == ExtremalTag.NONE

    def test_full_band_cycle(self):
        assert is_extremal(Permutation((2, 3, 4, 5, 1)), 4).tag == ExtremalTag.FULL_CYCLE
        assert is_extremal(identity(5), 4).tag == ExtremalTag.NONE

    def test_adjacent_band_reversal(self):
        assert is_extremal(Permutation((5, 4, 3, 2, 1)), 1).tag == ExtremalTag.REVERSAL
        assert is_extremal(identity(5), 1).tag == ExtremalTag.NONE

    def test_regime_error(self):
        with pytest.raises(ValueError, match="classification"):
            is_extremal(identity(9), 3)

    def test_matches_enumeration_exactly(self):
        for n, m in [(5, 2), (5, 3), (6, 3), (6, 4), (7, 4), (7, 5)]:
            claimed = {p.image for p in enumerate_extremal(n, m)}
            from permband.perm import all_permutations

            for p in all_permutations(n):
                hit = is_extremal(p, m).tag != ExtremalTag.NONE
                assert hit == (p.image in claimed), (n, m, p)


class TestEnumerate:
    def test_counts(self):
        assert len(list(enumerate_extremal(7, 5))) == 24
        assert len(list(enumerate_extremal(5, 4))) == 24  # all 5-cycles
        assert len(list(enumerate_extremal(6, 1))) == 1

    def test_sorted_unique(self):
        perms = [p.image for p in enumerate_extremal(6, 3)]
        assert perms == sorted(set(perms))

    def test_against_brute_force(self):
        for n, m in [(5, 2), (5, 3), (5, 4), (6, 3), (6, 4), (6, 5)]:
            oracle = brute_levels(n, m)
            delta = max(oracle.values())
            farthest = {p for p, d in oracle.items() if d == delta}
            assert {p.image for p in enumerate_extremal(n, m)} == farthest

    def test_distance_of_every_member(self):
        rep = bfs_diameter(7, 4, collect_farthest=True)
        assert rep.delta == 7 + (7 - 4) // 2 - 1
        assert {p.image for p in enumerate_extremal(7, 4)} == {
            p.image for p in rep.farthest
        }


class TestClassificationReport:
    def test_matches_on_regime_pair(self):
        rep = classification_report(6, 4)
        assert rep.matches and not rep.missing and not rep.extra

    def test_structure_on_full_band(self):
        rep = classification_report(5, 4)
        assert rep.matches and rep.delta == 4
