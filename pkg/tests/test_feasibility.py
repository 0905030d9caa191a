import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from known_values import DOCTORS_ADD_F, FATHER, FATHER_SON_INFEASIBLE, SON, combos, ivs
from oie import (CapacityExceeded, ConstraintSet, Forbidden, IndexTuple, Interval, InvalidInput,
                 MinGap, NoOverlap, cartesian_by_index, feasible_combos, infeasible_combos,
                 is_mutually_independent, make_atomic, void_oie)


def swapped(rows):
    return {(b, a) for a, b in rows}


class TestIndexTuple:
    def test_all_is_lexicographic(self):
        got = [t.indices for t in IndexTuple.all(3)]
        assert got == sorted(itertools.permutations((1, 2, 3)))

    @pytest.mark.parametrize("bad", [(), (1, 1), (0, 1), (2, 3)])
    def test_rejects(self, bad):
        with pytest.raises(InvalidInput):
            IndexTuple(bad)


class TestCartesian:
    def test_father_son_nine(self):
        got = cartesian_by_index([ivs(FATHER), ivs(SON)], (1, 2))
        assert set(got) == combos(itertools.product(FATHER, SON))
        assert len(got) == 9

    def test_empty_member(self):
        assert not cartesian_by_index([ivs(FATHER), set()], (1, 2))

    def test_reversed_index(self):
        got = cartesian_by_index([ivs([(0, 1)]), ivs([(2, 3)])], (2, 1))
        assert set(got) == combos([((2, 3), (0, 1))])

    def test_length_mismatch(self):
        with pytest.raises(InvalidInput):
            cartesian_by_index([ivs([(0, 1)])], (1, 2))

    def test_capacity(self):
        fam = [ivs([(k, k + 1) for k in range(10)])] * 4
        with pytest.raises(CapacityExceeded) as err:
            cartesian_by_index(fam, (1, 2, 3, 4), max_product=9_999)
        assert err.value.size == 10_000

    def test_output_is_canonical(self):
        fam = [ivs([(3, 4), (0, 1)]), ivs([(5, 6), (1, 2)])]
        got = cartesian_by_index(fam, (1, 2)).combos
        assert list(got) == sorted(got)


class TestFatherSon:
    def test_infeasible_and_feasible(self, father, son, father_son_cs):
        assert set(infeasible_combos((father, son), (1, 2), father_son_cs)) == combos(FATHER_SON_INFEASIBLE)
        feasible = feasible_combos((father, son), (1, 2), father_son_cs)
        assert set(feasible) == combos([
            ((1830, 1900), (1860, 1930)),
            ((1910, 1990), (1930, 2010)),
            ((2050, 2140), (2077, 2140)),
        ])

    def test_reversed_order_is_swap_image(self, father, son, father_son_cs):
        bad = infeasible_combos((father, son), (2, 1), father_son_cs)
        assert set(bad) == swapped(combos(FATHER_SON_INFEASIBLE))
        good = feasible_combos((father, son), (2, 1), father_son_cs)
        assert set(good) == swapped(set(feasible_combos((father, son), (1, 2), father_son_cs)))

    def test_not_independent(self, father, son, father_son_cs):
        assert not is_mutually_independent((father, son), father_son_cs)


class TestDoctors:
    def test_pair_all_feasible(self, oie_A, oie_B):
        assert set(feasible_combos((oie_B, oie_A), (1, 2))) == combos(DOCTORS_ADD_F)

    def test_three_doctor_patterns_only_bite_on_triples(self, oie_A, oie_B, oie_C, three_doctor_cs):
        assert is_mutually_independent((oie_A, oie_B), three_doctor_cs)
        assert is_mutually_independent((oie_B, oie_C), three_doctor_cs)
        assert not is_mutually_independent((oie_A, oie_B, oie_C), three_doctor_cs)
        bad = infeasible_combos((oie_A, oie_B, oie_C), (1, 2, 3), three_doctor_cs)
        assert set(bad) == combos([((0, 1), (0, 1), (0, 1)), ((21, 22), (20, 22), (19, 22))])

    def test_forbid_everything(self, oie_A, oie_B):
        cs = ConstraintSet.from_positional(["Dr_A", "Dr_B"], itertools.product(
            sorted(oie_A.intervals), sorted(oie_B.intervals)))
        assert not feasible_combos((oie_A, oie_B), (1, 2), cs)

    def test_empty_cs(self, oie_A, oie_B):
        assert not infeasible_combos((oie_A, oie_B), (1, 2))


class TestRules:
    def test_no_overlap(self):
        a = make_atomic("a", [(0, 2), (2, 4)])
        b = make_atomic("b", [(1, 3), (4, 5)])
        cs = ConstraintSet(rules=(NoOverlap({"a", "b"}),))
        assert set(feasible_combos((a, b), (1, 2), cs)) == combos([((0, 2), (4, 5)), ((2, 4), (4, 5))])

    def test_min_gap_either_order(self):
        a = make_atomic("a", [(0, 1), (5, 6)])
        b = make_atomic("b", [(2, 3)])
        cs = ConstraintSet(rules=(MinGap("a", "b", 2),))
        # (0,1)->(2,3) gap 1; (2,3)->(5,6) gap 2
        assert set(feasible_combos((a, b), (1, 2), cs)) == combos([((5, 6), (2, 3))])

    def test_rule_validation(self):
        with pytest.raises(InvalidInput):
            NoOverlap({"a"})
        with pytest.raises(InvalidInput):
            MinGap("a", "a", 1)
        with pytest.raises(InvalidInput):
            MinGap("a", "b", -1)
        with pytest.raises(InvalidInput):
            Forbidden({})

    def test_ambiguous_label(self):
        a = make_atomic("a", [(0, 1)])
        cs = ConstraintSet([{"a": (0, 1)}])
        with pytest.raises(InvalidInput):
            infeasible_combos((a, a), (1, 2), cs)

    def test_check_ids(self):
        cs = ConstraintSet([{"a": (0, 1), "z": (0, 1)}])
        with pytest.raises(InvalidInput):
            cs.check_ids(["a", "b"])

    def test_pattern_with_unknown_interval_never_matches(self):
        a = make_atomic("a", [(0, 1)])
        b = make_atomic("b", [(0, 1)])
        cs = ConstraintSet([{"a": (5, 6), "b": (0, 1)}])
        assert len(feasible_combos((a, b), (1, 2), cs)) == 1


def test_void_member_has_no_independence(oie_A):
    with pytest.raises(InvalidInput):
        is_mutually_independent((oie_A, void_oie()))


def test_single_event_is_independent(oie_A):
    assert is_mutually_independent((oie_A,))


small_sets = st.sets(st.tuples(st.integers(0, 6), st.integers(1, 3)), min_size=1, max_size=3).map(
    lambda s: sorted(Interval(a, a + d) for a, d in s))


@given(st.lists(small_sets, min_size=2, max_size=3), st.data())
def test_split_matches_brute_force(families, data):
    events = [make_atomic(f"e{k}", fam) for k, fam in enumerate(families)]
    idx = data.draw(st.permutations(range(1, len(events) + 1)))
    ordered = [events[i - 1] for i in idx]
    product = list(itertools.product(*(sorted(e.intervals) for e in ordered)))
    banned = data.draw(st.lists(st.sampled_from(product), max_size=4))
    cs = ConstraintSet.from_positional([e.label for e in ordered], banned)
    bad = infeasible_combos(events, idx, cs)
    good = feasible_combos(events, idx, cs)
    assert set(bad) == set(banned)
    assert set(good) | set(bad) == set(product) and not set(good) & set(bad)
    labels = [e.label for e in ordered]
    expected = {c for c in product if not oracles.violates(c, labels, [tuple(zip(labels, b)) for b in banned])}
    assert set(good) == expected
