import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from known_values import combos, ivs
from oie import (CapacityExceeded, InvalidChoice, InvalidInput, Operation, PermutationMap,
                 Unsupported, apply_permutation, count_orderings, csa, csm, end_order,
                 expand_schedule, fold_projection, implement_first, implement_second,
                 make_atomic, oie_perm_equivalent, orbit_space, project_end_ts, void_oie)
from oie.analysis import OperandOrdering


class TestPermEquivalence:
    def test_addition_swap(self, oie_A, oie_B):
        ab = csa((oie_A, oie_B), (1, 2), (0, 22))
        ba = csa((oie_A, oie_B), (2, 1), (0, 22))
        m = oie_perm_equivalent(ab, ba)
        assert m == PermutationMap.swap(2, 1, 2)
        assert apply_permutation(ab.components, m) == ba.components
        assert {apply_permutation(c, m) for c in ab.details} == set(ba.details)

    def test_void(self, oie_A):
        assert oie_perm_equivalent(void_oie(), void_oie()) is not None
        assert oie_perm_equivalent(void_oie(), oie_A) is None

    def test_multiplication_results_differ(self, oie_A, oie_B):
        ab = csm((oie_A, oie_B), (1, 2))
        ba = csm((oie_B, oie_A), (1, 2))
        assert oie_perm_equivalent(ab, ba) is None
        # exhaustive over both 2-permutations
        for p in itertools.permutations((1, 2)):
            m = PermutationMap(p)
            assert not (apply_permutation(ab.components, m) == ba.components
                        and {apply_permutation(c, m) for c in ab.details} == set(ba.details))

    def test_atomic(self, oie_A, oie_B):
        assert oie_perm_equivalent(oie_A, oie_A).is_identity()
        assert oie_perm_equivalent(oie_A, oie_B) is None


class TestOrbits:
    def test_addition_single_class(self, oie_A, oie_B):
        space = orbit_space((oie_A, oie_B), Operation.add(0, 22))
        assert len(space) == 1
        assert [t.indices for t in space.classes[0].index_tuples] == [(1, 2), (2, 1)]

    def test_multiplication_two_classes(self, oie_A, oie_B):
        space = orbit_space((oie_A, oie_B), Operation.mul())
        assert len(space) == 2
        reps = [c.representative for c in space]
        assert set(reps[0].details) == combos([((0, 1), (13, 14)), ((0, 1), (20, 22))])
        assert reps[0].intervals == ivs([(0, 14), (0, 22)])
        assert set(reps[1].details) == combos([((0, 1), (21, 22)), ((13, 14), (21, 22))])
        assert reps[1].intervals == ivs([(0, 22), (13, 22)])

    def test_all_void_is_one_class(self):
        a = make_atomic("a", [(0, 5)])
        b = make_atomic("b", [(1, 6)])
        space = orbit_space((a, b), Operation.mul())
        assert len(space) == 1 and space.classes[0].representative.is_void

    def test_cap(self):
        events = [make_atomic(f"e{k}", [(0, 1)]) for k in range(4)]
        with pytest.raises(CapacityExceeded):
            orbit_space(events, Operation.mul(), n_cap=3)

    def test_operation_needs_window(self):
        with pytest.raises(InvalidInput):
            Operation("add")
        with pytest.raises(InvalidInput):
            Operation("sub")


class TestImplementations:
    def test_first(self, oie_A):
        assert implement_first(oie_A, ivs([(21, 22)]).pop()).overall == ivs([(21, 22)]).pop()
        with pytest.raises(InvalidChoice):
            implement_first(oie_A, ivs([(5, 6)]).pop())
        with pytest.raises(InvalidInput):
            implement_first(void_oie(), ivs([(0, 1)]).pop())

    def test_second(self, oie_A, oie_B):
        ba = csa((oie_B, oie_A), (1, 2), (0, 22))
        choice = tuple(combos([((13, 14), (21, 22))]).pop())
        s = implement_second(ba, choice)
        assert s.overall == ivs([(13, 22)]).pop()
        assert s.per_operand == (("Dr_B", choice[0]), ("Dr_A", choice[1]))
        with pytest.raises(InvalidChoice):
            implement_second(ba, tuple(combos([((13, 14), (13, 14))]).pop()))

    def test_gap_is_visible_only_per_operand(self):
        parts = [make_atomic("s1", [(13, 14)]), make_atomic("s2", [(14, 15)]),
                 make_atomic("s3", [(16, 17)])]
        o = csm(parts, (1, 2, 3))
        (combo,) = o.details
        assert implement_first(o, next(iter(o.intervals))).overall == ivs([(13, 17)]).pop()
        per = dict(implement_second(o, combo).per_operand)
        busy = sorted(per.values())
        assert busy[1].end < busy[2].start  # idle [15, 16)

    def test_expand_nested(self, oie_A, oie_B):
        inner = csa((oie_A, oie_B), (1, 2), (0, 22))
        late = make_atomic("late", [(22, 23)])
        outer = csm((inner, late), (1, 2))
        combo = outer.details.combos[0]
        flat = dict(expand_schedule(outer, combo))
        assert set(flat) == {"Dr_A", "Dr_B", "late"}


class TestProjection:
    def test_multiplication_has_one_ordering(self, oie_A, oie_B):
        out = project_end_ts(csm((oie_A, oie_B), (1, 2)))
        assert [o.ordering for o in out] == [("Dr_A", "Dr_B")]

    def test_addition_has_both(self, oie_A, oie_B):
        out = project_end_ts(csa((oie_B, oie_A), (1, 2), (0, 22)))
        assert {o.ordering for o in out} == {("Dr_A", "Dr_B"), ("Dr_B", "Dr_A")}
        for o in out:
            assert o.source_combo in csa((oie_B, oie_A), (1, 2), (0, 22)).details

    def test_single_combo(self):
        o = csm((make_atomic("x", [(0, 1)]), make_atomic("y", [(1, 2)])), (1, 2))
        assert len(project_end_ts(o)) == 1

    def test_rejects_atomic_and_void(self, oie_A):
        for bad in (oie_A, void_oie()):
            with pytest.raises(InvalidInput):
                project_end_ts(bad)

    def test_end_order_ties_keep_position(self):
        combo = tuple(combos([((0, 2), (1, 2), (0, 1))]).pop())
        assert end_order(combo) == (2, 0, 1)

    def test_count_orderings(self, oie_A, oie_B):
        assert count_orderings(csa((oie_B, oie_A), (1, 2), (0, 22))) == 2


class TestFold:
    def orderings(self, labels):
        return [OperandOrdering(p, ()) for p in itertools.permutations(labels)]

    def test_min(self):
        values = {"A": "9.58", "B": "9.91", "C": "10.01"}
        assert fold_projection(self.orderings("ABC"), values, "min") == Fraction(479, 50)

    def test_sum_and_equal_values(self):
        assert fold_projection(self.orderings("ABC"), {"A": 1, "B": 2, "C": 3}, "sum") == 6
        for op in ("min", "max", "sum"):
            got = fold_projection(self.orderings("AB"), {"A": 4, "B": 4}, op)
            assert got == (8 if op == "sum" else 4)

    def test_unsupported(self):
        with pytest.raises(Unsupported):
            fold_projection(self.orderings("AB"), {"A": 1, "B": 2}, "first")

    def test_missing_value(self):
        with pytest.raises(InvalidInput):
            fold_projection(self.orderings("AB"), {"A": 1}, "min")


@given(st.integers(2, 4), st.randoms(use_true_random=False))
def test_addition_orbit_is_one_class(n, rnd):
    events = oracles.anchored_events(rnd, n)
    space = orbit_space(events, Operation.add(0, 8))
    assert len(space) == 1
    assert len(space.classes[0].index_tuples) == len(list(itertools.permutations(range(n))))


def test_witnesses_match_brute_force(oie_A, oie_B, oie_C):
    events = (oie_A, oie_B, oie_C)
    base = csa(events, (1, 2, 3), (0, 22))
    for idx in itertools.permutations((1, 2, 3)):
        other = csa(events, idx, (0, 22))
        m = oie_perm_equivalent(base, other)
        assert m is not None
        candidates = [p for p in oracles.all_witnesses(base.components, other.components)
                      if {oracles.apply_perm(c, p) for c in base.details} == set(other.details)]
        assert m.images == min(candidates)


def test_fold_agrees_on_random_values(oie_A, oie_B):
    rnd = random.Random(7)
    out = project_end_ts(csa((oie_B, oie_A), (1, 2), (0, 22)))
    for _ in range(50):
        values = {"Dr_A": Fraction(rnd.randint(1, 99), rnd.randint(1, 9)),
                  "Dr_B": Fraction(rnd.randint(1, 99), rnd.randint(1, 9))}
        assert fold_projection(out, values, "min") == min(values.values())
