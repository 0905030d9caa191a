"""Permutational equivalence, orbit spaces, implementations and projection."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import CapacityExceeded, InvalidChoice, InvalidInput, Unsupported
from .feasibility import EMPTY_CONSTRAINTS, ConstraintSet, IndexTuple
from .model import (OIE, Interval, PermutationMap, apply_permutation, bound_combo,
                    to_rational)
from .ops import ADD, MUL, PAIRWISE, DomainWindow, evaluate_operation

DEFAULT_ORBIT_CAP = 6


def _component_witnesses(a: Sequence[OIE], b: Sequence[OIE]):
    """All M with ``apply_permutation(a, M) == b``, lexicographically."""
    n = len(a)
    images = [0] * n
    used = [False] * n

    def extend(i):
        if i == n:
            yield PermutationMap(tuple(images))
            return
        for j in range(n):
            if not used[j] and b[j] == a[i]:
                used[j] = True
                images[i] = j + 1
                yield from extend(i + 1)
                used[j] = False

    yield from extend(0)


def oie_perm_equivalent(a: OIE, b: OIE) -> PermutationMap | None:
    """Smallest M relating ``a`` to ``b`` by one joint reordering, if any.

    M must carry the components of ``a`` onto those of ``b`` and every combo
    of F(a) onto a combo of F(b) bijectively; I and A must be equal. Void is
    equivalent only to itself, witnessed by the empty permutation.
    """
    if a.is_void or b.is_void:
        return PermutationMap(()) if a.is_void and b.is_void else None
    if a.intervals != b.intervals or a.atoms != b.atoms:
        return None
    if len(a.components) != len(b.components) or len(a.details) != len(b.details):
        return None
    if not a.components:
        return PermutationMap.identity(1) if a == b else None
    target = set(b.details)
    for m in _component_witnesses(a.components, b.components):
        if all(apply_permutation(c, m) in target for c in a.details):
            return m
    return None


@dataclass(frozen=True)
class Operation:
    """Operation descriptor for orbit enumeration: ``add`` needs a window."""

    kind: str
    window: DomainWindow | None = None

    def __post_init__(self):
        if self.kind not in (ADD, MUL):
            raise InvalidInput(f"unknown operation {self.kind!r}")
        if self.kind == ADD and self.window is None:
            raise InvalidInput("orbit of addition needs a domain window")
        if self.window is not None and not isinstance(self.window, DomainWindow):
            object.__setattr__(self, "window", DomainWindow(*self.window))

    @classmethod
    def add(cls, alpha, beta) -> Operation:
        return cls(ADD, DomainWindow(alpha, beta))

    @classmethod
    def mul(cls) -> Operation:
        return cls(MUL)


@dataclass(frozen=True)
class OrbitClass:
    representative: OIE
    index_tuples: tuple


@dataclass(frozen=True)
class OrbitSpace:
    classes: tuple

    def __len__(self):
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)


def orbit_space(events: Sequence[OIE], op: Operation, cs: ConstraintSet = EMPTY_CONSTRAINTS,
                n_cap: int = DEFAULT_ORBIT_CAP, *, atom_check: str = PAIRWISE,
                max_product=None) -> OrbitSpace:
    """Partition the results under all n! index tuples into equivalence classes.

    Index tuples are visited in lexicographic order, so each representative is
    the result under the smallest tuple of its class.
    """
    n = len(events)
    if n > n_cap:
        raise CapacityExceeded("orbit enumeration operands", n, n_cap)
    classes: list = []
    for idx in IndexTuple.all(n):
        result = evaluate_operation(op.kind, events, idx, op.window, cs, atom_check=atom_check,
                                    max_product=max_product).result
        for rep, members in classes:
            if oie_perm_equivalent(rep, result) is not None:
                members.append(idx)
                break
        else:
            classes.append((result, [idx]))
    return OrbitSpace(tuple(OrbitClass(rep, tuple(members)) for rep, members in classes))


@dataclass(frozen=True)
class ScheduleAssignment:
    overall: Interval
    per_operand: tuple = ()


def implement_first(o: OIE, chosen: Interval) -> ScheduleAssignment:
    if o.is_void:
        raise InvalidInput("the void OIE cannot be implemented")
    if chosen not in o.intervals:
        raise InvalidChoice(f"{chosen!r} is not among the overall intervals {sorted(o.intervals)}")
    return ScheduleAssignment(chosen)


def implement_second(o: OIE, chosen: tuple) -> ScheduleAssignment:
    if o.is_void:
        raise InvalidInput("the void OIE cannot be implemented")
    chosen = tuple(chosen)
    if chosen not in o.details:
        raise InvalidChoice(f"{chosen!r} is not a feasible schedule of this OIE")
    labels = [c.label for c in o.components] if o.components else [o.label]
    return ScheduleAssignment(bound_combo(chosen), tuple(zip(labels, chosen)))


def expand_schedule(o: OIE, chosen: tuple) -> tuple:
    """Push a type-2 choice down to atomic events.

    A composite component assigned interval ``x`` is expanded with the first
    (canonical order) combo of its own F whose bound is ``x``.
    """
    assignment = implement_second(o, chosen)
    if not o.components:
        return assignment.per_operand
    out = []
    for component, interval in zip(o.components, chosen):
        if component.components:
            inner = next(c for c in component.details if bound_combo(c) == interval)
            out.extend(expand_schedule(component, inner))
        else:
            out.append((component.label, interval))
    return tuple(out)


@dataclass(frozen=True)
class OperandOrdering:
    ordering: tuple
    source_combo: tuple


def end_order(combo: Sequence[Interval]) -> tuple:
    """Positions (0-based) sorted by end timestamp; ties keep position order."""
    return tuple(sorted(range(len(combo)), key=lambda k: combo[k].end))


def project_end_ts(o: OIE) -> tuple:
    """Distinct operand orderings by ascending end time across F.

    Returned in order of first appearance along the canonical F order; each
    ordering keeps the first combo that produced it.
    """
    if o.is_void or not o.components:
        raise InvalidInput("projection needs a non-void composite OIE")
    labels = [c.label for c in o.components]
    seen = {}
    for combo in o.details:
        key = tuple(labels[k] for k in end_order(combo))
        if key not in seen:
            seen[key] = OperandOrdering(key, combo)
    return tuple(seen.values())


def _sum(values):
    return sum(values, Fraction(0))


REDUCERS = {"min": min, "max": max, "sum": _sum}


def fold_projection(orderings: Sequence[OperandOrdering], values: Mapping, op: str = "min"):
    """Apply a permutation-invariant reducer along every ordering; all must agree."""
    if op not in REDUCERS:
        raise Unsupported(f"reducer {op!r} is not permutation-invariant; use one of {sorted(REDUCERS)}")
    if not orderings:
        raise InvalidInput("nothing to fold: no orderings")
    reduce = REDUCERS[op]
    values = {k: to_rational(v) for k, v in values.items()}
    results = set()
    for ordering in orderings:
        missing = [label for label in ordering.ordering if label not in values]
        if missing:
            raise InvalidInput(f"no value for operands {missing}")
        results.add(reduce([values[label] for label in ordering.ordering]))
    if len(results) != 1:
        raise AssertionError(f"orderings disagree under {op}: {sorted(results)}")
    return results.pop()


def count_orderings(o: OIE) -> int:
    """Number of distinct end-time orderings realised in F (brute-force helper)."""
    return len({end_order(c) for c in o.details})


__all__ = [
    "Operation", "OrbitClass", "OrbitSpace", "OperandOrdering", "ScheduleAssignment",
    "oie_perm_equivalent", "orbit_space", "implement_first", "implement_second",
    "expand_schedule", "project_end_ts", "fold_projection", "end_order", "count_orderings",
]
