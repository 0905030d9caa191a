"""Index tuples, naturally-isomorphic products and the constraint model.

Constraints name operands by label (an atomic OIE's label is its atom id),
so a :class:`ConstraintSet` is written once and answers queries under any
operand order. A constraint that mentions an id absent from the current
operands does not apply to that operation.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import _kernels as K
from .errors import CapacityExceeded, InvalidInput
from .model import OIE, ComboSet, Interval, intervals_family, to_rational

DEFAULT_MAX_PRODUCT = 100_000


@dataclass(frozen=True)
class IndexTuple:
    """A permutation of ``1..n`` written as the order operands are taken in."""

    indices: tuple

    def __post_init__(self):
        indices = tuple(int(i) for i in self.indices)
        if not indices or sorted(indices) != list(range(1, len(indices) + 1)):
            raise InvalidInput(f"not an index tuple over 1..{len(indices)}: {indices}")
        object.__setattr__(self, "indices", indices)

    @classmethod
    def ascending(cls, n: int) -> IndexTuple:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def all(cls, n: int):
        """Every index tuple of length ``n`` in lexicographic order."""
        for perm in itertools.permutations(range(1, n + 1)):
            yield cls(perm)

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __getitem__(self, k):
        return self.indices[k]

    def __repr__(self):
        return f"IndexTuple{self.indices}"

    def take(self, items: Sequence) -> tuple:
        if len(items) != len(self.indices):
            raise InvalidInput(f"{len(items)} operands vs index tuple of length {len(self.indices)}")
        return tuple(items[i - 1] for i in self.indices)


def _as_idx(idx) -> IndexTuple:
    return idx if isinstance(idx, IndexTuple) else IndexTuple(tuple(idx))


@dataclass(frozen=True)
class Forbidden:
    """A banned joint choice: operand label -> the interval it may not pair with."""

    assignment: tuple

    def __post_init__(self):
        items = self.assignment.items() if isinstance(self.assignment, dict) else self.assignment
        pairs = []
        for label, interval in items:
            if not isinstance(interval, Interval):
                interval = Interval(*interval)
            pairs.append((str(label), interval))
        labels = [p[0] for p in pairs]
        if not pairs or len(set(labels)) != len(labels):
            raise InvalidInput(f"forbidden pattern needs distinct operand ids: {labels}")
        object.__setattr__(self, "assignment", tuple(sorted(pairs)))

    @property
    def ids(self) -> frozenset:
        return frozenset(label for label, _ in self.assignment)


@dataclass(frozen=True)
class NoOverlap:
    """No two of the named operands may overlap."""

    ids: frozenset

    def __post_init__(self):
        ids = frozenset(str(i) for i in self.ids)
        if len(ids) < 2:
            raise InvalidInput("no_overlap needs at least two operand ids")
        object.__setattr__(self, "ids", ids)


@dataclass(frozen=True)
class MinGap:
    """The two named operands must be at least ``gap`` apart, in either order."""

    first: str
    second: str
    gap: Fraction

    def __post_init__(self):
        gap = to_rational(self.gap)
        if gap < 0:
            raise InvalidInput(f"min_gap needs a non-negative gap, got {gap}")
        if self.first == self.second:
            raise InvalidInput("min_gap needs two distinct operand ids")
        object.__setattr__(self, "gap", gap)

    @property
    def ids(self) -> frozenset:
        return frozenset((self.first, self.second))


@dataclass(frozen=True)
class ConstraintSet:
    forbidden: frozenset = frozenset()
    rules: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "forbidden", frozenset(
            f if isinstance(f, Forbidden) else Forbidden(f) for f in self.forbidden))
        for rule in self.rules:
            if not isinstance(rule, (NoOverlap, MinGap)):
                raise InvalidInput(f"unknown rule {rule!r}")
        object.__setattr__(self, "rules", tuple(self.rules))

    @classmethod
    def from_positional(cls, labels: Sequence[str], patterns: Iterable, rules=()) -> ConstraintSet:
        """Build from patterns written in canonical operand order ``1..n``."""
        labels = list(labels)
        forbidden = []
        for pattern in patterns:
            if len(pattern) != len(labels):
                raise InvalidInput(f"pattern of length {len(pattern)} for {len(labels)} operands")
            forbidden.append(Forbidden(tuple(zip(labels, pattern))))
        return cls(frozenset(forbidden), tuple(rules))

    @property
    def ids(self) -> frozenset:
        out = set()
        for f in self.forbidden:
            out |= f.ids
        for r in self.rules:
            out |= r.ids
        return frozenset(out)

    def check_ids(self, known: Iterable[str]) -> None:
        """Raise if any constraint names an id outside ``known``."""
        missing = self.ids - frozenset(known)
        if missing:
            raise InvalidInput(f"constraints reference unknown operand ids: {sorted(missing)}")

    def __bool__(self):
        return bool(self.forbidden or self.rules)


EMPTY_CONSTRAINTS = ConstraintSet()


# -- array-level machinery shared with sequential-ops -----------------------

class Product:
    """The naturally-isomorphic product of an interval family, as arrays.

    ``choices[r, k]`` indexes ``factors[k]`` (each factor sorted), so rows are
    in canonical lexicographic order. ``starts``/``ends`` hold the encoded
    timestamps of each chosen interval.
    """

    def __init__(self, family: Sequence[Iterable[Interval]], extra_times=(), max_product=None):
        self.factors = [sorted(f) for f in family]
        sizes = [len(f) for f in self.factors]
        cap = DEFAULT_MAX_PRODUCT if max_product is None else max_product
        total = math.prod(sizes) if sizes else 0
        if total > cap:
            raise CapacityExceeded("cartesian product", total, cap)
        times = [t for f in self.factors for x in f for t in (x.start, x.end)]
        self.codec = K.TimeCodec(itertools.chain(times, extra_times))
        self.choices = K.product_choices(sizes)
        n = len(self.factors)
        m = self.choices.shape[0]
        self.starts = np.empty((m, n), dtype=self.codec.dtype)
        self.ends = np.empty((m, n), dtype=self.codec.dtype)
        for k, factor in enumerate(self.factors):
            if m == 0:
                break
            self.starts[:, k] = self.codec.encode_many([x.start for x in factor])[self.choices[:, k]]
            self.ends[:, k] = self.codec.encode_many([x.end for x in factor])[self.choices[:, k]]

    @property
    def size(self) -> int:
        return self.choices.shape[0]

    @property
    def width(self) -> int:
        return len(self.factors)

    def combos(self, keep: np.ndarray | None = None) -> ComboSet:
        rows = self.choices if keep is None else self.choices[keep]
        factors = self.factors
        return ComboSet((tuple(factors[k][c] for k, c in enumerate(row)) for row in rows.tolist()),
                        length=self.width)


def _positions_by_label(operands: Sequence[OIE]) -> dict:
    where = {}
    for k, o in enumerate(operands):
        where.setdefault(o.label, []).append(k)
    return where


def _applicable(ids: frozenset, where: dict) -> list | None:
    """Column of each id if all are present, else None; duplicates are an error."""
    if not ids <= where.keys():
        return None
    cols = {}
    for label in ids:
        if len(where[label]) > 1:
            raise InvalidInput(f"operand id {label!r} occurs more than once; constraint is ambiguous")
        cols[label] = where[label][0]
    return cols


def infeasible_mask(product: Product, operands: Sequence[OIE], cs: ConstraintSet) -> np.ndarray:
    """Rows of ``product`` (columns = ``operands`` in order) that violate ``cs``."""
    mask = np.zeros(product.size, dtype=bool)
    if not cs or product.size == 0:
        return mask
    where = _positions_by_label(operands)
    rows = []
    for f in sorted(cs.forbidden, key=lambda f: f.assignment):
        cols = _applicable(f.ids, where)
        if cols is None:
            continue
        pattern = np.full(product.width, -1, dtype=np.int64)
        matchable = True
        for label, interval in f.assignment:
            k = cols[label]
            try:
                pattern[k] = product.factors[k].index(interval)
            except ValueError:
                matchable = False
                break
        if matchable:
            rows.append(pattern)
    if rows:
        mask |= K.pattern_hits(product.choices, np.array(rows, dtype=np.int64))
    for rule in cs.rules:
        cols = _applicable(rule.ids, where)
        if cols is None:
            continue
        if isinstance(rule, NoOverlap):
            mask |= K.overlap_hits(product.starts, product.ends, sorted(cols.values()))
        else:
            gap = product.codec.encode(rule.gap)
            mask |= K.gap_hits(product.starts, product.ends, cols[rule.first], cols[rule.second], gap)
    return mask


def _product_for(events: Sequence[OIE], idx: IndexTuple, cs: ConstraintSet, max_product, extra=()):
    operands = idx.take(events)
    gaps = [r.gap for r in cs.rules if isinstance(r, MinGap)]
    product = Product(intervals_family(operands), extra_times=list(extra) + gaps,
                      max_product=max_product)
    return operands, product


# -- public operations -------------------------------------------------------

def cartesian_by_index(family: Sequence[Iterable[Interval]], idx, max_product=None) -> ComboSet:
    """Flattened product where position ``k`` draws from ``family[idx[k] - 1]``."""
    idx = _as_idx(idx)
    ordered = idx.take(list(family))
    return Product(ordered, max_product=max_product).combos()


def infeasible_combos(events: Sequence[OIE], idx, cs: ConstraintSet = EMPTY_CONSTRAINTS,
                      max_product=None) -> ComboSet:
    idx = _as_idx(idx)
    operands, product = _product_for(events, idx, cs, max_product)
    return product.combos(infeasible_mask(product, operands, cs))


def feasible_combos(events: Sequence[OIE], idx, cs: ConstraintSet = EMPTY_CONSTRAINTS,
                    max_product=None) -> ComboSet:
    idx = _as_idx(idx)
    operands, product = _product_for(events, idx, cs, max_product)
    return product.combos(~infeasible_mask(product, operands, cs))


def is_mutually_independent(events: Sequence[OIE], cs: ConstraintSet = EMPTY_CONSTRAINTS,
                            max_product=None) -> bool:
    if any(e.is_void for e in events):
        raise InvalidInput("mutual independence is undefined for a void member")
    if not events:
        return True
    idx = IndexTuple.ascending(len(events))
    return not infeasible_combos(events, idx, cs, max_product=max_product)
