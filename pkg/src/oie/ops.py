"""Domain and ascending filters, and the operations built on them.

``csa`` is complete sequential addition under a window ``(alpha, beta)``,
``natural_csa`` the same with the window taken from the operands, and
``csm`` complete sequential multiplication. Infeasible plans come back as
the void OIE; :func:`evaluate_operation` also reports which step voided.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _kernels as K
from .errors import InvalidInput, PreconditionViolated
from .feasibility import EMPTY_CONSTRAINTS, ConstraintSet, _as_idx, _product_for, infeasible_mask
from .model import OIE, ComboSet, derive_intervals, format_rational, to_rational, void_oie

ADD = "add"
MUL = "mul"

PAIRWISE = "pairwise"
AGGREGATE = "aggregate"


@dataclass(frozen=True)
class DomainWindow:
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        alpha, beta = to_rational(self.alpha), to_rational(self.beta)
        if not alpha < beta:
            raise InvalidInput(f"domain window needs alpha < beta, got ({alpha}, {beta})")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)


def _as_window(w) -> DomainWindow:
    return w if isinstance(w, DomainWindow) else DomainWindow(*w)


def _combo_arrays(cs: ComboSet, extra=()):
    """Pack a ComboSet into a one-factor-per-row Product-like view."""
    combos = cs.combos
    codec = K.TimeCodec([t for c in combos for x in c for t in (x.start, x.end)] + list(extra))
    starts = np.array([[codec.encode(x.start) for x in c] for c in combos], dtype=codec.dtype)
    ends = np.array([[codec.encode(x.end) for x in c] for c in combos], dtype=codec.dtype)
    return codec, starts.reshape(len(combos), cs.length), ends.reshape(len(combos), cs.length)


def _domain_keep(starts, ends, alpha, beta, feasible=None):
    keep = K.window_mask(starts, ends, alpha, beta)
    if feasible is not None:
        keep &= feasible
    if not keep.any() or not K.touches_bounds(starts, ends, keep, alpha, beta):
        return None
    return keep


def domain_filtered_subset(cs: ComboSet, w) -> ComboSet:
    """Combos inside ``[alpha, beta]``, provided every position reaches both ends.

    If for some position no kept combo starts exactly at ``alpha``, or none
    ends exactly at ``beta``, the result is empty.
    """
    w = _as_window(w)
    if not cs:
        raise InvalidInput("domain filter needs a non-empty combo set")
    codec, starts, ends = _combo_arrays(cs, (w.alpha, w.beta))
    keep = _domain_keep(starts, ends, codec.encode(w.alpha), codec.encode(w.beta))
    if keep is None:
        return ComboSet(length=cs.length)
    return ComboSet((c for c, k in zip(cs, keep) if k), length=cs.length)


def asc_order_filtered_subset(cs: ComboSet) -> ComboSet:
    """Combos whose every earlier member ends no later than every later one starts."""
    if not cs:
        raise InvalidInput("ascending filter needs a non-empty combo set")
    _, starts, ends = _combo_arrays(cs)
    keep = K.ascending_mask(starts, ends)
    return ComboSet((c for c, k in zip(cs, keep) if k), length=cs.length)


@dataclass(frozen=True)
class Outcome:
    """Result of one operation; ``void_step`` is 1, 2 or 3 when it voided."""

    result: OIE
    void_step: int | None = None

    @property
    def is_void(self) -> bool:
        return self.result.is_void


VOID_REASONS = {
    1: "void or shared-atom operand",
    2: "no feasible combination",
    3: "filter left nothing",
}


def shares_atoms(operands: Sequence[OIE], mode: str = PAIRWISE) -> bool:
    if mode == AGGREGATE:
        if not operands:
            return False
        common = frozenset(operands[0].atoms)
        for o in operands[1:]:
            common &= o.atoms
        return bool(common)
    if mode != PAIRWISE:
        raise InvalidInput(f"unknown atom-intersection mode {mode!r}")
    seen = set()
    for o in operands:
        if seen & o.atoms:
            return True
        seen |= o.atoms
    return False


def evaluate_operation(kind: str, events: Sequence[OIE], idx, window=None,
                       cs: ConstraintSet = EMPTY_CONSTRAINTS, *, atom_check: str = PAIRWISE,
                       max_product=None) -> Outcome:
    """Run ``csa`` (``kind="add"``) or ``csm`` (``kind="mul"``) step by step."""
    idx = _as_idx(idx)
    if kind not in (ADD, MUL):
        raise InvalidInput(f"unknown operation {kind!r}")
    if kind == ADD:
        if window is None:
            raise InvalidInput("complete sequential addition needs a domain window")
        window = _as_window(window)
    operands = idx.take(list(events))
    if len(operands) < 2:
        raise InvalidInput("a sequential operation needs at least two operands")

    if any(o.is_void for o in operands) or shares_atoms(operands, atom_check):
        return Outcome(void_oie(), 1)

    extra = (window.alpha, window.beta) if window is not None else ()
    operands, product = _product_for(events, idx, cs, max_product, extra)
    feasible = ~infeasible_mask(product, operands, cs)
    if not feasible.any():
        return Outcome(void_oie(), 2)

    if kind == ADD:
        keep = _domain_keep(product.starts, product.ends, product.codec.encode(window.alpha),
                            product.codec.encode(window.beta), feasible)
        if keep is None:
            return Outcome(void_oie(), 3)
    else:
        keep = feasible & K.ascending_mask(product.starts, product.ends)
        if not keep.any():
            return Outcome(void_oie(), 3)

    details = product.combos(keep)
    atoms = frozenset().union(*(o.atoms for o in operands))
    return Outcome(OIE(operands, details, derive_intervals(details), atoms))


def csa(events: Sequence[OIE], idx, w, cs: ConstraintSet = EMPTY_CONSTRAINTS, *,
        atom_check: str = PAIRWISE, max_product=None) -> OIE:
    return evaluate_operation(ADD, events, idx, w, cs, atom_check=atom_check,
                              max_product=max_product).result


def csm(events: Sequence[OIE], idx, cs: ConstraintSet = EMPTY_CONSTRAINTS, *,
        atom_check: str = PAIRWISE, max_product=None) -> OIE:
    return evaluate_operation(MUL, events, idx, None, cs, atom_check=atom_check,
                              max_product=max_product).result


def natural_window(events: Sequence[OIE]) -> DomainWindow:
    """The common (min start, max end) of all operands, or PreconditionViolated."""
    bounds = set()
    for e in events:
        if e.is_void:
            raise PreconditionViolated("natural addition is undefined for a void operand")
        bounds.add((min(x.start for x in e.intervals), max(x.end for x in e.intervals)))
    if len(bounds) != 1:
        shown = ", ".join(f"({format_rational(a)}, {format_rational(b)})" for a, b in sorted(bounds))
        raise PreconditionViolated(f"operands do not share one (min start, max end): {shown}")
    return DomainWindow(*bounds.pop())


def natural_csa(events: Sequence[OIE], idx, cs: ConstraintSet = EMPTY_CONSTRAINTS, *,
                atom_check: str = PAIRWISE, max_product=None) -> OIE:
    return csa(events, idx, natural_window(events), cs, atom_check=atom_check,
               max_product=max_product)
