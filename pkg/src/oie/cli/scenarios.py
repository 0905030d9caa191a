"""Desk-scale generators for the sprint, downhill, merge-sort and sampling studies.

The original studies use continuous interval families. Here every family is
discretised on an explicit ``tick`` grid; the full-scale constants are kept
in each file's ``meta`` block for reference.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from ..analysis import end_order
from ..errors import CapacityExceeded, InvalidInput
from ..feasibility import DEFAULT_MAX_PRODUCT, ConstraintSet, Forbidden, IndexTuple
from ..model import Interval, make_atomic, to_rational
from ..ops import csa, csm
from .eventfile import EventFile, EventSpec

SPRINT_REFERENCE = {"alpha": 1736253600, "beta": 1736253620, "dmin": "9.4", "dmax": 20, "lanes": 8}
DOWNHILL_REFERENCE = {"start": 1736253600, "total": 1200, "latest_finish": 1736254800,
                      "tmin": 90, "tmax": 120, "skiers": 8}


def _steps(span: Fraction, tick: Fraction, what: str) -> int:
    count = span / tick
    if count.denominator != 1:
        raise InvalidInput(f"tick {tick} does not divide {what} {span}")
    return int(count)


def grid_intervals(alpha, beta, dmin, dmax, tick) -> tuple:
    """All intervals on the tick grid inside ``[alpha, beta]`` with duration in ``[dmin, dmax]``."""
    alpha, beta, dmin, dmax, tick = map(to_rational, (alpha, beta, dmin, dmax, tick))
    if tick <= 0:
        raise InvalidInput("tick must be positive")
    if dmin <= 0 or dmin > dmax:
        raise InvalidInput(f"need 0 < dmin <= dmax, got {dmin}, {dmax}")
    _steps(beta - alpha, tick, "window length")
    lo = _steps(dmin, tick, "minimum duration")
    hi = _steps(dmax, tick, "maximum duration")
    out = []
    for d in range(lo, hi + 1):
        length = d * tick
        start = alpha
        while start + length <= beta:
            out.append(Interval(start, start + length))
            start += tick
    return tuple(sorted(out))


def _check_product(per_event: int, count: int, max_product) -> None:
    cap = DEFAULT_MAX_PRODUCT if max_product is None else max_product
    if per_event and per_event ** count > cap:
        raise CapacityExceeded("scenario product", per_event ** count, cap)


def _joined(op: str, ids) -> str:
    ids = list(ids)
    return ids[0] if len(ids) == 1 else f"{op}({', '.join(ids)})"


def scenario_sprint(lanes: int, window, dmin, dmax, tick=1, *, max_product=None) -> EventFile:
    if lanes < 1:
        raise InvalidInput("need at least one lane")
    alpha, beta = map(to_rational, window)
    if not alpha < beta:
        raise InvalidInput("window needs alpha < beta")
    intervals = grid_intervals(alpha, beta, dmin, dmax, tick)
    _check_product(len(intervals), lanes, max_product)
    ids = [f"athlete{i}" for i in range(1, lanes + 1)]
    return EventFile(tuple(EventSpec(i, intervals) for i in ids), ConstraintSet(),
                     _joined("natadd", ids), {"scenario": "sprint", "reference": SPRINT_REFERENCE})


def scenario_downhill(skiers: int, start, total, tmin, tmax, tick=1, *, max_product=None) -> EventFile:
    if skiers < 1:
        raise InvalidInput("need at least one skier")
    start, total, tmin, tmax = map(to_rational, (start, total, tmin, tmax))
    if total <= 0:
        raise InvalidInput("total time must be positive")
    if tmin > total:
        intervals = ()
    else:
        intervals = grid_intervals(start, start + total, tmin, min(tmax, total), tick)
    _check_product(len(intervals), skiers, max_product)
    ids = [f"skier{i}" for i in range(1, skiers + 1)]
    return EventFile(tuple(EventSpec(i, intervals) for i in ids), ConstraintSet(),
                     _joined("mul", ids), {"scenario": "downhill", "reference": DOWNHILL_REFERENCE})


# -- merge sort ----------------------------------------------------------------

@dataclass(frozen=True)
class MergeLayer:
    depth: int
    tasks: tuple
    task_time: int
    batches: int
    window: Interval


def mergesort_layers(length: int, procs: int | None = None) -> tuple:
    """Merge tasks per tree layer, deepest layer first, with serial layer windows.

    Layer ``d`` has ``2**d`` merges over subarrays of ``length / 2**d``; with
    ``procs`` workers they run in ``ceil(2**d / procs)`` batches.
    """
    if length < 2 or length & (length - 1) or length > 16:
        raise InvalidInput(f"length must be a power of two in [2, 16], got {length}")
    procs = length // 2 if procs is None else procs
    if not 1 <= procs <= length:
        raise InvalidInput(f"procs must be in [1, {length}], got {procs}")
    levels = length.bit_length() - 1
    layers = []
    clock = 0
    for depth in reversed(range(levels)):
        span = length >> depth
        half = span // 2
        tasks = []
        for t in range(1 << depth):
            lo = t * span + 1
            tasks.append(f"m{lo}_{lo + half - 1}_{lo + half}_{lo + span - 1}")
        batches = math.ceil((1 << depth) / procs)
        window = Interval(clock, clock + batches * span)
        layers.append(MergeLayer(depth, tuple(tasks), span, batches, window))
        clock += batches * span
    return tuple(layers)


def scenario_mergesort(length: int, procs: int | None = None) -> EventFile:
    procs = length // 2 if procs is None else procs
    layers = mergesort_layers(length, procs)
    events, forbidden, parts = [], [], []
    for layer in layers:
        w0 = layer.window.start
        slots = tuple(Interval(w0 + b * layer.task_time, w0 + (b + 1) * layer.task_time)
                      for b in range(layer.batches))
        events.extend(EventSpec(task, slots) for task in layer.tasks)
        if layer.batches > 1:
            # at most `procs` merges share a slot
            for slot in slots:
                for group in itertools.combinations(layer.tasks, procs + 1):
                    forbidden.append(Forbidden(tuple((task, slot) for task in group)))
        if len(layer.tasks) == 1:
            parts.append(layer.tasks[0])
        else:
            parts.append(f"add({', '.join(layer.tasks)}; alpha={layer.window.start}, "
                         f"beta={layer.window.end})")
    expression = parts[0] if len(parts) == 1 else f"mul({', '.join(parts)})"
    meta = {"scenario": "mergesort", "length": length, "procs": procs,
            "layers": [{"depth": l.depth, "tasks": list(l.tasks), "time": l.batches * l.task_time}
                       for l in layers]}
    return EventFile(tuple(events), ConstraintSet(frozenset(forbidden)), expression, meta)


# -- sampling ------------------------------------------------------------------

@dataclass(frozen=True)
class SamplingReport:
    balls: int
    red: int
    drawers: tuple
    position_counts: dict      # drawer -> counts of finishing rank 1..k under addition
    marginal_add: dict         # drawer -> P(red) averaged over F of the addition result
    marginal_mul: dict         # drawer -> P(red) along the multiplication order
    add_combos: int
    mul_combos: int

    def lines(self):
        yield f"balls={self.balls} red={self.red} drawers={len(self.drawers)}"
        yield f"addition: |F|={self.add_combos}; multiplication: |F|={self.mul_combos}"
        for d in self.drawers:
            counts = " ".join(str(c) for c in self.position_counts[d])
            yield (f"{d}: rank counts [{counts}]  P(red) add={_frac(self.marginal_add[d])} "
                   f"mul={_frac(self.marginal_mul[d])}")


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _allocation_marginals(balls: int, red: int, order) -> dict:
    """Exhaustive: every injective assignment of balls to drawers in draw order."""
    hits = dict.fromkeys(order, 0)
    total = 0
    for draw in itertools.permutations(range(balls), len(order)):
        total += 1
        for drawer, ball in zip(order, draw):
            if ball < red:
                hits[drawer] += 1
    return {d: Fraction(h, total) for d, h in hits.items()}


def _chain_marginals(balls: int, red: int, order) -> dict:
    """Sequential draws: P(position p red) through the conditional chain."""
    # dist maps reds already drawn -> probability
    dist = {0: Fraction(1)}
    out = {}
    for p, drawer in enumerate(order):
        left = balls - p
        p_red = sum(prob * Fraction(red - r, left) for r, prob in dist.items())
        out[drawer] = p_red
        nxt = {}
        for r, prob in dist.items():
            if red - r:
                nxt[r + 1] = nxt.get(r + 1, 0) + prob * Fraction(red - r, left)
            if left - (red - r):
                nxt[r] = nxt.get(r, 0) + prob * Fraction(left - (red - r), left)
        dist = nxt
    return out


def scenario_sampling(balls: int, red: int, drawers: int, tick=1) -> SamplingReport:
    if not (1 < drawers <= red < balls):
        raise InvalidInput(f"need 1 < drawers <= red < balls, got {drawers}, {red}, {balls}")
    if balls > 6:
        raise CapacityExceeded("sampling balls", balls, 6)
    tick = to_rational(tick)
    ids = [f"drawer{i}" for i in range(1, drawers + 1)]
    slots = [Interval(j * tick, (j + 1) * tick) for j in range(drawers)]
    oies = [make_atomic(i, slots) for i in ids]
    idx = IndexTuple.ascending(drawers)
    simul = csa(oies, idx, (0, drawers * tick))
    seq = csm(oies, idx)

    counts = {d: [0] * drawers for d in ids}
    add_marg = dict.fromkeys(ids, Fraction(0))
    for combo in simul.details:
        for k, d in enumerate(ids):
            rank = sum(1 for other in combo if other.end < combo[k].end)
            counts[d][rank] += 1
        order = [ids[k] for k in end_order(combo)]
        for d, p in _allocation_marginals(balls, red, order).items():
            add_marg[d] += p
    add_marg = {d: p / len(simul.details) for d, p in add_marg.items()}

    mul_marg = dict.fromkeys(ids, Fraction(0))
    for combo in seq.details:
        order = [ids[k] for k in end_order(combo)]
        for d, p in _chain_marginals(balls, red, order).items():
            mul_marg[d] += p
    mul_marg = {d: p / len(seq.details) for d, p in mul_marg.items()}
    return SamplingReport(balls, red, tuple(ids), {d: tuple(c) for d, c in counts.items()},
                          add_marg, mul_marg, len(simul.details), len(seq.details))
