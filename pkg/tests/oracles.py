"""Slow, obviously-correct reference implementations used as test oracles.

Plain itertools and Fraction only; nothing here touches the array kernels.
"""
import itertools
from fractions import Fraction

from oie.model import OIE, ComboSet, Interval, make_atomic


def combo_bound(combo):
    return Interval(min(x.start for x in combo), max(x.end for x in combo))


def apply_perm(items, images):
    """Element at (1-based) position i moves to position images[i-1]."""
    out = [None] * len(items)
    for i, item in enumerate(items):
        out[images[i] - 1] = item
    return tuple(out)


def all_witnesses(a, b):
    n = len(a)
    return [p for p in itertools.permutations(range(1, n + 1)) if apply_perm(a, p) == tuple(b)]


def domain_filter(combos, alpha, beta):
    combos = list(combos)
    inside = [c for c in combos if all(alpha <= x.start and x.end <= beta for x in c)]
    if not inside:
        return set()
    n = len(inside[0])
    for k in range(n):
        if not any(c[k].start == alpha for c in inside):
            return set()
        if not any(c[k].end == beta for c in inside):
            return set()
    return set(inside)


def ascending_filter(combos):
    return {c for c in combos
            if all(c[i].end <= c[j].start for i in range(len(c)) for j in range(i + 1, len(c)))}


def violates(combo, labels, forbidden, no_overlap=(), min_gap=()):
    pos = {label: k for k, label in enumerate(labels)}
    for pattern in forbidden:
        if all(label in pos for label, _ in pattern):
            if all(combo[pos[label]] == x for label, x in pattern):
                return True
    for group in no_overlap:
        if all(label in pos for label in group):
            cols = [pos[label] for label in group]
            for i, j in itertools.combinations(cols, 2):
                if combo[i].start < combo[j].end and combo[j].start < combo[i].end:
                    return True
    for first, second, gap in min_gap:
        if first in pos and second in pos:
            x, y = combo[pos[first]], combo[pos[second]]
            if not (y.start - x.end >= gap or x.start - y.end >= gap):
                return True
    return False


def operation(kind, events, idx, window=None, forbidden=(), no_overlap=(), min_gap=(),
              aggregate=False):
    """Reference csa/csm: returns (F as a set, I as a set) or None for void."""
    ops = [events[i - 1] for i in idx]
    if any(o.is_void for o in ops):
        return None
    if aggregate:
        if frozenset.intersection(*(frozenset(o.atoms) for o in ops)):
            return None
    else:
        for a, b in itertools.combinations(ops, 2):
            if a.atoms & b.atoms:
                return None
    labels = [o.label for o in ops]
    families = [sorted(o.intervals) for o in ops]
    combos = [c for c in itertools.product(*families)
              if not violates(c, labels, forbidden, no_overlap, min_gap)]
    if not combos:
        return None
    if kind == "add":
        kept = domain_filter(combos, Fraction(window[0]), Fraction(window[1]))
    else:
        kept = ascending_filter(combos)
    if not kept:
        return None
    return kept, {combo_bound(c) for c in kept}


def cayley_product(a: frozenset, b: frozenset) -> frozenset:
    if not a or not b or a & b:
        return frozenset()
    return a | b


def disjoint_nonempty_pairs(n):
    """Unordered pairs {S, T} of disjoint nonempty subsets of an n-set."""
    # each atom: in S, in T or neither -> ordered pairs 3^n, minus empties, halved
    ordered = 3 ** n - 2 * 2 ** n + 1
    return ordered // 2


def allocation_marginal(balls, red, draws):
    hits = total = 0
    for perm in itertools.permutations(range(balls), draws):
        total += draws
        hits += sum(1 for b in perm if b < red)
    return Fraction(hits, total)


def as_oie_details(o: OIE):
    return set(o.details) if not o.is_void else None


def comboset(*combos):
    return ComboSet(tuple(tuple(Interval(*p) for p in c) for c in combos))


def anchored_events(rnd, n, horizon=8):
    """Atomic events that can each reach both ends of ``(0, horizon)``.

    Without the anchors most random families fail the boundary rule and the
    addition result is void, which would make orbit checks vacuous.
    """
    events = []
    for k in range(n):
        slots = {(0, rnd.randint(1, 3)), (horizon - rnd.randint(1, 3), None)}
        out = set()
        for s, d in slots:
            out.add((s, horizon) if d is None else (s, s + d))
        for _ in range(rnd.randint(0, 2)):
            s = rnd.randint(0, horizon - 1)
            out.add((s, min(horizon, s + rnd.randint(1, 3))))
        events.append(make_atomic(f"e{k}", sorted(out)))
    return events


def window_combo(rnd, n, alpha, beta):
    """Random combo biased so that positions often sit on ``alpha`` or ``beta``."""
    out = []
    for _ in range(n):
        roll = rnd.random()
        length = Fraction(rnd.randint(1, 4), rnd.choice((1, 2)))
        if roll < 0.35:
            start = alpha
        elif roll < 0.7:
            start = beta - length
        else:
            start = alpha - 1 + Fraction(rnd.randint(0, 2 * int(beta - alpha)), 2)
        out.append(Interval(start, start + length))
    return tuple(out)
