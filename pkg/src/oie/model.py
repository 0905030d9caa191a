"""Core value types: exact timestamps, intervals, combos and the OIE 4-tuple.

Every value is immutable. Timestamps are :class:`fractions.Fraction`, so
boundary tests such as ``start == alpha`` are exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Sequence

from .errors import InvalidInput

Timestamp = Fraction
IntervalCombo = tuple  # tuple[Interval, ...], length >= 1


def to_rational(value) -> Fraction:
    """Coerce ``value`` to an exact rational.

    Accepts ints, Fractions, Decimals, strings (``"3"``, ``"47/5"``,
    ``"9.4"``) and floats. Floats go through ``str`` so that ``9.4`` becomes
    ``47/5`` rather than its binary approximation.
    """
    if isinstance(value, bool):
        raise InvalidInput(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise InvalidInput(f"not a finite rational: {value!r}")
        return Fraction(str(value))
    if isinstance(value, Decimal):
        if not value.is_finite():
            raise InvalidInput(f"not a finite rational: {value!r}")
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            if "/" in text:
                num, den = text.split("/", 1)
                return Fraction(int(num), int(den))
            return Fraction(Decimal(text))
        except (ValueError, ZeroDivisionError, InvalidOperation):
            raise InvalidInput(f"not a rational: {value!r}") from None
    raise InvalidInput(f"not a rational: {value!r}")


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True, order=True)
class Interval:
    """Half-open span ``[start, end)`` with ``start < end``."""

    start: Fraction
    end: Fraction

    def __post_init__(self):
        start = to_rational(self.start)
        end = to_rational(self.end)
        if not start < end:
            raise InvalidInput(f"interval needs start < end, got ({start}, {end})")
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "end", end)

    def __iter__(self):
        yield self.start
        yield self.end

    def __repr__(self):
        return f"({format_rational(self.start)}, {format_rational(self.end)})"

    def overlaps(self, other: Interval) -> bool:
        return self.start < other.end and other.start < self.end


def iv(start, end) -> Interval:
    return Interval(start, end)


def make_combo(*pairs) -> IntervalCombo:
    """Build a combo from ``(start, end)`` pairs or Intervals."""
    items = tuple(p if isinstance(p, Interval) else Interval(*p) for p in pairs)
    if not items:
        raise InvalidInput("a combo needs at least one interval")
    return items


def _check_combo(combo) -> IntervalCombo:
    if not isinstance(combo, tuple) or not combo:
        raise InvalidInput(f"a combo must be a non-empty tuple of intervals, got {combo!r}")
    for item in combo:
        if not isinstance(item, Interval):
            raise InvalidInput(f"combo member is not an Interval: {item!r}")
    return combo


class ComboSet:
    """Finite set of equal-length interval combos in canonical order.

    Iteration is lexicographic by rational values, which keeps every printed
    result and golden file byte-stable. An empty set has ``length == 0``.
    """

    __slots__ = ("_combos", "_length", "_hash", "_members")

    def __init__(self, combos: Iterable[IntervalCombo] = (), length: int | None = None):
        unique = {_check_combo(c) for c in combos}
        lengths = {len(c) for c in unique}
        if len(lengths) > 1:
            raise InvalidInput(f"combos of mixed lengths {sorted(lengths)}")
        found = lengths.pop() if lengths else 0
        if length is not None and unique and length != found:
            raise InvalidInput(f"expected combos of length {length}, got {found}")
        self._combos = tuple(sorted(unique))
        self._length = found if unique else (length or 0)
        self._hash = None
        self._members = None

    @property
    def length(self) -> int:
        return self._length

    @property
    def combos(self) -> tuple:
        return self._combos

    def __iter__(self) -> Iterator[IntervalCombo]:
        return iter(self._combos)

    def __len__(self):
        return len(self._combos)

    def __bool__(self):
        return bool(self._combos)

    def __contains__(self, combo):
        if self._members is None:
            self._members = frozenset(self._combos)
        return combo in self._members

    def __eq__(self, other):
        if not isinstance(other, ComboSet):
            return NotImplemented
        return self._combos == other._combos

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._combos)
        return self._hash

    def __repr__(self):
        return f"ComboSet({list(self._combos)!r})"


@dataclass(frozen=True)
class PermutationMap:
    """Bijection on ``{1..n}``; ``images[i - 1]`` is where position ``i`` goes."""

    images: tuple

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise InvalidInput(f"not a permutation of 1..{len(images)}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> PermutationMap:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def swap(cls, n: int, i: int, j: int) -> PermutationMap:
        images = list(range(1, n + 1))
        images[i - 1], images[j - 1] = images[j - 1], images[i - 1]
        return cls(tuple(images))

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def inverse(self) -> PermutationMap:
        inv = [0] * len(self.images)
        for i, target in enumerate(self.images, start=1):
            inv[target - 1] = i
        return PermutationMap(tuple(inv))

    def compose(self, other: PermutationMap) -> PermutationMap:
        """``self`` after ``other``: position i goes to ``self(other(i))``."""
        if other.size != self.size:
            raise InvalidInput("cannot compose permutations of different sizes")
        return PermutationMap(tuple(self(other(i)) for i in range(1, self.size + 1)))

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.size + 1))


def bound_combo(combo: Sequence[Interval]) -> Interval:
    """Smallest interval covering every member of ``combo``."""
    return Interval(min_first(combo), max_second(combo))


def min_first(combo: Sequence[Interval]) -> Fraction:
    if not combo:
        raise InvalidInput("empty combo has no minimum start")
    return min(item.start for item in combo)


def max_second(combo: Sequence[Interval]) -> Fraction:
    if not combo:
        raise InvalidInput("empty combo has no maximum end")
    return max(item.end for item in combo)


def apply_permutation(items: Sequence, p: PermutationMap) -> tuple:
    """Move the element at position ``i`` to position ``p(i)``."""
    if len(items) != p.size:
        raise InvalidInput(f"sequence of length {len(items)} vs permutation of size {p.size}")
    out = [None] * p.size
    for i, item in enumerate(items, start=1):
        out[p(i) - 1] = item
    return tuple(out)


def combo_perm_equivalent(a: Sequence, b: Sequence) -> PermutationMap | None:
    """Lexicographically smallest ``M`` with ``apply_permutation(a, M) == b``.

    Greedy works: sending each position of ``a`` to the first unused equal
    slot of ``b`` always completes when the two multisets agree, and every
    choice is the smallest available.
    """
    if len(a) != len(b):
        return None
    used = [False] * len(b)
    images = []
    for item in a:
        for j, other in enumerate(b):
            if not used[j] and other == item:
                used[j] = True
                images.append(j + 1)
                break
        else:
            return None
    return PermutationMap(tuple(images))


@dataclass(frozen=True)
class OIE:
    """Optional intervals event ``(components, F, I, A)``.

    ``details`` is the set of feasible per-component schedules, ``intervals``
    the overall spans derivable from them, ``atoms`` the ids of the
    underlying indivisible events. Components are held by value.
    """

    components: tuple = ()
    details: ComboSet = field(default_factory=ComboSet)
    intervals: frozenset = frozenset()
    atoms: frozenset = frozenset()

    def __post_init__(self):
        components = tuple(self.components)
        for c in components:
            if not isinstance(c, OIE):
                raise InvalidInput(f"component is not an OIE: {c!r}")
        if len(components) == 1:
            raise InvalidInput("an OIE cannot have exactly one component")
        details = self.details if isinstance(self.details, ComboSet) else ComboSet(self.details)
        object.__setattr__(self, "components", components)
        object.__setattr__(self, "details", details)
        object.__setattr__(self, "intervals", frozenset(self.intervals))
        object.__setattr__(self, "atoms", frozenset(self.atoms))

    @property
    def is_void(self) -> bool:
        return not (self.components or self.details or self.intervals or self.atoms)

    @property
    def is_atomic(self) -> bool:
        return not self.components and len(self.atoms) == 1

    @property
    def is_composite(self) -> bool:
        return len(self.components) > 1

    @property
    def label(self) -> str:
        """Display/constraint label: the atom id for atomic OIEs."""
        if self.is_void:
            return "VOID"
        if not self.components:
            return ",".join(sorted(self.atoms))
        return "(" + ", ".join(c.label for c in self.components) + ")"

    def __repr__(self):
        if self.is_void:
            return "OIE(VOID)"
        return (f"OIE(C={[c.label for c in self.components]}, |F|={len(self.details)}, "
                f"I={sorted(self.intervals)}, A={sorted(self.atoms)})")


_VOID = OIE()


def void_oie() -> OIE:
    return _VOID


def make_atomic(atom: str, intervals: Iterable) -> OIE:
    if not isinstance(atom, str) or not atom:
        raise InvalidInput(f"atom id must be a non-empty string, got {atom!r}")
    ivs = {x if isinstance(x, Interval) else Interval(*x) for x in intervals}
    if not ivs:
        raise InvalidInput(f"atomic OIE {atom!r} needs at least one interval; use void_oie()")
    return OIE((), ComboSet((x,) for x in ivs), frozenset(ivs), frozenset({atom}))


def derive_intervals(details: Iterable[IntervalCombo]) -> frozenset:
    return frozenset(bound_combo(c) for c in details)


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def validate_oie(o: OIE) -> ValidationReport:
    """Check shape rules and the F/I consistency law; list every violation."""
    problems = []
    lengths = {len(c) for c in o.details}
    if o.is_void:
        pass
    elif not o.components:
        if lengths - {1}:
            problems.append(f"atomic OIE has combos of length {sorted(lengths - {1})}")
        if len(o.atoms) != 1:
            problems.append(f"atomic OIE must have exactly one atom, has {len(o.atoms)}")
    else:
        n = len(o.components)
        if lengths - {n}:
            problems.append(f"composite with {n} components has combos of length "
                            f"{sorted(lengths - {n})}")
    derived = derive_intervals(o.details)
    if derived != o.intervals:
        problems.append(f"I does not match bounds of F: I={sorted(o.intervals)}, "
                        f"derived={sorted(derived)}")
    return ValidationReport(tuple(problems))


def oie_equal(a: OIE, b: OIE) -> bool:
    return a == b


def intervals_family(events: Sequence[OIE]) -> tuple:
    return tuple(e.intervals for e in events)
