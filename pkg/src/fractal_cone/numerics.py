"""Exact rational scalars and normalized unions of closed intervals.

Every quantity is a :class:`fractions.Fraction`; floats are refused at the
boundary so that no rounding can sneak into set computations.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ``value`` to a Fraction, rejecting floats and bools."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"exact rational required, got {value!r}")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def encode_rational(value: Fraction) -> str:
    """Canonical ``"p/q"`` text; the denominator is dropped when it is 1."""
    return str(Fraction(value))


def decode_rational(text: str) -> Fraction:
    return Fraction(text)


@dataclass(frozen=True, order=True)
class Interval:
    """Closed interval ``[lo, hi]``; ``lo == hi`` is a point."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        lo, hi = as_rational(self.lo), as_rational(self.hi)
        if lo > hi:
            raise ValueError(f"empty interval: lo={lo} > hi={hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains_interval(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def intersects(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def affine(self, scale, shift=0) -> "Interval":
        a = scale * self.lo + shift
        b = scale * self.hi + shift
        return Interval(min(a, b), max(a, b))

    def __add__(self, other: "Interval") -> "Interval":
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other: "Interval") -> "Interval":
        return Interval(self.lo - other.hi, self.hi - other.lo)

    def distance_to(self, x) -> Fraction:
        if x < self.lo:
            return self.lo - x
        if x > self.hi:
            return x - self.hi
        return Fraction(0)

    def to_json(self) -> list:
        return [encode_rational(self.lo), encode_rational(self.hi)]

    def __repr__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


def _merge_sorted(intervals: Sequence[Interval]) -> list:
    merged: list = []
    lo = hi = None
    for iv in intervals:
        if lo is None:
            lo, hi = iv.lo, iv.hi
        elif iv.lo > hi:
            merged.append(Interval(lo, hi))
            lo, hi = iv.lo, iv.hi
        elif iv.hi > hi:
            # closed intervals sharing an endpoint are one component
            hi = iv.hi
    if lo is not None:
        merged.append(Interval(lo, hi))
    return merged


@dataclass(frozen=True)
class IntervalSet:
    """Finite union of pairwise separated closed intervals.

    ``parts`` is sorted and every gap is strictly positive, so the parts are
    exactly the connected components. Build instances through
    :func:`normalize` or :meth:`of` unless the parts are already canonical;
    the constructor only validates.
    """

    parts: tuple = ()

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        for left, right in zip(parts, parts[1:]):
            if not left.hi < right.lo:
                raise ValueError(f"parts not separated: {left} and {right}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *pairs) -> "IntervalSet":
        """``IntervalSet.of((0, 1), ("6/7", 1))`` normalizes arbitrary pairs."""
        return normalize(Interval(lo, hi) for lo, hi in pairs)

    @classmethod
    def empty(cls) -> "IntervalSet":
        return cls(())

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __bool__(self) -> bool:
        return bool(self.parts)

    def __repr__(self) -> str:
        return "IntervalSet{" + ", ".join(map(repr, self.parts)) + "}"

    @cached_property
    def _los(self) -> list:
        return [p.lo for p in self.parts]

    def _locate(self, x) -> int:
        """Index of the last part with ``lo <= x``, or -1."""
        return bisect_right(self._los, x) - 1

    def component_of(self, x) -> Interval | None:
        k = self._locate(x)
        if k >= 0 and x <= self.parts[k].hi:
            return self.parts[k]
        return None

    def __contains__(self, x) -> bool:
        return self.component_of(as_rational(x)) is not None

    @property
    def hull(self) -> Interval:
        if not self.parts:
            raise ValueError("hull of an empty set")
        return Interval(self.parts[0].lo, self.parts[-1].hi)

    def gaps(self) -> list:
        """Open gaps between consecutive components, as ``(lo, hi)`` pairs."""
        return [(a.hi, b.lo) for a, b in zip(self.parts, self.parts[1:])]

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return normalize(list(self.parts) + list(other.parts))

    __or__ = union

    def intersection(self, other: "IntervalSet") -> "IntervalSet":
        out = []
        i = j = 0
        a, b = self.parts, other.parts
        while i < len(a) and j < len(b):
            lo = max(a[i].lo, b[j].lo)
            hi = min(a[i].hi, b[j].hi)
            if lo <= hi:
                out.append(Interval(lo, hi))
            if a[i].hi < b[j].hi:
                i += 1
            else:
                j += 1
        # pieces of separated components stay separated
        return IntervalSet(tuple(out))

    __and__ = intersection

    def issubset(self, other: "IntervalSet") -> bool:
        for part in self.parts:
            comp = other.component_of(part.lo)
            if comp is None or part.hi > comp.hi:
                return False
        return True

    __le__ = issubset

    def issuperset(self, other: "IntervalSet") -> bool:
        return other.issubset(self)

    __ge__ = issuperset

    def affine(self, scale, shift=0) -> "IntervalSet":
        return affine(self, scale, shift)

    def __neg__(self) -> "IntervalSet":
        return affine(self, -1, 0)

    def __add__(self, other: "IntervalSet") -> "IntervalSet":
        return minkowski_sum(self, other)

    def to_json(self) -> list:
        return [p.to_json() for p in self.parts]

    @classmethod
    def from_json(cls, data: Iterable) -> "IntervalSet":
        return normalize(Interval(decode_rational(lo), decode_rational(hi)) for lo, hi in data)


def normalize(raw: Iterable[Interval]) -> IntervalSet:
    """Merge overlapping or touching closed intervals into components."""
    items = []
    for iv in raw:
        if not isinstance(iv, Interval):
            iv = Interval(*iv)
        items.append(iv)
    items.sort()
    return IntervalSet(tuple(_merge_sorted(items)))


def union(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    return a.union(b)


def intersection(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    return a.intersection(b)


def is_subset(a: IntervalSet, b: IntervalSet) -> bool:
    return a.issubset(b)


def set_algebra(a: IntervalSet, b: IntervalSet, op: str):
    """Dispatch ``union``, ``intersection``, ``inclusion`` or ``equality``."""
    if op == "union":
        return a.union(b)
    if op == "intersection":
        return a.intersection(b)
    if op in ("inclusion", "inclusion-test"):
        return a.issubset(b)
    if op in ("equality", "equality-test"):
        return a == b
    raise ValueError(f"unknown set operation {op!r}")


def affine(a: IntervalSet, scale: RationalLike, shift: RationalLike = 0) -> IntervalSet:
    """Image ``{scale*x + shift : x in a}``; a zero scale collapses to ``{shift}``."""
    scale, shift = as_rational(scale), as_rational(shift)
    if scale == 0:
        return IntervalSet((Interval(shift, shift),)) if a else IntervalSet()
    parts = [p.affine(scale, shift) for p in a.parts]
    if scale < 0:
        parts.reverse()
    return IntervalSet(tuple(parts))


def minkowski_sum(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    if not a or not b:
        return IntervalSet()
    return normalize([p + q for p in a.parts for q in b.parts])


def diff_set(a: IntervalSet) -> IntervalSet:
    """Difference set ``{x - y : x, y in a}``."""
    return minkowski_sum(a, affine(a, -1, 0))


def distance_to_set(x, s: IntervalSet) -> Fraction:
    if not s:
        raise ValueError("undefined distance: empty set")
    k = s._locate(x)
    best = None
    for idx in (k, k + 1):
        if 0 <= idx < len(s.parts):
            d = s.parts[idx].distance_to(x)
            if best is None or d < best:
                best = d
    return best


def _directed_hausdorff(a: IntervalSet, b: IntervalSet) -> Fraction:
    # dist(., b) is piecewise linear; on a it peaks at an endpoint of a or
    # at the midpoint of a gap of b.
    candidates = [p.lo for p in a.parts] + [p.hi for p in a.parts]
    candidates += [(lo + hi) / 2 for lo, hi in b.gaps()]
    return max(distance_to_set(x, b) for x in candidates if x in a)


def hausdorff_distance_1d(a: IntervalSet, b: IntervalSet) -> Fraction:
    if not a or not b:
        raise ValueError("undefined distance: empty set")
    return max(_directed_hausdorff(a, b), _directed_hausdorff(b, a))
