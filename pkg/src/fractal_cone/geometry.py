"""Exact planar geometry: rectangles, rays, direction sectors and slope sets.

Directions are compared through a rational "diamond angle" in ``[0, 4)``,
which is strictly monotone in the true angle, so sector unions reduce to
one-dimensional interval algebra with no trigonometry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

import numpy as np

from .numerics import Interval, IntervalSet, as_rational, encode_rational, normalize

__all__ = [
    "Rect",
    "RectSet",
    "Direction",
    "Sector",
    "SectorSet",
    "SlopeSet",
    "FullPlaneError",
    "product_rectset",
    "rect_sector",
    "cone_sectors",
    "double_hit_slopes",
    "line_hits_rect",
    "rect_meets_open_band",
    "diff_rects",
    "rect_unions_equal",
    "diff_union_equals",
]


class FullPlaneError(ValueError):
    """The cone over a set whose component contains the origin is not a sector."""

    def __init__(self, rect: "Rect"):
        super().__init__(f"sector is full plane: {rect} contains the origin")
        self.rect = rect


@dataclass(frozen=True, order=True)
class Rect:
    x: Interval
    y: Interval

    @classmethod
    def from_bounds(cls, xlo, xhi, ylo, yhi) -> "Rect":
        return cls(Interval(xlo, xhi), Interval(ylo, yhi))

    @property
    def corners(self) -> tuple:
        return (
            (self.x.lo, self.y.lo),
            (self.x.hi, self.y.lo),
            (self.x.hi, self.y.hi),
            (self.x.lo, self.y.hi),
        )

    def contains_point(self, p) -> bool:
        return p[0] in self.x and p[1] in self.y

    def contains_origin(self) -> bool:
        return 0 in self.x and 0 in self.y

    def contains_rect(self, other: "Rect") -> bool:
        return self.x.contains_interval(other.x) and self.y.contains_interval(other.y)

    def intersects(self, other: "Rect") -> bool:
        return self.x.intersects(other.x) and self.y.intersects(other.y)

    def intersection(self, other: "Rect") -> "Rect | None":
        xlo, xhi = max(self.x.lo, other.x.lo), min(self.x.hi, other.x.hi)
        ylo, yhi = max(self.y.lo, other.y.lo), min(self.y.hi, other.y.hi)
        if xlo > xhi or ylo > yhi:
            return None
        return Rect.from_bounds(xlo, xhi, ylo, yhi)

    def affine(self, scale, shift=(0, 0)) -> "Rect":
        return Rect(self.x.affine(scale, shift[0]), self.y.affine(scale, shift[1]))

    def __sub__(self, other: "Rect") -> "Rect":
        return Rect(self.x - other.x, self.y - other.y)

    def distance_to_point(self, p) -> Fraction:
        """Max-metric distance from ``p`` to the rectangle."""
        return max(self.x.distance_to(p[0]), self.y.distance_to(p[1]))

    def to_json(self) -> list:
        return [encode_rational(v) for v in (self.x.lo, self.x.hi, self.y.lo, self.y.hi)]

    def __repr__(self) -> str:
        return f"{self.x!r}x{self.y!r}"


@dataclass(frozen=True)
class RectSet:
    """Union of pairwise disjoint closed rectangles, one per component.

    Parts are kept sorted so equal sets compare equal. Disjointness is the
    caller's contract: :func:`product_rectset` and the affine/clip helpers
    preserve it.
    """

    parts: tuple = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(sorted(self.parts)))

    def __iter__(self) -> Iterator[Rect]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __bool__(self) -> bool:
        return bool(self.parts)

    def __contains__(self, p) -> bool:
        return any(r.contains_point(p) for r in self.parts)

    def component_of(self, p) -> Rect | None:
        for r in self.parts:
            if r.contains_point(p):
                return r
        return None

    def scale(self, factor) -> "RectSet":
        factor = as_rational(factor)
        if factor <= 0:
            raise ValueError("homothety ratio must be positive")
        return RectSet(tuple(r.affine(factor) for r in self.parts))

    def affine(self, scale, shift=(0, 0)) -> "RectSet":
        return RectSet(tuple(r.affine(scale, shift) for r in self.parts))

    def clip(self, window: Rect) -> "RectSet":
        kept = (r.intersection(window) for r in self.parts)
        return RectSet(tuple(r for r in kept if r is not None))

    def issubset(self, other: "RectSet") -> bool:
        """Component-wise inclusion: each part lies inside one part of ``other``."""
        return all(any(o.contains_rect(r) for o in other.parts) for r in self.parts)

    def to_json(self) -> list:
        return [r.to_json() for r in self.parts]

    @classmethod
    def from_json(cls, data) -> "RectSet":
        return cls(tuple(Rect.from_bounds(*map(Fraction, row)) for row in data))


def product_rectset(x: IntervalSet, y: IntervalSet) -> RectSet:
    """Components of ``x * y``: one rectangle per pair of components."""
    return RectSet(tuple(Rect(a, b) for a in x for b in y))


def cross(a, b) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def _diamond(x, y) -> Fraction:
    if y >= 0:
        return y / (x + y) if x >= 0 else 1 - x / (-x + y)
    return 2 - y / (-x - y) if x < 0 else 3 + x / (x - y)


def _from_diamond(t: Fraction) -> tuple:
    t = t % 4
    if t < 1:
        return (1 - t, t)
    if t < 2:
        return (1 - t, 2 - t)
    if t < 3:
        return (t - 3, 2 - t)
    return (t - 3, t - 4)


@dataclass(frozen=True, order=True)
class Direction:
    """A ray from the origin, stored as a primitive integer vector."""

    dx: Fraction
    dy: Fraction

    def __post_init__(self) -> None:
        dx, dy = as_rational(self.dx), as_rational(self.dy)
        if dx == 0 and dy == 0:
            raise ValueError("zero vector has no direction")
        lcm = math.lcm(dx.denominator, dy.denominator)
        ix, iy = int(dx * lcm), int(dy * lcm)
        g = math.gcd(ix, iy)
        object.__setattr__(self, "dx", Fraction(ix // g))
        object.__setattr__(self, "dy", Fraction(iy // g))

    @classmethod
    def of_slope(cls, m) -> "Direction":
        return cls(1, as_rational(m))

    @classmethod
    def vertical(cls) -> "Direction":
        return cls(0, 1)

    @classmethod
    def from_angle_key(cls, t) -> "Direction":
        return cls(*_from_diamond(as_rational(t)))

    @property
    def angle_key(self) -> Fraction:
        return _diamond(self.dx, self.dy)

    @property
    def slope(self) -> Fraction | None:
        return None if self.dx == 0 else self.dy / self.dx

    def __neg__(self) -> "Direction":
        return Direction(-self.dx, -self.dy)

    def __getitem__(self, k):
        return (self.dx, self.dy)[k]

    def unit_float(self) -> tuple:
        n = math.hypot(float(self.dx), float(self.dy))
        return (float(self.dx) / n, float(self.dy) / n)

    def to_json(self) -> list:
        return [encode_rational(self.dx), encode_rational(self.dy)]

    def __repr__(self) -> str:
        return f"Direction({self.dx}, {self.dy})"


@dataclass(frozen=True)
class Sector:
    """Closed sector swept counterclockwise from ``start`` to ``end``.

    Always narrower than a half-turn, so membership is two cross-product
    sign tests.
    """

    start: Direction
    end: Direction

    def __post_init__(self) -> None:
        c = cross(self.start, self.end)
        if c < 0 or (c == 0 and self.start != self.end):
            raise ValueError(f"sector {self.start}->{self.end} is not narrower than a half-turn")

    @property
    def is_ray(self) -> bool:
        return self.start == self.end

    def contains(self, d: Direction) -> bool:
        if self.is_ray:
            return d == self.start
        return cross(self.start, d) >= 0 and cross(d, self.end) >= 0

    def contains_interior(self, d: Direction) -> bool:
        return cross(self.start, d) > 0 and cross(d, self.end) > 0

    def __contains__(self, d: Direction) -> bool:
        return self.contains(d)

    def to_json(self) -> dict:
        return {"from": self.start.to_json(), "to": self.end.to_json()}

    def __repr__(self) -> str:
        return f"Sector({self.start} -> {self.end})"


def _close_wrap(arcs: IntervalSet) -> IntervalSet:
    # angle 4 and angle 0 are the same ray; keep both or neither
    if 0 in arcs and 4 not in arcs:
        arcs = arcs | IntervalSet.of((4, 4))
    elif 4 in arcs and 0 not in arcs:
        arcs = arcs | IntervalSet.of((0, 0))
    return arcs


@dataclass(frozen=True)
class SectorSet:
    """Finite union of closed direction sectors in canonical form.

    Internally the union is an :class:`IntervalSet` of diamond angles in
    ``[0, 4]`` with 0 and 4 identified.
    """

    arcs: IntervalSet = IntervalSet()

    def __post_init__(self) -> None:
        object.__setattr__(self, "arcs", _close_wrap(self.arcs & IntervalSet.of((0, 4))))

    @classmethod
    def from_sectors(cls, sectors: Iterable[Sector]) -> "SectorSet":
        raw = []
        for s in sectors:
            a, b = s.start.angle_key, s.end.angle_key
            if a <= b:
                raw.append(Interval(a, b))
            else:
                raw.extend([Interval(a, 4), Interval(0, b)])
        return cls(normalize(raw))

    def union(self, other: "SectorSet") -> "SectorSet":
        return SectorSet(self.arcs | other.arcs)

    __or__ = union

    def __bool__(self) -> bool:
        return bool(self.arcs)

    @property
    def is_full(self) -> bool:
        return self.arcs == IntervalSet.of((0, 4))

    def contains(self, d: Direction) -> bool:
        return d.angle_key in self.arcs

    __contains__ = contains

    def _circular_arcs(self) -> list:
        """Arcs as ``(start, end)`` angle pairs with the wrap at 0 fused."""
        parts = [(p.lo, p.hi) for p in self.arcs]
        if self.is_full:
            return [(Fraction(0), Fraction(4))]
        if len(parts) >= 2 and parts[0][0] == 0 and parts[-1][1] == 4:
            first, last = parts[0], parts[-1]
            parts = parts[1:-1] + [(last[0], first[1] + 4)]
        return parts

    @property
    def sectors(self) -> tuple:
        out = []
        for a, b in self._circular_arcs():
            pieces = math.floor(b - a) + 1 if b - a >= 2 else 1
            step = (b - a) / pieces
            for k in range(pieces):
                lo, hi = a + k * step, a + (k + 1) * step
                out.append(Sector(Direction.from_angle_key(lo), Direction.from_angle_key(hi)))
        return tuple(out)

    def gaps(self) -> tuple:
        """Open sectors of directions omitted by the set, as :class:`Sector` boundaries.

        Each returned sector's interior is disjoint from the set. Wide gaps
        are split into pieces narrower than a half-turn; apart from those
        cut points, boundary rays belong to the set.
        """
        if self.is_full:
            return ()
        if not self.arcs:
            spans = [(Fraction(0), Fraction(4))]
        else:
            arcs = self._circular_arcs()
            spans = []
            for (a0, b0), (a1, b1) in zip(arcs, arcs[1:] + [(arcs[0][0] + 4, arcs[0][1] + 4)]):
                spans.append((b0, a1))
        out = []
        for a, b in spans:
            pieces = math.floor(b - a) + 1 if b - a >= 2 else 1
            step = (b - a) / pieces
            for k in range(pieces):
                lo, hi = a + k * step, a + (k + 1) * step
                out.append(Sector(Direction.from_angle_key(lo), Direction.from_angle_key(hi)))
        return tuple(out)

    def neighbors(self, d: Direction) -> tuple | None:
        """Boundary rays of the omitted gap around ``d``, or None if ``d`` is covered."""
        if self.contains(d):
            return None
        gaps = self.gaps()
        for gap in gaps:
            if gap.contains_interior(d):
                return gap.start, gap.end
        # d sits where a wide gap was split into narrower pieces
        for gap in gaps:
            if gap.contains(d):
                return gap.start, gap.end
        return None

    def to_json(self) -> list:
        return [s.to_json() for s in self.sectors]


def rect_sector(r: Rect) -> Sector:
    """Closed sector of rays from the origin that meet ``r``."""
    if r.contains_origin():
        raise FullPlaneError(r)
    dirs = [Direction(*c) for c in r.corners if c != (0, 0)]
    # all corners lie in an open half-plane, so the cross order is total
    start = next(d for d in dirs if all(cross(d, e) >= 0 for e in dirs))
    end = next(d for d in dirs if all(cross(e, d) >= 0 for e in dirs))
    return Sector(start, end)


def cone_sectors(k: RectSet) -> SectorSet:
    """Cone over ``k`` as a canonical sector union; raises FullPlaneError."""
    return SectorSet.from_sectors(rect_sector(r) for r in k)


@dataclass(frozen=True)
class SlopeSet:
    """Set of non-vertical slopes plus a flag for the vertical direction.

    ``intervals`` holds closed ``(lo, hi)`` pairs where None stands for an
    infinite end.
    """

    intervals: tuple = ()
    vertical: bool = False

    def contains(self, m) -> bool:
        return any((lo is None or lo <= m) and (hi is None or m <= hi) for lo, hi in self.intervals)

    __contains__ = contains

    def _clipped(self, lo, hi) -> list:
        out = []
        for a, b in self.intervals:
            left = lo if a is None or a <= lo else a
            right = hi if b is None or b >= hi else b
            left_open = a is None or a <= lo
            right_open = b is None or b >= hi
            if left < right or (left == right and not left_open and not right_open):
                out.append((left, right))
        return out

    def intersects_open(self, lo, hi) -> bool:
        """True when some slope strictly between ``lo`` and ``hi`` is in the set."""
        return bool(self._clipped(lo, hi))

    def sample_in_open(self, lo, hi):
        """A slope of the set strictly inside ``(lo, hi)``, or None."""
        pieces = self._clipped(lo, hi)
        if not pieces:
            return None
        left, right = pieces[0]
        return (left + right) / 2

    def to_json(self) -> dict:
        enc = lambda v: None if v is None else encode_rational(v)  # noqa: E731
        return {"intervals": [[enc(a), enc(b)] for a, b in self.intervals], "vertical": self.vertical}


def _sector_slopes(s: Sector) -> SlopeSet:
    up, down = Direction(0, 1), Direction(0, -1)
    vertical = s.contains(up) or s.contains(down)
    a, b = s.start.slope, s.end.slope
    if not vertical:
        return SlopeSet(((a, b),), False)
    if s.is_ray:
        return SlopeSet((), True)
    intervals = []
    if b is not None:
        intervals.append((None, b))
    if a is not None:
        intervals.append((a, None))
    return SlopeSet(tuple(intervals), True)


def double_hit_slopes(r1: Rect, r2: Rect) -> SlopeSet:
    """Slopes ``m`` for which some line ``y = m x + q`` meets both rectangles.

    Such a line exists exactly when ``r2 - r1`` contains a nonzero vector
    of slope ``m``, so the answer is the line-direction set of the
    difference rectangle.
    """
    if r1.intersects(r2):
        raise ValueError(f"rectangles overlap: {r1} and {r2}")
    return _sector_slopes(rect_sector(r2 - r1))


def intercept_range(r: Rect, m) -> Interval:
    """Intercepts ``q`` of lines ``y = m x + q`` that meet ``r``."""
    lo = r.y.lo - max(m * r.x.lo, m * r.x.hi)
    hi = r.y.hi - min(m * r.x.lo, m * r.x.hi)
    return Interval(lo, hi)


def line_hits_rect(m, q, r: Rect) -> bool:
    return q in intercept_range(r, m)


def common_intercept(r1: Rect, r2: Rect, m):
    """An intercept ``q`` whose line of slope ``m`` meets both, or None."""
    a, b = intercept_range(r1, m), intercept_range(r2, m)
    lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
    return lo if lo <= hi else None


def rect_meets_open_band(r: Rect, lo, hi) -> bool:
    """Does ``r`` contain a point on some line ``y = m x``, ``lo < m < hi``, other than 0?

    Checks both the band's wedge in ``x > 0`` and its antipode. Requires
    ``0 < lo < hi``.
    """
    return _meets_wedge(r.x.lo, r.x.hi, r.y.lo, r.y.hi, lo, hi) or _meets_wedge(
        -r.x.hi, -r.x.lo, -r.y.hi, -r.y.lo, lo, hi
    )


def _meets_wedge(a, b, c, d, lo, hi) -> bool:
    # need x in [a, b], x > 0, x > c/hi, x < d/lo
    return b > 0 and d > 0 and hi * b > c and d > lo * a and hi * d > lo * c


def _common_scale(values) -> int:
    scale = 1
    for v in values:
        scale = math.lcm(scale, Fraction(v).denominator)
    return scale


def _rect_array(rects, scale: int) -> np.ndarray:
    rows = [[int(v * scale) for v in (r.x.lo, r.x.hi, r.y.lo, r.y.hi)] for r in rects]
    arr = np.array(rows, dtype=object).reshape(-1, 4)
    if arr.size and int(np.abs(arr).max()) < 2**60:
        arr = arr.astype(np.int64)
    return arr


def _rect_coords(rects):
    return (v for r in rects for v in (r.x.lo, r.x.hi, r.y.lo, r.y.hi))


def _diff_array(arr: np.ndarray) -> np.ndarray:
    diff = np.stack(
        [
            arr[:, None, 0] - arr[None, :, 1],
            arr[:, None, 1] - arr[None, :, 0],
            arr[:, None, 2] - arr[None, :, 3],
            arr[:, None, 3] - arr[None, :, 2],
        ],
        axis=-1,
    ).reshape(-1, 4)
    if diff.dtype == object:
        return np.array(sorted({tuple(row) for row in diff.tolist()}), dtype=object).reshape(-1, 4)
    return np.unique(diff, axis=0)


def diff_rects(k: RectSet) -> list:
    """Distinct rectangles ``r - s`` over all ordered pairs of components."""
    rects = list(k)
    scale = _common_scale(_rect_coords(rects))
    uniq = _diff_array(_rect_array(rects, scale))
    return [Rect.from_bounds(*(Fraction(int(v), scale) for v in row)) for row in uniq.tolist()]


def _coverage(rows: np.ndarray, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    # cells of the arrangement: even index = grid line, odd = open span
    nx, ny = 2 * len(xs) - 1, 2 * len(ys) - 1
    x0 = 2 * np.searchsorted(xs, rows[:, 0])
    x1 = 2 * np.searchsorted(xs, rows[:, 1])
    y0 = 2 * np.searchsorted(ys, rows[:, 2])
    y1 = 2 * np.searchsorted(ys, rows[:, 3])
    acc = np.zeros((nx + 1, ny + 1), dtype=np.int32)
    np.add.at(acc, (x0, y0), 1)
    np.add.at(acc, (x1 + 1, y0), -1)
    np.add.at(acc, (x0, y1 + 1), -1)
    np.add.at(acc, (x1 + 1, y1 + 1), 1)
    np.cumsum(acc, axis=0, out=acc)
    np.cumsum(acc, axis=1, out=acc)
    return acc[:nx, :ny] > 0


def _unions_equal_arrays(ra: np.ndarray, rb: np.ndarray) -> bool:
    if ra.dtype == object or rb.dtype == object:
        # object arrays do not sort reliably inside searchsorted; map by rank
        both = np.concatenate([ra, rb])
        xs = sorted(set(both[:, 0].tolist()) | set(both[:, 1].tolist()))
        ys = sorted(set(both[:, 2].tolist()) | set(both[:, 3].tolist()))
        xr = {v: k for k, v in enumerate(xs)}
        yr = {v: k for k, v in enumerate(ys)}

        def ranks(arr):
            return np.array(
                [[xr[r[0]], xr[r[1]], yr[r[2]], yr[r[3]]] for r in arr.tolist()], dtype=np.int64
            ).reshape(-1, 4)

        ra, rb = ranks(ra), ranks(rb)
    both = np.concatenate([ra, rb])
    xs = np.unique(np.concatenate([both[:, 0], both[:, 1]]))
    ys = np.unique(np.concatenate([both[:, 2], both[:, 3]]))
    return bool(np.array_equal(_coverage(ra, xs, ys), _coverage(rb, xs, ys)))


def rect_unions_equal(a: Iterable[Rect], b: Iterable[Rect]) -> bool:
    """Exact equality of two finite unions of closed rectangles.

    Both unions are rasterized onto the arrangement of all their edge
    coordinates, where every cell is either fully inside or fully outside
    each rectangle.
    """
    a, b = list(a), list(b)
    if not a or not b:
        return not a and not b
    scale = _common_scale(_rect_coords(a + b))
    return _unions_equal_arrays(_rect_array(a, scale), _rect_array(b, scale))


def diff_union_equals(k: RectSet, target: RectSet) -> bool:
    """Is the union of all ``r - s`` (``r, s`` components of ``k``) equal to ``target``?"""
    if not k or not target:
        return not k and not target
    scale = _common_scale(_rect_coords(list(k) + list(target)))
    return _unions_equal_arrays(_diff_array(_rect_array(list(k), scale)), _rect_array(list(target), scale))
