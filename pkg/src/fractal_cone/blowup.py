"""Blow-up rescaling at exact scales and max-metric Hausdorff distances.

Blow-ups are only taken at powers of the similarity ratio and at points of
the construction grid. There the rescaled sets are exact self-similar
copies, so every check below is a rational identity rather than a limit.
The unit ball is the max-metric ball ``[-1, 1]^d``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .certificates import Certificate, Verdict
from .construction import ConstructionParams, build_A
from .geometry import Rect, RectSet, product_rectset, rect_meets_open_band, rect_sector
from .numerics import Interval, IntervalSet, as_rational, hausdorff_distance_1d

UNIT_INTERVAL = Interval(-1, 1)
UNIT_SQUARE = Rect(UNIT_INTERVAL, UNIT_INTERVAL)


@dataclass(frozen=True)
class BlowupFrame:
    center: tuple
    scale: Fraction
    depth: int = 0

    def __post_init__(self) -> None:
        center = self.center
        if not isinstance(center, tuple):
            center = (center,)
        object.__setattr__(self, "center", tuple(as_rational(c) for c in center))
        scale = as_rational(self.scale)
        if scale <= 0:
            raise ValueError("blow-up scale must be positive")
        object.__setattr__(self, "scale", scale)

    def to_json(self) -> dict:
        return {"center": [str(c) for c in self.center], "scale": str(self.scale), "depth": self.depth}


def _nearest_interval(s: IntervalSet, x) -> Interval:
    return min(s, key=lambda iv: iv.distance_to(x))


def blowup_rescale(s, frame: BlowupFrame):
    """``[-1, 1]^d n (s - center) / scale`` for an IntervalSet or RectSet ``s``."""
    r = frame.scale
    if isinstance(s, IntervalSet):
        if len(frame.center) != 1:
            raise ValueError("an interval set needs a one-coordinate center")
        (c,) = frame.center
        if c not in s:
            raise ValueError(f"center {c} not in set; nearest component {_nearest_interval(s, c)}")
        return s.affine(1 / r, -c / r) & IntervalSet((UNIT_INTERVAL,))
    if isinstance(s, RectSet):
        if len(frame.center) != 2:
            raise ValueError("a rectangle set needs a two-coordinate center")
        cx, cy = frame.center
        if frame.center not in s:
            nearest = min(s, key=lambda q: q.distance_to_point(frame.center))
            raise ValueError(f"center {frame.center} not in set; nearest component {nearest}")
        return s.affine(1 / r, (-cx / r, -cy / r)).clip(UNIT_SQUARE)
    raise TypeError(f"cannot blow up {type(s).__name__}")


def rescaled_prefix(p: ConstructionParams, k: int) -> IntervalSet:
    """``A_{i+k} n [0, beta^k]`` magnified by ``beta^-k``; equals ``A_i``."""
    window = IntervalSet.of((0, p.beta**k))
    return (build_A(p.at(p.depth + k)) & window).affine(p.beta**-k, 0)


def grid_corners(p: ConstructionParams, level: int) -> list:
    """Corners of the components of ``A_level x A_level``, all points of ``A x A``."""
    a = build_A(p.at(level))
    pts = {c for r in product_rectset(a, a) for c in r.corners}
    return sorted(pts)


def blowup_sector_avoidance(p: ConstructionParams, band, centers, scales) -> Certificate:
    """Every rescaled view of ``A_depth x A_depth`` avoids the open slope band.

    For each (center, scale) the components of the blow-up that do not
    contain the origin must have direction sectors disjoint from the band
    and from its antipode.
    """
    lo, hi = (as_rational(v) for v in band)
    centers = list(centers)
    k = product_rectset(build_A(p), build_A(p))
    info = {**p.to_json(), "band": [lo, hi], "scales": [as_rational(s) for s in scales]}
    checked = 0
    for center in centers:
        for scale in scales:
            frame = BlowupFrame(tuple(center), scale, p.depth)
            view = blowup_rescale(k, frame)
            for comp in view:
                if comp.contains_origin():
                    continue
                checked += 1
                if rect_meets_open_band(comp, lo, hi):
                    return Certificate(
                        "blowup-avoidance",
                        info,
                        Verdict.FAIL,
                        {"frame": frame, "component": comp, "component_sector": rect_sector(comp)},
                    )
    return Certificate(
        "blowup-avoidance",
        info,
        Verdict.PASS,
        {"centers": len(centers), "components_checked": checked},
    )


# Hausdorff distance in the max metric --------------------------------------


def _covered(target: Rect, rects: list, t: Fraction) -> bool:
    """Is ``target`` inside the union of the closed ``t``-dilations of ``rects``?"""
    grown = [
        (r.x.lo - t, r.x.hi + t, r.y.lo - t, r.y.hi + t)
        for r in rects
    ]
    grown = [g for g in grown if g[0] <= target.x.hi and g[1] >= target.x.lo
             and g[2] <= target.y.hi and g[3] >= target.y.lo]
    if not grown:
        return False
    xs = sorted({target.x.lo, target.x.hi} | {v for g in grown for v in g[:2] if target.x.lo < v < target.x.hi})
    ys = sorted({target.y.lo, target.y.hi} | {v for g in grown for v in g[2:] if target.y.lo < v < target.y.hi})
    xr = {v: i for i, v in enumerate(xs)}
    yr = {v: i for i, v in enumerate(ys)}
    nx, ny = 2 * len(xs) - 1, 2 * len(ys) - 1
    acc = np.zeros((nx + 1, ny + 1), dtype=np.int64)
    for x0, x1, y0, y1 in grown:
        i0 = 2 * xr[max(x0, target.x.lo)]
        i1 = 2 * xr[min(x1, target.x.hi)]
        j0 = 2 * yr[max(y0, target.y.lo)]
        j1 = 2 * yr[min(y1, target.y.hi)]
        acc[i0, j0] += 1
        acc[i1 + 1, j0] -= 1
        acc[i0, j1 + 1] -= 1
        acc[i1 + 1, j1 + 1] += 1
    cover = acc.cumsum(axis=0).cumsum(axis=1)[:nx, :ny]
    return bool((cover > 0).all())


def _event_times(target: Rect, rects: list) -> list:
    # coverage depends only on the order of all edge coordinates, which
    # changes only at these dilation amounts
    times = {Fraction(0)}
    for axis in ("x", "y"):
        lows = [getattr(r, axis).lo for r in rects]
        highs = [getattr(r, axis).hi for r in rects]
        edges = (getattr(target, axis).lo, getattr(target, axis).hi)
        times.update((lo - hi) / 2 for lo in lows for hi in highs if lo > hi)
        times.update(lo - e for lo in lows for e in edges if lo > e)
        times.update(e - hi for hi in highs for e in edges if e > hi)
    return sorted(times)


def _directed_rect(target: Rect, rects: list) -> Fraction:
    times = _event_times(target, rects)
    lo, hi = 0, len(times) - 1
    if not _covered(target, rects, times[hi]):
        raise AssertionError("largest event time must cover the target")
    while lo < hi:
        mid = (lo + hi) // 2
        if _covered(target, rects, times[mid]):
            hi = mid
        else:
            lo = mid + 1
    return times[lo]


def directed_hausdorff_2d(a: RectSet, b: RectSet) -> Fraction:
    """``sup_{p in a} dist_max(p, b)``."""
    rects = list(b)
    return max(_directed_rect(r, rects) for r in a)


def hausdorff_distance_2d(a: RectSet, b: RectSet) -> Fraction:
    """Exact max-metric Hausdorff distance between two rectangle unions."""
    if not a or not b:
        raise ValueError("undefined distance: empty set")
    return max(directed_hausdorff_2d(a, b), directed_hausdorff_2d(b, a))


def distance_to_rectset(p, k: RectSet) -> Fraction:
    return min(r.distance_to_point(p) for r in k)


__all__ = [
    "BlowupFrame",
    "blowup_rescale",
    "rescaled_prefix",
    "grid_corners",
    "blowup_sector_avoidance",
    "hausdorff_distance_1d",
    "hausdorff_distance_2d",
    "directed_hausdorff_2d",
    "distance_to_rectset",
]
