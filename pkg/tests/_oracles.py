"""Brute-force reference computations used to cross-check the exact code.

Everything here works on finite rational grids and never calls into the
package's set algebra, so agreement is meaningful.
"""

from fractions import Fraction
from math import floor, ceil


def pairs(s):
    """Interval endpoints of an IntervalSet as plain tuples."""
    return [(iv.lo, iv.hi) for iv in s]


def grid_points(intervals, n):
    """All multiples of 1/n inside a union of closed intervals."""
    out = set()
    for lo, hi in intervals:
        for k in range(ceil(lo * n), floor(hi * n) + 1):
            out.add(Fraction(k, n))
    return out


def in_union(x, intervals):
    return any(lo <= x <= hi for lo, hi in intervals)


def dist_to_union(x, intervals):
    best = None
    for lo, hi in intervals:
        d = lo - x if x < lo else (x - hi if x > hi else Fraction(0))
        best = d if best is None else min(best, d)
    return best


def sampled_hausdorff_1d(a, b, n):
    """max over grid samples of each set of the distance to the other set."""
    da = max(dist_to_union(x, b) for x in grid_points(a, n))
    db = max(dist_to_union(x, a) for x in grid_points(b, n))
    return max(da, db)


def rect_grid(rects, n):
    """Grid points of pitch 1/n inside a union of rectangles (xlo, xhi, ylo, yhi)."""
    out = set()
    for xlo, xhi, ylo, yhi in rects:
        xs = range(ceil(xlo * n), floor(xhi * n) + 1)
        ys = range(ceil(ylo * n), floor(yhi * n) + 1)
        out.update((Fraction(i, n), Fraction(j, n)) for i in xs for j in ys)
    return out


def max_dist_to_rects(p, rects):
    x, y = p
    best = None
    for xlo, xhi, ylo, yhi in rects:
        dx = max(xlo - x, Fraction(0), x - xhi)
        dy = max(ylo - y, Fraction(0), y - yhi)
        d = max(dx, dy)
        best = d if best is None else min(best, d)
    return best


def sampled_hausdorff_2d(a, b, n):
    da = max(max_dist_to_rects(p, b) for p in rect_grid(a, n))
    db = max(max_dist_to_rects(p, a) for p in rect_grid(b, n))
    return max(da, db)


def ray_meets_rect(d, rect):
    """Does {t d : t > 0} meet the closed rectangle? Solved as a t-interval."""
    dx, dy = d
    xlo, xhi, ylo, yhi = rect
    lo, hi = Fraction(0), None
    for comp, a, b in ((dx, xlo, xhi), (dy, ylo, yhi)):
        if comp == 0:
            if not a <= 0 <= b:
                return False
            continue
        t1, t2 = sorted((Fraction(a) / comp, Fraction(b) / comp))
        lo = max(lo, t1)
        hi = t2 if hi is None else min(hi, t2)
    if hi is None:
        return True
    return lo <= hi and hi > 0


def pair_slopes(r1, r2, n):
    """Slopes (None for vertical) of segments joining grid points of r1 and r2."""
    out = set()
    for p in rect_grid([r1], n):
        for q in rect_grid([r2], n):
            dx, dy = q[0] - p[0], q[1] - p[1]
            if (dx, dy) == (0, 0):
                continue
            out.add(None if dx == 0 else dy / dx)
    return out
