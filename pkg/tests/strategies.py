"""Hypothesis strategies for grid-aligned exact sets."""

from fractions import Fraction

from hypothesis import strategies as st

from fractal_cone.geometry import Rect
from fractal_cone.numerics import Interval, normalize

GRID = 12


@st.composite
def grid_intervals(draw, n=GRID, lo=-GRID, hi=GRID, max_parts=4, min_parts=1):
    raw = draw(st.lists(st.tuples(st.integers(lo, hi), st.integers(0, n // 2)),
                        min_size=min_parts, max_size=max_parts))
    return [(Fraction(a, n), Fraction(min(a + w, hi), n)) for a, w in raw]


@st.composite
def interval_sets(draw, n=GRID, **kw):
    return normalize(Interval(a, b) for a, b in draw(grid_intervals(n=n, **kw)))


@st.composite
def rects(draw, n=GRID, lo=-GRID, hi=GRID):
    x0, y0 = draw(st.integers(lo, hi)), draw(st.integers(lo, hi))
    w, h = draw(st.integers(0, n // 2)), draw(st.integers(0, n // 2))
    return Rect(Interval(Fraction(x0, n), Fraction(x0 + w, n)), Interval(Fraction(y0, n), Fraction(y0 + h, n)))


def rationals(lo=-4, hi=4, max_den=12):
    return st.builds(lambda p, q: Fraction(p, q), st.integers(lo * max_den, hi * max_den), st.integers(1, max_den))
