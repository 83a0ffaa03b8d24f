"""The two-branch Cantor set, its symmetrization and the derived difference sets.

At depth ``i`` every interval of the previous level keeps two children of
relative length ``beta = 1/(8 - epsilon)``, one flush with each end.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .certificates import Certificate, Verdict
from .geometry import Rect, RectSet, product_rectset
from .numerics import Interval, IntervalSet, RationalLike, as_rational, diff_set, normalize


class DegenerateWarning(UserWarning):
    """Raised (as a warning) when a depth-0 request returns the ambient set."""


@dataclass(frozen=True)
class ConstructionParams:
    epsilon: Fraction
    depth: int = 0

    def __post_init__(self) -> None:
        eps = as_rational(self.epsilon)
        if not 0 < eps < 7:
            raise ValueError(f"epsilon must satisfy 0 < epsilon < 7, got {eps}")
        if isinstance(self.depth, bool) or not isinstance(self.depth, int) or self.depth < 0:
            raise ValueError(f"depth must be a non-negative integer, got {self.depth!r}")
        object.__setattr__(self, "epsilon", eps)

    @property
    def beta(self) -> Fraction:
        """Similarity ratio of each child interval."""
        return 1 / (8 - self.epsilon)

    def at(self, depth: int) -> "ConstructionParams":
        return ConstructionParams(self.epsilon, depth)

    def to_json(self) -> dict:
        return {"epsilon": str(self.epsilon), "depth": self.depth}


def params(epsilon: RationalLike, depth: int = 0) -> ConstructionParams:
    return ConstructionParams(as_rational(epsilon), depth)


@lru_cache(maxsize=None)
def build_A(p: ConstructionParams) -> IntervalSet:
    if p.depth == 0:
        return IntervalSet.of((0, 1))
    beta = p.beta
    children = []
    for iv in build_A(p.at(p.depth - 1)):
        step = beta * iv.length
        children.append(Interval(iv.lo, iv.lo + step))
        children.append(Interval(iv.hi - step, iv.hi))
    # for epsilon >= 6 the children touch or overlap and merge here
    return normalize(children)


@lru_cache(maxsize=None)
def build_E(p: ConstructionParams) -> IntervalSet:
    a = build_A(p)
    return a | -a


@lru_cache(maxsize=None)
def build_F(p: ConstructionParams) -> IntervalSet:
    return diff_set(build_E(p))


def central_component(p: ConstructionParams) -> Interval:
    """Component of ``F_i`` that contains the origin."""
    comp = build_F(p).component_of(Fraction(0))
    assert comp is not None, "difference sets always contain 0"
    return comp


def build_G(p: ConstructionParams) -> Rect:
    """Component of ``F_i x F_i`` containing the origin.

    At depth 0 this is the whole square ``[-2, 2]^2``; a
    :class:`DegenerateWarning` flags that case.
    """
    if p.depth == 0:
        warnings.warn("depth 0: G is the ambient square [-2,2]^2", DegenerateWarning, stacklevel=2)
    c0 = central_component(p)
    return Rect(c0, c0)


@lru_cache(maxsize=None)
def build_Ftilde(p: ConstructionParams) -> RectSet:
    """Components of ``F_i x F_i`` not yet accounted for at earlier depths.

    Component filtering stands in for the closed-set subtraction: every
    component of ``F_i x F_i`` lies either inside or outside ``G_{i-1}``,
    so dropping whole components keeps the result closed and exact.
    """
    if p.depth < 1:
        raise ValueError("Ftilde is defined for depth >= 1")
    f = build_F(p)
    g = build_G(p)
    if p.depth == 1:
        comps = list(f)
    else:
        outer = central_component(p.at(p.depth - 1))
        comps = []
        for c in f:
            if outer.contains_interval(c):
                comps.append(c)
            elif outer.intersects(c):
                raise RuntimeError(f"component {c} straddles the boundary of {outer}")
    rects = [r for r in product_rectset(IntervalSet(tuple(comps)), IntervalSet(tuple(comps))) if r != g]
    return RectSet(tuple(rects))


def verify_homothety(p: ConstructionParams) -> Certificate:
    """Check ``Ftilde_{i+1} == beta * Ftilde_i`` exactly for ``1 <= i < depth``."""
    if p.depth < 1:
        raise ValueError("homothety check needs depth >= 1")
    beta = p.beta
    checked = []
    for i in range(1, p.depth):
        prev, nxt = build_Ftilde(p.at(i)), build_Ftilde(p.at(i + 1))
        expected = prev.scale(beta)
        if nxt != expected:
            extra = sorted(set(nxt.parts) - set(expected.parts))
            missing = sorted(set(expected.parts) - set(nxt.parts))
            return Certificate(
                "homothety",
                {**p.to_json(), "ratio": beta},
                Verdict.FAIL,
                {
                    "first_failing_depth": i,
                    "unexpected": extra[:5],
                    "missing": missing[:5],
                },
            )
        checked.append({"depth": i, "components": len(prev)})
    return Certificate(
        "homothety",
        {**p.to_json(), "ratio": beta},
        Verdict.PASS,
        {
            "checked": checked,
            "components_at_depth": len(build_Ftilde(p)),
            "vacuous": len(build_Ftilde(p)) == 0,
        },
    )
