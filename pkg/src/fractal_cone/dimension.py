"""Box counts, similarity dimensions and the building-witness inclusion chain."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .certificates import Certificate, Verdict
from .construction import ConstructionParams, build_A, build_E, build_F
from .geometry import diff_union_equals, product_rectset
from .numerics import minkowski_sum

# branch count -> (power of A, threshold the dimension is claimed to exceed)
_BRANCHES = {2: (1, Fraction(1, 3)), 4: (2, Fraction(2, 3)), 8: (3, Fraction(1))}


@dataclass(frozen=True)
class DimensionReport:
    branches: int
    ratio: Fraction
    depth: int
    box_count: int
    dimension_value: float
    closed_form: float
    threshold: Fraction
    exceeds_threshold: bool

    def to_json(self) -> dict:
        return {
            "branches": self.branches,
            "ratio": str(self.ratio),
            "depth": self.depth,
            "box_count": self.box_count,
            "dimension_value": self.dimension_value,
            "closed_form": self.closed_form,
            "threshold": str(self.threshold),
            "exceeds_threshold": self.exceeds_threshold,
        }

    def csv_row(self) -> str:
        return f"{self.depth},{self.box_count},{self.dimension_value!r}"


def similarity_dimension(branches: int, ratio) -> float:
    """``ln N / ln(1/r)`` for ``N`` similitudes of common ratio ``r``."""
    return math.log(branches) / math.log(1 / Fraction(ratio))


def dimension_report(n_branches: int, p: ConstructionParams) -> DimensionReport:
    """Box count of ``A^k`` at scale ``beta**depth`` and the dimension it implies.

    ``n_branches`` of 2, 4, 8 selects ``A``, ``A x A`` or ``A x A x A``.
    The threshold flag is decided exactly: ``ln N / ln(8 - eps) > k/3``
    with ``N = 2**k`` is equivalent to ``8 - eps < 8``.
    """
    if n_branches not in _BRANCHES:
        raise ValueError(f"unsupported branch count {n_branches}; expected 2, 4 or 8")
    power, threshold = _BRANCHES[n_branches]
    beta = p.beta
    box_count = len(build_A(p)) ** power
    closed = similarity_dimension(n_branches, beta)
    if p.depth == 0:
        value = closed
    else:
        value = math.log(box_count) / math.log((1 / beta) ** p.depth)
    exceeds = 1 / beta < 8
    return DimensionReport(n_branches, beta, p.depth, box_count, value, closed, threshold, exceeds)


def check_building_witness(p: ConstructionParams) -> Certificate:
    """Finite-depth inclusion chain making ``E x E x E`` a building witness.

    Links checked: ``diff(E_i) = F_i`` against an independent expansion of
    the difference set, and ``diff(E_i x E_i) = F_i x F_i`` as exact unions
    of rectangles, which with ``F x F`` inside the cone over itself gives
    ``diff(S) c C`` on every coordinate pair, since every set lies in the
    cone over itself.
    """
    if p.depth < 1:
        raise ValueError("building witness needs depth >= 1")
    a, e, f = build_A(p), build_E(p), build_F(p)
    plus = minkowski_sum(a, a)
    expanded = minkowski_sum(a, -a) | plus | -plus
    links = {"diff_E_equals_F": expanded == f}
    links["diff_E_subset_F"] = expanded <= f
    ee = product_rectset(e, e)
    links["diff_ExE_equals_FxF"] = diff_union_equals(ee, product_rectset(f, f))
    verdict = Verdict.PASS if all(links.values()) else Verdict.FAIL
    return Certificate(
        "building-witness",
        p.to_json(),
        verdict,
        {"links": links, "components": {"E": len(e), "F": len(f), "ExE": len(ee)}},
    )
