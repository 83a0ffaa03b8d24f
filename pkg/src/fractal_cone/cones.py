"""Certified statements about planar cones over the constructed sets."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .certificates import Certificate, Verdict
from .construction import ConstructionParams, build_A, build_Ftilde, build_G, verify_homothety
from .geometry import (
    Direction,
    FullPlaneError,
    Rect,
    RectSet,
    Sector,
    SectorSet,
    common_intercept,
    cone_sectors,
    double_hit_slopes,
    product_rectset,
    rect_sector,
)
from .numerics import as_rational

THREADS_ENV = "FRACTAL_CONE_THREADS"


def worker_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return min(8, os.cpu_count() or 1)


def claimed_line_slope(epsilon) -> Fraction:
    """Slope ``(2 + eps) / (1 - 2/(8 - eps))`` of the line claimed to miss the cone."""
    eps = as_rational(epsilon)
    return (2 + eps) / (1 - Fraction(2) / (8 - eps))


def claim_line_avoids_cone(m: Direction, k: RectSet, params: dict | None = None) -> Certificate:
    """PASS iff the line through the origin along ``m`` meets the cone over ``k`` only at 0."""
    info = {**(params or {}), "direction": m, "slope": m.slope}
    try:
        sectors = cone_sectors(k)
    except FullPlaneError as exc:
        return Certificate("line-avoids-cone", info, Verdict.FAIL, {"full_plane_component": exc.rect})
    for d in (m, -m):
        if sectors.contains(d):
            for r in k:
                s = rect_sector(r)
                if s.contains(d):
                    return Certificate(
                        "line-avoids-cone",
                        info,
                        Verdict.FAIL,
                        {"hit_direction": d, "component": r, "component_sector": s},
                    )
    gaps = {}
    for name, d in (("forward", m), ("backward", -m)):
        start, end = sectors.neighbors(d)
        gaps[name] = Sector(start, end)
    return Certificate(
        "line-avoids-cone",
        info,
        Verdict.PASS,
        {"bracketing_gaps": gaps, "sector_count": len(sectors.sectors)},
    )


def check_claimed_line(p: ConstructionParams) -> Certificate:
    """The line claim for ``Ftilde_depth`` at the given epsilon."""
    m = Direction.of_slope(claimed_line_slope(p.epsilon))
    g, g_next = build_G(p), build_G(p.at(p.depth + 1))
    if g_next == g:
        # G_i never shrinks, so the cone over F x F contains the cone over G: everything
        return Certificate(
            "line-avoids-cone",
            {**p.to_json(), "direction": m, "slope": m.slope},
            Verdict.FAIL,
            {"full_plane_component": g, "reason": "central component does not shrink"},
        )
    return claim_line_avoids_cone(m, build_Ftilde(p), p.to_json())


def admissible_epsilon_search(lo=Fraction(1, 64), hi=Fraction(111, 16), grid: int = 64,
                              tolerance=Fraction(1, 2**20)) -> dict:
    """Map the epsilons where the claimed line misses the cone over ``Ftilde_1``.

    Scans a rational grid, then bisects every verdict change down to
    ``tolerance``. Reported boundaries are rational brackets, since the
    true thresholds are in general irrational.
    """
    lo, hi, tolerance = as_rational(lo), as_rational(hi), as_rational(tolerance)

    def ok(eps: Fraction) -> bool:
        return check_claimed_line(ConstructionParams(eps, 1)).passed

    points = [lo + (hi - lo) * k / grid for k in range(grid + 1)]
    verdicts = [ok(e) for e in points]
    transitions = []
    for (a, va), (b, vb) in zip(zip(points, verdicts), zip(points[1:], verdicts[1:])):
        if va == vb:
            continue
        while b - a > tolerance:
            mid = (a + b) / 2
            if ok(mid) == va:
                a = mid
            else:
                b = mid
        transitions.append({"below": a, "above": b, "pass_below": va})
    return {
        "scan": {"lo": lo, "hi": hi, "grid": grid},
        "tolerance": tolerance,
        "transitions": transitions,
        "passing_samples": [e for e, v in zip(points, verdicts) if v],
    }


# slope band ---------------------------------------------------------------


def _band_hits_numpy(rects: list, lo: Fraction, hi: Fraction):
    """First pair ``(i, j)``, ``i < j``, whose difference rectangle meets the band.

    Coordinates are scaled to integers so the predicate is exact; falls back
    to Python integers (object arrays) when int64 could overflow.
    """
    n = len(rects)
    if n < 2:
        return None
    coords = [v for r in rects for v in (r.x.lo, r.x.hi, r.y.lo, r.y.hi)]
    scale = 1
    for v in coords:
        scale = math.lcm(scale, v.denominator)
    ints = [int(v * scale) for v in coords]
    pl, ql = lo.numerator, lo.denominator
    ph, qh = hi.numerator, hi.denominator
    bound = 2 * max(abs(v) for v in ints) * max(pl * qh, ph * ql, pl, ql, ph, qh)
    dtype = np.int64 if bound < 2**62 else object
    arr = np.array(ints, dtype=dtype).reshape(n, 4)
    xlo, xhi, ylo, yhi = arr[:, 0], arr[:, 1], arr[:, 2], arr[:, 3]

    def wedge(a, b, c, d):
        return (b > 0) & (d > 0) & (ph * b > qh * c) & (ql * d > pl * a) & (ph * ql * d > pl * qh * c)

    def chunk(start: int, stop: int):
        rows = slice(start, stop)
        # difference rectangle rect_j - rect_i
        a = xlo[None, :] - xhi[rows, None]
        b = xhi[None, :] - xlo[rows, None]
        c = ylo[None, :] - yhi[rows, None]
        d = yhi[None, :] - ylo[rows, None]
        hit = wedge(a, b, c, d) | wedge(-b, -a, -d, -c)
        upper = np.arange(n)[None, :] > np.arange(start, stop)[:, None]
        hit = np.asarray(hit & upper, dtype=bool)
        if hit.any():
            i, j = np.argwhere(hit)[0]
            return start + int(i), int(j)
        return None

    step = max(1, min(n, 2**20 // n))
    bounds = [(s, min(n, s + step)) for s in range(0, n, step)]
    workers = worker_count()
    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda b: chunk(*b), bounds))
    else:
        results = [chunk(*b) for b in bounds]
    hits = [r for r in results if r is not None]
    return min(hits) if hits else None


def band_witness(r1: Rect, r2: Rect, lo, hi) -> dict | None:
    """Explicit ``(m, q)`` with ``lo < m < hi`` whose line meets both rectangles."""
    slopes = double_hit_slopes(r1, r2)
    m = slopes.sample_in_open(lo, hi)
    if m is None:
        return None
    q = common_intercept(r1, r2, m)
    return {"pair": [r1, r2], "slope": m, "intercept": q}


def slope_band_check(band: tuple, k: RectSet, params: dict | None = None) -> Certificate:
    """PASS iff no line with slope strictly inside ``band`` meets two components of ``k``."""
    lo, hi = (as_rational(v) for v in band)
    if not 0 < lo < hi:
        raise ValueError("band must satisfy 0 < lo < hi")
    info = {**(params or {}), "band": [lo, hi]}
    rects = list(k.parts)
    n = len(rects)
    pair = _band_hits_numpy(rects, lo, hi)
    pairs = n * (n - 1) // 2
    if pair is None:
        return Certificate("slope-band", info, Verdict.PASS, {"components": n, "pairs_checked": pairs})
    witness = band_witness(rects[pair[0]], rects[pair[1]], lo, hi)
    assert witness is not None, "vectorized and scalar band predicates disagree"
    return Certificate("slope-band", info, Verdict.FAIL, {"components": n, **witness})


def check_product_band(p: ConstructionParams, band=(Fraction(7, 5), Fraction(5))) -> Certificate:
    a = build_A(p)
    return slope_band_check(band, product_rectset(a, a), p.to_json())


def sharpness_witnesses(p: ConstructionParams, band=(Fraction(7, 5), Fraction(5))) -> dict:
    """For each band endpoint, a component pair and intercept realizing a double hit there."""
    a = build_A(p.at(max(p.depth, 1)))
    rects = list(product_rectset(a, a))
    out = {}
    for m in (as_rational(band[0]), as_rational(band[1])):
        found = None
        for i, r1 in enumerate(rects):
            for r2 in rects[i + 1:]:
                if m in double_hit_slopes(r1, r2):
                    found = {"pair": [r1, r2], "slope": m, "intercept": common_intercept(r1, r2, m)}
                    break
            if found:
                break
        out[str(m)] = found
    return out


# no-plane certificate -----------------------------------------------------


@dataclass(frozen=True)
class ConeComplement:
    """Planar cone given as the plane minus the interiors of ``omitted`` sectors."""

    omitted: tuple = ()

    @classmethod
    def full(cls) -> "ConeComplement":
        return cls(())

    @classmethod
    def from_slope_band(cls, lo, hi) -> "ConeComplement":
        """``{y != m x for lo < m < hi} u {0}``: omits the band and its antipode."""
        lo, hi = as_rational(lo), as_rational(hi)
        fwd = Sector(Direction.of_slope(lo), Direction.of_slope(hi))
        back = Sector(-Direction.of_slope(lo), -Direction.of_slope(hi))
        return cls((fwd, back))

    @classmethod
    def from_sector_set(cls, sectors: SectorSet) -> "ConeComplement":
        return cls(tuple(sectors.gaps()))

    def open_sectors(self) -> list:
        return [s for s in self.omitted if not s.is_ray]

    def contains(self, d: Direction) -> bool:
        return not any(s.contains_interior(d) for s in self.omitted)

    def to_json(self) -> list:
        return [s.to_json() for s in self.omitted]


def certify_no_plane(sxy: ConeComplement, sxz: ConeComplement, syz: ConeComplement,
                     params: dict | None = None) -> Certificate:
    """Sufficient test that ``C_xy n C_xz n C_yz`` contains no plane.

    A plane projects onto at least one coordinate plane surjectively, so it
    suffices that every planar cone omits a nonempty open sector.
    """
    witness, full = {}, []
    for name, cone in (("xy", sxy), ("xz", sxz), ("yz", syz)):
        opens = cone.open_sectors()
        if opens:
            witness[name] = opens[0]
        else:
            full.append(name)
    if full:
        return Certificate("no-plane", params or {}, Verdict.INCONCLUSIVE,
                           {"full_planes": full, "omitted": witness})
    return Certificate("no-plane", params or {}, Verdict.PASS, {"omitted": witness})


def membership_3d(point, sxy: ConeComplement, sxz: ConeComplement, syz: ConeComplement) -> bool:
    """Is ``point`` in the intersection of the three cylinder cones?"""
    x, y, z = (as_rational(v) for v in point)
    for (u, v), cone in (((x, y), sxy), ((x, z), sxz), ((y, z), syz)):
        if (u, v) != (0, 0) and not cone.contains(Direction(u, v)):
            return False
    return True


def band_no_plane(p: ConstructionParams, band=(Fraction(7, 5), Fraction(5))) -> Certificate:
    """No-plane certificate for the product of three Cantor sets.

    Each coordinate projection is ``A x A``; the band is usable as an
    omitted sector only after the slope-band check passes on it.
    """
    lo, hi = (as_rational(v) for v in band)
    band_cert = check_product_band(p, (lo, hi))
    cone = ConeComplement.from_slope_band(lo, hi) if band_cert.passed else ConeComplement.full()
    cert = certify_no_plane(cone, cone, cone, {**p.to_json(), "cone": "band", "band": [lo, hi]})
    cert.witness["slope_band_verdict"] = band_cert.verdict.value
    return cert


def ftilde_no_plane(p: ConstructionParams) -> Certificate:
    """No-plane certificate for the cone over ``F x F x F`` via ``Ftilde_1``."""
    if build_G(p.at(2)) == build_G(p.at(1)):
        # the central square never shrinks, so it keeps the origin inside the cone
        cone = ConeComplement.full()
    elif not verify_homothety(p.at(max(p.depth, 3))).passed:
        # without the scaling identity the deeper cones need not match the first
        cone = ConeComplement.full()
    else:
        try:
            cone = ConeComplement.from_sector_set(cone_sectors(build_Ftilde(p.at(1))))
        except FullPlaneError:
            cone = ConeComplement.full()
    line = check_claimed_line(p.at(1))
    cert = certify_no_plane(cone, cone, cone, {**p.to_json(), "cone": "ftilde"})
    if line.passed:
        # prefer the gap that the claimed line runs through
        gap = line.witness["bracketing_gaps"]["forward"]
        cert.witness["omitted"] = {k: gap for k in cert.witness.get("omitted", {})}
    cert.witness["line_verdict"] = line.verdict.value
    return cert
