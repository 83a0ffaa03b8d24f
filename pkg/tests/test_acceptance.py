"""Acceptance criteria, each checked at its stated tolerance and time bound.

Run directly (``python tests/test_acceptance.py``) for a plain pass/fail
listing, or through pytest, which repeats the lines in its summary.
"""

import math
import random
import subprocess
import sys
import time
from fractions import Fraction as F

from fractal_cone import construction
from fractal_cone.blowup import blowup_sector_avoidance, grid_corners, rescaled_prefix
from fractal_cone.cones import (
    ConeComplement,
    certify_no_plane,
    check_claimed_line,
    check_product_band,
    sharpness_witnesses,
)
from fractal_cone.construction import build_A, build_E, build_F, params, verify_homothety
from fractal_cone.dimension import check_building_witness, dimension_report
from fractal_cone.geometry import diff_union_equals, line_hits_rect, product_rectset
from fractal_cone.numerics import Interval, diff_set, minkowski_sum, normalize

from _oracles import grid_points, pairs, rect_grid
from acceptance_log import report

BAND = (F(7, 5), F(5))


def cold_caches():
    for fn in (construction.build_A, construction.build_E, construction.build_F, construction.build_Ftilde):
        fn.cache_clear()


def test_criterion_1_homothety():
    cold_caches()
    start = time.perf_counter()
    certs = {eps: verify_homothety(params(eps, 5)) for eps in (F(1), F(1, 8), F(3))}
    elapsed = time.perf_counter() - start
    ok = all(c.passed for c in certs.values()) and all(
        [row["depth"] for row in c.witness["checked"]] == [1, 2, 3, 4] for c in certs.values()
    )
    report("1 homothety Ftilde_{i+1} = beta Ftilde_i, i=1..4, eps in {1,1/8,3}", ok and elapsed < 5,
           f"{elapsed:.2f}s (< 5s)")


def test_criterion_2_line_claim():
    cold_caches()
    start = time.perf_counter()
    small = [check_claimed_line(params(F(1, 8), i)) for i in range(1, 5)]
    large = check_claimed_line(params(1, 1))
    elapsed = time.perf_counter() - start
    ok = all(c.passed for c in small) and large.verdict.value == "FAIL"
    report("2 line avoids cone: PASS at eps=1/8 on Ftilde_1..4, FAIL at eps=1", ok and elapsed < 1,
           f"{elapsed:.3f}s (< 1s)")


def test_criterion_3_slope_band():
    cold_caches()
    start = time.perf_counter()
    certs = [check_product_band(params(1, i), BAND) for i in range(1, 7)]
    elapsed = time.perf_counter() - start
    pairs_at_6 = certs[-1].witness["pairs_checked"]
    ok = all(c.passed for c in certs) and certs[-1].witness["components"] == 4096
    report("3a slope band (7/5,5) on A_i x A_i, i=1..6", ok and elapsed < 60,
           f"{pairs_at_6} pairs at i=6, {elapsed:.2f}s (< 60s)")

    w = sharpness_witnesses(params(1, 1), BAND)
    sharp = True
    for key, m in (("7/5", F(7, 5)), ("5", F(5))):
        entry = w[key]
        r1, r2 = entry["pair"]
        sharp &= entry["slope"] == m and line_hits_rect(m, entry["intercept"], r1)
        sharp &= line_hits_rect(m, entry["intercept"], r2) and r1 != r2
    report("3b boundary slopes 7/5 and 5 each have an exact double-hit pair", sharp)


def test_criterion_4_dimensions():
    worst = 0.0
    for n, closed in ((2, math.log(2) / math.log(7)), (8, math.log(8) / math.log(7))):
        for d in range(1, 11):
            r = dimension_report(n, params(1, d))
            assert r.box_count == n**d
            worst = max(worst, abs(r.dimension_value - closed))
    report("4a ln2/ln7 and ln8/ln7 at depths 1..10", worst < 1e-12, f"max error {worst:.1e} (< 1e-12)")

    rng = random.Random(4)
    samples = sorted({F(rng.randint(1, 699), 100) for _ in range(40)})[:20]
    samples = samples + [F(1, 10**6), F(7) - F(1, 10**6)]
    flags = all(
        dimension_report(2, params(e, 1)).exceeds_threshold and dimension_report(8, params(e, 1)).exceeds_threshold
        for e in samples
    )
    report("4b flags '> 1/3' (N=2) and '> 1' (N=8) for sampled eps in (0,7)", flags and len(samples) >= 20,
           f"{len(samples)} rationals")


def _random_grid_set(rng, n=4):
    raw = []
    for _ in range(rng.randint(1, 3)):
        a = rng.randint(-n, n)
        raw.append(Interval(F(a, n), F(a + rng.randint(0, n // 2), n)))
    return normalize(raw)


def test_criterion_5_building_witness():
    ok = True
    for eps in (F(1), F(1, 8)):
        for i in range(1, 6):
            # diff(A u -A) expanded by hand: (A - A) u (A + A) u -(A + A)
            a = build_A(params(eps, i))
            plus = minkowski_sum(a, a)
            ok &= (minkowski_sum(a, -a) | plus | -plus) == build_F(params(eps, i))
            ok &= diff_set(build_E(params(eps, i))) == build_F(params(eps, i))
        for i in range(1, 5):
            # the full chain, including diff(E_i x E_i) = F_i x F_i as rectangle unions
            ok &= check_building_witness(params(eps, i)).passed
    for i in (1, 2):
        # independent grid expansion at eps=1, where endpoints are multiples of 7^-i
        e = build_E(params(1, i))
        pts = grid_points(pairs(e), 7**i)
        ok &= {x - y for x in pts for y in pts} == grid_points(pairs(build_F(params(1, i))), 7**i)
    report("5a diff(E_i) = F_i, i=1..5, eps in {1,1/8}", ok)

    rng = random.Random(5)
    agree = 0
    for _ in range(100):
        x, y = _random_grid_set(rng), _random_grid_set(rng)
        pts = rect_grid([(a.lo, a.hi, b.lo, b.hi) for a in x for b in y], 4)
        brute = {(p[0] - q[0], p[1] - q[1]) for p in pts for q in pts}
        dx, dy = diff_set(x), diff_set(y)
        grid = {(u, v) for u in grid_points(pairs(dx), 4) for v in grid_points(pairs(dy), 4)}
        if brute == grid and diff_union_equals(product_rectset(x, y), product_rectset(dx, dy)):
            agree += 1
    report("5b diff(X x Y) = diff(X) x diff(Y) vs grid oracle", agree == 100, f"{agree}/100")


def test_criterion_6_blowups():
    ok, count = True, 0
    for eps in (F(1), F(1, 8)):
        for i in range(0, 9):
            for k in range(0, 9 - i):
                ok &= rescaled_prefix(params(eps, i), k) == build_A(params(eps, i))
                count += 1
    report("6a affine(A_{i+k} n [0,beta^k], beta^-k, 0) = A_i for i+k <= 8", ok, f"{count} identities")

    p = params(1, 4)
    centers = grid_corners(p, 2)
    cert = blowup_sector_avoidance(p, BAND, centers, [p.beta, p.beta**2])
    report("6b blow-up sector avoidance at depth-2 corners, scales beta, beta^2", cert.passed,
           f"{len(centers)} centers, {cert.witness.get('components_checked')} components")


def test_criterion_7_no_plane():
    cone = ConeComplement.from_slope_band(*BAND)
    cert = certify_no_plane(cone, cone, cone)
    omitted = cert.witness.get("omitted", {})
    ok = cert.passed and set(omitted) == {"xy", "xz", "yz"} and all(not s.is_ray for s in omitted.values())
    report("7 no-plane certificate with one omitted open sector per plane", ok)


def test_criterion_8_determinism():
    cmd = [sys.executable, "-m", "fractal_cone", "verify", "--all"]
    runs, times = [], []
    for _ in range(2):
        start = time.perf_counter()
        runs.append(subprocess.run(cmd, capture_output=True, check=False))
        times.append(time.perf_counter() - start)
    same = runs[0].stdout == runs[1].stdout and runs[0].stdout
    ok = same and all(r.returncode == 0 for r in runs) and max(times) < 120
    report("8 'verify --all' byte-identical and fast", bool(ok),
           f"{len(runs[0].stdout)} bytes, {max(times):.1f}s per run (< 120s)")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
