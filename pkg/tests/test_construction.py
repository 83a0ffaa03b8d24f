import itertools
import warnings
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from fractal_cone.construction import (
    ConstructionParams,
    DegenerateWarning,
    build_A,
    build_E,
    build_F,
    build_Ftilde,
    build_G,
    params,
    verify_homothety,
)
from fractal_cone.geometry import Rect, product_rectset
from fractal_cone.numerics import Interval, IntervalSet, affine

from _oracles import grid_points, pairs

S = IntervalSet.of
EPS = st.sampled_from([F(1), F(1, 8), F(3), F(1, 2), F(5, 2), F(11, 2)])


def ifs_intervals(eps, depth):
    """A_depth as images of [0,1] under every word in the two similitudes."""
    beta = 1 / (8 - F(eps))
    maps = [(beta, F(0)), (beta, 1 - beta)]
    out = []
    for word in itertools.product(maps, repeat=depth):
        lo, hi = F(0), F(1)
        for s, t in reversed(word):
            lo, hi = s * lo + t, s * hi + t
        out.append((lo, hi))
    return sorted(out)


class TestParams:
    @pytest.mark.parametrize("eps", [0, 7, -1, 8])
    def test_epsilon_range(self, eps):
        with pytest.raises(ValueError):
            params(eps, 1)

    @pytest.mark.parametrize("depth", [-1, 1.5, True])
    def test_depth(self, depth):
        with pytest.raises(ValueError):
            ConstructionParams(F(1), depth)

    def test_float_rejected(self):
        with pytest.raises(TypeError):
            params(0.125, 1)

    def test_beta(self):
        assert params(1).beta == F(1, 7)
        assert params("1/8").beta == F(8, 63)


class TestA:
    def test_examples(self):
        assert build_A(params(1, 0)) == S((0, 1))
        assert build_A(params(1, 1)) == S(("0", "1/7"), ("6/7", "1"))
        a2 = build_A(params(1, 2))
        assert len(a2) == 4 and a2.parts[0] == Interval(F(0), F(1, 49))
        assert all(c.length == F(1, 49) for c in a2)

    @settings(max_examples=20, deadline=None)
    @given(EPS, st.integers(0, 6))
    def test_counts_lengths_nesting(self, eps, i):
        p = params(eps, i)
        a = build_A(p)
        assert len(a) == 2**i
        assert all(c.length == p.beta**i for c in a)
        assert build_A(p.at(i + 1)) <= a

    @pytest.mark.parametrize("eps", ["1", "1/8", "3"])
    def test_matches_ifs_words(self, eps):
        for i in range(5):
            assert pairs(build_A(params(eps, i))) == ifs_intervals(eps, i)

    @settings(max_examples=20, deadline=None)
    @given(EPS, st.integers(0, 4), st.integers(0, 4))
    def test_self_similarity(self, eps, i, k):
        p = params(eps, i)
        window = S((0, p.beta**k))
        got = affine(build_A(p.at(i + k)) & window, p.beta**-k, 0)
        assert got == build_A(p)

    def test_children_merge_for_large_epsilon(self):
        # 2 beta >= 1 once epsilon >= 6, so the children of [0,1] touch
        assert build_A(params(6, 1)) == S((0, 1))
        assert len(build_A(params(F(13, 2), 1))) == 1


class TestEF:
    def test_E_examples(self):
        assert build_E(params(1, 0)) == S((-1, 1))
        assert build_E(params(1, 1)) == S((-1, "-6/7"), ("-1/7", "1/7"), ("6/7", 1))
        assert len(build_E(params(1, 2))) == 7

    def test_F_examples(self):
        assert build_F(params(1, 0)) == S((-2, 2))
        assert build_F(params(1, 1)) == S(
            (-2, "-12/7"), ("-8/7", "-5/7"), ("-2/7", "2/7"), ("5/7", "8/7"), ("12/7", 2)
        )

    @pytest.mark.parametrize("eps", [1, "1/8", 3])
    def test_E_count_and_symmetry(self, eps):
        for i in range(5):
            e = build_E(params(eps, i))
            assert len(e) == 2 ** (i + 1) - 1
            assert -e == e

    @pytest.mark.parametrize("depth,n", [(1, 7), (2, 49)])
    def test_diff_E_is_F_on_grid(self, depth, n):
        # endpoints at epsilon=1 are multiples of 1/7^depth
        e = build_E(params(1, depth))
        pts = grid_points(pairs(e), n)
        brute = {x - y for x in pts for y in pts}
        assert brute == grid_points(pairs(build_F(params(1, depth))), n)

    @pytest.mark.parametrize("eps", [1, "1/8", 3, "39/10"])
    def test_E1_separation(self, eps):
        p = params(eps, 1)
        gaps = [hi - lo for lo, hi in build_E(p).gaps()]
        assert min(gaps) == 1 - 2 * p.beta > F(1, 2)

    @pytest.mark.parametrize("eps", [4, "11/2"])
    def test_E1_separation_fails_from_four(self, eps):
        p = params(eps, 1)
        assert min(hi - lo for lo, hi in build_E(p).gaps()) <= F(1, 2)
        assert len(build_F(p)) < 5


class TestG:
    def test_examples(self):
        assert build_G(params(1, 1)) == Rect(Interval(F(-2, 7), F(2, 7)), Interval(F(-2, 7), F(2, 7)))
        assert build_G(params(1, 2)) == Rect(Interval(F(-2, 49), F(2, 49)), Interval(F(-2, 49), F(2, 49)))

    @pytest.mark.parametrize("eps", ["1/8", 1, 3, "39/10"])
    def test_symbolic_depth_one(self, eps):
        p = params(eps, 1)
        c = Interval(-2 * p.beta, 2 * p.beta)
        assert build_G(p) == Rect(c, c)

    def test_depth_zero_is_flagged(self):
        with pytest.warns(DegenerateWarning):
            g = build_G(params(1, 0))
        assert g == Rect(Interval(F(-2), F(2)), Interval(F(-2), F(2)))


class TestFtilde:
    def test_depth_one(self):
        p = params(1, 1)
        f = build_F(p)
        ft = build_Ftilde(p)
        assert len(ft) == 24
        assert set(ft.parts) == set(product_rectset(f, f).parts) - {build_G(p)}

    def test_depth_two_is_scaled_copy(self):
        assert build_Ftilde(params(1, 2)) == build_Ftilde(params(1, 1)).scale(F(1, 7))

    def test_depth_zero_rejected(self):
        with pytest.raises(ValueError):
            build_Ftilde(params(1, 0))

    @pytest.mark.parametrize("eps", ["1/8", 1, 3])
    def test_inside_previous_G(self, eps):
        for i in range(2, 6):
            p = params(eps, i)
            g = build_G(p.at(i - 1))
            ft = build_Ftilde(p)
            assert ft and all(g.contains_rect(r) for r in ft)
            assert build_G(p) not in ft.parts


class TestHomothety:
    @pytest.mark.parametrize("eps,depth", [(1, 4), ("1/8", 4), (3, 3), (1, 6)])
    def test_pass(self, eps, depth):
        cert = verify_homothety(params(eps, depth))
        assert cert.passed
        assert [c["depth"] for c in cert.witness["checked"]] == list(range(1, depth))

    def test_ratio_recorded(self):
        assert verify_homothety(params("1/8", 2)).params["ratio"] == F(8, 63)

    def test_depth_zero(self):
        with pytest.raises(ValueError):
            verify_homothety(params(1, 0))


def test_no_warnings_for_normal_depths():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        build_G(params(1, 3))
