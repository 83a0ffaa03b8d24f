"""Exact finite-depth constructions of Cantor-type sets, their difference
sets and cones, with machine-checkable certificates for the claims made
about them."""

from .blowup import BlowupFrame, blowup_rescale, blowup_sector_avoidance, hausdorff_distance_2d
from .certificates import Certificate, Verdict
from .cones import (
    ConeComplement,
    certify_no_plane,
    claim_line_avoids_cone,
    claimed_line_slope,
    slope_band_check,
)
from .construction import (
    ConstructionParams,
    build_A,
    build_E,
    build_F,
    build_Ftilde,
    build_G,
    params,
    verify_homothety,
)
from .dimension import DimensionReport, check_building_witness, dimension_report
from .geometry import (
    Direction,
    Rect,
    RectSet,
    Sector,
    SectorSet,
    cone_sectors,
    double_hit_slopes,
    product_rectset,
    rect_sector,
)
from .numerics import (
    Interval,
    IntervalSet,
    affine,
    diff_set,
    hausdorff_distance_1d,
    minkowski_sum,
    normalize,
    set_algebra,
)

__version__ = "0.1.0"
