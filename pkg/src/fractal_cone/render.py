"""Deterministic SVG figures: the cone over ``Ftilde_1`` with its avoiding line,
and ``A_i x A_i`` with lines from the slope band."""

from __future__ import annotations

from fractions import Fraction

from .cones import claimed_line_slope
from .construction import ConstructionParams, build_A, build_Ftilde
from .geometry import cone_sectors, product_rectset

CANVAS = 600
DEFAULT_BAND_LINES = (Fraction(7, 5), Fraction(2), Fraction(5))


def _fmt(v: float) -> str:
    text = f"{v:.4f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


class _Canvas:
    def __init__(self, xmin: float, xmax: float, ymin: float, ymax: float, size: int = CANVAS):
        self.xmin, self.ymax = xmin, ymax
        self.s = size / max(xmax - xmin, ymax - ymin)
        self.size = size
        self.items: list = []

    def pt(self, x, y) -> tuple:
        return (float(x) - self.xmin) * self.s, (self.ymax - float(y)) * self.s

    def rect(self, r, cls: str) -> None:
        x0, y1 = self.pt(r.x.lo, r.y.hi)
        x1, y0 = self.pt(r.x.hi, r.y.lo)
        self.items.append(
            f'<rect class="{cls}" x="{_fmt(x0)}" y="{_fmt(y1)}" '
            f'width="{_fmt(x1 - x0)}" height="{_fmt(y0 - y1)}"/>'
        )

    def wedge(self, sector, radius: float) -> None:
        ox, oy = self.pt(0, 0)
        (ux, uy), (vx, vy) = sector.start.unit_float(), sector.end.unit_float()
        ax, ay = self.pt(radius * ux, radius * uy)
        bx, by = self.pt(radius * vx, radius * vy)
        rr = radius * self.s
        # counterclockwise in the plane is clockwise on screen (y points down)
        self.items.append(
            f'<path class="sector" d="M {_fmt(ox)} {_fmt(oy)} L {_fmt(ax)} {_fmt(ay)} '
            f'A {_fmt(rr)} {_fmt(rr)} 0 0 0 {_fmt(bx)} {_fmt(by)} Z"/>'
        )

    def line(self, p0, p1, cls: str) -> None:
        x0, y0 = self.pt(*p0)
        x1, y1 = self.pt(*p1)
        self.items.append(
            f'<line class="{cls}" x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" y2="{_fmt(y1)}"/>'
        )

    def render(self, title: str) -> str:
        head = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{self.size}" height="{self.size}" viewBox="0 0 {self.size} {self.size}">\n'
            f"<title>{title}</title>\n"
            "<style>"
            ".component{fill:#4a6fa5;stroke:#1d3557;stroke-width:0.5}"
            ".sector{fill:#e63946;fill-opacity:0.15;stroke:none}"
            ".line{stroke:#2a9d8f;stroke-width:1.5}"
            "</style>\n"
        )
        return head + "\n".join(self.items) + "\n</svg>\n"


def _clip_line(slope, through, box) -> tuple:
    """Endpoints of ``y - y0 = m (x - x0)`` inside ``box`` (xmin, xmax, ymin, ymax)."""
    m, (x0, y0) = Fraction(slope), through
    xmin, xmax, ymin, ymax = (Fraction(v) for v in box)
    lo, hi = xmin, xmax
    if m:
        a, b = sorted([x0 + (ymin - y0) / m, x0 + (ymax - y0) / m])
        lo, hi = max(lo, a), min(hi, b)
    return (lo, y0 + m * (lo - x0)), (hi, y0 + m * (hi - x0))


def ftilde_line_svg(p: ConstructionParams, radius: float = 2.1) -> str:
    k = build_Ftilde(p.at(1))
    canvas = _Canvas(-2.2, 2.2, -2.2, 2.2)
    for sector in cone_sectors(k).sectors:
        canvas.wedge(sector, radius)
    for r in k:
        canvas.rect(r, "component")
    m = claimed_line_slope(p.epsilon)
    a, b = _clip_line(m, (Fraction(0), Fraction(0)), ("-11/5", "11/5", "-11/5", "11/5"))
    canvas.line(a, b, "line")
    return canvas.render(f"Ftilde_1 and line of slope {m} (epsilon={p.epsilon})")


def product_band_svg(p: ConstructionParams, slopes=DEFAULT_BAND_LINES) -> str:
    a = build_A(p)
    k = product_rectset(a, a)
    canvas = _Canvas(-0.1, 1.1, -0.1, 1.1)
    for r in k:
        canvas.rect(r, "component")
    first = k.parts[0]
    center = ((first.x.lo + first.x.hi) / 2, (first.y.lo + first.y.hi) / 2)
    for m in slopes:
        p0, p1 = _clip_line(m, center, ("-1/10", "11/10", "-1/10", "11/10"))
        canvas.line(p0, p1, "line")
    return canvas.render(f"A_{p.depth} x A_{p.depth} and band lines (epsilon={p.epsilon})")


def render_figure(which: str, p: ConstructionParams, **extras) -> str:
    if which == "ftilde-line":
        return ftilde_line_svg(p, **extras)
    if which == "product-band":
        return product_band_svg(p, **extras)
    raise ValueError(f"unknown figure {which!r}")


__all__ = ["render_figure", "ftilde_line_svg", "product_band_svg"]
