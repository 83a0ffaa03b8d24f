"""Command-line front end.

Exit status: 0 PASS, 1 FAIL, 2 INCONCLUSIVE, 3 usage error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .blowup import BlowupFrame, blowup_rescale, blowup_sector_avoidance, grid_corners
from .certificates import Certificate, Verdict, dumps
from .cones import (
    admissible_epsilon_search,
    band_no_plane,
    check_claimed_line,
    check_product_band,
    ftilde_no_plane,
    sharpness_witnesses,
)
from .construction import (
    ConstructionParams,
    build_A,
    build_E,
    build_F,
    build_Ftilde,
    build_G,
    verify_homothety,
)
from .dimension import check_building_witness, dimension_report
from .geometry import RectSet, product_rectset
from .render import render_figure

USAGE_ERROR = 3

CLAIMS = (
    "homothety",
    "line-avoids-cone",
    "slope-band",
    "no-plane",
    "building-witness",
    "blowup-avoidance",
)
# the construction claims need a small epsilon, the product-set claims use 1
CLAIM_EPSILON = {
    "homothety": Fraction(1, 8),
    "line-avoids-cone": Fraction(1, 8),
    "building-witness": Fraction(1, 8),
    "slope-band": Fraction(1),
    "no-plane": Fraction(1),
    "blowup-avoidance": Fraction(1),
}
DEFAULT_DEPTH = 4
DEFAULT_BAND = (Fraction(7, 5), Fraction(5))


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    epsilon: Fraction | None = None
    depth: int = DEFAULT_DEPTH
    claim: str | None = None
    band: tuple = DEFAULT_BAND
    output: str | None = None
    format: str = "json"
    extra: dict = field(default_factory=dict)

    def params(self, claim: str | None = None) -> ConstructionParams:
        eps = self.epsilon
        if eps is None:
            eps = CLAIM_EPSILON.get(claim, Fraction(1))
        return ConstructionParams(eps, self.depth)


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def parse_band(text: str) -> tuple:
    lo, sep, hi = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError("band must look like lo:hi, e.g. 7/5:5")
    lo, hi = parse_rational(lo), parse_rational(hi)
    if not 0 < lo < hi:
        raise argparse.ArgumentTypeError("band must satisfy 0 < lo < hi")
    return lo, hi


def parse_point(text: str) -> tuple:
    return tuple(parse_rational(v) for v in text.split(","))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fractal-cone", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, depth_default=DEFAULT_DEPTH):
        p.add_argument("--epsilon", type=parse_rational, default=None, help="rational epsilon, e.g. 1/8")
        p.add_argument("--depth", type=int, default=depth_default)
        p.add_argument("-o", "--output", default=None, help="write here instead of stdout")

    p = sub.add_parser("construct", help="emit A_i, E_i, F_i, G_i or Ftilde_i as JSON")
    common(p)
    p.add_argument("--set", dest="set_name", choices=["A", "E", "F", "G", "Ftilde", "AxA"], default="A")

    p = sub.add_parser("verify", help="run a claim and write its certificate")
    common(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--claim", choices=CLAIMS)
    group.add_argument("--all", action="store_true", help="run every claim")
    p.add_argument("--band", type=parse_band, default=DEFAULT_BAND)
    p.add_argument("--cone", choices=["band", "ftilde"], default="band", help="cone used by no-plane")
    p.add_argument("--search", action="store_true",
                   help="with line-avoids-cone: bisect for the epsilons where the line works")

    p = sub.add_parser("dimension", help="box counts and similarity dimension")
    common(p)
    p.add_argument("--branches", type=int, choices=[2, 4, 8], default=2)
    p.add_argument("--format", choices=["json", "csv"], default="json")

    p = sub.add_parser("blowup", help="rescale A_i x A_i (or A_i) around a point")
    common(p)
    p.add_argument("--center", type=parse_point, required=True, help="x or x,y")
    p.add_argument("--scale", type=parse_rational, required=True)

    p = sub.add_parser("render", help="SVG figure")
    common(p, depth_default=1)
    p.add_argument("--figure", choices=["ftilde-line", "product-band"], required=True)
    return parser


def _run_claim(claim: str, cfg: RunConfig) -> Certificate:
    p = cfg.params(claim)
    if claim == "homothety":
        return verify_homothety(p)
    if claim == "line-avoids-cone":
        return check_claimed_line(p)
    if claim == "slope-band":
        cert = check_product_band(p, cfg.band)
        cert.witness["boundary_witnesses"] = sharpness_witnesses(p, cfg.band)
        return cert
    if claim == "no-plane":
        if cfg.extra.get("cone") == "ftilde":
            return ftilde_no_plane(p)
        return band_no_plane(p, cfg.band)
    if claim == "building-witness":
        return check_building_witness(p)
    if claim == "blowup-avoidance":
        level = min(2, p.depth)
        return _blowup_claim(p, cfg.band, level)
    raise UsageError(f"unknown claim {claim!r}")


def _blowup_claim(p: ConstructionParams, band, level: int) -> Certificate:
    return blowup_sector_avoidance(p, band, grid_corners(p, level), [p.beta, p.beta**2])


def _verify_all(cfg: RunConfig) -> dict:
    certs = [_run_claim(c, cfg) for c in CLAIMS]
    # the cone over Ftilde_1 also yields a no-plane certificate
    eps = cfg.epsilon if cfg.epsilon is not None else CLAIM_EPSILON["line-avoids-cone"]
    certs.append(ftilde_no_plane(ConstructionParams(eps, cfg.depth)))
    verdicts = [c.verdict for c in certs]
    if Verdict.FAIL in verdicts:
        overall = Verdict.FAIL
    elif Verdict.INCONCLUSIVE in verdicts:
        overall = Verdict.INCONCLUSIVE
    else:
        overall = Verdict.PASS
    return {"certificates": certs, "verdict": overall}


def _construct(cfg: RunConfig):
    p = cfg.params()
    name = cfg.extra["set_name"]
    builders = {
        "A": build_A,
        "E": build_E,
        "F": build_F,
        "G": lambda q: RectSet((build_G(q),)),
        "Ftilde": build_Ftilde,
        "AxA": lambda q: product_rectset(build_A(q), build_A(q)),
    }
    return {"epsilon": p.epsilon, "depth": p.depth, "name": name, "set": builders[name](p)}


def run(cfg: RunConfig) -> tuple:
    """Execute ``cfg``; returns ``(exit_status, text)``."""
    if cfg.command == "construct":
        return 0, dumps(_construct(cfg))
    if cfg.command == "verify":
        if cfg.extra.get("all"):
            result = _verify_all(cfg)
            return result["verdict"].exit_code, dumps(result)
        if cfg.extra.get("search"):
            if cfg.claim != "line-avoids-cone":
                raise UsageError("--search only applies to --claim line-avoids-cone")
            return 0, dumps(admissible_epsilon_search())
        cert = _run_claim(cfg.claim, cfg)
        return cert.verdict.exit_code, dumps(cert)
    if cfg.command == "dimension":
        p = cfg.params()
        n = cfg.extra["branches"]
        if cfg.format == "csv":
            rows = ["depth,box_count,dimension_value"]
            rows += [dimension_report(n, p.at(d)).csv_row() for d in range(1, p.depth + 1)]
            return 0, "\n".join(rows) + "\n"
        return 0, dumps(dimension_report(n, p))
    if cfg.command == "blowup":
        p = cfg.params()
        center = cfg.extra["center"]
        a = build_A(p)
        s = a if len(center) == 1 else product_rectset(a, a)
        frame = BlowupFrame(center, cfg.extra["scale"], p.depth)
        return 0, dumps({"frame": frame, "epsilon": p.epsilon, "set": blowup_rescale(s, frame)})
    if cfg.command == "render":
        return 0, render_figure(cfg.extra["figure"], cfg.params())
    raise UsageError(f"unknown command {cfg.command!r}")


def config_from_args(args: argparse.Namespace) -> RunConfig:
    extra = {k: v for k, v in vars(args).items()
             if k not in ("command", "epsilon", "depth", "claim", "band", "output", "format")}
    return RunConfig(
        command=args.command,
        epsilon=args.epsilon,
        depth=args.depth,
        claim=getattr(args, "claim", None),
        band=getattr(args, "band", DEFAULT_BAND),
        output=args.output,
        format=getattr(args, "format", "svg" if args.command == "render" else "json"),
        extra=extra,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = config_from_args(args)
    try:
        status, text = run(cfg)
    except (UsageError, ValueError) as exc:
        print(f"fractal-cone: error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    if cfg.output:
        try:
            with open(cfg.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"fractal-cone: cannot write {cfg.output}: {exc}", file=sys.stderr)
            return USAGE_ERROR
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
