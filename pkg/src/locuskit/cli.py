"""Command-line front end: tables, locus bitmaps, attractor clouds, corner reports."""

from __future__ import annotations

import argparse
import math
import sys

from . import attractor as att
from . import corners, io, membership, star
from .series import SeriesDomainError, TernarySeries, UnresolvedClusterError

# Module-level failures that map to exit status 1.
COMPUTATIONAL_ERRORS = (
    star.WindowExhaustedError,
    star.BracketError,
    star.NoSecondZeroError,
    star.StarDomainError,
    membership.FrontierOverflow,
    corners.NTooSmall,
    corners.ResolutionLimit,
    corners.NotCornerWitness,
    UnresolvedClusterError,
    SeriesDomainError,
    att.InconsistentVerdict,
)

PHI_RANGE = (0.5, star.ALPHA2_APPROX)
PSI_RANGE = (0.5, star.ALPHA3_APPROX)


def _grid(start: float, stop: float, step: float) -> list[float]:
    """start, start+step, ... up to stop, with stop appended if the grid misses it."""
    n = int(math.floor((stop - start) / step + 1e-9))
    xs = [round(start + i * step, 12) for i in range(n + 1)]
    if stop - xs[-1] > 1e-9:
        xs.append(stop)
    return xs


def _floor3(x: float) -> float:
    return math.floor(x * 1000 + 1e-9) / 1000


def _emit(args, header, rows):
    if args.output in (None, "-"):
        sys.stdout.write(io.csv_text(header, rows))
    else:
        io.write_csv(args.output, header, rows)


def cmd_phi_table(args):
    rows = []
    for g in _grid(args.start, args.stop, args.step):
        r = star.phi(g)
        lam = _floor3(r.lam) if args.paper_rounding else r.lam
        rows.append((g, lam, r.k_used, r.witness.a))
    _emit(args, ["gamma", "phi", "k", "a"], rows)


def cmd_psi_table(args):
    rows = []
    for g in _grid(args.start, args.stop, args.step):
        r = star.psi(g)
        lam = _floor3(r.lam) if args.paper_rounding else r.lam
        w = r.witness
        rows.append((g, lam, w.k, w.l, w.a, w.b))
    _emit(args, ["gamma", "psi", "k", "l", "a", "b"], rows)


def cmd_locus_render(args):
    grid = membership.GridSpec((args.gmin, args.gmax), (args.lmin, args.lmax),
                               args.width, args.height, args.depth, cap=args.cap,
                               conservative=args.conservative)
    result = membership.render(grid)
    io.write_pgm(args.output, result.image())
    if args.csv:
        io.write_csv(args.csv, ["gamma", "lambda", "verdict", "depth", "surviving"], result.rows())


def _pair_from_args(args, parser) -> att.AffinePair:
    need = {"rotation": ("a", "b"), "diagonal": ("gamma", "lam"), "jordan": ("lam",)}[args.form]
    missing = [n for n in need if getattr(args, n) is None]
    if missing:
        parser.error(f"--form {args.form} requires " + ", ".join("--" + ("lambda" if n == "lam" else n) for n in missing))
    try:
        if args.form == "rotation":
            return att.AffinePair.rotation(args.a, args.b)
        if args.form == "diagonal":
            return att.AffinePair.diagonal(args.gamma, args.lam)
        return att.AffinePair.jordan(args.lam)
    except ValueError as exc:
        parser.error(str(exc))


def _parse_size(text: str) -> tuple[int, int]:
    try:
        w, h = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected WxH, got {text!r}") from None
    if w < 1 or h < 1:
        raise argparse.ArgumentTypeError("raster size must be positive")
    return w, h


def cmd_attractor(args, parser):
    pair = _pair_from_args(args, parser)
    cloud = att.attractor_points(pair, args.depth)
    _emit(args, ["x", "y"], (tuple(p) for p in cloud.points))
    if args.raster:
        w, h = args.raster
        io.write_pgm(args.raster_output or _default_raster_path(args.output), att.raster(cloud, w, h))


def _default_raster_path(output):
    if output in (None, "-"):
        return "attractor.pgm"
    return output.rsplit(".", 1)[0] + ".pgm"


def _parse_witness(text: str, parser) -> TernarySeries:
    """"k,a" for a (*)-function, otherwise a coefficient prefix followed by an all-ones tail."""
    try:
        vals = [float(v) for v in text.replace(" ", "").split(",") if v]
    except ValueError:
        parser.error(f"cannot parse witness {text!r}")
    try:
        if len(vals) == 2 and vals[0] == int(vals[0]) and vals[0] >= 1:
            k, a = int(vals[0]), vals[1]
            return TernarySeries((1,) + (-1,) * (k - 1) + (a,), 1)
        return TernarySeries(tuple(vals), 1)
    except ValueError as exc:
        parser.error(f"invalid witness {text!r}: {exc}")


def cmd_corner(args, parser):
    h = _parse_witness(args.witness, parser)
    env = corners.envelope_from_series(h)
    report = corners.corner_membership_check(env, (args.n_min, args.n_max), corners.STANDARD_R,
                                             stop_at_resolution=True)
    print(f"gamma0={io.fmt(env.gamma0)} lambda0={io.fmt(env.lambda0)} alpha={io.fmt(env.alpha)} "
          f"C1={io.fmt(env.c1)} C2={io.fmt(env.c2)} uniqueness_assumed={io.fmt(env.uniqueness_assumed)}",
          file=sys.stderr if args.output in (None, "-") else sys.stdout)
    if report.resolution_stop is not None:
        print(f"stopped at N={report.resolution_stop}: displacement below double-precision resolution",
              file=sys.stderr)
    _emit(args, ["N", "R_id", "gamma_tilde", "lambda_tilde", "ratio", "c1", "c2", "pass"],
          (r.as_tuple() for r in report.rows))
    return 0 if report.ok else 1


def cmd_check(args):
    v = membership.certify_outside(args.gamma, args.lam, args.depth, args.cap)
    print(v)


def _unit(name):
    def parse(text):
        try:
            x = float(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name}: not a number: {text!r}") from None
        if not 0.0 < x < 1.0:
            raise argparse.ArgumentTypeError(f"{name} must lie in (0, 1), got {x}")
        return x
    return parse


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="locuskit", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    for name, lo, hi, step, hi_name in (("phi-table", 0.51, 0.64, 0.01, "alpha2"),
                                        ("psi-table", 0.53, 0.7278, 0.02, "alpha3")):
        s = sub.add_parser(name, help=f"boundary table up to {hi_name}")
        s.add_argument("--from", dest="start", type=float, default=lo)
        s.add_argument("--to", dest="stop", type=float, default=hi)
        s.add_argument("--step", type=float, default=step)
        s.add_argument("--paper-rounding", action="store_true",
                       help="floor values to 3 decimals as in the published tables")
        s.add_argument("-o", "--output", default="-")

    s = sub.add_parser("locus-render", help="PGM bitmap of the parameter plane")
    s.add_argument("--gmin", type=_unit("gmin"), default=0.5)
    s.add_argument("--gmax", type=_unit("gmax"), default=0.999)
    s.add_argument("--lmin", type=_unit("lmin"), default=0.5)
    s.add_argument("--lmax", type=_unit("lmax"), default=0.999)
    s.add_argument("--width", type=_positive, default=256)
    s.add_argument("--height", type=_positive, default=256)
    s.add_argument("--depth", type=_positive, default=membership.DEFAULT_RENDER_DEPTH)
    s.add_argument("--cap", type=_positive, default=membership.RENDER_CAP)
    s.add_argument("--conservative", action="store_true",
                   help="white only if the whole pixel square is excluded")
    s.add_argument("--csv", help="also dump per-pixel verdicts")
    s.add_argument("-o", "--output", required=True)

    s = sub.add_parser("attractor", help="point cloud of {Tx, Tx + b}")
    s.add_argument("--form", choices=["rotation", "diagonal", "jordan"], default="diagonal")
    s.add_argument("--gamma", type=float)
    s.add_argument("--lambda", dest="lam", type=float)
    s.add_argument("--a", type=float)
    s.add_argument("--b", type=float)
    s.add_argument("--depth", type=int, default=16)
    s.add_argument("--raster", type=_parse_size, help="also write a WxH PGM")
    s.add_argument("--raster-output")
    s.add_argument("-o", "--output", default="-")

    s = sub.add_parser("corner", help="cusp envelope and perturbation report")
    s.add_argument("--witness", required=True, help='"k,a" or a coefficient prefix such as "1,-1,-1,-1,0"')
    s.add_argument("--n-min", type=_positive, default=30)
    s.add_argument("--n-max", type=_positive, default=60)
    s.add_argument("-o", "--output", default="-")

    s = sub.add_parser("check", help="membership verdict for one point")
    s.add_argument("--gamma", type=_unit("gamma"), required=True)
    s.add_argument("--lambda", dest="lam", type=_unit("lambda"), required=True)
    s.add_argument("--depth", type=_positive, default=64)
    s.add_argument("--cap", type=_positive, default=membership.DEFAULT_CAP)
    return p


def _validate(args, parser):
    cmd = args.command
    if cmd in ("phi-table", "psi-table"):
        lo, hi = PHI_RANGE if cmd == "phi-table" else PSI_RANGE
        if args.step <= 0:
            parser.error("--step must be positive")
        if not lo < args.start <= args.stop < hi:
            parser.error(f"need {lo} < --from <= --to < {hi}")
    elif cmd == "locus-render":
        if not (args.gmin < args.gmax and args.lmin < args.lmax):
            parser.error("empty parameter window")
    elif cmd == "attractor":
        if not 0 <= args.depth <= att.MAX_DEPTH:
            parser.error(f"--depth must lie in [0, {att.MAX_DEPTH}]")
    elif cmd == "corner":
        if args.n_min > args.n_max:
            parser.error("--n-min exceeds --n-max")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(args, parser)
    try:
        if args.command == "phi-table":
            cmd_phi_table(args)
        elif args.command == "psi-table":
            cmd_psi_table(args)
        elif args.command == "locus-render":
            cmd_locus_render(args)
        elif args.command == "attractor":
            cmd_attractor(args, parser)
        elif args.command == "corner":
            return cmd_corner(args, parser)
        else:
            cmd_check(args)
    except COMPUTATIONAL_ERRORS as exc:
        print(f"locuskit: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
