"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 verification failure, 3 internal
inconsistency (failed cross-check or certificate).  Directions and blueprint
labels are 1-based on the command line.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import flags as fl
from .construct import build_ncc_graph, cartesian_product_with_cube, edge_split
from .formats import FORMATS, GraphFileError, export_graph, load_graph_json
from .planar import InvalidTriangulation, Triangulation, stacked_triangulation
from .separators import (
    CertificateError,
    InvalidSeparator,
    Separator,
    best_coordinate_cut,
    certify_lower_bound,
    coordinate_cut_separator,
    coordinate_cut_sizes,
    level_lift_separator,
    predicted_cut_sizes,
    reference_values,
    refine_separator,
    universal_lower_bound,
    verify_separator,
)

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_INTERNAL = 0, 1, 2, 3
METHODS = ("coordinate", "level-lift", "refine")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    m: int
    seed: int = 0
    blueprint: Path | None = None
    k: int = 0
    c: Fraction = Fraction(1, 3)
    c_prime: Fraction | None = None
    out: Path | None = None
    format: str = "json"

    def __post_init__(self):
        if self.m < 4:
            raise UsageError(f"--m must be >= 4, got {self.m}")
        if self.k < 0:
            raise UsageError(f"--k must be >= 0, got {self.k}")
        if not 0 < self.c < Fraction(1, 2):
            raise UsageError(f"--c must lie in (0, 1/2), got {self.c}")
        if self.c_prime is None:
            self.c_prime = self.c / 2
        if not 0 < self.c_prime < self.c:
            raise UsageError(f"need 0 < c' < c, got c'={self.c_prime}, c={self.c}")

    def load_blueprint(self) -> Triangulation:
        if self.blueprint is None:
            return stacked_triangulation(self.m, self.seed)
        h = Triangulation.from_text(self.blueprint.read_text())
        if h.m != self.m:
            raise UsageError(f"blueprint has {h.m} vertices but --m is {self.m}")
        return h

    def graph(self):
        h = self.load_blueprint()
        g = build_ncc_graph(self.m, h)
        g.seed = None if self.blueprint else self.seed
        return cartesian_product_with_cube(g, self.k) if self.k else g


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a fraction: {text!r}")


def _config(args) -> RunConfig:
    return RunConfig(
        m=args.m,
        seed=args.seed,
        blueprint=getattr(args, "blueprint", None),
        k=getattr(args, "k", 0),
        c=getattr(args, "c", Fraction(1, 3)),
        c_prime=getattr(args, "c_prime", None),
        out=getattr(args, "out", None),
        format=getattr(args, "format", "json"),
    )


def _write(path: Path | None, data: bytes, out) -> None:
    if path is None:
        out.buffer.write(data) if hasattr(out, "buffer") else out.write(data.decode())
    else:
        path.write_bytes(data)


# -- subcommands -------------------------------------------------------------

def cmd_construct(args, out) -> int:
    cfg = _config(args)
    g = cfg.graph()
    info = sys.stderr if cfg.out is None else out
    if cfg.out is None:
        _write(None, export_graph(g, cfg.format), out)
    else:
        with open(cfg.out, "wb") as fh:
            export_graph(g, cfg.format, fh)
    intra, inter, per_dir = edge_split(g)
    print(f"m={g.m} k={g.k} seed={g.seed} n={g.n} edges={g.n_edges} degree={g.degree}", file=info)
    print(f"intra-cluster edges={intra} inter-cluster edges={inter}", file=info)
    print("inter edges per direction: " + " ".join(map(str, per_dir.tolist())), file=info)
    if g.k == 0:
        fv = fl.flag_nc4_double_prime(g.m)
        print(f"flag f0={fv.f0} f1={fv.f1} (graph: {g.n}, {g.n_edges})", file=info)
    else:
        fv = fl.flag_nc4_double_prime(g.m)
        print(f"base f0={fv.f0}; product vertices f0*2^k={fv.f0 << g.k}", file=info)
    if cfg.out is not None:
        print(f"wrote {cfg.format} to {cfg.out}", file=info)
    return EXIT_OK


def _row(label: str, m: int, fv: fl.FlagVector, formula: str) -> str:
    return f"{label:9s} {formula} = {fv}  euler={fv.euler_residual}  simple={'yes' if fl.is_simple_flag(fv) else 'no'}"


def cmd_flags(args, out) -> int:
    m = args.m
    if m < 4:
        raise UsageError(f"--m must be >= 4, got {m}")
    print(f"m = {m}; factored rows are multiples of 2^(m-2) = {1 << (m - 2)}", file=out)
    rows = [
        ("NC4", fl.flag_nc4(m), "(4, 2m, 3m-6, m-2; 8m-16)·2^(m-2)"),
        ("NC4'", fl.flag_nc4_prime(m), "(4m, 14m-24, 11m-22, m+2; 28m-24)·2^(m-2)"),
        ("NC4''", fl.flag_nc4_double_prime(m), "(24m-48, 48m-96, 27m-46, 3m+2; 28m-48)·2^(m-2)"),
    ]
    for label, fv, formula in rows:
        print(_row(label, m, fv, formula), file=out)
    print("census-derived:", file=out)
    print(f"  NC4'  {fl.derive_prime_census(m)}", file=out)
    print(f"  NC4'' {fl.derive_double_prime_census(m)}", file=out)
    blueprint = stacked_triangulation(m, args.seed) if args.seed is not None else None
    for title, census in (
        ("NC4' facets", fl.facet_census_prime(m)),
        ("NC4'' facets", fl.facet_census_double_prime(m, blueprint)),
    ):
        print(f"{title} (total {census.total}):", file=out)
        for fam in census:
            fv = fam.fvector if fam.fvector else f"k in {list(fam.k_range)}"
            print(f"  {fam.count:>10d}  {fam.name}  {fv}", file=out)
    problems = fl.cross_check(m)
    if problems:
        print("cross-check: MISMATCH", file=out)
        for p in problems:
            print(f"  {p}", file=out)
        return EXIT_INTERNAL
    print("cross-check: ok", file=out)
    return EXIT_OK


def _separate(cfg: RunConfig, g, method: str, direction, passes: int):
    if method == "coordinate":
        if direction is None:
            sep = best_coordinate_cut(g)
        else:
            if not 1 <= direction <= g.m:
                raise UsageError(f"--direction must lie in [1, {g.m}]")
            sep = coordinate_cut_separator(g, direction - 1)
        sep.c = cfg.c
    elif method == "level-lift":
        sep = level_lift_separator(g, cfg.c)
    else:
        start = best_coordinate_cut(g)
        start.c = cfg.c
        sep = refine_separator(g, start, passes=passes, seed=cfg.seed)
    return sep


def _report_and_certify(g, sep: Separator, c_prime, out):
    rep = verify_separator(g, sep)
    print(rep.summary(), file=out)
    if not rep.valid:
        return rep, None
    cert = certify_lower_bound(g, sep, c_prime)
    print(
        f"certificate: labels {cert.labeling.counts()} verdict={cert.verdict} "
        f"linear={cert.linear_threshold} harper={cert.harper_bound} bound={cert.bound}",
        file=out,
    )
    return rep, cert


def cmd_separate(args, out) -> int:
    cfg = _config(args)
    g = cfg.graph()
    sep = _separate(cfg, g, args.method, args.direction, args.passes)
    sep.provenance.setdefault("seed", cfg.seed)
    rep, cert = _report_and_certify(g, sep, cfg.c_prime, out)
    if cert is None:
        return EXIT_INVALID
    upper = int(coordinate_cut_sizes(g).min())
    ref = reference_values(g.n)
    tail = f" <= {upper}" if sep.size <= upper else f"  (best coordinate cut: {upper})"
    print(
        f"{cert.bound} <= |C|={sep.size}{tail}   "
        f"(n={g.n}, n/ln n={ref['n/ln n']:.1f}, n/ln^1.5 n={ref['n/ln^1.5 n']:.1f})",
        file=out,
    )
    if cfg.out is not None:
        doc = sep.to_json()
        doc["report"] = rep.to_json()
        doc["certificate"] = cert.to_json()
        cfg.out.write_text(json.dumps(doc) + "\n")
        print(f"wrote separator to {cfg.out}", file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    try:
        g = load_graph_json(args.graph.read_bytes())
    except (GraphFileError, OSError) as exc:
        raise UsageError(str(exc))
    try:
        sep = Separator.from_json(json.loads(args.separator.read_text()))
    except (InvalidSeparator, OSError, json.JSONDecodeError) as exc:
        print(f"INVALID separator file: {exc}", file=out)
        return EXIT_INVALID
    if args.c is not None:
        sep.c = args.c
    if not 0 < sep.c < Fraction(1, 2):
        print(f"INVALID separator: constant c={sep.c} not in (0, 1/2)", file=out)
        return EXIT_INVALID
    if args.c_prime is not None and not 0 < args.c_prime < sep.c:
        raise UsageError(f"need 0 < c' < c, got c'={args.c_prime}, c={sep.c}")
    rep, cert = _report_and_certify(g, sep, args.c_prime, out)
    return EXIT_OK if cert is not None else EXIT_INVALID


def cmd_bounds(args, out) -> int:
    lo, hi = (args.m, args.m) if args.m is not None else (args.m_min, args.m_max)
    if lo is None or hi is None or lo < 4 or hi < lo:
        raise UsageError("give --m, or --m-min <= --m-max with --m-min >= 4")
    c = args.c
    c_prime = args.c_prime if args.c_prime is not None else c / 2
    if not 0 < c < Fraction(1, 2) or not 0 < c_prime < c:
        raise UsageError(f"need 0 < c' < c < 1/2, got c'={c_prime}, c={c}")
    writer = csv.writer(out if args.out is None else open(args.out, "w", newline=""))
    writer.writerow(["m", "n", "lower", "upper", "lower*ln(n)^1.5/n", "upper*ln(n)/n"])
    for m in range(lo, hi + 1):
        h = stacked_triangulation(m, args.seed)
        n = (6 * m - 12) << m
        lower = min(universal_lower_bound(m, c, c_prime))
        upper = min(predicted_cut_sizes(h))
        ln = math.log(n)
        writer.writerow([m, n, lower, upper, f"{lower * ln ** 1.5 / n:.6f}", f"{upper * ln / n:.6f}"])
    return EXIT_OK


def cmd_export(args, out) -> int:
    if args.graph is not None:
        try:
            g = load_graph_json(args.graph.read_bytes())
        except (GraphFileError, OSError) as exc:
            raise UsageError(str(exc))
        h = g.blueprint
    else:
        if args.m is None:
            raise UsageError("give --graph or --m")
        cfg = _config(args)
        h = cfg.load_blueprint()
        g = None if args.format == "rotation" else cfg.graph()
    if args.format == "rotation":
        _write(args.out, h.to_text().encode(), out)
    elif args.out is None:
        _write(None, export_graph(g, args.format), out)
    else:
        with open(args.out, "wb") as fh:
            export_graph(g, args.format, fh)
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ncsep", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_opts(sp, m_required=True):
        sp.add_argument("--m", type=int, required=m_required, help="cube dimension (>= 4)")
        sp.add_argument("--k", type=int, default=0, help="extra cube dimension for the product")
        sp.add_argument("--seed", type=int, default=0, help="stacked blueprint seed")
        sp.add_argument("--blueprint", type=Path, help="rotation-system file 'i: j1 j2 ...'")

    def sep_opts(sp):
        sp.add_argument("--c", type=_fraction, default=Fraction(1, 3), help="separation constant")
        sp.add_argument("--c-prime", type=_fraction, help="certification constant (default c/2)")

    sp = sub.add_parser("construct", help="build the graph and write it")
    graph_opts(sp)
    sp.add_argument("--format", choices=FORMATS, default="json")
    sp.add_argument("--out", type=Path)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("flags", help="flag vectors, facet censuses and cross-checks")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--seed", type=int, help="split edge prisms by a stacked blueprint's degrees")
    sp.set_defaults(func=cmd_flags)

    sp = sub.add_parser("separate", help="find, verify and certify a separator")
    graph_opts(sp)
    sep_opts(sp)
    sp.add_argument("--method", choices=METHODS, default="coordinate")
    sp.add_argument("--direction", type=int, help="cube direction for --method coordinate (1-based)")
    sp.add_argument("--passes", type=int, default=5)
    sp.add_argument("--out", type=Path, help="separator JSON output")
    sp.set_defaults(func=cmd_separate)

    sp = sub.add_parser("verify", help="judge a separator file against a graph file")
    sp.add_argument("--graph", type=Path, required=True)
    sp.add_argument("--separator", type=Path, required=True)
    sp.add_argument("--c", type=_fraction, help="override the separator's constant")
    sp.add_argument("--c-prime", type=_fraction)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bounds", help="CSV of certified lower and coordinate-cut upper bounds")
    sp.add_argument("--m", type=int)
    sp.add_argument("--m-min", type=int)
    sp.add_argument("--m-max", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sep_opts(sp)
    sp.add_argument("--out", type=Path)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("export", help="re-export a graph file or write a blueprint")
    graph_opts(sp, m_required=False)
    sp.add_argument("--graph", type=Path, help="graph JSON to convert")
    sp.add_argument("--format", choices=FORMATS + ("rotation",), default="metis")
    sp.add_argument("--out", type=Path)
    sp.set_defaults(func=cmd_export)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (UsageError, InvalidTriangulation) as exc:
        print(f"ncsep: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CertificateError, fl.FlagMismatch) as exc:
        print(f"ncsep: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except OSError as exc:
        print(f"ncsep: I/O error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
