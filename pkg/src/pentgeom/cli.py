"""Command-line front end.

Exit codes: 0 verified / success, 1 verification or search failed,
2 bad input (I/O, parse error, bad flags).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import __version__
from .build import (
    HillClimbParams,
    complete_overlay,
    figure1_family,
    hill_climb_pent3,
    moore_overlay,
    sts_overlay,
)
from .catalog import KNOWN_CONNECTED, ORDERS_TABLE, SPECTRA, girth5_verdict, lookup_orders
from .certify import (
    Certificate,
    DuplicateLine,
    check_claimed_opposites,
    develop,
    emit_certificate,
    is_shift_automorphism,
)
from .compose import wilson_compose
from .core import Geometry, PentError, SearchFailed, VerificationReport
from .designs import td, verify_gdd, verify_steiner
from .formats import format_lines, load
from .graphs import hoffman_singleton, petersen, shift_automorphism
from .pent import verify_pent

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _emit(rep: VerificationReport, indent: int | None) -> int:
    print(rep.to_json(indent))
    return EXIT_OK if rep.overall else EXIT_FAIL


def _error(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_INPUT


def write_report(rep: VerificationReport, outdir: Path, g: Geometry | None = None) -> list[Path]:
    """Write ``report.json``, ``checks.csv``, ``properties.csv`` and, for
    geometries, the deficiency-graph and intersection figures."""
    outdir.mkdir(parents=True, exist_ok=True)
    written = [outdir / "report.json", outdir / "checks.csv", outdir / "properties.csv"]
    written[0].write_text(rep.to_json())
    with open(written[1], "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(["check", "pass", "required", "detail"])
        for c in rep.checks:
            wr.writerow([c.name, c.passed, c.required, c.detail])
    with open(written[2], "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(["key", "value"])
        for key, val in {**rep.parameters, **rep.properties}.items():
            wr.writerow([key, val])
    if g is not None:
        from .plotting import deficiency_figure, intersection_figure

        written.append(deficiency_figure(g, outdir / "deficiency.png"))
        written.append(intersection_figure(g, outdir / "intersections.png"))
    return written


def _geometry_report(g: Geometry, cert: Certificate | None = None) -> VerificationReport:
    rep = verify_pent(g)
    if cert is not None:
        rep.parameters["d"] = cert.d
        rep.extend(check_claimed_opposites(cert, g))
    return rep


def _load_geometry(path: str, strict: bool = True) -> tuple[Geometry, Certificate | None]:
    kind, obj = load(path, strict)
    if kind == "certificate":
        return develop(obj), obj
    if kind == "lines":
        return obj, None
    raise PentError(f"{path} holds a {kind}, not a geometry")


def cmd_verify(args) -> int:
    try:
        kind, obj = load(args.path, not args.report_only)
        cert = None
        if kind == "certificate":
            cert = obj
            try:
                obj = develop(cert)
            except DuplicateLine as exc:
                rep = VerificationReport({"k": cert.k, "r": cert.r, "w": cert.w, "d": cert.d})
                rep.add("development", False, str(exc))
                return _emit(rep, args.indent)
    except (OSError, PentError) as exc:
        return _error(f"{type(exc).__name__}: {exc}")
    if kind == "gdd":
        rep = verify_gdd(obj)
        g = None
    elif kind == "steiner":
        rep = verify_steiner(obj)
        g = None
    else:
        g = obj
        rep = _geometry_report(g, cert)
    if args.report:
        write_report(rep, Path(args.report), g)
    return _emit(rep, args.indent)


def cmd_develop(args) -> int:
    try:
        kind, cert = load(args.path)
        if kind != "certificate":
            return _error(f"{args.path} is not a certificate")
        g = develop(cert)
    except (OSError, PentError) as exc:
        return _error(f"{type(exc).__name__}: {exc}")
    text = format_lines(g, f"PENT({cert.k}, {cert.r}, {cert.w}) developed with d = {cert.d}")
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.verify:
        rep = _geometry_report(g, cert)
        print(rep.to_json(args.indent), file=sys.stderr)
        return EXIT_OK if rep.overall else EXIT_FAIL
    return EXIT_OK


def _finish_build(g: Geometry, args, shift: int | None = None) -> int:
    rep = verify_pent(g)
    if args.out:
        if getattr(args, "emit_cert", False) and shift:
            Path(args.out).write_text(emit_certificate(g, shift, "hill-climb").to_text())
        else:
            Path(args.out).write_text(format_lines(g))
    if args.report:
        write_report(rep, Path(args.report), g)
    return _emit(rep, args.indent)


def cmd_build(args) -> int:
    try:
        if args.construction == "fig1":
            g = figure1_family(args.m)
        elif args.construction == "overlay":
            D = hoffman_singleton() if args.graph == "hs" else petersen()
            overlay = complete_overlay if args.design == "kw" else sts_overlay(args.seed)
            g = moore_overlay(D, overlay)
        elif args.construction == "compose":
            if args.gdd.startswith("td:"):
                _, k, n = args.gdd.split(":")
                gdd = td(int(k), int(n))
            else:
                kind, gdd = load(args.gdd)
                if kind != "gdd":
                    return _error(f"{args.gdd} is not a GDD file")
            ingredients = [_load_geometry(p)[0] for p in args.ingredient]
            g = wilson_compose(gdd, ingredients)
        else:
            p = HillClimbParams(args.w, args.r, seed=args.seed, restarts=args.restarts, max_moves=args.max_moves)
            try:
                g = hill_climb_pent3(p, jobs=args.jobs)
            except SearchFailed as exc:
                print(json.dumps({"overall": False, "error": str(exc), "diagnostics": exc.diagnostics},
                                 indent=args.indent, default=str))
                return EXIT_FAIL
            d = None
            if args.emit_cert:
                from .pent import _analyze

                d = shift_automorphism(_analyze(g).graph)
                if d is not None and not is_shift_automorphism(g, d):
                    d = None
            return _finish_build(g, args, d)
    except (OSError, ValueError, PentError) as exc:
        return _error(f"{type(exc).__name__}: {exc}")
    return _finish_build(g, args)


def _parse_range(text: str) -> range:
    lo, sep, hi = text.partition(":")
    if not sep:
        return range(int(lo), int(lo) + 1)
    return range(int(lo), int(hi) + 1)


def cmd_admissible(args) -> int:
    try:
        rows = [girth5_verdict(args.k, args.w, r).to_row() for r in _parse_range(args.r)]
    except (ValueError, PentError) as exc:
        return _error(f"{type(exc).__name__}: {exc}")
    if args.format == "json":
        print(json.dumps(rows, indent=args.indent))
    else:
        wr = csv.DictWriter(sys.stdout, fieldnames=list(rows[0]) if rows else ["k", "w", "r"], lineterminator="\n")
        wr.writeheader()
        wr.writerows(rows)
    if args.report:
        from .plotting import verdict_figure

        outdir = Path(args.report)
        outdir.mkdir(parents=True, exist_ok=True)
        with open(outdir / "verdicts.csv", "w", newline="") as fh:
            wr = csv.DictWriter(fh, fieldnames=list(rows[0]))
            wr.writeheader()
            wr.writerows(rows)
        verdict_figure(rows, outdir / "verdicts.png")
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.w is not None:
        row = lookup_orders(args.w)
        out = row.to_dict() if row else {"w": args.w, "status": "not-in-table"}
        out["spectra"] = [s.describe() for s in SPECTRA if s.w == args.w]
    elif args.known:
        out = {"known_connected_girth5": list(KNOWN_CONNECTED)}
    else:
        out = {"orders": [r.to_dict() for r in ORDERS_TABLE.values()], "spectra": [s.describe() for s in SPECTRA]}
    print(json.dumps(out, indent=args.indent))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pentgeom", description="Verify and construct generalized pentagonal geometries.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("--indent", type=int, default=2, help="JSON indent (default 2)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify a certificate, line list, GDD or Steiner file")
    p.add_argument("path")
    p.add_argument("--report", metavar="DIR", help="also write CSV tables and figures to DIR")
    p.add_argument("--report-only", action="store_true", help="collect all certificate parse violations")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("develop", help="develop a certificate into a line list")
    p.add_argument("path")
    p.add_argument("-o", "--out")
    p.add_argument("--verify", action="store_true", help="verify and print the report to stderr")
    p.set_defaults(func=cmd_develop)

    p = sub.add_parser("build", help="run a construction")
    bsub = p.add_subparsers(dest="construction", required=True)

    def common(q):
        q.add_argument("-o", "--out", help="write the geometry (line list) here")
        q.add_argument("--report", metavar="DIR", help="also write CSV tables and figures to DIR")

    q = bsub.add_parser("fig1", help="pentagon-of-groups family PENT(2, 3m-1, 2m)")
    q.add_argument("--m", type=int, required=True)
    common(q)
    q = bsub.add_parser("overlay", help="Moore graph overlay")
    q.add_argument("--graph", choices=["petersen", "hs"], required=True)
    q.add_argument("--design", choices=["kw", "sts"], required=True)
    q.add_argument("--seed", type=int, help="random placement of each STS (default: sorted order)")
    common(q)
    q = bsub.add_parser("compose", help="fill the groups of a GDD with PENT ingredients")
    q.add_argument("--gdd", required=True, help="td:<k>:<n> or a GDD file")
    q.add_argument("--ingredient", action="append", required=True,
                   help="certificate or line list, once per group in order of smallest point")
    common(q)
    q = bsub.add_parser("hill-climb", help="randomized PENT(3, r, w) with girth-5 deficiency graph")
    q.add_argument("--w", type=int, required=True)
    q.add_argument("--r", type=int, required=True)
    q.add_argument("--seed", type=int, required=True)
    q.add_argument("--restarts", type=int, default=50)
    q.add_argument("--max-moves", type=int, default=0,
                   help="moves for the stochastic triangle phase per restart (0 = exact orbit search only)")
    q.add_argument("--jobs", type=int, default=1, help="parallel restarts; the result does not depend on it")
    q.add_argument("--emit-cert", action="store_true", help="write a certificate when a shift automorphism exists")
    common(q)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("admissible", help="per-r girth-5 verdicts")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--w", type=int, required=True)
    p.add_argument("--r", required=True, help="r or lo:hi")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--report", metavar="DIR", help="also write verdicts.csv and verdicts.png to DIR")
    p.set_defaults(func=cmd_admissible)

    p = sub.add_parser("catalog", help="orders table and known spectra")
    p.add_argument("--w", type=int)
    p.add_argument("--known", action="store_true", help="known connected girth-5 families")
    p.set_defaults(func=cmd_catalog)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
