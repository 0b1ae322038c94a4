"""Command line entry point.

Exit codes: 0 success, 1 a verification failed, 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import closed_forms as cf
from .errors import BipyramidError, DegenerateError, DomainError
from .geometry import T0, construct_p, construct_q
from .io import FORMATS, export_mesh, write_sweep_csv
from .solver import MESH_FLOOR, RatioTarget, find_t_star, sweep, theorem_witness
from .verification import CONVEXITY_TOL, ISOMETRY_TOL

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _UsageError(Exception):
    pass


def _positive(text: str) -> float:
    x = float(text)
    if not (math.isfinite(x) and x > 0):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return x


def _angle(args, value: float) -> float:
    t = math.radians(value) if args.degrees else value
    if not math.isfinite(t) or t < 0:
        raise _UsageError(f"t must be a non-negative angle, got {value!r}")
    if t > T0:
        raise _UsageError(f"t = {t:.6g} rad exceeds pi/6 ~ {T0:.4f}")
    return t


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="isobipyramid",
        description="Convex bipyramid p(t) vs. its nonconvex isometric twin q(t).",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def angle_opts(p):
        p.add_argument("--degrees", action="store_true", help="read angles in degrees")

    b = sub.add_parser("build", help="write p(t) or q(t) as a mesh file")
    b.add_argument("--shape", choices=("p", "q"), required=True)
    b.add_argument("--t", type=float, required=True)
    b.add_argument("--out", required=True)
    b.add_argument("--format", choices=FORMATS, default=None,
                   help="default: taken from the --out suffix, else obj")
    b.add_argument("--allow-degenerate", action="store_true",
                   help="accept the endpoints t = 0 and t = pi/6")
    angle_opts(b)

    v = sub.add_parser("verify", help="volumes, convexity and isometry at one t")
    v.add_argument("--t", type=float, required=True)
    v.add_argument("--vol-rtol", type=_positive, default=1e-9)
    v.add_argument("--iso-tol", type=_positive, default=ISOMETRY_TOL)
    v.add_argument("--convex-tol", type=_positive, default=CONVEXITY_TOL)
    v.add_argument("--json", action="store_true", help="print a JSON report")
    angle_opts(v)

    s = sub.add_parser("solve", help="find t* with vol q / vol p > c")
    s.add_argument("--c", type=_positive, required=True)
    s.add_argument("--margin", type=float, default=2.0)
    s.add_argument("--json", action="store_true")

    w = sub.add_parser("sweep", help="tabulate both families over a t range (CSV)")
    w.add_argument("--t-min", type=float, required=True)
    w.add_argument("--t-max", type=float, required=True)
    w.add_argument("--steps", type=int, required=True)
    w.add_argument("--out", required=True)
    angle_opts(w)

    c = sub.add_parser("series-check", help="numeric vs quoted Maclaurin coefficients")
    c.add_argument("--rtol", type=_positive, default=1e-5)
    c.add_argument("--json", action="store_true")
    return ap


def _witness_report(w) -> dict:
    return {
        "t": w.t,
        "vol_p_closed": w.vol_p,
        "vol_p_mesh": w.vol_p_mesh,
        "vol_q_closed": w.vol_q,
        "vol_q_mesh": w.vol_q_mesh,
        "ratio": w.ratio,
        "p_convex": w.p_convexity.is_convex,
        "q_convex": w.q_convexity.is_convex,
        "q_reflex_edges": ["".join(e) for e in w.q_convexity.reflex_edges],
        "iso_discrepancy": w.certificate.max_discrepancy,
        "iso_valid": w.certificate.valid,
        "bipyramids": w.combinatorics_ok,
        "volumes_agree": w.volumes_agree,
    }


def _print_report(rep: dict, as_json: bool, extra: dict | None = None):
    if extra:
        rep = {**extra, **rep}
    if as_json:
        print(json.dumps(rep, indent=2))
        return
    width = max(len(k) for k in rep)
    for k, val in rep.items():
        print(f"{k:<{width}}  {val}")


def cmd_build(args) -> int:
    t = _angle(args, args.t)
    make = construct_p if args.shape == "p" else construct_q
    mesh = make(t, allow_degenerate=args.allow_degenerate)
    fmt = args.format or ("off" if args.out.lower().endswith(".off") else "obj")
    path = export_mesh(mesh, fmt, args.out)
    print(f"wrote {mesh.name} ({mesh.n_vertices} vertices, {mesh.n_faces} faces) to {path}")
    return EXIT_OK


def cmd_verify(args) -> int:
    t = _angle(args, args.t)
    w = theorem_witness(t, mesh_floor=0.0, iso_tol=args.iso_tol,
                        convex_tol=args.convex_tol, volume_rtol=args.vol_rtol)
    rep = _witness_report(w)
    ok = (w.volumes_agree and w.p_convexity.is_convex and not w.q_convexity.is_convex
          and w.certificate.valid and w.combinatorics_ok)
    rep["status"] = "PASS" if ok else "FAIL"
    _print_report(rep, args.json)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_solve(args) -> int:
    try:
        target = RatioTarget(args.c, args.margin)
    except DomainError as exc:
        raise _UsageError(str(exc)) from exc
    t_star = find_t_star(target, verify=False)
    w = theorem_witness(t_star, mesh_floor=MESH_FLOOR)
    rep = _witness_report(w)
    ok = w.holds(target.c)
    rep["status"] = "PASS" if ok else "FAIL: " + "; ".join(w.failures(target.c))
    _print_report(rep, args.json, {"c": target.c, "margin": target.margin, "t_star": t_star})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_sweep(args) -> int:
    lo, hi = _angle(args, args.t_min), _angle(args, args.t_max)
    rows = sweep(lo, hi, args.steps)
    write_sweep_csv(rows, args.out)
    bad = [r.t for r in rows if not r.valid]
    print(f"wrote {len(rows)} rows to {args.out}")
    if bad:
        print(f"{len(bad)} rows where mesh and closed-form volumes disagree", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_series_check(args) -> int:
    report, ok = [], True
    for fn_id in ("AE", "vol_p", "vol_q"):
        s = cf.maclaurin_check(fn_id)
        for k, quoted in sorted(s.quoted.items()):
            good = s.rel_error(k) <= args.rtol
            ok &= good
            report.append({"function": fn_id, "power": k, "quoted": quoted,
                           "numeric": s.estimated[k], "rel_error": s.rel_error(k), "ok": good})
    if args.json:
        print(json.dumps({"rtol": args.rtol, "coefficients": report, "ok": ok}, indent=2))
    else:
        for r in report:
            mark = "ok" if r["ok"] else "MISMATCH"
            print(f"{r['function']:>6} t^{r['power']}: quoted {r['quoted']:+.10g}  "
                  f"numeric {r['numeric']:+.10g}  rel.err {r['rel_error']:.2e}  {mark}")
    return EXIT_OK if ok else EXIT_FAIL


COMMANDS = {
    "build": cmd_build,
    "verify": cmd_verify,
    "solve": cmd_solve,
    "sweep": cmd_sweep,
    "series-check": cmd_series_check,
}


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except (_UsageError, DomainError, DegenerateError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BipyramidError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


def main() -> None:
    sys.exit(run_cli())
