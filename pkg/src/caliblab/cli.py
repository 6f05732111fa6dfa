"""Command-line harness: run verification suites and one-off computations,
emit JSON/CSV reports.

Exit codes: 0 all checks pass, 1 at least one check fails, 2 configuration
error.  Reports are deterministic for a fixed seed; the thread pool size is
capped by CALIB_LAB_THREADS.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="caliblab",
        description="Numerical checks for calibrated-submanifold identities",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite", help="suite name (see --list)")
    p_verify.add_argument("--config", type=Path, help="JSON config file")
    p_verify.add_argument("--seed", type=int, default=None)
    p_verify.add_argument("--format", choices=("json", "csv"), default=None)
    p_verify.add_argument("--out", type=Path, default=None,
                          help="output path (default <suite>-<seed>.<fmt>)")
    p_verify.add_argument("--list", action="store_true", help="list suites and exit")
    p_verify.add_argument("--quiet", action="store_true")

    p_comass = sub.add_parser("comass", help="comass of a catalog form")
    p_comass.add_argument("--kind", required=True)
    p_comass.add_argument("--m", type=int)
    p_comass.add_argument("--n", type=int)
    p_comass.add_argument("--k", type=int)
    p_comass.add_argument("--restarts", type=int, default=200)
    p_comass.add_argument("--seed", type=int, default=0)

    p_angle = sub.add_parser("angle", help="calibrated angle of an immersion at a point")
    p_angle.add_argument("--builtin", help="builtin immersion name")
    p_angle.add_argument("--expressions", nargs="+",
                         help="one expression per ambient coordinate")
    p_angle.add_argument("--vars", type=int, default=2, help="parameter dimension")
    p_angle.add_argument("--calibration", default="volume")
    p_angle.add_argument("--point", required=True, help="comma-separated parameter point")
    p_angle.add_argument("--m", type=int)
    p_angle.add_argument("--n", type=int)
    p_angle.add_argument("--k", type=int)

    p_cheeger = sub.add_parser("cheeger", help="discrete estimates for a weighted graph")
    p_cheeger.add_argument("--graph", type=Path, required=True,
                           help="edge list: 'u v area' and 'v volume' lines")
    p_cheeger.add_argument("--sweep-seed", type=int, default=0)

    p_cmc = sub.add_parser("cmc", help="hyperbolic constant-mean-curvature family")
    p_cmc.add_argument("--m", type=int, required=True)
    p_cmc.add_argument("--c", type=float, required=True)
    p_cmc.add_argument("--r", type=float, help="profile radius to evaluate")
    p_cmc.add_argument("--verify", type=int, metavar="SAMPLES",
                       help="check mean curvature at random points")
    p_cmc.add_argument("--seed", type=int, default=0)

    p_merge = sub.add_parser("report-merge", help="merge JSON suite reports")
    p_merge.add_argument("reports", nargs="+", type=Path)
    p_merge.add_argument("--out", type=Path)
    return parser


def load_config(path: Path | None, suite: str, seed: int | None,
                out_format: str | None):
    from .suites import SuiteConfig

    data = {}
    if path is not None:
        try:
            data = json.loads(path.read_text())
        except FileNotFoundError:
            raise ConfigError(f"config file {path} not found")
        except json.JSONDecodeError as exc:
            raise ConfigError(
                f"config parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
            )
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
    kwargs = {
        "suite": data.get("suite", suite),
        "seed": data.get("seed", 0),
        "samples": data.get("samples"),
        "mesh_resolution": data.get("mesh_resolution"),
        "tolerances": data.get("tolerances", {}),
        "immersion": data.get("immersion"),
        "calibration": data.get("calibration"),
        "out_format": data.get("format", "json"),
    }
    if seed is not None:
        kwargs["seed"] = seed
    if out_format is not None:
        kwargs["out_format"] = out_format
    if suite and data.get("suite") not in (None, suite):
        raise ConfigError(
            f"config names suite {data['suite']!r} but {suite!r} was requested"
        )
    try:
        return SuiteConfig(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc))


class ConfigError(ValueError):
    pass


def cmd_verify(args) -> int:
    from .suites import SUITES, run_suite

    if args.list:
        for name in sorted(SUITES):
            print(name)
        return 0
    try:
        cfg = load_config(args.config, args.suite, args.seed, args.format)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    report = run_suite(cfg)
    fmt = cfg.out_format
    out = args.out or Path(f"{report.suite}-{report.seed}.{fmt}")
    text = report.to_json() if fmt == "json" else report.to_csv()
    out.write_text(text)
    if not args.quiet:
        summary = report.summary()
        print(f"{report.suite}: {summary['passed']}/{summary['total']} checks passed "
              f"({report.runtime_seconds:.1f}s) -> {out}")
        for c in report.checks:
            if not c.passed:
                print(f"  FAIL {c.check_id} [{c.anchor}] residual={c.residual:.3e} "
                      f"tol={c.tol:.1e}")
    return 0 if report.all_passed else 1


def _calibration_from_args(args):
    from .calibrations import make_calibration

    params = {}
    if args.kind in ("volume",):
        params = {"m": args.m or 2, "n": args.n if args.n is not None else 1}
    elif args.kind in ("kaehler", "kahler", "special_lagrangian"):
        params = {"k": args.k or 2}
    elif args.kind == "quaternionic":
        params = {"n": args.n or 2}
    return make_calibration(args.kind, **params)


def cmd_comass(args) -> int:
    from .comass import comass

    cal = _calibration_from_args(args)
    res = comass(cal.form, restarts=args.restarts, seed=args.seed)
    print(json.dumps({
        "kind": cal.name,
        "comass": res.value,
        "converged": res.converged,
        "iterations": res.iterations,
        "model_value": cal.model_value(),
    }, indent=2))
    return 0


def cmd_angle(args) -> int:
    from .immersion import ExprImmersion, make_immersion
    from .subgeom import frame_at

    point = np.array([float(t) for t in args.point.split(",")])
    if args.builtin:
        imm = make_immersion(args.builtin)
    elif args.expressions:
        imm = ExprImmersion(args.expressions, args.vars)
    else:
        print("angle needs --builtin or --expressions", file=sys.stderr)
        return 2
    cal = _calibration_from_args(argparse.Namespace(
        kind=args.calibration, m=args.m or imm.m,
        n=args.n if args.n is not None else imm.ambient.dim - imm.m, k=args.k))
    fp = frame_at(imm, point, omega=cal)
    print(json.dumps({
        "cos_theta": fp.cos_theta,
        "mean_curvature_norm": fp.norm_H(),
        "second_form_norm": float(np.sqrt(fp.norm_B_sq())),
    }, indent=2))
    return 0


def cmd_cheeger(args) -> int:
    from .cheeger import (WeightedGraph, bruteforce_cheeger, dirichlet_lambda1,
                          sweep_cheeger)

    try:
        graph = WeightedGraph.from_text(args.graph.read_text())
    except (OSError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    out = {"vertices": graph.n, "volume": graph.volume()}
    if graph.n <= 20:
        bf = bruteforce_cheeger(graph)
        out["bruteforce"] = bf.value
        out["witness"] = sorted(bf.witness)
        lam1, bound, _ = dirichlet_lambda1(graph, bf.witness)
        out["lambda1"] = lam1
        out["cheeger_upper_2sqrt"] = bound
    rng = np.random.default_rng(args.sweep_seed)
    sw = sweep_cheeger(graph, rng.standard_normal(graph.n))
    out["sweep"] = sw.value
    print(json.dumps(out, indent=2))
    return 0


def cmd_cmc(args) -> int:
    from .cmc import cmc_profile, cmc_verify

    out = {"m": args.m, "c": args.c}
    try:
        if args.r is not None:
            out["profile_value"] = cmc_profile(args.m, args.c, args.r)
        if args.verify:
            chk = cmc_verify(args.m, args.c, samples=args.verify, seed=args.seed)
            out["max_H_residual"] = chk.max_H_residual
            out["min_cos_theta"] = chk.min_cos_theta
            out["angle_bound"] = chk.angle_bound
            out["bound_ok"] = chk.bound_ok
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(out, indent=2))
    return 0


def cmd_report_merge(args) -> int:
    merged = {"suites": [], "total": 0, "passed": 0}
    for path in args.reports:
        try:
            data = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            print(f"config error reading {path}: {exc}", file=sys.stderr)
            return 2
        merged["suites"].append(data)
        merged["total"] += data["summary"]["total"]
        merged["passed"] += data["summary"]["passed"]
    merged["failed"] = merged["total"] - merged["passed"]
    text = json.dumps(merged, indent=2, sort_keys=True)
    if args.out:
        args.out.write_text(text)
    else:
        print(text)
    return 0 if merged["failed"] == 0 else 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "verify": cmd_verify,
        "comass": cmd_comass,
        "angle": cmd_angle,
        "cheeger": cmd_cheeger,
        "cmc": cmd_cmc,
        "report-merge": cmd_report_merge,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
