"""``modhys`` command line: demo, encode, sweep, selftest.

Values come from, in increasing priority, the per-command defaults, a JSON
config file (``--config``; nested objects are flattened, so
``{"solver": {"nu": 0.9}}`` sets ``nu``) and explicit flags.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import experiments, selftest
from .pipeline import DEFAULT_CONFIG
from .sparse import SolverConfig

BASE = dict(omega=6.3, lam=0.1, h=0.05, alpha=0.05, T=0.0208, K=48, peak=0.3, seed=1)
WIDE = dict(omega=6.3, lam=0.2, h=0.1, alpha=0.3, T=0.0208, K=48, peak=0.6, seed=1)
SOLVER = dict(solver="saomp", eps=DEFAULT_CONFIG.eps, nu=DEFAULT_CONFIG.nu,
              mu=DEFAULT_CONFIG.mu, imax=DEFAULT_CONFIG.i_max)
DEFAULTS = {
    "demo": {**BASE, **SOLVER, "out": "."},
    "encode": {**WIDE, "out": ".", "points_per_T": 20},
    "sweep": {**BASE, **SOLVER, "out": ".", "trials": 50, "mse_threshold": 1e-3,
              "alpha_grid": "0:0.07:8", "h_grid": "0:0.1:11", "workers": 1, "seed": 0},
    "selftest": {"json": False},
}
# config-file spellings that differ from the dest names
ALIASES = {"lambda": "lam", "mse-threshold": "mse_threshold", "alpha-grid": "alpha_grid",
           "h-grid": "h_grid", "i_max": "imax", "base_seed": "seed", "n_trials": "trials"}


def parse_grid(spec: str) -> list[float]:
    """``a:b:n`` -> n evenly spaced values from a to b inclusive; a bare number is a 1-point grid."""
    parts = str(spec).split(":")
    if len(parts) == 1:
        return [float(parts[0])]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"grid must look like a:b:n, got {spec!r}")
    a, b, n = float(parts[0]), float(parts[1]), int(parts[2])
    if n < 1:
        raise argparse.ArgumentTypeError("grid needs at least one point")
    return [a] if n == 1 else np.linspace(a, b, n).tolist()


def _flatten(d: dict) -> dict:
    out = {}
    for k, v in d.items():
        if isinstance(v, dict):
            out.update(_flatten(v))
        else:
            out[ALIASES.get(k, k.replace("-", "_"))] = v
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="modhys", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON file with default values")
    common.add_argument("--json", action="store_true", default=None,
                        help="print a machine-readable result document")
    sig = argparse.ArgumentParser(add_help=False)
    sig.add_argument("--omega", type=float, help="bandwidth [rad/s]")
    sig.add_argument("--lambda", dest="lam", type=float, help="modulo threshold")
    sig.add_argument("--h", type=float, help="hysteresis")
    sig.add_argument("--alpha", type=float, help="transient duration [s]")
    sig.add_argument("--T", type=float, help="sampling period [s]")
    sig.add_argument("--K", type=int, help="samples run from -K T to K T")
    sig.add_argument("--peak", type=float, help="max |g| on the sampling window")
    sig.add_argument("--seed", type=int)
    sig.add_argument("--out", type=Path, help="output directory")
    solv = argparse.ArgumentParser(add_help=False)
    solv.add_argument("--solver", choices=["omp", "saomp"])
    solv.add_argument("--eps", type=float, help="stopping tolerance on max |V^H r|")
    solv.add_argument("--nu", type=float, help="SAOMP initial threshold")
    solv.add_argument("--mu", type=float, help="SAOMP pruning threshold")
    solv.add_argument("--imax", type=int, help="SAOMP iteration limit")

    sub.add_parser("demo", parents=[common, sig, solv], help="reconstruct one random signal")
    enc = sub.add_parser("encode", parents=[common, sig],
                         help="compare generalized and modified encoders")
    enc.add_argument("--points-per-T", dest="points_per_T", type=int)
    sw = sub.add_parser("sweep", parents=[common, sig, solv],
                        help="failure counts over an (alpha, h) grid")
    sw.add_argument("--trials", type=int)
    sw.add_argument("--mse-threshold", dest="mse_threshold", type=float)
    sw.add_argument("--alpha-grid", dest="alpha_grid")
    sw.add_argument("--h-grid", dest="h_grid")
    sw.add_argument("--workers", type=int)
    sub.add_parser("selftest", parents=[common], help="run the invariant checks")
    return parser


def resolve(args: argparse.Namespace) -> dict:
    values = dict(DEFAULTS[args.command])
    if getattr(args, "config", None):
        values.update(_flatten(json.loads(Path(args.config).read_text())))
    values.update({k: v for k, v in vars(args).items()
                   if v is not None and k not in ("command", "config", "verbose")})
    return values


def _solver_config(v) -> SolverConfig:
    return SolverConfig(eps=v["eps"], nu=v["nu"], mu=v["mu"], i_max=v["imax"])


def cmd_demo(v) -> int:
    report = experiments.run_demo(v["omega"], v["lam"], v["h"], v["alpha"], v["T"], v["K"],
                                  v["peak"], v["seed"], v["solver"], _solver_config(v), v["out"])
    doc = {"mse": report.mse, "folds": report.n_folds,
           "admissible": report.admissibility.admissible,
           "iterations": report.solver.iterations, "support": report.solver.support}
    if v.get("json"):
        print(json.dumps(doc))
    else:
        print(f"MSE {report.mse:.6g}  folds {report.n_folds}  "
              f"admissible {report.admissibility.admissible}  "
              f"solver iterations {report.solver.iterations}")
    return 0


def cmd_encode(v) -> int:
    doc = experiments.run_encode(v["omega"], v["lam"], v["h"], v["alpha"], v["T"], v["K"],
                                 v["peak"], v["seed"], v["points_per_T"], v["out"])
    if v.get("json"):
        print(json.dumps(doc))
    else:
        print(f"max |M_H g| {doc['max_generalized']:.9f}  "
              f"max |M_modified g| {doc['max_modified']:.9f}  (lambda = {v['lam']:g})")
    return 0


def cmd_sweep(v) -> int:
    cfg = experiments.SweepConfig(
        lam=v["lam"], T=v["T"], omega=v["omega"], K=v["K"],
        alpha_values=parse_grid(v["alpha_grid"]), h_values=parse_grid(v["h_grid"]),
        n_trials=v["trials"], peak=v["peak"], mse_threshold=v["mse_threshold"],
        base_seed=v["seed"], solver=v["solver"], solver_config=_solver_config(v))
    cells = experiments.run_sweep(cfg, workers=v["workers"])
    csv_path, _ = experiments.write_sweep(cells, cfg, v["out"])
    if v.get("json"):
        print(json.dumps([c.__dict__ for c in cells]))
    else:
        for c in cells:
            print(f"alpha={c.alpha:<8.4g} h={c.h:<8.4g} failures={c.failures}/{c.trials} "
                  f"inadmissible={c.inadmissible_count}")
        print(f"wrote {csv_path}")
    return 0


def cmd_selftest(v) -> int:
    results = selftest.run_all()
    ok = all(r["passed"] for r in results)
    if v.get("json"):
        print(json.dumps({"passed": ok, "checks": results}, indent=2))
    else:
        for r in results:
            print(f"{'PASS' if r['passed'] else 'FAIL'}  {r['check']:<22} "
                  f"{r['seconds']:7.2f}s  {r['detail']}")
    return 0 if ok else 1


COMMANDS = {"demo": cmd_demo, "encode": cmd_encode, "sweep": cmd_sweep,
            "selftest": cmd_selftest}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    return COMMANDS[args.command](resolve(args))


if __name__ == "__main__":
    sys.exit(main())
