"""Command-line interface: verify scenario files or built-ins, test
compatibility of bracket pairs, integrate with drift monitoring, and
tabulate the Jacobi elliptic functions against the quadrature oracle.

Exit codes: 0 all checks pass, 1 a check or drift bound fails, 2 bad
input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import dynamics, scenarios
from .dynamics import BlowUpError, IntegrationError

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2


def _load_spec(ref):
    """A scenario argument is a JSON file path or a built-in name."""
    if os.path.exists(ref):
        return scenarios.ScenarioSpec.load(ref)
    try:
        return scenarios.get_builtin(ref)
    except scenarios.ScenarioError:
        raise scenarios.ScenarioError(
            f"{ref!r} is neither a readable scenario file nor a built-in name"
        ) from None


def _emit(obj, args):
    if args.json:
        print(json.dumps(obj, sort_keys=True))
    else:
        print(json.dumps(obj, indent=2, sort_keys=True))


def _write_or_print(text, out):
    if out:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_verify(args):
    spec = _load_spec(args.scenario)
    tol = args.tol if args.tol is not None else 1e-9
    report = scenarios.verify(spec, seed=args.seed, tol=tol)
    _emit(report.to_json(), args)
    return EXIT_PASS if report.verdict == "pass" else EXIT_FAIL


def cmd_compat(args):
    spec_a = _load_spec(args.scenario_a)
    spec_b = _load_spec(args.scenario_b)
    tol = args.tol if args.tol is not None else 1e-9
    report = scenarios.compat(spec_a, spec_b, seed=args.seed, tol=tol)
    _emit(report.to_json(), args)
    return EXIT_PASS if report.compatible and report.cross_check_agrees else EXIT_FAIL


def cmd_integrate(args):
    spec = _load_spec(args.scenario)
    try:
        traj, summary = scenarios.integrate_scenario(spec, seed=args.seed)
    except BlowUpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except IntegrationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.out:
        scenarios.trajectory_to_csv(traj, args.out)
    _emit(summary, args)
    return EXIT_PASS if summary["within_bound"] else EXIT_FAIL


def cmd_elliptic(args):
    k = args.k
    if not 0.0 <= k < 1.0:
        print(f"error: modulus k must lie in [0, 1), got {k}", file=sys.stderr)
        return EXIT_INPUT
    if args.t_max <= 0 or args.steps < 1:
        print("error: --t-max must be positive and --steps at least 1", file=sys.stderr)
        return EXIT_INPUT
    big_k = dynamics.quarter_period(k)
    grid = np.linspace(0.0, args.t_max, args.steps + 1)
    lines = ["t,sn,cn,dn,res_sn2_cn2,res_k2sn2_dn2,delta_sn,delta_cn,delta_dn"]
    for t in grid:
        sn, cn, dn = dynamics.jacobi_elliptic(t, k)
        r1 = sn**2 + cn**2 - 1.0
        r2 = k**2 * sn**2 + dn**2 - 1.0
        row = [t, sn, cn, dn, r1, r2]
        if t < big_k:
            osn, ocn, odn = dynamics.elliptic_oracle(t, k)
            row += [abs(sn - osn), abs(cn - ocn), abs(dn - odn)]
            lines.append(",".join(f"{v:.17g}" for v in row))
        else:
            # The quadrature oracle only covers the primary branch.
            lines.append(",".join(f"{v:.17g}" for v in row) + ",,,")
    _write_or_print("\n".join(lines) + "\n", args.out)
    return EXIT_PASS


def cmd_list(args):
    catalog = scenarios.builtin_catalog()
    if args.json:
        print(json.dumps([spec.to_json() for spec in catalog], sort_keys=True))
        return EXIT_PASS
    for spec in catalog:
        print(f"{spec.name:18s} kind={spec.kind:12s} n={spec.dimension}  t_end={spec.t_end:g}")
    return EXIT_PASS


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="RNG seed for sample points")
    common.add_argument("--tol", type=float, default=None, help="override check tolerance")
    common.add_argument("--json", action="store_true", help="compact machine-readable output")
    common.add_argument("--out", default=None, help="write CSV/output to this path")

    parser = argparse.ArgumentParser(
        prog="pluckerbrackets",
        description="Rank-2 Poisson brackets from Plucker coordinates: "
        "verification suites, compatibility tests, and integration.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="run structural checks on a scenario")
    p.add_argument("scenario", help="scenario JSON path or built-in name")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("compat", parents=[common], help="test compatibility of two brackets")
    p.add_argument("scenario_a", help="first scenario (path or built-in name)")
    p.add_argument("scenario_b", help="second scenario (path or built-in name)")
    p.set_defaults(func=cmd_compat)

    p = sub.add_parser("integrate", parents=[common], help="integrate a scenario, monitor drift")
    p.add_argument("scenario", help="scenario JSON path or built-in name")
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser("elliptic", parents=[common], help="tabulate sn, cn, dn vs the oracle")
    p.add_argument("--k", type=float, default=0.5, help="elliptic modulus in [0, 1)")
    p.add_argument("--t-max", type=float, default=5.0, dest="t_max")
    p.add_argument("--steps", type=int, default=100, help="number of grid intervals")
    p.set_defaults(func=cmd_elliptic)

    p = sub.add_parser("list", parents=[common], help="list the built-in scenario catalog")
    p.set_defaults(func=cmd_list)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except scenarios.ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
