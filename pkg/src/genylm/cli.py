"""Command-line front end.

    genylm eval   --m M --axis TP PP [--kind w|u|v] --point T P
    genylm grid   --m M --axis TP PP [--kind K] --ntheta N --nphi N [--quantity re|im|abs2] [--format csv|json] [--out PATH]
    genylm verify [--seed S] [--tol-algebra T1] [--tol-fd T2] [--tol-l2 T3] [--json PATH]
    genylm sample --m M --axis TP PP [--kind K] --n N --seed S [--out PATH]

Angles are radians. Exit codes: 0 success, 1 verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import sys

from .geometry import Axis, SpherePoint, cell_centered_grid
from .harmonics import AxisKind, harmonic, evaluate
from .verify import VerifyConfig, run_suite, sample


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _quantity(value: complex, quantity: str) -> float:
    if quantity == "re":
        return value.real
    if quantity == "im":
        return value.imag
    return abs(value) ** 2


def _target(args):
    try:
        axis = Axis(*args.axis)
        return harmonic(args.m, axis, AxisKind(args.kind))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


@contextlib.contextmanager
def _output(path):
    if path is None or path == "-":
        yield sys.stdout
        return
    try:
        fh = open(path, "w", newline="", encoding="ascii")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None
    with fh:
        yield fh


def _add_target(p, with_point=False):
    p.add_argument("--m", type=int, required=True, choices=(1, 0, -1))
    p.add_argument("--axis", type=float, nargs=2, required=True, metavar=("THETA_P", "PHI_P"))
    p.add_argument("--kind", choices=("w", "u", "v"), default="w")
    if with_point:
        p.add_argument("--point", type=float, nargs=2, required=True, metavar=("THETA", "PHI"))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="genylm", description="Generalized l=1 spherical harmonics")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="evaluate one harmonic at one point")
    _add_target(p, with_point=True)

    p = sub.add_parser("grid", help="tabulate a harmonic on a theta/phi grid")
    _add_target(p)
    p.add_argument("--ntheta", type=int, required=True)
    p.add_argument("--nphi", type=int, required=True)
    p.add_argument("--quantity", choices=("re", "im", "abs2"), default="abs2")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")

    p = sub.add_parser("verify", help="run every identity suite")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--tol-algebra", type=float, default=1e-12)
    p.add_argument("--tol-fd", type=float, default=1e-6)
    p.add_argument("--tol-l2", type=float, default=1e-5)
    p.add_argument("--json", dest="json_path")

    p = sub.add_parser("sample", help="rejection-sample positions from |Y|^2")
    _add_target(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out")
    return parser


def cmd_eval(args) -> int:
    h = _target(args)
    try:
        point = SpherePoint(*args.point)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    val = evaluate(h, point)
    print(json.dumps({"re": val.real, "im": val.imag, "abs2": abs(val) ** 2}))
    return 0


def grid_rows(h, n_theta: int, n_phi: int, quantity: str):
    """(theta, phi, value) in row-major theta-outer order; each value is a scalar `evaluate`."""
    tt, pp = cell_centered_grid(n_theta, n_phi)
    for t, p in zip(tt.tolist(), pp.tolist()):
        yield t, p, _quantity(evaluate(h, SpherePoint(t, p)), quantity)


def cmd_grid(args) -> int:
    h = _target(args)
    if args.ntheta < 2 or args.nphi < 2:
        raise UsageError("--ntheta and --nphi must be >= 2")
    rows = list(grid_rows(h, args.ntheta, args.nphi, args.quantity))
    with _output(args.out) as fh:
        if args.format == "csv":
            fh.write("theta,phi,value\n")
            for t, p, v in rows:
                fh.write(f"{_fmt(t)},{_fmt(p)},{_fmt(v)}\n")
        else:
            json.dump(
                {
                    "n_theta": args.ntheta,
                    "n_phi": args.nphi,
                    "quantity": args.quantity,
                    "rows": [[t, p, v] for t, p, v in rows],
                },
                fh,
            )
            fh.write("\n")
    return 0


def cmd_verify(args) -> int:
    cfg = VerifyConfig(seed=args.seed, tol_algebra=args.tol_algebra, tol_fd=args.tol_fd, tol_l2=args.tol_l2)
    if args.json_path:
        # fail on an unwritable path before spending time on the suites
        with _output(args.json_path):
            pass
    report = run_suite(cfg)
    for s in report.suites:
        tol = "-" if s.tolerance is None else f"{s.tolerance:.1e}"
        print(f"{s.status.upper():12s} {s.name:28s} max={s.max_residual:.3e} tol={tol}  {s.details}")
    print("PASS" if report.passed else "FAIL")
    if args.json_path:
        with _output(args.json_path) as fh:
            fh.write(report.to_json(indent=2))
            fh.write("\n")
    return 0 if report.passed else 1


def cmd_sample(args) -> int:
    h = _target(args)
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    batch = sample(h, args.n, args.seed)
    with _output(args.out) as fh:
        fh.write("theta,phi\n")
        for t, p in zip(batch.theta.tolist(), batch.phi.tolist()):
            fh.write(f"{_fmt(t)},{_fmt(p)}\n")
    return 0


COMMANDS = {"eval": cmd_eval, "grid": cmd_grid, "verify": cmd_verify, "sample": cmd_sample}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"genylm: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
