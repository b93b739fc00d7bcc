"""Command-line entry point: ``combwalks {verify|compute|explore} ...``.

Exit codes: 0 success, 1 identity mismatch or regression-bound violation,
2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from typing import Optional, Sequence

from . import explore
from .export import FORMATS, RunManifest, ScanRow, render, write_output
from .identities import (
    catalan_zero_check,
    dp_oracle_sweep,
    prop1_check,
    prop2_check,
)
from .numerics import parse_rational
from .sums import beta_truncated, kappa_abs_sum, kappa_sum, sum_bruteforce, sum_polynomial, sum_positive_dp
from .walks import DIRECTIONS, PotentialAssignment, StepSet, WalkClass


def _steps(text: str) -> StepSet:
    try:
        return StepSet(int(s) for s in text.split(",") if s.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _scalar(text: str):
    text = text.strip()
    if any(c in text for c in ".eEjJ") and "/" not in text:
        v = complex(text.replace("i", "j"))
        return v.real if v.imag == 0 else v
    return parse_rational(text)


def _assignment(text: str) -> PotentialAssignment:
    """``"2=1/2,4=-3,-2=1/5"``; a value with ``.``, ``e`` or ``j`` is a float/complex."""
    vals = {}
    try:
        for item in text.split(","):
            if not item.strip():
                continue
            k, v = item.split("=", 1)
            vals[int(k)] = _scalar(v)
        return PotentialAssignment(vals)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad assignment {text!r}: {exc}") from None


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--format", choices=FORMATS, default=d("text"))
    parser.add_argument("--out", default=d(None), help="output file (default stdout)")
    parser.add_argument("--seed", type=int, default=d(0))
    parser.add_argument("--jobs", type=int, default=d(None), help="worker processes (default $COMBWALKS_JOBS or 1)")
    parser.add_argument(
        "--exclude-single-step",
        action="store_true",
        default=d(False),
        help="drop single-step walks (sensitivity check)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="combwalks", description=__doc__.splitlines()[0])
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    groups = parser.add_subparsers(dest="group", required=True)

    verify = groups.add_parser("verify", help="exact identity checks").add_subparsers(dest="cmd", required=True)
    p = verify.add_parser("prop1", parents=[common])
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=10)
    p = verify.add_parser("prop2", parents=[common])
    p.add_argument("--m-max", type=int, default=12)
    p = verify.add_parser("catalan", parents=[common])
    p.add_argument("--m-max", type=int, default=15)
    p = verify.add_parser("dp-oracle", parents=[common])
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--kappa-n-max", type=int, default=9)

    compute = groups.add_parser("compute", help="single exact values").add_subparsers(dest="cmd", required=True)
    p = compute.add_parser("sum", parents=[common], help="positive-walk sum")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--steps", type=_steps, default=StepSet.up_to(4))
    p.add_argument("--V", type=_assignment, required=True)
    p.add_argument("--method", choices=("dp", "brute"), default="dp")
    p.add_argument("--abs", action="store_true", help="sum of |h| instead of h")
    p = compute.add_parser("poly", parents=[common], help="positive-walk polynomial")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=None, help="use F_m")
    p.add_argument("--steps", type=_steps, default=None)
    p = compute.add_parser("bkappa", parents=[common], help="B_kappa(n) on {-2R, +2S}")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--R", type=int, required=True)
    p.add_argument("--S", type=int, required=True)
    p.add_argument("--kappa", type=int, required=True)
    p.add_argument("--abs", action="store_true")
    p = compute.add_parser("beta", parents=[common], help="truncated two-sided sum")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--steps", type=_steps, default=StepSet.up_to(4))
    p.add_argument("--V", type=_assignment, required=True)
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--W", type=int, required=True)
    p.add_argument("--direction", choices=DIRECTIONS, default="ascending")

    expl = groups.add_parser("explore", help="parameter scans").add_subparsers(dest="cmd", required=True)
    p = expl.add_parser("q1", parents=[common])
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--full", action="store_true", help="include the full polynomial")
    p = expl.add_parser("q2", parents=[common])
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n-min", type=int, default=4)
    p.add_argument("--n-max", type=int, default=24)
    p.add_argument("--samples", type=int, default=100)
    p = expl.add_parser("q3", parents=[common])
    p.add_argument("--m-min", type=int, default=1)
    p.add_argument("--m-max", type=int, default=40)
    p.add_argument("--oracle-upto", type=int, default=6)
    p = expl.add_parser("prop3", parents=[common])
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--n-min", type=int, default=4)
    p.add_argument("--n-max", type=int, default=24)
    p.add_argument("--V", type=_assignment, required=True)
    p.add_argument("--L", type=int, default=40)
    p.add_argument("--W", type=int, default=4)
    p.add_argument("--bound", type=float, default=None, help="fail (exit 1) if a diagnostic exceeds this")
    return parser


def _report_rows(reports) -> list:
    rows = []
    for r in reports:
        d = r.to_json()
        params = d.pop("params")
        d.pop("ms")
        rows.append(ScanRow({"id": d.pop("id"), **params}, d))
    return rows


def _result_row(params: dict, res) -> ScanRow:
    d = res.to_json()
    flags = {"exact": d.pop("exact"), "truncated": d.pop("truncated")}
    return ScanRow(params, d, flags)


def _verify(args, single: bool) -> tuple:
    if args.cmd == "prop1":
        reports = [prop1_check(n, single) for n in range(args.n_min, args.n_max + 1)]
    elif args.cmd == "prop2":
        reports = [
            prop2_check(k, m, v)
            for v in ("a", "b")
            for m in range(1, args.m_max + 1)
            for k in range(1, (m if v == "a" else m - 1) + 1)
        ]
    elif args.cmd == "catalan":
        reports = [catalan_zero_check(m) for m in range(1, args.m_max + 1)]
    else:
        reports = dp_oracle_sweep(args.n_max, args.samples, args.seed, args.kappa_n_max)
    code = 0 if all(r.ok for r in reports) else 1
    return _report_rows(reports), code


def _compute(args, single: bool) -> tuple:
    if args.cmd == "sum":
        V = args.V.absolute() if args.abs else args.V
        if args.method == "dp":
            res = sum_positive_dp(args.n, args.steps, V, single)
        else:
            cls = WalkClass(args.n, args.steps, sign_filter="positive_only", allow_single_step=single)
            res = sum_bruteforce(cls, V)
        return [_result_row({"n": args.n, "steps": args.steps.to_json()}, res)], 0
    if args.cmd == "poly":
        F = StepSet.up_to(args.m) if args.m is not None else (args.steps or StepSet.up_to(4))
        p = sum_polynomial(args.n, F, single)
        row = ScanRow({"n": args.n, "steps": F.to_json()}, {"terms": len(p), "polynomial": str(p), "value": p})
        return [row], 0
    if args.cmd == "bkappa":
        fn = kappa_abs_sum if args.abs else kappa_sum
        res = fn(args.n, args.R, args.S, args.kappa, single)
        params = {"n": args.n, "R": args.R, "S": args.S, "kappa": args.kappa}
        return [_result_row(params, res)], 0
    res = beta_truncated(args.n, args.steps, args.V, args.L, args.W, args.direction, single)
    params = {"n": args.n, "steps": args.steps.to_json(), "direction": args.direction}
    return [_result_row(params, res)], 0


def _explore(args, single: bool) -> tuple:
    notes = {}
    code = 0
    if args.cmd == "q1":
        rows = explore.q1_scan(args.m, range(args.n_min, args.n_max + 1), args.full, single, args.jobs)
        notes["normalization"] = "coefficients scaled by 4^(n-1)*((n-1)!)^2 (presentation only)"
    elif args.cmd == "q2":
        rows = explore.q2_scan(args.m, range(args.n_min, args.n_max + 1), args.samples, args.seed, single, args.jobs)
        r0, r1 = explore.ANNULUS
        notes["sampling"] = f"per-coordinate area-uniform on annulus {r0} <= |z| <= {r1}, numpy default_rng(seed)"
        notes["guard"] = f"|sum h| < {explore.NEAR_ZERO:g} flagged near-cancellation"
    elif args.cmd == "q3":
        rows = explore.q3_scan(range(args.m_min, args.m_max + 1), args.oracle_upto, args.jobs)
        if any(r.flags["oracle"] == "MISMATCH" for r in rows):
            code = 1
    else:
        rows = explore.prop3_scan(
            args.m, range(args.n_min, args.n_max + 1), args.V, args.L, args.W, single, args.jobs
        )
        notes["V"] = args.V.to_json()
        if args.bound is not None:
            diags = [
                r.values[c]
                for r in rows
                for c in ("diag_plus_approx", "diag_minus_approx")
                if r.values[c] is not None
            ]
            if any(d > args.bound for d in diags):
                code = 1
    return rows, code, notes


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    single = not args.exclude_single_step
    t0 = time.perf_counter()
    notes: dict = {}
    try:
        if args.group == "verify":
            rows, code = _verify(args, single)
        elif args.group == "compute":
            rows, code = _compute(args, single)
        else:
            rows, code, notes = _explore(args, single)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"combwalks: error: {exc}", file=sys.stderr)
        return 2
    params = {
        k: v
        for k, v in sorted(vars(args).items())
        if k not in ("format", "out", "jobs", "group", "cmd")
    }
    if not single:
        notes["single_step_walks"] = "excluded"
    manifest = RunManifest(
        command=f"{args.group} {args.cmd}",
        params=params,
        seed=args.seed,
        notes=notes,
        wall_time_s=time.perf_counter() - t0,
    )
    write_output(render(rows, manifest, args.format), args.out)
    return code


def _entry() -> None:
    try:
        code = main()
        sys.stdout.flush()
    except BrokenPipeError:
        # downstream reader (e.g. ``head``) closed early; not an error
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        code = 0
    sys.exit(code)


if __name__ == "__main__":
    _entry()
