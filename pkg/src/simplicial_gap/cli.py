"""Batch command-line front end emitting verification and gap reports.

Five subcommands: certify (feasibility of the certificates under both
relaxations plus their closed-form spectrum), gap (lower-bound tables with
the analytic asymptote column), baseline (exact TSP by dynamic programming
and analytic value against the subtour LP), solve-tiny (the numeric solver
on the smallest reduced problems and the non-monotonicity comparison), and
identities (trigonometric residual suites backing the closed forms).

Everything is batch and deterministic: work items are sorted, floats are
printed with 17 significant digits so artifacts are byte-stable, and output
goes to --out or stdout in JSON (default) or CSV.  Exit codes: 0 all checks
passed, 1 a verification failed, 2 bad usage or configuration.
"""

from __future__ import annotations

import argparse
import sys

from .anstreicher_sdp import verify_anstreicher
from .certificates import (
    assemble,
    closed_form_spectrum,
    coeffs_general,
    verify_povh_rendl,
)
from .circulant import identity_suite
from .instances import (
    DP_MAX_VERTICES,
    SimplicialInstance,
    make_one_extra,
    tsp_optimum,
)
from .matrix_core import SizeLimitError
from .reduced_sdp import (
    asymptote_value,
    build_reduction,
    gap_records_to_csv,
    gap_table,
    objective_reduced,
)
from .sdp_numeric import (
    DEFAULT_MAX_ITERS,
    encode_reduced,
    nonmonotonicity_check,
    solve,
)
from .serialize import csv_lines, fmt_float, json_canonical
from .subtour_lp import MAX_LP_VERTICES, solve_subtour

__all__ = ["build_parser", "main"]


def _n_list(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from exc
    if not values:
        raise argparse.ArgumentTypeError("empty n list")
    return values

def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _check_cert_config(g: int, n_values: list[int]) -> str | None:
    if g < 2 or g % 2 != 0:
        return f"g must be even and >= 2, got {g}"
    for n in n_values:
        if n % 2 != 0:
            return f"n must be even, got {n}"
        if n % g != 0:
            return f"g = {g} must divide n = {n}"
        if n // g < 2:
            return f"need at least 2 vertices per group, got n/g = {n // g}"
    return None


def cmd_certify(args: argparse.Namespace) -> int:
    problem = _check_cert_config(args.g, args.n)
    if problem:
        return _usage_error(problem)
    dense = True if args.dense else None
    rows = []
    reports = []
    all_passed = True
    try:
        for n in sorted(args.n):
            coeffs = coeffs_general(n, args.g)
            y = assemble(coeffs)
            feas = verify_povh_rendl(
                y, eq_tol=args.tol_eq, psd_tol=args.tol_psd, dense=dense
            )
            inst = SimplicialInstance((n // args.g,) * args.g)
            anst = verify_anstreicher(
                inst, y, eq_tol=args.tol_eq, psd_tol=args.tol_psd, dense=dense
            )
            spectrum_min = closed_form_spectrum(coeffs).min_value() / (2.0 * n)
            all_passed = all_passed and feas.passed and anst.passed
            reports.append(
                {
                    "povh_rendl": feas.to_json_dict(),
                    "anstreicher": anst.to_json_dict(),
                    "spectrum_min": fmt_float(spectrum_min),
                }
            )
            rows.append(
                [
                    str(args.g),
                    str(n),
                    str(feas.dense_checked).lower(),
                    str(feas.passed).lower(),
                    fmt_float(feas.residual_row_assign),
                    fmt_float(feas.residual_col_assign),
                    fmt_float(feas.residual_gangster),
                    fmt_float(feas.residual_total_sum),
                    fmt_float(feas.min_entry),
                    fmt_float(feas.min_eig_closed_form),
                    str(anst.passed).lower(),
                    fmt_float(anst.min_shifted_eigenvalue),
                    fmt_float(spectrum_min),
                ]
            )
    except SizeLimitError as exc:
        return _usage_error(str(exc))
    if args.format == "csv":
        header = [
            "g",
            "n",
            "dense_checked",
            "passed",
            "residual_row_assign",
            "residual_col_assign",
            "residual_gangster",
            "residual_total_sum",
            "min_entry",
            "min_eig_closed_form",
            "anstreicher_passed",
            "min_shifted_eigenvalue",
            "spectrum_min",
        ]
        _emit(csv_lines(header, rows), args.out)
    else:
        _emit(json_canonical(reports), args.out)
    return 0 if all_passed else 1


def cmd_gap(args: argparse.Namespace) -> int:
    try:
        records = gap_table(args.z, sorted(args.n))
    except ValueError as exc:
        return _usage_error(str(exc))
    if args.format == "csv":
        _emit(gap_records_to_csv(records, with_asymptote=True), args.out)
    else:
        payload = []
        for rec in records:
            item = rec.to_json_dict()
            item["asymptote"] = fmt_float(asymptote_value(rec.z, rec.n))
            payload.append(item)
        _emit(json_canonical(payload), args.out)
    return 0


def cmd_baseline(args: argparse.Namespace) -> int:
    if args.g < 2:
        return _usage_error(f"g must be >= 2, got {args.g}")
    if args.per_group < 2:
        return _usage_error(f"per-group must be >= 2, got {args.per_group}")
    inst = SimplicialInstance((args.per_group,) * args.g)
    if inst.n_total > MAX_LP_VERTICES:
        return _usage_error(
            f"instance has {inst.n_total} vertices, LP cap is {MAX_LP_VERTICES}"
        )
    analytic = tsp_optimum(inst).value
    dp_value = (
        tsp_optimum(inst, method="dp").value
        if inst.n_total <= DP_MAX_VERTICES
        else None
    )
    lp = solve_subtour(inst)
    agree = (
        lp.status == "optimal"
        and abs(lp.objective - analytic) <= 1e-6
        and (dp_value is None or dp_value == analytic)
    )
    report = {
        "g": args.g,
        "per_group": args.per_group,
        "n_total": inst.n_total,
        "tsp_analytic": fmt_float(analytic),
        "tsp_dp": None if dp_value is None else fmt_float(dp_value),
        "subtour_objective": fmt_float(lp.objective),
        "subtour_status": lp.status,
        "cuts_added": lp.cuts_added,
        "agree": agree,
    }
    if args.format == "csv":
        header = [
            "g",
            "per_group",
            "n_total",
            "tsp_analytic",
            "tsp_dp",
            "subtour_objective",
            "subtour_status",
            "cuts_added",
            "agree",
        ]
        row = [
            str(args.g),
            str(args.per_group),
            str(inst.n_total),
            fmt_float(analytic),
            "" if dp_value is None else fmt_float(dp_value),
            fmt_float(lp.objective),
            lp.status,
            str(lp.cuts_added),
            str(agree).lower(),
        ]
        _emit(csv_lines(header, [row]), args.out)
    else:
        _emit(json_canonical(report), args.out)
    return 0 if agree else 1


def cmd_solve_tiny(args: argparse.Namespace) -> int:
    if not 1 <= args.per_group <= 3:
        return _usage_error(f"per-group must be 1..3, got {args.per_group}")
    if args.large_n < 6 or args.large_n % 2 != 0:
        return _usage_error(f"large-n must be even and >= 6, got {args.large_n}")
    if args.per_group == 1:
        report = nonmonotonicity_check(args.large_n, max_iters=args.max_iters)
        _emit(json_canonical(report.to_json_dict()), args.out)
        return 0 if report.conclusive and report.non_monotonic else 1
    inst = make_one_extra(2, args.per_group)
    sol = solve(encode_reduced(inst), max_iters=args.max_iters)
    n = 2 * args.per_group
    y = assemble(coeffs_general(n, 2))
    bound = objective_reduced(y, build_reduction(inst)).upper_bound
    ok = sol.objective_value <= bound + 1e-3
    payload = {
        "n_plus_one": inst.n_total,
        "objective_value": fmt_float(sol.objective_value),
        "converged": sol.converged,
        "iterations": sol.iterations,
        "max_equality_residual": fmt_float(sol.max_equality_residual),
        "min_eigenvalue": fmt_float(sol.min_eigenvalue),
        "min_entry": fmt_float(sol.min_entry),
        "certificate_bound": fmt_float(bound),
        "within_bound": ok,
    }
    _emit(json_canonical(payload), args.out)
    return 0 if ok else 1


def cmd_identities(args: argparse.Namespace) -> int:
    if args.g < 2 or args.g % 2 != 0:
        return _usage_error(f"g must be even and >= 2, got {args.g}")
    suites = []
    try:
        for n in sorted(args.n):
            suites.append((n, identity_suite(args.g, n)))
    except ValueError as exc:
        return _usage_error(str(exc))
    keys = sorted(suites[0][1])
    worst = max(abs(value) for _, suite in suites for value in suite.values())
    if args.format == "csv":
        header = ["g", "n", *keys]
        rows = [
            [str(args.g), str(n), *(fmt_float(suite[k]) for k in keys)]
            for n, suite in suites
        ]
        _emit(csv_lines(header, rows), args.out)
    else:
        payload = [
            {
                "g": args.g,
                "n": n,
                "residuals": {k: fmt_float(suite[k]) for k in keys},
            }
            for n, suite in suites
        ]
        _emit(json_canonical(payload), args.out)
    return 0 if worst <= args.tol_eq else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simplicial-gap",
        description=(
            "construct and verify feasible points of tour relaxations on "
            "grouped 0/1 instances, tabulate bound ratios, and run baselines"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=("json", "csv"), default="json")

    p_cert = sub.add_parser("certify", help="verify certificates for (g, n) pairs")
    p_cert.add_argument("--g", type=int, required=True)
    p_cert.add_argument("--n", type=_n_list, required=True, help="comma list of n")
    p_cert.add_argument("--dense", action="store_true", help="force the dense oracle")
    p_cert.add_argument("--tol-eq", type=float, default=1e-9)
    p_cert.add_argument("--tol-psd", type=float, default=1e-8)
    add_common(p_cert)
    p_cert.set_defaults(func=cmd_certify)

    p_gap = sub.add_parser("gap", help="lower-bound table for g = 2z")
    p_gap.add_argument("--z", type=int, required=True)
    p_gap.add_argument("--n", type=_n_list, required=True, help="comma list of n")
    add_common(p_gap)
    p_gap.set_defaults(func=cmd_gap)

    p_base = sub.add_parser("baseline", help="exact TSP and subtour LP agreement")
    p_base.add_argument("--g", type=int, required=True)
    p_base.add_argument("--per-group", type=int, required=True, dest="per_group")
    add_common(p_base)
    p_base.set_defaults(func=cmd_baseline)

    p_tiny = sub.add_parser(
        "solve-tiny", help="numeric solver on the smallest reduced problems"
    )
    p_tiny.add_argument("--per-group", type=int, default=1, dest="per_group")
    p_tiny.add_argument("--large-n", type=int, default=16, dest="large_n")
    p_tiny.add_argument("--max-iters", type=int, default=DEFAULT_MAX_ITERS)
    add_common(p_tiny)
    p_tiny.set_defaults(func=cmd_solve_tiny)

    p_id = sub.add_parser("identities", help="trigonometric residual suites")
    p_id.add_argument("--g", type=int, required=True)
    p_id.add_argument("--n", type=_n_list, required=True, help="comma list of n")
    p_id.add_argument("--tol-eq", type=float, default=1e-9)
    add_common(p_id)
    p_id.set_defaults(func=cmd_identities)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        # bad sizes or a malformed cap variable land here, not as tracebacks
        return _usage_error(str(exc))


if __name__ == "__main__":
    sys.exit(main())
