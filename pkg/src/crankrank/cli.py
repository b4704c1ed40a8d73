"""Command-line front end.

Subcommands map onto the library layers: ``tables`` and ``moments`` dump
exact data, ``spt-ospt`` the two special sequences, ``verify`` runs the
identity suite, ``asym`` emits trend reports against the growth
predictions, ``circle`` runs the contour-integral reproduction, and
``parity`` the factorization-based parity table.

Exit codes: 0 success, 1 usage error, 2 verification/convergence failure,
3 resource limit.  Output is deterministic for a fixed argument list.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys

from . import asymptotics, circle, moments, parity, verification
from . import series as qs
from .errors import ConvergenceError, ResourceLimitError

DEFAULT_NMAX = 200
DEFAULT_LADDER = (250, 500, 1000, 2000)
DEFAULT_CIRCLE_LADDER = (50, 100)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _int_list(text: str) -> list:
    try:
        values = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated int list: {text!r}") from exc
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _build_parser() -> _Parser:
    parser = _Parser(prog="crankrank", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, ladder_default=DEFAULT_LADDER):
        p.add_argument("--nmax", type=int, default=DEFAULT_NMAX,
                       help="truncation / table order (default %(default)s)")
        p.add_argument("--out", default=None,
                       help="write output to this path instead of stdout")
        p.add_argument("--format", choices=("csv", "json"), default="csv",
                       help="output format where both are supported")
        p.add_argument("--r", type=_int_list, default=None,
                       help="comma-separated moment orders")
        p.add_argument("--ell", type=_int_list, default=None,
                       help="comma-separated sides: 1=crank, 3=rank")
        p.add_argument("--ladder", type=_int_list, default=list(ladder_default),
                       help="comma-separated increasing N values")
        p.add_argument("--convention",
                       choices=(moments.GENERATING_FUNCTION, moments.COMBINATORIAL),
                       default=moments.GENERATING_FUNCTION,
                       help="crank N=1 column handling for table export")
        p.add_argument("--dtilde-variant", choices=asymptotics.VARIANTS,
                       default="eta",
                       help="zeta(r-1) weight form in subleading constants")

    p_tables = sub.add_parser("tables", help="crank/rank distribution tables")
    p_tables.add_argument("--kind", choices=("crank", "rank", "both"),
                          default="crank")
    common(p_tables)

    p_moments = sub.add_parser("moments", help="exact moment tables")
    p_moments.add_argument("--variant",
                           choices=("full", "positive", "symmetrized"),
                           default="positive")
    common(p_moments)

    p_spt = sub.add_parser("spt-ospt", help="the spt and ospt sequences")
    common(p_spt)

    p_verify = sub.add_parser("verify", help="run the exact identity suite")
    common(p_verify)

    p_asym = sub.add_parser("asym", help="trend reports against predictions")
    common(p_asym)

    p_circle = sub.add_parser("circle", help="contour-integral reproduction")
    common(p_circle, ladder_default=DEFAULT_CIRCLE_LADDER)
    p_circle.set_defaults(format="json")  # csv emits the off-arc bound grid

    p_parity = sub.add_parser("parity", help="factorization parity table")
    common(p_parity)

    return parser


def _emit(text: str, out_path) -> None:
    if out_path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _validate_ladder(ladder) -> None:
    if any(b <= a for a, b in zip(ladder, ladder[1:])):
        raise _UsageError(f"ladder must be strictly increasing, got {ladder}")


def _cmd_tables(args) -> int:
    kinds = ("crank", "rank") if args.kind == "both" else (args.kind,)
    lines = []
    as_json = []
    for kind in kinds:
        conv = args.convention if kind == "crank" else moments.GENERATING_FUNCTION
        table = moments.CrankRankTable.build(kind, args.nmax, conv)
        for N in range(table.nmax + 1):
            row = table.rows[N]
            for i, c in enumerate(row):
                if c:
                    if args.format == "csv":
                        lines.append(f"{kind},{N},{i - N},{c}")
                    else:
                        as_json.append([kind, N, i - N, str(c)])
    if args.format == "csv":
        _emit("\n".join(["kind,n,m,coefficient"] + lines) + "\n", args.out)
    else:
        _emit(json.dumps(as_json), args.out)
    return 0


def _moment_values(kind: str, variant: str, r: int, nmax: int):
    if variant == "symmetrized":
        return moments.symmetrized_series(moments.ell_for_kind(kind), r, nmax).values
    if variant == "positive":
        return moments.positive_moment_series(kind, r, nmax).values
    table = moments.CrankRankTable.build(kind, nmax)
    return [table.full_moment(r, N) for N in range(nmax + 1)]


def _cmd_moments(args) -> int:
    r_list = args.r or [1, 2]
    ells = args.ell or [1, 3]
    rows = []
    for r in sorted(set(r_list)):
        if r < 1:
            raise _UsageError("moment orders must be >= 1")
        for ell in sorted(set(ells)):
            kind = moments.kind_for_ell(ell)
            values = _moment_values(kind, args.variant, r, args.nmax)
            for N, v in enumerate(values):
                rows.append((args.variant, r, ell, kind, N, v))
    if args.format == "csv":
        lines = [
            f"{kind},{variant},{r},{ell},{N},{v}"
            for variant, r, ell, kind, N, v in rows
        ]
        _emit("\n".join(["kind,variant,r,ell,N,value"] + lines) + "\n", args.out)
    else:
        _emit(json.dumps(
            [[kind, variant, r, ell, N, str(v)]
             for variant, r, ell, kind, N, v in rows]
        ), args.out)
    return 0


def _cmd_spt_ospt(args) -> int:
    spt, ospt = moments.spt_ospt(args.nmax)
    if args.format == "csv":
        lines = [f"{N},{spt[N]},{ospt[N]}" for N in range(1, args.nmax + 1)]
        _emit("\n".join(["N,spt,ospt"] + lines) + "\n", args.out)
    else:
        _emit(json.dumps(
            [[N, str(spt[N]), str(ospt[N])] for N in range(1, args.nmax + 1)]
        ), args.out)
    return 0


def _cmd_verify(args) -> int:
    results = verification.run_suite(args.nmax)
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        line = f"{status} {res.name}: {res.detail}"
        if res.counterexample:
            line += f" | first counterexample: {res.counterexample}"
        print(line)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(verification.report_json(results))
    return 0 if all(r.passed for r in results) else 2


def _cmd_asym(args) -> int:
    ladder = args.ladder
    _validate_ladder(ladder)
    if len(ladder) < 3:
        raise _UsageError("trend ladder needs at least 3 points")
    r_list = sorted(set(args.r or [1, 2, 3, 4, 5, 6]))
    nmax = max(ladder)
    p = qs.partition_series(nmax)
    sym = {
        1: {r: (qs.appell_sum(1, r, nmax) * p).coeffs
            for r in range(1, max(r_list) + 1)},
        3: {r: (qs.appell_sum(3, r, nmax) * p).coeffs
            for r in range(1, max(r_list) + 1)},
    }

    def positive(ell, r, N):
        coeffs = moments.basis_change_coeffs(r)
        val = math.factorial(r) * sym[ell][r][N]
        for l in range(1, r):
            if coeffs[l]:
                val += coeffs[l] * sym[ell][l][N]
        return val

    reports = []
    for r in r_list:
        model_c = asymptotics.build_model(r, 1, args.dtilde_variant)
        model_r = asymptotics.build_model(r, 3, args.dtilde_variant)
        crank_vals = [positive(1, r, N) for N in ladder]
        rank_vals = [positive(3, r, N) for N in ladder]
        diff_vals = [a - b for a, b in zip(crank_vals, rank_vals)]
        reports.append(asymptotics.trend(ladder, crank_vals, model_c, "M_pos"))
        reports.append(asymptotics.trend(ladder, rank_vals, model_r, "N_pos"))
        reports.append(asymptotics.trend(ladder, diff_vals, model_c, "diff"))
    ospt_ratios = [
        (sym[1][1][N] - sym[3][1][N]) / (p.coeffs[N] / 4) for N in ladder
    ]
    payload = {
        "trends": [rep.as_dict() for rep in reports],
        "ospt_vs_quarter_p": {
            "Ns": ladder,
            "ratios": ospt_ratios,
            "residuals": [abs(x - 1.0) for x in ospt_ratios],
        },
    }
    _emit(json.dumps(payload, indent=2, sort_keys=True), args.out)
    return 0


def _cmd_circle(args) -> int:
    ladder = args.ladder
    _validate_ladder(ladder)
    r_list = sorted(set(args.r or [3, 4]))
    ells = sorted(set(args.ell or [1, 3]))
    if args.format == "csv":
        # csv output is the off-arc bound grid, one (ell, r) pair at a time
        if len(r_list) != 1 or len(ells) != 1:
            raise _UsageError(
                "circle --format csv needs exactly one --r and one --ell"
            )
        rows = circle.away_bound_rows(ells[0], r_list[0], ladder)
        buf = io.StringIO()
        circle.write_bound_grid_csv(rows, buf)
        _emit(buf.getvalue(), args.out)
        return 0
    reports = []
    for ell in ells:
        for r in r_list:
            for N in ladder:
                reports.append(circle.wright_integrals(ell, r, N))
    _emit(json.dumps([rep.as_dict() for rep in reports], indent=2,
                     sort_keys=True), args.out)
    return 0


def _cmd_parity(args) -> int:
    spt, ospt = moments.spt_ospt(args.nmax)
    rows = parity.parity_rows(spt, ospt, args.nmax)
    if args.format == "csv":
        buf = io.StringIO()
        parity.write_parity_csv(rows, buf)
        _emit(buf.getvalue(), args.out)
    else:
        _emit(json.dumps([
            [row.N, row.modulus_argument,
             parity.format_factorization(row.factorization),
             int(row.predicted_odd), row.ospt_mod_2, row.spt_mod_2]
            for row in rows
        ]), args.out)
    return 0 if all(row.consistent for row in rows) else 2


_COMMANDS = {
    "tables": _cmd_tables,
    "moments": _cmd_moments,
    "spt-ospt": _cmd_spt_ospt,
    "verify": _cmd_verify,
    "asym": _cmd_asym,
    "circle": _cmd_circle,
    "parity": _cmd_parity,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    try:
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, argparse.ArgumentTypeError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    except ConvergenceError as exc:
        print(f"convergence failure: {exc}", file=sys.stderr)
        return 2


def console_entry() -> None:
    sys.exit(main())
