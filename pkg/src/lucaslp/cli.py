"""Command-line interface: every verification task as a subcommand.

Reports are machine-readable (json by default, csv or plain on request) and
deterministic: identical invocations produce byte-identical output. Exit
codes follow one contract everywhere: 0 when every checked property holds
(or a listing completed), 1 when a counterexample or disagreement was found,
2 for usage errors such as composite moduli or malformed recurrences.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from .modmath import Prime, primes_upto
from .sequences import (
    FIBONACCI,
    LinearRecurrence,
    alpha,
    fib_mod,
    lucas_mod,
    period_mod,
    rec_term,
    s_poly,
)
from .identities import (
    catalan_residual,
    general_catalan_residual,
    lucas_catalan_residual,
    shift_identity_residual,
)
from .lp import (
    AS_PROVED,
    AS_STATED,
    AffineIndexMap,
    AperySequence,
    NotFoundWithinBoundError,
    OmegaSequence,
    PowerSequence,
    SequenceSpec,
    TableSequence,
    THEOREM3_DEFAULT_RECS,
    corollary1_counterexample,
    crossval_theorem1,
    crossval_theorem2,
    crossval_theorem3,
    enumerate_valid_b,
    fib_affine,
    general_affine,
    lp_bruteforce,
    lucas_affine,
    theorem1_condition,
    theorem2_condition,
    theorem3_condition,
)
from .special import apery, apery_mod, omega, omega_mod

__all__ = ["Report", "CsvUnrepresentableError", "format_report", "run_cli", "main"]


class CsvUnrepresentableError(ValueError):
    """Raised when a report is too nested for a flat csv rendering."""


@dataclass
class Report:
    """The uniform report shape every subcommand emits."""

    command: str
    inputs: dict
    verdicts: list[dict]
    agreement: dict | None = None

    def to_dict(self) -> dict:
        d = {"command": self.command, "inputs": self.inputs, "verdicts": self.verdicts}
        if self.agreement is not None:
            d["agreement"] = self.agreement
        return d


# ---------------------------------------------------------------------------
# rendering


def _csv_scalar(value, context: str):
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return ""
    if isinstance(value, (list, tuple)):
        if any(isinstance(x, (list, tuple, dict)) for x in value):
            raise CsvUnrepresentableError(f"nested sequence under {context!r} does not fit csv")
        return ";".join(str(_csv_scalar(x, context)) for x in value)
    if isinstance(value, dict):
        raise CsvUnrepresentableError(f"nested mapping under {context!r} does not fit csv")
    return value


def _flatten_row(row: dict) -> dict:
    flat = {}
    for key, value in row.items():
        if isinstance(value, dict):
            for sub, sv in value.items():
                flat[f"{key}.{sub}"] = _csv_scalar(sv, f"{key}.{sub}")
        else:
            flat[key] = _csv_scalar(value, key)
    return flat


def _format_csv(report: Report) -> str:
    rows = [_flatten_row(r) for r in report.verdicts]
    columns: list[str] = []
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, restval="", lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _plain_scalar(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "-"
    if isinstance(value, (list, tuple)):
        return ";".join(_plain_scalar(v) for v in value) if value else "-"
    if isinstance(value, dict):
        return json.dumps(value, sort_keys=True, separators=(",", ":"))
    return str(value)


def _format_plain(report: Report) -> str:
    lines = [f"command: {report.command}"]
    if report.inputs:
        parts = [f"{k}={_plain_scalar(v)}" for k, v in sorted(report.inputs.items())]
        lines.append("inputs: " + " ".join(parts))
    if report.verdicts:
        columns: list[str] = []
        for row in report.verdicts:
            for key in row:
                if key not in columns:
                    columns.append(key)
        table = [[_plain_scalar(row.get(c)) for c in columns] for row in report.verdicts]
        widths = [
            max(len(columns[i]), max(len(r[i]) for r in table)) for i in range(len(columns))
        ]
        lines.append("  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip())
        for r in table:
            lines.append("  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip())
    if report.agreement is not None:
        lines.append("agreement:")
        for k, v in sorted(report.agreement.items()):
            lines.append(f"  {k}: {_plain_scalar(v)}")
    return "\n".join(lines) + "\n"


def format_report(report: Report, fmt: str = "json") -> str:
    """Render a report in one of the supported output formats."""
    if fmt == "json":
        return json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        return _format_csv(report)
    if fmt == "plain":
        return _format_plain(report)
    raise ValueError(f"format must be json, csv or plain, got {fmt!r}")


# ---------------------------------------------------------------------------
# argument types


def _prime_type(text: str) -> Prime:
    try:
        return Prime(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _rec_type(text: str) -> LinearRecurrence:
    try:
        return LinearRecurrence.from_string(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _int_list_type(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated integers, got {text!r}"
        ) from exc


# ---------------------------------------------------------------------------
# subcommand handlers; each returns (Report, exit_code)


def _build_spec(args) -> SequenceSpec:
    variant = args.variant
    if variant in ("fib-affine", "lucas-affine", "general-affine"):
        if args.a is None or args.b is None:
            raise ValueError(f"variant {variant} needs --a and --b")
        if variant == "general-affine":
            if args.rec is None:
                raise ValueError("variant general-affine needs --rec A0,A1,u,v")
            return general_affine(args.rec, args.a, args.b)
        if args.rec is not None:
            raise ValueError("--rec only applies to variant general-affine")
        if variant == "fib-affine":
            return fib_affine(args.a, args.b)
        return lucas_affine(args.a, args.b)
    if variant == "power":
        if args.base is None:
            raise ValueError("variant power needs --base")
        return PowerSequence(args.base)
    if variant == "table":
        if args.values is None:
            raise ValueError("variant table needs --values v0,v1,...")
        return TableSequence(args.values)
    if variant == "apery":
        return AperySequence()
    return OmegaSequence()


def _cmd_lp_check(args):
    spec = _build_spec(args)
    verdict = lp_bruteforce(spec, args.prime, args.digits)
    inputs = {**spec.describe(), "prime": int(args.prime), "digits": args.digits}
    row = {**spec.describe(), **verdict.to_dict()}
    return Report("lp-check", inputs, [row]), (0 if verdict.holds else 1)


def _cmd_theorem(args):
    which = args.which
    if which != 2 and args.reading is not None:
        raise ValueError("--reading only applies to --which 2")
    if which != 3 and args.rec is not None:
        raise ValueError("--rec only applies to --which 3")
    p = args.prime
    index_map = AffineIndexMap(args.a, args.b)
    row = {"theorem": which, "prime": int(p), "a": args.a, "b": args.b}
    if which == 1:
        condition = theorem1_condition(index_map, p)
        row["fib_a_mod_p"] = fib_mod(args.a, p)
        row["fib_b_mod_p"] = fib_mod(args.b, p)
    elif which == 2:
        reading = args.reading or AS_PROVED
        condition = theorem2_condition(index_map, p, reading)
        row["reading"] = reading
        row["five_fib_a_mod_p"] = 5 * fib_mod(args.a, p) % int(p)
        row["seed_term_mod_p"] = (
            lucas_mod(args.b, p) if reading == AS_PROVED else fib_mod(args.b, p)
        )
    else:
        if args.rec is None:
            raise ValueError("--which 3 needs --rec A0,A1,u,v")
        rec = args.rec
        condition = theorem3_condition(rec, index_map, p)
        row["rec"] = rec.as_string()
        factor = rec.v * s_poly(args.a - 1, rec.u, rec.v) * rec.seed_discriminant()
        row["vanishing_factor_mod_p"] = factor % int(p)
        row["term_b_mod_p"] = rec_term(rec, args.b, p)
    row["condition"] = condition
    inputs = {"theorem": which, "prime": int(p), "a": args.a, "b": args.b}
    return Report("theorem", inputs, [row]), (0 if condition else 1)


def _cmd_enumerate_b(args):
    if args.family == "general":
        if args.rec is None:
            raise ValueError("--family general needs --rec A0,A1,u,v")
    elif args.rec is not None:
        raise ValueError("--rec only applies to --family general")
    enum = enumerate_valid_b(args.family, args.a, args.prime, args.digits, rec=args.rec)
    valid = set(enum.valid_b)
    predicted = set(enum.predicted_b)
    zero = set(enum.identically_zero_b)
    rows = [
        {
            "b": b,
            "oracle_holds": b in valid or b in zero,
            "predicted": b in predicted,
            "identically_zero": b in zero,
        }
        for b in range(enum.preperiod + enum.modulus)
    ]
    agreement = {
        "preperiod": enum.preperiod,
        "modulus": enum.modulus,
        "valid_b": list(enum.valid_b),
        "predicted_b": list(enum.predicted_b),
        "identically_zero_b": list(enum.identically_zero_b),
        "matches_prediction": enum.matches_prediction,
    }
    inputs = {
        "family": args.family,
        "a": args.a,
        "prime": int(args.prime),
        "digits": args.digits,
    }
    if args.rec is not None:
        inputs["rec"] = args.rec.as_string()
    code = 0 if enum.matches_prediction else 1
    return Report("enumerate-b", inputs, rows, agreement), code


def _cmd_alpha(args):
    value = alpha(args.prime)
    inputs = {"prime": int(args.prime)}
    return Report("alpha", inputs, [{"prime": int(args.prime), "alpha": value}]), 0


def _cmd_period(args):
    rec = args.rec if args.rec is not None else FIBONACCI
    info = period_mod(rec, args.prime)
    row = {
        "rec": rec.as_string(),
        "prime": int(args.prime),
        "preperiod": info.preperiod,
        "period": info.period,
    }
    return Report("period", {"prime": int(args.prime), "rec": rec.as_string()}, [row]), 0


def _sweep_residuals(pairs, residual):
    cells = 0
    nonzero = 0
    max_abs = 0
    first = None
    for label, value_args in pairs:
        res = residual(*value_args)
        cells += 1
        if res != 0:
            nonzero += 1
            max_abs = max(max_abs, abs(res))
            if first is None:
                first = label
    return {
        "cells": cells,
        "nonzero": nonzero,
        "max_abs_residual": max_abs,
        "first_nonzero": first,
    }


def _cmd_identity(args):
    which = args.which
    defaults = {"catalan": 200, "lucas-catalan": 200, "general": 60, "shift": 60}
    n_max = args.n_max if args.n_max is not None else defaults[which]
    if n_max < 0:
        raise ValueError(f"--n-max must be >= 0, got {n_max}")
    if which in ("catalan", "lucas-catalan"):
        if args.rec:
            raise ValueError("--rec only applies to general and shift identities")
        residual = catalan_residual if which == "catalan" else lucas_catalan_residual
        pairs = [
            (f"n={n},r={r}", (n, r)) for n in range(n_max + 1) for r in range(n + 1)
        ]
        rows = [{"identity": which, "n_max": n_max, **_sweep_residuals(pairs, residual)}]
    else:
        recs = tuple(args.rec) if args.rec else THEOREM3_DEFAULT_RECS
        rows = []
        for rec in recs:
            if which == "general":
                pairs = [
                    (f"n={n},r={r}", (rec, n, r))
                    for n in range(1, n_max + 1)
                    for r in range(1, n + 1)
                ]
                stats = _sweep_residuals(pairs, general_catalan_residual)
            else:
                pairs = [
                    (f"n+r={m},k={k}", (rec, m, 0, k))
                    for m in range(1, n_max + 1)
                    for k in range(m)
                ]
                stats = _sweep_residuals(pairs, shift_identity_residual)
            rows.append({"identity": which, "rec": rec.as_string(), "n_max": n_max, **stats})
    total_nonzero = sum(r["nonzero"] for r in rows)
    inputs = {"which": which, "n_max": n_max}
    return Report("identity", inputs, rows), (0 if total_nonzero == 0 else 1)


def _cmd_special(args):
    if args.n_max < 0:
        raise ValueError(f"--n-max must be >= 0, got {args.n_max}")
    exact = apery if args.seq == "apery" else omega
    modular = apery_mod if args.seq == "apery" else omega_mod
    rows = []
    for n in range(args.n_max + 1):
        if args.prime is None:
            rows.append({"n": n, "value": exact(n)})
        else:
            rows.append({"n": n, "prime": int(args.prime), "value_mod_p": modular(n, args.prime)})
    inputs = {"seq": args.seq, "n_max": args.n_max}
    if args.prime is not None:
        inputs["prime"] = int(args.prime)
    return Report("special", inputs, rows), 0


def _cell_row(cell, with_rec: bool) -> dict:
    row: dict = {}
    if with_rec:
        row["rec"] = cell.rec.as_string()
    row.update(
        prime=cell.prime,
        a=cell.a,
        b=cell.b,
        predicted=cell.predicted,
        oracle_holds=cell.oracle_holds,
        identically_zero=cell.identically_zero,
        disagrees=cell.disagrees,
    )
    return row


def _cmd_crossval(args):
    theorem = args.theorem
    if theorem != 2 and args.reading is not None:
        raise ValueError("--reading only applies to --theorem 2")
    if theorem != 3 and args.rec:
        raise ValueError("--rec only applies to --theorem 3")
    primes = primes_upto(args.prime_max)
    if not primes:
        raise ValueError(f"no primes <= {args.prime_max}")
    a_values = range(1, args.a_max + 1)
    b_values = range(args.b_max + 1)
    inputs = {
        "theorem": theorem,
        "prime_max": args.prime_max,
        "a_max": args.a_max,
        "b_max": args.b_max,
        "digits": args.digits,
    }
    if theorem == 1:
        sweep = crossval_theorem1(primes, a_values, b_values, args.digits)
    elif theorem == 2:
        reading = args.reading or AS_PROVED
        inputs["reading"] = reading
        sweep = crossval_theorem2(primes, a_values, b_values, reading, args.digits)
    else:
        recs = tuple(args.rec) if args.rec else THEOREM3_DEFAULT_RECS
        inputs["recs"] = [r.as_string() for r in recs]
        sweep = crossval_theorem3(recs, primes, a_values, b_values, args.digits)
    with_rec = theorem == 3
    rows = [_cell_row(c, with_rec) for c in sweep.cells]
    disagreements = [
        {
            **_cell_row(c, with_rec),
            "counterexample": c.counterexample.to_dict() if c.counterexample else None,
        }
        for c in sweep.disagreements
    ]
    agreement = {
        "theorem": theorem,
        "reading": sweep.reading,
        "cells": len(sweep.cells),
        "flagged_identically_zero": len(sweep.identically_zero_cells),
        "disagreement_count": len(disagreements),
        "disagreements": disagreements,
    }
    code = 1 if disagreements else 0
    return Report("crossval", inputs, rows, agreement), code


def _cmd_counterexample(args):
    index_map = AffineIndexMap(args.a, args.b)
    inputs = {
        "family": args.family,
        "a": args.a,
        "b": args.b,
        "prime_bound": args.prime_bound,
        "digits": args.digits,
    }
    base = {"family": args.family, "a": args.a, "b": args.b}
    try:
        found_prime, verdict = corollary1_counterexample(
            index_map, args.prime_bound, args.family, args.digits
        )
    except NotFoundWithinBoundError:
        row = {**base, "found": False, "prime_bound": args.prime_bound}
        return Report("counterexample", inputs, [row]), 0
    row = {**base, "found": True, **verdict.to_dict()}
    return Report("counterexample", inputs, [row]), 1


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lucaslp",
        description="Verify digit-product congruences for integer sequences mod p.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("json", "csv", "plain"), default="json",
        help="report rendering (default json)",
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    p_check = sub.add_parser(
        "lp-check", parents=[common], help="brute-force one sequence at one prime"
    )
    p_check.add_argument(
        "variant",
        choices=(
            "fib-affine", "lucas-affine", "general-affine",
            "power", "apery", "omega", "table",
        ),
    )
    p_check.add_argument("--prime", type=_prime_type, required=True)
    p_check.add_argument("--digits", type=int, default=3, help="scan all n < prime**digits")
    p_check.add_argument("--a", type=int, help="index stride for affine variants")
    p_check.add_argument("--b", type=int, help="index offset for affine variants")
    p_check.add_argument("--rec", type=_rec_type, help="recurrence A0,A1,u,v")
    p_check.add_argument("--base", type=int, help="base for the power variant")
    p_check.add_argument("--values", type=_int_list_type, help="comma-separated table values")
    p_check.set_defaults(handler=_cmd_lp_check)

    p_thm = sub.add_parser(
        "theorem", parents=[common], help="evaluate a closed-form criterion"
    )
    p_thm.add_argument("--which", type=int, choices=(1, 2, 3), required=True)
    p_thm.add_argument("--a", type=int, required=True)
    p_thm.add_argument("--b", type=int, required=True)
    p_thm.add_argument("--prime", type=_prime_type, required=True)
    p_thm.add_argument("--rec", type=_rec_type, help="recurrence A0,A1,u,v (criterion 3)")
    p_thm.add_argument(
        "--reading", choices=(AS_PROVED, AS_STATED),
        help="seed clause variant for criterion 2 (default as-proved)",
    )
    p_thm.set_defaults(handler=_cmd_theorem)

    p_enum = sub.add_parser(
        "enumerate-b", parents=[common],
        help="list offsets b passing the oracle for a fixed stride",
    )
    p_enum.add_argument("--family", choices=("fib", "lucas", "general"), default="fib")
    p_enum.add_argument("--a", type=int, required=True)
    p_enum.add_argument("--prime", type=_prime_type, required=True)
    p_enum.add_argument("--digits", type=int, default=3)
    p_enum.add_argument("--rec", type=_rec_type, help="recurrence A0,A1,u,v (family general)")
    p_enum.set_defaults(handler=_cmd_enumerate_b)

    p_alpha = sub.add_parser(
        "alpha", parents=[common], help="least n >= 1 with p dividing F(n)"
    )
    p_alpha.add_argument("--prime", type=_prime_type, required=True)
    p_alpha.set_defaults(handler=_cmd_alpha)

    p_period = sub.add_parser(
        "period", parents=[common], help="preperiod and period of a recurrence mod p"
    )
    p_period.add_argument("--prime", type=_prime_type, required=True)
    p_period.add_argument("--rec", type=_rec_type, help="recurrence A0,A1,u,v (default Fibonacci)")
    p_period.set_defaults(handler=_cmd_period)

    p_ident = sub.add_parser(
        "identity", parents=[common], help="sweep an identity for zero residuals"
    )
    p_ident.add_argument(
        "--which", choices=("catalan", "lucas-catalan", "general", "shift"), required=True
    )
    p_ident.add_argument("--n-max", type=int, dest="n_max")
    p_ident.add_argument(
        "--rec", type=_rec_type, action="append",
        help="recurrence A0,A1,u,v; repeatable (general and shift)",
    )
    p_ident.set_defaults(handler=_cmd_identity)

    p_special = sub.add_parser(
        "special", parents=[common], help="tabulate Apery or reciprocal-Bessel values"
    )
    p_special.add_argument("--seq", choices=("apery", "omega"), required=True)
    p_special.add_argument("--n", type=int, dest="n_max", required=True,
                           help="tabulate indices 0..n")
    p_special.add_argument("--prime", type=_prime_type, help="reduce values mod this prime")
    p_special.set_defaults(handler=_cmd_special)

    p_cross = sub.add_parser(
        "crossval", parents=[common],
        help="sweep a criterion against the oracle over a (prime, a, b) grid",
    )
    p_cross.add_argument("--theorem", type=int, choices=(1, 2, 3), required=True)
    p_cross.add_argument("--prime-bound", type=int, dest="prime_max", default=13,
                         help="use every prime <= this bound (default 13)")
    p_cross.add_argument("--a-max", type=int, dest="a_max", default=12)
    p_cross.add_argument("--b-max", type=int, dest="b_max", default=12)
    p_cross.add_argument("--digits", type=int, default=3)
    p_cross.add_argument(
        "--reading", choices=(AS_PROVED, AS_STATED),
        help="seed clause variant for theorem 2 (default as-proved)",
    )
    p_cross.add_argument(
        "--rec", type=_rec_type, action="append",
        help="recurrence A0,A1,u,v; repeatable (theorem 3)",
    )
    p_cross.set_defaults(handler=_cmd_crossval)

    p_counter = sub.add_parser(
        "counterexample", parents=[common],
        help="smallest prime where an affine subsequence fails the oracle",
    )
    p_counter.add_argument("--a", type=int, required=True)
    p_counter.add_argument("--b", type=int, required=True)
    p_counter.add_argument("--family", choices=("fib", "lucas"), default="fib")
    p_counter.add_argument("--prime-bound", type=int, dest="prime_bound", default=50)
    p_counter.add_argument("--digits", type=int, default=3)
    p_counter.set_defaults(handler=_cmd_counterexample)

    return parser


def run_cli(argv=None) -> int:
    """Parse argv, run the subcommand, print its report, return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        report, code = args.handler(args)
        text = format_report(report, args.format)
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    return code


def main() -> None:
    raise SystemExit(run_cli(sys.argv[1:]))
