"""Command-line front end: check, closure, decompose, extremal, enumerate,
theta-table.

Exit codes: 0 success with all checks passing, 1 a mathematical check was
falsified on the input, 2 input or usage error. All output is
byte-deterministic for fixed flags and seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import bounds, enumeration
from .bounds import BoundReport, bound_report, p_hat, theorem1_bound, theta
from .decomposition import build_decomposition, max_chain, verify_decomposition
from .family import (
    MAX_LAYER_UNIVERSE,
    NotUnionClosedError,
    SetFamily,
    set_label,
    top_layers,
    union_closure,
    union_violation,
)
from .ucfio import UcfParseError, format_ucf, load_ucf

MATERIALIZATION_CAP = 1 << 24  # largest family the extremal command will write

THETA_TABLE_HEADER = "n,k,prefix_sum,p_hat,theta_num,theta_exp,ratio"
CHECK_CSV_HEADER = "n,ell,size,theorem1,theorem1_tight,erdos,theta,p_hat,reimer_holds,union_closed"


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _bool(value: bool) -> str:
    return "true" if value else "false"


def decimal_string(value: Fraction, significant: int = 15) -> str:
    """Render an exact rational to `significant` digits using integer math only.

    Trailing zeros are trimmed (keeping one fractional digit in fixed
    notation); magnitudes outside [1e-4, 10^significant) use e-notation.
    """
    if value == 0:
        return "0.0"
    sign = "-" if value < 0 else ""
    num, den = abs(value.numerator), value.denominator

    def at_least(e: int) -> bool:  # num/den >= 10^e
        if e >= 0:
            return num >= den * 10**e
        return num * 10**-e >= den

    exp = len(str(num)) - len(str(den))
    while not at_least(exp):
        exp -= 1
    while at_least(exp + 1):
        exp += 1

    shift = significant - 1 - exp
    if shift >= 0:
        mantissa = (num * 10**shift * 2 + den) // (2 * den)
    else:
        scaled = den * 10**-shift
        mantissa = (num * 2 + scaled) // (2 * scaled)
    if mantissa >= 10**significant:
        mantissa //= 10
        exp += 1
    digits = str(mantissa)

    if 0 <= exp < significant:
        whole, frac = digits[: exp + 1], digits[exp + 1 :].rstrip("0")
        return f"{sign}{whole}.{frac or '0'}"
    if -4 <= exp < 0:
        frac = ("0" * (-exp - 1) + digits).rstrip("0")
        return f"{sign}0.{frac}"
    frac = digits[1:].rstrip("0")
    return f"{sign}{digits[0]}.{frac or '0'}e{exp:+d}"


def _load_family(path: str) -> SetFamily:
    try:
        return load_ucf(path)
    except FileNotFoundError:
        raise UcfParseError(0, f"no such file: {path}") from None


def _render_check(report: BoundReport, fmt: str) -> str:
    if fmt == "json":
        payload = {
            "family_size": report.family_size,
            "n": report.n,
            "ell": report.ell,
            "theorem1": report.theorem1,
            "erdos": report.erdos,
            "theta_at_phat": [report.theta_at_phat.numerator, report.theta_at_phat.exponent],
            "p_hat": report.p_hat,
            "theorem1_tight": report.theorem1_tight,
            "reimer_holds": report.reimer_holds,
            "union_closed": True,
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        row = [
            report.n,
            report.ell,
            report.family_size,
            report.theorem1,
            _bool(report.theorem1_tight),
            report.erdos,
            report.theta_at_phat,  # "num/2^e" token, or a plain integer
            report.p_hat,
            _bool(report.reimer_holds),
            "true",
        ]
        return CHECK_CSV_HEADER + "\n" + ",".join(str(v) for v in row) + "\n"
    lines = [
        "union_closed: true",
        f"n: {report.n}",
        f"length: {report.ell}",
        f"size: {report.family_size}",
        f"theorem1_bound: {report.theorem1}",
        f"theorem1_tight: {_bool(report.theorem1_tight)}",
        f"erdos_bound: {report.erdos}",
        f"theta_bound: {report.theta_at_phat}",
        f"p_hat: {report.p_hat}",
        f"reimer_holds: {_bool(report.reimer_holds)}",
    ]
    return "\n".join(lines) + "\n"


def cmd_check(args: argparse.Namespace) -> int:
    family = _load_family(args.path)
    pair = union_violation(family)
    if pair is not None:
        sys.stdout.write("union_closed: false\n")
        raise NotUnionClosedError(*pair)
    report = bound_report(family)
    _emit(_render_check(report, args.format), args.out)
    failed = report.family_size > report.theorem1 or not report.reimer_holds
    return 1 if failed else 0


def cmd_closure(args: argparse.Namespace) -> int:
    family = _load_family(args.path)
    _emit(format_ucf(union_closure(family)), args.out)
    return 0


def cmd_decompose(args: argparse.Namespace) -> int:
    family = _load_family(args.path)
    chain = max_chain(family)  # rejects non-union-closed input
    decomposition = build_decomposition(family, chain)
    record = verify_decomposition(family, decomposition)

    if args.format == "json":
        payload = {
            "chain": [set_label(s) for s in chain.sets],
            "residual": set_label(decomposition.residual),
            "blocks": [
                {
                    "diff": set_label(block.diff_mask),
                    "c_family": [set_label(m) for m in block.c_family.members],
                    "d_family": [set_label(m) for m in block.d_family.members],
                }
                for block in decomposition.blocks
            ],
            "verification": {
                "partition_ok": record.partition_ok,
                "size_ok": record.size_ok,
                "closure_ok": record.closure_ok,
                "shrink_ok": record.shrink_ok,
                "closure_skipped": list(record.closure_skipped),
            },
        }
        _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", args.out)
    else:
        lines = ["chain:"]
        lines.extend(f"  {set_label(s)}" for s in chain.sets)
        for i, block in enumerate(decomposition.blocks, start=1):
            lines.append(f"block {i}:")
            lines.append(f"  diff: {set_label(block.diff_mask)}")
            lines.append("  C:")
            lines.extend(f"    {set_label(m)}" for m in block.c_family.members)
            lines.append("  D:")
            lines.extend(f"    {set_label(m)}" for m in block.d_family.members)
        lines.append(f"residual: {set_label(decomposition.residual)}")
        for i in record.closure_skipped:
            lines.append(f"note: closure check skipped for block {i} (lower chain set is empty)")
        lines.append(
            "checks: "
            f"partition={_bool(record.partition_ok)} "
            f"size={_bool(record.size_ok)} "
            f"closure={_bool(record.closure_ok)} "
            f"shrink={_bool(record.shrink_ok)}"
        )
        _emit("\n".join(lines) + "\n", args.out)
    return 0 if record.all_ok else 1


def cmd_extremal(args: argparse.Namespace) -> int:
    if not 1 <= args.n <= MAX_LAYER_UNIVERSE:
        raise ValueError(f"--n must be in 1..{MAX_LAYER_UNIVERSE}, got {args.n}")
    if not 0 <= args.ell <= args.n:
        raise ValueError(f"--ell must be in 0..n, got {args.ell}")
    if theorem1_bound(args.n, args.ell) > MATERIALIZATION_CAP:
        raise ValueError(
            f"family of {theorem1_bound(args.n, args.ell)} sets exceeds the "
            f"materialization cap ({MATERIALIZATION_CAP})"
        )
    _emit(format_ucf(top_layers(args.n, args.ell)), args.out)
    return 0


def cmd_enumerate(args: argparse.Namespace) -> int:
    mode = "exhaustive" if args.exhaustive else "sampled"
    report = enumeration.audit(
        args.n,
        mode=mode,
        samples=args.samples or 0,
        seed=args.seed,
        workers=args.threads,
    )
    if args.format == "json":
        _emit(json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n", args.out)
    elif args.format == "csv":
        _emit(enumeration.CSV_HEADER + "\n" + enumeration.csv_row(report) + "\n", args.out)
    else:
        lines = [
            f"n: {report.n}",
            f"mode: {report.mode}",
            f"seed: {'-' if report.seed is None else report.seed}",
            f"families_checked: {report.families_checked}",
            f"theorem1_violations: {report.theorem1_violations}",
            f"theorem1_equalities: {report.theorem1_equalities}",
            f"equality_mismatches: {report.equality_mismatches}",
            f"corollary21_violations: {report.corollary21_violations}",
            f"decomposition_failures: {report.decomposition_failures}",
            f"theorem2_violations: {report.theorem2_violations}",
            f"reimer_violations: {report.reimer_violations}",
        ]
        _emit("\n".join(lines) + "\n", args.out)
    return 0 if report.all_clear else 1


def cmd_theta_table(args: argparse.Namespace) -> int:
    if not 1 <= args.n_max <= bounds.MAX_FORMULA_N:
        raise ValueError(f"--n-max must be in 1..{bounds.MAX_FORMULA_N}, got {args.n_max}")
    if args.k_max is not None and args.k_max < 1:
        raise ValueError(f"--k-max must be positive, got {args.k_max}")
    lines = [THETA_TABLE_HEADER]
    violated = False
    for n in range(1, args.n_max + 1):
        k_top = n if args.k_max is None else min(n, args.k_max)
        for k in range(1, k_top + 1):
            prefix = theorem1_bound(n, k)
            ph = p_hat(n, k)
            value = theta(k, n, ph)
            if value < prefix:
                violated = True
            ratio = decimal_string(value.to_fraction() / prefix)
            lines.append(
                f"{n},{k},{prefix},{ph},{value.numerator},{value.exponent},{ratio}"
            )
    _emit("\n".join(lines) + "\n", args.out)
    return 1 if violated else 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ucf",
        description="Exact bounds, chain decompositions, and theorem audits "
        "for union-closed set families.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="evaluate every bound for a .ucf family")
    check.add_argument("path")
    check.add_argument("--format", choices=["text", "json", "csv"], default="text")
    check.add_argument("--out", default=None)
    check.set_defaults(func=cmd_check)

    closure = sub.add_parser("closure", help="write the union closure of a .ucf family")
    closure.add_argument("path")
    closure.add_argument("--out", default=None)
    closure.set_defaults(func=cmd_closure)

    dec = sub.add_parser("decompose", help="maximum chain and per-level blocks")
    dec.add_argument("path")
    dec.add_argument("--format", choices=["text", "json"], default="text")
    dec.add_argument("--out", default=None)
    dec.set_defaults(func=cmd_decompose)

    extremal = sub.add_parser("extremal", help="write the top-layers family as .ucf")
    extremal.add_argument("--n", type=int, required=True)
    extremal.add_argument("--ell", type=int, required=True)
    extremal.add_argument("--out", default=None)
    extremal.set_defaults(func=cmd_extremal)

    enum = sub.add_parser("enumerate", help="audit every theorem over generated families")
    enum.add_argument("--n", type=int, required=True)
    group = enum.add_mutually_exclusive_group(required=True)
    group.add_argument("--exhaustive", action="store_true")
    group.add_argument("--samples", type=int, default=None)
    enum.add_argument("--seed", type=int, default=0)
    enum.add_argument("--threads", type=int, default=1)
    enum.add_argument("--format", choices=["text", "json", "csv"], default="text")
    enum.add_argument("--out", default=None)
    enum.set_defaults(func=cmd_enumerate)

    table = sub.add_parser("theta-table", help="CSV of prefix sums against theta at p_hat")
    table.add_argument("--n-max", type=int, required=True)
    table.add_argument("--k-max", type=int, default=None)
    table.add_argument("--out", default=None)
    table.set_defaults(func=cmd_theta_table)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UcfParseError, NotUnionClosedError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
