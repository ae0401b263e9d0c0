"""Command line front end.

Exit codes: 0 on success, 1 when a verification or decision fails
(inconclusive verdict, oracle mismatch, vanishing value), 2 on invalid
input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .characters import ChiToken, orbit_supports
from .cosets import (
    CaseTag,
    CosetMatrix,
    InvalidInputError,
    Partition,
    enumerate_coset_matrices,
    is_open,
)
from .engine import (
    VerdictStatus,
    cross_check,
    exponent_parity_formula,
    steinberg_decision,
)
from .lfactor import (
    LFactorError,
    RamificationTag,
    TateChar,
    eval_nonvanishing_at_s0,
    gj_L_trivial,
    i2_ratio,
    tate_L,
)
from .oracles.finite_field import FieldSpec
from .oracles.flags import (
    DEFAULT_BUDGET,
    BudgetExceededError,
    FlagCache,
    enumerate_flags,
    flag_profile,
    reduce_to_representative,
    representative_flag,
)
from .oracles.quaternion import quaternion_model_check

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _emit(payload: dict, lines: list[str], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    else:
        for line in lines:
            print(line)


def _parse_matrix(text: str) -> list[list[int]]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"matrix is not valid JSON: {exc}") from exc
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise InvalidInputError("matrix must be a JSON list of lists")
    return data


def cmd_enumerate(args: argparse.Namespace) -> int:
    partition = Partition.parse(args.partition)
    case = CaseTag(args.case)
    matrices = enumerate_coset_matrices(partition, case)
    payload = {
        "count": len(matrices),
        "matrices": [
            {**s.to_json(), "open": is_open(s)} for s in matrices
        ],
    }
    lines = [f"{len(matrices)} coset matrices for partition {partition.parts} ({case.value})"]
    for idx, s in enumerate(matrices):
        tag = " open" if is_open(s) else ""
        lines.append(f"  [{idx}] {list(list(r) for r in s.entries)}{tag}")
    _emit(payload, lines, args.format)
    return EXIT_OK


def cmd_support(args: argparse.Namespace) -> int:
    entries = _parse_matrix(args.matrix)
    parts = Partition(tuple(sum(row) for row in entries))
    s = CosetMatrix(CaseTag(args.case), parts, tuple(tuple(r) for r in entries))
    report = orbit_supports(s, ChiToken(args.chi), Fraction(args.kappa))
    lines = [f"feasible: {report.feasible}"]
    for block, rule in report.violations:
        lines.append(f"  block {block}: {rule.value}")
    _emit(report.to_json(), lines, args.format)
    return EXIT_OK


def cmd_steinberg(args: argparse.Namespace) -> int:
    verdict = steinberg_decision(
        CaseTag(args.case), args.m, args.d, ChiToken(args.chi), Fraction(args.kappa)
    )
    lines = [
        f"case={args.case} m={args.m} d={args.d} chi={args.chi}: "
        f"{verdict.status.value} (multiplicity {verdict.multiplicity})"
    ]
    _emit(verdict.to_json(), lines, args.format)
    return EXIT_OK if verdict.status is not VerdictStatus.INCONCLUSIVE else EXIT_FAIL


def cmd_sweep(args: argparse.Namespace) -> int:
    rows = []
    ok = True
    for m in range(1, args.max_m + 1):
        for d in range(1, args.max_d + 1):
            case = CaseTag.EVEN if d % 2 == 0 else CaseTag.ODD
            agreed = cross_check(case, m, d)
            ok = ok and agreed
            rows.append(
                {
                    "case": case.value,
                    "m": m,
                    "d": d,
                    "expected_chi": exponent_parity_formula(m, d).value,
                    "agrees": agreed,
                }
            )
    lines = ["case  m  d  expected_chi  agrees"]
    for r in rows:
        lines.append(
            f"{r['case']:<5} {r['m']}  {r['d']}  {r['expected_chi']:<12} {r['agrees']}"
        )
    lines.append("all agree" if ok else "DISAGREEMENT FOUND")
    _emit({"rows": rows, "all_agree": ok}, lines, args.format)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_lfactor(args: argparse.Namespace) -> int:
    shift = Fraction(args.shift)
    if args.kind == "tate":
        rf = tate_L(
            TateChar(args.char), RamificationTag(args.ram), shift, args.s_coeff
        )
    elif args.kind == "gj":
        rf = gj_L_trivial(args.k, args.d, shift, args.s_coeff)
    else:
        rf = i2_ratio(args.d, RamificationTag(args.ram))
    payload: dict = {"factor": rf.to_json(), "rendered": rf.render()}
    lines = [rf.render()]
    code = EXIT_OK
    if args.eval_q:
        report = eval_nonvanishing_at_s0(rf, args.eval_q)
        payload["nonvanishing"] = report.to_json()
        rendered = report.value_at_t1.render() if report.value_at_t1 else "pole"
        lines.append(f"value at t=1: {rendered}")
        for q, status, value in report.samples:
            lines.append(f"  q={q}: {status.value} ({value})")
        lines.append(f"nonvanishing: {report.nonvanishing}")
        if not report.nonvanishing:
            code = EXIT_FAIL
    _emit(payload, lines, args.format)
    return code


def cmd_oracle_flags(args: argparse.Namespace) -> int:
    partition = Partition.parse(args.partition)
    spec = FieldSpec(args.q)
    cache_dir = args.cache_dir or os.environ.get("DISTINCTION_CACHE_DIR")
    cache = FlagCache(cache_dir) if cache_dir else None
    flags = cache.load(args.n, args.q, partition) if cache else None
    if flags is None:
        flags = enumerate_flags(args.n, args.q, partition, budget=args.budget)
        if cache:
            cache.store(args.n, args.q, partition, flags)
    histogram: dict[tuple, int] = {}
    for flag in flags:
        profile = flag_profile(flag, spec)
        histogram[profile.flat()] = histogram.get(profile.flat(), 0) + 1
    expected = enumerate_coset_matrices(partition, CaseTag.ODD)
    seen = set(histogram)
    ok = seen == {s.flat() for s in expected}
    field = spec.extension()
    for s in expected:
        rep = representative_flag(s, spec)
        if flag_profile(rep, spec) != s:
            ok = False
    checked = 0
    for flag in flags[:: max(1, len(flags) // max(args.reduce_samples, 1))]:
        h = reduce_to_representative(flag, spec)
        if not all(field.in_base(x) for row in h for x in row):
            ok = False
        checked += 1
    rows = sorted(histogram.items())
    payload = {
        "n": args.n,
        "q": args.q,
        "partition": list(partition.parts),
        "flag_count": len(flags),
        "orbit_sizes": [
            {"profile": list(key), "size": size} for key, size in rows
        ],
        "reductions_checked": checked,
        "ok": ok,
    }
    lines = [f"{len(flags)} flags, {len(rows)} orbits"]
    for key, size in rows:
        lines.append(f"  profile {list(key)}: orbit size {size}")
    lines.append(f"reductions checked: {checked}")
    lines.append("oracle agrees" if ok else "ORACLE MISMATCH")
    _emit(payload, lines, args.format)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_oracle_quaternion(args: argparse.Namespace) -> int:
    report = quaternion_model_check(Fraction(args.alpha), Fraction(args.beta))
    if report.error:
        raise InvalidInputError(report.error)
    lines = [
        f"alpha={report.alpha} beta={report.beta}",
        f"  homomorphism:       {report.homomorphism}",
        f"  involution:         {report.involution}",
        f"  orders agree:       {report.orders_agree}",
        f"  fixes first factor: {report.fixes_first_factor}",
        f"  semilinear:         {report.semilinear}",
        "model verified" if report.ok else "MODEL CHECK FAILED",
    ]
    _emit(report.to_json(), lines, args.format)
    return EXIT_OK if report.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="steinberg-distinction",
        description="Distinction combinatorics for twisted Steinberg representations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=["table", "json"], default="table")

    p = sub.add_parser("enumerate", help="list coset matrices for a partition")
    p.add_argument("--case", choices=["even", "odd"], required=True)
    p.add_argument("--partition", required=True, help="comma-separated parts, e.g. 1,2,1")
    common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("support", help="character support of one orbit")
    p.add_argument("--case", choices=["even", "odd"], required=True)
    p.add_argument("--matrix", required=True, help='JSON entries, e.g. "[[0,2],[2,0]]"')
    p.add_argument("--chi", choices=["triv", "eta"], required=True)
    p.add_argument("--kappa", default="1", help="positive rational convention weight")
    common(p)
    p.set_defaults(func=cmd_support)

    p = sub.add_parser("steinberg", help="distinction verdict for one (m, d, chi)")
    p.add_argument("--case", choices=["even", "odd"], required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--chi", choices=["triv", "eta"], required=True)
    p.add_argument("--kappa", default="1")
    common(p)
    p.set_defaults(func=cmd_steinberg)

    p = sub.add_parser("sweep", help="compare engine verdicts with the parity formula")
    p.add_argument("--max-m", type=int, default=4)
    p.add_argument("--max-d", type=int, default=4)
    common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("lfactor", help="exact local factors and specializations")
    p.add_argument("--kind", choices=["tate", "gj", "i2"], required=True)
    p.add_argument("--char", choices=["triv", "eta"], default="triv")
    p.add_argument("--ram", choices=["unramified", "ramified"], default="unramified")
    p.add_argument("--shift", default="0", help="rational shift, e.g. -1/2")
    p.add_argument("--s-coeff", type=int, default=1)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--eval-q", type=int, nargs="*", default=[], help="residue sizes to probe at s=0")
    common(p)
    p.set_defaults(func=cmd_lfactor)

    p = sub.add_parser("oracle-flags", help="finite flag enumeration cross-check")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--partition", required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--reduce-samples", type=int, default=10)
    p.add_argument(
        "--cache-dir",
        default=None,
        help="flag cache directory (falls back to DISTINCTION_CACHE_DIR)",
    )
    common(p)
    p.set_defaults(func=cmd_oracle_flags)

    p = sub.add_parser("oracle-quaternion", help="rational quaternion model check")
    p.add_argument("--alpha", required=True, help="rational, not a square, e.g. -1 or 2")
    p.add_argument("--beta", required=True, help="nonzero rational")
    common(p)
    p.set_defaults(func=cmd_oracle_quaternion)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InvalidInputError, LFactorError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
