"""Command-line entry point.

Exit codes: 0 success and the property holds; 1 the property fails or no
construction was found; 2 malformed input or an exceeded guard.
"""

from __future__ import annotations

import argparse
import json
import sys

from .construct import GeneratorMatrix, construct_mds
from .errors import GmMdsError, InputError, NotApplicable
from .multiset import ZFamily, default_workers, enumerate_outcomes, iter_sweep
from .pattern import ZeroPattern, check_mds_condition, reduce_supports
from .reductions import CdeInstance, SmanInstance, cde_cut_condition, cde_to_pattern, sman_code, sman_to_pattern
from .special_case import applies, verify_star
from .symdet import symbolic_det
from .verify import is_mds

SCHEMA = 1


def _load(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc


def _emit(doc: dict) -> None:
    sys.stdout.write(json.dumps({"schema": SCHEMA, **doc}) + "\n")


def cmd_check(args) -> int:
    report = check_mds_condition(ZeroPattern.from_json(_load(args.pattern)))
    _emit(report.to_json())
    return 0 if report.holds else 1


def cmd_reduce(args) -> int:
    _emit(reduce_supports(ZeroPattern.from_json(_load(args.pattern))).to_json())
    return 0


def cmd_construct(args) -> int:
    pat = ZeroPattern.from_json(_load(args.pattern))
    g = construct_mds(pat, args.q, args.strategy, args.seed, args.max_tries)
    if args.dump_poly:
        for line in symbolic_det(g.pattern.zeros, pat.n).dump_lines():
            print(line, file=sys.stderr)
    _emit(g.to_json())
    return 0


def cmd_verify(args) -> int:
    verdict = is_mds(GeneratorMatrix.from_json(_load(args.generator)))
    _emit(verdict.to_json())
    if not verdict:
        print(f"singular minor on columns {list(verdict.failing_columns)}", file=sys.stderr)
    return 0 if verdict else 1


def cmd_multiset(args) -> int:
    report = enumerate_outcomes(ZFamily.from_json(_load(args.family)))
    _emit(report.to_json())
    return 0 if report.holds else 1


def cmd_sweep(args) -> int:
    stats: dict = {}
    checked = failed = 0
    workers = args.workers if args.workers is not None else default_workers()
    for res in iter_sweep(args.k, args.n_max, not args.no_canonical, args.sample,
                          args.seed, workers, stats):
        checked += 1
        failed += not res.holds
        _emit(res.to_json())
        sys.stdout.flush()
    note = " (sampling budget exhausted)" if stats.get("exhausted") else ""
    print(f"k={args.k}: {checked} families checked, {failed} counterexamples{note}", file=sys.stderr)
    return 0 if failed == 0 else 1


def cmd_star(args) -> int:
    fam = ZFamily.from_json(_load(args.family))
    if not applies(fam):
        raise NotApplicable("zero sets share more than one column pairwise, or all share a column")
    star, count = verify_star(fam)
    _emit({**star.to_json(), "count": count, "unique": count == 1})
    return 0 if count == 1 else 1


def cmd_cde(args) -> int:
    inst = CdeInstance.from_json(_load(args.instance))
    cut = cde_cut_condition(inst)
    pat = cde_to_pattern(inst)
    _emit({"cut": cut.to_json(), "pattern": pat.to_json(), "mds_condition": check_mds_condition(pat).to_json()})
    return 0


def cmd_sman(args) -> int:
    inst = SmanInstance.from_json(_load(args.instance))
    if args.emit_code:
        code = sman_code(inst, args.q, args.strategy, args.seed)
        _emit({"k": inst.k, "total_rate": inst.total_rate, **code.to_json()})
    else:
        pat, sub = sman_to_pattern(inst)
        _emit({"k": inst.k, "total_rate": inst.total_rate, "pattern": pat.to_json(),
               "sub_pattern": sub.to_json()})
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gmmds",
        description="MDS generator matrices with prescribed zero patterns, and the unique-multiset lab.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="check the MDS Condition of a pattern")
    p.add_argument("pattern")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("reduce", help="shrink row supports to weight n-k+1")
    p.add_argument("pattern")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("construct", help="build an MDS generator matrix fitting a pattern")
    p.add_argument("pattern")
    p.add_argument("--q", type=int, default=None, help="field size (default: smallest prime power >= n+k-1)")
    p.add_argument("--strategy", choices=("random", "exhaustive"), default="random")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-tries", type=int, default=None)
    p.add_argument("--dump-poly", action="store_true", help="print symbolic det(A) to stderr")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check every maximal minor of a generator matrix")
    p.add_argument("generator")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("multiset", help="histogram of multiset unions for a zero-set family")
    p.add_argument("family")
    p.set_defaults(func=cmd_multiset)

    p = sub.add_parser("sweep", help="check every family for a given k (JSON lines)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--sample", type=int, default=None, metavar="BUDGET",
                   help="check BUDGET seeded random families instead of enumerating")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-canonical", action="store_true", help="enumerate labelled families")
    p.add_argument("--workers", type=int, default=None, help="default: $GMMDS_THREADS or CPU count")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("star", help="explicit unique selection for pairwise-thin families")
    p.add_argument("family")
    p.set_defaults(func=cmd_star)

    p = sub.add_parser("cde", help="compile a cooperative data exchange instance")
    p.add_argument("instance")
    p.set_defaults(func=cmd_cde)

    p = sub.add_parser("sman", help="compile a simple multiple access network instance")
    p.add_argument("instance")
    p.add_argument("--emit-code", action="store_true")
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--strategy", choices=("random", "exhaustive"), default="random")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_sman)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GmMdsError as exc:
        _emit(exc.to_json())
        print(f"gmmds {args.command}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
