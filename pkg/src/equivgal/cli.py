"""Command-line front end: weyl, build, verify and reproduce.

Exit codes: 0 success, 1 verification failure, 2 bad input, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from typing import Any, Sequence

from .assemble import assemble_group_equation, default_plan
from .equivariant import BadPoint
from .fixtures import FIXTURES, run_fixture, sl2_sqrtx_factor, sl2_sqrtx_field
from .verify import MUTATIONS, MalformedRecord, check_system, mutate
from .weyl import ENUM_CAP_ENV, EnumerationCapExceeded, enumerate_cycle_types, orbit_generators, search_strictly_transitive

EXIT_OK, EXIT_FAIL, EXIT_BAD_INPUT, EXIT_CAP = 0, 1, 2, 3


class BadInput(ValueError):
    pass


def _strip_timing(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {k: _strip_timing(v) for k, v in obj.items() if k != "seconds"}
    if isinstance(obj, list):
        return [_strip_timing(v) for v in obj]
    return obj


def _emit(obj: dict, out: str | None, deterministic: bool) -> None:
    if deterministic:
        obj = _strip_timing(obj)
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if out and out != "-":
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_type(text: str, rank: int | None) -> tuple[str, int]:
    text = text.strip().upper()
    kind, digits = text[0], text[1:]
    if kind not in "ABCDE":
        raise BadInput(f"unknown root system type {text!r}")
    if digits:
        r = int(digits)
        if rank is not None and rank != r:
            raise BadInput(f"--rank {rank} contradicts type {text}")
        rank = r
    if rank is None:
        raise BadInput("a rank is needed (--rank or e.g. --type E7)")
    return kind, rank


def cmd_weyl(args) -> int:
    kind, rank = _parse_type(args.type, args.rank)
    weight = args.weight if args.weight is not None else (rank if kind == "B" else 1 if kind != "E" or rank == 6 else 7)
    if not 1 <= weight <= rank:
        raise BadInput(f"weight index {weight} out of range for {kind}{rank}")
    orbit, gens = orbit_generators(kind, rank, weight)
    out: dict[str, Any] = {"type": f"{kind}{rank}", "weight": weight, "orbit_size": len(orbit)}
    if args.word:
        from .weyl import cycle_type, word_perm
        words = []
        for w in args.word:
            word = [int(t) for t in w.replace(",", " ").split()]
            if any(not 1 <= i <= rank for i in word):
                raise BadInput(f"word {w!r} uses a label outside 1..{rank}")
            words.append({"word": word, "cycle_type": list(cycle_type(word_perm(gens, word)))})
        out["words"] = words
    if args.enumerate or args.find_transitive:
        enum = enumerate_cycle_types(gens, cap=args.cap)
        types = enum.sorted_types()
        out["group_order"] = enum.group_order
        out["cycle_types"] = [{"parts": list(ct), "witness_word": list(enum.cycle_types[ct])} for ct in types]
        if args.find_transitive:
            sets, exhaustive = search_strictly_transitive(types, enum.degree, args.max_set)
            out["strictly_transitive_sets"] = [list(s) for s in sets]
            out["exhaustive"] = exhaustive
    _emit(out, args.json or args.out, args.deterministic)
    return EXIT_OK


def _parse_number(text: str):
    try:
        return Fraction(text)
    except ValueError:
        raise BadInput(f"not a rational number: {text!r}") from None


def cmd_build(args) -> int:
    if args.fixture:
        if args.fixture != "sl2-sqrtx":
            raise BadInput("only the sl2-sqrtx fixture defines a system")
        F = sl2_sqrtx_field()
        factors = [sl2_sqrtx_factor(F)]
        action, n = "transpose-inverse", 2
    else:
        if not args.factor:
            raise BadInput("give --factor (with --points) or --fixture")
        if len(args.points or []) != len(args.factor):
            raise BadInput("one --points list is needed per --factor")
        n, action, F = args.n, args.action, None
        factors = []
        for spec, pts in zip(args.factor, args.points):
            kind, rank = _parse_type(spec, None)
            xs = [_parse_number(t) for t in pts.split(",")]
            if any(x.denominator != 1 for x in xs):
                raise BadInput("points must be integers")
            factors.append(default_plan(kind, rank, [int(x) for x in xs], n))
    if args.mutation:
        record, target = mutate(args.mutation, factors, action, n, F)
        record["mutation"] = {"name": args.mutation, "targets": target}
    else:
        record = assemble_group_equation(factors, action, n, F).to_json()
    _emit(record, args.out, args.deterministic)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        with open(args.system, encoding="utf-8") as fh:
            record = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise BadInput(f"cannot read {args.system}: {exc}") from None
    bundle = check_system(record)
    _emit(bundle.to_json(), args.report, args.deterministic)
    return EXIT_OK if bundle.passed else EXIT_FAIL


def cmd_reproduce(args) -> int:
    res = run_fixture(args.fixture)
    _emit(res.to_json(), args.out, args.deterministic)
    return EXIT_OK if res.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="equivgal", description=__doc__.splitlines()[0],
                                epilog=f"The group enumeration cap defaults to the {ENUM_CAP_ENV} environment variable.")
    p.add_argument("--seed", type=int, default=0, help="seed for any randomized step (default 0)")
    p.add_argument("--deterministic", action="store_true",
                   help="omit timing fields so identical runs give byte-identical JSON")
    # the same flags are accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for any randomized step")
    common.add_argument("--deterministic", action="store_true", default=argparse.SUPPRESS,
                        help="omit timing fields")
    sub = p.add_subparsers(dest="command", required=True)

    w = sub.add_parser("weyl", parents=[common], help="Weyl group on a minuscule orbit")
    w.add_argument("--type", required=True, help="root system type, e.g. A, B, E7")
    w.add_argument("--rank", type=int, help="rank (optional when the type carries it)")
    w.add_argument("--weight", type=int, help="index k of the fundamental weight omega_k")
    w.add_argument("--word", action="append", help="Weyl word such as '1,2,3' (repeatable)")
    w.add_argument("--enumerate", action="store_true", help="list all cycle types and the group order")
    w.add_argument("--find-transitive", action="store_true", help="search minimal strictly transitive sets")
    w.add_argument("--max-set", type=int, help="largest set size searched (default: unbounded)")
    w.add_argument("--cap", type=int, help=f"element cap for enumeration (default: ${ENUM_CAP_ENV} or 5000000)")
    w.add_argument("--json", help="write JSON here (alias of --out)")
    w.add_argument("--out", help="write JSON here instead of stdout")
    w.set_defaults(func=cmd_weyl)

    b = sub.add_parser("build", parents=[common], help="assemble an equivariant system record")
    b.add_argument("--factor", action="append", help="simple factor such as A2, C3, D4 (repeatable)")
    b.add_argument("--points", action="append", help="comma separated x values for the matching --factor")
    b.add_argument("--n", type=int, default=1, help="degree of the Kummer extension x^(1/n)")
    b.add_argument("--action", default="trivial", choices=["trivial", "transpose-inverse", "inner-diag"],
                   help="action of the Galois generator on the Lie algebra")
    b.add_argument("--fixture", help="build a fixture system instead (sl2-sqrtx)")
    b.add_argument("--mutation", choices=sorted(MUTATIONS), help="build with one documented defect")
    b.add_argument("--out", help="write the record here instead of stdout")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", parents=[common], help="check a system record")
    v.add_argument("system", help="system record JSON file")
    v.add_argument("--report", help="write the bundle here instead of stdout")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("reproduce", parents=[common], help="rerun a worked example")
    r.add_argument("--fixture", required=True, choices=sorted(FIXTURES))
    r.add_argument("--out", help="write JSON here instead of stdout")
    r.set_defaults(func=cmd_reproduce)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    random.seed(args.seed)
    try:
        return args.func(args)
    except EnumerationCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except MemoryError:
        print("error: out of memory", file=sys.stderr)
        return EXIT_CAP
    except (BadInput, BadPoint, MalformedRecord, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
