"""Command-line front end: constructions and verifications with JSON output.

Exit codes: 0 success, 1 validation error (bad arguments, malformed input),
2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import covers, gf, oracle, partitions
from .covers import SpaceSpec


class CliError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on usage errors; 2 is reserved for
    # verification failures here, so route usage errors through exit code 1.
    def error(self, message):
        raise CliError(message)


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def _field_from_args(args) -> gf.FieldDescriptor:
    if args.p is None:
        raise CliError("--p is required for a finite field")
    return gf.field_new(args.p, args.m)


def _parse_rationals(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(part.strip()) for part in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"bad rational vector {text!r}: {exc}") from exc


def _cmd_nu(args) -> int:
    if args.infinite_field is not None and args.p is not None:
        raise CliError("give either --p/--m or --infinite-field, not both")
    if args.infinite_dim and args.n is not None:
        raise CliError("give either --n or --infinite-dim, not both")
    if args.infinite_field is not None:
        field = None
        label = args.infinite_field
    else:
        field = _field_from_args(args)
        label = "Q"
    dim = None if args.infinite_dim else args.n
    if dim is None and not args.infinite_dim:
        raise CliError("--n or --infinite-dim is required")
    spec = SpaceSpec(field, dim, label)
    card = covers.nu(spec, args.k)
    if card.kind == covers.FINITE:
        print(card.count)
    else:
        doc = covers.cardinality_to_json(card)
        counted = card.counted(field.q if field is not None else None)
        if counted is not None:
            doc["count"] = counted
        print(_dump(doc))
    return 0


def _cmd_cover(args) -> int:
    f = _field_from_args(args)
    cover = covers.cover_finite(f, args.n, args.k)
    doc = covers.cover_to_json(cover)
    if args.verify:
        report = oracle.verify_cover(cover)
        doc["verification"] = report.to_json()
        print(_dump(doc))
        return 0 if report.ok else 2
    print(_dump(doc))
    return 0


def _cmd_partition(args) -> int:
    f = _field_from_args(args)
    if args.kind == "spread":
        part = partitions.spread_partition(f, args.n, args.d)
    else:
        part = partitions.mixed_partition(f, args.n, args.d)
    doc = partitions.partition_to_json(part)
    if args.verify:
        report = oracle.verify_partition(part)
        doc["verification"] = report.to_json()
        print(_dump(doc))
        return 0 if report.ok else 2
    print(_dump(doc))
    return 0


def _cmd_verify(args) -> int:
    if (args.cover is None) == (args.partition is None):
        raise CliError("give exactly one of --cover or --partition")
    path = args.cover or args.partition
    try:
        with open(path) as handle:
            doc = json.load(handle)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"malformed JSON in {path}: {exc}") from exc
    if args.cover:
        report = oracle.verify_cover(covers.cover_from_json(doc))
    else:
        report = oracle.verify_partition(partitions.partition_from_json(doc))
    print(_dump(report.to_json()))
    return 0 if report.ok else 2


def _cmd_oracle(args) -> int:
    f = _field_from_args(args)
    print(
        oracle.min_cover_size(
            f, args.n, args.k, upper_hint=args.upper_hint, threads=args.threads
        )
    )
    return 0


def _cmd_assign(args) -> int:
    vector = _parse_rationals(args.vector)
    if args.positions is not None:
        try:
            positions = tuple(int(p) for p in args.positions.split(","))
        except ValueError as exc:
            raise CliError(f"bad positions {args.positions!r}") from exc
    else:
        positions = tuple(range(args.k + 1))
    if len(positions) != args.k + 1:
        raise CliError(f"need {args.k + 1} positions for k={args.k}")
    index, witness = covers.projective_assign(vector, positions)
    if not witness.validate(vector):
        print("membership witness failed to validate", file=sys.stderr)
        return 2
    print(_dump(covers.projective_index_to_json(index)))
    return 0


def _cmd_countable(args) -> int:
    try:
        raw = json.loads(args.support)
    except json.JSONDecodeError as exc:
        raise CliError(f"malformed support JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise CliError("support must be a JSON object mapping index to scalar")
    try:
        support = {int(idx): Fraction(str(val)) for idx, val in raw.items()}
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"bad support entry: {exc}") from exc
    print(covers.countable_cover_index(support))
    return 0


def _cmd_limit(args) -> int:
    value = covers.f1_limit_value(args.n, args.k)
    doc = {
        "cover_number": covers.f1_cover_number(args.n, args.k),
        "value_at_q1": f"{value.numerator}/{value.denominator}",
    }
    print(_dump(doc))
    return 0


def _add_field_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--p", type=int, help="field characteristic (prime)")
    p.add_argument("--m", type=int, default=1, help="extension degree (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="subcover",
                     description="Covers and partitions of finite vector "
                                 "spaces by subspaces of fixed codimension.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nu", help="minimal cover cardinality")
    _add_field_args(p)
    p.add_argument("--n", type=int, help="ambient dimension")
    p.add_argument("--k", type=int, required=True, help="codimension")
    p.add_argument("--infinite-field", nargs="?", const="Q", default=None,
                   metavar="LABEL", help="use an infinite field")
    p.add_argument("--infinite-dim", action="store_true",
                   help="infinite-dimensional ambient space")
    p.set_defaults(func=_cmd_nu)

    p = sub.add_parser("cover", help="construct the minimal cover of F^n")
    _add_field_args(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--verify", action="store_true",
                   help="run the exhaustive oracle on the result")
    p.set_defaults(func=_cmd_cover)

    p = sub.add_parser("partition", help="construct a subspace partition")
    _add_field_args(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True, help="part dimension")
    p.add_argument("--kind", choices=("spread", "mixed"), required=True)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=_cmd_partition)

    p = sub.add_parser("verify", help="verify a cover/partition JSON file")
    p.add_argument("--cover", metavar="FILE")
    p.add_argument("--partition", metavar="FILE")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("oracle", help="brute-force oracles")
    osub = p.add_subparsers(dest="oracle_command", required=True)
    po = osub.add_parser("min", help="exact minimum cover size by search")
    _add_field_args(po)
    po.add_argument("--n", type=int, required=True)
    po.add_argument("--k", type=int, required=True)
    po.add_argument("--upper-hint", type=int, default=None)
    po.add_argument("--threads", type=int, default=1,
                    help="accepted for interface stability; the result "
                         "is independent of it")
    po.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("assign",
                       help="projective index containing a rational vector")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--vector", required=True,
                   help="comma-separated rationals, e.g. 2,3/4,0")
    p.add_argument("--positions", default=None,
                   help="comma-separated designated indices "
                        "(default 0..k)")
    p.set_defaults(func=_cmd_assign)

    p = sub.add_parser("countable",
                       help="filtration index of a finite-support vector")
    p.add_argument("--support", required=True,
                   help='JSON object, e.g. {"1":"2","7":"1/3"}')
    p.set_defaults(func=_cmd_countable)

    p = sub.add_parser("limit", help="q -> 1 limit of the cover count")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=_cmd_limit)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (CliError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
