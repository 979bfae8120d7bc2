"""Command-line front end.

Subcommands::

    check  LHS RHS    exit 0 if the containment holds, 1 with a witness if not
    equiv  LHS RHS    language equality, decided as two containments
    match  WORD EXPR  word problem
    derive --by X EXPR   print the derivative by a character or class
    next   EXPR       print the next-literal partition, one literal per line
    trace  LHS RHS    like check, but stream the rule trace as JSON lines

Exit codes: 0 holds/match, 1 fails/no match, 2 errors (parse, usage, fuel),
3 oracle disagreement under ``--oracle-check``.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .alphabet import (
    Algebra,
    AlgebraError,
    BitsetAlgebra,
    FiniteCofiniteAlgebra,
    IntervalAlgebra,
)
from .containment import Checker, FuelExhausted, Verdict, membership
from .derivative import deriv_literal, deriv_symbol, refines_next
from .nextlit import next_literals
from .oracle import MAX_ALPHABET, SliceOracle
from .syntax import (
    ExprBuilder,
    ParseError,
    parse_class_text,
    parse_raw,
    raw_size,
    raw_width,
    to_text,
    unescape_word,
)

EX_HOLDS = 0
EX_FAILS = 1
EX_ERROR = 2
EX_ORACLE = 3

ORACLE_LEN = 8


def make_algebra(spec: str) -> Algebra:
    if spec.startswith("bitset:"):
        return BitsetAlgebra(spec[len("bitset:") :])
    if spec == "unicode":
        return IntervalAlgebra()
    if spec == "cofinite":
        return FiniteCofiniteAlgebra()
    raise AlgebraError(
        f"unknown alphabet {spec!r} (expected bitset:<chars>, unicode, or cofinite)"
    )


def _bool_flag(text: str) -> bool:
    lowered = text.lower()
    if lowered in ("1", "true", "on", "yes"):
        return True
    if lowered in ("0", "false", "off", "no"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--alphabet",
        default="unicode",
        metavar="SPEC",
        help="bitset:<chars>, unicode, or cofinite (default: unicode)",
    )
    common.add_argument("--fuel", type=int, default=1 << 20, metavar="N",
                        help="visited-pair cap guarding against engine bugs")
    common.add_argument("--no-axioms", action="store_true",
                        help="disable the prove/disprove fast paths")
    common.add_argument("--global-memo", type=_bool_flag, default=True, metavar="BOOL",
                        help="keep all visited pairs for cycle detection (default: true)")
    common.add_argument("--trace-json", metavar="PATH",
                        help="write one JSON object per rule application to PATH")
    common.add_argument("--oracle-check", action="store_true",
                        help="cross-validate the verdict against the slice oracle")
    common.add_argument("--raw-metrics", action="store_true",
                        help="report size/width of each expression as written")

    parser = argparse.ArgumentParser(
        prog="symre",
        description="containment and equivalence of extended regular expressions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="decide containment")
    p.add_argument("lhs")
    p.add_argument("rhs")
    p = sub.add_parser("equiv", parents=[common], help="decide equivalence")
    p.add_argument("lhs")
    p.add_argument("rhs")
    p = sub.add_parser("match", parents=[common], help="decide word membership")
    p.add_argument("word")
    p.add_argument("expr")
    p = sub.add_parser("derive", parents=[common], help="print a derivative")
    p.add_argument("--by", required=True, metavar="CLASS",
                   help="a character or a [...] class")
    p.add_argument("expr")
    p = sub.add_parser("next", parents=[common], help="print the next literals")
    p.add_argument("expr")
    p = sub.add_parser("trace", parents=[common],
                       help="check and stream the rule trace to stdout")
    p.add_argument("lhs")
    p.add_argument("rhs")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except FuelExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_ERROR
    except (ParseError, AlgebraError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_ERROR


def _run(args: argparse.Namespace) -> int:
    algebra = make_algebra(args.alphabet)
    builder = ExprBuilder(algebra)

    def parse_expr(text: str, role: str):
        raw = parse_raw(text, algebra)
        if args.raw_metrics:
            print(f"raw-metrics {role}: size={raw_size(raw)} width={raw_width(raw)}")
        return builder.build(raw)

    if args.command == "match":
        word = unescape_word(args.word)
        expr = parse_expr(args.expr, "expr")
        matched = membership(builder, word, expr)
        if args.oracle_check:
            code = _oracle_check_match(builder, word, expr, matched)
            if code is not None:
                return code
        print("MATCH" if matched else "NO-MATCH")
        return EX_HOLDS if matched else EX_FAILS

    if args.command == "derive":
        expr = parse_expr(args.expr, "expr")
        by = parse_class_text(args.by, algebra)
        if algebra.is_empty(by):
            raise AlgebraError("cannot derive by the empty class")
        witness = algebra.pick_witness(by)
        singleton = algebra.is_subset(by, algebra.class_set([(ord(witness), ord(witness))], False))
        if singleton:
            result = deriv_symbol(builder, witness, expr)
        else:
            if not refines_next(builder, by, expr):
                partition = ", ".join(algebra.format_set(s) for s in next_literals(builder, expr))
                raise AlgebraError(
                    f"class {args.by} does not refine the next-literal "
                    f"partition {{{partition}}}"
                )
            result = deriv_literal(builder, by, expr)
        print(to_text(result))
        return EX_HOLDS

    if args.command == "next":
        expr = parse_expr(args.expr, "expr")
        for literal in next_literals(builder, expr):
            print(algebra.format_set(literal))
        return EX_HOLDS

    # check / equiv / trace
    lhs = parse_expr(args.lhs, "lhs")
    rhs = parse_expr(args.rhs, "rhs")
    events: list[dict] = []
    wants_trace = args.trace_json is not None or args.command == "trace"
    checker = Checker(
        builder,
        use_axioms=not args.no_axioms,
        global_memo=args.global_memo,
        fuel=args.fuel,
        trace=events.append if wants_trace else None,
    )
    if args.command == "equiv":
        verdict = checker.equivalent(lhs, rhs)
    else:
        verdict = checker.check(lhs, rhs)

    if args.trace_json is not None:
        with open(args.trace_json, "w", encoding="utf-8") as fh:
            for event in events:
                fh.write(json.dumps(event) + "\n")
    if args.command == "trace":
        for event in events:
            print(json.dumps(event))

    line = "HOLDS" if verdict.holds else f"FAILS witness={algebra.format_word(verdict.witness)}"
    print(line, file=sys.stderr if args.command == "trace" else sys.stdout)

    if args.oracle_check:
        code = _oracle_check_verdict(builder, lhs, rhs, verdict, args.command == "equiv")
        if code is not None:
            return code
    return EX_HOLDS if verdict.holds else EX_FAILS


def _make_oracle(builder: ExprBuilder) -> SliceOracle:
    algebra = builder.algebra
    if not isinstance(algebra, BitsetAlgebra) or len(algebra.symbols) > MAX_ALPHABET:
        raise AlgebraError(
            "--oracle-check needs a bitset alphabet of at most "
            f"{MAX_ALPHABET} symbols"
        )
    return SliceOracle(builder, ORACLE_LEN)


def _oracle_check_match(builder, word, expr, matched: bool) -> Optional[int]:
    oracle = _make_oracle(builder)
    if len(word) > ORACLE_LEN:
        return None
    if (word in oracle.slice(expr)) != matched:
        print("oracle disagreement: membership verdict not confirmed", file=sys.stderr)
        return EX_ORACLE
    return None


def _oracle_check_verdict(builder, lhs, rhs, verdict: Verdict, is_equiv: bool) -> Optional[int]:
    oracle = _make_oracle(builder)
    if verdict.holds:
        ok = oracle.equal(lhs, rhs) if is_equiv else oracle.subset(lhs, rhs)
    else:
        w = verdict.witness
        ok = membership(builder, w, lhs) != membership(builder, w, rhs) if is_equiv else (
            membership(builder, w, lhs) and not membership(builder, w, rhs)
        )
        if ok and len(w) <= ORACLE_LEN and not is_equiv:
            ok = w in oracle.slice(lhs) and w not in oracle.slice(rhs)
    if not ok:
        print("oracle disagreement: verdict not confirmed by the slice oracle", file=sys.stderr)
        return EX_ORACLE
    return None


if __name__ == "__main__":
    sys.exit(main())
