"""Command-line front end.

Exit codes: 0 success, 1 counterexample to a proved theorem, 2 usage, parse or
context errors, 3 coefficient cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .errors import (
    ArityViolationError,
    CounterexampleError,
    DeficitLabError,
    DegreeOverflowError,
    InadmissibleContextError,
)
from .parser import parse_field, parse_poly
from .poly import MAX_COEFFS, Poly1, compose, deficit1, iterate
from .poly2 import Poly2, compose_uni_bi, deficit2, diag_subst_bi, diag_subst_uni
from .theorems import (
    DEFAULT_CONTEXTS,
    NEGATIVE_CONTROLS,
    SuiteReport,
    TheoremId,
    check_admissible,
    paper_examples,
    run_negative_control,
    run_suite,
)

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE, EXIT_OVERFLOW = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _default_seed() -> int:
    raw = os.environ.get("DEFICITLAB_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"DEFICITLAB_SEED must be an integer, got {raw!r}") from None


def _deficit_dict(p) -> dict | None:
    if p.is_zero:
        return None
    return (deficit2(p) if isinstance(p, Poly2) else deficit1(p)).to_dict()


def _deficit_text(label: str, d: dict | None) -> str:
    if d is None:
        return f"{label}: undefined (zero polynomial)"
    where = "all coefficients in F" if d["in_F"] else f"top non-F index {d['top_non_F_index']}"
    return f"{label} = {d['deficit']}  (degree {d['degree']}, {where})"


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")


def _poly_uni_or_bi(text: str, ctx, max_coeffs: int):
    try:
        return parse_poly(text, ctx, 1, max_coeffs)
    except ArityViolationError:
        return parse_poly(text, ctx, 2, max_coeffs)


def cmd_deficit(args) -> int:
    ctx = parse_field(args.field)
    p = parse_poly(args.poly, ctx, args.arity, args.max_coeffs)
    d = _deficit_dict(p)
    if d is None:
        deficit1(p)  # raises ZERO_POLYNOMIAL
    _emit(args, {"field": ctx.name, "p": str(p), **d}, [f"p = {p}", _deficit_text("D(p)", d)])
    return EXIT_OK


def cmd_deficit2(args) -> int:
    args.arity = 2
    return cmd_deficit(args)


def cmd_compose(args) -> int:
    ctx = parse_field(args.field)
    p = parse_poly(args.p, ctx, 1, args.max_coeffs)
    q = parse_poly(args.q, ctx, 1, args.max_coeffs)
    pq = compose(p, q, args.max_coeffs)
    payload = {"field": ctx.name, "p": str(p), "q": str(q), "composed": str(pq),
               "deficit_p": _deficit_dict(p), "deficit_q": _deficit_dict(q), "deficit_composed": _deficit_dict(pq)}
    _emit(args, payload, [f"p o q = {pq}", _deficit_text("D(p)", payload["deficit_p"]),
                          _deficit_text("D(q)", payload["deficit_q"]),
                          _deficit_text("D(p o q)", payload["deficit_composed"])])
    return EXIT_OK


def cmd_iterate(args) -> int:
    ctx = parse_field(args.field)
    p = parse_poly(args.p, ctx, 1, args.max_coeffs)
    if args.r < 1:
        raise SystemExit(f"r must be a positive integer, got {args.r}")
    pr = iterate(p, args.r, args.max_coeffs)
    payload = {"field": ctx.name, "p": str(p), "r": args.r, "iterate": str(pr),
               "deficit_p": _deficit_dict(p), "deficit_iterate": _deficit_dict(pr)}
    _emit(args, payload, [f"p^[{args.r}] = {pr}", _deficit_text("D(p)", payload["deficit_p"]),
                          _deficit_text(f"D(p^[{args.r}])", payload["deficit_iterate"])])
    return EXIT_OK


def cmd_compose2(args) -> int:
    ctx = parse_field(args.field)
    p = parse_poly(args.p, ctx, 1, args.max_coeffs)
    q = parse_poly(args.q, ctx, 2, args.max_coeffs)
    pq = compose_uni_bi(p, q)
    payload = {"field": ctx.name, "p": str(p), "q": str(q), "composed": str(pq),
               "deficit_p": _deficit_dict(p), "deficit_q": _deficit_dict(q), "deficit_composed": _deficit_dict(pq)}
    _emit(args, payload, [f"p(q(x, y)) = {pq}", _deficit_text("D(q)", payload["deficit_q"]),
                          _deficit_text("D(p(q))", payload["deficit_composed"])])
    return EXIT_OK


def cmd_diag(args) -> int:
    ctx = parse_field(args.field)
    p = parse_poly(args.p, ctx, 2, args.max_coeffs)
    q = _poly_uni_or_bi(args.q, ctx, args.max_coeffs)
    r = diag_subst_uni(p, q) if isinstance(q, Poly1) else diag_subst_bi(p, q)
    payload = {"field": ctx.name, "p": str(p), "q": str(q), "composed": str(r),
               "deficit_p": _deficit_dict(p), "deficit_q": _deficit_dict(q), "deficit_composed": _deficit_dict(r)}
    _emit(args, payload, [f"p(q, q) = {r}", _deficit_text("D(q)", payload["deficit_q"]),
                          _deficit_text("D(p(q, q))", payload["deficit_composed"])])
    return EXIT_OK


def _examples(args) -> int:
    report = paper_examples()
    lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail}" for r in report.results]
    lines.append(f"{sum(r.passed for r in report.results)}/{len(report.results)} fixtures pass "
                 f"({report.runtime_ms} ms)")
    _emit(args, report.to_dict(), lines)
    return EXIT_OK if report.all_passed else EXIT_COUNTEREXAMPLE


def _suite_line(rep: SuiteReport) -> str:
    if rep.violations is not None:
        status = "PASS" if rep.passed else "FAIL"
        return (f"{status}  control {rep.theorem} on {rep.context}: {rep.violations} conclusion violations "
                f"in {rep.trials} trials ({rep.runtime_ms} ms)")
    status = "PASS" if not rep.counterexamples else ("NOTE" if rep.empirical else "FAIL")
    line = (f"{status}  {rep.theorem} on {rep.context}: {rep.confirms} confirm, {rep.vacuous} vacuous, "
            f"{len(rep.counterexamples)} counterexamples ({rep.runtime_ms} ms)")
    if rep.counterexamples and not rep.empirical:
        first = rep.counterexamples[0]
        line += f"\n      reproducer: seed {first['seed']}, trial {first['trial']}, inputs {first['inputs']}"
    return line


def cmd_verify(args) -> int:
    if args.examples:
        return _examples(args)
    if args.theorem is None:
        raise SystemExit("verify needs a theorem id, 'all', or --examples")
    if args.theorem == "all":
        ids = list(TheoremId)
    else:
        try:
            ids = [TheoremId(args.theorem.upper())]
        except ValueError:
            raise SystemExit(f"unknown theorem id {args.theorem!r}; choose from "
                             + ", ".join(t.value for t in TheoremId)) from None

    plan = []
    if args.field:
        ctx = parse_field(args.field)
        for tid in ids:
            try:
                check_admissible(tid, ctx)
            except InadmissibleContextError:
                if len(ids) == 1:
                    raise
                continue
            plan.append((tid, ctx))
    else:
        plan = [(tid, c) for tid in ids for c in DEFAULT_CONTEXTS[tid]]

    reports: list[SuiteReport] = []
    failed = False
    for tid, ctx in plan:
        try:
            rep = run_suite(tid, args.trials, args.seed, ctx)
        except CounterexampleError as exc:
            rep = exc.report
            failed = True
        reports.append(rep)
    if args.theorem == "all" and not args.field:
        for name in NEGATIVE_CONTROLS:
            reports.append(run_negative_control(name, min(args.trials, 200), args.seed))

    payload = {"seed": args.seed, "trials": args.trials, "reports": [r.to_dict() for r in reports]}
    lines = [_suite_line(r) for r in reports]
    _emit(args, payload, lines)
    return EXIT_COUNTEREXAMPLE if failed else EXIT_OK


def cmd_examples(args) -> int:
    return _examples(args)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default=None, help='field pair, e.g. "Q(sqrt 2, sqrt 3)", "GF(3^2)", "Z<Q"')
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--seed", type=int, default=None, help="suite seed (default: $DEFICITLAB_SEED or 0)")
    common.add_argument("--trials", type=int, default=1000, help="trials per suite (default 1000)")
    common.add_argument("--max-coeffs", type=int, default=MAX_COEFFS, help="coefficient cap on results")
    common.add_argument("--out", default=None, help="also write the JSON report to this file")

    parser = _Parser(prog="deficitlab", description="F-deficits of polynomial compositions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("deficit", parents=[common], help="deficit of a polynomial")
    p.add_argument("poly")
    p.add_argument("--arity", type=int, choices=(1, 2), default=1)
    p.set_defaults(func=cmd_deficit)

    p = sub.add_parser("deficit2", parents=[common], help="deficit of a polynomial in x, y")
    p.add_argument("poly")
    p.set_defaults(func=cmd_deficit2)

    p = sub.add_parser("compose", parents=[common], help="p(q(x)) and its deficits")
    p.add_argument("p")
    p.add_argument("q")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("iterate", parents=[common], help="the r-th iterate of p")
    p.add_argument("p")
    p.add_argument("r", type=int)
    p.set_defaults(func=cmd_iterate)

    p = sub.add_parser("compose2", parents=[common], help="p(q(x, y)) for univariate p")
    p.add_argument("p")
    p.add_argument("q")
    p.set_defaults(func=cmd_compose2)

    p = sub.add_parser("diag", parents=[common], help="p(q, q) for bivariate p")
    p.add_argument("p")
    p.add_argument("q")
    p.set_defaults(func=cmd_diag)

    p = sub.add_parser("verify", parents=[common], help="run seeded theorem suites")
    p.add_argument("theorem", nargs="?", help="theorem id or 'all'")
    p.add_argument("--examples", action="store_true", help="replay the worked examples instead")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("examples", parents=[common], help="replay the worked examples")
    p.set_defaults(func=cmd_examples)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.field is None and args.command not in ("verify",):
        args.field = "Q"
    if args.trials < 1 or args.max_coeffs < 1:
        print("deficitlab: error: --trials and --max-coeffs must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.seed is None:
            args.seed = _default_seed()
        return args.func(args)
    except DegreeOverflowError as exc:
        print(f"deficitlab: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except DeficitLabError as exc:
        print(f"deficitlab: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(f"deficitlab: error: {exc.code}", file=sys.stderr)
            return EXIT_USAGE
        raise


if __name__ == "__main__":
    sys.exit(main())
