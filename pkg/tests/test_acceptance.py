"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line.

Arithmetic is exact throughout, so every comparison is an equality.
"""

import random
import subprocess
import sys
import time

import pytest

from deficitlab import Poly1, compose, deficit1, iterate, parse_field, parse_poly
from deficitlab.errors import CounterexampleError, ParseError
from deficitlab.parser import format_poly
from deficitlab.theorems import (
    GenConstraints,
    TheoremId,
    compose_oracle,
    decomposition_obstruction,
    paper_examples,
    random_poly,
    run_negative_control,
    run_suite,
    trial_rng,
)

ORACLE_CONTEXTS = ["Q(sqrt 2)", "Q(sqrt 2, sqrt 3)", "Q(sqrt -1)", "Q[t]", "GF(2^2)", "GF(3^2)", "Z<Q"]
ROUND_TRIP_CONTEXTS = ORACLE_CONTEXTS + ["Q", "GF(5^2; sub 1)", "GF(2^4; sub 2)",
                                        "set:complementQ", "set:realsUnionImag"]


def test_criterion_1_fixture_replay(criterion):
    report = paper_examples()
    failed = [r.name for r in report.results if not r.passed]
    ok = not failed and report.runtime_ms < 1000
    criterion(1, ok, f"{len(report.results) - len(failed)}/{len(report.results)} worked examples replayed exactly "
                     f"in {report.runtime_ms} ms" + (f"; failing: {failed}" if failed else ""))
    assert ok


def test_criterion_2_oracle_equivalence(criterion):
    start = time.perf_counter()
    mismatches = []
    pairs = 0
    for spec in ORACLE_CONTEXTS:
        ctx = parse_field(spec)
        shape = GenConstraints(degrees=(0, 1, 2, 3, 4, 5))
        for index in range(500):
            rng = trial_rng(2024, index)
            p, q = random_poly(ctx, shape, rng), random_poly(ctx, shape, rng)
            pairs += 1
            if compose(p, q) != compose_oracle(p, q):
                mismatches.append((spec, str(p), str(q)))
    elapsed = time.perf_counter() - start
    ok = not mismatches and elapsed < 30
    criterion(2, ok, f"Horner equals multinomial expansion on {pairs} pairs over {len(ORACLE_CONTEXTS)} contexts "
                     f"({elapsed:.1f} s)" + (f"; first mismatch {mismatches[0]}" if mismatches else ""))
    assert ok


SUITE_PLAN = (
    [(tid, ctx, 1000) for tid in (TheoremId.T1, TheoremId.C1, TheoremId.T1A, TheoremId.T2, TheoremId.P1,
                                  TheoremId.L1, TheoremId.T3, TheoremId.T4, TheoremId.ITER_INEQ, TheoremId.T5)
     for ctx in ("Q(sqrt 2, sqrt 3)", "Q(sqrt -1)")]
    + [(TheoremId.FF, "GF(3^2)", 500), (TheoremId.FF, "GF(5^2)", 500)]
    + [(TheoremId.TWO_VAR, "Q(sqrt 2, sqrt 3)", 200), (TheoremId.TWO_VAR, "Q(sqrt -1)", 200)]
    + [(TheoremId.RING, "Z<Q", 500)]
)


def test_criterion_3_theorem_suites(criterion):
    start = time.perf_counter()
    failures = []
    for tid, spec, trials in SUITE_PLAN:
        try:
            run_suite(tid, trials, seed=0, ctx=spec)
        except CounterexampleError as exc:
            rep = exc.reproducer
            failures.append(f"{tid.value} on {spec} (seed {rep['seed']}, trial {rep['trial']}: "
                            f"p = {rep['inputs'][0]}, second input {rep['inputs'][1]})")
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 300
    detail = f"{len(SUITE_PLAN)} suites in {elapsed:.1f} s"
    if failures:
        detail += "; counterexamples: " + "; ".join(failures)
    criterion(3, ok, detail)
    assert ok, detail


def test_criterion_4_negative_controls(criterion):
    ff = run_negative_control("FF_DIVISIBLE", trials=200, seed=0, ctx="GF(2^2)")
    t2 = run_negative_control("T2_PRODUCT_OUTSIDE", trials=200, seed=0)
    ok = ff.violations >= 1 and t2.violations >= 1
    criterion(4, ok, f"t | n on GF(4): {ff.violations}/200 equality violations; "
                     f"a_n b_m outside F on {t2.context}: {t2.violations}/200 inequality violations")
    assert ok


def test_criterion_5_square_plus_c_pattern(criterion):
    K = parse_field("Q(sqrt 2)")
    p = parse_poly("x^2 + sqrt(2)", K)
    bad = []
    for r in range(1, 5):
        pr = iterate(p, r)
        if pr.coeff(2 ** r - 2).in_subfield or not pr.coeff(2 ** r - 1).in_subfield:
            bad.append(r)
    criterion(5, not bad, "x^(2^r-2) coefficient irrational and x^(2^r-1) rational for r = 1..4"
              + (f"; fails at r = {bad}" if bad else ""))
    assert not bad


def test_criterion_6_decomposition_obstruction(criterion):
    K = parse_field("Q(sqrt 2)")
    fixture = decomposition_obstruction(parse_poly("x^6 + x^5 + sqrt(2)*x^4 + x + 1", K),
                                        parse_poly("x^3 + sqrt(2)*x^2 + 1", K))
    rejected = []
    contexts = [parse_field(s) for s in ("Q(sqrt 2)", "Q(sqrt 2, sqrt 3)", "Q(sqrt -1)", "Q[t]", "GF(3^2)", "Z<Q")]
    for index in range(100):
        rng = trial_rng(77, index)
        ctx = contexts[index % len(contexts)]
        p = random_poly(ctx, GenConstraints(degrees=(1, 2, 3)), rng)
        q = random_poly(ctx, GenConstraints(degrees=(2, 3)), rng)
        r = compose(p, q)
        if decomposition_obstruction(r, q).impossible:
            rejected.append((ctx.name, str(p), str(q)))
    ok = fixture.impossible and not rejected
    criterion(6, ok, f"fixture {fixture.status}; {100 - len(rejected)}/100 genuine compositions INCONCLUSIVE"
                     + (f"; wrongly rejected {rejected[0]}" if rejected else ""))
    assert ok


def _round_trip_polys(ctx, seed: int, count: int):
    f_pool, non_f = ctx.pools()
    pool = f_pool + non_f
    for index in range(count):
        rng = random.Random(f"{seed}:{index}")
        coeffs = []
        for _ in range(rng.randint(0, 6)):
            a, b, c = (rng.choice(pool) for _ in range(3))
            coeffs.append(ctx.add(ctx.mul(a, b), c))
        yield Poly1(ctx, coeffs)


CLI_MATRIX = [
    (["deficit", "--field", "Q(sqrt 3)", "x^5 - 5*x^3 + sqrt(3)*x^2 - x + 1"], 0),
    (["deficit", "--field", "Q", "x^2"], 0),
    (["deficit", "--field", "Q(sqrt 2)", "0"], 2),
    (["deficit", "--field", "Q(sqrt 2)", "x^2 +* 1"], 2),
    (["deficit", "--field", "Q(sqrt 2, sqrt 8)", "x"], 2),
    (["deficit", "--field", "Q", "x*y"], 2),
    (["compose", "--field", "Q(sqrt 2, sqrt 3)", "x^3 + 2*x^2 - sqrt(2)*x + 1", "x^2 + sqrt(3)*x + 5"], 0),
    (["iterate", "--field", "Q(sqrt 2)", "x^2 + sqrt(2)", "3"], 0),
    (["iterate", "--field", "Q(sqrt 2)", "x^2 + sqrt(2)", "13"], 3),
    (["deficit2", "--field", "Q(sqrt 3, sqrt 5)", "y^2 - x^2 + sqrt(3)*x - sqrt(5)*y"], 0),
    (["diag", "--field", "Q(sqrt -1)", "x^2 - y^2 + 1", "x^2 + i*x"], 0),
    (["compose2", "--field", "Q(sqrt 2)", "x^2", "x^2 + y^2 + sqrt(2)*x"], 0),
    (["verify", "FF", "--field", "Q"], 2),
    (["verify", "T1", "--trials", "50", "--seed", "42"], 0),
    (["verify", "--examples"], 0),
    (["examples", "--json"], 0),
    (["verify", "T4", "--field", "Q(sqrt 2)", "--trials", "60", "--seed", "0"], 1),
    (["frobnicate"], 2),
    (["compose", "--field", "Q", "x"], 2),
]


def test_criterion_7_parser_and_cli(criterion):
    problems = []
    total = 0
    for spec in ROUND_TRIP_CONTEXTS:
        ctx = parse_field(spec)
        for p in _round_trip_polys(ctx, 7, 500):
            total += 1
            if parse_poly(format_poly(p), ctx) != p:
                problems.append(f"round trip {spec}: {p}")
                break
    for text, offset in (("x^2 +* 1", 5), ("x^", 2), ("(x + 1", 6), ("3 $ x", 2)):
        try:
            parse_poly(text, parse_field("Q"))
            problems.append(f"{text!r} parsed")
        except ParseError as exc:
            if exc.position != offset:
                problems.append(f"{text!r}: offset {exc.position}, expected {offset}")
    for argv, code in CLI_MATRIX:
        got = subprocess.run([sys.executable, "-m", "deficitlab", *argv], capture_output=True, text=True).returncode
        if got != code:
            problems.append(f"{' '.join(argv)} exited {got}, expected {code}")
    ok = not problems
    criterion(7, ok, f"{total} round trips over {len(ROUND_TRIP_CONTEXTS)} contexts, error offsets, "
                     f"{len(CLI_MATRIX)} CLI exit codes" + (f"; problems: {problems}" if problems else ""))
    assert ok


def test_criterion_8_deficit_set_suite(criterion):
    report = run_suite(TheoremId.DEFICIT_SET_T1, 500, seed=0, ctx="set:realsUnionImag")
    payload = report.to_dict()
    emitted = payload["trials"] == 500 and payload["confirms"] + payload["vacuous"] + len(
        payload["counterexamples"]) == 500
    criterion(8, emitted, f"empirical report emitted: {report.confirms} confirm, {report.vacuous} vacuous, "
                          f"{len(report.counterexamples)} conclusion failures (non-blocking)")
    assert emitted


@pytest.mark.parametrize("spec", ["Q(sqrt 2)"])
def test_square_plus_c_deficit_constant(spec):
    # companion check for criterion 5: D stays 2 along the iterates
    K = parse_field(spec)
    p = parse_poly("x^2 + sqrt(2)", K)
    assert [deficit1(iterate(p, r)).deficit for r in range(1, 5)] == [2, 2, 2, 2]
