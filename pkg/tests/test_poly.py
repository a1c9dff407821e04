import random

import pytest

from deficitlab import Poly1, compose, deficit1, iterate, parse_field, parse_poly
from deficitlab.errors import ContextMismatchError, DegreeOverflowError, ZeroPolynomialError
from deficitlab.poly import poly_arith, poly_basics
from deficitlab.theorems import GenConstraints, compose_oracle, random_poly, trial_rng

CONTEXTS = ["Q", "Q(sqrt 2)", "Q(sqrt 2, sqrt 3)", "Q(sqrt -1)", "Q[t]", "GF(2^2)", "GF(3^2)", "Z<Q"]


@pytest.fixture
def K2():
    return parse_field("Q(sqrt 2)")


def test_basics():
    K = parse_field("Q(sqrt 3)")
    q = parse_poly("x^2 + sqrt(3)*x + 5", K)
    assert poly_basics(q) == (2, K(1), K(5))
    assert poly_basics(Poly1.constant(K, 7)) == (0, K(7), K(7))
    with pytest.raises(ZeroPolynomialError):
        poly_basics(Poly1(K))
    assert Poly1(K).constant_term == 0


def test_arith_examples():
    Q = parse_field("Q")
    assert poly_arith("mul", parse_poly("x + 1", Q), parse_poly("x - 1", Q)) == parse_poly("x^2 - 1", Q)
    K = parse_field("Q(sqrt 3)")
    assert poly_arith("add", parse_poly("x^2 + sqrt(3)*x", K), parse_poly("-1*sqrt(3)*x", K)) == parse_poly("x^2", K)
    K = parse_field("Q(sqrt 2)")
    r2 = parse_poly("sqrt(2)", K).leading
    assert poly_arith("scale", parse_poly("x^2 + x", K), r2) == parse_poly("sqrt(2)*x^2 + sqrt(2)*x", K)
    with pytest.raises(ContextMismatchError):
        parse_poly("x", K) + parse_poly("x", Q)


def test_compose_examples(K2):
    K = parse_field("Q(sqrt 2, sqrt 3)")
    p = parse_poly("x^3 + 2*x^2 - sqrt(2)*x + 1", K)
    q = parse_poly("x^2 + sqrt(3)*x + 5", K)
    expected = parse_poly("x^6 + 3*sqrt(3)*x^5 + 26*x^4 + 37*sqrt(3)*x^3 + (146 - sqrt(2))*x^2"
                          " + (95*sqrt(3) - sqrt(2)*sqrt(3))*x + (176 - 5*sqrt(2))", K)
    assert compose(p, q) == expected
    assert compose(p, Poly1.x(K)) == p
    p = parse_poly("x^4 - sqrt(2)*x", K2)
    q = parse_poly("x^2 + 3*x", K2)
    assert compose(p, q) == parse_poly("x^8 + 12*x^7 + 54*x^6 + 108*x^5 + 81*x^4 - sqrt(2)*x^2 - 3*sqrt(2)*x", K2)


def test_iterate_examples(K2):
    p = parse_poly("x^2 + sqrt(2)", K2)
    assert iterate(p, 1) == p
    # derived: (x^2 + sqrt2)^2 + sqrt2 expanded by hand
    assert iterate(p, 2) == parse_poly("x^4 + 2*sqrt(2)*x^2 + (2 + sqrt(2))", K2)
    assert deficit1(iterate(p, 3)).deficit == 2
    with pytest.raises(DegreeOverflowError):
        iterate(p, 12)
    with pytest.raises(ValueError):
        iterate(p, 0)


def test_linear_iterate_closed_form():
    K = parse_field("Q(sqrt 2, sqrt 3)")
    a1, a0 = parse_poly("3/2 + sqrt(3)", K).leading, parse_poly("sqrt(2) - 1", K).leading
    p = Poly1(K, [a0.raw, a1.raw])
    for r in range(1, 7):
        geometric = sum((a1 ** k for k in range(r)), K(0))
        assert iterate(p, r) == Poly1(K, [(a0 * geometric).raw, (a1 ** r).raw])


def test_deficit_examples():
    K = parse_field("Q(sqrt 3)")
    d = deficit1(parse_poly("x^5 - 5*x^3 + sqrt(3)*x^2 - x + 1", K))
    assert (d.degree, d.in_F, d.top_non_F_index, d.deficit) == (5, False, 2, 3)
    assert deficit1(parse_poly("x^2 + sqrt(3)*x + 5", K)).deficit == 1
    d = deficit1(Poly1.constant(parse_field("Q(sqrt 2)"), 7))
    assert (d.in_F, d.deficit) == (True, 0)
    with pytest.raises(ZeroPolynomialError):
        deficit1(Poly1(K))


@pytest.mark.parametrize("spec", CONTEXTS)
def test_compose_matches_both_oracles(spec):
    ctx = parse_field(spec)
    shape = GenConstraints(degrees=(0, 1, 2, 3, 4))
    for index in range(60):
        rng = trial_rng(5, index)
        p, q = random_poly(ctx, shape, rng), random_poly(ctx, shape, rng)
        fast = compose(p, q)
        assert fast == compose_oracle(p, q, method="multinomial")
        assert fast == compose_oracle(p, q, method="power")


@pytest.mark.parametrize("spec", CONTEXTS)
def test_degree_and_leading_coefficient_law(spec):
    ctx = parse_field(spec)
    for index in range(60):
        rng = trial_rng(6, index)
        p = random_poly(ctx, GenConstraints(degrees=(1, 2, 3, 4)), rng)
        q = random_poly(ctx, GenConstraints(degrees=(1, 2, 3)), rng)
        pq = compose(p, q)
        assert pq.degree == p.degree * q.degree
        assert pq.leading == p.leading * q.leading ** p.degree


@pytest.mark.parametrize("spec", ["Q(sqrt 2)", "Q(sqrt -1)", "GF(3^2)"])
def test_iterate_composition_law(spec):
    ctx = parse_field(spec)
    for index in range(20):
        p = random_poly(ctx, GenConstraints(degrees=(1, 2)), trial_rng(8, index))
        for a, b in ((1, 1), (1, 2), (2, 1), (2, 2)):
            assert iterate(p, a + b) == compose(iterate(p, a), iterate(p, b))


@pytest.mark.parametrize("spec", ["Q(sqrt 2, sqrt 3)", "Q[t]", "GF(2^4; sub 2)"])
def test_deficit_characterizations(spec):
    ctx = parse_field(spec)
    for index in range(100):
        p = random_poly(ctx, GenConstraints(degrees=(0, 1, 2, 3, 4, 5)), trial_rng(9, index))
        d = deficit1(p)
        n = p.degree
        assert (d.deficit == n) == all(ctx.in_f(c) for c in p.raw[1:])
        assert (d.deficit == 0) == (not ctx.in_f(p.raw[-1]) or n == 0)
        if d.in_F:
            assert d.top_non_F_index is None and d.deficit == n
        else:
            assert d.deficit == n - d.top_non_F_index


@pytest.mark.parametrize("spec", ["Q(sqrt 2, sqrt 3)", "Q(sqrt -1)", "GF(3^2)"])
def test_deficit_invariant_under_scaling_by_f(spec):
    ctx = parse_field(spec)
    units = [c for c in ctx.pools()[0] if not ctx.is_zero(c)]
    for index in range(100):
        rng = trial_rng(10, index)
        p = random_poly(ctx, GenConstraints(), rng)
        assert deficit1(p.scale(ctx.element(rng.choice(units)))) == deficit1(p)


def test_evaluation_and_equality(K2):
    p = parse_poly("x^2 - 2", K2)
    assert p(parse_poly("sqrt(2)", K2).leading).is_zero
    assert p == parse_poly("-2 + x^2", K2) and hash(p) == hash(parse_poly("-2 + x^2", K2))
    assert p ** 3 == p * p * p
