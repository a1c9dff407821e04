import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deficitlab import Poly1, Poly2, parse_field, parse_poly
from deficitlab.errors import (
    ArityViolationError,
    DegreeOverflowError,
    DivisionByZeroError,
    ParseError,
    UnknownSymbolError,
)
from deficitlab.parser import Neg, Power, Sum, Sym, format_field, format_poly, parse_expr, parse_field_spec


def test_field_spec_round_trip():
    for text in ["Q", "Q(sqrt 2, sqrt 3)", "Q(sqrt -1)", "Q[t]", "GF(2^2)", "GF(2^4; sub 2)",
                 "GF(2^2; mod 1,1,1)", "Z<Q", "set:complementQ", "set:realsUnionImag"]:
        assert format_field(parse_field_spec(text)) == text
    assert parse_field_spec("Q( sqrt 2 ,sqrt 3 )") == parse_field_spec("Q(sqrt 2, sqrt 3)")


def test_known_polynomials_parse():
    K = parse_field("Q(sqrt 2)")
    p = parse_poly("x^3 + 2*x^2 - sqrt(2)*x + 1", K)
    assert format_poly(p) == "x^3 + 2*x^2 - sqrt(2)*x + 1"
    q = parse_poly("x^2 - y^2 + 1", parse_field("Q"), 2)
    assert format_poly(q) == "x^2 - y^2 + 1"


def test_format_examples():
    K = parse_field("Q(sqrt 2)")
    assert format_poly(Poly1(K)) == "0"
    p = parse_poly("x^4 + 2*sqrt(2)*x^2 + 2 + sqrt(2)", K)
    assert format_poly(p) == "x^4 + 2*sqrt(2)*x^2 + (2 + sqrt(2))"
    assert parse_poly(format_poly(p), K) == p


def test_leading_minus_binds_to_base():
    # '-' base: -x^2 is (-x)^2, so the formatter spells negative power terms as -1*x^k
    Q = parse_field("Q")
    assert parse_expr("-x^2") == Power(Neg(Sym("x", 1), 0), 2, 2)
    assert parse_poly("-x^2", Q) == parse_poly("x^2", Q)
    p = parse_poly("0 - x^2 + x", Q)
    assert format_poly(p) == "-1*x^2 + x"
    assert parse_poly(format_poly(p), Q) == p
    assert format_poly(parse_poly("0 - x", Q)) == "-x"


def test_arity_and_symbols():
    Q = parse_field("Q")
    with pytest.raises(ArityViolationError):
        parse_poly("x*y", Q)
    with pytest.raises(UnknownSymbolError) as err:
        parse_poly("x + z", Q)
    assert err.value.position == 4
    with pytest.raises(UnknownSymbolError):
        parse_poly("t*x", Q)
    with pytest.raises(DivisionByZeroError):
        parse_poly("1/0*x", Q)
    assert isinstance(parse_expr("x - 1"), Sum)


@pytest.mark.parametrize("text,offset", [
    ("x^2 +* 1", 5), ("x^", 2), ("(x + 1", 6), ("3 $ x", 2), ("x y", 2), ("sqrt(0)", 5),
    ("sqrt 2", 5), ("2x", 1), ("x^-1", 2), ("", 0), ("1/", 2),
])
def test_error_offsets(text, offset):
    with pytest.raises(ParseError) as err:
        parse_poly(text, parse_field("Q"))
    assert err.value.position == offset


def test_nesting_and_size_limits():
    Q = parse_field("Q")
    with pytest.raises(ParseError):
        parse_poly("(" * 500 + "x" + ")" * 500, Q)
    with pytest.raises(ParseError):
        parse_poly("-" * 500 + "x", Q)
    assert parse_poly("(" * 50 + "x" + ")" * 50, Q) == Poly1.x(Q)
    with pytest.raises(DegreeOverflowError):
        parse_poly("x^5000", Q)
    with pytest.raises(DegreeOverflowError):
        parse_poly("(x^60 + 1)^70", Q)


@settings(max_examples=300, deadline=None)
@given(st.text(alphabet="x y t i g sqrt()0123456789+-*/^ ", max_size=40))
def test_arbitrary_text_never_crashes(text):
    ctx = parse_field("Q(sqrt -1)")
    try:
        p = parse_poly(text, ctx, 2, max_coeffs=64)
    except (ParseError, DivisionByZeroError, DegreeOverflowError):
        return
    assert parse_poly(format_poly(p), ctx, 2) == p


@pytest.mark.parametrize("spec", ["Q(sqrt 2, sqrt 3)", "Q[t]", "GF(3^2)", "set:realsUnionImag"])
def test_bivariate_round_trip(spec):
    ctx = parse_field(spec)
    f_pool, non_f = ctx.pools()
    pool = f_pool + non_f
    rng = random.Random(spec)
    for _ in range(100):
        terms = {}
        for _ in range(rng.randint(0, 6)):
            key = (rng.randint(0, 3), rng.randint(0, 3))
            terms[key] = ctx.add(ctx.mul(rng.choice(pool), rng.choice(pool)), rng.choice(pool))
        p = Poly2.from_dict(ctx, terms)
        assert parse_poly(format_poly(p), ctx, 2) == p
