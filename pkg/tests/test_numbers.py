import itertools
import random
from fractions import Fraction

import pytest

from deficitlab import ContextSpec, Kind, SetId, make_context, parse_element, parse_field
from deficitlab.errors import ContextMismatchError, DivisionByZeroError, SpecError, UnknownSymbolError
from deficitlab.numbers import (
    arithmetic,
    characteristic,
    is_in_subfield,
    is_irreducible_mod_p,
    smallest_irreducible,
)

FIELD_SPECS = ["Q", "Q(sqrt 2)", "Q(sqrt 2, sqrt 3)", "Q(sqrt -1)", "Q(sqrt 2, sqrt 3, sqrt 5)", "Q[t]",
               "GF(2^2)", "GF(3^2)", "GF(2^4; sub 2)", "GF(5^2)"]


def sample(ctx, rng, allow_zero=True):
    f_pool, non_f = ctx.pools()
    pool = f_pool + non_f
    x = ctx.add(ctx.mul(rng.choice(pool), rng.choice(pool)), rng.choice(pool))
    while not allow_zero and ctx.is_zero(x):
        x = ctx.add(x, rng.choice(pool))
    return ctx.element(x)


def test_make_context_basics():
    ctx = make_context(ContextSpec.quadratic(2, 3))
    assert (ctx.basis_size, ctx.characteristic, ctx.f_is_field) == (4, 0, True)
    assert make_context(ContextSpec.finite(2, 2)).modulus == (1, 1, 1)


@pytest.mark.parametrize("text", ["Q(sqrt 2, sqrt 8)", "Q(sqrt 2, sqrt 2)", "Q(sqrt 2, sqrt 3, sqrt 6)",
                                  "Q(sqrt 4)", "Q(sqrt 1)", "Q(sqrt 0)", "GF(4^2)", "GF(2^3; sub 2)",
                                  "GF(2^2; mod 1,0,1)", "GF(2^2; mod 1,1)", "R", "set:nothing"])
def test_rejected_specs(text):
    with pytest.raises(SpecError):
        parse_field(text)


def test_kinds_and_flags():
    expect = {
        "Q": (Kind.RATIONALS, 0, True),
        "Q(sqrt 2)": (Kind.MULTI_QUADRATIC, 0, True),
        "Q[t]": (Kind.TRANSCENDENTAL, 0, True),
        "GF(3^2)": (Kind.FINITE_FIELD, 3, True),
        "Z<Q": (Kind.RING_Z_IN_Q, 0, False),
        "set:complementQ": (Kind.SET_CONTEXT, 0, False),
        "set:realsUnionImag": (Kind.SET_CONTEXT, 0, False),
    }
    for spec, (kind, char, f_field) in expect.items():
        ctx = parse_field(spec)
        assert (ctx.kind, characteristic(ctx), ctx.f_is_field) == (kind, char, f_field)
    assert parse_field("set:realsUnionImag").spec.set_id is SetId.REALS_UNION_IMAG


def test_smallest_irreducible_is_deterministic():
    # the only monic irreducible quadratic over GF(2) is x^2 + x + 1
    quadratics = [(a, b, 1) for a in range(2) for b in range(2)]
    assert [q for q in quadratics if is_irreducible_mod_p(q, 2)] == [(1, 1, 1)]
    assert smallest_irreducible(3, 2) == (1, 0, 1)
    assert parse_field("GF(3^2)").modulus == (1, 0, 1)


def test_literal_examples():
    K = parse_field("Q(sqrt 2)")
    e = parse_element("1/2 + 3*sqrt(2)", K)
    assert K.coords(e.raw) == (Fraction(1, 2), Fraction(3))
    assert parse_element("i^2", parse_field("Q(sqrt -1)")) == -1
    G = parse_field("GF(2^2)")
    assert parse_element("g^3", G) == 1
    g = G.gen("g")
    assert (g + 1) * (g + 1) == g


def test_arithmetic_examples():
    K = parse_field("Q(sqrt 2)")
    r2 = parse_element("sqrt(2)", K)
    assert arithmetic(K, "mul", r2, r2) == 2
    assert (1 + r2).inverse() == parse_element("-1 + sqrt(2)", K)
    assert arithmetic(K, "div", K(1), 1 + r2) == r2 - 1
    with pytest.raises(DivisionByZeroError):
        K(0).inverse()
    with pytest.raises(ContextMismatchError):
        r2 + parse_element("sqrt(3)", parse_field("Q(sqrt 3)"))


def test_membership_examples():
    K = parse_field("Q(sqrt 2, sqrt 3)")
    assert not is_in_subfield(K, parse_element("sqrt(3)", K))
    assert is_in_subfield(K, parse_element("sqrt(2)*sqrt(2)", K))
    R = parse_field("Z<Q")
    assert not is_in_subfield(R, R(Fraction(25, 4)))
    assert is_in_subfield(R, R(-7))
    G = parse_field("GF(2^2)")
    assert is_in_subfield(G, parse_element("g^3", G))
    assert not is_in_subfield(G, G.gen("g"))
    T = parse_field("Q[t]")
    assert not is_in_subfield(T, parse_element("t", T))
    assert is_in_subfield(T, parse_element("(t + 1)*(t + 1) - t^2 - 2*t", T))
    C = parse_field("set:complementQ")
    assert is_in_subfield(C, parse_element("t", C)) and not is_in_subfield(C, C(3))
    S = parse_field("set:realsUnionImag")
    assert is_in_subfield(S, parse_element("2*i", S)) and not is_in_subfield(S, parse_element("1 + i", S))


def test_unknown_symbols():
    with pytest.raises(UnknownSymbolError):
        parse_element("sqrt(3)", parse_field("Q(sqrt 2)"))
    with pytest.raises(UnknownSymbolError):
        parse_element("i", parse_field("Q(sqrt 2)"))
    with pytest.raises(UnknownSymbolError):
        parse_element("g", parse_field("Q"))
    # perfect squares are always available
    assert parse_element("sqrt(9)", parse_field("Q")) == 3


def test_transcendental_rational_functions():
    T = parse_field("Q[t]")
    t = T.gen("t")
    x = (t * t + 1).inverse()
    assert x * (t * t + 1) == 1
    assert str(x) == "(1)/(t^2 + 1)"
    assert ((t + 1) / (t + 1)) == 1


@pytest.mark.parametrize("spec", FIELD_SPECS)
def test_field_axioms(spec):
    ctx = parse_field(spec)
    rng = random.Random(f"axioms:{spec}")
    for _ in range(200):
        a, b, c = (sample(ctx, rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a and a * b == b * a
        assert a - a == 0
        if not a.is_zero:
            assert a * a.inverse() == 1


@pytest.mark.parametrize("spec", FIELD_SPECS)
def test_closure_fact_e0(spec):
    # u in F nonzero, v outside F  =>  uv and u + v outside F
    ctx = parse_field(spec)
    f_pool, non_f = ctx.pools()
    for u, v in itertools.product(f_pool, non_f):
        if ctx.is_zero(u):
            continue
        assert not ctx.in_f(ctx.mul(u, v))
        assert not ctx.in_f(ctx.add(u, v))


@pytest.mark.parametrize("spec", [s for s in FIELD_SPECS if not s.startswith("GF")])
def test_closure_fact_e1(spec):
    ctx = parse_field(spec)
    for v in ctx.pools()[1]:
        for n in range(1, 51):
            assert not ctx.in_f(ctx.mul(ctx.from_fraction(Fraction(n)), v))


@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (2, 4), (2, 6), (3, 2), (3, 3), (3, 4), (5, 2), (7, 2)])
def test_frobenius_agrees_with_constant_residue(p, n):
    frob = make_context(ContextSpec.finite(p, n))
    for a in frob.all_elements():
        constant = all(c == 0 for c in a[1:])
        assert (frob.frobenius(a, 1) == a) == constant
        assert frob.in_f(a) == constant


def test_frobenius_subfield_counts():
    # GF(16) over GF(4): exactly 4 fixed points of x -> x^4
    G = parse_field("GF(2^4; sub 2)")
    assert sum(G.in_f(a) for a in G.all_elements()) == 4
    G = parse_field("GF(3^4; sub 2)")
    assert sum(G.in_f(a) for a in G.all_elements()) == 9


def test_elements_hash_structurally():
    K = parse_field("Q(sqrt 2)")
    assert len({parse_element("2/4 + sqrt(2)", K), parse_element("1/2 + sqrt(2)", K)}) == 1
