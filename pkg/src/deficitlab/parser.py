"""Text syntax for field specs, coefficients and polynomials.

Polynomial grammar (explicit ``*`` only, no juxtaposition)::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' uint)?
    base   := uint | uint '/' uint | 'sqrt' '(' int ')'
            | 'i' | 't' | 'g' | 'x' | 'y' | '(' expr ')' | '-' base

Note that ``-x^2`` is ``(-x)^2`` under this grammar; the formatter therefore
writes a leading negative power as ``-1*x^2``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import (
    ArityViolationError,
    DegreeOverflowError,
    DivisionByZeroError,
    ParseError,
    SpecError,
    UnknownSymbolError,
)
from .numbers import ContextSpec, Element, FieldContext, Kind, SetId, make_context
from .poly import MAX_COEFFS, Poly1
from .poly2 import Poly2

MAX_NESTING = 150

# ---------------------------------------------------------------------------
# field specs

_SET_NAMES = {"complementQ": SetId.COMPLEMENT_Q, "realsUnionImag": SetId.REALS_UNION_IMAG}
_GF_RE = re.compile(r"GF\((\d+)\^(\d+)((?:;[^;()]*)*)\)")


def parse_field_spec(text: str) -> ContextSpec:
    """Parse the field-spec mini-language; whitespace is ignored."""
    s = "".join(text.split())
    if s == "Q":
        return ContextSpec.rationals()
    if s == "Q[t]":
        return ContextSpec.transcendental()
    if s == "Z<Q":
        return ContextSpec.integers_in_rationals()
    if s.startswith("set:"):
        try:
            return ContextSpec.set_context(_SET_NAMES[s[4:]])
        except KeyError:
            raise SpecError(f"unknown set context {s[4:]!r}") from None
    if s.startswith("Q(") and s.endswith(")"):
        radicals = []
        for item in s[2:-1].split(","):
            m = re.fullmatch(r"sqrt\(?(-?\d+)\)?", item)
            if not m:
                raise SpecError(f"expected 'sqrt D', got {item!r}")
            radicals.append(int(m.group(1)))
        return ContextSpec.quadratic(*radicals)
    m = _GF_RE.fullmatch(s)
    if m:
        p, n = int(m.group(1)), int(m.group(2))
        sub, modulus = 1, None
        for clause in filter(None, m.group(3).split(";")):
            if re.fullmatch(r"sub\d+", clause):
                sub = int(clause[3:])
            elif re.fullmatch(r"mod-?\d+(,-?\d+)*", clause):
                modulus = tuple(int(c) for c in clause[3:].split(","))
            else:
                raise SpecError(f"unknown finite-field clause {clause!r}")
        return ContextSpec.finite(p, n, sub, modulus)
    raise SpecError(f"unrecognized field spec {text!r}")


def parse_field(text: str) -> FieldContext:
    return make_context(parse_field_spec(text))


def format_field(spec: ContextSpec) -> str:
    kind = spec.kind
    if kind is Kind.RATIONALS:
        return "Q"
    if kind is Kind.TRANSCENDENTAL:
        return "Q[t]"
    if kind is Kind.RING_Z_IN_Q:
        return "Z<Q"
    if kind is Kind.MULTI_QUADRATIC:
        return "Q(" + ", ".join(f"sqrt {d}" for d in spec.radicals) + ")"
    if kind is Kind.FINITE_FIELD:
        clauses = ""
        if spec.m != 1:
            clauses += f"; sub {spec.m}"
        if spec.modulus is not None:
            clauses += "; mod " + ",".join(map(str, spec.modulus))
        return f"GF({spec.p}^{spec.n}{clauses})"
    return "set:" + {v: k for k, v in _SET_NAMES.items()}[spec.set_id]


# ---------------------------------------------------------------------------
# expression trees


@dataclass(frozen=True)
class Int:
    value: int
    pos: int


@dataclass(frozen=True)
class Frac:
    num: int
    den: int
    pos: int


@dataclass(frozen=True)
class Sqrt:
    arg: int
    pos: int


@dataclass(frozen=True)
class Sym:
    name: str
    pos: int


@dataclass(frozen=True)
class Neg:
    operand: Node
    pos: int


@dataclass(frozen=True)
class Sum:
    items: tuple[tuple[int, Node], ...]  # (sign, term)
    pos: int


@dataclass(frozen=True)
class Product:
    factors: tuple[Node, ...]
    pos: int


@dataclass(frozen=True)
class Power:
    base: Node
    exp: int
    pos: int


Node = Union[Int, Frac, Sqrt, Sym, Neg, Sum, Product, Power]

SYMBOLS = frozenset("itgxy")
_TOKEN_RE = re.compile(r"(\d+)|([A-Za-z_]\w*)")


def _tokenize(text: str) -> list[tuple[str, object, int]]:
    tokens = []
    pos, size = 0, len(text)
    while True:
        while pos < size and text[pos].isspace():
            pos += 1
        if pos >= size:
            break
        m = _TOKEN_RE.match(text, pos)
        if m and m.group(1):
            tokens.append(("num", int(m.group(1)), pos))
        elif m:
            word = m.group(2)
            if word != "sqrt" and word not in SYMBOLS:
                raise UnknownSymbolError(f"unknown symbol {word!r}", pos)
            tokens.append(("id", word, pos))
        elif text[pos] in "+-*/^()":
            tokens.append(("op", text[pos], pos))
        else:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        pos = m.end() if m else pos + 1
    tokens.append(("eof", None, size))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.k = 0
        self.depth = 0

    @property
    def tok(self):
        return self.tokens[self.k]

    def accept(self, kind: str, value=None) -> bool:
        t = self.tok
        if t[0] == kind and (value is None or t[1] == value):
            self.k += 1
            return True
        return False

    def expect(self, kind: str, value=None, what: str = ""):
        t = self.tok
        if t[0] != kind or (value is not None and t[1] != value):
            found = "end of input" if t[0] == "eof" else repr(t[1])
            raise ParseError(f"expected {what or value or kind}, found {found}", t[2])
        self.k += 1
        return t

    def parse(self) -> Node:
        node = self.expr()
        if self.tok[0] != "eof":
            raise ParseError(f"unexpected {self.tok[1]!r}", self.tok[2])
        return node

    def expr(self) -> Node:
        pos = self.tok[2]
        items = [(1, self.term())]
        while self.tok[0] == "op" and self.tok[1] in "+-":
            sign = 1 if self.tok[1] == "+" else -1
            self.k += 1
            items.append((sign, self.term()))
        return items[0][1] if len(items) == 1 else Sum(tuple(items), pos)

    def term(self) -> Node:
        pos = self.tok[2]
        factors = [self.factor()]
        while self.accept("op", "*"):
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Product(tuple(factors), pos)

    def factor(self) -> Node:
        base = self.base()
        if self.tok[0] == "op" and self.tok[1] == "^":
            pos = self.tok[2]
            self.k += 1
            exp = self.expect("num", what="nonnegative integer exponent")[1]
            return Power(base, exp, pos)
        return base

    def base(self) -> Node:
        t = self.tok
        self.depth += 1
        if self.depth > MAX_NESTING:
            raise ParseError("expression nested too deeply", t[2])
        try:
            if t[0] == "num":
                self.k += 1
                if self.accept("op", "/"):
                    den = self.expect("num", what="denominator")[1]
                    return Frac(t[1], den, t[2])
                return Int(t[1], t[2])
            if t[0] == "id":
                self.k += 1
                if t[1] == "sqrt":
                    self.expect("op", "(")
                    neg = self.accept("op", "-")
                    arg_tok = self.expect("num", what="integer")
                    arg = -arg_tok[1] if neg else arg_tok[1]
                    if arg == 0:
                        raise ParseError("sqrt argument must be nonzero", arg_tok[2])
                    self.expect("op", ")")
                    return Sqrt(arg, t[2])
                return Sym(t[1], t[2])
            if self.accept("op", "("):
                node = self.expr()
                self.expect("op", ")")
                return node
            if self.accept("op", "-"):
                return Neg(self.base(), t[2])
            found = "end of input" if t[0] == "eof" else repr(t[1])
            raise ParseError(f"expected a number, symbol or '(', found {found}", t[2])
        finally:
            self.depth -= 1


def parse_expr(text: str) -> Node:
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# evaluation to sparse polynomials {(deg_x, deg_y): raw}


class _Evaluator:
    def __init__(self, ctx: FieldContext, arity: int, max_coeffs: int):
        self.ctx = ctx
        self.arity = arity
        self.max_degree = max_coeffs - 1

    def const(self, raw) -> dict:
        return {} if self.ctx.is_zero(raw) else {(0, 0): raw}

    def add(self, a: dict, b: dict, sign: int = 1) -> dict:
        ctx = self.ctx
        out = dict(a)
        for k, v in b.items():
            if k in out:
                s = ctx.add(out[k], v) if sign > 0 else ctx.sub(out[k], v)
                if ctx.is_zero(s):
                    del out[k]
                else:
                    out[k] = s
            else:
                out[k] = v if sign > 0 else ctx.neg(v)
        return out

    def mul(self, a: dict, b: dict) -> dict:
        ctx = self.ctx
        out: dict = {}
        for (i, j), u in a.items():
            for (k, l), v in b.items():
                key = (i + k, j + l)
                prod = ctx.mul(u, v)
                out[key] = ctx.add(out[key], prod) if key in out else prod
        return {k: v for k, v in out.items() if not ctx.is_zero(v)}

    @staticmethod
    def degree(a: dict) -> int:
        return max((i + j for i, j in a), default=0)

    def eval(self, node: Node) -> dict:
        ctx = self.ctx
        try:
            if isinstance(node, Int):
                return self.const(ctx.from_fraction(Fraction(node.value)))
            if isinstance(node, Frac):
                if node.den == 0:
                    raise DivisionByZeroError(f"zero denominator (at offset {node.pos})")
                return self.const(ctx.from_fraction(Fraction(node.num, node.den)))
            if isinstance(node, Sqrt):
                return self.const(ctx.sqrt(node.arg))
            if isinstance(node, Sym):
                return self.symbol(node)
            if isinstance(node, Neg):
                return {k: ctx.neg(v) for k, v in self.eval(node.operand).items()}
            if isinstance(node, Sum):
                acc: dict = {}
                for sign, item in node.items:
                    acc = self.add(acc, self.eval(item), sign)
                return acc
            if isinstance(node, Product):
                acc = self.const(ctx.one)
                for f in node.factors:
                    acc = self.mul(acc, self.eval(f))
                return acc
            if isinstance(node, Power):
                base = self.eval(node.base)
                if self.degree(base) * node.exp > self.max_degree:
                    raise DegreeOverflowError(
                        f"power at offset {node.pos} exceeds {self.max_degree + 1} coefficients")
                result, k = self.const(ctx.one), node.exp
                while k:
                    if k & 1:
                        result = self.mul(result, base)
                    k >>= 1
                    if k:
                        base = self.mul(base, base)
                return result
        except UnknownSymbolError as exc:
            if exc.position is None:
                raise UnknownSymbolError(str(exc), node.pos) from None
            raise
        raise TypeError(f"unknown node {node!r}")

    def symbol(self, node: Sym) -> dict:
        name = node.name
        if name in "xy":
            index = "xy".index(name)
            if self.arity == 0:
                raise UnknownSymbolError(f"variable {name!r} not allowed in a coefficient", node.pos)
            if index >= self.arity:
                raise ArityViolationError(
                    f"variable {name!r} not allowed in a polynomial of arity {self.arity}", node.pos)
            return {(1, 0) if index == 0 else (0, 1): self.ctx.one}
        return self.const(self.ctx.symbol(name))


def element_from_literal(ctx: FieldContext, literal: Node | str) -> Element:
    """Evaluate a variable-free expression to an exact element of ``ctx``."""
    tree = parse_expr(literal) if isinstance(literal, str) else literal
    value = _Evaluator(ctx, 0, MAX_COEFFS).eval(tree)
    return Element(ctx, value.get((0, 0), ctx.zero))


def parse_element(text: str, ctx: FieldContext) -> Element:
    return element_from_literal(ctx, text)


def parse_poly(text: str, ctx: FieldContext, arity: int = 1, max_coeffs: int = MAX_COEFFS) -> Poly1 | Poly2:
    if arity not in (1, 2):
        raise ValueError("arity must be 1 or 2")
    terms = _Evaluator(ctx, arity, max_coeffs).eval(parse_expr(text))
    if arity == 2:
        return Poly2.from_dict(ctx, terms)
    raw = [ctx.zero] * (max((i for i, _ in terms), default=-1) + 1)
    for (i, _), v in terms.items():
        raw[i] = v
    return Poly1.from_raw(ctx, raw)


# ---------------------------------------------------------------------------
# formatting


def _product(magnitude: Fraction, factors: list[str]) -> str:
    parts = [f for f in factors if f]
    if magnitude != 1 or not parts:
        parts.insert(0, str(magnitude))
    return "*".join(parts)


def _join_signed(items: list[tuple[bool, str]]) -> str:
    if not items:
        return "0"
    out = []
    for k, (negative, text) in enumerate(items):
        if k == 0:
            if negative:
                # '-' binds to the base, so a leading power needs an explicit -1 factor
                first = text.split("*", 1)[0]
                out.append(("-" if "^" not in first else "-1*") + text)
            else:
                out.append(text)
        else:
            out.append((" - " if negative else " + ") + text)
    return "".join(out)


def _format_raw(ctx: FieldContext, raw) -> str:
    terms = ctx.terms(raw)
    if terms is None:
        num, den = ctx.fraction_parts(raw)
        return f"({_format_raw(ctx, num)})/({_format_raw(ctx, den)})"
    return _join_signed([(c < 0, _product(abs(c), [basis])) for c, basis in terms])


def format_element(e: Element) -> str:
    return _format_raw(e.ctx, e.raw)


def _monomial(i: int, j: int = 0) -> str:
    parts = []
    for name, e in (("x", i), ("y", j)):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _format_terms(ctx: FieldContext, monomials: list[tuple[str, object]]) -> str:
    items = []
    for mono, raw in monomials:
        terms = ctx.terms(raw)
        if terms is not None and len(terms) == 1:
            c, basis = terms[0]
            items.append((c < 0, _product(abs(c), [basis, mono])))
        else:
            group = f"({_format_raw(ctx, raw)})"
            items.append((False, f"{group}*{mono}" if mono else group))
    return _join_signed(items)


def format_poly(p: Poly1 | Poly2) -> str:
    """Canonical descending-degree text; ``parse_poly(format_poly(p))`` gives back ``p``."""
    ctx = p.ctx
    if isinstance(p, Poly2):
        monos = [(_monomial(i, k - i), raw)
                 for k in range(len(p.parts) - 1, -1, -1)
                 for i, raw in reversed(p.parts[k])]
    else:
        monos = [(_monomial(k), raw) for k, raw in reversed(list(enumerate(p.raw)))
                 if not ctx.is_zero(raw)]
    return _format_terms(ctx, monos)
