"""Bivariate polynomials stored by homogeneous components.

``parts[k]`` is the degree-k component as a tuple of ``(exp_x, raw)`` pairs with
strictly increasing ``exp_x`` (the y exponent is ``k - exp_x``) and nonzero
coefficients. The layout extends to r variables by keying each part on
multi-exponents; only two variables are implemented.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .errors import ContextMismatchError, ZeroPolynomialError
from .numbers import Element, FieldContext
from .poly import DeficitReport, Poly1, raw_add, raw_mul

Terms = dict  # {(exp_x, exp_y): raw}


def _terms_add(ctx: FieldContext, a: Terms, b: Terms) -> Terms:
    out = dict(a)
    for key, v in b.items():
        if key in out:
            s = ctx.add(out[key], v)
            if ctx.is_zero(s):
                del out[key]
            else:
                out[key] = s
        elif not ctx.is_zero(v):
            out[key] = v
    return out


def _terms_mul(ctx: FieldContext, a: Terms, b: Terms) -> Terms:
    out: Terms = {}
    for (i, j), u in a.items():
        for (k, l), v in b.items():
            key = (i + k, j + l)
            prod = ctx.mul(u, v)
            out[key] = ctx.add(out[key], prod) if key in out else prod
    return {k: v for k, v in out.items() if not ctx.is_zero(v)}


class Poly2:
    __slots__ = ("ctx", "parts")

    def __init__(self, ctx: FieldContext, parts: tuple = ()):
        self.ctx = ctx
        parts = list(parts)
        while parts and not parts[-1]:
            parts.pop()
        self.parts = tuple(tuple(part) for part in parts)

    @classmethod
    def from_dict(cls, ctx: FieldContext, terms: Mapping) -> Poly2:
        """Build from ``{(exp_x, exp_y): raw}``; zero coefficients are dropped."""
        top = max((i + j for (i, j), v in terms.items() if not ctx.is_zero(v)), default=-1)
        parts: list[list] = [[] for _ in range(top + 1)]
        for (i, j), v in sorted(terms.items()):
            if not ctx.is_zero(v):
                parts[i + j].append((i, v))
        return cls(ctx, [sorted(part) for part in parts])

    @classmethod
    def of(cls, ctx: FieldContext, terms: Mapping) -> Poly2:
        """Build from ``{(exp_x, exp_y): Element | int | Fraction}``."""
        return cls.from_dict(ctx, {k: ctx(v).raw for k, v in terms.items()})

    @classmethod
    def from_poly1(cls, p: Poly1, var: str = "x") -> Poly2:
        key = (lambda k: (k, 0)) if var == "x" else (lambda k: (0, k))
        return cls.from_dict(p.ctx, {key(k): c for k, c in enumerate(p.raw)})

    def to_dict(self) -> Terms:
        return {(i, k - i): v for k, part in enumerate(self.parts) for i, v in part}

    @property
    def is_zero(self) -> bool:
        return not self.parts

    @property
    def degree(self) -> int:
        if not self.parts:
            raise ZeroPolynomialError("the zero polynomial has no degree")
        return len(self.parts) - 1

    @property
    def in_f(self) -> bool:
        return all(self.ctx.in_f(v) for part in self.parts for _, v in part)

    def coeff(self, i: int, j: int) -> Element:
        return Element(self.ctx, self.to_dict().get((i, j), self.ctx.zero))

    def component(self, k: int) -> Poly2:
        parts = [()] * k + [self.parts[k]] if k < len(self.parts) else []
        return Poly2(self.ctx, parts)

    def _check(self, other) -> None:
        if other.ctx != self.ctx:
            raise ContextMismatchError(f"{other.ctx.name} vs {self.ctx.name}")

    def _lift(self, other) -> Poly2:
        if isinstance(other, Poly2):
            self._check(other)
            return other
        if isinstance(other, Poly1):
            self._check(other)
            return Poly2.from_poly1(other)
        if isinstance(other, (Element, int, Fraction)):
            return Poly2.from_dict(self.ctx, {(0, 0): self.ctx(other).raw})
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Poly2.from_dict(self.ctx, _terms_add(self.ctx, self.to_dict(), o.to_dict()))

    __radd__ = __add__

    def __neg__(self):
        neg = self.ctx.neg
        return Poly2(self.ctx, [[(i, neg(v)) for i, v in part] for part in self.parts])

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else self + (-o)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Poly2.from_dict(self.ctx, _terms_mul(self.ctx, self.to_dict(), o.to_dict()))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Poly2):
            return NotImplemented
        return self.ctx == other.ctx and self.parts == other.parts

    def __hash__(self):
        return hash((self.ctx.spec, self.parts))

    def __str__(self):
        from .parser import format_poly

        return format_poly(self)

    def __repr__(self):
        return f"Poly2({self.ctx.name!r}, {str(self)!r})"


def homogeneous_parts(p: Poly2) -> list[tuple[int, Poly2, bool]]:
    """Nonzero components as (degree, component, component-has-all-coefficients-in-F)."""
    if p.is_zero:
        raise ZeroPolynomialError("the zero polynomial has no homogeneous parts")
    in_f = p.ctx.in_f
    return [(k, p.component(k), all(in_f(v) for _, v in part))
            for k, part in enumerate(p.parts) if part]


def deficit2(p: Poly2) -> DeficitReport:
    n = p.degree
    in_f = p.ctx.in_f
    for k in range(n, -1, -1):
        if not all(in_f(v) for _, v in p.parts[k]):
            return DeficitReport(n, False, k, n - k)
    return DeficitReport(n, True, None, n)


def compose_uni_bi(p: Poly1, q: Poly2) -> Poly2:
    """p(q(x, y)) by Horner in the bivariate ring."""
    if p.ctx != q.ctx:
        raise ContextMismatchError(f"{p.ctx.name} vs {q.ctx.name}")
    ctx = p.ctx
    if p.is_zero:
        return Poly2(ctx)
    qt = q.to_dict()
    acc: Terms = {(0, 0): p.raw[-1]}
    for a in reversed(p.raw[:-1]):
        acc = _terms_add(ctx, _terms_mul(ctx, acc, qt), {(0, 0): a})
    return Poly2.from_dict(ctx, acc)


def diag_subst_uni(p: Poly2, q: Poly1) -> Poly1:
    """p(q(x), q(x)) as a univariate polynomial."""
    if p.ctx != q.ctx:
        raise ContextMismatchError(f"{p.ctx.name} vs {q.ctx.name}")
    ctx = p.ctx
    powers = [[ctx.one]]
    for _ in range(len(p.parts) - 1):
        powers.append(raw_mul(ctx, powers[-1], q.raw))
    acc: list = []
    for k, part in enumerate(p.parts):
        for _, c in part:
            acc = raw_add(ctx, acc, [ctx.mul(c, v) for v in powers[k]])
    return Poly1(ctx, acc)


def diag_subst_bi(p: Poly2, q: Poly2) -> Poly2:
    """p(q(x, y), q(x, y))."""
    if p.ctx != q.ctx:
        raise ContextMismatchError(f"{p.ctx.name} vs {q.ctx.name}")
    ctx = p.ctx
    qt = q.to_dict()
    powers: list[Terms] = [{(0, 0): ctx.one}]
    for _ in range(len(p.parts) - 1):
        powers.append(_terms_mul(ctx, powers[-1], qt))
    acc: Terms = {}
    for k, part in enumerate(p.parts):
        for _, c in part:
            acc = _terms_add(ctx, acc, {key: ctx.mul(c, v) for key, v in powers[k].items()})
    return Poly2.from_dict(ctx, acc)
