"""Dense univariate polynomials over a :class:`~deficitlab.numbers.FieldContext`.

Coefficients are stored low-to-high as raw context values with trailing zeros
trimmed; ``Poly1.coeffs`` gives them back as :class:`Element` objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ContextMismatchError, DegreeOverflowError, ZeroPolynomialError
from .numbers import Element, FieldContext

MAX_COEFFS = 4096


def _trim(ctx: FieldContext, raw: list) -> list:
    while raw and ctx.is_zero(raw[-1]):
        raw.pop()
    return raw


def raw_add(ctx: FieldContext, a: Sequence, b: Sequence) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for k, v in enumerate(b):
        out[k] = ctx.add(out[k], v)
    return _trim(ctx, out)


def raw_sub(ctx: FieldContext, a: Sequence, b: Sequence) -> list:
    out = list(a) + [ctx.zero] * (len(b) - len(a))
    for k, v in enumerate(b):
        out[k] = ctx.sub(out[k], v)
    return _trim(ctx, out)


def raw_mul(ctx: FieldContext, a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [ctx.zero] * (len(a) + len(b) - 1)
    add, mul, is_zero = ctx.add, ctx.mul, ctx.is_zero
    for i, u in enumerate(a):
        if is_zero(u):
            continue
        for j, v in enumerate(b):
            if not is_zero(v):
                out[i + j] = add(out[i + j], mul(u, v))
    return _trim(ctx, out)


def raw_scale(ctx: FieldContext, a: Sequence, c) -> list:
    return _trim(ctx, [ctx.mul(v, c) for v in a])


class Poly1:
    """p(x) = sum coeffs[k] x^k."""

    __slots__ = ("ctx", "raw")

    def __init__(self, ctx: FieldContext, raw: Sequence = ()):
        self.ctx = ctx
        self.raw = tuple(_trim(ctx, list(raw)))

    @classmethod
    def from_raw(cls, ctx: FieldContext, raw: Iterable) -> Poly1:
        return cls(ctx, list(raw))

    @classmethod
    def of(cls, ctx: FieldContext, values: Iterable) -> Poly1:
        """Build from Elements, ints or Fractions, low to high."""
        return cls(ctx, [ctx(v).raw for v in values])

    @classmethod
    def x(cls, ctx: FieldContext) -> Poly1:
        return cls(ctx, [ctx.zero, ctx.one])

    @classmethod
    def constant(cls, ctx: FieldContext, value) -> Poly1:
        return cls(ctx, [ctx(value).raw])

    # basic queries --------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Element, ...]:
        return tuple(Element(self.ctx, r) for r in self.raw)

    def coeff(self, k: int) -> Element:
        return Element(self.ctx, self.raw[k] if 0 <= k < len(self.raw) else self.ctx.zero)

    @property
    def is_zero(self) -> bool:
        return not self.raw

    @property
    def degree(self) -> int:
        if not self.raw:
            raise ZeroPolynomialError("the zero polynomial has no degree")
        return len(self.raw) - 1

    @property
    def leading(self) -> Element:
        if not self.raw:
            raise ZeroPolynomialError("the zero polynomial has no leading coefficient")
        return Element(self.ctx, self.raw[-1])

    @property
    def constant_term(self) -> Element:
        return self.coeff(0)

    @property
    def is_constant(self) -> bool:
        return len(self.raw) <= 1

    @property
    def in_f(self) -> bool:
        """True when every coefficient lies in F (the zero polynomial included)."""
        return all(self.ctx.in_f(c) for c in self.raw)

    def non_f_indices(self) -> list[int]:
        return [k for k, c in enumerate(self.raw) if not self.ctx.in_f(c)]

    def __call__(self, value) -> Element:
        ctx = self.ctx
        v = ctx(value).raw
        acc = ctx.zero
        for c in reversed(self.raw):
            acc = ctx.add(ctx.mul(acc, v), c)
        return Element(ctx, acc)

    # arithmetic ---------------------------------------------------------

    def _check(self, other: Poly1) -> None:
        if other.ctx != self.ctx:
            raise ContextMismatchError(f"{other.ctx.name} vs {self.ctx.name}")

    def _lift(self, other) -> Poly1:
        if isinstance(other, Poly1):
            self._check(other)
            return other
        if isinstance(other, (Element, int, Fraction)):
            return Poly1(self.ctx, [self.ctx(other).raw])
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else Poly1(self.ctx, raw_add(self.ctx, self.raw, o.raw))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else Poly1(self.ctx, raw_sub(self.ctx, self.raw, o.raw))

    def __rsub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else Poly1(self.ctx, raw_sub(self.ctx, o.raw, self.raw))

    def __neg__(self):
        return Poly1(self.ctx, [self.ctx.neg(c) for c in self.raw])

    def __mul__(self, other):
        if isinstance(other, (Element, int, Fraction)):
            return self.scale(other)
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else Poly1(self.ctx, raw_mul(self.ctx, self.raw, o.raw))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly1:
        result, base = Poly1(self.ctx, [self.ctx.one]), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> Poly1:
        return Poly1(self.ctx, raw_scale(self.ctx, self.raw, self.ctx(c).raw))

    def __eq__(self, other):
        if not isinstance(other, Poly1):
            return NotImplemented
        return self.ctx == other.ctx and self.raw == other.raw

    def __hash__(self):
        return hash((self.ctx.spec, self.raw))

    def __str__(self):
        from .parser import format_poly

        return format_poly(self)

    def __repr__(self):
        return f"Poly1({self.ctx.name!r}, {str(self)!r})"

    def compose(self, q: Poly1, max_coeffs: int = MAX_COEFFS) -> Poly1:
        return compose(self, q, max_coeffs)


@dataclass(frozen=True)
class DeficitReport:
    degree: int
    in_F: bool
    top_non_F_index: int | None
    deficit: int

    def to_dict(self) -> dict:
        return {"degree": self.degree, "in_F": self.in_F,
                "top_non_F_index": self.top_non_F_index, "deficit": self.deficit}


def poly_basics(p: Poly1) -> tuple[int, Element, Element]:
    """(degree, leading coefficient, constant term)."""
    return p.degree, p.leading, p.constant_term


def poly_arith(op: str, a: Poly1, b) -> Poly1:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"unknown op {op!r}")


def _check_size(n_coeffs: int, max_coeffs: int) -> None:
    if n_coeffs > max_coeffs:
        raise DegreeOverflowError(f"result would need {n_coeffs} coefficients (cap {max_coeffs})")


def compose(p: Poly1, q: Poly1, max_coeffs: int = MAX_COEFFS) -> Poly1:
    """p(q(x)) by Horner: acc <- acc*q + a_k from the top coefficient down."""
    p._check(q)
    ctx = p.ctx
    if not p.raw:
        return p
    if len(q.raw) > 1:
        _check_size((len(p.raw) - 1) * (len(q.raw) - 1) + 1, max_coeffs)
    acc: list = [p.raw[-1]]
    for a in reversed(p.raw[:-1]):
        acc = raw_mul(ctx, acc, q.raw)
        acc = raw_add(ctx, acc, [a]) if acc else _trim(ctx, [a])
    return Poly1(ctx, acc)


def iterate(p: Poly1, r: int, max_coeffs: int = MAX_COEFFS) -> Poly1:
    """The r-th iterate p^[r] = p o p^[r-1], with p^[1] = p."""
    if r < 1:
        raise ValueError("iterate needs r >= 1")
    n = len(p.raw) - 1
    if n >= 2:
        size = 1
        for _ in range(r):
            size *= n
            _check_size(size + 1, max_coeffs)
    result = p
    for _ in range(r - 1):
        result = compose(p, result, max_coeffs)
    return result


def deficit1(p: Poly1) -> DeficitReport:
    """F-deficit: degree minus the largest index whose coefficient is outside F."""
    n = p.degree
    ctx = p.ctx
    for k in range(n, -1, -1):
        if not ctx.in_f(p.raw[k]):
            return DeficitReport(n, False, k, n - k)
    return DeficitReport(n, True, None, n)
