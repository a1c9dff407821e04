"""Exact coefficient domains.

A :class:`FieldContext` is a coefficient domain ``K`` together with a
designated sub-domain ``F`` and a decidable membership test for it. Supported
pairs:

* ``Q``                      F = K = Q
* ``Q(sqrt d1, ..., sqrt dk)`` multi-quadratic tower over F = Q
* ``Q[t]``                   rational functions Q(t) over F = Q
* ``GF(p^n; sub m)``         finite field over its subfield GF(p^m)
* ``Z<Q``                    the ring Z inside K = Q
* ``set:*``                  a host field with a membership predicate that is
                             not a subfield (complement of Q, reals union
                             imaginaries)

Contexts operate on *raw* values (ints, tuples, Fractions) so the polynomial
code can run tight loops; :class:`Element` wraps a raw value for public use.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Any, Iterable

from .errors import ContextMismatchError, DivisionByZeroError, SpecError, UnknownSymbolError

MAX_RADICALS = 6


class Kind(enum.Enum):
    RATIONALS = "RATIONALS"
    MULTI_QUADRATIC = "MULTI_QUADRATIC"
    TRANSCENDENTAL = "TRANSCENDENTAL"
    FINITE_FIELD = "FINITE_FIELD"
    RING_Z_IN_Q = "RING_Z_IN_Q"
    SET_CONTEXT = "SET_CONTEXT"


class SetId(enum.Enum):
    COMPLEMENT_Q = "COMPLEMENT_Q"
    REALS_UNION_IMAG = "REALS_UNION_IMAG"


@dataclass(frozen=True)
class ContextSpec:
    kind: Kind
    radicals: tuple[int, ...] = ()
    p: int = 0
    n: int = 0
    m: int = 1
    modulus: tuple[int, ...] | None = None
    set_id: SetId | None = None

    @classmethod
    def rationals(cls) -> ContextSpec:
        return cls(Kind.RATIONALS)

    @classmethod
    def quadratic(cls, *radicals: int) -> ContextSpec:
        return cls(Kind.MULTI_QUADRATIC, radicals=tuple(radicals))

    @classmethod
    def transcendental(cls) -> ContextSpec:
        return cls(Kind.TRANSCENDENTAL)

    @classmethod
    def finite(cls, p: int, n: int, m: int = 1, modulus: Iterable[int] | None = None) -> ContextSpec:
        return cls(Kind.FINITE_FIELD, p=p, n=n, m=m,
                   modulus=None if modulus is None else tuple(modulus))

    @classmethod
    def integers_in_rationals(cls) -> ContextSpec:
        return cls(Kind.RING_Z_IN_Q)

    @classmethod
    def set_context(cls, set_id: SetId) -> ContextSpec:
        return cls(Kind.SET_CONTEXT, set_id=set_id)


# ---------------------------------------------------------------------------
# integer helpers


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def is_square_free(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    i = 2
    while i * i <= n:
        if n % (i * i) == 0:
            return False
        i += 1
    return True


def is_perfect_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


# ---------------------------------------------------------------------------
# elements


class Element:
    """An immutable value of a context. Equality is structural."""

    __slots__ = ("ctx", "raw")

    def __init__(self, ctx: FieldContext, raw: Any):
        self.ctx = ctx
        self.raw = raw

    def _other(self, other) -> Any:
        if isinstance(other, Element):
            if other.ctx != self.ctx:
                raise ContextMismatchError(f"{other.ctx.name} vs {self.ctx.name}")
            return other.raw
        if isinstance(other, (int, Fraction)):
            return self.ctx.from_fraction(Fraction(other))
        return NotImplemented

    def _wrap(self, raw) -> Element:
        return Element(self.ctx, raw)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.ctx.add(self.raw, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.ctx.sub(self.raw, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.ctx.sub(o, self.raw))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.ctx.mul(self.raw, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.ctx.div(self.raw, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.ctx.div(o, self.raw))

    def __neg__(self):
        return self._wrap(self.ctx.neg(self.raw))

    def __pow__(self, k: int):
        return self._wrap(self.ctx.pow(self.raw, k))

    def inverse(self) -> Element:
        return self._wrap(self.ctx.inv(self.raw))

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.ctx == other.ctx and self.raw == other.raw
        if isinstance(other, (int, Fraction)):
            try:
                return self.raw == self.ctx.from_fraction(Fraction(other))
            except DivisionByZeroError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.spec, self.raw))

    def __bool__(self):
        return not self.ctx.is_zero(self.raw)

    @property
    def is_zero(self) -> bool:
        return self.ctx.is_zero(self.raw)

    @property
    def in_subfield(self) -> bool:
        return self.ctx.in_f(self.raw)

    def __str__(self):
        from .parser import format_element

        return format_element(self)

    def __repr__(self):
        return f"Element({self.ctx.name!r}, {str(self)!r})"


# ---------------------------------------------------------------------------
# contexts


class FieldContext:
    """Base class. Subclasses implement the raw-value arithmetic."""

    characteristic = 0
    f_is_field = True
    basis_size: int | None = 1
    symbols: frozenset[str] = frozenset()
    zero: Any
    one: Any

    def __init__(self, spec: ContextSpec):
        self.spec = spec

    def __eq__(self, other):
        return self is other or (isinstance(other, FieldContext) and self.spec == other.spec)

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"

    @property
    def kind(self) -> Kind:
        return self.spec.kind

    @property
    def name(self) -> str:
        from .parser import format_field

        return format_field(self.spec)

    # raw arithmetic -------------------------------------------------------

    def from_fraction(self, q: Fraction) -> Any:
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k: int):
        if k < 0:
            return self.pow(self.inv(a), -k)
        result, base = self.one, a
        while k:
            if k & 1:
                result = self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result

    def is_zero(self, a) -> bool:
        return a == self.zero

    def in_f(self, a) -> bool:
        raise NotImplementedError

    def symbol(self, name: str):
        raise UnknownSymbolError(f"symbol {name!r} is not defined in {self.name}")

    def sqrt(self, d: int):
        raise UnknownSymbolError(f"sqrt({d}) is not defined in {self.name}")

    def terms(self, a) -> list[tuple[Fraction, str]] | None:
        """Signed rational multiples of basis monomials, or None if not polynomial-shaped."""
        raise NotImplementedError

    def pools(self) -> tuple[list, list]:
        """Small default coefficient pools (in F, outside F) as raw values."""
        raise NotImplementedError

    # element level --------------------------------------------------------

    def element(self, raw) -> Element:
        return Element(self, raw)

    def __call__(self, value) -> Element:
        if isinstance(value, Element):
            if value.ctx != self:
                raise ContextMismatchError(f"{value.ctx.name} vs {self.name}")
            return value
        return Element(self, self.from_fraction(Fraction(value)))

    def gen(self, name: str) -> Element:
        return Element(self, self.symbol(name))


class RationalContext(FieldContext):
    """K = F = Q."""

    zero = Fraction(0)
    one = Fraction(1)

    def from_fraction(self, q):
        return Fraction(q)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise DivisionByZeroError("inverse of zero")
        return 1 / a

    def in_f(self, a):
        return True

    def sqrt(self, d):
        if is_perfect_square(d):
            return Fraction(math.isqrt(d))
        return super().sqrt(d)

    def terms(self, a):
        return [(a, "")] if a else []

    def pools(self):
        return [Fraction(v) for v in (0, 1, -1, 2, -2, Fraction(1, 2))], []


class IntegersInRationals(RationalContext):
    """K = Q with the ring F = Z as the designated sub-domain."""

    f_is_field = False

    def in_f(self, a):
        return a.denominator == 1

    def pools(self):
        f_pool = [Fraction(v) for v in (0, 1, -1, 2, -2, 3)]
        return f_pool, [Fraction(1, 2), Fraction(2, 3), Fraction(-3, 2), Fraction(1, 3)]


def _normalize_vec(nums: list[int], den: int) -> tuple[tuple[int, ...], int]:
    g = reduce(math.gcd, nums, den)
    if den < 0:
        g = -g
    if g != 1:
        nums = [v // g for v in nums]
        den //= g
    return tuple(nums), den


class QuadraticTowerContext(FieldContext):
    """Q(sqrt d1, ..., sqrt dk) over F = Q.

    Raw value: ``(nums, den)``; coordinate ``S`` (a bitmask over the radicals)
    is ``nums[S] / den`` and multiplies the basis element prod_{j in S} sqrt d_j.
    """

    def __init__(self, spec):
        super().__init__(spec)
        rads = spec.radicals
        self.radicals = rads
        self.size = 1 << len(rads)
        self.basis_size = self.size
        # product of d_j over a subset mask, used by sqrt(S)*sqrt(T) = prod(S&T) sqrt(S^T)
        self._subset_product = [
            math.prod(d for j, d in enumerate(rads) if mask >> j & 1) for mask in range(self.size)
        ]
        self.zero = ((0,) * self.size, 1)
        self.one = ((1,) + (0,) * (self.size - 1), 1)
        self.symbols = frozenset({"i"}) if -1 in rads else frozenset()

    def coords(self, a) -> tuple[Fraction, ...]:
        nums, den = a
        return tuple(Fraction(v, den) for v in nums)

    def from_coords(self, coords: Iterable) -> tuple:
        coords = [Fraction(c) for c in coords]
        den = reduce(lambda acc, c: acc * c.denominator // math.gcd(acc, c.denominator), coords, 1)
        return _normalize_vec([int(c * den) for c in coords], den)

    def from_fraction(self, q):
        q = Fraction(q)
        return _normalize_vec([q.numerator] + [0] * (self.size - 1), q.denominator)

    def add(self, a, b):
        (na, da), (nb, db) = a, b
        if da == db:
            return _normalize_vec([x + y for x, y in zip(na, nb)], da)
        return _normalize_vec([x * db + y * da for x, y in zip(na, nb)], da * db)

    def neg(self, a):
        return tuple(-x for x in a[0]), a[1]

    def sub(self, a, b):
        (na, da), (nb, db) = a, b
        if da == db:
            return _normalize_vec([x - y for x, y in zip(na, nb)], da)
        return _normalize_vec([x * db - y * da for x, y in zip(na, nb)], da * db)

    def mul(self, a, b):
        (na, da), (nb, db) = a, b
        out = [0] * self.size
        fac = self._subset_product
        for s, x in enumerate(na):
            if x:
                for t, y in enumerate(nb):
                    if y:
                        out[s ^ t] += x * y * fac[s & t]
        return _normalize_vec(out, da * db)

    def _mul_coords(self, u: list, v: list) -> list:
        out = [Fraction(0)] * len(u)
        fac = self._subset_product
        for s, x in enumerate(u):
            if x:
                for t, y in enumerate(v):
                    if y:
                        out[s ^ t] += x * y * fac[s & t]
        return out

    def _inv_coords(self, v: list, k: int) -> list:
        # x = a + b sqrt(d_k) with a, b in the tower on the first k-1 radicals;
        # x^-1 = (a - b sqrt(d_k)) / (a^2 - d_k b^2)
        if k == 0:
            return [1 / v[0]]
        half = 1 << (k - 1)
        a, b = v[:half], v[half:]
        if not any(b):
            return self._inv_coords(a, k - 1) + [Fraction(0)] * half
        d = self.radicals[k - 1]
        aa = self._mul_coords(a, a)
        bb = self._mul_coords(b, b)
        norm = [x - d * y for x, y in zip(aa, bb)]
        norm_inv = self._inv_coords(norm, k - 1)
        return self._mul_coords(a, norm_inv) + [-c for c in self._mul_coords(b, norm_inv)]

    def inv(self, a):
        if self.is_zero(a):
            raise DivisionByZeroError("inverse of zero")
        return self.from_coords(self._inv_coords(list(self.coords(a)), len(self.radicals)))

    def is_zero(self, a):
        return not any(a[0])

    def in_f(self, a):
        return not any(a[0][1:])

    def basis_name(self, mask: int) -> str:
        parts = []
        for j, d in enumerate(self.radicals):
            if mask >> j & 1:
                parts.append("i" if d == -1 else f"sqrt({d})")
        return "*".join(parts)

    def radical(self, j: int):
        nums = [0] * self.size
        nums[1 << j] = 1
        return tuple(nums), 1

    def symbol(self, name):
        if name == "i" and -1 in self.radicals:
            return self.radical(self.radicals.index(-1))
        return super().symbol(name)

    def sqrt(self, d):
        if d in self.radicals:
            return self.radical(self.radicals.index(d))
        if is_perfect_square(d):
            return self.from_fraction(Fraction(math.isqrt(d)))
        return super().sqrt(d)

    def terms(self, a):
        nums, den = a
        return [(Fraction(v, den), self.basis_name(s)) for s, v in enumerate(nums) if v]

    def pools(self):
        f_pool = [self.from_fraction(Fraction(v)) for v in (0, 1, -1, 2, -2, Fraction(1, 2))]
        non_f = []
        for j in range(len(self.radicals)):
            r = self.radical(j)
            non_f += [r, self.neg(r), self.add(self.one, r)]
        if len(self.radicals) > 1:
            non_f.append(self.mul(self.radical(0), self.radical(1)))
        return f_pool, non_f


class RealsUnionImaginary(QuadraticTowerContext):
    """Q(i) where the designated set is {real} union {purely imaginary}."""

    f_is_field = False

    def __init__(self, spec):
        super().__init__(ContextSpec.quadratic(-1))
        self.spec = spec

    def in_f(self, a):
        nums = a[0]
        return nums[0] == 0 or nums[1] == 0

    def pools(self):
        one, i = self.one, self.radical(0)
        half = self.from_fraction(Fraction(1, 2))
        two = self.from_fraction(Fraction(2))
        f_pool = [self.zero, one, self.neg(one), two, half, i, self.neg(i), self.mul(two, i), self.mul(half, i)]
        non_f = [self.add(one, i), self.sub(two, i), self.add(half, i), self.sub(self.neg(one), i)]
        return f_pool, non_f


# -- Q(t): rational functions with integer-polynomial numerator/denominator --


def _ztrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _zmul(a, b) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _zadd(a, b, sign: int = 1) -> list[int]:
    n = max(len(a), len(b))
    out = [(a[k] if k < len(a) else 0) + sign * (b[k] if k < len(b) else 0) for k in range(n)]
    return _ztrim(out)


def _qdivmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for k, y in enumerate(b):
            a[shift + k] -= c * y
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return q, a


def _qgcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    while b:
        _, r = _qdivmod(a, b)
        a, b = b, r
    return [c / a[-1] for c in a]


def _to_primitive(num: list[Fraction], den: list[Fraction]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    scale = 1
    for c in itertools.chain(num, den):
        scale = scale * c.denominator // math.gcd(scale, c.denominator)
    return _normalize_qt([int(c * scale) for c in num], [int(c * scale) for c in den])


def _normalize_qt(num: list[int], den: list[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    num, den = _ztrim(list(num)), _ztrim(list(den))
    if not den:
        raise DivisionByZeroError("zero denominator")
    if not num:
        return (), (1,)
    if len(den) > 1:
        g = _qgcd([Fraction(c) for c in num], [Fraction(c) for c in den])
        if len(g) > 1:
            qn, _ = _qdivmod([Fraction(c) for c in num], g)
            qd, _ = _qdivmod([Fraction(c) for c in den], g)
            return _to_primitive(qn, qd)
    g = reduce(math.gcd, num, 0)
    g = reduce(math.gcd, den, g)
    if den[-1] < 0:
        g = -g
    if g != 1:
        num = [c // g for c in num]
        den = [c // g for c in den]
    return tuple(num), tuple(den)


class FunctionFieldContext(FieldContext):
    """Q(t) over F = Q, with t a transcendental symbol.

    Raw value: ``(num, den)`` integer coefficient tuples (low to high) with
    gcd(num, den) = 1 in Q[t], integer content 1 and positive leading
    coefficient of ``den``. Polynomials in t have a constant ``den``.
    """

    basis_size = None
    zero = ((), (1,))
    one = ((1,), (1,))
    symbols = frozenset({"t"})

    def from_fraction(self, q):
        q = Fraction(q)
        return _normalize_qt([q.numerator], [q.denominator])

    @staticmethod
    def from_poly(coeffs: Iterable) -> tuple:
        """Raw value of the polynomial sum c_k t^k (rational c_k, low to high)."""
        return _to_primitive([Fraction(c) for c in coeffs], [Fraction(1)])

    def add(self, a, b):
        (na, da), (nb, db) = a, b
        if da == db:
            return _normalize_qt(_zadd(na, nb), da)
        return _normalize_qt(_zadd(_zmul(na, db), _zmul(nb, da)), _zmul(da, db))

    def sub(self, a, b):
        (na, da), (nb, db) = a, b
        if da == db:
            return _normalize_qt(_zadd(na, nb, -1), da)
        return _normalize_qt(_zadd(_zmul(na, db), _zmul(nb, da), -1), _zmul(da, db))

    def neg(self, a):
        return tuple(-c for c in a[0]), a[1]

    def mul(self, a, b):
        (na, da), (nb, db) = a, b
        if len(da) == 1 and len(db) == 1:
            return _normalize_qt(_zmul(na, nb), [da[0] * db[0]])
        return _normalize_qt(_zmul(na, nb), _zmul(da, db))

    def inv(self, a):
        num, den = a
        if not num:
            raise DivisionByZeroError("inverse of zero")
        return _normalize_qt(list(den), list(num))

    def is_zero(self, a):
        return not a[0]

    def in_f(self, a):
        return len(a[0]) <= 1 and len(a[1]) == 1

    def symbol(self, name):
        if name == "t":
            return (0, 1), (1,)
        return super().symbol(name)

    def sqrt(self, d):
        if is_perfect_square(d):
            return self.from_fraction(Fraction(math.isqrt(d)))
        return super().sqrt(d)

    def terms(self, a):
        num, den = a
        if len(den) > 1:
            return None
        out = []
        for k in range(len(num) - 1, -1, -1):
            if num[k]:
                basis = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
                out.append((Fraction(num[k], den[0]), basis))
        return out

    def fraction_parts(self, a) -> tuple[tuple, tuple]:
        """Numerator and denominator as raw polynomial values."""
        num, den = a
        return (num, (1,)), (den, (1,))

    def pools(self):
        f_pool = [self.from_fraction(Fraction(v)) for v in (0, 1, -1, 2, -2, Fraction(1, 2))]
        t = self.symbol("t")
        non_f = [t, self.neg(t), self.add(self.one, t), self.from_poly([0, Fraction(1, 2)])]
        return f_pool, non_f


class ComplementOfQ(FunctionFieldContext):
    """Q(t) where the designated set is everything outside Q."""

    f_is_field = False

    def in_f(self, a):
        return not super().in_f(a)

    def pools(self):
        f_pool, non_f = super().pools()
        return non_f, f_pool


# -- finite fields ----------------------------------------------------------


def _gfp_divides(divisor: tuple[int, ...], poly: tuple[int, ...], p: int) -> bool:
    rem = list(poly)
    lead_inv = pow(divisor[-1], -1, p)
    dd = len(divisor) - 1
    for k in range(len(rem) - 1, dd - 1, -1):
        c = rem[k] * lead_inv % p
        if c:
            for i, y in enumerate(divisor):
                rem[k - dd + i] = (rem[k - dd + i] - c * y) % p
    return not any(rem[:dd])


def is_irreducible_mod_p(poly: tuple[int, ...], p: int) -> bool:
    """Brute force: no monic factor of degree 1..deg/2 (small fields only)."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if _gfp_divides(tuple(low) + (1,), poly, p):
                return False
    return True


def smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree n, coefficients low to high."""
    for low in itertools.product(range(p), repeat=n):
        cand = tuple(low) + (1,)
        if is_irreducible_mod_p(cand, p):
            return cand
    raise SpecError(f"no irreducible polynomial of degree {n} over GF({p})")


class FiniteFieldContext(FieldContext):
    """GF(p^n) = GF(p)[g]/(modulus) over the subfield GF(p^m).

    Raw value: a length-n tuple of residues mod p (coefficients of 1, g, g^2, ...).
    """

    symbols = frozenset({"g"})

    def __init__(self, spec, modulus: tuple[int, ...]):
        super().__init__(spec)
        self.p, self.n, self.m = spec.p, spec.n, spec.m
        self.modulus = modulus
        self.characteristic = self.p
        self.basis_size = self.n
        self.order = self.p ** self.n
        self.zero = (0,) * self.n
        self.one = (1,) + (0,) * (self.n - 1)

    def _reduce(self, coeffs: list[int]) -> tuple[int, ...]:
        p, n, mod = self.p, self.n, self.modulus
        r = [c % p for c in coeffs]
        for k in range(len(r) - 1, n - 1, -1):
            c = r[k]
            if c:
                for i in range(n):
                    r[k - n + i] = (r[k - n + i] - c * mod[i]) % p
        r = r[:n]
        return tuple(r) + (0,) * (n - len(r))

    def from_int(self, v: int):
        return (v % self.p,) + (0,) * (self.n - 1)

    def from_fraction(self, q):
        q = Fraction(q)
        if q.denominator % self.p == 0:
            raise DivisionByZeroError(f"{q.denominator} is zero in characteristic {self.p}")
        return self.from_int(q.numerator * pow(q.denominator, -1, self.p))

    def from_residue(self, coeffs: Iterable[int]) -> tuple[int, ...]:
        return self._reduce(list(coeffs))

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        out = [0] * (2 * self.n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        return self._reduce(out)

    def inv(self, a):
        if self.is_zero(a):
            raise DivisionByZeroError("inverse of zero")
        return self.pow(a, self.order - 2)

    def is_zero(self, a):
        return not any(a)

    def frobenius(self, a, times: int = 1):
        return self.pow(a, self.p ** times)

    def in_f(self, a):
        if self.m == 1:
            return not any(a[1:])
        return self.pow(a, self.p ** self.m) == a

    def symbol(self, name):
        if name == "g":
            return self._reduce([0, 1])
        return super().symbol(name)

    def all_elements(self) -> list[tuple[int, ...]]:
        return [tuple(c) for c in itertools.product(range(self.p), repeat=self.n)]

    def terms(self, a):
        out = []
        for k in range(self.n - 1, -1, -1):
            if a[k]:
                basis = "" if k == 0 else ("g" if k == 1 else f"g^{k}")
                out.append((Fraction(a[k]), basis))
        return out

    def pools(self):
        if self.order <= 125:
            f_pool = [a for a in self.all_elements() if self.in_f(a)]
        else:
            f_pool = [self.from_int(v) for v in range(self.p)]
        f_pool = f_pool[:6]
        non_f, x = [], self.symbol("g")
        power = x
        for _ in range(self.order):
            if not self.in_f(power) and power not in non_f:
                non_f.append(power)
            if len(non_f) == 4:
                break
            power = self.mul(power, x)
        return f_pool, non_f


# ---------------------------------------------------------------------------
# construction


def _check_radicals(radicals: tuple[int, ...]) -> None:
    if not radicals:
        raise SpecError("a multi-quadratic field needs at least one radical")
    if len(radicals) > MAX_RADICALS:
        raise SpecError(f"at most {MAX_RADICALS} radicals are supported")
    if len(set(radicals)) != len(radicals):
        raise SpecError("radicals must be pairwise distinct")
    for d in radicals:
        if d == 0 or d == 1:
            raise SpecError(f"radical {d} is not allowed")
        if not is_square_free(d):
            raise SpecError(f"radical {d} is not square-free")
    for r in range(1, len(radicals) + 1):
        for subset in itertools.combinations(radicals, r):
            if is_perfect_square(math.prod(subset)):
                raise SpecError(f"product of radicals {subset} is a perfect square")


def validate_spec(spec: ContextSpec) -> None:
    """Raise :class:`SpecError` unless ``spec`` satisfies its invariants."""
    if spec.kind is Kind.MULTI_QUADRATIC:
        _check_radicals(spec.radicals)
    elif spec.kind is Kind.FINITE_FIELD:
        p, n, m = spec.p, spec.n, spec.m
        if not is_prime(p):
            raise SpecError(f"{p} is not prime")
        if n < 1 or m < 1 or m > n:
            raise SpecError(f"degrees must satisfy 1 <= m <= n (got n={n}, m={m})")
        if n % m:
            raise SpecError(f"m={m} does not divide n={n}")
        if spec.modulus is not None:
            mod = spec.modulus
            if len(mod) != n + 1 or mod[-1] % p != 1:
                raise SpecError(f"modulus must be monic of degree {n}")
            if any(not 0 <= c < p for c in mod):
                raise SpecError(f"modulus coefficients must lie in 0..{p - 1}")
            if not is_irreducible_mod_p(mod, p):
                raise SpecError("modulus is reducible")
    elif spec.kind is Kind.SET_CONTEXT:
        if spec.set_id is None:
            raise SpecError("set context needs a set id")


@lru_cache(maxsize=None)
def make_context(spec: ContextSpec) -> FieldContext:
    validate_spec(spec)
    kind = spec.kind
    if kind is Kind.RATIONALS:
        return RationalContext(spec)
    if kind is Kind.RING_Z_IN_Q:
        return IntegersInRationals(spec)
    if kind is Kind.MULTI_QUADRATIC:
        return QuadraticTowerContext(spec)
    if kind is Kind.TRANSCENDENTAL:
        return FunctionFieldContext(spec)
    if kind is Kind.FINITE_FIELD:
        modulus = spec.modulus or smallest_irreducible(spec.p, spec.n)
        return FiniteFieldContext(spec, modulus)
    if spec.set_id is SetId.COMPLEMENT_Q:
        return ComplementOfQ(spec)
    return RealsUnionImaginary(spec)


def arithmetic(ctx: FieldContext, op: str, a: Element, b: Element) -> Element:
    """Apply ``op`` in {add, sub, mul, div} to two elements of ``ctx``."""
    for e in (a, b):
        if e.ctx != ctx:
            raise ContextMismatchError(f"element of {e.ctx.name} used in {ctx.name}")
    fn = {"add": ctx.add, "sub": ctx.sub, "mul": ctx.mul, "div": ctx.div}[op]
    return Element(ctx, fn(a.raw, b.raw))


def is_in_subfield(ctx: FieldContext, a: Element) -> bool:
    if a.ctx != ctx:
        raise ContextMismatchError(f"element of {a.ctx.name} used in {ctx.name}")
    return ctx.in_f(a.raw)


def characteristic(ctx: FieldContext) -> int:
    return ctx.characteristic
