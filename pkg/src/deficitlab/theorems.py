"""Oracles, random generators and theorem checkers.

Every checker evaluates a theorem's hypotheses and its conclusion
independently, so hypothesis-violating inputs (the remarks that show a
hypothesis cannot be dropped) are first-class inputs rather than skips.
"""

from __future__ import annotations

import enum
import math
import random
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from .errors import (
    ArityMismatchError,
    CounterexampleError,
    DegreeIncompatibleError,
    DegreeOverflowError,
    InadmissibleContextError,
    UnsatisfiableConstraintsError,
)
from .numbers import Element, FieldContext, Kind
from .parser import parse_field, parse_poly
from .poly import MAX_COEFFS, DeficitReport, Poly1, compose, deficit1, iterate
from .poly2 import Poly2, compose_uni_bi, deficit2, diag_subst_bi, diag_subst_uni


class TheoremId(str, enum.Enum):
    T1 = "T1"
    C1 = "C1"
    T1A = "T1A"
    T2 = "T2"
    P1 = "P1"
    L1 = "L1"
    T3 = "T3"
    T4 = "T4"
    ITER_INEQ = "ITER_INEQ"
    T5 = "T5"
    RING = "RING"
    FF = "FF"
    TWO_VAR = "TWO_VAR"
    DEFICIT_SET_T1 = "DEFICIT_SET_T1"


class Classification(str, enum.Enum):
    CONFIRMS = "CONFIRMS"
    VACUOUS = "VACUOUS"
    COUNTEREXAMPLE_TO_CONCLUSION = "COUNTEREXAMPLE_TO_CONCLUSION"


ITERATE_IDS = frozenset({TheoremId.T4, TheoremId.ITER_INEQ, TheoremId.T5})
EMPIRICAL_IDS = frozenset({TheoremId.DEFICIT_SET_T1})

# Contexts each suite runs on when none is given; the first is the default.
DEFAULT_CONTEXTS: dict[TheoremId, tuple[str, ...]] = {
    **{tid: ("Q(sqrt 2, sqrt 3)", "Q(sqrt -1)") for tid in TheoremId},
    TheoremId.RING: ("Z<Q",),
    TheoremId.FF: ("GF(3^2)", "GF(5^2)"),
    TheoremId.DEFICIT_SET_T1: ("set:realsUnionImag",),
}


# ---------------------------------------------------------------------------
# independent composition oracles


def _conv(ctx: FieldContext, a: Sequence, b: Sequence) -> list:
    out = [ctx.zero] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        for j, v in enumerate(b):
            out[i + j] = ctx.add(out[i + j], ctx.mul(u, v))
    return out


def _compositions(total: int, slots: int):
    """All tuples of ``slots`` nonnegative ints summing to ``total``."""
    if slots == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, slots - 1):
            yield (first,) + rest


def multinomial_power(ctx: FieldContext, b: Sequence, k: int) -> dict[int, Any]:
    """(sum_j b_j x^j)^k as {exponent: raw} by the multinomial theorem.

    Only nonzero b_j take part; a term with i_j > 0 on a zero b_j vanishes.
    """
    support = [j for j, c in enumerate(b) if not ctx.is_zero(c)]
    powers = {j: [ctx.one] for j in support}
    for j in support:
        for _ in range(k):
            powers[j].append(ctx.mul(powers[j][-1], b[j]))
    out: dict[int, Any] = {}
    if not support:
        return {0: ctx.one} if k == 0 else {}
    for idx in _compositions(k, len(support)):
        coef = math.factorial(k)
        for i in idx:
            coef //= math.factorial(i)
        term = ctx.from_fraction(coef)
        exponent = 0
        for j, i in zip(support, idx):
            if i:
                term = ctx.mul(term, powers[j][i])
                exponent += j * i
        out[exponent] = ctx.add(out[exponent], term) if exponent in out else term
    return out


def compose_oracle(p: Poly1, q: Poly1, max_coeffs: int = MAX_COEFFS, method: str = "multinomial") -> Poly1:
    """p o q by literal expansion of sum_k a_k (sum_j b_j x^j)^k.

    ``method="multinomial"`` expands each power term by term with multinomial
    coefficients; ``method="power"`` raises q to the k-th power by repeated
    multiplication. Neither path shares code with :func:`deficitlab.poly.compose`.
    """
    ctx = p.ctx
    if not p.raw:
        return Poly1(ctx)
    n, m = len(p.raw) - 1, max(len(q.raw) - 1, 0)
    if n * m + 1 > max_coeffs:
        raise DegreeOverflowError(f"result would need {n * m + 1} coefficients (cap {max_coeffs})")
    total = [ctx.zero] * (n * m + 1)
    qk = [ctx.one]
    for k, a in enumerate(p.raw):
        if method == "multinomial":
            terms = multinomial_power(ctx, q.raw, k)
        else:
            if k:
                qk = _conv(ctx, qk, q.raw) if q.raw else []
            terms = dict(enumerate(qk))
        if ctx.is_zero(a):
            continue
        for e, c in terms.items():
            total[e] = ctx.add(total[e], ctx.mul(a, c))
    return Poly1(ctx, total)


def _dict_mul(ctx: FieldContext, a: dict, b: dict) -> dict:
    out: dict = {}
    for (i, j), u in a.items():
        for (k, l), v in b.items():
            key = (i + k, j + l)
            prod = ctx.mul(u, v)
            out[key] = ctx.add(out[key], prod) if key in out else prod
    return out


def compose_oracle2(p: Poly1, q: Poly2) -> Poly2:
    """p(q(x, y)) expanded over the homogeneous parts of q with multinomial coefficients."""
    ctx = p.ctx
    parts = {k: {(i, k - i): v for i, v in part} for k, part in enumerate(q.parts) if part}
    support = sorted(parts)
    total: dict = {}
    for k, a in enumerate(p.raw):
        if ctx.is_zero(a):
            continue
        if not support:
            if k == 0:
                total[(0, 0)] = ctx.add(total.get((0, 0), ctx.zero), a)
            continue
        powers = {j: [{(0, 0): ctx.one}] for j in support}
        for j in support:
            for _ in range(k):
                powers[j].append(_dict_mul(ctx, powers[j][-1], parts[j]))
        for idx in _compositions(k, len(support)):
            coef = math.factorial(k)
            for i in idx:
                coef //= math.factorial(i)
            term = {(0, 0): ctx.mul(a, ctx.from_fraction(coef))}
            for j, i in zip(support, idx):
                if i:
                    term = _dict_mul(ctx, term, powers[j][i])
            for key, v in term.items():
                total[key] = ctx.add(total[key], v) if key in total else v
    return Poly2.from_dict(ctx, total)


# ---------------------------------------------------------------------------
# random generators


@dataclass(frozen=True)
class GenConstraints:
    degrees: tuple[int, ...] = (1, 2, 3, 4, 5)
    lead_in_f: bool = False
    const_in_f: bool = False
    require_non_f_positive: bool = False
    pool: tuple[Element, ...] | None = None
    seed: Any = 0
    require_non_f: bool = False
    lead_outside_f: bool = False

    def __post_init__(self):
        if not self.degrees:
            raise ValueError("degree range is empty")
        if self.pool is not None and not self.pool:
            raise ValueError("coefficient pool is empty")


def default_pool(ctx: FieldContext, f_only: bool = False) -> tuple[Element, ...]:
    f_pool, non_f = ctx.pools()
    return tuple(Element(ctx, r) for r in (f_pool if f_only else f_pool + non_f))


def _split_pool(ctx: FieldContext, pool) -> tuple[list, list]:
    raws = [e.raw for e in pool] if pool is not None else [r for part in ctx.pools() for r in part]
    return [r for r in raws if ctx.in_f(r)], [r for r in raws if not ctx.in_f(r)]


def random_poly(ctx: FieldContext, c: GenConstraints, rng: random.Random | None = None) -> Poly1:
    """A polynomial satisfying ``c``; deterministic for a fixed seed (or rng state)."""
    rng = rng or random.Random(c.seed)
    f_raw, nf_raw = _split_pool(ctx, c.pool)
    pool = f_raw + nf_raw
    nz = lambda xs: [r for r in xs if not ctx.is_zero(r)]  # noqa: E731
    lead_choices = nz(f_raw) if c.lead_in_f else nz(nf_raw) if c.lead_outside_f else nz(pool)
    if c.lead_in_f and c.lead_outside_f:
        lead_choices = []

    def feasible(d: int) -> bool:
        if not lead_choices:
            return False
        if d == 0:
            if c.const_in_f and not any(ctx.in_f(r) for r in lead_choices):
                return False
            if c.require_non_f_positive:
                return False
            if c.require_non_f:
                return bool(nf_raw) and not c.const_in_f and not c.lead_in_f and bool(nz(nf_raw))
            return True
        free = list(range(1, d))
        if not c.lead_in_f and nz(nf_raw):
            free.append(d)
        if c.require_non_f_positive and (not nf_raw or not free):
            return False
        if c.require_non_f:
            if not c.const_in_f:
                free.append(0)
            if not nf_raw or not free:
                return False
        return True

    degrees = [d for d in c.degrees if d >= 0 and feasible(d)]
    if not degrees:
        raise UnsatisfiableConstraintsError(f"no degree in {c.degrees} can satisfy {c}")
    d = rng.choice(degrees)
    if d == 0:
        choices = [r for r in lead_choices if ctx.in_f(r)] if c.const_in_f else lead_choices
        if c.require_non_f:
            choices = [r for r in choices if not ctx.in_f(r)]
        return Poly1(ctx, [rng.choice(choices)])
    coeffs = [rng.choice(f_raw) if k == 0 and c.const_in_f else rng.choice(pool) for k in range(d)]
    coeffs.append(rng.choice(lead_choices))

    def force_non_f(positions: list[int]) -> None:
        k = rng.choice(positions)
        coeffs[k] = rng.choice(nz(nf_raw) if k == d else nf_raw)

    if c.require_non_f_positive and all(ctx.in_f(r) for r in coeffs[1:]):
        force_non_f(list(range(1, d)) + ([d] if not c.lead_in_f and nz(nf_raw) else []))
    if c.require_non_f and all(ctx.in_f(r) for r in coeffs):
        force_non_f(([0] if not c.const_in_f else []) + list(range(1, d))
                    + ([d] if not c.lead_in_f and nz(nf_raw) else []))
    return Poly1(ctx, coeffs)


def random_poly2(ctx: FieldContext, rng: random.Random, degrees: Sequence[int] = (1, 2, 3),
                 top_in_f: bool = True, require_non_f_part: bool = True,
                 pool: tuple[Element, ...] | None = None) -> Poly2:
    """A bivariate polynomial with (optionally) its top part in F and some part j >= 1 outside F."""
    f_raw, nf_raw = _split_pool(ctx, pool)
    all_raw = f_raw + nf_raw
    nz_f = [r for r in f_raw if not ctx.is_zero(r)]
    usable = [d for d in degrees if not require_non_f_part or d >= (2 if top_in_f else 1)]
    if not usable or (top_in_f and not nz_f) or (require_non_f_part and not nf_raw):
        raise UnsatisfiableConstraintsError("cannot build a bivariate polynomial with these constraints")
    d = rng.choice(usable)
    terms = {}
    for k in range(d + 1):
        for i in range(k + 1):
            src = f_raw if (k == d and top_in_f) else all_raw
            terms[(i, k - i)] = rng.choice(src)
    top_keys = [(i, d - i) for i in range(d + 1)]
    if all(ctx.is_zero(terms[key]) for key in top_keys):
        terms[rng.choice(top_keys)] = rng.choice(nz_f if top_in_f else [r for r in all_raw if not ctx.is_zero(r)])
    if require_non_f_part:
        hi = d - 1 if top_in_f else d
        if all(ctx.in_f(v) for (i, j), v in terms.items() if 1 <= i + j <= hi):
            j = rng.randint(1, hi)
            i = rng.randint(0, j)
            terms[(i, j - i)] = rng.choice(nf_raw)
    return Poly2.from_dict(ctx, terms)


# ---------------------------------------------------------------------------
# verdicts


@dataclass
class TheoremVerdict:
    theorem: TheoremId
    context: str
    hypotheses: dict[str, bool]
    conclusions: dict[str, bool]
    witnesses: dict[str, Any] = field(default_factory=dict)

    @property
    def hypotheses_met(self) -> bool:
        return all(self.hypotheses.values())

    @property
    def failed_hypotheses(self) -> list[str]:
        return [name for name, ok in self.hypotheses.items() if not ok]

    @property
    def conclusion_holds(self) -> bool:
        return all(self.conclusions.values())

    @property
    def classification(self) -> Classification:
        if not self.hypotheses_met:
            return Classification.VACUOUS
        if self.conclusion_holds:
            return Classification.CONFIRMS
        return Classification.COUNTEREXAMPLE_TO_CONCLUSION

    def to_dict(self) -> dict:
        def render(v):
            if isinstance(v, DeficitReport):
                return v.to_dict()
            if isinstance(v, (Poly1, Poly2, Element)):
                return str(v)
            return v

        return {
            "theorem": self.theorem.value,
            "context": self.context,
            "classification": self.classification.value,
            "hypotheses": dict(self.hypotheses),
            "failed_hypotheses": self.failed_hypotheses,
            "conclusions": dict(self.conclusions),
            "conclusion_holds": self.conclusion_holds,
            "witnesses": {k: render(v) for k, v in self.witnesses.items()},
        }


def check_admissible(theorem: TheoremId, ctx: FieldContext) -> None:
    kind = ctx.kind
    if theorem is TheoremId.RING:
        ok = kind is Kind.RING_Z_IN_Q
    elif theorem is TheoremId.FF:
        ok = kind is Kind.FINITE_FIELD
    elif theorem is TheoremId.DEFICIT_SET_T1:
        ok = kind is Kind.SET_CONTEXT
    else:
        ok = ctx.f_is_field and ctx.characteristic == 0
    if not ok:
        raise InadmissibleContextError(f"{theorem.value} cannot be checked over {ctx.name}")


def _d(p) -> DeficitReport | None:
    if p.is_zero:
        return None
    return deficit2(p) if isinstance(p, Poly2) else deficit1(p)


def _lead_in_f(p: Poly1) -> bool:
    return not p.is_zero and p.ctx.in_f(p.raw[-1])


def _some_positive_non_f(q: Poly1) -> bool:
    return any(k >= 1 for k in q.non_f_indices())


def _t1_hypotheses(p: Poly1, q: Poly1) -> dict[str, bool]:
    return {
        "p nonconstant": len(p.raw) >= 2,
        "a_n in F": _lead_in_f(p),
        "b_m in F": _lead_in_f(q),
        "q not in F[x]": not q.is_zero and not q.in_f,
        "b_j not in F for some j >= 1": _some_positive_non_f(q),
    }


def _equal_deficit_conclusion(pq: DeficitReport | None, dq: DeficitReport | None) -> dict[str, bool]:
    return {
        "p o q not in F[x]": pq is not None and not pq.in_F,
        "D(p o q) = D(q)": pq is not None and dq is not None and pq.deficit == dq.deficit,
    }


def _as_iterate_inputs(inputs) -> tuple[Poly1, int]:
    if len(inputs) != 2 or not isinstance(inputs[0], Poly1) or not isinstance(inputs[1], int):
        raise ArityMismatchError("iterate theorems take (p, r)")
    return inputs[0], inputs[1]


def verify_theorem(theorem: TheoremId | str, ctx: FieldContext, *inputs,
                   max_coeffs: int = MAX_COEFFS) -> TheoremVerdict:
    """Check one theorem on concrete inputs: ``(p, q)`` or ``(p, r)`` for iterate theorems."""
    theorem = TheoremId(theorem)
    check_admissible(theorem, ctx)
    for x in inputs:
        if isinstance(x, (Poly1, Poly2)) and x.ctx != ctx:
            raise ArityMismatchError(f"input over {x.ctx.name} given for {ctx.name}")

    if theorem in ITERATE_IDS:
        p, r = _as_iterate_inputs(inputs)
        pr = iterate(p, r, max_coeffs) if r >= 1 else None
        dp, dpr = _d(p), (_d(pr) if pr is not None else None)
        w = {"p": p, "r": r, "iterate": pr, "D_p": dp, "D_iterate": dpr}
        if theorem is TheoremId.T4:
            hyps = {"r >= 1": r >= 1, "p not in F[x]": not p.is_zero and not p.in_f, "a_n in F": _lead_in_f(p)}
            concl = {
                "p^[r] not in F[x]": dpr is not None and not dpr.in_F,
                "D(p^[r]) = D(p)": dpr is not None and dp is not None and dpr.deficit == dp.deficit,
            }
            if len(p.raw) == 2 and pr is not None:
                concl["degree-1 closed form"] = pr == _linear_iterate_closed_form(p, r)
        elif theorem is TheoremId.ITER_INEQ:
            hyps = {"r >= 1": r >= 1, "p nonzero": not p.is_zero}
            concl = {"D(p^[r]) >= D(p)": dpr is not None and dp is not None and dpr.deficit >= dp.deficit}
        else:
            hyps = {"r >= 1": r >= 1, "a_n in F": _lead_in_f(p), "p^[r] in F[x]": pr is not None and pr.in_f}
            concl = {"p in F[x]": p.in_f}
        return TheoremVerdict(theorem, ctx.name, hyps, concl, w)

    if len(inputs) != 2:
        raise ArityMismatchError(f"{theorem.value} takes (p, q)")
    p, q = inputs
    if theorem is TheoremId.TWO_VAR:
        if not isinstance(p, Poly1) or not isinstance(q, Poly2):
            raise ArityMismatchError("TWO_VAR takes a univariate p and a bivariate q")
        pq = compose_uni_bi(p, q)
        dq, dpq = _d(q), _d(pq)
        top = q.parts[-1] if q.parts else ()
        hyps = {
            "p nonconstant": len(p.raw) >= 2,
            "a_n in F": _lead_in_f(p),
            "q not in F[x,y]": not q.is_zero and not q.in_f,
            "q_m in F[x,y]": bool(top) and all(ctx.in_f(v) for _, v in top),
            "q_j not in F[x,y] for some j >= 1": any(
                not all(ctx.in_f(v) for _, v in part) for part in q.parts[1:]),
        }
        concl = {
            "p o q not in F[x,y]": dpq is not None and not dpq.in_F,
            "D(p o q) = D(q)": dpq is not None and dq is not None and dpq.deficit == dq.deficit,
        }
        return TheoremVerdict(theorem, ctx.name, hyps, concl,
                              {"p": p, "q": q, "composed": pq, "D_q": dq, "D_composed": dpq})

    if not isinstance(p, Poly1) or not isinstance(q, Poly1):
        raise ArityMismatchError(f"{theorem.value} takes two univariate polynomials")
    pq = compose(p, q, max_coeffs)
    dp, dq, dpq = _d(p), _d(q), _d(pq)
    w = {"p": p, "q": q, "composed": pq, "D_p": dp, "D_q": dq, "D_composed": dpq,
         "non_F_indices_composed": pq.non_f_indices()}
    defined = {"p o q nonzero": dpq is not None}

    if theorem in (TheoremId.T1, TheoremId.DEFICIT_SET_T1, TheoremId.FF):
        hyps = _t1_hypotheses(p, q)
        if theorem is TheoremId.FF:
            t = ctx.characteristic
            hyps["characteristic does not divide n"] = not p.is_zero and (len(p.raw) - 1) % t != 0
        concl = _equal_deficit_conclusion(dpq, dq)
    elif theorem is TheoremId.C1:
        hyps = {
            "p nonconstant": len(p.raw) >= 2,
            "a_n in F": _lead_in_f(p),
            "b_m in F": _lead_in_f(q),
            "b_0 in F": not q.is_zero and ctx.in_f(q.raw[0]),
            "q not in F[x]": not q.is_zero and not q.in_f,
        }
        concl = _equal_deficit_conclusion(dpq, dq)
    elif theorem is TheoremId.T1A:
        hyps = {"p nonzero": not p.is_zero, "q nonzero": not q.is_zero, "q in F[x]": q.in_f, **defined}
        concl = {"D(p o q) = D(p) D(q)": None not in (dp, dq, dpq) and dpq.deficit == dp.deficit * dq.deficit}
    elif theorem in (TheoremId.T2, TheoremId.RING):
        if theorem is TheoremId.T2:
            hyps = {
                "p nonconstant": len(p.raw) >= 2,
                "q nonzero": not q.is_zero,
                "a_n b_m in F": not p.is_zero and not q.is_zero and ctx.in_f(ctx.mul(p.raw[-1], q.raw[-1])),
                **defined,
            }
        else:
            hyps = _t1_hypotheses(p, q)
        concl = {"D(p o q) >= D(q)": dpq is not None and dq is not None and dpq.deficit >= dq.deficit}
    elif theorem is TheoremId.P1:
        hyps = {
            "p nonconstant": len(p.raw) >= 2,
            "b_m in F": _lead_in_f(q),
            "q not in F[x]": not q.is_zero and not q.in_f,
            "b_j not in F for some j >= 1": _some_positive_non_f(q),
        }
        concl = {"p o q not in F[x]": not pq.in_f}
    elif theorem is TheoremId.L1:
        hyps = {"p nonzero": not p.is_zero, "q in F[x]": q.in_f, "q nonconstant": len(q.raw) >= 2,
                "p o q in F[x]": pq.in_f}
        concl = {"p in F[x]": p.in_f}
    elif theorem is TheoremId.T3:
        hyps = {
            "p nonzero": not p.is_zero,
            "q nonzero": not q.is_zero,
            "p o q in F[x]": pq.in_f,
            "b_0 in F": not q.is_zero and ctx.in_f(q.raw[0]),
            "b_m in F": _lead_in_f(q),
        }
        concl = {
            "p in F[x] or q in F[x]": p.in_f or q.in_f,
            "p and q in F[x] when p o q nonconstant": pq.is_constant or (p.in_f and q.in_f),
        }
    else:
        raise ArityMismatchError(f"{theorem.value} does not take (p, q)")
    return TheoremVerdict(theorem, ctx.name, hyps, concl, w)


def _linear_iterate_closed_form(p: Poly1, r: int) -> Poly1:
    """(a_1)^r x + a_0 sum_{k<r} (a_1)^k, computed from the coefficients alone."""
    ctx = p.ctx
    a0, a1 = p.raw[0], p.raw[1]
    geometric, power = ctx.zero, ctx.one
    for _ in range(r):
        geometric = ctx.add(geometric, power)
        power = ctx.mul(power, a1)
    return Poly1(ctx, [ctx.mul(a0, geometric), power])


# ---------------------------------------------------------------------------
# seeded suites


@dataclass(frozen=True)
class SuiteCaps:
    max_degree: int = 5
    max_degree2: int = 3
    max_iterate_degree: int = 81
    max_r: int = 3

    def to_dict(self) -> dict:
        return {"max_degree": self.max_degree, "max_degree2": self.max_degree2,
                "max_iterate_degree": self.max_iterate_degree, "max_r": self.max_r}


@dataclass
class SuiteReport:
    theorem: str
    context: str
    trials: int
    seed: int
    caps: SuiteCaps
    confirms: int = 0
    vacuous: int = 0
    counterexamples: list[dict] = field(default_factory=list)
    runtime_ms: int = 0
    violations: int | None = None  # negative controls only
    empirical: bool = False

    @property
    def passed(self) -> bool:
        if self.violations is not None:
            return self.violations > 0
        return self.empirical or not self.counterexamples

    def to_dict(self) -> dict:
        out = {
            "theorem": self.theorem,
            "context": self.context,
            "trials": self.trials,
            "confirms": self.confirms,
            "vacuous": self.vacuous,
            "counterexamples": self.counterexamples,
            "seed": self.seed,
            "caps": self.caps.to_dict(),
            "runtime_ms": self.runtime_ms,
        }
        if self.violations is not None:
            out["violations"] = self.violations
        return out


def trial_rng(seed: int, index: int) -> random.Random:
    return random.Random(f"{seed}:{index}")


def _pick_r(rng: random.Random, n: int, caps: SuiteCaps) -> int:
    allowed = [r for r in range(1, caps.max_r + 1) if n ** r <= caps.max_iterate_degree]
    return rng.choice(allowed or [1])


def sample_inputs(theorem: TheoremId, ctx: FieldContext, rng: random.Random,
                  caps: SuiteCaps = SuiteCaps()) -> tuple:
    """Hypothesis-shaped inputs for one trial of ``theorem``."""
    deg = tuple(range(1, caps.max_degree + 1))
    deg0 = (0,) + deg
    f_pool = default_pool(ctx, f_only=True)

    def gen(**kw) -> Poly1:
        return random_poly(ctx, GenConstraints(**kw), rng)

    tid = theorem
    if tid in (TheoremId.T1, TheoremId.RING, TheoremId.DEFICIT_SET_T1):
        return gen(degrees=deg, lead_in_f=True), gen(degrees=deg, lead_in_f=True, require_non_f_positive=True)
    if tid is TheoremId.FF:
        t = ctx.characteristic
        p = gen(degrees=tuple(d for d in deg if d % t), lead_in_f=True)
        return p, gen(degrees=deg, lead_in_f=True, require_non_f_positive=True)
    if tid is TheoremId.C1:
        return gen(degrees=deg, lead_in_f=True), gen(degrees=deg, lead_in_f=True, const_in_f=True,
                                                     require_non_f_positive=True)
    if tid is TheoremId.T1A:
        return gen(degrees=deg0), gen(degrees=deg0, pool=f_pool)
    if tid is TheoremId.T2:
        q = gen(degrees=deg0)
        p = gen(degrees=deg)
        # force a_n b_m into F: a_n = u / b_m with u a nonzero element of F
        u = rng.choice([e.raw for e in f_pool if not e.is_zero])
        lead = ctx.div(u, q.raw[-1])
        return Poly1(ctx, p.raw[:-1] + (lead,)), q
    if tid is TheoremId.P1:
        return gen(degrees=deg), gen(degrees=deg, lead_in_f=True, require_non_f_positive=True)
    if tid is TheoremId.L1:
        p = gen(degrees=deg0, pool=f_pool if rng.random() < 0.5 else None)
        return p, gen(degrees=deg, pool=f_pool)
    if tid is TheoremId.T3:
        p = gen(degrees=deg0, pool=f_pool if rng.random() < 0.5 else None)
        q = gen(degrees=deg0, lead_in_f=True, const_in_f=True, pool=f_pool if rng.random() < 0.5 else None)
        return p, q
    if tid is TheoremId.T4:
        p = gen(degrees=deg, lead_in_f=True, require_non_f=True)
        return p, _pick_r(rng, p.degree, caps)
    if tid is TheoremId.ITER_INEQ:
        p = gen(degrees=deg0)
        return p, _pick_r(rng, p.degree, caps)
    if tid is TheoremId.T5:
        p = gen(degrees=deg, lead_in_f=True, pool=f_pool if rng.random() < 0.5 else None)
        return p, _pick_r(rng, p.degree, caps)
    if tid is TheoremId.TWO_VAR:
        deg2 = tuple(range(1, caps.max_degree2 + 1))
        p = gen(degrees=deg2, lead_in_f=True)
        return p, random_poly2(ctx, rng, tuple(range(2, caps.max_degree2 + 1)))
    raise ValueError(theorem)


def _reproducer(theorem: TheoremId, ctx: FieldContext, seed: int, index: int, inputs, verdict) -> dict:
    return {
        "theorem": theorem.value,
        "context": ctx.name,
        "seed": seed,
        "trial": index,
        "inputs": [str(x) for x in inputs],
        "verdict": verdict.to_dict(),
    }


def run_suite(theorem: TheoremId | str, trials: int, seed: int = 0, ctx: FieldContext | str | None = None,
              caps: SuiteCaps = SuiteCaps(), abort: bool = True) -> SuiteReport:
    """Run ``trials`` seeded checks of ``theorem``.

    A counterexample to a proved theorem raises :class:`CounterexampleError`
    carrying the reproducer, unless ``abort`` is false or the theorem is empirical.
    """
    theorem = TheoremId(theorem)
    if ctx is None:
        ctx = DEFAULT_CONTEXTS[theorem][0]
    if isinstance(ctx, str):
        ctx = parse_field(ctx)
    check_admissible(theorem, ctx)
    empirical = theorem in EMPIRICAL_IDS
    report = SuiteReport(theorem.value, ctx.name, trials, seed, caps, empirical=empirical)
    start = time.perf_counter()
    for index in range(trials):
        inputs = sample_inputs(theorem, ctx, trial_rng(seed, index), caps)
        verdict = verify_theorem(theorem, ctx, *inputs)
        cls = verdict.classification
        if cls is Classification.CONFIRMS:
            report.confirms += 1
        elif cls is Classification.VACUOUS:
            report.vacuous += 1
        else:
            rep = _reproducer(theorem, ctx, seed, index, inputs, verdict)
            report.counterexamples.append(rep)
            if abort and not empirical:
                report.runtime_ms = int((time.perf_counter() - start) * 1000)
                raise CounterexampleError(
                    f"{theorem.value} fails on {ctx.name}, seed {seed}, trial {index}: "
                    + ", ".join(rep["inputs"]), report, rep)
    report.runtime_ms = int((time.perf_counter() - start) * 1000)
    return report


# Negative controls: inputs that violate exactly one hypothesis, where the
# conclusion is expected to fail at least sometimes.

def _control_ff_divisible(ctx: FieldContext, rng: random.Random, caps: SuiteCaps) -> tuple:
    t = ctx.characteristic
    degs = tuple(d for d in range(1, caps.max_degree + 1) if d % t == 0)
    p = random_poly(ctx, GenConstraints(degrees=degs, lead_in_f=True), rng)
    q = random_poly(ctx, GenConstraints(degrees=tuple(range(1, caps.max_degree + 1)), lead_in_f=True,
                                        require_non_f_positive=True), rng)
    return p, q


def _control_t2_product_outside(ctx: FieldContext, rng: random.Random, caps: SuiteCaps) -> tuple:
    deg = tuple(range(1, caps.max_degree + 1))
    p = random_poly(ctx, GenConstraints(degrees=deg, lead_outside_f=True), rng)
    q = random_poly(ctx, GenConstraints(degrees=deg, lead_in_f=True, require_non_f_positive=True), rng)
    return p, q


NEGATIVE_CONTROLS: dict[str, tuple[TheoremId, str, str, Callable]] = {
    # name: (checker, default context, conclusion that should fail, sampler)
    "FF_DIVISIBLE": (TheoremId.FF, "GF(2^2)", "D(p o q) = D(q)", _control_ff_divisible),
    "T2_PRODUCT_OUTSIDE": (TheoremId.T2, "Q(sqrt 2, sqrt 3)", "D(p o q) >= D(q)", _control_t2_product_outside),
}


def run_negative_control(name: str, trials: int = 200, seed: int = 0, ctx: FieldContext | str | None = None,
                         caps: SuiteCaps = SuiteCaps()) -> SuiteReport:
    """Count conclusion violations on hypothesis-violating inputs; passes when at least one is found."""
    theorem, default_ctx, conclusion, sampler = NEGATIVE_CONTROLS[name]
    ctx = parse_field(ctx or default_ctx) if not isinstance(ctx, FieldContext) else ctx
    check_admissible(theorem, ctx)
    report = SuiteReport(f"{theorem.value}:{name}", ctx.name, trials, seed, caps, violations=0)
    start = time.perf_counter()
    for index in range(trials):
        inputs = sampler(ctx, trial_rng(seed, index), caps)
        verdict = verify_theorem(theorem, ctx, *inputs)
        if verdict.hypotheses_met:
            report.confirms += verdict.conclusion_holds
            continue
        report.vacuous += 1
        if not verdict.conclusions[conclusion]:
            report.violations += 1
            if len(report.counterexamples) < 5:
                report.counterexamples.append(_reproducer(theorem, ctx, seed, index, inputs, verdict))
    report.runtime_ms = int((time.perf_counter() - start) * 1000)
    return report


# ---------------------------------------------------------------------------
# decomposition obstruction


@dataclass(frozen=True)
class ObstructionVerdict:
    status: str  # "IMPOSSIBLE" or "INCONCLUSIVE"
    reason: str

    @property
    def impossible(self) -> bool:
        return self.status == "IMPOSSIBLE"


def decomposition_obstruction(r: Poly1, q: Poly1) -> ObstructionVerdict:
    """Decide whether the deficit theorems rule out r = p o q for every p.

    Never claims that a decomposition exists: the answer is IMPOSSIBLE with the
    theorem that forbids it, or INCONCLUSIVE.
    """
    if r.ctx != q.ctx:
        raise ArityMismatchError(f"{r.ctx.name} vs {q.ctx.name}")
    ctx = r.ctx
    if q.is_zero or r.is_zero or q.degree < 2 or r.degree % q.degree:
        raise DegreeIncompatibleError(
            f"deg(q) must be at least 2 and divide deg(r) (got {_deg(r)} and {_deg(q)})")
    m = q.degree
    n = r.degree // m
    lead_p = ctx.div(r.raw[-1], ctx.pow(q.raw[-1], n))
    dr, dq = deficit1(r), deficit1(q)
    b_m_in_f = ctx.in_f(q.raw[-1])
    positive_non_f = _some_positive_non_f(q)
    t1_shape = ctx.in_f(lead_p) and b_m_in_f and positive_non_f

    char0_field = ctx.f_is_field and ctx.characteristic == 0
    if char0_field or (ctx.kind is Kind.FINITE_FIELD and n % ctx.characteristic):
        if t1_shape and (dr.in_F or dr.deficit != dq.deficit):
            return ObstructionVerdict(
                "IMPOSSIBLE",
                f"the leading coefficient of p would be {Element(ctx, lead_p)} (in F), so "
                f"D(r) must equal D(q) = {dq.deficit} with r outside F[x]; but D(r) = {dr.deficit}"
                + (" and r lies in F[x]" if dr.in_F else ""))
    if char0_field:
        if b_m_in_f and positive_non_f and dr.in_F:
            return ObstructionVerdict("IMPOSSIBLE", "q has its leading coefficient in F and a non-F "
                                                    "coefficient of positive index, so r cannot lie in F[x]")
        if ctx.in_f(ctx.mul(lead_p, q.raw[-1])) and dr.deficit < dq.deficit:
            return ObstructionVerdict(
                "IMPOSSIBLE", f"a_n b_m lies in F, so D(r) >= D(q) = {dq.deficit}; but D(r) = {dr.deficit}")
        if q.in_f:
            if dr.deficit % m:
                return ObstructionVerdict(
                    "IMPOSSIBLE", f"q lies in F[x], so D(r) = D(p) * {m}; but D(r) = {dr.deficit}")
            if not ctx.in_f(lead_p) and dr.deficit:
                return ObstructionVerdict(
                    "IMPOSSIBLE", f"q lies in F[x] and a_n is outside F, so D(r) = 0; but D(r) = {dr.deficit}")
            if ctx.in_f(lead_p) and dr.deficit < m:
                return ObstructionVerdict(
                    "IMPOSSIBLE", f"q lies in F[x] and a_n is in F, so D(r) >= {m}; but D(r) = {dr.deficit}")
    if ctx.kind is Kind.RING_Z_IN_Q and t1_shape and dr.deficit < dq.deficit:
        return ObstructionVerdict(
            "IMPOSSIBLE", f"a_n, b_m lie in F, so D(r) >= D(q) = {dq.deficit}; but D(r) = {dr.deficit}")
    return ObstructionVerdict("INCONCLUSIVE", "no deficit theorem rules out a decomposition")


def _deg(p: Poly1) -> str:
    return "zero" if p.is_zero else str(p.degree)


# ---------------------------------------------------------------------------
# worked examples


@dataclass
class FixtureResult:
    name: str
    passed: bool
    detail: str


@dataclass
class FixtureReport:
    results: list[FixtureResult]
    runtime_ms: int

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self) -> dict:
        return {"passed": self.all_passed, "runtime_ms": self.runtime_ms,
                "fixtures": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in self.results]}


def _expect(cond: bool, message: str) -> None:
    if not cond:
        raise AssertionError(message)


def _fx_intro_deficit():
    K = parse_field("Q(sqrt 3)")
    d = deficit1(parse_poly("x^5 - 5*x^3 + sqrt(3)*x^2 - x + 1", K))
    _expect(d.deficit == 3, f"expected deficit 3, got {d.deficit}")
    return "D = 3"


def _fx_main_example():
    K = parse_field("Q(sqrt 2, sqrt 3)")
    p = parse_poly("x^3 + 2*x^2 - sqrt(2)*x + 1", K)
    q = parse_poly("x^2 + sqrt(3)*x + 5", K)
    expected = parse_poly("x^6 + 3*sqrt(3)*x^5 + 26*x^4 + 37*sqrt(3)*x^3 + (-sqrt(2) + 146)*x^2"
                          " + (95*sqrt(3) - sqrt(2)*sqrt(3))*x + 176 - 5*sqrt(2)", K)
    v = verify_theorem(TheoremId.T1, K, p, q)
    _expect(v.witnesses["composed"] == expected, f"composition {v.witnesses['composed']} != {expected}")
    _expect((v.witnesses["D_composed"].deficit, v.witnesses["D_q"].deficit) == (1, 1), "deficits should be (1, 1)")
    _expect(v.classification is Classification.CONFIRMS, f"T1 verdict {v.classification.value}")
    return "D(p o q) = 1 = D(q); T1 confirms"


def _fx_product_example():
    K = parse_field("Q(sqrt 2)")
    p, q = parse_poly("x^4 - sqrt(2)*x", K), parse_poly("x^2 + 3*x", K)
    expected = parse_poly("x^8 + 12*x^7 + 54*x^6 + 108*x^5 + 81*x^4 - sqrt(2)*x^2 - 3*sqrt(2)*x", K)
    v = verify_theorem(TheoremId.T1A, K, p, q)
    w = v.witnesses
    _expect(w["composed"] == expected, f"composition {w['composed']} != {expected}")
    _expect((w["D_composed"].deficit, w["D_p"].deficit, w["D_q"].deficit) == (6, 3, 2), "expected D = 6 = 3 * 2")
    _expect(v.classification is Classification.CONFIRMS, f"T1A verdict {v.classification.value}")
    return "D(p o q) = 6 = 3 * 2"


def _fx_remark_leading_outside():
    K = parse_field("Q(sqrt 2, sqrt 3, sqrt 5)")
    p = parse_poly("sqrt(2)*x^3 + x^2 - x + sqrt(5)", K)
    q = parse_poly("3*sqrt(2)*x^2 + sqrt(3)*x + 5", K)
    v = verify_theorem(TheoremId.T1, K, p, q)
    w = v.witnesses
    _expect((w["D_composed"].deficit, w["D_q"].deficit) == (1, 0), "expected D(p o q) = 1, D(q) = 0")
    _expect(v.classification is Classification.VACUOUS and not v.conclusions["D(p o q) = D(q)"],
            "T1 should be vacuous with a failing equality")
    return "D(p o q) = 1 != 0 = D(q); hypotheses a_n, b_m in F fail"


def _fx_remark_t2():
    K = parse_field("Q(sqrt 2, sqrt 3)")
    p, q = parse_poly("sqrt(2)*x^3 + x^2 - x + 1", K), parse_poly("x^2 + sqrt(3)*x + 5", K)
    v = verify_theorem(TheoremId.T2, K, p, q)
    w = v.witnesses
    _expect((w["D_composed"].deficit, w["D_q"].deficit) == (0, 1), "expected D(p o q) = 0, D(q) = 1")
    _expect(v.failed_hypotheses == ["a_n b_m in F"] and not v.conclusion_holds,
            f"T2 should fail only 'a_n b_m in F' with a failing conclusion, got {v.failed_hypotheses}")
    return "D(p o q) = 0 < 1 = D(q); a_n b_m outside F"


def _fx_remark_t3_shift():
    K = parse_field("Q(sqrt 2)")
    details = []
    for ptxt, qtxt in (("x - sqrt(2)", "x + sqrt(2)"), ("1/2*sqrt(2)*x", "sqrt(2)*x")):
        p, q = parse_poly(ptxt, K), parse_poly(qtxt, K)
        v = verify_theorem(TheoremId.T3, K, p, q)
        _expect(v.witnesses["composed"] == Poly1.x(K), f"{ptxt} o {qtxt} should be x")
        _expect(v.classification is Classification.VACUOUS and not v.conclusions["p in F[x] or q in F[x]"],
                "T3 should be vacuous with neither p nor q in F[x]")
        details.append(f"{ptxt} o {qtxt} = x")
    return "; ".join(details)


def _fx_remark_complement():
    S = parse_field("set:complementQ")
    p, q = parse_poly("x^2", S), parse_poly("t*x^2 + x + t", S)
    pq = compose(p, q)
    expected = parse_poly("t^2*x^4 + 2*t*x^3 + (2*t^2 + 1)*x^2 + 2*t*x + t^2", S)
    _expect(pq == expected, f"composition {pq} != {expected}")
    _expect(pq.in_f, "every coefficient of p o q should lie outside Q")
    _expect(not p.in_f and not q.in_f, "p and q should each have a rational coefficient")
    _expect(S.in_f(q.raw[-1]) and S.in_f(q.raw[0]), "q's leading and constant terms should be irrational")
    return "all coefficients of p o q irrational; p, q not"


def _fx_intro_rotation():
    K = parse_field("Q(sqrt -1)")
    p = parse_poly("i*x", K)
    v4 = verify_theorem(TheoremId.T4, K, p, 2)
    v5 = verify_theorem(TheoremId.T5, K, p, 2)
    _expect(v4.witnesses["iterate"] == parse_poly("-1*x", K), "(i x) o (i x) should be -x")
    _expect(v4.failed_hypotheses == ["a_n in F"] and not v4.conclusion_holds, "T4 needs a_n in F here")
    _expect(v5.failed_hypotheses == ["a_n in F"] and not v5.conclusion_holds, "T5 needs a_n in F here")
    return "p = i x: p^[2] = -x in F[x]"


def _fx_iterate_example():
    K = parse_field("Q(sqrt -1)")
    p = parse_poly("x^3 + 4*x^2 - 3*i*x + 2*i", K)
    expected = parse_poly("x^9 + 12*x^8 + (48 - 9*i)*x^7 + (68 - 66*i)*x^6 + (5 - 96*i)*x^5"
                          " + (-8 + 72*i)*x^4 + (132 - 56*i)*x^3 + (-84 - 2*i)*x^2 + (39 + 36*i)*x - 10 - 6*i", K)
    v = verify_theorem(TheoremId.T4, K, p, 2)
    _expect(v.witnesses["iterate"] == expected, f"p o p = {v.witnesses['iterate']} != {expected}")
    _expect(v.witnesses["D_iterate"].deficit == 2 == v.witnesses["D_p"].deficit, "expected D = 2")
    _expect(v.classification is Classification.CONFIRMS, f"T4 verdict {v.classification.value}")
    return "D(p o p) = 2 = D(p)"


def _fx_remark_t5():
    K = parse_field("Q(sqrt 2)")
    p = parse_poly("sqrt(2)*x", K)
    v = verify_theorem(TheoremId.T5, K, p, 2)
    _expect(v.witnesses["iterate"] == parse_poly("2*x", K), "(sqrt 2 x)^[2] should be 2x")
    _expect(v.failed_hypotheses == ["a_n in F"] and not v.conclusion_holds, "T5 should fail through a_n")
    return "p = sqrt(2) x: p^[2] = 2x"


def _fx_diag_uni():
    K = parse_field("Q(sqrt -1)")
    p, q = parse_poly("x^2 - y^2 + 1", K, 2), parse_poly("x^2 + i*x", K)
    r = diag_subst_uni(p, q)
    _expect(r == Poly1.constant(K, 1), f"p(q, q) = {r}, expected 1")
    dr, dq = deficit1(r), deficit1(q)
    _expect((dr.deficit, dq.deficit) == (0, 1), "expected D(p(q, q)) = 0 < 1 = D(q)")
    return "p(q, q) = 1; D = 0 < 1; conclusion fails"


def _fx_diag_bi():
    K = parse_field("Q(sqrt 3, sqrt 5)")
    p = parse_poly("y^2 - x^2 + sqrt(3)*x - sqrt(5)*y", K, 2)
    expected = parse_poly("sqrt(3)*y^2 - sqrt(3)*x^2 + 3*x - sqrt(3)*sqrt(5)*y - sqrt(5)*y^2"
                          " + sqrt(5)*x^2 - sqrt(5)*sqrt(3)*x + 5*y", K, 2)
    r = diag_subst_bi(p, p)
    _expect(r == expected, f"p(p, p) = {r} != {expected}")
    _expect((deficit2(r).deficit, deficit2(p).deficit) == (0, 1), "expected D(p(p, p)) = 0 < 1 = D(p)")
    return "D(p(p, p)) = 0 < 1 = D(p); conclusion fails"


def _fx_two_var():
    K = parse_field("Q(sqrt 2)")
    p, q = parse_poly("x^2", K), parse_poly("x^2 + y^2 + sqrt(2)*x", K, 2)
    expected = parse_poly("x^4 + 2*x^2*y^2 + y^4 + 2*sqrt(2)*x^3 + 2*sqrt(2)*x*y^2 + 2*x^2", K, 2)
    v = verify_theorem(TheoremId.TWO_VAR, K, p, q)
    _expect(v.witnesses["composed"] == expected, f"p(q) = {v.witnesses['composed']} != {expected}")
    _expect(v.classification is Classification.CONFIRMS and v.witnesses["D_composed"].deficit == 1,
            "TWO_VAR should confirm with D = 1")
    return "D(p(q)) = 1 = D(q)"


def _fx_ring():
    R = parse_field("Z<Q")
    p, q = parse_poly("x^2 + 2/3*x", R), parse_poly("6*x^2 + 3/2*x", R)
    v = verify_theorem(TheoremId.RING, R, p, q)
    w = v.witnesses
    _expect(w["composed"] == parse_poly("36*x^4 + 18*x^3 + 25/4*x^2 + x", R), f"composition {w['composed']}")
    _expect((w["D_composed"].deficit, w["D_q"].deficit) == (2, 1), "expected D(p o q) = 2, D(q) = 1")
    _expect(v.classification is Classification.CONFIRMS, "the ring inequality should hold")
    return "D(p o q) = 2 >= 1 = D(q); equality fails over Z"


def _fx_gf4():
    G = parse_field("GF(2^2)")
    p, q = parse_poly("x^2", G), parse_poly("x^2 + g*x", G)
    v = verify_theorem(TheoremId.FF, G, p, q)
    w = v.witnesses
    _expect(w["composed"] == parse_poly("x^4 + g^2*x^2", G), f"composition {w['composed']}")
    _expect((w["D_q"].deficit, w["D_composed"].deficit) == (1, 2), "expected D(q) = 1, D(p o q) = 2")
    _expect(v.failed_hypotheses == ["characteristic does not divide n"] and not v.conclusion_holds,
            "FF should fail only through t | n")
    return "D(q) = 1, D(p o q) = 2 (adapted: generator g for the literal 3)"


def _fx_square_plus_c():
    K = parse_field("Q(sqrt 2)")
    p = parse_poly("x^2 + sqrt(2)", K)
    for r in range(1, 5):
        pr = iterate(p, r)
        _expect(not pr.coeff(2 ** r - 2).in_subfield, f"r={r}: coefficient of x^{2 ** r - 2} should be irrational")
        _expect(pr.coeff(2 ** r - 1).in_subfield, f"r={r}: coefficient of x^{2 ** r - 1} should be rational")
        _expect(deficit1(pr).deficit == 2, f"r={r}: deficit should stay 2")
    return "r = 1..4: x^(2^r-2) irrational, x^(2^r-1) rational"


def _fx_decomposition():
    K = parse_field("Q(sqrt 2)")
    r = parse_poly("x^6 + x^5 + sqrt(2)*x^4 + x + 1", K)
    q = parse_poly("x^3 + sqrt(2)*x^2 + 1", K)
    v = decomposition_obstruction(r, q)
    _expect(v.impossible, f"expected IMPOSSIBLE, got {v.status}")
    return v.reason


FIXTURES: dict[str, Callable[[], str]] = {
    "intro: deficit of x^5 - 5x^3 + sqrt3 x^2 - x + 1": _fx_intro_deficit,
    "main example: composition and T1": _fx_main_example,
    "example after T1a: product rule": _fx_product_example,
    "remark after T1a: leading coefficients outside F": _fx_remark_leading_outside,
    "remark after T2: a_n b_m outside F": _fx_remark_t2,
    "remark after T3: shifts and scalings": _fx_remark_t3_shift,
    "remark after T3: complement of Q": _fx_remark_complement,
    "intro: p = i x needs a_n in F": _fx_intro_rotation,
    "iterates example: D(p o p) = 2": _fx_iterate_example,
    "remark after T5: p = sqrt(a) x": _fx_remark_t5,
    "several variables: p(q, q) = 1": _fx_diag_uni,
    "several variables: p(p, p)": _fx_diag_bi,
    "several variables: p(q(x, y))": _fx_two_var,
    "rings: Z in Q": _fx_ring,
    "finite characteristic: GF(4)": _fx_gf4,
    "applications: iterates of x^2 + c": _fx_square_plus_c,
    "applications: decomposition obstruction": _fx_decomposition,
}


def paper_examples(names: Sequence[str] | None = None) -> FixtureReport:
    """Replay the fixed worked examples; each result names what it asserted."""
    start = time.perf_counter()
    results = []
    for name, fn in FIXTURES.items():
        if names is not None and name not in names:
            continue
        try:
            results.append(FixtureResult(name, True, fn()))
        except AssertionError as exc:
            results.append(FixtureResult(name, False, str(exc)))
    return FixtureReport(results, int((time.perf_counter() - start) * 1000))
