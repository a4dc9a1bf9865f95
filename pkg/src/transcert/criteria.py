"""Finite-range hypothesis checks and growth verdicts for the criteria.

Every inequality hypothesis is decided by certified interval comparison in
the log2 domain, e.g. ``|b_n| <= |a_n|^beta 2^(log2^alpha |a_n|)`` becomes
``log2|b_n| <= beta L + L^alpha`` with ``L = log2|a_n|``.  A comparison that
cannot be separated even at ``max_bits`` is reported as Undecided; it is never
rounded to Holds.

The limsup conditions are asymptotic, so they are judged from the declared
:class:`~transcert.sequences.GrowthProfile`: a required base below the growth
base g diverges, above it stays bounded, and at equality the ``g^n ln n``
term decides.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field, replace
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, Union

from .errors import (
    ConstraintViolated,
    EmptyGrid,
    NotIntegerCoords,
    PrecisionExhausted,
)
from .exactmath import (
    Interval,
    IntervalComplex,
    Precision,
    format_directed,
    iv_log2,
    iv_pow,
    log2_power,
)
from .numberfield import FieldElement, degree, denominator, house, norms
from .sequences import GrowthProfile, SequenceSpec, builtin_example

HOLDS, FAILS, UNDECIDED = "Holds", "Fails", "Undecided"

THEOREMS = ("1.1", "1.2", "1.3", "1.4", "1.6", "1.7", "7.1")
CLASSICAL = {"erdos": "1.1", "hancl": "1.2", "andersen_kristensen": "1.3"}


class Growth(str, enum.Enum):
    DIVERGES = "Diverges"
    BOUNDED = "Bounded"
    BOUNDARY_DIVERGES = "BoundaryDiverges"
    BOUNDARY_BOUNDED = "BoundaryBounded"

    def __str__(self) -> str:
        return self.value

    @property
    def diverges(self) -> bool:
        return self in (Growth.DIVERGES, Growth.BOUNDARY_DIVERGES)


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def fmt_q(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# Parameters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CriterionParams:
    """Parameter tuple of one theorem.  Unused fields are ignored."""

    theorem: str
    epsilon: Fraction = Fraction(2)
    alpha: Fraction = Fraction(1, 2)
    beta: Fraction = Fraction(0)
    delta: Fraction = Fraction(1, 100)
    y: Fraction = Fraction(1)
    y1: Fraction = Fraction(1)
    y2: Fraction = Fraction(0)
    eta1: Fraction = Fraction(0)
    eta2: Fraction = Fraction(1)
    gamma: Fraction = Fraction(5)
    zeta: object = None

    def __post_init__(self):
        if self.theorem not in THEOREMS:
            raise ValueError(f"unknown theorem {self.theorem!r}")
        for name in ("epsilon", "alpha", "beta", "delta", "y", "y1", "y2", "eta1", "eta2", "gamma"):
            object.__setattr__(self, name, _q(getattr(self, name)))

    @classmethod
    def from_exponents(cls, theorem: str, exps: dict, **overrides) -> CriterionParams:
        data = {k: v for k, v in exps.items() if k in cls.__dataclass_fields__}
        data.update(overrides)
        return cls(theorem, **data)

    def validate(self, d: int) -> None:
        """Raise ConstraintViolated naming the first violated constraint."""
        t = self.theorem

        def need(cond: bool, which: str):
            if not cond:
                raise ConstraintViolated(which)

        need(self.epsilon > 0, "epsilon > 0")
        if t in ("1.1", "1.3"):
            return
        if t == "1.2":
            need(self.gamma > 2 * self.epsilon, "gamma > 2*epsilon")
            need(self.alpha < 1, "alpha < 1")
            # alpha > log(3+2eps)/log(3+gamma)  <=>  (3+gamma)^alpha > 3+2eps
            lhs = iv_pow(Interval.exact(3 + self.gamma, 128), self.alpha)
            need(lhs.lo > 3 + 2 * self.epsilon, "alpha > log(3+2*epsilon)/log(3+gamma)")
            return
        need(0 < self.alpha < 1, "0 < alpha < 1")
        need(self.beta >= 0, "beta >= 0")
        need(self.beta < self.epsilon / (1 + self.epsilon), "beta < epsilon/(1+epsilon)")
        if t == "1.4":
            need(self.y >= 1, "y >= 1")
        elif t == "1.6":
            need(self.delta > 0, "delta > 0")
            need(self.eta1 >= 0, "eta1 >= 0")
            need(self.eta2 >= 1, "eta2 >= 1")
            need(self.y >= 1, "y >= 1")
            need(self.eta1 <= (d - 1) * self.y + self.beta, "eta1 <= (d-1)*y + beta")
        elif t == "1.7":
            need(self.delta > 0, "delta > 0")
            need(self.eta1 >= 0, "eta1 >= 0")
            need(self.eta2 >= 1, "eta2 >= 1")
            need(self.y1 >= 1, "y1 >= 1")
            need(self.y2 >= self.beta, "y2 >= beta")
            need(self.eta1 <= (d - 1) * self.y1 + self.y2, "eta1 <= (d-1)*y1 + y2")
        elif t == "7.1":
            need(self.delta > 0, "delta > 0")

    def to_json(self) -> dict:
        out = {"theorem": self.theorem}
        for name in _PARAM_NAMES.get(self.theorem, ()):
            out[name] = fmt_q(getattr(self, name))
        return out


_PARAM_NAMES = {
    "1.1": ("epsilon",),
    "1.2": ("epsilon", "alpha", "gamma"),
    "1.3": ("epsilon",),
    "1.4": ("epsilon", "alpha", "beta", "y"),
    "1.6": ("epsilon", "alpha", "beta", "delta", "y", "eta1", "eta2"),
    "1.7": ("epsilon", "alpha", "beta", "delta", "y1", "y2", "eta1", "eta2"),
    "7.1": ("epsilon", "alpha", "beta", "delta"),
}


# ---------------------------------------------------------------------------
# Required bases
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Base:
    """Required base ``const + coef*delta``; ``infinite`` marks a condition
    that no doubly exponential growth can meet."""

    name: str
    const: Fraction
    coef: Fraction = Fraction(0)
    infinite: bool = False

    def value(self, delta) -> Optional[Fraction]:
        if self.infinite:
            return None
        return self.const + self.coef * _q(delta)

    def symbolic(self) -> str:
        if self.infinite:
            return "infinite"
        s = fmt_q(self.const)
        if self.coef:
            c = self.coef
            if c == 1:
                s += "+δ"
            elif c.denominator == 1:
                s += f"+{c.numerator}δ"
            else:
                s += f"+({fmt_q(c)})δ"
        return s


def base_formula(theorem: str, d: int, beta=0, y=1, y1=1, y2=0, eta1=0, eta2=1,
                 gamma=0, delta=None) -> list[Base]:
    """The named bases of one theorem, without constraint checking."""
    beta, y, y1, y2, eta1, eta2, gamma = map(_q, (beta, y, y1, y2, eta1, eta2, gamma))
    t = theorem
    if t == "1.1":
        return [Base("irrationality", Fraction(2))]
    if t == "1.2":
        return [Base("transcendence", 3 + gamma)]
    if t == "1.3":
        if d == 1:
            return [Base("irrationality", Fraction(2)), Base("transcendence", Fraction(0), infinite=True)]
        return [Base("irrationality", Fraction(0), infinite=True),
                Base("transcendence", Fraction(0), infinite=True)]
    one_minus = 1 - beta
    if t == "1.4":
        return [Base("irrationality", d * y / one_minus + 1),
                Base("transcendence", d * d * y / one_minus + 1)]
    if t == "1.6":
        num = eta2 + d * ((d - 1) * y + beta + eta2 - eta1)
        return [Base("irrationality", d * (y + beta) / one_minus + 1),
                Base("transcendence_1", num / one_minus + 1, 1 / one_minus),
                Base("transcendence_2", d * d * (y + beta) / one_minus + 1)]
    if t == "1.7":
        num = eta2 + d * ((d - 1) * y1 + y2 + eta2 - eta1)
        return [Base("irrationality", d * (y1 + y2) / one_minus + 1),
                Base("transcendence_1", num / one_minus + 1, 1 / one_minus),
                Base("transcendence_2", d * d * (y1 + y2) / one_minus + 1)]
    if t == "7.1":
        return [Base("transcendence", 2 / one_minus + 1, 1 / one_minus)]
    raise ValueError(f"unknown theorem {theorem!r}")


def required_bases(theorem: str, d: int, params: CriterionParams) -> list[Base]:
    """Validated bases for ``params`` (ConstraintViolated on bad parameters)."""
    if params.theorem != theorem:
        params = replace(params, theorem=theorem)
    params.validate(d)
    p = params
    return base_formula(theorem, d, p.beta, p.y, p.y1, p.y2, p.eta1, p.eta2, p.gamma)


def thm13_exponent(d: int, n: int) -> Fraction:
    """prod_{i=1}^{n-1} (d^i + d)^(-1)."""
    out = Fraction(1)
    for i in range(1, n):
        out /= d ** i + d
    return out


def divergence_verdict(profile: GrowthProfile, base, delta=Fraction(1, 100)) -> Growth:
    """Asymptotic fate of |a_n|^(base^-n) under the declared profile."""
    if isinstance(base, Base):
        base = base.value(delta)
    if base is None:
        return Growth.BOUNDED
    base = _q(base)
    if base <= 1:
        raise ValueError("base must exceed 1")
    if base < profile.g:
        return Growth.DIVERGES
    if base > profile.g:
        return Growth.BOUNDED
    return Growth.BOUNDARY_DIVERGES if profile.A_L > 0 else Growth.BOUNDARY_BOUNDED


def min_required_base(theorem: str, d: int, exponent_bounds: dict, c_grid: Iterable,
                      which: Optional[str] = None) -> tuple[Fraction, Fraction]:
    """Minimum over the grid of the theorem's transcendence base evaluated at
    the bound values; ``exponent_bounds`` maps names to constants or to
    functions of the scan parameter c."""
    grid = list(c_grid)
    if not grid:
        raise EmptyGrid("empty parameter grid")
    which = which or ("transcendence_2" if theorem in ("1.6", "1.7") else "transcendence")
    best = None
    for c in grid:
        vals = {k: (v(c) if callable(v) else v) for k, v in exponent_bounds.items()}
        bases = {b.name: b for b in base_formula(theorem, d, **vals)}
        v = bases[which].value(vals.get("delta", 0))
        if best is None or v < best[0]:
            best = (v, c)
    return best


def frange(lo: Fraction, hi: Fraction, step: Fraction, include_lo: bool = True,
           include_hi: bool = True) -> list[Fraction]:
    lo, hi, step = _q(lo), _q(hi), _q(step)
    out = []
    k = 0
    while True:
        c = lo + k * step
        if c > hi or (c == hi and not include_hi):
            break
        if not (c == lo and not include_lo):
            out.append(c)
        k += 1
    return out


# ---------------------------------------------------------------------------
# Certified comparisons
# ---------------------------------------------------------------------------

Side = Union[Fraction, Callable[[Precision], Interval]]


def decide(lhs: Side, rhs: Side, strict: bool, prec: Precision) -> str:
    """Decide lhs < rhs (strict) or lhs <= rhs, refining precision as needed."""
    if isinstance(lhs, (int, Fraction)) and isinstance(rhs, (int, Fraction)):
        ok = lhs < rhs if strict else lhs <= rhs
        return HOLDS if ok else FAILS
    for bits in prec.ladder():
        p = Precision(bits, prec.max_bits)
        try:
            L = lhs(p) if callable(lhs) else Interval.exact(lhs, bits)
            R = rhs(p) if callable(rhs) else Interval.exact(rhs, bits)
        except PrecisionExhausted:
            return UNDECIDED
        if strict:
            if L.hi < R.lo:
                return HOLDS
            if L.lo >= R.hi:
                return FAILS
        else:
            if L.hi <= R.lo:
                return HOLDS
            if L.lo > R.hi:
                return FAILS
    return UNDECIDED


def decide_positive(value: Callable[[Precision], Interval], prec: Precision) -> str:
    """Decide value > 0."""
    return decide(Fraction(0), value, True, prec)


def all_of(verdicts: Iterable[str]) -> str:
    vs = list(verdicts)
    if any(v == FAILS for v in vs):
        return FAILS
    if all(v == HOLDS for v in vs):
        return HOLDS
    return UNDECIDED


def log2_abs(x: Union[FieldElement, Fraction, int], p: Precision) -> Interval:
    """Enclosure of log2|x| under the distinguished embedding (x != 0)."""
    if isinstance(x, FieldElement):
        if x.is_rational():
            x = x.as_rational()
        else:
            return iv_log2(x.modulus(p))
    q = abs(_q(x))
    if q == 0:
        raise ValueError("log2 of zero")
    return iv_log2(Interval.point(q, p.bits))


def _log_bound(L: Interval, coef: Fraction, alpha: Fraction, sign: int) -> Interval:
    """coef * L + sign * L^alpha, the log2 of |a|^coef 2^(sign log2^alpha |a|)."""
    return L * coef + log2_power(L, alpha) * sign


# ---------------------------------------------------------------------------
# Hypothesis outcomes and reports
# ---------------------------------------------------------------------------

@dataclass
class HypothesisOutcome:
    label: str
    description: str
    ns: list
    verdicts: list
    note: str = ""

    @property
    def first_failing(self) -> Optional[int]:
        for n, v in zip(self.ns, self.verdicts):
            if v == FAILS:
                return n
        return None

    @property
    def overall(self) -> str:
        return all_of(self.verdicts)

    def to_json(self) -> dict:
        out = {"label": self.label, "description": self.description,
               "verdicts": list(self.verdicts), "overall": self.overall,
               "first_failing": self.first_failing}
        if self.note:
            out["note"] = self.note
        return out


def _outcome(label: str, desc: str, ns: Sequence[int], fn: Callable[[int], str], note: str = "") -> HypothesisOutcome:
    return HypothesisOutcome(label, desc, list(ns), [fn(n) for n in ns], note)


def _require_positive_integer(x: FieldElement, what: str) -> int:
    if not x.is_rational() or x.as_rational().denominator != 1:
        raise NotIntegerCoords(f"{what} must be a rational integer, got {x!r}")
    return int(x.as_rational())


class _Ctx:
    """Per-check cache of log2|a_n| enclosures keyed by (n, bits)."""

    def __init__(self, spec: SequenceSpec, params: CriterionParams, prec: Precision):
        self.spec, self.params, self.prec = spec, params, prec
        self._logs: dict = {}

    def a(self, n):
        return self.spec.a(n)

    def L(self, n: int, p: Precision) -> Interval:
        key = (n, p.bits)
        hit = self._logs.get(key)
        if hit is None:
            hit = log2_abs(self.spec.a(n), p)
            self._logs[key] = hit
        return hit

    def growth_lower(self, n: int) -> str:
        """n^(1+eps) <= |a_n| as (1+eps) log2 n <= log2|a_n|."""
        eps = self.params.epsilon
        a = self.a(n)
        if a.is_rational() and eps.denominator == 1:
            return HOLDS if n ** (1 + int(eps)) <= abs(a.as_rational()) else FAILS
        if n == 1:
            return HOLDS if _abs_ge_one(a, self.prec) else FAILS
        return decide(lambda p: log2_abs(n, p) * (1 + eps), lambda p: self.L(n, p), False, self.prec)

    def monotone(self, n: int, strict: bool = False) -> str:
        """|a_n| <= |a_{n+1}| (or <)."""
        a, b = self.a(n), self.a(n + 1)
        if a.is_rational() and b.is_rational():
            x, y = abs(a.as_rational()), abs(b.as_rational())
            return HOLDS if (x < y if strict else x <= y) else FAILS
        if not strict and (a == b or a == -b):
            return HOLDS
        return decide(lambda p: self.L(n, p), lambda p: self.L(n + 1, p), strict, self.prec)

    def bounded_by_power(self, lhs_abs, n: int, coef: Fraction, sign: int = 1,
                         strict: bool = False) -> str:
        """|lhs| <= |a_n|^coef * 2^(sign * log2^alpha |a_n|)."""
        if isinstance(lhs_abs, FieldElement) and lhs_abs.is_rational():
            lhs_abs = lhs_abs.as_rational()
        if isinstance(lhs_abs, (int, Fraction)) and lhs_abs == 0:
            return HOLDS if not strict else HOLDS
        alpha = self.params.alpha

        def rhs(p):
            return _log_bound(self.L(n, p), coef, alpha, sign)

        try:
            return decide(lambda p: log2_abs(lhs_abs, p), rhs, strict, self.prec)
        except ValueError:
            return UNDECIDED

    def bounded_below_by_power(self, lhs_abs, n: int, coef: Fraction, sign: int) -> str:
        """|lhs| >= |a_n|^coef * 2^(sign * log2^alpha |a_n|)."""
        alpha = self.params.alpha
        return decide(lambda p: _log_bound(self.L(n, p), coef, alpha, sign),
                      lambda p: log2_abs(lhs_abs, p), False, self.prec)


def _abs_ge_one(a: FieldElement, prec: Precision) -> bool:
    if a.is_rational():
        return abs(a.as_rational()) >= 1
    return decide(Fraction(1), lambda p: a.modulus(p), False, prec) == HOLDS


# -- zeta handling ------------------------------------------------------------

ZetaFn = Callable[[Precision], IntervalComplex]


def _zeta_fn(z) -> ZetaFn:
    if isinstance(z, FieldElement):
        return lambda p: z.value(p)
    if isinstance(z, IntervalComplex):
        return lambda p: z
    if isinstance(z, (int, Fraction)):
        return lambda p: IntervalComplex.exact(z, 0, p.bits)
    if callable(z):
        return z
    raise TypeError(f"unsupported zeta {z!r}")


def zeta_recipes(spec: SequenceSpec) -> list[tuple[str, ZetaFn]]:
    """Candidate zeta values in the order the worked example suggests."""
    out: list[tuple[str, ZetaFn]] = [("1", _zeta_fn(Fraction(1)))]
    x = spec.x
    if x is None and len(spec.basis) == 2 and spec.basis[0] == 1:
        x = spec.basis[1]
    if x is None:
        return out
    if not x.field.is_real_embedding(x.field.distinguished):
        out.append(("-i*Im(x)", lambda p: IntervalComplex(Interval.exact(0, p.bits), -x.value(p).im)))
    K = x.field
    s5 = K.sqrt_of_integer(5)
    if s5 is not None:
        phibar = (1 - s5) / 2
        z = x - phibar
        if not z.is_zero():
            out.append(("x - phibar", _zeta_fn(z)))
    else:
        def numeric(p):
            from .exactmath import iv_sqrt
            pb = (1 - iv_sqrt(Interval.exact(5, p.bits))) / 2
            return x.value(p) - IntervalComplex.real(pb)
        out.append(("x - phibar", numeric))
    return out


def _real_part_positive(z: ZetaFn, w: FieldElement, prec: Precision) -> str:
    def re(p):
        return (z(p) * w.value(p)).re
    try:
        return decide_positive(re, prec)
    except PrecisionExhausted:
        return UNDECIDED


def _zeta_outcome(label: str, desc: str, spec: SequenceSpec, zeta, ns, w_fn, prec) -> tuple[HypothesisOutcome, str]:
    """Run the zeta positivity hypothesis, trying recipes when zeta is absent."""
    if zeta is not None:
        z = _zeta_fn(zeta)
        return _outcome(label, desc, ns, lambda n: _real_part_positive(z, w_fn(n), prec)), "given"
    for name, z in zeta_recipes(spec):
        verdicts = [_real_part_positive(z, w_fn(n), prec) for n in ns]
        if all(v == HOLDS for v in verdicts):
            return HypothesisOutcome(label, desc, list(ns), verdicts, f"zeta = {name}"), name
    return (HypothesisOutcome(label, desc, list(ns), [UNDECIDED] * len(ns),
                              "no zeta recipe succeeded"), "none")


# ---------------------------------------------------------------------------
# Hypothesis checks
# ---------------------------------------------------------------------------

def _n_list(n_range) -> list[int]:
    lo, hi = n_range
    if lo < 1 or hi < lo:
        raise ValueError(f"bad n range {n_range}")
    return list(range(lo, hi + 1))


def check_hypotheses(spec: SequenceSpec, params: CriterionParams, n_range,
                     prec: Optional[Precision] = None) -> tuple[list[HypothesisOutcome], str]:
    """Certified per-n verdicts for the hypotheses of Theorem 1.4, 1.6, 1.7
    or Corollary 7.1.  Returns the outcomes and the zeta recipe used."""
    prec = prec or Precision()
    params.validate(spec.field.degree)
    ns = _n_list(n_range)
    spec.check_range(ns[0], ns[-1])
    ctx = _Ctx(spec, params, prec)
    t = params.theorem
    zeta = params.zeta if params.zeta is not None else spec.zeta
    P = params
    out: list[HypothesisOutcome] = []
    recipe = "n/a"

    if t in ("1.4", "7.1"):
        for n in ns + [ns[-1] + 1]:
            _require_positive_integer(spec.a(n), f"a_{n}")
        out.append(_outcome("(2)", "n^(1+eps) <= a_n <= a_(n+1)", ns,
                            lambda n: all_of([ctx.growth_lower(n), ctx.monotone(n)])))
        if t == "7.1":
            for n in ns:
                b = _require_positive_integer(spec.b(n), f"b_{n}")
                if b <= 0:
                    raise NotIntegerCoords(f"b_{n} must be positive")
            out.append(_outcome("(47)", "b_n <= a_n^beta 2^(log2^alpha a_n)", ns,
                                lambda n: ctx.bounded_by_power(spec.b(n), n, P.beta)))
            return out, recipe
        out.append(_outcome(
            "(3)", "|b_n| <= a_n^beta 2^(log2^alpha a_n) and |b_(i,n)| <= a_n^y 2^(log2^alpha a_n)", ns,
            lambda n: all_of([ctx.bounded_by_power(spec.b(n), n, P.beta)] +
                             [ctx.bounded_by_power(Fraction(abs(c)), n, P.y) for c in spec.b_coords(n)])))
        o, recipe = _zeta_outcome("(4)", "Re(zeta b_n) > 0", spec, zeta, ns, spec.b, prec)
        out.append(o)
        return out, recipe

    if t in ("1.6", "1.7"):
        out.append(_outcome("(6)", "n^(1+eps) <= |a_n| <= |a_(n+1)|", ns,
                            lambda n: all_of([ctx.growth_lower(n), ctx.monotone(n)])))

        def h7(n):
            nk = abs(norms(spec.a(n))[1])
            return ctx.bounded_below_by_power(nk, n, P.eta1, -1)

        out.append(_outcome("(7)", "|N_K(a_n)| >= |a_n|^eta1 2^(-log2^alpha |a_n|)", ns, h7))

        def h8(n):
            coords = spec.a_coords(n)
            r = 0
            from math import gcd
            for c in coords:
                r = gcd(r, c)
            conj = norms(spec.a(n) / r)[0]
            return ctx.bounded_by_power(abs(conj) * r, n, P.eta2)

        out.append(_outcome("(8)", "r_n |N(a_n/r_n)| <= |a_n|^eta2 2^(log2^alpha |a_n|)", ns, h8))

        if t == "1.6":
            def hb(n):
                b = _require_positive_integer(spec.b(n), f"b_{n}")
                if b <= 0:
                    return FAILS
                return ctx.bounded_by_power(Fraction(b), n, P.beta)

            out.append(_outcome("b_n", "0 < b_n <= |a_n|^beta 2^(log2^alpha |a_n|)", ns, hb))
            out.append(_outcome("a_(i,n)", "|a_(i,n)| <= |a_n|^y 2^(log2^alpha |a_n|)", ns,
                                lambda n: all_of(ctx.bounded_by_power(Fraction(abs(c)), n, P.y)
                                                 for c in spec.a_coords(n))))
            o, recipe = _zeta_outcome("zeta", "Re(zeta a_n) > 0", spec, zeta, ns, spec.a, prec)
            out.append(o)
            return out, recipe

        out.append(_outcome(
            "(9)", "|a_(i,n)| <= |a_n|^y1 2^(..) and |b_(i,n)| <= |a_n|^y2 2^(..)", ns,
            lambda n: all_of([ctx.bounded_by_power(Fraction(abs(c)), n, P.y1) for c in spec.a_coords(n)] +
                             [ctx.bounded_by_power(Fraction(abs(c)), n, P.y2) for c in spec.b_coords(n)])))
        out.append(_outcome("(10)", "|b_n| <= |a_n|^beta 2^(log2^alpha |a_n|)", ns,
                            lambda n: ctx.bounded_by_power(spec.b(n), n, P.beta)))
        o, recipe = _zeta_outcome("(11)", "Re(zeta a_n/b_n) > 0", spec, zeta, ns,
                                  lambda n: spec.a(n) / spec.b(n), prec)
        out.append(o)
        return out, recipe

    raise ValueError(f"check_hypotheses covers 1.4, 1.6, 1.7 and 7.1; use check_classical for {t}")


def check_classical(spec: SequenceSpec, variant: str, params: CriterionParams, n_range,
                    prec: Optional[Precision] = None, d: Optional[int] = None) -> list[HypothesisOutcome]:
    """Hypotheses of the Erdos, Hancl or Andersen-Kristensen theorems."""
    prec = prec or Precision()
    if variant not in CLASSICAL:
        raise ValueError(f"variant must be one of {sorted(CLASSICAL)}")
    t = CLASSICAL[variant]
    if params.theorem != t:
        params = replace(params, theorem=t)
    params.validate(spec.field.degree)
    ns = _n_list(n_range)
    spec.check_range(ns[0], ns[-1])
    ctx = _Ctx(spec, params, prec)
    eps = params.epsilon

    if t == "1.1":
        for n in ns + [ns[-1] + 1]:
            _require_positive_integer(spec.a(n), f"a_{n}")
        return [
            _outcome("a_n >= n^(1+eps)", "a_n >= n^(1+eps)", ns, ctx.growth_lower),
            _outcome("increasing", "a_n < a_(n+1)", ns, lambda n: ctx.monotone(n, strict=True)),
        ]
    if t == "1.2":
        for n in ns + [ns[-1] + 1]:
            _require_positive_integer(spec.a(n), f"a_{n}")
            _require_positive_integer(spec.b(n), f"b_{n}")

        def strict_lower(n):
            return decide(lambda p: log2_abs(n, p) * (1 + eps), lambda p: ctx.L(n, p), True, prec) \
                if n > 1 else (HOLDS if spec.a(n).as_rational() > 1 else FAILS)

        exp = eps / (1 + eps)
        return [
            _outcome("n^(1+eps) < a_n <= a_(n+1)", "n^(1+eps) < a_n <= a_(n+1)", ns,
                     lambda n: all_of([strict_lower(n), ctx.monotone(n)])),
            _outcome("(1)", "b_n < a_n^(eps/(1+eps)) 2^(-log2^alpha a_n)", ns,
                     lambda n: ctx.bounded_by_power(spec.b(n), n, exp, sign=-1, strict=True)),
        ]
    # Andersen-Kristensen
    dd = d or spec.field.degree

    def integral(n):
        a = spec.a(n)
        return HOLDS if denominator(a) == 1 and degree(a) <= dd else FAILS

    def house_is_modulus(n):
        a = spec.a(n)
        if a.is_rational() or (a * a).is_rational():
            return HOLDS
        return decide(lambda p: house(a, p), lambda p: a.modulus(p), False, prec)

    def lower(n):
        a = spec.a(n)
        if n == 1:
            return HOLDS if _abs_ge_one(a, prec) else FAILS
        return decide(lambda p: log2_abs(n, p) * (1 + eps), lambda p: iv_log2(house(a, p)), False, prec)

    def re_pos(n):
        return decide_positive(lambda p: spec.a(n).value(p).re, prec)

    def im_pos(n):
        return decide_positive(lambda p: spec.a(n).value(p).im, prec)

    re_out = _outcome("Re(a_n) > 0", "Re(a_n) > 0", ns, re_pos)
    sign_out = re_out
    if re_out.overall != HOLDS:
        im_out = _outcome("Im(a_n) > 0", "Im(a_n) > 0", ns, im_pos)
        if im_out.overall == HOLDS:
            sign_out = im_out
    return [
        _outcome("algebraic integer", f"denominator(a_n) = 1 and deg a_n <= {dd}", ns, integral),
        _outcome("n^(1+eps) <= house", "n^(1+eps) <= house(a_n)", ns, lower),
        _outcome("house = |a_n|", "house(a_n) = |a_n|", ns, house_is_modulus),
        _outcome("|a_n| <= |a_(n+1)|", "|a_n| <= |a_(n+1)|", ns, ctx.monotone),
        sign_out,
    ]


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

@dataclass
class VerificationReport:
    theorem: str
    n_range: tuple
    outcomes: list
    bases: list
    growth_verdicts: dict
    growth: str
    overall: str
    reasons: list = dc_field(default_factory=list)
    delta: Fraction = Fraction(1, 100)
    profile: Optional[GrowthProfile] = None
    zeta_recipe: str = "n/a"
    index_convention: Optional[str] = None
    precision_bits: int = 256
    example: Optional[str] = None
    params: Optional[CriterionParams] = None
    notes: list = dc_field(default_factory=list)
    irrationality: Optional[str] = None

    @property
    def criteria_met(self) -> bool:
        return self.overall in ("TranscendenceCriteriaMet", "IrrationalityCriteriaMet")

    def to_json(self) -> dict:
        out = {
            "theorem": self.theorem,
            "example": self.example,
            "n_range": list(self.n_range),
            "params": self.params.to_json() if self.params else None,
            "hypotheses": [o.to_json() for o in self.outcomes],
            "bases": {b.name: b.symbolic() for b in self.bases},
            "bases_numeric": {b.name: (format_directed(b.value(self.delta), 12)
                                       if not b.infinite else "infinite") for b in self.bases},
            "delta": fmt_q(self.delta),
            "growth_base": fmt_q(self.profile.g) if self.profile else None,
            "growth_by_base": {k: str(v) for k, v in self.growth_verdicts.items()},
            "growth": self.growth,
            "overall": self.overall,
            "reasons": list(self.reasons),
            "irrationality": self.irrationality,
            "zeta": self.zeta_recipe,
            "index_convention": self.index_convention,
            "precision_bits": self.precision_bits,
        }
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    def to_text(self) -> str:
        lines = [f"Theorem {self.theorem}" + (f" (example {self.example})" if self.example else "")
                 + f", n in [{self.n_range[0]}, {self.n_range[1]}], {self.precision_bits} bits"]
        if self.index_convention:
            lines.append(f"  index convention: {self.index_convention}")
        for o in self.outcomes:
            extra = f"  [{o.note}]" if o.note else ""
            lines.append(f"  {o.label:<14} {o.overall:<9} {' '.join(v[0] for v in o.verdicts)}{extra}")
        g = fmt_q(self.profile.g) if self.profile else "?"
        for b in self.bases:
            num = "infinite" if b.infinite else f"{float(b.value(self.delta)):.6g}"
            lines.append(f"  base {b.name:<16} {b.symbolic():<10} = {num:<10} vs g = {g}: "
                         f"{self.growth_verdicts.get(b.name, '-')}")
        lines.append(f"  overall: {self.overall}" + (f" ({'; '.join(self.reasons)})" if self.reasons else ""))
        if self.irrationality and self.overall == "NotApplicable":
            lines.append(f"  irrationality criterion alone: {self.irrationality}")
        for note in self.notes:
            lines.append(f"  note: {note}")
        return "\n".join(lines)


_TRANSCENDENCE = ("transcendence", "transcendence_1", "transcendence_2")


def _combine_growth(vs: Sequence[Growth]) -> Growth:
    for g in (Growth.BOUNDED, Growth.BOUNDARY_BOUNDED, Growth.BOUNDARY_DIVERGES):
        if g in vs:
            return g
    return Growth.DIVERGES


def assemble_report(outcomes: Sequence[HypothesisOutcome], bases: Sequence[Base],
                    profile: Optional[GrowthProfile], theorem: str = "?", n_range=(0, 0),
                    delta=Fraction(1, 100), **extra) -> VerificationReport:
    """Fold hypothesis outcomes and growth verdicts into the overall verdict."""
    verdicts = {b.name: divergence_verdict(profile, b, delta) for b in bases} if profile else {}
    trans = [verdicts[b.name] for b in bases if b.name in _TRANSCENDENCE and b.name in verdicts]
    irr = [verdicts[b.name] for b in bases if b.name == "irrationality" and b.name in verdicts]
    growth = _combine_growth(trans) if trans else (_combine_growth(irr) if irr else None)
    failed = [o.label for o in outcomes if o.overall == FAILS]
    undecided = [o.label for o in outcomes if o.overall == UNDECIDED]
    reasons: list[str] = []
    if failed:
        reasons = [f"hypothesis {lab} fails at n={o.first_failing}"
                   for lab, o in ((o.label, o) for o in outcomes) if lab in failed]
        reasons += [f"growth: base {b.name} {str(verdicts[b.name])}" for b in bases
                    if b.name in verdicts and not verdicts[b.name].diverges]
        overall = "NotApplicable"
    elif undecided:
        overall = "Inconclusive"
        reasons = [f"hypothesis {lab} undecided" for lab in undecided]
    elif profile is None:
        overall = "Inconclusive"
        reasons = ["no growth profile"]
    elif trans and all(v.diverges for v in trans):
        overall = "TranscendenceCriteriaMet"
    elif not trans and irr and all(v.diverges for v in irr):
        overall = "IrrationalityCriteriaMet"
    else:
        overall = "NotApplicable"
        reasons = [f"growth: base {b.name} {str(verdicts[b.name])}" for b in bases
                   if b.name in verdicts and not verdicts[b.name].diverges]
    irrationality = None
    if irr and not failed and not undecided:
        irrationality = "IrrationalityCriteriaMet" if all(v.diverges for v in irr) else "NotApplicable"
    extra.setdefault("irrationality", irrationality)
    return VerificationReport(theorem, tuple(n_range), list(outcomes), list(bases), verdicts,
                              str(growth) if growth else "unknown", overall, reasons, _q(delta),
                              profile, **extra)


def verify(spec: SequenceSpec, params: CriterionParams, n_range,
           prec: Optional[Precision] = None) -> VerificationReport:
    """check_hypotheses + required_bases + divergence verdicts in one call."""
    prec = prec or Precision()
    d = spec.field.degree
    t = params.theorem
    if t in CLASSICAL.values():
        variant = {v: k for k, v in CLASSICAL.items()}[t]
        outcomes, recipe = check_classical(spec, variant, params, n_range, prec), "n/a"
    else:
        outcomes, recipe = check_hypotheses(spec, params, n_range, prec)
    bases = required_bases(t, d, params)
    return assemble_report(outcomes, bases, spec.profile, t, n_range, params.delta,
                           zeta_recipe=recipe, index_convention=spec.index_convention,
                           precision_bits=prec.bits, example=None, params=params)


# ---------------------------------------------------------------------------
# Worked example cases
# ---------------------------------------------------------------------------

@dataclass
class ExampleCase:
    """One theorem applied to one rewriting of a worked example."""

    example: str
    theorem: str
    spec: SequenceSpec
    params: CriterionParams
    claim: str  # "applicable" | "not applicable"
    note: str = ""


def example_cases(id: str, index_convention: str = "adjacent", x=None,
                  literal_params: bool = False, delta=Fraction(1, 100)) -> list[ExampleCase]:
    delta = _q(delta)
    cases: list[ExampleCase] = []

    def case(theorem, spec, claim, note="", **over):
        params = CriterionParams.from_exponents(theorem, spec.exponents, delta=delta, **over)
        cases.append(ExampleCase(id, theorem, spec, params, claim, note))

    if id == "2.1":
        spec = builtin_example("2.1", index_convention=index_convention, x=x)
        case("1.4", spec, "applicable")
    elif id == "2.4":
        case("1.6", builtin_example("2.4", "1.6"), "applicable")
        case("1.4", builtin_example("2.4", "1.4"), "applicable")
    elif id == "2.5":
        case("1.6", builtin_example("2.5", "1.6"), "applicable")
        case("1.4", builtin_example("2.5", "1.4"), "not applicable",
             "rewriting with a_n = F_(7^n) forces y >= 2")
    elif id == "2.6":
        case("1.4", builtin_example("2.6", "1.4", index_convention), "applicable")
        case("1.7", builtin_example("2.6", "1.7", index_convention), "applicable")
    elif id == "2.7":
        case("1.7", builtin_example("2.7", literal_params=literal_params), "applicable",
             "" if literal_params else "y1 = 1, y2 = 1/2 (the stated y1 = 1/2 violates y1 >= 1; "
                                       "the swap leaves both bases unchanged)")
    else:
        raise ValueError(f"unknown example {id!r}")
    return cases


def run_example_case(c: ExampleCase, n_range, prec: Optional[Precision] = None) -> VerificationReport:
    rep = verify(c.spec, c.params, n_range, prec)
    rep.example = c.example
    applicable = rep.overall == "TranscendenceCriteriaMet"
    agrees = applicable == (c.claim == "applicable")
    rep.notes.append(f"stated claim: {c.claim}; "
                     + ("reproduced" if agrees else "DISCREPANCY (see growth verdicts)"))
    if c.note:
        rep.notes.append(c.note)
    return rep
