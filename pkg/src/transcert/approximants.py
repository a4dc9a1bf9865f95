"""Constructive content of the proofs: partial sums, certified sum
enclosures, the (q, p_1..p_d) approximants, the Z_N quantity and the tail
lemmas.

Terms are evaluated as ``value(b_n) / (value(a_n) c_n)`` rather than by
forming the exact quotient first: b_n/a_n usually has enormous coordinates
that cancel, while a_n and b_n separately evaluate cheaply to high relative
accuracy.

The infinite tail of a series is bounded by ``2 |t_N1|`` after a certified
ratio test (every checked ratio ``|t_(n+1)/t_n| <= 1/2``) on a short window;
when the window cannot be certified RatioNotCertified is raised rather than
returning an unsound bound.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from .criteria import FAILS, HOLDS, UNDECIDED, CriterionParams, decide, fmt_q, log2_abs
from .errors import (
    CeilingExceeded,
    IntegralityViolated,
    NotGalois,
    NotIntegerCoords,
    NotRationalA,
    PrecisionExhausted,
    PrecondViolated,
    RatioNotCertified,
)
from .exactmath import (
    Interval,
    IntervalComplex,
    Precision,
    format_directed,
    iv_exp2,
    iv_log2,
    log2_power,
)
from .linalg import lcm
from .numberfield import (
    FieldElement,
    coords_over,
    denominator,
    height,
    house,
    house_linear_constant,
    minimal_polynomial,
    norms,
)
from .sequences import SequenceSpec

CSeq = Union[None, Sequence[int], Callable[[int], int]]


def _c_fn(spec: SequenceSpec, c_seq: CSeq) -> Callable[[int], int]:
    if c_seq is None:
        return spec.c
    if callable(c_seq):
        return lambda n: int(c_seq(n))
    vals = list(c_seq)
    return lambda n: int(vals[n - 1]) if n <= len(vals) else 1


def _is_real(spec: SequenceSpec) -> bool:
    K = spec.field
    return K.is_real_embedding(K.distinguished)


# ---------------------------------------------------------------------------
# Partial sums and enclosures
# ---------------------------------------------------------------------------

def partial_sum(spec: SequenceSpec, c_seq: CSeq, N: int) -> FieldElement:
    """Exact s_N = sum_{n<N} b_n/(a_n c_n)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    c = _c_fn(spec, c_seq)
    s = spec.field.zero
    for n in range(1, N):
        s = s + spec.b(n) / (spec.a(n) * c(n))
    return s


def term_value(spec: SequenceSpec, c: Callable[[int], int], n: int, prec: Precision) -> IntervalComplex:
    """Enclosure of b_n/(a_n c_n) with relative accuracy about 2^-bits."""
    a = spec.a(n).value(prec)
    b = spec.b(n).value(prec)
    return b / (a * c(n))


def term_log2(spec: SequenceSpec, c: Callable[[int], int], n: int, prec: Precision) -> Interval:
    """Enclosure of log2 |b_n/(a_n c_n)|."""
    return log2_abs(spec.b(n), prec) - log2_abs(spec.a(n), prec) - iv_log2(Interval.exact(c(n), prec.bits))


def _available(spec: SequenceSpec, n: int) -> bool:
    try:
        spec.term(n)
        return True
    except CeilingExceeded:
        return False


def _certify_ratios(spec, c, start: int, prec: Precision, window: int = 4) -> int:
    """Certify |t_(n+1)| <= |t_n|/2 for n in [start, start+window-1] as far as
    terms are available.  Returns the number of ratios certified."""
    checked = 0
    for n in range(start, start + window):
        if not _available(spec, n + 1):
            break
        verdict = decide(lambda p: term_log2(spec, c, n + 1, p) + 1,
                         lambda p: term_log2(spec, c, n, p), False, prec)
        if verdict != HOLDS:
            raise RatioNotCertified(f"|t_{n + 1}/t_{n}| <= 1/2 not certified ({verdict})")
        checked += 1
    if checked == 0:
        raise RatioNotCertified(f"no term beyond n={start} is computable to test the ratio")
    return checked


@dataclass
class TailEnclosure:
    start: int
    cutoff: int  # N1: terms start..N1-1 summed, 2|t_N1| bounds the rest
    value: IntervalComplex
    ratios_checked: int

    @property
    def real(self) -> Interval:
        return self.value.re

    def abs(self) -> Interval:
        return abs(self.value)


def tail_enclosure(spec: SequenceSpec, c_seq: CSeq, start: int, prec: Optional[Precision] = None,
                   n0: Optional[int] = None) -> TailEnclosure:
    """Certified enclosure of sum_{n >= start} b_n/(a_n c_n).

    Terms are added until ``2|t_N1|`` is below ``2^-bits |t_start|`` (or the
    ceiling is reached); the ratio test is certified from max(start, n0).
    """
    prec = prec or Precision()
    c = _c_fn(spec, c_seq)
    if spec.length is not None:
        acc = IntervalComplex.exact(0, 0, prec.bits)
        for n in range(start, spec.length + 1):
            acc = acc + term_value(spec, c, n, prec)
        return TailEnclosure(start, spec.length + 1, acc, 0)
    n0 = max(start, n0 or start)
    checked = _certify_ratios(spec, c, n0, prec)
    t0 = abs(term_value(spec, c, start, prec))
    target = t0.lo * Fraction(1, 1 << prec.bits)
    acc = IntervalComplex.exact(0, 0, prec.bits)
    n = start
    while True:
        t = term_value(spec, c, n, prec)
        if n >= n0 and (2 * abs(t).hi <= target or not _available(spec, n + 1)):
            break
        acc = acc + t
        n += 1
    bound = 2 * abs(t).hi
    slack = Interval(-bound, bound, prec.bits)
    im_slack = slack if not _is_real(spec) else Interval.exact(0, prec.bits)
    value = IntervalComplex(acc.re + slack, acc.im + im_slack)
    return TailEnclosure(start, n, value, checked)


def sum_enclosure(spec: SequenceSpec, c_seq: CSeq = None, prec: Optional[Precision] = None,
                  n0: Optional[int] = None) -> Interval:
    """Certified enclosure of the full series (real part for real embeddings)."""
    enc = tail_enclosure(spec, c_seq, 1, prec, n0)
    return enc.real if _is_real(spec) else enc.value


# ---------------------------------------------------------------------------
# Approximants
# ---------------------------------------------------------------------------

@dataclass
class Approximant:
    N: int
    q: int
    p: list
    err: Interval
    checks: dict = dc_field(default_factory=dict)
    info: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.q < 1:
            raise IntegralityViolated(f"q = {self.q} is not a positive integer")

    def to_json(self) -> dict:
        out = {
            "N": self.N,
            "q": str(self.q),
            "p": [str(v) for v in self.p],
            "err": {"lo": format_directed(self.err.lo, 12), "hi": format_directed(self.err.hi, 12, upper=True)},
            "checks": dict(self.checks),
        }
        if self.info:
            out["info"] = dict(self.info)
        return out


def _log2_int(x: int, p: Precision) -> Interval:
    return iv_log2(Interval.exact(abs(x), p.bits))


_LOG_FLOOR = -(1 << 62)


def _log2_upper(t: Interval) -> Interval:
    """log2 enclosure of a nonnegative quantity whose lower end may be 0."""
    if t.lo > 0:
        return iv_log2(t)
    hi = iv_log2(Interval.exact(t.hi, t.bits)).hi
    return Interval(Fraction(_LOG_FLOOR), hi, t.bits)


def _check_err_bound(err: Interval, q: int, exponent: Fraction, power_coef: int, alpha: Fraction,
                     extra_loglog: bool, prec: Precision) -> str:
    """err < 1 / ((log2^2 q)^[extra] 2^(power_coef log2^((1+2a)/3) q) q^exponent)."""
    if q < 2:
        return UNDECIDED
    if err.hi == 0:
        return HOLDS
    e3 = (1 + 2 * alpha) / 3

    def rhs(p):
        Lq = _log2_int(q, p)
        r = -(log2_power(Lq, e3) * power_coef) - Lq * exponent
        if extra_loglog:
            r = r - iv_log2(Lq) * 2
        return r

    return decide(lambda p: _log2_upper(Interval(err.lo, err.hi, p.bits)), rhs, True, prec)


def _check_p_bound(p_vals: Sequence[int], q: int, exponents: Sequence[Fraction], alpha: Fraction,
                   E: Fraction, prec: Precision) -> str:
    """|p_i| <= E 2^(log2^((1+2a)/3) q) q^(y_i) for every i."""
    e3 = (1 + 2 * alpha) / 3
    verdicts = []
    for pi, yi in zip(p_vals, exponents):
        if pi == 0:
            verdicts.append(HOLDS)
            continue

        def rhs(p, yi=yi):
            Lq = _log2_int(q, p)
            return iv_log2(Interval.exact(E, p.bits)) + log2_power(Lq, e3) + Lq * yi

        verdicts.append(decide(lambda p, pi=pi: _log2_int(pi, p), rhs, False, prec))
    if any(v == FAILS for v in verdicts):
        return FAILS
    return HOLDS if all(v == HOLDS for v in verdicts) else UNDECIDED


def smallest_power_of_two_E(p_vals: Sequence[int], q: int, exponents: Sequence[Fraction],
                            alpha: Fraction, prec: Optional[Precision] = None) -> int:
    """Smallest k such that E = 2^k makes (15) hold for this (q, p)."""
    prec = prec or Precision()
    e3 = (1 + 2 * alpha) / 3
    need = None
    for pi, yi in zip(p_vals, exponents):
        if pi == 0:
            continue
        Lq = _log2_int(q, prec)
        gap = _log2_int(pi, prec) - log2_power(Lq, e3) - Lq * yi
        k = math.ceil(gap.hi)
        need = k if need is None else max(need, k)
    return need if need is not None else -(1 << 30)


def _abs_err(spec, c_seq, N: int, prec: Precision) -> Interval:
    """Enclosure of |sum_{n >= N} b_n/(a_n c_n)|."""
    return tail_enclosure(spec, c_seq, N, prec).abs()


def build_q_p_rational(spec: SequenceSpec, c_seq: CSeq, N: int, M, E=1,
                       params: Optional[CriterionParams] = None,
                       prec: Optional[Precision] = None) -> Approximant:
    """Approximant with q = prod_{n<N} a_n c_n for rational integer a_n,
    and verdicts for (14) with the given M and (15) with the given E."""
    prec = prec or Precision()
    params = params or CriterionParams("1.4", **{k: v for k, v in spec.exponents.items()
                                                if k in ("beta", "y")})
    M, E = Fraction(M), Fraction(E)
    c = _c_fn(spec, c_seq)
    basis = list(spec.basis)
    q = 1
    coeff = [Fraction(0)] * len(basis)
    for n in range(1, N):
        a = spec.a(n)
        if not a.is_rational():
            raise NotRationalA(f"a_{n} = {a!r} is not rational")
        av = a.as_rational()
        if av.denominator != 1 or av <= 0:
            raise NotIntegerCoords(f"a_{n} = {av} is not a positive integer")
        q *= int(av) * c(n)
        bc = coords_over(spec.b(n), basis) if spec.b_coords_fn is None else spec.b_coords(n)
        for i, v in enumerate(bc):
            coeff[i] += Fraction(v) / (int(av) * c(n))
    scale = lcm(*(Fraction(q * v).denominator for v in coeff)) if coeff else 1
    q *= scale
    p = [q * v for v in coeff]
    if any(v.denominator != 1 for v in p):
        raise IntegralityViolated("p_i is not an integer")
    p = [int(v) for v in p]
    s_N = partial_sum(spec, c_seq, N)
    combo = sum((pi * x for pi, x in zip(p, basis)), spec.field.zero)
    if not (s_N * q - combo).is_zero():
        raise IntegralityViolated("q s_N differs from sum p_i x_i")
    err = _abs_err(spec, c_seq, N, prec)
    d = len(basis)
    ys = [params.y] * d
    checks = {
        "(14)": _check_err_bound(err, q, M, d, params.alpha, True, prec),
        "(15)": _check_p_bound(p, q, ys, params.alpha, E, prec),
    }
    info = {"M": fmt_q(M), "E": fmt_q(E), "scale": str(scale),
            "smallest_E": f"2^{smallest_power_of_two_E(p, q, ys, params.alpha, prec)}"}
    return Approximant(N, q, p, err, checks, info)


def galois_constants(spec: SequenceSpec) -> tuple[int, Fraction]:
    """kappa and c: the lcm of denominators and the largest coordinate of
    pi_i(prod_k g_k(x_(j_k))) over d' | d, basis indices and automorphisms."""
    K = spec.field
    if not K.is_galois():
        raise NotGalois(f"{K!r} is not Galois; its Galois closure is not constructed")
    autos = range(len(K.automorphisms()))
    basis = list(spec.basis)
    d = K.degree
    images = {(g, j): K.apply_automorphism(g, basis[j]) for g in autos for j in range(len(basis))}
    kappa, cmax = 1, Fraction(0)
    for dp in (k for k in range(1, d + 1) if d % k == 0):
        for js in itertools.product(range(len(basis)), repeat=dp):
            for gs in itertools.product(autos, repeat=dp):
                prod = K.one
                for g, j in zip(gs, js):
                    prod = prod * images[(g, j)]
                for v in coords_over(prod, basis):
                    kappa = lcm(kappa, v.denominator)
                    cmax = max(cmax, abs(v))
    return kappa, cmax


def _ceil_interval(x: Callable[[Precision], Interval], prec: Precision) -> int:
    """ceil of a real number given by enclosures, refined until determined."""
    for bits in prec.ladder():
        v = x(Precision(bits, prec.max_bits))
        if v.lo == v.hi:
            return math.ceil(v.lo)
        if math.ceil(v.lo) == math.ceil(v.hi) and v.lo.denominator != 1:
            return math.ceil(v.lo)
    raise PrecisionExhausted("ceiling of an irrational quantity not determined")


def build_q_p_general(spec: SequenceSpec, c_seq: CSeq, N: int, params: Optional[CriterionParams] = None,
                      prec: Optional[Precision] = None, galois: Optional[tuple] = None) -> Approximant:
    """The Galois-conjugate construction of q_N and p_(i,N) with verdicts for
    (20), (21) and (22).  Requires K Galois and the basis to be a Q-basis."""
    prec = prec or Precision()
    if params is None:
        params = CriterionParams.from_exponents("1.7", spec.exponents)
    K = spec.field
    kappa, cmax = galois or galois_constants(spec)
    d = K.degree
    basis = list(spec.basis)
    if len(basis) != d:
        raise ValueError("the approximant construction needs a Q-basis of K")
    c = _c_fn(spec, c_seq)
    eta2, alpha = params.eta2, params.alpha
    q = kappa
    per_n = []
    check22 = []
    s_N = K.zero
    for n in range(1, N):
        A = spec.a(n) * c(n)
        coords = [v * c(n) for v in spec.a_coords(n)]
        r = 0
        for v in coords:
            r = math.gcd(r, int(v))
        nrm = norms(A / r)[0]  # conjugate product N(a_n/r_n)
        base = abs(nrm) * r

        def target(p, A=A, base=base):
            LA = log2_abs(A, p)
            return iv_exp2(LA * eta2 - iv_log2(Interval.exact(base, p.bits)))

        mag = _ceil_interval(target, prec)
        a_tilde = mag if nrm > 0 else -mag
        factor = a_tilde * r * nrm
        if factor <= 0:
            raise IntegralityViolated(f"a~_{n} r_{n} N(a_{n}/r_{n}) = {factor} is not positive")

        def upper(p, A=A):
            LA = log2_abs(A, p)
            return LA * eta2 + log2_power(LA, alpha) + 1

        lower_ok = decide(lambda p, A=A: log2_abs(A, p) * eta2, lambda p, f=factor: _log2_int(f, p), False, prec)
        upper_ok = decide(lambda p, f=factor: _log2_int(f, p), upper, False, prec)
        check22.append(HOLDS if lower_ok == upper_ok == HOLDS else
                       (FAILS if FAILS in (lower_ok, upper_ok) else UNDECIDED))
        per_n.append({"n": n, "r": str(r), "norm": fmt_q(nrm), "a_tilde": str(a_tilde)})
        q *= factor
        s_N = s_N + spec.b(n) / A
    if q <= 0:
        raise IntegralityViolated(f"q_N = {q} is not positive")
    p_frac = coords_over(s_N * q, basis)
    if any(v.denominator != 1 for v in p_frac):
        raise IntegralityViolated(f"p_(i,{N}) not integral: {[fmt_q(v) for v in p_frac]}")
    p = [int(v) for v in p_frac]
    err = _abs_err(spec, c_seq, N, prec)
    ratio = ((d - 1) * params.y1 + params.y2 - params.eta1) / eta2
    checks = {
        "(20)": _check_err_bound(err, q, d + 1 + d * ratio, d, alpha, False, prec),
        "(21)": _check_p_bound(p, q, [1 + ratio] * d, alpha, Fraction(1), prec),
        "(22)": HOLDS if all(v == HOLDS for v in check22) else
                (FAILS if FAILS in check22 else UNDECIDED),
    }
    info = {"kappa": str(kappa), "c": fmt_q(cmax), "terms": per_n}
    return Approximant(N, q, p, err, checks, info)


def err_strictly_decreasing(apps: Sequence[Approximant]) -> bool:
    return all(b.err.hi < a.err.lo for a, b in zip(apps, apps[1:]))


# ---------------------------------------------------------------------------
# Z_N
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ZParams:
    M: Fraction = Fraction(5)
    c: Fraction = Fraction(1, 2)
    beta: Fraction = Fraction(0)

    def __post_init__(self):
        for k in ("M", "c", "beta"):
            object.__setattr__(self, k, Fraction(getattr(self, k)))
        if not 0 < self.c < 1:
            raise ValueError("need 0 < c < 1")
        if self.M < 1:
            raise ValueError("need M >= 1")


def _positive_real(x: FieldElement, prec: Precision, what: str) -> None:
    if not (x.is_rational() or x.field.is_real_embedding(x.field.distinguished)):
        raise PrecondViolated(f"{what} must be a positive real number")
    if x.value(prec).re.lo <= 0:
        raise PrecondViolated(f"{what} must be a positive real number")


def z_log2(spec: SequenceSpec, params: ZParams, N: int, prec: Optional[Precision] = None) -> Interval:
    """Enclosure of log2 Z_N."""
    prec = prec or Precision()
    for n in range(1, N + 1):
        _positive_real(spec.a(n), prec, f"a_{n}")
        _positive_real(spec.b(n), prec, f"b_{n}")
    tail = tail_enclosure(spec, lambda n: 1, N, prec).real
    if tail.hi <= 0:
        raise PrecondViolated("tail sum is not positive")
    tail = Interval(max(tail.lo, Fraction(0)), tail.hi, prec.bits)
    if tail.lo == 0:
        raise PrecisionExhausted("tail enclosure reaches zero")
    out = iv_log2(tail)
    if N >= 2:
        L_prev = log2_abs(spec.a(N - 1), prec)
        out = out + log2_power(L_prev, params.c) * (N * N)
        for n in range(1, N):
            out = out + log2_abs(spec.a(n), prec) * params.M
    return out


def z_value(spec: SequenceSpec, params: ZParams, N: int, prec: Optional[Precision] = None) -> Interval:
    """Certified enclosure of
    Z_N = 2^(N^2 log2^c a_(N-1)) (prod_{n<N} a_n^M) sum_{n>=N} b_n/a_n,
    with Z_1 the bare tail sum."""
    prec = prec or Precision()
    v = iv_exp2(z_log2(spec, params, N, prec))
    return Interval(max(v.lo, Fraction(0)), v.hi, v.bits)


# ---------------------------------------------------------------------------
# Tail lemmas
# ---------------------------------------------------------------------------

@dataclass
class TailReport:
    N: int
    bound_kind: str
    exponent: Fraction
    verdict: str
    Q: Optional[int] = None

    def to_json(self) -> dict:
        return {"N": self.N, "kind": self.bound_kind, "exponent": fmt_q(self.exponent),
                "Q": self.Q, "verdict": self.verdict}


def _check_two_power(spec: SequenceSpec, lo: int, hi: int, prec: Precision) -> None:
    for n in range(lo, hi + 1):
        if not _available(spec, n):
            break
        v = decide(Fraction(n), lambda p, n=n: log2_abs(spec.a(n), p), False, prec)
        if v != HOLDS:
            raise PrecondViolated(f"a_n >= 2^n fails at n={n}")


def tail_checks(spec: SequenceSpec, kind: str, exponent, N: int, Q: Optional[int] = None,
                beta=0, prec: Optional[Precision] = None) -> TailReport:
    """Certified check of the tail bounds:
    gamma:  sum_{n>=N} b_n/a_n <= a_N^-gamma
    Gamma:  sum_{n>=N} b_n/a_n <= 2^(log2^Gamma a_N) / a_N^(1-beta)   (a_n >= 2^n)
    window: sum_{n=N}^{Q} b_n/a_n <= 2^(log2^Gamma a_N) / a_N^(1-beta) (a_n >= 2^n on [N, Q])
    """
    prec = prec or Precision()
    exponent, beta = Fraction(exponent), Fraction(beta)
    one = lambda n: 1  # noqa: E731
    if kind == "window":
        if Q is None or Q < N:
            raise ValueError("window needs Q >= N")
        _check_two_power(spec, N, Q, prec)

        def lhs(p):
            acc = Interval.exact(0, p.bits)
            for n in range(N, Q + 1):
                acc = acc + abs(term_value(spec, one, n, p))
            return _log2_upper(acc)
    else:
        if kind == "Gamma":
            _check_two_power(spec, N, N + 3, prec)
        elif kind != "gamma":
            raise ValueError("kind must be gamma, Gamma or window")

        def lhs(p):
            return _log2_upper(tail_enclosure(spec, one, N, p).abs())

    def rhs(p):
        L = log2_abs(spec.a(N), p)
        if kind == "gamma":
            return -(L * exponent)
        return log2_power(L, exponent) - L * (1 - beta)

    try:
        verdict = decide(lhs, rhs, False, prec)
    except RatioNotCertified:
        verdict = UNDECIDED
    return TailReport(N, kind, exponent, verdict, Q)


@dataclass
class RecordResult:
    records: list
    undecided: list


def record_indices(y_seq: Sequence, N_max: Optional[int] = None) -> RecordResult:
    """Indices N (1-based, N >= 2) with y_N > (1 + 1/N^2) max_{n<N} y_n."""
    vals = [v if isinstance(v, Interval) else Interval.exact(Fraction(v)) for v in y_seq]
    N_max = min(N_max or len(vals), len(vals))
    rec, und = [], []
    run_lo = run_hi = None
    for N in range(1, N_max + 1):
        y = vals[N - 1]
        if N >= 2:
            f = 1 + Fraction(1, N * N)
            if y.lo > f * run_hi:
                rec.append(N)
            elif not y.hi <= f * run_lo:
                und.append(N)
        run_lo = y.lo if run_lo is None else max(run_lo, y.lo)
        run_hi = y.hi if run_hi is None else max(run_hi, y.hi)
    return RecordResult(rec, und)


def identity_23(M, delta, k: int, N: int) -> tuple[Fraction, Fraction]:
    """Both sides of (M+1+d)^N = (M+1+d)^k + (M+d) sum_{n=k}^{N-1} (M+1+d)^n."""
    M, delta = Fraction(M), Fraction(delta)
    if not k < N:
        raise ValueError("need k < N")
    B = M + 1 + delta
    lhs = B ** N
    rhs = B ** k + (M + delta) * sum((B ** n for n in range(k, N)), Fraction(0))
    return lhs, rhs


def lemma65_check(a_seq: Sequence, M, beta, k: int, N: int,
                  prec: Optional[Precision] = None) -> str:
    """(max_{k<=n<N} a_n^(B^-n))^(B^N) > prod_{n=k}^{N-1} a_n^(M/(1-beta)),
    B = M/(1-beta) + 1, in logarithms; a_seq is 1-based and needs a_n > 1."""
    prec = prec or Precision()
    M, beta = Fraction(M), Fraction(beta)
    if not k < N:
        raise ValueError("need k < N")
    e = M / (1 - beta)
    B = e + 1
    vals = [a_seq[n - 1] for n in range(k, N)]
    for n, v in zip(range(k, N), vals):
        if (v.hi if isinstance(v, Interval) else Fraction(v)) <= 1:
            raise PrecondViolated(f"a_{n} must exceed 1")

    def L(v, p):
        iv = v if isinstance(v, Interval) else Interval.exact(Fraction(v), p.bits)
        return iv_log2(iv)

    def lhs(p):
        best = None
        for n, v in zip(range(k, N), vals):
            t = L(v, p) * (B ** N / B ** n)
            best = t if best is None else best.maximum(t)
        return best

    def rhs(p):
        acc = Interval.exact(0, p.bits)
        for v in vals:
            acc = acc + L(v, p)
        return acc * e

    return decide(rhs, lhs, True, prec)


def identity_checks(M, delta, k: int, N: int, a_seq: Optional[Sequence] = None, beta=0,
                    prec: Optional[Precision] = None) -> dict:
    lhs, rhs = identity_23(M, delta, k, N)
    out = {"ok": lhs == rhs, "lhs": fmt_q(lhs), "rhs": fmt_q(rhs)}
    if a_seq is not None:
        out["lemma_6_5"] = lemma65_check(a_seq, M, beta, k, N, prec)
    return out


# ---------------------------------------------------------------------------
# Height of partial sums and separation
# ---------------------------------------------------------------------------

def height_bound_sN(spec: SequenceSpec, c_seq: CSeq, N: int, prec: Optional[Precision] = None) -> dict:
    """Certify H(s_N) <= c prod a_n max(1, house s_N) <= C1 prod a_n max(1, max_i |sum b_(i,n)/a_n|)
    with c the lcm of basis denominators and C1 = c max(1, C), C from
    house_linear_constant.  Returns Holds or Undecided (never Fails: the
    display is an eventual statement)."""
    prec = prec or Precision()
    c = _c_fn(spec, c_seq)
    prod = 1
    coef = [Fraction(0)] * len(spec.basis)
    for n in range(1, N):
        a = spec.a(n)
        if not a.is_rational() or a.as_rational().denominator != 1 or a.as_rational() <= 0:
            raise NotRationalA(f"a_{n} = {a!r} must be a positive rational integer")
        A = int(a.as_rational()) * c(n)
        prod *= A
        for i, v in enumerate(spec.b_coords(n)):
            coef[i] += Fraction(v, A)
    s = partial_sum(spec, c_seq, N)
    cden = lcm(*(denominator(x) for x in spec.basis))
    C = house_linear_constant(list(spec.basis), prec)
    H = height(s, prec)
    hs = house(s, prec)
    mid_val = Interval.exact(cden * prod, prec.bits) * hs.maximum(1)
    C1 = C.maximum(1) * cden
    right = C1 * prod * max([Fraction(1)] + [abs(v) for v in coef])
    if H.hi <= mid_val.lo:
        first = HOLDS
    elif s.is_rational() or hs.hi <= 1:
        # every conjugate lies in the unit disc, so H^k = M = leading coefficient exactly
        f = minimal_polynomial(s)
        M = max(abs(s.as_rational().numerator), s.as_rational().denominator) if s.is_rational() else f.leading
        k = 1 if s.is_rational() else f.degree
        first = HOLDS if M <= (cden * prod) ** k else UNDECIDED
    else:
        first = UNDECIDED
    second = HOLDS if mid_val.hi <= right.lo else UNDECIDED
    verdict = HOLDS if first == second == HOLDS else UNDECIDED
    return {"N": N, "H": format_directed(H.hi, 12, upper=True), "first": first,
            "second": second, "verdict": verdict}


def partial_sum_separation(spec: SequenceSpec, N_max: int, c_seq: CSeq = None,
                           prec: Optional[Precision] = None) -> dict:
    """Check s_N != s_M for all 1 <= N < M <= N_max.

    Each difference is an exact field element; nonzero differences are also
    separated numerically, giving a certified lower bound on the gap."""
    prec = prec or Precision()
    sums = [partial_sum(spec, c_seq, N) for N in range(1, N_max + 1)]
    min_gap = None
    for i in range(len(sums)):
        for j in range(i + 1, len(sums)):
            diff = sums[j] - sums[i]
            if diff.is_zero():
                return {"verdict": "RepeatRisk", "pair": [i + 1, j + 1]}
            try:
                gap = abs(diff.value(prec)).lo
            except PrecisionExhausted:
                return {"verdict": "RepeatRisk", "pair": [i + 1, j + 1]}
            if gap <= 0:
                return {"verdict": "RepeatRisk", "pair": [i + 1, j + 1]}
            min_gap = gap if min_gap is None else min(min_gap, gap)
    return {"verdict": "Separated", "N_max": N_max,
            "min_gap": format_directed(min_gap, 12) if min_gap is not None else None}
