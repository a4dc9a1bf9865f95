"""Exact generators for Fibonacci-index and golden-ratio-power sequences.

A :class:`SequenceSpec` produces exact triples (a_n, b_n, c_n) in a number
field together with a declared :class:`GrowthProfile`

    log|a_n| = g^n (A + A_L ln n) + B n + C ln n + D + o(1),

which is what the divergence verdicts of the criteria module consume.
Builtin specs reproduce the worked examples over Q(sqrt 5); user specs come
from a small expression language (see :func:`parse_seq`).
"""

from __future__ import annotations

import functools
import json
import math
import re
import threading
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from . import expr as _expr
from .errors import (
    CeilingExceeded,
    FieldMismatch,
    ParseError,
    PrecisionExhausted,
    UndefinedSymbol,
    UnsupportedX,
)
from .exactmath import IntervalComplex, Precision, iv_compare, iv_log2, Ordering
from .numberfield import (
    FieldElement,
    NumberField,
    degree,
    golden_field,
    integer_coords,
)

LN_PHI = math.log((1 + math.sqrt(5)) / 2)
LN5 = math.log(5)

#: refuse terms whose modulus would need more than this many bits
CEILING_BITS = 300_000
# Terms just past a requested range (a_(n+1) in a monotonicity check, tail
# terms of a partial-sum enclosure) may be generated up to this size.
LOOKAHEAD_BITS = 4 * CEILING_BITS

ADJACENT, NESTED = "adjacent", "nested"


# ---------------------------------------------------------------------------
# Fibonacci numbers and powers of phi
# ---------------------------------------------------------------------------

def fib_pair(m: int) -> tuple[int, int]:
    """(F_m, F_{m+1}) for m >= 0 by fast doubling."""
    if m < 0:
        raise ValueError("fib_pair needs m >= 0")
    a, b = 0, 1
    for bit in bin(m)[2:]:
        c = a * (2 * b - a)
        d = a * a + b * b
        if bit == "1":
            a, b = d, c + d
        else:
            a, b = c, d
    return a, b


def fib(m: int) -> int:
    """F_m, extended to negative indices by F_{-k} = (-1)^(k+1) F_k."""
    if m >= 0:
        return fib_pair(m)[0]
    k = -m
    f = fib_pair(k)[0]
    return f if k % 2 else -f


def _is_golden(field: NumberField) -> bool:
    return field.minpoly.coeffs == (-1, -1, 1)


def phi_power(m: int, field: Optional[NumberField] = None) -> FieldElement:
    """phi^m = F_m phi + F_{m-1}, valid for every integer m."""
    field = field or golden_field()
    if not _is_golden(field):
        raise FieldMismatch("phi_power needs the field Q(phi) with minimal polynomial X^2 - X - 1")
    return field.from_power([fib(m - 1), fib(m)])


def phibar_power(m: int, field: Optional[NumberField] = None) -> FieldElement:
    """phibar^m = F_m phibar + F_{m-1} with phibar = 1 - phi."""
    field = field or golden_field()
    if not _is_golden(field):
        raise FieldMismatch("phibar_power needs the field Q(phi)")
    fm, fm1 = fib(m), fib(m - 1)
    return field.from_power([fm + fm1, -fm])


# ---------------------------------------------------------------------------
# Growth profiles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GrowthProfile:
    """Declared asymptotics of log|a_n| (natural log)."""

    g: Fraction
    A: float = 0.0
    A_L: float = 0.0
    B: float = 0.0
    C: float = 0.0
    D: float = 0.0
    inferred: bool = False

    def __post_init__(self):
        object.__setattr__(self, "g", Fraction(self.g))
        if self.g <= 1:
            raise ValueError("growth base g must exceed 1")
        if self.A < 0 or self.A_L < 0 or (self.A == 0 and self.A_L == 0):
            raise ValueError("profile needs A > 0 or A_L > 0 (doubly exponential growth)")

    def ln_estimate(self, n: int) -> float:
        gn = float(self.g) ** n
        ln_n = math.log(n) if n > 0 else 0.0
        return gn * (self.A + self.A_L * ln_n) + self.B * n + self.C * ln_n + self.D

    def log2_estimate(self, n: int) -> float:
        return self.ln_estimate(n) / math.log(2)

    def to_json(self) -> dict:
        return {
            "g": _fmt_q(self.g),
            "A": repr(self.A), "A_L": repr(self.A_L), "B": repr(self.B),
            "C": repr(self.C), "D": repr(self.D), "inferred": self.inferred,
        }

    @classmethod
    def from_json(cls, data: dict) -> GrowthProfile:
        def num(key):
            v = data.get(key, 0)
            return float(_expr.evaluate(v) if isinstance(v, str) else v)

        return cls(_expr.parse_rational(data["g"]), num("A"), num("A_L"), num("B"),
                   num("C"), num("D"), bool(data.get("inferred", False)))


def _fmt_q(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def measured_ln(a: FieldElement, prec: Optional[Precision] = None) -> float:
    """Natural log of |a| under the distinguished embedding (enclosure midpoint)."""
    L = iv_log2(a.modulus(prec or Precision(64)))
    return float(L.mid) * math.log(2)


def profile_error(profile: GrowthProfile, n: int, measured: float) -> float:
    """Relative deviation, measured against max(|measured|, 1)."""
    return abs(profile.ln_estimate(n) - measured) / max(abs(measured), 1.0)


# ---------------------------------------------------------------------------
# Sequence specification
# ---------------------------------------------------------------------------

TermFn = Callable[[int], FieldElement]


@dataclass(frozen=True, eq=False)
class SequenceSpec:
    """Exact (a_n, b_n, c_n) generator with declared growth and exponents.

    ``basis`` holds the elements x_1..x_D.  ``a_coords``/``b_coords`` may give
    the integer coordinates directly (needed when the x_i are linearly
    dependent); otherwise coordinates are solved for exactly.
    """

    name: str
    field: NumberField
    basis: tuple
    a_fn: TermFn
    b_fn: TermFn
    c_fn: Callable[[int], int] = lambda n: 1
    profile: Optional[GrowthProfile] = None
    exponents: dict = dc_field(default_factory=dict)
    zeta: object = None
    a_coords_fn: Optional[Callable[[int], list]] = None
    b_coords_fn: Optional[Callable[[int], list]] = None
    index_convention: Optional[str] = None
    x: Optional[FieldElement] = None
    description: str = ""
    length: Optional[int] = None  # finite sequences: terms exist for n <= length
    _memo: dict = dc_field(default_factory=dict, repr=False)
    _lock: threading.Lock = dc_field(default_factory=threading.Lock, repr=False)

    def _check_ceiling(self, n: int, limit: int = LOOKAHEAD_BITS):
        if self.length is not None and n > self.length:
            raise CeilingExceeded(f"{self.name}: only {self.length} terms are defined")
        if self.profile is not None and self.profile.log2_estimate(n) > limit:
            raise CeilingExceeded(
                f"{self.name}: log2|a_{n}| ~ {self.profile.log2_estimate(n):.3g} bits exceeds "
                f"the {limit}-bit ceiling")

    def check_range(self, lo: int, hi: int) -> None:
        """Refuse a requested index range whose terms exceed CEILING_BITS."""
        if lo < 1 or hi < lo:
            raise ValueError(f"bad n range [{lo}, {hi}]")
        self._check_ceiling(hi, CEILING_BITS)

    def computable(self, n: int) -> bool:
        return self.profile is None or self.profile.log2_estimate(n) <= CEILING_BITS

    def max_computable(self, limit: int = 64) -> int:
        n = 1
        while n < limit and self.computable(n + 1):
            n += 1
        return n

    def term(self, n: int) -> tuple[FieldElement, FieldElement, int]:
        with self._lock:
            hit = self._memo.get(n)
        if hit is not None:
            return hit
        self._check_ceiling(n)
        a, b, c = self.a_fn(n), self.b_fn(n), int(self.c_fn(n))
        if a.is_zero() or b.is_zero():
            raise ValueError(f"{self.name}: zero term at n={n}")
        if c <= 0:
            raise ValueError(f"{self.name}: c_{n} must be a positive integer")
        with self._lock:
            self._memo[n] = (a, b, c)
        return a, b, c

    def a(self, n: int) -> FieldElement:
        return self.term(n)[0]

    def b(self, n: int) -> FieldElement:
        return self.term(n)[1]

    def c(self, n: int) -> int:
        return self.term(n)[2]

    def a_coords(self, n: int) -> list[int]:
        if self.a_coords_fn is not None:
            return [int(v) for v in self.a_coords_fn(n)]
        return integer_coords(self.a(n), self.basis)[0]

    def b_coords(self, n: int) -> list[int]:
        if self.b_coords_fn is not None:
            return [int(v) for v in self.b_coords_fn(n)]
        return integer_coords(self.b(n), self.basis)[0]

    def with_c(self, c_fn: Callable[[int], int]) -> SequenceSpec:
        return SequenceSpec(self.name, self.field, self.basis, self.a_fn, self.b_fn, c_fn,
                            self.profile, dict(self.exponents), self.zeta, self.a_coords_fn,
                            self.b_coords_fn, self.index_convention, self.x, self.description,
                            self.length)

    def with_profile(self, profile: GrowthProfile) -> SequenceSpec:
        return SequenceSpec(self.name, self.field, self.basis, self.a_fn, self.b_fn, self.c_fn,
                            profile, dict(self.exponents), self.zeta, self.a_coords_fn,
                            self.b_coords_fn, self.index_convention, self.x, self.description,
                            self.length)

    @classmethod
    def from_lists(cls, field: NumberField, a: Sequence, b: Sequence, c: Sequence = None,
                   name: str = "lists") -> SequenceSpec:
        """Finite spec from explicit values (index n = 1..len(a))."""
        def elem(v):
            return v if isinstance(v, FieldElement) else field.rational(v)

        A = [elem(v) for v in a]
        B = [elem(v) for v in b]
        C = list(c) if c is not None else [1] * len(A)
        return cls(name, field, tuple(field.basis_elements()), lambda n: A[n - 1],
                   lambda n: B[n - 1], lambda n: C[n - 1], length=len(A))

    def validate_profile(self, ns: Sequence[int], tolerance: float = 0.05) -> float:
        """Largest relative deviation between profile and measured ln|a_n|.

        Raises ValueError when it exceeds ``tolerance`` at the largest n.
        """
        if self.profile is None:
            raise ValueError("spec has no growth profile")
        worst = 0.0
        ns = [n for n in ns if self.computable(n)]
        for n in ns:
            err = profile_error(self.profile, n, measured_ln(self.a(n)))
            worst = max(worst, err)
        if ns:
            last = profile_error(self.profile, ns[-1], measured_ln(self.a(ns[-1])))
            if last > tolerance:
                raise ValueError(f"{self.name}: profile deviates by {last:.2%} at n={ns[-1]}")
        return worst


def infer_profile(spec: SequenceSpec, n_max: int = 4) -> GrowthProfile:
    """Fit g and A from measured growth when no profile was declared.

    g is the rounded ratio of successive log|a_n| (accepted within 2%), and
    A = log|a_N| / g^N at the largest measured N.
    """
    logs = []
    n = 1
    while n <= n_max:
        a = spec.a(n)
        logs.append(measured_ln(a))
        if logs[-1] > CEILING_BITS * 0.69 / 4:
            break
        n += 1
    if len(logs) < 3:
        raise ValueError("need at least three terms to infer a growth profile")
    ratio = logs[-1] / logs[-2]
    g = Fraction(round(ratio))
    if g <= 1 or abs(ratio - float(g)) > 0.02 * float(g):
        raise ValueError(f"growth does not look doubly exponential (ratio {ratio:.4g})")
    N = len(logs)
    A = logs[-1] / float(g) ** N
    return GrowthProfile(g, A=A, inferred=True)


# ---------------------------------------------------------------------------
# Sequence DSL
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]+)|(.))")


@dataclass(frozen=True)
class _Tok:
    kind: str  # "int" | "name" | "sym" | "end"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(1) is not None:
            toks.append(_Tok("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            toks.append(_Tok("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3))
            toks.append(_Tok("sym", ch, m.start(3)))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class Node:
    def ev(self, ctx: "_Ctx") -> FieldElement:
        raise NotImplementedError

    def uses_n(self) -> bool:
        return False


@dataclass(frozen=True)
class Num(Node):
    value: int

    def ev(self, ctx):
        return ctx.field.rational(self.value)


@dataclass(frozen=True)
class Var(Node):
    pos: int

    def ev(self, ctx):
        if ctx.n is None:
            raise UndefinedSymbol("'n' is not available in a constant expression")
        return ctx.field.rational(ctx.n)

    def uses_n(self):
        return True


@dataclass(frozen=True)
class Const(Node):
    name: str
    element: FieldElement

    def ev(self, ctx):
        return self.element


@dataclass(frozen=True)
class Fib(Node):
    arg: Node

    def ev(self, ctx):
        m = _as_nonneg_int(self.arg.ev(ctx), "F argument")
        return ctx.field.rational(fib(m))

    def uses_n(self):
        return self.arg.uses_n()


@dataclass(frozen=True)
class Neg(Node):
    arg: Node

    def ev(self, ctx):
        return -self.arg.ev(ctx)

    def uses_n(self):
        return self.arg.uses_n()


@dataclass(frozen=True)
class BinOp(Node):
    op: str
    left: Node
    right: Node

    def ev(self, ctx):
        a, b = self.left.ev(ctx), self.right.ev(ctx)
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        if self.op == "*":
            return a * b
        return a / b

    def uses_n(self):
        return self.left.uses_n() or self.right.uses_n()


@dataclass(frozen=True)
class Pow(Node):
    base: Node
    exp: Node

    def ev(self, ctx):
        k = _as_nonneg_int(self.exp.ev(ctx), "exponent")
        if isinstance(self.base, Const) and _is_golden(ctx.field):
            if self.base.name == "phi":
                return phi_power(k, ctx.field)
            if self.base.name == "phibar":
                return phibar_power(k, ctx.field)
        b = self.base.ev(ctx)
        if b.is_rational():
            return ctx.field.rational(b.as_rational() ** k)
        return b ** k

    def uses_n(self):
        return self.base.uses_n() or self.exp.uses_n()


def _as_nonneg_int(e: FieldElement, what: str) -> int:
    if not e.is_rational():
        raise ValueError(f"{what} must be an integer, got {e!r}")
    q = e.as_rational()
    if q.denominator != 1 or q < 0:
        raise ValueError(f"{what} must be a non-negative integer, got {q}")
    return int(q)


@dataclass
class _Ctx:
    field: NumberField
    n: Optional[int]


class _Parser:
    def __init__(self, text: str, field: NumberField):
        self.text = text
        self.field = field
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, sym: str) -> _Tok:
        t = self.tok
        if t.kind != "sym" or t.text != sym:
            found = "end of input" if t.kind == "end" else repr(t.text)
            raise ParseError(f"expected {sym!r} but found {found}", t.pos)
        return self.take()

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.tok.kind == "sym" and self.tok.text in "+-":
            op = self.take().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.tok.kind == "sym" and self.tok.text in "*/":
            op = self.take().text
            node = BinOp(op, node, self.factor())
        return node

    def factor(self) -> Node:
        base = self.atom()
        if self.tok.kind == "sym" and self.tok.text == "^":
            self.take()
            return Pow(base, self.atom())
        return base

    def atom(self) -> Node:
        t = self.tok
        if t.kind == "int":
            self.take()
            return Num(int(t.text))
        if t.kind == "sym" and t.text == "(":
            self.take()
            node = self.expr()
            self.expect(")")
            return node
        if t.kind == "sym" and t.text == "-":
            # unary minus, a small convenience beyond the core grammar
            self.take()
            return Neg(self.atom())
        if t.kind == "name":
            self.take()
            if t.text == "n":
                return Var(t.pos)
            if t.text in ("phi", "phibar"):
                return Const(t.text, self._golden_const(t))
            if t.text == "theta":
                return Const("theta", self.field.theta)
            if t.text == "sqrt":
                self.expect("(")
                k = self.tok
                if k.kind != "int":
                    raise ParseError("sqrt takes an integer literal", k.pos)
                self.take()
                self.expect(")")
                s = self.field.sqrt_of_integer(int(k.text))
                if s is None:
                    raise UndefinedSymbol(f"sqrt({k.text}) is not in the field")
                return Const(f"sqrt({k.text})", s)
            if t.text == "F":
                self.expect("(")
                node = self.expr()
                self.expect(")")
                return Fib(node)
            raise UndefinedSymbol(f"unknown symbol {t.text!r} at offset {t.pos}")
        if t.kind == "end":
            raise ParseError("unexpected end of input", t.pos)
        raise ParseError(f"unexpected {t.text!r}", t.pos)

    def _golden_const(self, t: _Tok) -> FieldElement:
        f = self.field
        if _is_golden(f):
            return f.theta if t.text == "phi" else 1 - f.theta
        s5 = f.sqrt_of_integer(5)
        if s5 is None:
            raise UndefinedSymbol(f"{t.text} is not in the field")
        return (1 + s5) / 2 if t.text == "phi" else (1 - s5) / 2


@dataclass(frozen=True)
class SeqExpr:
    """Parsed DSL expression bound to a field."""

    text: str
    field: NumberField
    root: Node

    def __call__(self, n: Optional[int] = None) -> FieldElement:
        return self.root.ev(_Ctx(self.field, n))

    def uses_n(self) -> bool:
        return self.root.uses_n()


def parse_seq(dsl: str, field: Optional[NumberField] = None) -> SeqExpr:
    """Parse a sequence expression over ``field`` (default Q(phi)).

    Grammar: integers, ``n``, ``+ - * / ^``, parentheses, ``F(expr)`` for
    Fibonacci numbers, ``sqrt(k)`` for an integer k whose root lies in the
    field, ``phi``/``phibar`` (fields containing sqrt 5) and ``theta``, the
    field generator.
    """
    field = field or golden_field()
    return SeqExpr(dsl, field, _Parser(dsl, field).parse())


def parse_constant(dsl: str, field: Optional[NumberField] = None) -> FieldElement:
    e = parse_seq(dsl, field)
    if e.uses_n():
        raise UndefinedSymbol("'n' is not allowed in a constant")
    return e()


# ---------------------------------------------------------------------------
# Builtin examples
# ---------------------------------------------------------------------------

EXAMPLE_IDS = ("2.1", "2.4", "2.5", "2.6", "2.7")


def _check_convention(conv: str) -> str:
    if conv not in (ADJACENT, NESTED):
        raise ValueError(f"index convention must be {ADJACENT!r} or {NESTED!r}")
    return conv


def builtin_example(id: str, view: Optional[str] = None, index_convention: str = ADJACENT,
                    x: Union[FieldElement, str, None] = None,
                    literal_params: bool = False) -> SequenceSpec:
    """SequenceSpec for one of the worked examples.

    ``view`` selects which theorem's rewriting of the example to build
    (default: the one the example leads with).  ``index_convention`` picks
    between the adjacent reading F_{9^n}, F_{9^n + 1} and the nested reading
    F_{9^n}, F_{9^(n+1)} for Examples 2.1 and 2.6.  ``x`` is the free element
    of Example 2.1 (default sqrt 5).
    """
    K = golden_field()
    one, phi = K.one, K.theta
    phibar = 1 - phi
    conv = _check_convention(index_convention)
    if id == "2.1":
        if x is None:
            x = K.sqrt_of_integer(5)
        elif isinstance(x, str):
            x = parse_constant(x, K)
        if degree(x) > 2:
            raise UnsupportedX("Example 2.1 needs x of degree at most 2")
        F = x.field

        def idx(n):
            m = 9 ** n
            return (m, m + 1) if conv == ADJACENT else (m, 9 * m)

        def a_fn(n):
            m, M = idx(n)
            return F.rational(fib(m) * fib(M))

        def b_fn(n):
            m, M = idx(n)
            return x * fib(M) + fib(m)

        def b_coords(n):
            m, M = idx(n)
            return [fib(m), fib(M)]

        prof = (GrowthProfile(9, A=2 * LN_PHI, D=LN_PHI - LN5) if conv == ADJACENT
                else GrowthProfile(9, A=10 * LN_PHI, D=-LN5))
        return SequenceSpec("2.1", F, (F.one, x), a_fn, b_fn, profile=prof,
                            exponents={"beta": Fraction(1, 2), "y": Fraction(1)},
                            b_coords_fn=b_coords, index_convention=conv, x=x,
                            a_coords_fn=lambda n: [int(a_fn(n).as_rational()), 0],
                            description="x*sum 1/(F_m c_n) + sum 1/(F_M c_n)")
    if id == "2.4":
        view = view or "1.6"
        if view == "1.6":
            return SequenceSpec(
                "2.4", K, (one, phi),
                lambda n: phi_power(n) * (n ** (5 ** n)),
                lambda n: one,
                profile=GrowthProfile(5, A_L=1.0, B=LN_PHI),
                exponents={"beta": Fraction(0), "y": Fraction(1), "eta1": Fraction(1), "eta2": Fraction(1)},
                zeta=one,
                a_coords_fn=lambda n: [fib(n - 1) * n ** (5 ** n), fib(n) * n ** (5 ** n)],
                b_coords_fn=lambda n: [1, 0],
                description="a_n = n^(5^n) phi^n, b_n = 1")
        if view == "1.4":
            sgn = lambda n: -1 if n % 2 else 1  # noqa: E731
            return SequenceSpec(
                "2.4", K, (one, phibar),
                lambda n: K.rational(n ** (5 ** n)),
                lambda n: phibar_power(n) * sgn(n),
                profile=GrowthProfile(5, A_L=1.0),
                exponents={"beta": Fraction(0), "y": Fraction(1)},
                zeta=one,
                a_coords_fn=lambda n: [n ** (5 ** n), 0],
                b_coords_fn=lambda n: [sgn(n) * fib(n - 1), sgn(n) * fib(n)],
                description="a_n = n^(5^n), b_n = (-1)^n (F_n phibar + F_{n-1})")
        raise ValueError(f"Example 2.4 has views 1.6 and 1.4, not {view}")
    if id == "2.5":
        view = view or "1.6"
        if view == "1.6":
            return SequenceSpec(
                "2.5", K, (one, phi),
                lambda n: phi_power(7 ** n),
                lambda n: one,
                profile=GrowthProfile(7, A=LN_PHI),
                exponents={"beta": Fraction(0), "eta1": Fraction(0), "eta2": Fraction(1), "y": Fraction(1)},
                zeta=one,
                a_coords_fn=lambda n: [fib(7 ** n - 1), fib(7 ** n)],
                b_coords_fn=lambda n: [1, 0],
                description="a_n = phi^(7^n), b_n = 1")
        if view == "1.4":
            def b_fn(n):
                m = 7 ** n
                return phi_power(-m) * fib(m)

            return SequenceSpec(
                "2.5", K, (one, phi),
                lambda n: K.rational(fib(7 ** n)),
                b_fn,
                profile=GrowthProfile(7, A=LN_PHI, D=-LN5 / 2),
                exponents={"beta": Fraction(0), "y": Fraction(2)},
                zeta=one,
                a_coords_fn=lambda n: [fib(7 ** n), 0],
                b_coords_fn=lambda n: [fib(7 ** n) * fib(-(7 ** n) - 1), fib(7 ** n) * fib(-(7 ** n))],
                description="a_n = F_{7^n}, b_n = a_n phi^(-7^n)")
        raise ValueError(f"Example 2.5 has views 1.6 and 1.4, not {view}")
    if id == "2.6":
        view = view or "1.4"
        if view not in ("1.4", "1.7"):
            raise ValueError(f"Example 2.6 has views 1.4 and 1.7, not {view}")

        def top(n):
            m = 9 ** n
            return m + 1 if conv == ADJACENT else 9 * m

        def b_fn(n):
            m = 9 ** n
            return phi_power(-m) * fib(m)

        def b_coords(n):
            m = 9 ** n
            # phi^(-m) = -phibar^m for odd m, and phibar^m = F_m phibar + F_{m-1}
            return [-fib(m) * fib(m - 1), -fib(m) * fib(m)]

        prof = (GrowthProfile(9, A=LN_PHI, D=LN_PHI - LN5 / 2) if conv == ADJACENT
                else GrowthProfile(9, A=9 * LN_PHI, D=-LN5 / 2))
        exps = ({"beta": Fraction(0), "y": Fraction(2)} if view == "1.4" else
                {"beta": Fraction(0), "eta1": Fraction(1), "eta2": Fraction(1),
                 "y1": Fraction(1), "y2": Fraction(2)})
        return SequenceSpec(
            "2.6", K, (one, phibar),
            lambda n: K.rational(fib(top(n))),
            b_fn, profile=prof, exponents=exps, zeta=one,
            a_coords_fn=lambda n: [fib(top(n)), 0],
            b_coords_fn=b_coords, index_convention=conv,
            description="a_n = F_M, b_n = F_{9^n} phi^(-9^n)")
    if id == "2.7":
        exps = {"beta": Fraction(1, 2), "eta1": Fraction(0), "eta2": Fraction(1)}
        if literal_params:
            exps.update(y1=Fraction(1, 2), y2=Fraction(1))
        else:
            exps.update(y1=Fraction(1), y2=Fraction(1, 2))
        return SequenceSpec(
            "2.7", K, (one, phi),
            lambda n: phi_power(2 * 14 ** n),
            lambda n: phi + fib(14 ** n),
            profile=GrowthProfile(14, A=2 * LN_PHI),
            exponents=exps, zeta=one,
            a_coords_fn=lambda n: [fib(2 * 14 ** n - 1), fib(2 * 14 ** n)],
            b_coords_fn=lambda n: [fib(14 ** n), 1],
            description="a_n = phi^(2*14^n), b_n = F_{14^n} + phi")
    raise ValueError(f"unknown example {id!r}; choose one of {', '.join(EXAMPLE_IDS)}")


# ---------------------------------------------------------------------------
# Ordering by modulus
# ---------------------------------------------------------------------------

def sort_by_modulus(spec: SequenceSpec, c: Sequence[int], N: int,
                    prec: Optional[Precision] = None) -> list[int]:
    """1-based permutation sorting |a_n c_n| increasingly (ties by index)."""
    prec = prec or Precision()
    vals = [spec.a(n) * int(c[n - 1]) for n in range(1, N + 1)]

    def exact_tie(x: FieldElement, y: FieldElement) -> bool:
        # equal moduli that intervals could never separate
        return x == y or x == -y

    def cmp(i: int, j: int) -> int:
        x, y = vals[i - 1], vals[j - 1]
        if exact_tie(x, y):
            return -1 if i < j else (1 if i > j else 0)
        for bits in prec.ladder():
            p = Precision(bits, prec.max_bits)
            o = iv_compare(x.modulus(p), y.modulus(p))
            if o is Ordering.LESS:
                return -1
            if o is Ordering.GREATER:
                return 1
        raise PrecisionExhausted(f"cannot order |a_{i} c_{i}| and |a_{j} c_{j}|")

    return sorted(range(1, N + 1), key=functools.cmp_to_key(cmp))


# ---------------------------------------------------------------------------
# JSON sequence files
# ---------------------------------------------------------------------------

def spec_from_json(data: Union[dict, str], name: str = "user") -> SequenceSpec:
    """Build a spec from the sequence-file format.

    Keys: ``field`` (object, or omitted for Q(phi)), ``a``, ``b`` (DSL),
    ``c`` (DSL or "free" meaning c_n = 1), optional ``basis`` (list of DSL
    constants; default is the field basis), ``profile``, ``exponents``,
    ``zeta`` (DSL constant, or {"re": .., "im": ..} rationals).
    """
    if isinstance(data, str):
        data = json.loads(data)
    fdata = data.get("field")
    K = golden_field() if fdata in (None, "golden", "Q(sqrt5)") else NumberField.from_json(fdata)
    a_expr = parse_seq(str(data["a"]), K)
    b_expr = parse_seq(str(data.get("b", "1")), K)
    cdata = data.get("c", "free")
    if cdata == "free":
        c_fn = lambda n: 1  # noqa: E731
    else:
        c_expr = parse_seq(str(cdata), K)

        def c_fn(n):
            v = c_expr(n)
            return _as_nonneg_int(v, "c_n")

    if "basis" in data:
        basis = tuple(parse_constant(str(s), K) for s in data["basis"])
    else:
        basis = tuple(K.basis_elements())
    profile = GrowthProfile.from_json(data["profile"]) if data.get("profile") else None
    exps = {k: _expr.parse_rational(v) for k, v in (data.get("exponents") or {}).items()}
    zeta = None
    z = data.get("zeta")
    if isinstance(z, dict):
        re_, im_ = _expr.parse_rational(z.get("re", 0)), _expr.parse_rational(z.get("im", 0))
        zeta = IntervalComplex.exact(re_, im_)
    elif z is not None:
        zeta = parse_constant(str(z), K)
    return SequenceSpec(data.get("name", name), K, basis, a_expr, b_expr, c_fn,
                        profile, exps, zeta, description=f"a = {data['a']}, b = {data.get('b', '1')}")
