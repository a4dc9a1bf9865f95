"""Exact rationals and certified interval reals.

Integers are Python ``int`` and rationals are :class:`fractions.Fraction`.
Every non-rational magnitude is carried as an :class:`Interval` whose
endpoints are dyadic rationals rounded *outward* to the interval's working
precision, so the exact value is always contained in the enclosure.

The transcendental kernels (``log2`` and ``exp2``) run fixed-point series
twice: once with every truncation rounded down (a lower bound, since all
terms are non-negative) and once rounded up with an explicit remainder
majorant (an upper bound).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Iterator, Union

from .errors import DivisionByZero, NonPositiveBase, NonPositiveInput

Rational = Union[int, Fraction]

_GUARD = 24


@dataclass(frozen=True)
class Precision:
    """Working precision in bits plus the ceiling for automatic refinement."""

    bits: int = 256
    max_bits: int = 16384

    def __post_init__(self):
        if self.bits < 8:
            raise ValueError("precision must be at least 8 bits")
        if self.bits > self.max_bits:
            raise ValueError(f"bits={self.bits} exceeds max_bits={self.max_bits}")

    def ladder(self) -> Iterator[int]:
        """Yield bits, 2*bits, 4*bits, ... up to and including ``max_bits``."""
        b = self.bits
        while b < self.max_bits:
            yield b
            b *= 2
        yield self.max_bits

    def with_bits(self, bits: int) -> Precision:
        return Precision(bits, max(bits, self.max_bits))


# ---------------------------------------------------------------------------
# Dyadic rounding
# ---------------------------------------------------------------------------

def _as_fraction(x: Rational) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _scale_for(q: Fraction, bits: int) -> int:
    return bits - (abs(q.numerator).bit_length() - q.denominator.bit_length())


def floor_dyadic(q: Rational, bits: int) -> Fraction:
    """Largest dyadic with about ``bits`` significant bits that is <= q."""
    q = _as_fraction(q)
    if q == 0:
        return q
    if q.denominator & (q.denominator - 1) == 0 and abs(q.numerator).bit_length() <= bits:
        return q
    s = _scale_for(q, bits)
    if s >= 0:
        return Fraction((q.numerator << s) // q.denominator, 1 << s)
    return Fraction((q.numerator // (q.denominator << -s)) << -s)


def ceil_dyadic(q: Rational, bits: int) -> Fraction:
    return -floor_dyadic(-_as_fraction(q), bits)


def floor_log2(q: Fraction) -> int:
    """Exact floor(log2 q) for q > 0."""
    n, d = q.numerator, q.denominator
    k = n.bit_length() - d.bit_length()
    if k >= 0:
        if n < (d << k):
            k -= 1
    elif (n << -k) < d:
        k -= 1
    return k


def _floor_frac(q: Fraction) -> int:
    return q.numerator // q.denominator


def _ceil_frac(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


# ---------------------------------------------------------------------------
# Fixed-point series kernels
# ---------------------------------------------------------------------------

def _ln_fixed(m: Fraction, W: int, upper: bool) -> int:
    """Directed bound of ln(m) * 2**W for 1 <= m <= 2."""
    t = (m - 1) / (m + 1)
    if t == 0:
        return 0
    if not upper:
        T = (t.numerator << W) // t.denominator
        T2 = (T * T) >> W
        P, S, j = T, 0, 0
        while P:
            S += P // (2 * j + 1)
            P = (P * T2) >> W
            j += 1
        return 2 * S
    T = -((-t.numerator << W) // t.denominator)
    T2 = -((-T * T) >> W)
    P, S, j = T, 0, 0
    while P > 16:
        S += -(-P // (2 * j + 1))
        P = -((-P * T2) >> W)
        j += 1
    # t <= 1/3, so the neglected tail is at most P/(2j+1) * 9/8 <= 2P
    return 2 * (S + 2 * P)


@lru_cache(maxsize=64)
def _ln2_fixed(W: int, upper: bool) -> int:
    return _ln_fixed(Fraction(2), W, upper)


def _log2_bound(q: Fraction, W: int, upper: bool) -> Fraction:
    k = floor_log2(q)
    m = q / (Fraction(2) ** k)
    if m == 1:
        return Fraction(k)
    ln_m = _ln_fixed(m, W, upper)
    ln2 = _ln2_fixed(W, not upper)
    return k + Fraction(ln_m, ln2)


def _exp2_bound(y: Fraction, W: int, upper: bool) -> Fraction:
    k = _floor_frac(y)
    f = y - k
    scale = Fraction(2) ** k
    if f == 0:
        return scale
    ln2 = _ln2_fixed(W, upper)
    one = 1 << W
    if not upper:
        Z = (f.numerator * ln2) // f.denominator
        term, S, j = one, 0, 0
        while term:
            S += term
            j += 1
            term = ((term * Z) >> W) // j
        return Fraction(S, one) * scale
    Z = -((-f.numerator * ln2) // f.denominator)
    term, S, j = one, 0, 0
    while term > 16 or j < 2:
        S += term
        j += 1
        term = -(-(-((-term * Z) >> W)) // j)
    # z < ln 2 < 1 so the tail from index j is below 2 * term_j
    return Fraction(S + 2 * term, one) * scale


# ---------------------------------------------------------------------------
# Intervals
# ---------------------------------------------------------------------------

class Ordering(enum.Enum):
    LESS = "Less"
    GREATER = "Greater"
    UNDECIDED = "Undecided"


@dataclass(frozen=True)
class Interval:
    """Closed real interval [lo, hi] with dyadic endpoints.

    Arithmetic rounds outward to ``bits`` significant bits (the larger of the
    two operands' precisions).  Plain ``int`` and ``Fraction`` operands are
    treated as exact points.
    """

    lo: Fraction
    hi: Fraction
    bits: int = 256

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, q: Rational, bits: int = 256) -> Interval:
        return cls(floor_dyadic(q, bits), ceil_dyadic(q, bits), bits)

    @classmethod
    def exact(cls, q: Rational, bits: int = 256) -> Interval:
        """Degenerate interval holding q without rounding."""
        q = _as_fraction(q)
        return cls(q, q, bits)

    @classmethod
    def span(cls, lo: Rational, hi: Rational, bits: int = 256) -> Interval:
        return cls(floor_dyadic(lo, bits), ceil_dyadic(hi, bits), bits)

    # -- helpers -----------------------------------------------------------

    def _coerce(self, other) -> Interval:
        if isinstance(other, Interval):
            return other
        if isinstance(other, (int, Fraction)):
            return Interval.exact(other, self.bits)
        return NotImplemented

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, x) -> bool:
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    def overlaps(self, other: Interval) -> bool:
        return not (self.hi < other.lo or other.hi < self.lo)

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def at(self, bits: int) -> Interval:
        return Interval(floor_dyadic(self.lo, bits), ceil_dyadic(self.hi, bits), bits)

    def mag(self) -> Fraction:
        """Upper bound of |x| over the interval."""
        return max(abs(self.lo), abs(self.hi))

    def mig(self) -> Fraction:
        """Lower bound of |x| over the interval."""
        if self.contains_zero():
            return Fraction(0)
        return min(abs(self.lo), abs(self.hi))

    def __float__(self) -> float:
        return float(self.mid)

    def __repr__(self) -> str:
        return f"Interval[{float(self.lo):.17g}, {float(self.hi):.17g}]"

    # -- arithmetic --------------------------------------------------------

    def _make(self, lo: Fraction, hi: Fraction, bits: int) -> Interval:
        return Interval(floor_dyadic(lo, bits), ceil_dyadic(hi, bits), bits)

    def __neg__(self) -> Interval:
        return Interval(-self.hi, -self.lo, self.bits)

    def __pos__(self) -> Interval:
        return self

    def __add__(self, other) -> Interval:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        b = max(self.bits, other.bits)
        return self._make(self.lo + other.lo, self.hi + other.hi, b)

    __radd__ = __add__

    def __sub__(self, other) -> Interval:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        b = max(self.bits, other.bits)
        return self._make(self.lo - other.hi, self.hi - other.lo, b)

    def __rsub__(self, other) -> Interval:
        return (-self).__add__(other)

    def __mul__(self, other) -> Interval:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        b = max(self.bits, other.bits)
        if self.lo >= 0 and other.lo >= 0:
            return self._make(self.lo * other.lo, self.hi * other.hi, b)
        p = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return self._make(min(p), max(p), b)

    __rmul__ = __mul__

    def reciprocal(self) -> Interval:
        if self.contains_zero():
            raise DivisionByZero(f"division by an interval containing zero: {self!r}")
        return self._make(1 / self.hi, 1 / self.lo, self.bits)

    def __truediv__(self, other) -> Interval:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_point():
            if other.lo == 0:
                raise DivisionByZero("division by zero")
            b = max(self.bits, other.bits)
            lo, hi = self.lo / other.lo, self.hi / other.lo
            if other.lo < 0:
                lo, hi = hi, lo
            return self._make(lo, hi, b)
        return self * other.reciprocal()

    def __rtruediv__(self, other) -> Interval:
        return self._coerce(other) / self

    def __abs__(self) -> Interval:
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Interval(Fraction(0), max(-self.lo, self.hi), self.bits)

    def sqr(self) -> Interval:
        a = abs(self)
        return self._make(a.lo * a.lo, a.hi * a.hi, self.bits)

    def __pow__(self, n: int) -> Interval:
        if not isinstance(n, int) or n < 0:
            raise TypeError("Interval ** n requires a non-negative int; use iv_pow")
        if n == 0:
            return Interval.exact(1, self.bits)
        if self.lo >= 0:
            return self._make(self.lo ** n, self.hi ** n, self.bits)
        if self.hi <= 0:
            r = (-self) ** n
            return r if n % 2 == 0 else -r
        if n % 2 == 0:
            return self._make(Fraction(0), max(-self.lo, self.hi) ** n, self.bits)
        return self._make(self.lo ** n, self.hi ** n, self.bits)

    def maximum(self, other) -> Interval:
        other = self._coerce(other)
        return Interval(max(self.lo, other.lo), max(self.hi, other.hi), max(self.bits, other.bits))

    def minimum(self, other) -> Interval:
        other = self._coerce(other)
        return Interval(min(self.lo, other.lo), min(self.hi, other.hi), max(self.bits, other.bits))

    def hull(self, other: Interval) -> Interval:
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi), max(self.bits, other.bits))

    def sqrt(self) -> Interval:
        return iv_sqrt(self)


def iv_from_rat(q: Rational, prec: Precision) -> Interval:
    """Enclose the rational ``q`` at ``prec.bits`` bits."""
    return Interval.point(q, prec.bits)


def _sqrt_down(q: Fraction, bits: int) -> Fraction:
    if q <= 0:
        return Fraction(0)
    s = max(0, (bits - floor_log2(q) // 2) + 2)
    x = q * (1 << (2 * s))
    return Fraction(isqrt(_floor_frac(x)), 1 << s)


def _sqrt_up(q: Fraction, bits: int) -> Fraction:
    if q <= 0:
        return Fraction(0)
    s = max(0, (bits - floor_log2(q) // 2) + 2)
    x = q * (1 << (2 * s))
    c = _ceil_frac(x)
    r = isqrt(c)
    if r * r < c:
        r += 1
    return Fraction(r, 1 << s)


def iv_sqrt(x: Interval) -> Interval:
    if x.hi < 0:
        raise NonPositiveInput("square root of a negative interval")
    lo = max(x.lo, Fraction(0))
    return Interval(floor_dyadic(_sqrt_down(lo, x.bits), x.bits),
                    ceil_dyadic(_sqrt_up(x.hi, x.bits), x.bits), x.bits)


def iv_log2(x: Interval) -> Interval:
    """Enclosure of log2 over every point of ``x``."""
    if x.lo <= 0:
        raise NonPositiveInput(f"log2 of an interval reaching {x.lo}")
    W = x.bits + _GUARD
    lo = _log2_bound(floor_dyadic(x.lo, W), W, upper=False)
    hi = _log2_bound(ceil_dyadic(x.hi, W), W, upper=True)
    return Interval(floor_dyadic(lo, x.bits), ceil_dyadic(hi, x.bits), x.bits)


def iv_exp2(x: Interval) -> Interval:
    """Enclosure of 2**t for every t in ``x``."""
    W = x.bits + _GUARD
    lo = _exp2_bound(x.lo, W, upper=False)
    hi = _exp2_bound(x.hi, W, upper=True)
    return Interval(floor_dyadic(lo, x.bits), ceil_dyadic(hi, x.bits), x.bits)


def iv_pow(x: Interval, e) -> Interval:
    """Enclosure of x**e computed as 2**(e * log2 x)."""
    if x.lo <= 0:
        raise NonPositiveBase(f"real power of an interval reaching {x.lo}")
    if not isinstance(e, Interval):
        e = Interval.exact(e, x.bits)
    if e.is_point() and e.lo == 0:
        return Interval.exact(1, x.bits)
    if x.is_point() and x.lo == 1:
        return Interval.exact(1, x.bits)
    return iv_exp2(e * iv_log2(x))


def iv_compare(x: Interval, y: Interval) -> Ordering:
    if x.hi < y.lo:
        return Ordering.LESS
    if x.lo > y.hi:
        return Ordering.GREATER
    return Ordering.UNDECIDED


def log2_power(L: Interval, alpha) -> Interval:
    """(log2 a)^alpha given an enclosure L of log2 a >= 0.

    Handles the boundary a = 1 (L = 0) where the real power is 0.
    """
    if L.hi < 0:
        raise NonPositiveInput("log2^alpha needs a >= 1")
    if L.hi == 0:
        return Interval.exact(0, L.bits)
    if L.lo <= 0:
        upper = iv_pow(Interval(L.hi, L.hi, L.bits), alpha)
        return Interval(Fraction(0), upper.hi, L.bits)
    return iv_pow(L, alpha)


# ---------------------------------------------------------------------------
# Complex boxes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntervalComplex:
    re: Interval
    im: Interval

    @classmethod
    def real(cls, x: Interval) -> IntervalComplex:
        return cls(x, Interval.exact(0, x.bits))

    @classmethod
    def exact(cls, re: Rational, im: Rational = 0, bits: int = 256) -> IntervalComplex:
        return cls(Interval.exact(re, bits), Interval.exact(im, bits))

    @property
    def bits(self) -> int:
        return max(self.re.bits, self.im.bits)

    def is_real(self) -> bool:
        return self.im.is_point() and self.im.lo == 0

    def _coerce(self, other) -> IntervalComplex:
        if isinstance(other, IntervalComplex):
            return other
        if isinstance(other, Interval):
            return IntervalComplex.real(other)
        if isinstance(other, (int, Fraction)):
            return IntervalComplex.exact(other, 0, self.bits)
        return NotImplemented

    def __add__(self, other) -> IntervalComplex:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return IntervalComplex(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self) -> IntervalComplex:
        return IntervalComplex(-self.re, -self.im)

    def __sub__(self, other) -> IntervalComplex:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return IntervalComplex(self.re - other.re, self.im - other.im)

    def __rsub__(self, other) -> IntervalComplex:
        return (-self) + other

    def __mul__(self, other) -> IntervalComplex:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_real() and other.is_real():
            return IntervalComplex.real(self.re * other.re)
        return IntervalComplex(self.re * other.re - self.im * other.im,
                               self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def conjugate(self) -> IntervalComplex:
        return IntervalComplex(self.re, -self.im)

    def abs_sq(self) -> Interval:
        if self.is_real():
            return self.re.sqr()
        return self.re.sqr() + self.im.sqr()

    def __abs__(self) -> Interval:
        if self.is_real():
            return abs(self.re)
        return iv_sqrt(self.abs_sq())

    def contains_zero(self) -> bool:
        return self.re.contains_zero() and self.im.contains_zero()

    def overlaps(self, other: IntervalComplex) -> bool:
        return self.re.overlaps(other.re) and self.im.overlaps(other.im)

    def reciprocal(self) -> IntervalComplex:
        if self.is_real():
            return IntervalComplex.real(self.re.reciprocal())
        n = self.abs_sq()
        return IntervalComplex(self.re / n, -self.im / n)

    def __truediv__(self, other) -> IntervalComplex:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.reciprocal()

    def __repr__(self) -> str:
        if self.is_real():
            return f"{self.re!r}"
        return f"({self.re!r} + i*{self.im!r})"


# ---------------------------------------------------------------------------
# Formatting
# ---------------------------------------------------------------------------

def format_directed(q: Rational, digits: int = 20, upper: bool = False) -> str:
    """Decimal scientific string of q rounded down (or up) to ``digits`` digits."""
    q = _as_fraction(q)
    if q == 0:
        return "0"
    sign = "-" if q < 0 else ""
    if q < 0:
        upper = not upper
    a = abs(q)
    e10 = (floor_log2(a) * 30103) // 100000
    while True:
        scaled = a * Fraction(10) ** (digits - 1 - e10)
        m = _ceil_frac(scaled) if upper else _floor_frac(scaled)
        if m >= 10 ** digits:
            e10 += 1
        elif m < 10 ** (digits - 1):
            e10 -= 1
        else:
            break
    s = str(m)
    return f"{sign}{s[0]}.{s[1:]}e{e10:+d}"
