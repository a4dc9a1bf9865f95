"""Exact arithmetic in a number field K = Q(theta) and its height invariants.

Elements are stored by their rational coordinates in the power basis
1, theta, ..., theta^(d-1); the declared basis x_1..x_d is a change of
coordinates on top of that.  Products are reduced modulo the minimal
polynomial of theta and inverses come from an exact linear solve, so no
floating point ever enters field arithmetic.

Numerical information (conjugates, house, Mahler measure, Weil height) comes
from certified enclosures of the d embeddings theta -> theta_j.  For
quadratic generators the roots come from the closed formula with an interval
square root.  For higher degree, mpmath supplies approximations which are
then certified with disjoint inclusion disks (Weierstrass/Braess-Hadeler
bound), so mpmath is only ever a source of guesses.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import gcd
from typing import Iterable, Optional, Sequence, Union

import mpmath

from . import linalg
from .errors import (
    ConjugatePair,
    DivisionByZero,
    EqualInputs,
    FieldMismatch,
    InvalidField,
    NotGalois,
    NotInSpan,
    NotIntegerCoords,
    PrecisionExhausted,
    ZeroForm,
)
from .exactmath import (
    Interval,
    IntervalComplex,
    Precision,
    ceil_dyadic,
    floor_dyadic,
    iv_pow,
    iv_sqrt,
    _sqrt_down,
    _sqrt_up,
)

Verdict = str  # "Holds" | "Fails" | "Undecided"
HOLDS, FAILS, UNDECIDED = "Holds", "Fails", "Undecided"

_EXTRA_BITS = 32


# ---------------------------------------------------------------------------
# Integer polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntPolynomial:
    """Primitive integer polynomial c_0 + c_1 X + ... + c_k X^k with c_k > 0."""

    coeffs: tuple

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        if len(c) < 2 or c[-1] <= 0:
            raise ValueError("need degree >= 1 and a positive leading coefficient")
        g = 0
        for x in c:
            g = gcd(g, x)
        if g != 1:
            raise ValueError("polynomial is not primitive")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_rational(cls, coeffs: Sequence) -> IntPolynomial:
        return cls(tuple(linalg.primitive_int(coeffs)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                x = "X" if i == 1 else f"X^{i}"
                body = x if mag == 1 else f"{mag}*{x}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


# ---------------------------------------------------------------------------
# Root certification
# ---------------------------------------------------------------------------

def _frac_of_mpf(x) -> Fraction:
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    if man == 0:
        return Fraction(0)
    q = Fraction(int(man)) * (Fraction(2) ** int(exp))
    return -q if sign else q


def _approx_roots(coeffs: Sequence[int], bits: int) -> list[tuple[Fraction, Fraction]]:
    """Gaussian-rational approximations of all roots, conjugate pairs exact."""
    dps = int(bits * 0.302) + 20
    with mpmath.workdps(dps):
        roots = mpmath.polyroots(list(reversed(coeffs)), maxsteps=200 + 4 * dps,
                                 extraprec=2 * bits + 64)
        tol = mpmath.mpf(2) ** (-(bits // 2))
        out = []
        for r in roots:
            r = mpmath.mpc(r)
            re, im = r.real, r.imag
            scale = max(1, abs(r))
            if abs(im) <= tol * scale:
                out.append((_frac_of_mpf(re), Fraction(0)))
            elif im > 0:
                out.append((_frac_of_mpf(re), _frac_of_mpf(im)))
    # rebuild the lower half-plane roots as exact conjugates
    full = []
    for re, im in out:
        full.append((re, im))
        if im != 0:
            full.append((re, -im))
    return full


def _cmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _cabs2(a) -> Fraction:
    return a[0] * a[0] + a[1] * a[1]


def _certify_disks(coeffs: Sequence[int], approx, bits: int):
    """Inclusion radii for each approximation, or None when disks overlap."""
    d = len(coeffs) - 1
    if len(approx) != d:
        return None
    radii = []
    for i, z in enumerate(approx):
        pz = (Fraction(0), Fraction(0))
        for c in reversed(coeffs):
            pz = _cmul(pz, z)
            pz = (pz[0] + c, pz[1])
        den = (Fraction(coeffs[-1]), Fraction(0))
        for j, w in enumerate(approx):
            if j != i:
                den = _cmul(den, (z[0] - w[0], z[1] - w[1]))
        dd = _cabs2(den)
        if dd == 0:
            return None
        r = d * _sqrt_up(_cabs2(pz), bits + 8) / _sqrt_down(dd, bits + 8)
        radii.append(ceil_dyadic(r, bits + 8) if r else Fraction(0))
    for i in range(d):
        for j in range(i + 1, d):
            gap2 = _cabs2((approx[i][0] - approx[j][0], approx[i][1] - approx[j][1]))
            if (radii[i] + radii[j]) ** 2 >= gap2:
                return None
    return radii


def _order_key(z):
    re, im = z
    # real roots first (descending), then complex by descending real part, +i first
    return (0 if im == 0 else 1, -re, -im)


def certified_roots(coeffs: Sequence[int], bits: int, reference=None) -> list[IntervalComplex]:
    """Disjoint certified enclosures of the roots of a squarefree integer polynomial.

    Ordering is canonical: real roots in decreasing order, then complex roots
    by decreasing real part with the upper half-plane member first.  When
    ``reference`` approximations are given, the result follows that order.
    """
    coeffs = [int(c) for c in coeffs]
    d = len(coeffs) - 1
    if d == 1:
        r = Fraction(-coeffs[0], coeffs[1])
        return [IntervalComplex(Interval.exact(r, bits), Interval.exact(0, bits))]
    if d == 2:
        c0, c1, c2 = coeffs
        disc = c1 * c1 - 4 * c2 * c0
        s = iv_sqrt(Interval.exact(abs(disc), bits + 8))
        if disc > 0:
            lo = ((-c1) + s) / (2 * c2)
            hi = ((-c1) - s) / (2 * c2)
            zero = Interval.exact(0, bits)
            return [IntervalComplex(lo.at(bits), zero), IntervalComplex(hi.at(bits), zero)]
        if disc == 0:
            raise InvalidField("repeated root")
        re = Interval.point(Fraction(-c1, 2 * c2), bits)
        im = (s / (2 * c2)).at(bits)
        return [IntervalComplex(re, im), IntervalComplex(re, -im)]
    work = bits + 16
    for _ in range(6):
        approx = _approx_roots(coeffs, work)
        radii = _certify_disks(coeffs, approx, work)
        if radii is not None:
            break
        work *= 2
    else:
        raise PrecisionExhausted("could not certify separated roots")
    pairs = list(zip(approx, radii))
    if reference is None:
        pairs.sort(key=lambda p: _order_key(p[0]))
    else:
        ordered = []
        for ref in reference:
            best = min(pairs, key=lambda p: _cabs2((p[0][0] - ref[0], p[0][1] - ref[1])))
            ordered.append(best)
        pairs = ordered
    out = []
    for (re, im), r in pairs:
        rei = Interval(floor_dyadic(re - r, bits), ceil_dyadic(re + r, bits), bits)
        if im == 0:
            # a real centre in a disk holding a single root of a real polynomial:
            # the root equals its own conjugate, hence is real
            imi = Interval.exact(0, bits)
        else:
            imi = Interval(floor_dyadic(im - r, bits), ceil_dyadic(im + r, bits), bits)
        out.append(IntervalComplex(rei, imi))
    return out


# ---------------------------------------------------------------------------
# Number fields
# ---------------------------------------------------------------------------

def _to_fraction(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


@dataclass(frozen=True, eq=False)
class NumberField:
    """K = Q(theta) with theta a root of ``minpoly`` and a declared basis.

    ``basis`` lists the declared basis elements as power-basis coordinate
    vectors.  ``distinguished`` selects the embedding that gives |a| its
    meaning in the theorems; by default it is the largest real root.
    """

    minpoly: IntPolynomial
    basis: tuple
    distinguished: Optional[int] = None
    assume_irreducible: bool = False
    name: str = "K"
    basis_names: Optional[tuple] = None
    _cache: dict = dc_field(default_factory=dict, repr=False, compare=False)
    _lock: threading.Lock = dc_field(default_factory=threading.Lock, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.minpoly, IntPolynomial):
            object.__setattr__(self, "minpoly", IntPolynomial(tuple(self.minpoly)))
        d = self.minpoly.degree
        basis = tuple(tuple(_to_fraction(x) for x in vec) for vec in self.basis)
        if len(basis) != d or any(len(v) != d for v in basis):
            raise InvalidField(f"basis must have {d} vectors of length {d}")
        if linalg.rank([list(v) for v in basis]) != d:
            raise InvalidField("basis vectors are linearly dependent")
        object.__setattr__(self, "basis", basis)
        self._check_irreducible()
        ref = certified_roots(self.minpoly.coeffs, 96)
        object.__setattr__(self, "_reference", [(r.re.mid, r.im.mid) for r in ref])
        n_real = sum(1 for r in ref if r.is_real())
        if self.distinguished is None:
            if n_real == 0:
                raise InvalidField("no real embedding: choose the distinguished embedding explicitly")
            object.__setattr__(self, "distinguished", 0)
        elif not 0 <= self.distinguished < d:
            raise InvalidField("distinguished embedding index out of range")
        # columns of B are the basis vectors, so power = B @ coords
        B = linalg.transpose([list(v) for v in basis])
        object.__setattr__(self, "_to_power", B)
        object.__setattr__(self, "_to_coords", linalg.inverse(B))
        c = [Fraction(x) for x in self.minpoly.coeffs]
        monic = [x / c[-1] for x in c[:-1]]
        # reduction table: theta^(d+k) as a power-basis vector, k = 0..d-2
        table = []
        cur = [-x for x in monic]
        for _ in range(max(0, d - 1)):
            table.append(cur)
            shifted = [Fraction(0)] + cur[:-1]
            top = cur[-1]
            cur = [s - top * m for s, m in zip(shifted, monic)]
        object.__setattr__(self, "_reduce", table)

    def _check_irreducible(self):
        f = list(self.minpoly.coeffs)
        d = len(f) - 1
        g = linalg.poly_gcd(f, linalg.poly_derivative(f))
        if len(g) > 1:
            raise InvalidField("minimal polynomial has a repeated factor")
        if d == 1:
            return
        if d <= 3:
            # reducible in degree <= 3 means a rational root p/q with q | c_d
            for r in certified_roots(f, 64):
                if not r.is_real():
                    continue
                for q in linalg.divisors(f[-1]):
                    lo = (r.re.lo * q).__floor__()
                    hi = (r.re.hi * q).__ceil__()
                    for p in range(lo, hi + 1):
                        if self.minpoly(Fraction(p, q)) == 0:
                            raise InvalidField(f"minimal polynomial has the rational root {Fraction(p, q)}")
            return
        if not self.assume_irreducible:
            raise InvalidField("degree >= 4 needs assume_irreducible=True")

    # -- basic data -------------------------------------------------------

    @property
    def degree(self) -> int:
        return self.minpoly.degree

    def embeddings(self, bits: int) -> list[IntervalComplex]:
        with self._lock:
            hit = self._cache.get(("emb", bits))
        if hit is not None:
            return hit
        roots = certified_roots(self.minpoly.coeffs, bits, reference=self._reference)
        with self._lock:
            self._cache[("emb", bits)] = roots
        return roots

    def is_real_embedding(self, index: int) -> bool:
        return self._reference[index][1] == 0

    # -- element constructors ---------------------------------------------

    def from_power(self, coeffs: Sequence) -> FieldElement:
        d = self.degree
        c = [Fraction(x) for x in coeffs]
        if len(c) > d:
            return self._reduce_poly(c)
        c += [Fraction(0)] * (d - len(c))
        return FieldElement(self, tuple(c))

    def element(self, coords: Sequence) -> FieldElement:
        """Element with the given coordinates over the declared basis."""
        coords = [_to_fraction(x) for x in coords]
        if len(coords) != self.degree:
            raise ValueError(f"expected {self.degree} coordinates")
        return FieldElement(self, tuple(linalg.matvec(self._to_power, coords)))

    def rational(self, q) -> FieldElement:
        return self.from_power([_to_fraction(q)])

    @property
    def one(self) -> FieldElement:
        return self.rational(1)

    @property
    def zero(self) -> FieldElement:
        return self.rational(0)

    @property
    def theta(self) -> FieldElement:
        return self.from_power([0, 1]) if self.degree > 1 else self.rational(-Fraction(self.minpoly.coeffs[0], self.minpoly.coeffs[1]))

    def basis_elements(self) -> list[FieldElement]:
        return [FieldElement(self, v) for v in self.basis]

    def _reduce_poly(self, c: list) -> FieldElement:
        d = self.degree
        out = list(c[:d]) + [Fraction(0)] * max(0, d - len(c))
        # reduce from the top so that each theta^(d+k) uses the precomputed table
        for k in range(len(c) - 1, d - 1, -1):
            coef = c[k] if k < len(c) else 0
            if not coef:
                continue
            vec = self._power_vector(k)
            for i in range(d):
                out[i] += coef * vec[i]
        return FieldElement(self, tuple(out))

    def _power_vector(self, k: int) -> list:
        d = self.degree
        if k < d:
            v = [Fraction(0)] * d
            v[k] = Fraction(1)
            return v
        if k - d < len(self._reduce):
            return self._reduce[k - d]
        key = ("pow", k)
        hit = self._cache.get(key)
        if hit is None:
            prev = self._power_vector(k - 1)
            hit = self._times_theta(prev)
            self._cache[key] = hit
        return hit

    def _times_theta(self, v: list) -> list:
        c = self.minpoly.coeffs
        lead = Fraction(c[-1])
        top = v[-1]
        shifted = [Fraction(0)] + list(v[:-1])
        return [s - top * Fraction(ci) / lead for s, ci in zip(shifted, c[:-1])]

    def sqrt_of_integer(self, k: int) -> Optional[FieldElement]:
        """The square root of k in K that is positive under the distinguished
        embedding, or None when it is not in K (searched for d <= 2)."""
        from math import isqrt

        def rat_sqrt(q: Fraction):
            if q < 0:
                return None
            n, m = isqrt(q.numerator), isqrt(q.denominator)
            return Fraction(n, m) if n * n == q.numerator and m * m == q.denominator else None

        r = rat_sqrt(Fraction(k))
        if r is not None:
            return self.rational(r)
        if self.degree != 2 or k < 0:
            return None
        c0, c1, c2 = self.minpoly.coeffs
        disc = c1 * c1 - 4 * c2 * c0
        t = rat_sqrt(Fraction(k, disc)) if disc > 0 else None
        if t is None:
            return None
        sd = self.from_power([c1, 2 * c2])  # sqrt(disc) or its negative
        s = sd * t
        if s.real_value(Precision(64)).hi < 0:
            s = -s
        return s

    # -- Galois structure -------------------------------------------------

    def automorphisms(self) -> list:
        """Images g(theta) of theta under Aut(K/Q), identity first.

        Raises NotGalois when fewer than d automorphisms exist.
        """
        hit = self._cache.get("aut")
        if hit is not None:
            return hit
        d = self.degree
        theta = self.theta
        images = [theta]
        if d == 2:
            c0, c1, c2 = self.minpoly.coeffs
            images.append(self.rational(Fraction(-c1, c2)) - theta)
        elif d >= 3:
            images = self._numeric_automorphisms()
        if len(images) != d:
            raise NotGalois(f"{self.name} is not Galois over Q ({len(images)} of {d} automorphisms)")
        self._cache["aut"] = images
        return images

    def _numeric_automorphisms(self) -> list:
        d = self.degree
        f = self.minpoly
        with mpmath.workdps(80):
            roots = mpmath.polyroots(list(reversed(f.coeffs)), maxsteps=400, extraprec=400)
            ref = [complex(float(r[0]), float(r[1])) for r in self._reference]
            roots = sorted(roots, key=lambda z: min(range(d), key=lambda i: abs(complex(z) - ref[i])))
            V = mpmath.matrix([[roots[i] ** k for k in range(d)] for i in range(d)])
            found = {}
            for j in range(d):
                for perm in permutations(range(d)):
                    if perm[0] != j:
                        continue
                    rhs = mpmath.matrix([roots[perm[i]] for i in range(d)])
                    try:
                        sol = mpmath.lu_solve(V, rhs)
                    except ZeroDivisionError:
                        continue
                    if any(abs(mpmath.im(s)) > mpmath.mpf(10) ** -40 for s in sol):
                        continue
                    coeffs = [Fraction(mpmath.nstr(mpmath.re(s), 70)).limit_denominator(10 ** 25) for s in sol]
                    g = self.from_power(coeffs)
                    if self.evaluate_int_poly(f.coeffs, g).is_zero():
                        found[j] = g
                        break
        return [found[j] for j in sorted(found)]

    def is_galois(self) -> bool:
        try:
            self.automorphisms()
            return True
        except NotGalois:
            return False

    def evaluate_int_poly(self, coeffs: Sequence, x: FieldElement) -> FieldElement:
        acc = self.zero
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc

    def apply_automorphism(self, index: int, a: FieldElement) -> FieldElement:
        g = self.automorphisms()[index]
        acc = self.zero
        for c in reversed(a.power_coeffs):
            acc = acc * g + c
        return acc

    # -- IO ---------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "minpoly": list(self.minpoly.coeffs),
            "basis": [[_fmt_rat(x) for x in v] for v in self.basis],
            "distinguished_embedding": self.distinguished,
            "assume_irreducible": self.assume_irreducible,
        }

    @classmethod
    def from_json(cls, data: Union[dict, str]) -> NumberField:
        if isinstance(data, str):
            data = json.loads(data)
        try:
            mp = IntPolynomial(tuple(int(x) for x in data["minpoly"]))
        except (KeyError, ValueError, TypeError) as exc:
            raise InvalidField(f"bad minpoly: {exc}") from exc
        d = mp.degree
        basis = data.get("basis") or [[int(i == j) for j in range(d)] for i in range(d)]
        return cls(mp, tuple(tuple(_to_fraction(x) for x in v) for v in basis),
                   data.get("distinguished_embedding"), bool(data.get("assume_irreducible", False)))

    def __repr__(self) -> str:
        return f"NumberField({self.minpoly}, d={self.degree})"


def _fmt_rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@lru_cache(maxsize=4)
def golden_field() -> NumberField:
    """Q(sqrt 5) generated by phi, root of X^2 - X - 1, with basis {1, phi}."""
    return NumberField(IntPolynomial((-1, -1, 1)), ((1, 0), (0, 1)), name="Q(sqrt5)",
                       basis_names=("1", "phi"))


def phi() -> FieldElement:
    return golden_field().theta


def phibar() -> FieldElement:
    return 1 - golden_field().theta


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FieldElement:
    field: NumberField
    power_coeffs: tuple

    # -- structure --------------------------------------------------------

    @property
    def coords(self) -> tuple:
        """Coordinates over the field's declared basis."""
        return tuple(linalg.matvec(self.field._to_coords, self.power_coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.power_coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.power_coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.power_coeffs[0]

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.power_coeffs[0] == other
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field is other.field and self.power_coeffs == other.power_coeffs

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.power_coeffs[0])
        return hash((id(self.field), self.power_coeffs))

    def __repr__(self) -> str:
        names = self.field.basis_names
        cs = self.coords
        if names:
            terms = [f"{_fmt_rat(c)}" if n == "1" else f"{_fmt_rat(c)}*{n}" for c, n in zip(cs, names) if c]
            return " + ".join(terms) if terms else "0"
        return f"FieldElement({', '.join(_fmt_rat(c) for c in cs)})"

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise FieldMismatch("elements belong to different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.power_coeffs, other.power_coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.power_coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.power_coeffs, other.power_coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.power_coeffs, other.power_coeffs
        if other.is_rational():
            s = b[0]
            return FieldElement(self.field, tuple(x * s for x in a))
        if self.is_rational():
            s = a[0]
            return FieldElement(self.field, tuple(x * s for x in b))
        d = len(a)
        prod = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return self.field._reduce_poly(prod)

    __rmul__ = __mul__

    def mult_matrix(self) -> list:
        """Matrix of y -> self*y on power-basis coordinates (columns = images)."""
        d = self.field.degree
        cols = []
        for k in range(d):
            e = [0] * d
            e[k] = 1
            cols.append(list((self * self.field.from_power(e)).power_coeffs))
        return linalg.transpose(cols)

    def inverse(self) -> FieldElement:
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if self.is_rational():
            return self.field.rational(1 / self.power_coeffs[0])
        M = self.mult_matrix()
        e1 = [Fraction(1)] + [Fraction(0)] * (self.field.degree - 1)
        x = linalg.solve(M, e1)
        return FieldElement(self.field, tuple(x))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise DivisionByZero("division by zero")
        if other.is_rational():
            s = other.power_coeffs[0]
            return FieldElement(self.field, tuple(x / s for x in self.power_coeffs))
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("field elements only support integer powers")
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- numerics ---------------------------------------------------------

    def embed(self, bits: int, index: Optional[int] = None) -> IntervalComplex:
        """Raw enclosure of the image under embedding ``index`` at ``bits``."""
        if index is None:
            index = self.field.distinguished
        if self.is_rational():
            q = self.power_coeffs[0]
            return IntervalComplex(Interval.exact(q, bits), Interval.exact(0, bits))
        z = self.field.embeddings(bits)[index]
        acc = IntervalComplex.exact(self.power_coeffs[-1], 0, bits)
        for c in reversed(self.power_coeffs[:-1]):
            acc = acc * z
            if c:
                acc = acc + c
        return acc

    def _coeff_bits(self) -> int:
        """Rough log2 of the largest power-basis coefficient."""
        return max((c.numerator.bit_length() - c.denominator.bit_length()
                    for c in self.power_coeffs if c), default=0)

    def value(self, prec: Optional[Precision] = None, index: Optional[int] = None) -> IntervalComplex:
        """Enclosure with relative width at most 2^-bits, refined adaptively.

        Large coefficients can cancel (F_m phi^-m has coefficients of m*0.7
        bits and size about 1/sqrt 5), so the working precision may exceed
        ``max_bits`` by the coefficient size; ``max_bits`` bounds the
        precision of the result, not this cancellation headroom.
        """
        prec = prec or Precision()
        if self.is_rational():
            q = self.power_coeffs[0]
            return IntervalComplex(Interval.point(q, prec.bits), Interval.exact(0, prec.bits))
        target = Fraction(1, 1 << prec.bits)
        for w in _working_ladder(prec, self._coeff_bits()):
            v = self.embed(w, index)
            if _tight(v, target, relative=True):
                return v
        raise PrecisionExhausted(f"could not enclose {self!r} to {prec.bits} bits within {prec.max_bits} bits")

    def real_value(self, prec: Optional[Precision] = None, index: Optional[int] = None) -> Interval:
        if index is None:
            index = self.field.distinguished
        if not self.is_rational() and not self.field.is_real_embedding(index):
            raise ValueError("embedding is not real")
        return self.value(prec, index).re

    def modulus(self, prec: Optional[Precision] = None, index: Optional[int] = None) -> Interval:
        return abs(self.value(prec, index))


def _working_ladder(prec: Precision, coeff_bits: int = 0):
    w = prec.bits + _EXTRA_BITS
    cap = max(prec.max_bits, prec.bits + 2 * coeff_bits) + _EXTRA_BITS
    while w < cap:
        yield w
        w *= 2
    yield cap


def _tight(v: IntervalComplex, target: Fraction, relative: bool) -> bool:
    width = max(v.re.width, v.im.width)
    if relative:
        if v.contains_zero():
            return False
        scale = max(v.re.mig(), v.im.mig())
        return width <= target * scale
    scale = max(Fraction(1), v.re.mag(), v.im.mag())
    return width <= target * scale


def _same_field(*elems: FieldElement) -> NumberField:
    f = elems[0].field
    for e in elems[1:]:
        if e.field is not f:
            raise FieldMismatch("elements belong to different fields")
    return f


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def elem_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    _same_field(a, b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


@lru_cache(maxsize=4096)
def minimal_polynomial(a: FieldElement) -> IntPolynomial:
    """Primitive integer minimal polynomial of ``a`` by exact linear dependence."""
    d = a.field.degree
    powers = [list(a.field.one.power_coeffs)]
    cur = a.field.one
    for k in range(1, d + 1):
        cur = cur * a
        powers.append(list(cur.power_coeffs))
        ns = linalg.nullspace(linalg.transpose(powers))
        if ns:
            return IntPolynomial.from_rational(ns[0])
    raise AssertionError("no linear dependence among 1, a, ..., a^d")


def degree(a: FieldElement) -> int:
    return minimal_polynomial(a).degree


def denominator(a: FieldElement) -> int:
    return minimal_polynomial(a).leading


def norms(a: FieldElement) -> tuple[Fraction, Fraction]:
    """(conjugate product N(a), field norm N_K(a) = N(a)^(d/deg a))."""
    f = minimal_polynomial(a)
    k = f.degree
    conj = Fraction((-1) ** k * f.coeffs[0], f.leading)
    return conj, conj ** (a.field.degree // k)


def conjugates(a: FieldElement, prec: Optional[Precision] = None) -> list[IntervalComplex]:
    """The deg(a) distinct conjugates, from the d embedding images.

    Embedding images are refined until they fall into exactly deg(a)
    mutually disjoint overlap clusters; each cluster then holds a single
    conjugate (with multiplicity d/deg a), enclosed by the intersection of
    its members.
    """
    prec = prec or Precision()
    if a.is_rational():
        q = a.power_coeffs[0]
        return [IntervalComplex(Interval.point(q, prec.bits), Interval.exact(0, prec.bits))]
    k = degree(a)
    d = a.field.degree
    target = Fraction(1, 1 << prec.bits)
    for w in _working_ladder(prec):
        vals = [a.embed(w, i) for i in range(d)]
        clusters = _clusters(vals)
        if len(clusters) != k:
            continue
        boxes = [_intersect(vals[i] for i in cl) for cl in clusters]
        if all(_tight(b, target, relative=False) for b in boxes):
            return [_rebit(b, prec.bits) for b in boxes]
    raise PrecisionExhausted(f"conjugates of {a!r} not separated within {prec.max_bits} bits")


def _clusters(vals: list[IntervalComplex]) -> list[list[int]]:
    n = len(vals)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if vals[i].overlaps(vals[j]):
                parent[find(i)] = find(j)
    groups: dict = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values(), key=lambda g: g[0])


def _intersect(boxes: Iterable[IntervalComplex]) -> IntervalComplex:
    boxes = list(boxes)
    re = Interval(max(b.re.lo for b in boxes), min(b.re.hi for b in boxes), boxes[0].bits)
    im = Interval(max(b.im.lo for b in boxes), min(b.im.hi for b in boxes), boxes[0].bits)
    return IntervalComplex(re, im)


def _rebit(b: IntervalComplex, bits: int) -> IntervalComplex:
    im = b.im if b.is_real() else b.im.at(bits)
    return IntervalComplex(b.re.at(bits), Interval(im.lo, im.hi, bits))


def house(a: FieldElement, prec: Optional[Precision] = None) -> Interval:
    """Enclosure of the largest modulus among the conjugates of ``a``."""
    prec = prec or Precision()
    if a.is_rational():
        return Interval.point(abs(a.power_coeffs[0]), prec.bits)
    target = Fraction(1, 1 << prec.bits)
    d = a.field.degree
    for w in _working_ladder(prec):
        mods = [abs(a.embed(w, i)) for i in range(d)]
        h = mods[0]
        for m in mods[1:]:
            h = h.maximum(m)
        if h.lo > 0 and h.width <= target * h.lo:
            return h.at(prec.bits)
    raise PrecisionExhausted(f"house of {a!r} not resolved within {prec.max_bits} bits")


def mahler_and_height(a: FieldElement, prec: Optional[Precision] = None) -> tuple[Interval, Interval]:
    """Mahler measure M(a) and Weil height H(a) = M(a)^(1/deg a)."""
    prec = prec or Precision()
    f = minimal_polynomial(a)
    k = f.degree
    if a.is_rational():
        q = a.power_coeffs[0]
        m = Interval.exact(max(abs(q.numerator), q.denominator), prec.bits)
        return m, m
    M = Interval.exact(f.leading, prec.bits + 16)
    for z in conjugates(a, prec.with_bits(prec.bits + 16)):
        M = M * abs(z).maximum(1)
    H = iv_pow(M, Fraction(1, k))
    return M.at(prec.bits), H.at(prec.bits)


def height(a: FieldElement, prec: Optional[Precision] = None) -> Interval:
    return mahler_and_height(a, prec)[1]


def _certify_geq(lhs_fn, rhs_fn, prec: Precision) -> Verdict:
    """Refine until lhs >= rhs is certified; never returns Fails."""
    bits = prec.bits
    while True:
        p = Precision(bits, max(bits, prec.max_bits))
        try:
            lhs, rhs = lhs_fn(p), rhs_fn(p)
        except PrecisionExhausted:
            return UNDECIDED
        if lhs.lo >= rhs.hi:
            return HOLDS
        if lhs.hi < rhs.lo:
            return FAILS
        if bits >= prec.max_bits:
            return UNDECIDED
        bits = min(2 * bits, prec.max_bits)


def liouville_check(a: FieldElement, b: FieldElement, prec: Optional[Precision] = None) -> Verdict:
    """Certify |a - b| >= (2 H(a) H(b))^(-deg a * deg b)."""
    prec = prec or Precision()
    _same_field(a, b)
    if a == b:
        raise EqualInputs("a and b are equal")
    fa, fb = minimal_polynomial(a), minimal_polynomial(b)
    if fa == fb:
        raise ConjugatePair("a and b are conjugate")
    e = -fa.degree * fb.degree
    diff = a - b

    def lhs(p):
        return diff.modulus(p)

    def rhs(p):
        return iv_pow(2 * height(a, p) * height(b, p), e)

    return _certify_geq(lhs, rhs, prec)


def linear_form_bound(x: FieldElement, a: int, b: int, prec: Optional[Precision] = None) -> Verdict:
    """Certify |a + b x| >= C max(|a|, |b|, 1)^(-2 deg x) with
    C = min((2 H(x))^(-deg x), |x|)."""
    prec = prec or Precision()
    if x.is_zero():
        raise ZeroForm("x must be non-zero")
    form = x * b + a
    if form.is_zero():
        raise ZeroForm(f"{a} + {b}*x vanishes")
    k = degree(x)
    big = max(abs(a), abs(b), 1)

    def C(p):
        return iv_pow(2 * height(x, p), -k).minimum(x.modulus(p))

    def rhs(p):
        return C(p) * Interval.point(Fraction(1, big ** (2 * k)), p.bits)

    return _certify_geq(lambda p: form.modulus(p), rhs, prec)


def house_linear_constant(elems: Sequence[FieldElement], prec: Optional[Precision] = None) -> Interval:
    """C = (number of elements) * max house, the constant bounding the house of
    any rational combination by C * max |c_i|."""
    if not elems:
        raise ValueError("need at least one element")
    prec = prec or Precision()
    h = house(elems[0], prec)
    for e in elems[1:]:
        h = h.maximum(house(e, prec))
    return h * len(elems)


def _span_solve(target: FieldElement, span: Sequence[FieldElement]) -> Optional[list[Fraction]]:
    A = linalg.transpose([list(e.power_coeffs) for e in span])
    return linalg.solve(A, list(target.power_coeffs))


def coords_over(a: FieldElement, basis: Sequence[FieldElement]) -> list[Fraction]:
    """Rational coordinates of ``a`` over ``basis`` (NotInSpan when impossible)."""
    _same_field(a, *basis)
    x = _span_solve(a, basis)
    if x is None:
        raise NotInSpan(f"{a!r} is not in the span of the given elements")
    return x


def integer_coords(a: FieldElement, basis: Sequence[FieldElement]) -> tuple[list[int], int]:
    """Integer coordinates of ``a`` over ``basis`` and their gcd r."""
    x = coords_over(a, basis)
    if any(c.denominator != 1 for c in x):
        raise NotIntegerCoords(f"coordinates {[_fmt_rat(c) for c in x]} are not all integers")
    ints = [int(c) for c in x]
    r = 0
    for c in ints:
        r = gcd(r, c)
    return ints, r


@dataclass(frozen=True)
class BasisChange:
    """Result of re-expressing a basis x over new elements x'.

    ``transform[i][j]`` is the rational coefficient p_ij/q_ij of x_i on x'_j.
    Integer coordinates xi over x become integer coordinates over x'_j / Q
    via ``convert``.
    """

    Q: int
    transform: tuple

    def convert(self, int_coords: Sequence[int]) -> list[int]:
        out = []
        for j in range(len(self.transform[0]) if self.transform else 0):
            s = sum((self.Q * self.transform[i][j] * c for i, c in enumerate(int_coords)), Fraction(0))
            if s.denominator != 1:
                raise NotIntegerCoords("converted coordinate is not an integer")
            out.append(int(s))
        return out


def basis_change(x: Sequence[FieldElement], xp: Sequence[FieldElement]) -> BasisChange:
    """Express each x_i over x' and return Q = prod of coefficient denominators."""
    _same_field(*x, *xp)
    # keep a maximal independent prefix-greedy subset of x' so coefficients are unique
    chosen: list[int] = []
    for j, e in enumerate(xp):
        trial = [list(xp[k].power_coeffs) for k in chosen + [j]]
        if linalg.rank(trial) == len(chosen) + 1:
            chosen.append(j)
    rows = []
    for xi in x:
        sol = _span_solve(xi, [xp[j] for j in chosen])
        if sol is None:
            raise NotInSpan(f"{xi!r} is not in the span of x'")
        row = [Fraction(0)] * len(xp)
        for j, v in zip(chosen, sol):
            row[j] = v
        rows.append(tuple(row))
    Q = 1
    for row in rows:
        for v in row:
            Q *= v.denominator
    change = BasisChange(Q, tuple(rows))
    # exactness post-check: x_i = sum_j (Q * T_ij) * (x'_j / Q)
    for xi, row in zip(x, rows):
        acc = xi.field.zero
        for v, e in zip(row, xp):
            acc = acc + e * v
        assert acc == xi, "basis change does not reproduce x_i"
    return change
