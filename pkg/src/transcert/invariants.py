"""Randomized battery for the height inequalities and the field norm.

In a real Galois field every conjugate of an element is again an element of
the field, so the Mahler measure ``M(a) = c_k prod max(1, |a_i|)`` and the
house are themselves exact field elements.  Comparisons between heights are
raised to a common power (``H(a)^k = M(a)``) and decided exactly: the
difference is a field element whose sign is certified by interval
evaluation, and equality is detected exactly.  This matters because the
inequalities are often tight (``H(phi^2) = H(phi)^2``, ``H(1/a) = H(a)``).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional

from .errors import ConjugatePair, EqualInputs, ZeroForm
from .exactmath import Precision
from .linalg import det
from .numberfield import (
    FieldElement,
    NumberField,
    golden_field,
    height,
    house,
    house_linear_constant,
    liouville_check,
    linear_form_bound,
    minimal_polynomial,
    norms,
)

HOLDS, FAILS, UNDECIDED = "Holds", "Fails", "Undecided"


def sign(x: FieldElement, prec: Optional[Precision] = None) -> int:
    """Exact sign of a real field element (distinguished embedding)."""
    if x.is_zero():
        return 0
    if x.is_rational():
        return 1 if x.as_rational() > 0 else -1
    v = x.real_value(prec or Precision(64, 1 << 16))
    if v.lo > 0:
        return 1
    if v.hi < 0:
        return -1
    raise ArithmeticError("sign of a nonzero element not resolved")


def exact_abs(x: FieldElement) -> FieldElement:
    return -x if sign(x) < 0 else x


def exact_max(x: FieldElement, y: FieldElement) -> FieldElement:
    return x if sign(x - y) >= 0 else y


def _require_real_galois(K: NumberField):
    if not K.is_galois() or not all(K.is_real_embedding(i) for i in range(K.degree)):
        raise ValueError("exact heights need a totally real Galois field")


def exact_conjugates(a: FieldElement) -> list[FieldElement]:
    """The deg(a) distinct conjugates of a, as field elements."""
    K = a.field
    _require_real_galois(K)
    if a.is_rational():
        return [a]
    out: list[FieldElement] = []
    for i in range(len(K.automorphisms())):
        z = K.apply_automorphism(i, a)
        if all(z != w for w in out):
            out.append(z)
    return out


def exact_mahler(a: FieldElement) -> FieldElement:
    f = minimal_polynomial(a)
    M = a.field.rational(f.leading)
    one = a.field.one
    for z in exact_conjugates(a):
        M = M * exact_max(one, exact_abs(z))
    return M


def exact_house(a: FieldElement) -> FieldElement:
    h = a.field.zero
    for z in exact_conjugates(a):
        h = exact_max(h, exact_abs(z))
    return h


def height_power(a: FieldElement, L: int) -> FieldElement:
    """H(a)^L exactly, for L a multiple of deg(a)."""
    k = 1 if a.is_rational() else minimal_polynomial(a).degree
    if L % k:
        raise ValueError("L must be a multiple of deg a")
    return exact_mahler(a) ** (L // k)


def _le(x: FieldElement, y: FieldElement) -> str:
    return HOLDS if sign(y - x) >= 0 else FAILS


def _eq(x: FieldElement, y: FieldElement) -> str:
    return HOLDS if x == y else FAILS


@dataclass
class BatteryResult:
    instances: int
    counts: dict = dc_field(default_factory=dict)
    failures: list = dc_field(default_factory=list)

    def record(self, label: str, verdict: str, detail: str = ""):
        c = self.counts.setdefault(label, {HOLDS: 0, FAILS: 0, UNDECIDED: 0})
        c[verdict] += 1
        if verdict != HOLDS and len(self.failures) < 20:
            self.failures.append(f"{label}: {verdict} {detail}")

    @property
    def all_hold(self) -> bool:
        return all(c[FAILS] == 0 and c[UNDECIDED] == 0 for c in self.counts.values())

    def to_json(self) -> dict:
        return {"instances": self.instances,
                "counts": {k: dict(v) for k, v in sorted(self.counts.items())},
                "all_hold": self.all_hold, "failures": list(self.failures)}


def random_element(K: NumberField, rng: random.Random, bound: int = 1000, rational: bool = True) -> FieldElement:
    while True:
        coords = [Fraction(rng.randint(-bound, bound), rng.randint(1, 12) if rational else 1)
                  for _ in range(K.degree)]
        a = K.element(coords)
        if not a.is_zero():
            return a


def run_battery(count: int = 200, seed: int = 0, K: Optional[NumberField] = None,
                prec: Optional[Precision] = None) -> BatteryResult:
    """Check the height lemmas and the norm on ``count`` random instances."""
    K = K or golden_field()
    prec = prec or Precision()
    rng = random.Random(seed)
    res = BatteryResult(count)
    basis = K.basis_elements()
    C = house_linear_constant(basis, prec)
    L = 2 * K.degree  # common multiple of every degree appearing below (d <= 2 fields)
    for _ in range(count):
        a = random_element(K, rng)
        b = random_element(K, rng)
        tag = f"a={a!r}, b={b!r}"

        # Lemma 3.4: H^k = M and M <= |c_k| max(house^k, 1)
        # (interval H from the numeric conjugates, raised to k, must meet the exact M)
        k = 1 if a.is_rational() else minimal_polynomial(a).degree
        Hk = height(a, prec) ** k
        Mv = exact_mahler(a).real_value(prec)
        res.record("L3.4 equality", HOLDS if Hk.overlaps(Mv) else FAILS, tag)
        lead = minimal_polynomial(a).leading
        res.record("L3.4 inequality",
                   _le(exact_mahler(a), K.rational(lead) * exact_max(exact_house(a) ** k, K.one)), tag)

        # Lemma 3.5
        if not (a + b).is_zero():
            res.record("L3.5 sum", _le(height_power(a + b, L), 2 ** L * height_power(a, L) * height_power(b, L)), tag)
        else:
            res.record("L3.5 sum", _le(height_power(K.one, L), 2 ** L * height_power(a, L) * height_power(b, L)), tag)
        res.record("L3.5 product", _le(height_power(a * b, L), height_power(a, L) * height_power(b, L)), tag)
        res.record("L3.5 inverse", _eq(height_power(1 / a, L), height_power(a, L)), tag)

        # Lemma 3.6 (skip conjugate or equal pairs, which the lemma excludes)
        try:
            res.record("L3.6 Liouville", liouville_check(a, b, prec), tag)
        except (ConjugatePair, EqualInputs):
            pass

        # Lemma 3.7: house(sum c_i x_i) <= C max |c_i|
        cs = [Fraction(rng.randint(-1000, 1000), rng.randint(1, 12)) for _ in basis]
        comb = sum((c * x for c, x in zip(cs, basis)), K.zero)
        m = max(abs(c) for c in cs)
        if comb.is_zero():
            res.record("L3.7 house bound", HOLDS)
        else:
            h = house(comb, prec)
            rhs = C * m
            res.record("L3.7 house bound", HOLDS if h.hi <= rhs.lo else (FAILS if h.lo > rhs.hi else UNDECIDED), tag)

        # Lemma 2.2 on an irrational x
        x = a if not a.is_rational() else a + K.theta
        u, v = rng.randint(-1000, 1000), rng.randint(-1000, 1000)
        if (u, v) != (0, 0):
            try:
                res.record("L2.2 linear form", linear_form_bound(x, u, v, prec), tag)
            except ZeroForm:
                pass

        # field norm against the determinant of the multiplication matrix
        res.record("norm = det", HOLDS if norms(a)[1] == det(a.mult_matrix()) else FAILS, tag)
    return res
