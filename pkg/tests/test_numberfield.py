from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from transcert.errors import ConjugatePair, InvalidField, NotIntegerCoords
from transcert.exactmath import Precision
from transcert.linalg import det
from transcert.numberfield import (
    NumberField,
    basis_change,
    conjugates,
    denominator,
    golden_field,
    height,
    house,
    house_linear_constant,
    integer_coords,
    liouville_check,
    linear_form_bound,
    mahler_and_height,
    minimal_polynomial,
    norms,
)

mpmath.mp.prec = 600
PHI = (1 + mpmath.sqrt(5)) / 2


def mp_in(iv, x) -> bool:
    return mpmath.mpf(iv.lo.numerator) / iv.lo.denominator <= x <= mpmath.mpf(iv.hi.numerator) / iv.hi.denominator


@pytest.fixture(scope="module")
def K():
    return golden_field()


def test_basic_identities(K):
    phi = K.theta
    phibar = 1 - phi
    assert phi * phibar == K.rational(-1)
    assert phi + phibar == K.one
    assert phi ** 5 == 5 * phi + 3


def test_minimal_polynomials(K):
    phi = K.theta
    sqrt5 = K.sqrt_of_integer(5)
    assert minimal_polynomial(phi).coeffs == (-1, -1, 1)
    assert minimal_polynomial(K.rational(2)).coeffs == (-2, 1)
    assert minimal_polynomial(sqrt5 / 2).coeffs == (-5, 0, 4)


def test_conjugates_against_quadratic_formula(K):
    cs = conjugates(K.theta)
    reals = sorted(float(c.re.mid) for c in cs)
    assert reals == pytest.approx([float((1 - mpmath.sqrt(5)) / 2), float(PHI)])
    assert len(conjugates(K.rational(3))) == 1
    s5 = sorted(float(c.re.mid) for c in conjugates(K.sqrt_of_integer(5)))
    assert s5 == pytest.approx([-5 ** 0.5, 5 ** 0.5])


def test_house(K):
    assert mp_in(house(K.theta), PHI)
    assert house(K.rational(-2)).contains(2)
    assert mp_in(house(K.sqrt_of_integer(5)), mpmath.sqrt(5))


def test_denominator(K):
    assert denominator(K.theta) == 1
    assert denominator(K.rational(Fraction(1, 2))) == 2
    assert denominator(K.sqrt_of_integer(5) / 2) == 4


def test_norms(K):
    assert norms(K.theta) == (-1, -1)
    assert norms(K.rational(3)) == (3, 9)


def test_mahler_and_height(K):
    M, H = mahler_and_height(K.theta)
    assert mp_in(M, PHI) and mp_in(H, mpmath.sqrt(PHI))
    assert height(K.rational(2)).contains(2)
    assert mahler_and_height(K.rational(Fraction(1, 2)))[0].contains(2)


def test_liouville(K):
    phi = K.theta
    assert liouville_check(phi, K.one) == "Holds"
    assert liouville_check(K.rational(2), K.rational(3)) == "Holds"
    with pytest.raises(ConjugatePair):
        liouville_check(phi, 1 - phi)


def test_linear_form(K):
    s5 = K.sqrt_of_integer(5)
    for a, b in [(0, 1), (1, 0), (9, -4)]:
        assert linear_form_bound(s5, a, b) == "Holds"


def test_house_linear_constant(K):
    s5 = K.sqrt_of_integer(5)
    phi = K.theta
    assert mp_in(house_linear_constant([K.one, s5]), 2 * mpmath.sqrt(5))
    assert house_linear_constant([K.one]).contains(1)
    assert mp_in(house_linear_constant([phi, 1 - phi]), 2 * PHI)


def test_basis_change(K):
    phi, one = K.theta, K.one
    assert basis_change([one, phi], [one, phi]).Q == 1
    bc = basis_change([one, phi], [2 * one, 2 * phi])
    assert bc.Q == 4
    assert bc.convert([3, 5]) == [6, 10]
    s5 = K.sqrt_of_integer(5)
    bc = basis_change([one, s5], [one, phi])
    assert bc.Q == 1
    assert [list(r) for r in bc.transform] == [[1, 0], [-1, 2]]


def test_integer_coords(K):
    phi = K.theta
    basis = [K.one, phi]
    assert integer_coords(5 * phi + 3, basis) == ([3, 5], 1)
    assert integer_coords(K.rational(6), basis) == ([6, 0], 6)
    with pytest.raises(NotIntegerCoords):
        integer_coords(phi / 2, basis)


def test_reducible_polynomial_rejected():
    with pytest.raises(InvalidField):
        NumberField([-1, 0, 1], ((1, 0), (0, 1)))


def test_cubic_field_against_sympy():
    # x^3 - 2: one real embedding, not Galois
    K = NumberField([-2, 0, 0, 1], ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    assert not K.is_galois()
    a = K.theta + 1
    x = sympy.symbols("x")
    ref = sympy.Poly(sympy.minimal_polynomial(sympy.cbrt(2) + 1, x), x).all_coeffs()
    assert list(reversed(minimal_polynomial(a).coeffs)) == [int(c) for c in ref]
    assert norms(a)[1] == det(a.mult_matrix())


def test_galois_structure(K):
    assert K.is_galois()
    assert K.apply_automorphism(1, K.theta) == 1 - K.theta or K.apply_automorphism(0, K.theta) == 1 - K.theta


def test_json_round_trip(K):
    L = NumberField.from_json(K.to_json())
    assert L.to_json() == K.to_json()


coord = st.integers(min_value=-1000, max_value=1000)


@settings(max_examples=80, deadline=None)
@given(coord, coord, coord, coord)
def test_field_axioms_and_norm_multiplicativity(a0, a1, b0, b1):
    K = golden_field()
    a, b = K.element([a0, a1]), K.element([b0, b1])
    assert (a + b) - b == a
    assert a * b == b * a
    if not a.is_zero():
        assert a * (1 / a) == K.one
        assert norms(a)[1] == det(a.mult_matrix())
    if not a.is_zero() and not b.is_zero():
        assert norms(a * b)[1] == norms(a)[1] * norms(b)[1]


@settings(max_examples=40, deadline=None)
@given(coord, coord)
def test_value_against_mpmath(a0, a1):
    K = golden_field()
    a = K.element([a0, a1])
    v = a.real_value(Precision(128))
    assert mp_in(v, a0 + a1 * PHI) or a.is_zero()
