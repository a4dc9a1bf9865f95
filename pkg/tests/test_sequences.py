import json
import math

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from transcert.errors import CeilingExceeded, ParseError, UndefinedSymbol
from transcert.numberfield import golden_field
from transcert.sequences import (
    CEILING_BITS,
    LN_PHI,
    GrowthProfile,
    SequenceSpec,
    builtin_example,
    fib,
    infer_profile,
    parse_constant,
    parse_seq,
    phi_power,
    phibar_power,
    sort_by_modulus,
    spec_from_json,
)


def fib_iter(m: int) -> int:
    a, b = 0, 1
    for _ in range(m):
        a, b = b, a + b
    return a


def test_fib_values():
    assert fib(0) == 0 and fib(1) == 1
    assert fib(9) == 34 and fib(14) == 377
    assert fib(100) == 354224848179261915075


def test_fib_negative_indices():
    for m in range(1, 30):
        assert fib(-m) == (-1) ** (m + 1) * fib(m)


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=3000))
def test_fib_matches_sympy(m):
    assert fib(m) == int(sympy.fibonacci(m))


def test_phi_power_coordinates():
    K = golden_field()
    assert phi_power(1).coords == (0, 1)
    assert phi_power(5).coords == (3, 5)
    assert phi_power(5) == K.theta * K.theta * K.theta * K.theta * K.theta
    assert phi_power(-7) == 13 * K.theta - 21  # = -phibar^7 > 0
    assert phibar_power(3) == (1 - K.theta) ** 3


def test_dsl_examples():
    e = parse_seq("F(9^n) * F(9^n + 1)")
    assert e(1).as_rational() == 34 * 55
    p = parse_seq("phi^(2*14^n)")(1)
    assert p.coords == (196418, 317811)
    assert parse_seq("-n + 3")(5).as_rational() == -2


def test_dsl_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_seq("F(")
    assert info.value.position == 2


def test_dsl_constant_rejects_n():
    with pytest.raises(UndefinedSymbol):
        parse_constant("n + 1")
    assert parse_constant("phibar") == 1 - golden_field().theta


def test_builtin_examples():
    K = golden_field()
    s25 = builtin_example("2.5")
    assert s25.profile.g == 7 and s25.profile.A == pytest.approx(LN_PHI)
    s24 = builtin_example("2.4")
    assert s24.profile.g == 5 and s24.profile.A == 0 and s24.profile.A_L == 1
    assert s24.profile.B == pytest.approx(LN_PHI)
    s27 = builtin_example("2.7")
    assert s27.a(1) == phi_power(28)
    assert s27.b(1) == K.theta + 377
    s21 = builtin_example("2.1")
    assert s21.a(1).as_rational() == 34 * 55
    nested = builtin_example("2.1", index_convention="nested")
    assert nested.a(1).as_rational() == fib(9) * fib(81)


def test_builtin_coordinates_are_consistent():
    for id_, view in [("2.4", "1.6"), ("2.4", "1.4"), ("2.5", "1.6"), ("2.5", "1.4"),
                      ("2.6", "1.4"), ("2.7", None)]:
        s = builtin_example(id_, view)
        for n in (1, 2):
            a = sum((c * x for c, x in zip(s.a_coords(n), s.basis)), s.field.zero)
            b = sum((c * x for c, x in zip(s.b_coords(n), s.basis)), s.field.zero)
            assert a == s.a(n) and b == s.b(n), (id_, view, n)


def test_profile_matches_measured_growth():
    for id_ in ("2.4", "2.5", "2.7"):
        worst = builtin_example(id_).validate_profile([2, 3, 4])
        assert worst < 0.05


def test_infer_profile_on_user_sequence():
    s = spec_from_json({"a": "F(10^n)*F(10^n+1)", "b": "1"})
    prof = infer_profile(s)
    assert prof.g == 10 and prof.inferred
    assert prof.A == pytest.approx(2 * LN_PHI, rel=1e-3)


def test_ceiling():
    s = builtin_example("2.7")
    with pytest.raises(CeilingExceeded):
        s.check_range(1, 8)
    s.check_range(1, 4)
    assert s.profile.log2_estimate(4) < CEILING_BITS < s.profile.log2_estimate(5)


def test_sort_by_modulus():
    K = golden_field()
    s = SequenceSpec.from_lists(K, [1, 2, 3], [1, 1, 1])
    assert sort_by_modulus(s, [1, 1, 1], 3) == [1, 2, 3]
    s = SequenceSpec.from_lists(K, [10, 2, 5], [1, 1, 1])
    assert sort_by_modulus(s, [1, 1, 1], 3) == [2, 3, 1]
    s = SequenceSpec.from_lists(K, [2, 2], [1, 1])
    assert sort_by_modulus(s, [3, 2], 2) == [2, 1]


def test_finite_spec_refuses_missing_terms():
    s = SequenceSpec.from_lists(golden_field(), [2, 3], [1, 1])
    with pytest.raises(CeilingExceeded):
        s.a(3)


def test_spec_json_round_trip():
    data = {"a": "phi^(7^n)", "b": "1", "c": "free",
            "profile": {"g": "7", "A": repr(LN_PHI)},
            "exponents": {"beta": "0", "y": "1", "eta1": "0", "eta2": "1"}}
    s = spec_from_json(json.dumps(data))
    ref = builtin_example("2.5")
    for n in (1, 2, 3):
        assert s.a(n) == ref.a(n)
    assert s.profile.to_json() == GrowthProfile.from_json(s.profile.to_json()).to_json()
    assert s.exponents["eta2"] == 1


def test_growth_profile_rejects_non_double_exponential():
    with pytest.raises(ValueError):
        GrowthProfile(1, A=1.0)
    with pytest.raises(ValueError):
        GrowthProfile(3)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=1, max_value=400))
def test_fast_doubling_against_iteration(m):
    assert fib(m) == fib_iter(m)
    assert phi_power(m).coords == (fib(m - 1), fib(m))


def test_ln_phi():
    assert LN_PHI == pytest.approx(math.log((1 + 5 ** 0.5) / 2))
