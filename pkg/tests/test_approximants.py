import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from transcert import approximants as ap
from transcert.criteria import CriterionParams
from transcert.errors import NotGalois, NotRationalA, PrecondViolated
from transcert.exactmath import Precision
from transcert.numberfield import NumberField, golden_field
from transcert.sequences import SequenceSpec, builtin_example, phi_power

mpmath.mp.prec = 400
PHI = (1 + mpmath.sqrt(5)) / 2


def mp_in(iv, x, rel=mpmath.mpf(2) ** -300) -> bool:
    """iv meets the oracle value x, allowing for the oracle's own rounding."""
    lo = mpmath.mpf(iv.lo.numerator) / iv.lo.denominator
    hi = mpmath.mpf(iv.hi.numerator) / iv.hi.denominator
    slack = abs(x) * rel
    return lo - slack <= x <= hi + slack


def sum_oracle_25(start=1, terms=6):
    return mpmath.fsum(PHI ** (-(7 ** n)) for n in range(start, start + terms))


# --- partial sums ------------------------------------------------------------

def test_partial_sum_examples():
    s25 = builtin_example("2.5")
    assert ap.partial_sum(s25, None, 1).is_zero()
    assert ap.partial_sum(s25, None, 2) == phi_power(-7)
    assert ap.partial_sum(s25, None, 2) == 13 * golden_field().theta - 21
    s = SequenceSpec.from_lists(golden_field(), [2, 3], [1, 1])
    assert ap.partial_sum(s, None, 3).as_rational() == Fraction(5, 6)


def test_sum_enclosure_against_summation_oracle():
    enc = ap.sum_enclosure(builtin_example("2.5"))
    assert mp_in(enc, sum_oracle_25())
    assert float(enc.mid) == pytest.approx(0.0344418538, abs=1e-10)


def test_sum_enclosure_width_example_24():
    enc = ap.sum_enclosure(builtin_example("2.4"), prec=Precision(256))
    assert enc.width <= Fraction(1, 2 ** 100)
    oracle = mpmath.fsum(1 / (mpmath.mpf(n) ** (5 ** n) * PHI ** n) for n in range(1, 6))
    assert mp_in(enc, oracle)


def test_finite_spec_tail_is_exact_sum():
    s = SequenceSpec.from_lists(golden_field(), [2, 3], [1, 1])
    enc = ap.sum_enclosure(s)
    assert enc.contains(Fraction(5, 6)) and enc.width < Fraction(1, 2 ** 200)


# --- rational construction ---------------------------------------------------

def test_rational_construction_factorials():
    K = golden_field()
    s = SequenceSpec.from_lists(K, [math.factorial(n + 1) for n in range(1, 8)], [1] * 7)
    app = ap.build_q_p_rational(s, None, 3, M=2)
    assert app.q == 12
    assert app.p == [8, 0]


def test_rational_construction_example_21():
    s = builtin_example("2.1")
    app = ap.build_q_p_rational(s, None, 3, M=2, E=1,
                                params=CriterionParams("1.4", beta=Fraction(1, 2), y=1))
    assert all(isinstance(v, int) for v in app.p)
    assert app.checks["(15)"] == "Holds"


def test_rational_construction_degenerate_n1():
    s = builtin_example("2.1")
    app = ap.build_q_p_rational(s, None, 1, M=2)
    assert app.q == 1 and app.p == [0, 0]


def test_rational_construction_rejects_irrational_a():
    with pytest.raises(NotRationalA):
        ap.build_q_p_rational(builtin_example("2.5"), None, 2, M=2)


# --- general construction ----------------------------------------------------

def test_general_construction_example_27():
    s = builtin_example("2.7")
    apps = [ap.build_q_p_general(s, None, N, prec=Precision(512)) for N in (2, 3)]
    for a in apps:
        assert all(isinstance(v, int) for v in a.p)
        assert a.checks["(21)"] == "Holds" and a.checks["(22)"] == "Holds"
    assert ap.err_strictly_decreasing(apps)


def test_general_construction_example_25_first_step():
    s = builtin_example("2.5")
    app = ap.build_q_p_general(s, None, 2)
    assert app.info["kappa"] == "1"
    # a_1 = phi^7 has coordinates (8, 13), r_1 = 1 and norm (phi phibar)^7 = -1
    assert s.a_coords(1) == [8, 13]
    assert all(isinstance(v, int) for v in app.p)


def test_galois_required():
    K = NumberField([-2, 0, 0, 1], ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    s = SequenceSpec.from_lists(K, [K.theta + 2, K.theta + 5], [1, 1])
    with pytest.raises(NotGalois):
        ap.galois_constants(s)


# --- Z_N -----------------------------------------------------------------------

def z_oracle(N, M=5, c=0.5):
    tail = sum_oracle_25(N)
    if N == 1:
        return tail
    logs = [7 ** n * mpmath.log(PHI, 2) for n in range(1, N)]
    return mpmath.power(2, N * N * mpmath.power(logs[-1], c) + M * mpmath.fsum(logs)) * tail


@pytest.mark.parametrize("N", [1, 2, 3, 4, 5])
def test_z_value_against_oracle(N):
    z = ap.z_value(builtin_example("2.5"), ap.ZParams(5, Fraction(1, 2)), N, Precision(512))
    assert mp_in(z, z_oracle(N))


def test_z_params_validation():
    with pytest.raises(ValueError):
        ap.ZParams(c=1)
    with pytest.raises(ValueError):
        ap.ZParams(M=0)


# --- tail lemmas -------------------------------------------------------------

def test_tail_gamma_example_25():
    rep = ap.tail_checks(builtin_example("2.5"), "gamma", Fraction(1, 2), 2)
    assert rep.verdict == "Holds"


def test_tail_window_single_term():
    rep = ap.tail_checks(builtin_example("2.5"), "window", Fraction(1, 2), 2, Q=2)
    assert rep.verdict == "Holds" and rep.Q == 2


def test_tail_gamma_precondition():
    K = golden_field()
    s = SequenceSpec.from_lists(K, [2, 3, 100, 10 ** 6, 10 ** 12, 10 ** 24], [1] * 6)
    with pytest.raises(PrecondViolated):
        ap.tail_checks(s, "Gamma", Fraction(1, 2), 2)


# --- records and identities ----------------------------------------------------

def test_record_indices():
    assert ap.record_indices([1, 2, 4, 8, 16]).records == [2, 3, 4, 5]
    assert ap.record_indices([3] * 6).records == []
    s = builtin_example("2.4")
    ys = [float(s.profile.ln_estimate(n)) for n in range(1, 6)]
    assert ap.record_indices([Fraction(y) for y in ys]).records == [2, 3, 4, 5]


def test_identity_23_examples():
    assert ap.identity_23(1, 0, 1, 3) == (8, 8)
    lhs, rhs = ap.identity_23(Fraction(3, 2), Fraction(1, 3), 2, 5)
    assert lhs == rhs
    lhs, rhs = ap.identity_23(2, Fraction(1, 7), 4, 5)
    assert lhs == rhs


small_q = st.fractions(min_value=0, max_value=20, max_denominator=50)


@settings(max_examples=100, deadline=None)
@given(small_q, small_q, st.integers(0, 10), st.integers(1, 10))
def test_identity_23_random(M, delta, k, gap):
    lhs, rhs = ap.identity_23(M, delta, k, k + gap)
    assert lhs == rhs


def test_lemma65_on_doubling():
    a = [Fraction(2) ** (3 ** n) for n in range(1, 9)]
    assert ap.lemma65_check(a, 1, 0, 2, 6) == "Holds"


# --- height and separation ---------------------------------------------------

@pytest.mark.parametrize("N", [1, 2, 3])
def test_height_bound_example_21(N):
    assert ap.height_bound_sN(builtin_example("2.1"), None, N)["verdict"] == "Holds"


def test_height_bound_rational_b():
    K = golden_field()
    s = SequenceSpec.from_lists(K, [2, 6, 42, 1806], [1, 1, 1, 1])
    assert ap.height_bound_sN(s, None, 4)["verdict"] == "Holds"


def test_partial_sum_separation():
    K = golden_field()
    pos = SequenceSpec.from_lists(K, [2, 3, 7, 43], [1, 1, 1, 1])
    assert ap.partial_sum_separation(pos, 4)["verdict"] == "Separated"
    s = builtin_example("2.1", x="phibar")
    assert ap.partial_sum_separation(s, 4)["verdict"] == "Separated"
