import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from transcert import criteria as cr
from transcert.criteria import (
    CriterionParams,
    Growth,
    HypothesisOutcome,
    assemble_report,
    base_formula,
    check_classical,
    check_hypotheses,
    divergence_verdict,
    frange,
    min_required_base,
    required_bases,
    thm13_exponent,
)
from transcert.errors import ConstraintViolated, EmptyGrid
from transcert.numberfield import golden_field
from transcert.sequences import GrowthProfile, SequenceSpec, builtin_example

D = Fraction(1, 100)


def bases_by_name(bs):
    return {b.name: b for b in bs}


# --- required bases -----------------------------------------------------------

def test_thm14_base_for_example_25():
    p = CriterionParams("1.4", beta=Fraction(1, 2), y=1)
    assert bases_by_name(required_bases("1.4", 2, p))["transcendence"].value(D) == 9


def test_thm17_bases_for_example_27():
    p = CriterionParams("1.7", beta=Fraction(1, 2), y1=1, y2=Fraction(1, 2), eta1=0, eta2=1)
    b = bases_by_name(required_bases("1.7", 2, p))
    assert b["transcendence_1"].symbolic() == "13+2δ"
    assert b["transcendence_1"].value(D) == 13 + 2 * D
    assert b["transcendence_2"].value(D) == 13


def test_literal_example_27_params_violate_constraint():
    p = CriterionParams("1.7", beta=Fraction(1, 2), y1=Fraction(1, 2), y2=1, eta1=0, eta2=1)
    with pytest.raises(ConstraintViolated) as info:
        required_bases("1.7", 2, p)
    assert info.value.which == "y1 >= 1"


def test_degree_one_reduces_to_erdos_base():
    p = CriterionParams("1.4", beta=0, y=1)
    assert bases_by_name(required_bases("1.4", 1, p))["transcendence"].value(D) == 2
    assert bases_by_name(base_formula("1.1", 1))["irrationality"].value(D) == 2


def test_thm16_with_d1_matches_corollary():
    for beta in (Fraction(0), Fraction(1, 3), Fraction(1, 2)):
        b16 = bases_by_name(base_formula("1.6", 1, beta=beta, y=1, eta1=beta, eta2=1))
        b71 = bases_by_name(base_formula("7.1", 1, beta=beta))
        assert b16["transcendence_1"].value(D) == b71["transcendence"].value(D)


def test_thm13_exponent():
    assert thm13_exponent(2, 3) == Fraction(1, 24)
    assert thm13_exponent(2, 1) == 1


def test_constraints():
    with pytest.raises(ConstraintViolated):
        CriterionParams("1.4", beta=1, epsilon=2).validate(2)
    with pytest.raises(ConstraintViolated):
        CriterionParams("1.2", epsilon=3, gamma=5).validate(1)
    CriterionParams("1.2", epsilon=1, gamma=10, alpha=Fraction(9, 10)).validate(1)
    with pytest.raises(ConstraintViolated):
        CriterionParams("1.6", eta1=5, y=1, beta=0).validate(2)


betas = st.fractions(min_value=0, max_value=Fraction(13, 20), max_denominator=60)
ys = st.fractions(min_value=1, max_value=5, max_denominator=60)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5), betas, ys, ys)
def test_bases_monotone_in_parameters(d, beta, y, y2):
    lo = base_formula("1.7", d, beta=beta, y1=y, y2=y2)
    hi = base_formula("1.7", d, beta=beta, y1=y + 1, y2=y2)
    for a, b in zip(lo, hi):
        assert b.value(D) >= a.value(D)
    # larger d never helps
    more = base_formula("1.4", d + 1, beta=beta, y=y)
    less = base_formula("1.4", d, beta=beta, y=y)
    assert all(m.value(D) > l.value(D) for m, l in zip(more, less))
    # irrationality never needs more than transcendence
    b = bases_by_name(base_formula("1.6", d, beta=beta, y=y))
    assert b["irrationality"].value(D) <= b["transcendence_2"].value(D)


# --- divergence verdicts -----------------------------------------------------

def test_divergence_examples():
    assert divergence_verdict(GrowthProfile(14, A=1.0), 13) is Growth.DIVERGES
    assert divergence_verdict(GrowthProfile(5, A_L=1.0), 5) is Growth.BOUNDARY_DIVERGES
    assert divergence_verdict(GrowthProfile(7, A=1.0), 9) is Growth.BOUNDED
    assert divergence_verdict(GrowthProfile(9, A=1.0), 9) is Growth.BOUNDARY_BOUNDED
    inf = base_formula("1.3", 2)[1]
    assert divergence_verdict(GrowthProfile(9, A=1.0), inf) is Growth.BOUNDED


# --- min_required_base --------------------------------------------------------

def test_example_23_first_branch():
    grid = frange(Fraction(-1), Fraction(3), Fraction(1, 10), include_lo=False)
    assert len(grid) == 40
    bounds = {"y1": lambda c: (2 - c / 4) / (2 + c), "y2": lambda c: (1 + c) / (2 + c),
              "beta": lambda c: (1 + c) / (2 + c)}
    for c in grid:
        v, _ = min_required_base("1.7", 2, bounds, [c])
        assert v == 13 + 3 * c
    best, where = min_required_base("1.7", 2, bounds, grid)
    assert best > 9 and where == Fraction(-9, 10)


def test_example_23_second_branch():
    grid = frange(Fraction(-19, 10), Fraction(-1), Fraction(1, 10))
    bounds = {"y1": lambda c: (2 - c / 4) / (2 + c), "y2": 0, "beta": 0}
    for c in grid:
        assert min_required_base("1.7", 2, bounds, [c])[0] == (8 - c) / (2 + c) + 1
    assert min_required_base("1.7", 2, bounds, grid) == (10, -1)


def test_example_23_high_degree():
    for d in range(4, 8):
        v, _ = min_required_base("1.7", d, {"y1": 1, "y2": 0, "beta": 0}, [0])
        assert v >= 17 > 9


def test_empty_grid():
    with pytest.raises(EmptyGrid):
        min_required_base("1.7", 2, {}, [])


# --- report assembly -----------------------------------------------------------

def _outcome(label, verdicts):
    return HypothesisOutcome(label, label, list(range(2, 2 + len(verdicts))), list(verdicts))


def test_assemble_report_cases():
    bases = base_formula("1.4", 2, beta=0, y=1)  # 3, 5
    ok = [_outcome("(2)", ["Holds"] * 3)]
    assert assemble_report(ok, bases, GrowthProfile(7, A=1.0)).overall == "TranscendenceCriteriaMet"
    r = assemble_report(ok, bases, GrowthProfile(4, A=1.0))
    assert r.overall == "NotApplicable" and r.irrationality == "IrrationalityCriteriaMet"
    assert any("growth" in s for s in r.reasons)
    r = assemble_report([_outcome("(2)", ["Holds", "Undecided"])], bases, GrowthProfile(7, A=1.0))
    assert r.overall == "Inconclusive"
    r = assemble_report([_outcome("(2)", ["Holds", "Fails"])], bases, GrowthProfile(7, A=1.0))
    assert r.overall == "NotApplicable" and "fails at n=3" in r.reasons[0]
    assert assemble_report(ok, bases, None).overall == "Inconclusive"


# --- hypothesis checks ---------------------------------------------------------

@pytest.mark.parametrize("id_, theorem", [("2.5", "1.6"), ("2.4", "1.6")])
def test_examples_hold(id_, theorem):
    s = builtin_example(id_, theorem)
    p = CriterionParams.from_exponents(theorem, s.exponents)
    outcomes, recipe = check_hypotheses(s, p, (2, 4))
    assert all(o.overall == "Holds" for o in outcomes), [(o.label, o.verdicts) for o in outcomes]


def test_monotonicity_failure_detected():
    K = golden_field()
    s = SequenceSpec.from_lists(K, [3, 2, 5, 7, 11], [1, 1, 1, 1, 1])
    s = s.with_profile(GrowthProfile(2, A=1.0))
    outcomes, _ = check_hypotheses(s, CriterionParams("1.4"), (1, 3))
    first = {o.label: o for o in outcomes}["(2)"]
    assert first.overall == "Fails" and first.first_failing == 1


def test_classical_erdos_square_growth():
    K = golden_field()
    s = SequenceSpec.from_lists(K, [n * n for n in range(1, 30)], [1] * 29)
    out = check_classical(s, "erdos", CriterionParams("1.1", epsilon=Fraction(1, 2)), (1, 20))
    assert all(o.overall == "Holds" for o in out)


def test_classical_ak_house_condition():
    K = golden_field()
    s5 = K.sqrt_of_integer(5)
    s = SequenceSpec.from_lists(K, [s5 * (k * k + 2) for k in range(1, 12)], [1] * 11)
    out = check_classical(s, "andersen_kristensen", CriterionParams("1.3", epsilon=Fraction(1, 2)), (2, 6))
    house = [o for o in out if "house" in o.label or "house" in o.description]
    assert house and all(o.overall == "Holds" for o in house)


def test_missing_zeta_is_inconclusive():
    # real b_n of alternating sign: no recipe makes Re(zeta b_n) > 0 for all n
    K = golden_field()
    a = [K.rational(2 ** (3 ** n)) for n in range(1, 7)]
    b = [(-1) ** n * K.one for n in range(1, 7)]
    s = SequenceSpec.from_lists(K, a, b).with_profile(GrowthProfile(3, A=1.0))
    rep = cr.verify(s, CriterionParams("1.4", beta=0, y=1), (2, 4))
    four = {o.label: o for o in rep.outcomes}["(4)"]
    assert four.overall == "Undecided"
    assert rep.overall == "Inconclusive"


def test_report_json_round_trip():
    rep = cr.run_example_case(cr.example_cases("2.4")[0], (2, 3))
    data = rep.to_json()
    assert json.loads(json.dumps(data)) == data
    assert data["overall"] == "TranscendenceCriteriaMet"
