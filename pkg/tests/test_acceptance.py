"""Acceptance criteria 1-9, each at its stated tolerance.

Every test carries ``@pytest.mark.criterion(n)``; conftest prints one
PASS/FAIL line per criterion at the end of the run.  Criteria are checked
as stated: a criterion the mathematics does not support fails here rather
than being weakened.
"""

import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from transcert import approximants as ap
from transcert.criteria import (
    CriterionParams,
    Growth,
    example_cases,
    frange,
    min_required_base,
    required_bases,
    run_example_case,
)
from transcert.exactmath import Precision
from transcert.invariants import run_battery
from transcert.numberfield import golden_field
from transcert.sequences import builtin_example, fib, phi_power

criterion = pytest.mark.criterion
D = Fraction(1, 100)


# --- 1 -------------------------------------------------------------------------

@criterion(1)
def test_fibonacci_fast_doubling():
    t0 = time.perf_counter()
    a, b = 0, 1
    for m in range(0, 20001):
        assert fib(m) == a, m
        a, b = b, a + b
    assert time.perf_counter() - t0 < 10
    assert fib(9) == 34 and fib(14) == 377


# --- 2 -------------------------------------------------------------------------

@criterion(2)
def test_phi_power_identity():
    K = golden_field()
    acc = K.one
    for m in range(1, 1001):
        acc = acc * K.theta
        p = phi_power(m)
        assert p == acc, m
        assert p.coords == (fib(m - 1), fib(m)), m


# --- 3 -------------------------------------------------------------------------

@criterion(3)
def test_height_battery():
    res = run_battery(200, seed=0)
    assert res.instances == 200
    for label, c in res.counts.items():
        assert c["Fails"] == 0, (label, res.failures)
        assert c["Undecided"] == 0, (label, res.failures)
    assert res.counts["norm = det"]["Holds"] == 200
    expected = {"L3.4 equality", "L3.4 inequality", "L3.5 sum", "L3.5 product", "L3.5 inverse",
                "L3.6 Liouville", "L3.7 house bound", "L2.2 linear form", "norm = det"}
    assert expected <= set(res.counts)


# --- 4 -------------------------------------------------------------------------

def _named(bases):
    return {b.name: b.value(D) for b in bases}


@criterion(4)
def test_required_base_arithmetic():
    # Example 2.5 via Theorem 1.4: d = 2, y = 1, beta = 1/2 -> 9 > 7
    b = _named(required_bases("1.4", 2, CriterionParams("1.4", beta=Fraction(1, 2), y=1)))
    assert b["transcendence"] == 9 and b["transcendence"] > 7
    # d >= 4 shortcut
    for d in range(4, 9):
        v, _ = min_required_base("1.7", d, {"y1": 1, "y2": 0, "beta": 0}, [0])
        assert v >= 17 > 9
    # first branch: 13 + 3c on (-1, 3] step 1/10
    grid = frange(Fraction(-1), Fraction(3), Fraction(1, 10), include_lo=False)
    bounds = {"y1": lambda c: (2 - c / 4) / (2 + c), "y2": lambda c: (1 + c) / (2 + c),
              "beta": lambda c: (1 + c) / (2 + c)}
    for c in grid:
        v, _ = min_required_base("1.7", 2, bounds, [c])
        assert v == 13 + 3 * c and v > 9
    # second branch: (8 - c)/(2 + c) + 1 on (-2 + 1/10, -1] step 1/10
    grid = frange(Fraction(-19, 10), Fraction(-1), Fraction(1, 10))
    bounds = {"y1": lambda c: (2 - c / 4) / (2 + c), "y2": 0, "beta": 0}
    for c in grid:
        v, _ = min_required_base("1.7", 2, bounds, [c])
        assert v == (8 - c) / (2 + c) + 1 and v >= 10
    # Example 2.7 second base 13 < growth 14
    p = CriterionParams("1.7", beta=Fraction(1, 2), y1=1, y2=Fraction(1, 2), eta1=0, eta2=1)
    b = _named(required_bases("1.7", 2, p))
    assert b["transcendence_2"] == 13 < 14


# --- 5 -------------------------------------------------------------------------

@criterion(5)
@pytest.mark.parametrize("id_", ["2.4", "2.5", "2.7"])
def test_example_hypotheses_and_growth(id_):
    prec = Precision(256, 1024)
    for case in example_cases(id_):
        rep = run_example_case(case, (2, 4), prec)
        assert rep.precision_bits <= 1024
        assert all(o.overall == "Holds" for o in rep.outcomes), (case.theorem, rep.reasons)
        claim_applicable = case.claim == "applicable"
        trans = {k: v for k, v in rep.growth_verdicts.items() if k != "irrationality"}
        if claim_applicable:
            assert all(Growth(v).diverges for v in trans.values()), (case.theorem, trans)
            assert rep.overall == "TranscendenceCriteriaMet"
        else:
            assert any(Growth(v) is Growth.BOUNDED for v in trans.values()), (case.theorem, trans)
            assert rep.overall == "NotApplicable"
    if id_ == "2.4":
        rep = run_example_case(example_cases("2.4")[0], (2, 4), prec)
        assert rep.growth_verdicts["transcendence_2"] == Growth.BOUNDARY_DIVERGES


@criterion(5)
def test_boundary_discrepancy_is_reported():
    case = example_cases("2.1")[0]
    rep = run_example_case(case, (2, 4), Precision(256, 1024))
    assert rep.growth_verdicts["transcendence"] == Growth.BOUNDARY_BOUNDED
    assert rep.overall != "TranscendenceCriteriaMet"
    assert any("DISCREPANCY" in n for n in rep.notes)


# --- 6 -------------------------------------------------------------------------

@criterion(6)
def test_example_27_approximants():
    t0 = time.perf_counter()
    s = builtin_example("2.7")
    prec = Precision(512)
    galois = ap.galois_constants(s)
    apps = [ap.build_q_p_general(s, None, N, prec=prec, galois=galois) for N in (2, 3, 4)]
    for a in apps:
        assert all(type(v) is int for v in a.p)
        assert a.checks["(21)"] == "Holds"
        assert a.checks["(22)"] == "Holds"
    assert ap.err_strictly_decreasing(apps)
    assert time.perf_counter() - t0 < 60


# --- 7 -------------------------------------------------------------------------

@criterion(7)
def test_z_quantity_example_25():
    s = builtin_example("2.5")
    params = ap.ZParams(M=5, c=Fraction(1, 2), beta=0)
    zs = {N: ap.z_value(s, params, N, Precision(512)) for N in range(2, 6)}
    shown = {N: f"{float(z.mid):.4g}" for N, z in zs.items()}
    assert zs[5].hi < Fraction(1, 1000), shown
    for N in range(2, 5):
        assert zs[N + 1].hi < zs[N].lo, f"Z_{N + 1} is not below Z_{N}: {shown}"


# --- 8 -------------------------------------------------------------------------

@criterion(8)
def test_identity_23_and_records():
    rng = random.Random(2024)
    for _ in range(100):
        M = Fraction(rng.randint(0, 400), rng.randint(1, 40))
        delta = Fraction(rng.randint(0, 100), rng.randint(1, 40))
        k = rng.randint(0, 12)
        N = k + rng.randint(1, 12)
        res = ap.identity_checks(M, delta, k, N)
        assert res["ok"], (M, delta, k, N)
    doubling = [2 ** n for n in range(1, 21)]
    assert ap.record_indices(doubling).records == list(range(2, 21))
    assert ap.record_indices([5] * 20).records == []
    assert ap.record_indices([Fraction(7, 3)] * 20).undecided == []


# --- 9 -------------------------------------------------------------------------

@criterion(9)
def test_json_determinism():
    cmd = [sys.executable, "-m", "transcert", "example", "2.7", "--format", "json"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first and first == second
