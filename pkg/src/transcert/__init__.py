"""transcert: certified checks of irrationality and transcendence criteria
for series sum b_n / (a_n c_n) with terms in a real or complex number field.

Layers, bottom up:

* ``exactmath``: dyadic outward-rounded intervals and the precision ladder.
* ``numberfield``: exact arithmetic in Q(theta), embeddings, heights, norms.
* ``sequences``: Fibonacci and phi powers, growth profiles, the sequence DSL,
  the built-in worked examples.
* ``criteria``: hypothesis checks, required bases, growth verdicts, reports.
* ``approximants``: partial sums, tail enclosures, (q, p) constructions.
* ``invariants``: randomized battery for the height lemmas.
* ``cli``: the ``transcert`` command.
"""

from .errors import *  # noqa: F401,F403
from .exactmath import Interval, IntervalComplex, Precision
from .numberfield import FieldElement, NumberField, golden_field
from .sequences import (
    GrowthProfile,
    SequenceSpec,
    builtin_example,
    fib,
    infer_profile,
    parse_seq,
    phi_power,
    spec_from_json,
)
from .criteria import (
    CriterionParams,
    VerificationReport,
    check_hypotheses,
    divergence_verdict,
    example_cases,
    min_required_base,
    required_bases,
    run_example_case,
    verify,
)
from .approximants import (
    build_q_p_general,
    build_q_p_rational,
    partial_sum,
    sum_enclosure,
    z_value,
)
from .invariants import run_battery

__version__ = "0.1.0"

__all__ = [
    "Interval", "IntervalComplex", "Precision",
    "FieldElement", "NumberField", "golden_field",
    "GrowthProfile", "SequenceSpec", "builtin_example", "fib", "infer_profile",
    "parse_seq", "phi_power", "spec_from_json",
    "CriterionParams", "VerificationReport", "check_hypotheses", "divergence_verdict",
    "example_cases", "min_required_base", "required_bases", "run_example_case", "verify",
    "build_q_p_general", "build_q_p_rational", "partial_sum", "sum_enclosure", "z_value",
    "run_battery", "__version__",
]
