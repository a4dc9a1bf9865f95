"""Command-line front end.

Commands: ``example``, ``verify``, ``applicability``, ``approximate``,
``sum`` and ``invariants``.  Every command can print a text report or
deterministic JSON (``--format json``).

Exit codes: 0 success, 1 internal error or refused request, 2 Inconclusive,
3 parse error, 4 empty grid, 5 field not Galois.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import approximants as ap
from . import criteria as cr
from .errors import (
    CeilingExceeded,
    ConstraintViolated,
    EmptyGrid,
    NotGalois,
    ParseError,
    TranscertError,
)
from .exactmath import Precision, format_directed
from .expr import evaluate, parse_rational
from .invariants import run_battery
from .numberfield import NumberField, golden_field
from .sequences import (
    EXAMPLE_IDS,
    SequenceSpec,
    builtin_example,
    infer_profile,
    spec_from_json,
)

EXIT_OK, EXIT_ERROR, EXIT_INCONCLUSIVE, EXIT_PARSE, EXIT_EMPTY_GRID, EXIT_NOT_GALOIS = 0, 1, 2, 3, 4, 5


# ---------------------------------------------------------------------------
# Argument helpers
# ---------------------------------------------------------------------------

def parse_range(text: str) -> tuple[int, int]:
    """``"2..4"`` -> (2, 4); a single integer gives a one-point range."""
    m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?", text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) else lo
    if lo < 1 or hi < lo:
        raise argparse.ArgumentTypeError(f"empty or invalid range {text!r}")
    return lo, hi


def parse_grid(text: str) -> list[Fraction]:
    """Interval notation with a step: ``"(-1,3]:1/10"``, ``"[-19/10,-1]:1/10"``.

    The grid is lo + k*step, with the endpoints included or excluded as
    bracketed.  A single value ``"2"`` is a one-point grid.
    """
    m = re.fullmatch(r"\s*([\[(])\s*([^,]+?)\s*,\s*([^\])]+?)\s*([\])])\s*(?::\s*(.+))?\s*", text)
    if not m:
        return [parse_rational(text)]
    lo, hi = parse_rational(m.group(2)), parse_rational(m.group(3))
    step = parse_rational(m.group(5)) if m.group(5) else Fraction(1)
    if step <= 0:
        raise ValueError("grid step must be positive")
    return cr.frange(lo, hi, step, m.group(1) == "[", m.group(4) == "]")


def _parse_params(items) -> dict:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise ValueError(f"parameter {item!r} must look like name=value")
        k, v = item.split("=", 1)
        k = k.strip()
        out[k] = parse_rational(v.strip())
    return out


def _precision(args) -> Precision:
    return Precision(args.precision, max(args.precision, args.max_precision))


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------

def dump_json(obj) -> str:
    """Deterministic JSON: fixed key order, no floats of unstable repr."""
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _emit(args, payload: dict, text: str) -> None:
    out = dump_json(payload) if args.format == "json" else text.rstrip("\n") + "\n"
    if args.out:
        Path(args.out).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)


# ---------------------------------------------------------------------------
# Spec loading
# ---------------------------------------------------------------------------

def _load_field(path: Optional[str]) -> NumberField:
    if not path:
        return golden_field()
    return NumberField.from_json(Path(path).read_text(encoding="utf-8"))


def _ensure_profile(spec: SequenceSpec) -> SequenceSpec:
    if spec.profile is None:
        spec = spec.with_profile(infer_profile(spec))
    return spec


def load_spec(args) -> SequenceSpec:
    if getattr(args, "builtin", None):
        return builtin_example(args.builtin, getattr(args, "view", None), args.index_convention,
                               x=getattr(args, "x", None))
    if getattr(args, "sequence", None):
        data = json.loads(Path(args.sequence).read_text(encoding="utf-8"))
        if args.field and "field" not in data:
            data["field"] = json.loads(Path(args.field).read_text(encoding="utf-8"))
        return _ensure_profile(spec_from_json(data, name=Path(args.sequence).stem))
    if getattr(args, "a", None):
        K = _load_field(args.field)
        data = {"a": args.a, "b": args.b or "1", "c": args.c or "free"}
        spec = spec_from_json({**data, "field": K.to_json()} if args.field else data, name="cli")
        return _ensure_profile(spec)
    raise ValueError("give --builtin, --sequence or --a")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_example(args) -> int:
    prec = _precision(args)
    cases = cr.example_cases(args.id, args.index_convention, x=args.x,
                             literal_params=args.literal_params, delta=args.delta)
    n_range = args.n_range or (2, 4)
    reports = [cr.run_example_case(c, n_range, prec) for c in cases]
    payload = {"example": args.id, "n_range": list(n_range), "reports": [r.to_json() for r in reports]}
    text = [f"Example {args.id}"]
    text += [r.to_text() for r in reports]
    if args.id == "2.1" and args.x is not None:
        sep = ap.partial_sum_separation(cases[0].spec, n_range[1])
        payload["separation"] = sep
        text.append(f"partial-sum separation up to N={n_range[1]}: {sep['verdict']}")
    _emit(args, payload, "\n".join(text))
    return EXIT_INCONCLUSIVE if any(r.overall == "Inconclusive" for r in reports) else EXIT_OK


def cmd_verify(args) -> int:
    prec = _precision(args)
    spec = load_spec(args)
    params = dict(spec.exponents)
    params.update(_parse_params(args.param))
    params.setdefault("delta", args.delta)
    p = cr.CriterionParams.from_exponents(args.theorem, params)
    n_range = args.n_range or (2, 4)
    rep = cr.verify(spec, p, n_range, prec)
    if spec.profile is not None and spec.profile.inferred:
        rep.notes.append("growth profile inferred from measured terms")
    _emit(args, rep.to_json(), rep.to_text())
    return EXIT_INCONCLUSIVE if rep.overall == "Inconclusive" else EXIT_OK


# Example 2.3 presets: (name, bounds, grid)
_PRESET_23 = [
    ("c in (-1, 3]", {"y1": "(2 - c/4)/(2 + c)", "y2": "(1 + c)/(2 + c)", "beta": "(1 + c)/(2 + c)"},
     "(-1,3]:1/10"),
    ("c in (-2, -1]", {"y1": "(2 - c/4)/(2 + c)", "y2": "0", "beta": "0"}, "(-19/10,-1]:1/10"),
]


def _bound_fn(text: str):
    def f(c):
        v = evaluate(text, {"c": c})
        if not isinstance(v, Fraction):
            raise ValueError(f"bound {text!r} is not rational at c={c}")
        return v
    return f


def cmd_applicability(args) -> int:
    branches = []
    if args.preset == "2.3":
        for name, bounds, grid in _PRESET_23:
            branches.append((name, 2, bounds, parse_grid(grid)))
        branches.append(("d >= 4 (y1 >= 1, y2 = beta = 0)", 4, {"y1": "1", "y2": "0", "beta": "0"}, [Fraction(0)]))
        growth = Fraction(9)
        theorem = "1.7"
    else:
        bounds = dict(b.split("=", 1) for b in args.bound or [])
        branches.append(("user", args.d, bounds, parse_grid(args.grid) if args.grid else []))
        growth = parse_rational(args.growth) if args.growth else None
        theorem = args.theorem
    rows = []
    for name, d, bounds, grid in branches:
        fns = {k.strip(): _bound_fn(v) for k, v in bounds.items()}
        fns.setdefault("delta", lambda c: args.delta)
        best, where = cr.min_required_base(theorem, d, fns, grid)
        verdict = None
        if growth is not None:
            verdict = "not immediately applicable" if best > growth else "possibly applicable"
        rows.append({"branch": name, "d": d, "grid_points": len(grid), "min_base": cr.fmt_q(best),
                     "argmin": cr.fmt_q(where), "growth_base": cr.fmt_q(growth) if growth else None,
                     "verdict": verdict})
    payload = {"theorem": theorem, "branches": rows}
    lines = [f"Theorem {theorem}: minimum required base per branch"]
    for r in rows:
        cmp_ = f" vs g = {r['growth_base']}: {r['verdict']}" if r["growth_base"] else ""
        lines.append(f"  {r['branch']:<34} d={r['d']} min {r['min_base']} at c={r['argmin']}{cmp_}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_approximate(args) -> int:
    prec = _precision(args)
    spec = load_spec(args)
    lo, hi = args.n_range or (2, 4)
    spec.check_range(1, max(hi - 1, 1))
    rational = all(spec.a(n).is_rational() for n in range(1, hi))
    method = args.method or ("rational" if rational else "general")
    apps = []
    if method == "rational":
        M = args.M if args.M is not None else Fraction(2)
        for N in range(lo, hi + 1):
            apps.append(ap.build_q_p_rational(spec, None, N, M, args.E, prec=prec))
    else:
        galois = ap.galois_constants(spec)
        for N in range(lo, hi + 1):
            apps.append(ap.build_q_p_general(spec, None, N, prec=prec, galois=galois))
    dec = ap.err_strictly_decreasing(apps)
    payload = {"sequence": spec.name, "method": method, "approximants": [a.to_json() for a in apps],
               "err_strictly_decreasing": dec}
    lines = [f"{spec.name}: {method} construction, N in [{lo}, {hi}]"]
    for a in apps:
        checks = ", ".join(f"{k} {v}" for k, v in a.checks.items())
        lines.append(f"  N={a.N}: q has {len(str(a.q))} digits, p integral, "
                     f"err <= {format_directed(a.err.hi, 6, upper=True)}; {checks}")
    lines.append(f"  err strictly decreasing: {dec}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_sum(args) -> int:
    prec = _precision(args)
    spec = load_spec(args)
    enc = ap.sum_enclosure(spec, None, prec)
    digits = args.digits
    if hasattr(enc, "lo"):
        payload = {"sequence": spec.name, "lo": format_directed(enc.lo, digits),
                   "hi": format_directed(enc.hi, digits, upper=True), "precision_bits": prec.bits}
        text = f"sum of {spec.name} in [{payload['lo']}, {payload['hi']}]"
    else:
        payload = {"sequence": spec.name,
                   "re": [format_directed(enc.re.lo, digits), format_directed(enc.re.hi, digits, upper=True)],
                   "im": [format_directed(enc.im.lo, digits), format_directed(enc.im.hi, digits, upper=True)],
                   "precision_bits": prec.bits}
        text = f"sum of {spec.name}: re in {payload['re']}, im in {payload['im']}"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_invariants(args) -> int:
    res = run_battery(args.count, args.seed, prec=_precision(args))
    payload = res.to_json()
    lines = [f"invariant battery: {res.instances} random instances in Q(sqrt 5)"]
    for label, c in sorted(res.counts.items()):
        lines.append(f"  {label:<20} Holds {c['Holds']:>4}  Fails {c['Fails']:>3}  Undecided {c['Undecided']:>3}")
    lines += [f"  {f}" for f in res.failures]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if res.all_hold else EXIT_ERROR


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--precision", type=int, default=d(256), help="working precision in bits")
    p.add_argument("--max-precision", type=int, default=d(16384), help="refinement ceiling in bits")
    p.add_argument("--n-range", type=parse_range, default=d(None), help="index range a..b")
    p.add_argument("--index-convention", choices=("adjacent", "nested"), default=d("adjacent"))
    p.add_argument("--format", choices=("text", "json"), default=d("text"))
    p.add_argument("--out", default=d(None), help="write the report to this path")
    p.add_argument("--delta", type=parse_rational, default=d(Fraction(1, 100)), help="delta (default 1/100)")


def _source_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--builtin", choices=EXAMPLE_IDS, help="built-in example sequence")
    p.add_argument("--view", help="theorem view of the built-in example (1.4, 1.6, 1.7)")
    p.add_argument("--sequence", help="sequence file (JSON)")
    p.add_argument("--field", help="field description file (JSON)")
    p.add_argument("--a", help="a_n in the sequence DSL")
    p.add_argument("--b", help="b_n in the sequence DSL (default 1)")
    p.add_argument("--c", help="c_n in the sequence DSL (default free, i.e. 1)")
    p.add_argument("--x", help="x for example 2.1 (DSL constant)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="transcert", description=__doc__.split("\n\n")[0])
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("example", help="reproduce a worked example")
    p.add_argument("id", choices=EXAMPLE_IDS)
    p.add_argument("--x", help="x for example 2.1 (DSL constant, e.g. phibar)")
    p.add_argument("--literal-params", action="store_true",
                   help="use the printed example 2.7 exponents y1 = 1/2, y2 = 1")
    _global_flags(p, suppress=True)
    p.set_defaults(func=cmd_example)

    p = sub.add_parser("verify", help="check a sequence against a theorem")
    _source_flags(p)
    p.add_argument("--theorem", required=True, choices=cr.THEOREMS)
    p.add_argument("--param", action="append", help="name=value (epsilon, alpha, beta, y, y1, y2, eta1, eta2, gamma)")
    _global_flags(p, suppress=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("applicability", help="minimum required base over a parameter grid")
    p.add_argument("--preset", choices=("2.3",), help="the example 2.3 case analysis")
    p.add_argument("--theorem", default="1.7", choices=("1.4", "1.6", "1.7", "7.1"))
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--bound", action="append", help="name=expression in c, e.g. y1=(2-c/4)/(2+c)")
    p.add_argument("--grid", help="grid in interval notation, e.g. (-1,3]:1/10")
    p.add_argument("--growth", help="growth base g to compare against")
    _global_flags(p, suppress=True)
    p.set_defaults(func=cmd_applicability)

    p = sub.add_parser("approximate", help="build (q, p) approximants for N in the range")
    _source_flags(p)
    p.add_argument("--method", choices=("rational", "general"))
    p.add_argument("--M", type=parse_rational, help="M for the rational construction (default 2)")
    p.add_argument("--E", type=parse_rational, default=Fraction(1))
    _global_flags(p, suppress=True)
    p.set_defaults(func=cmd_approximate)

    p = sub.add_parser("sum", help="certified enclosure of the series")
    _source_flags(p)
    p.add_argument("--digits", type=int, default=30)
    _global_flags(p, suppress=True)
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser("invariants", help="randomized height and norm battery")
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    _global_flags(p, suppress=True)
    p.set_defaults(func=cmd_invariants)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except EmptyGrid as exc:
        print(f"empty grid: {exc}", file=sys.stderr)
        return EXIT_EMPTY_GRID
    except NotGalois as exc:
        print(f"not Galois: {exc}", file=sys.stderr)
        return EXIT_NOT_GALOIS
    except CeilingExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ConstraintViolated as exc:
        print(f"parameter constraint violated: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (TranscertError, ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
