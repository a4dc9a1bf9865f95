"""Safe evaluation of small arithmetic expressions given as strings.

Used for growth-profile constants in sequence files (``"2*ln(phi)"``) and for
the exponent-bound functions of the applicability command
(``"(2 - c/4)/(2 + c)"``).  Only arithmetic on numbers and whitelisted names
is allowed; anything else raises :class:`ValueError`.

Results stay exact (``Fraction``) as long as no transcendental function is
involved; otherwise they are floats.
"""

from __future__ import annotations

import ast
import math
from fractions import Fraction
from typing import Mapping, Union

Number = Union[Fraction, float]

_PHI = (1 + math.sqrt(5)) / 2

_FUNCS = {
    "ln": math.log,
    "log": math.log,
    "log2": math.log2,
    "sqrt": math.sqrt,
    "exp": math.exp,
}

_CONSTS = {"phi": _PHI, "pi": math.pi, "e": math.e}


def _num(x) -> Number:
    if isinstance(x, bool):
        raise ValueError("booleans are not numbers")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return x
    if isinstance(x, Fraction):
        return x
    raise ValueError(f"unsupported literal {x!r}")


def _pow(a: Number, b: Number) -> Number:
    if isinstance(b, Fraction) and b.denominator == 1 and isinstance(a, Fraction):
        if a == 0 and b < 0:
            raise ValueError("zero to a negative power")
        return a ** int(b)
    return float(a) ** float(b)


def evaluate(text: str, names: Mapping[str, Number] = None) -> Number:
    """Evaluate ``text`` with the given variable bindings."""
    names = dict(names or {})
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse expression {text!r}: {exc.msg}") from exc

    def ev(node) -> Number:
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant):
            return _num(node.value)
        if isinstance(node, ast.Name):
            if node.id in names:
                v = names[node.id]
                return Fraction(v) if isinstance(v, int) else v
            if node.id in _CONSTS:
                return _CONSTS[node.id]
            raise ValueError(f"unknown name {node.id!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                if b == 0:
                    raise ValueError("division by zero")
                return a / b
            if isinstance(node.op, ast.Pow):
                return _pow(a, b)
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _FUNCS:
            if len(node.args) != 1 or node.keywords:
                raise ValueError(f"{node.func.id} takes one argument")
            return _FUNCS[node.func.id](float(ev(node.args[0])))
        raise ValueError(f"unsupported syntax in {text!r}")

    return ev(tree)


def evaluate_rational(text: str, names: Mapping[str, Number] = None) -> Fraction:
    v = evaluate(text, names)
    if not isinstance(v, Fraction):
        raise ValueError(f"expression {text!r} is not rational")
    return v


def parse_rational(text) -> Fraction:
    """Accept ints, Fractions, "p/q" strings and exact decimal strings."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        return Fraction(str(text))
    s = str(text).strip()
    try:
        return Fraction(s)
    except ValueError:
        return evaluate_rational(s)
