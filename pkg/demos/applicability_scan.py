#!/usr/bin/env python3
"""Scan the case analysis of Example 2.3 with exact rationals.

Theorem 1.7 needs a growth base above its second required base.  With the
lower bounds the example derives for y1, y2 and beta as functions of c, the
required base never drops to the growth base 9, so the theorem is not
immediately applicable.  This script evaluates the base on a grid and also
prints the closed forms for comparison.
"""

from fractions import Fraction

from transcert.criteria import fmt_q, frange, min_required_base


def y1(c):
    return (2 - c / 4) / (2 + c)


def ratio(c):
    return (1 + c) / (2 + c)


def main() -> None:
    step = Fraction(1, 10)
    grid = frange(Fraction(-1), Fraction(3), step, include_lo=False)
    bounds = {"y1": y1, "y2": ratio, "beta": ratio}
    print("c in (-1, 3]: base(c) vs 13 + 3c")
    for c in grid[::8] + [grid[-1]]:
        v, _ = min_required_base("1.7", 2, bounds, [c])
        print(f"  c = {fmt_q(c):>5}  base = {fmt_q(v):>6}  closed form = {fmt_q(13 + 3 * c)}")
    best, at = min_required_base("1.7", 2, bounds, grid)
    print(f"  minimum {fmt_q(best)} at c = {fmt_q(at)} (> 9)\n")

    grid = frange(Fraction(-19, 10), Fraction(-1), step)
    bounds = {"y1": y1, "y2": 0, "beta": 0}
    best, at = min_required_base("1.7", 2, bounds, grid)
    print(f"c in (-2, -1]: minimum {fmt_q(best)} at c = {fmt_q(at)} (closed form (8-c)/(2+c) + 1 >= 10)\n")

    for d in (4, 5, 6):
        v, _ = min_required_base("1.7", d, {"y1": 1, "y2": 0, "beta": 0}, [0])
        print(f"d = {d}: base >= {fmt_q(v)} (> 9)")


if __name__ == "__main__":
    main()
