#!/usr/bin/env python3
"""Evaluate the quantity Z_N behind the tail lemma on Example 2.5.

Z_N = 2^(N^2 log2^c a_(N-1)) (prod_{n<N} a_n^M) sum_{n>=N} b_n/a_n with
a_n = phi^(7^n), b_n = 1, M = 5, c = 1/2.  The lemma only asserts that the
liminf is 0.  The certified values show the sequence is not monotone at
the start: Z_3 is far above Z_2 before the tail takes over.
"""

from fractions import Fraction

from transcert import approximants as ap
from transcert.exactmath import Precision, format_directed
from transcert.sequences import builtin_example


def main() -> None:
    s = builtin_example("2.5")
    prec = Precision(512)
    total = ap.sum_enclosure(s, prec=prec)
    print(f"sum of phi^(-7^n): [{format_directed(total.lo, 20)}, {format_directed(total.hi, 20, upper=True)}]")
    params = ap.ZParams(M=5, c=Fraction(1, 2))
    for N in range(1, 6):
        z = ap.z_value(s, params, N, prec)
        print(f"Z_{N} in [{format_directed(z.lo, 12)}, {format_directed(z.hi, 12, upper=True)}]")


if __name__ == "__main__":
    main()
