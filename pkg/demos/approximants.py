#!/usr/bin/env python3
"""Build the integer approximants (q_N, p_(1,N), p_(2,N)) for Example 2.7.

q_N s_N is an exact integer combination of the basis {1, phi} after
clearing the conjugate norms.  The script prints the digit counts, the
certified error |q_N sigma - sum p_i x_i| and the verdicts of the three
inequalities checked along the way.  It also shows the rational-only
construction on Example 2.1 for contrast.
"""

from transcert import approximants as ap
from transcert.exactmath import Precision, format_directed
from transcert.sequences import builtin_example


def show(apps) -> None:
    for a in apps:
        checks = ", ".join(f"{k} {v}" for k, v in a.checks.items())
        print(f"  N={a.N}: q has {len(str(a.q))} digits, "
              f"err <= {format_directed(a.err.hi, 6, upper=True)}; {checks}")
    print(f"  err strictly decreasing: {ap.err_strictly_decreasing(apps)}")


def main() -> None:
    prec = Precision(512)
    s27 = builtin_example("2.7")
    galois = ap.galois_constants(s27)
    print(f"Example 2.7, Galois constants kappa = {galois[0]}, c = {galois[1]}")
    show([ap.build_q_p_general(s27, None, N, prec=prec, galois=galois) for N in (2, 3, 4)])

    s21 = builtin_example("2.1")
    print("\nExample 2.1 (rational a_n, M = 2, E = 1)")
    show([ap.build_q_p_rational(s21, None, N, 2, 1, prec=prec) for N in (2, 3)])


if __name__ == "__main__":
    main()
