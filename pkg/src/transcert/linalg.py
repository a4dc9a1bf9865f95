"""Small exact linear algebra and polynomial helpers over the rationals.

Matrices are lists of rows of :class:`Fraction`.  Everything here is exact;
sizes are tiny (field degree d), so plain Gaussian elimination is fine.
Polynomials are coefficient lists ``[c0, c1, ..., ck]`` (constant first).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

Matrix = list


def to_matrix(rows) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def rref(A: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    R = [list(row) for row in A]
    if not R:
        return R, []
    m, n = len(R), len(R[0])
    pivots: list[int] = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(m):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return R, pivots


def rank(A: Matrix) -> int:
    return len(rref(A)[1])


def solve(A: Matrix, b: Sequence) -> Optional[list[Fraction]]:
    """One solution of A x = b (free variables set to 0), or None."""
    n = len(A[0]) if A else 0
    aug = [list(row) + [Fraction(bi)] for row, bi in zip(A, b)]
    R, piv = rref(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(piv):
        x[c] = R[i][n]
    return x


def nullspace(A: Matrix) -> list[list[Fraction]]:
    n = len(A[0])
    R, piv = rref(A)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, c in enumerate(piv):
            v[c] = -R[i][f]
        basis.append(v)
    return basis


def det(A: Matrix) -> Fraction:
    M = [list(row) for row in A]
    n = len(M)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        d *= M[c][c]
        for i in range(c + 1, n):
            if M[i][c] != 0:
                f = M[i][c] / M[c][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return d


def inverse(A: Matrix) -> Matrix:
    n = len(A)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def transpose(A: Matrix) -> Matrix:
    return [list(col) for col in zip(*A)]


def matvec(A: Matrix, v: Sequence) -> list:
    return [sum((a * x for a, x in zip(row, v)), Fraction(0)) for row in A]


def lcm(*xs: int) -> int:
    out = 1
    for x in xs:
        out = out * x // gcd(out, x) if x else out
    return out


# ---------------------------------------------------------------------------
# Polynomials (constant term first)
# ---------------------------------------------------------------------------

def poly_trim(p: Sequence) -> list:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def poly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    a = [Fraction(x) for x in poly_trim(a)]
    b = [Fraction(x) for x in poly_trim(b)]
    if b == [0]:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [Fraction(0)], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    r = list(a)
    lead = b[-1]
    for k in range(len(q) - 1, -1, -1):
        coef = r[k + len(b) - 1] / lead
        q[k] = coef
        if coef:
            for j, bj in enumerate(b):
                r[k + j] -= coef * bj
    return poly_trim(q), poly_trim(r[: len(b) - 1] or [Fraction(0)])


def poly_gcd(a: Sequence, b: Sequence) -> list:
    a, b = poly_trim(a), poly_trim(b)
    while b != [0]:
        _, r = poly_divmod(a, b)
        a, b = b, r
    lead = Fraction(a[-1])
    return [Fraction(x) / lead for x in a]


def poly_derivative(p: Sequence) -> list:
    return poly_trim([i * c for i, c in enumerate(p)][1:] or [0])


def primitive_int(p: Sequence) -> list[int]:
    """Scale a rational polynomial to a primitive integer one, leading coefficient > 0."""
    p = [Fraction(x) for x in poly_trim(p)]
    den = lcm(*(x.denominator for x in p))
    ints = [int(x * den) for x in p]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero polynomial")
    if ints[-1] < 0:
        g = -g
    return [x // g for x in ints]


def divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]
