"""Exact integer linear algebra: big-integer determinants and ranks.

These routines are the exact side of every dual-route check in the package
(Betti numbers, tree and forest counts, Cauchy-Binet), so they deliberately
share no code with the floating-point eigensolver paths.
"""

from fractions import Fraction
from math import gcd


def int_det(matrix) -> int:
    """Determinant of a square integer matrix, exact (Bareiss elimination)."""
    a = [[int(x) for x in row] for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    for row in a:
        if len(row) != n:
            raise ValueError("int_det needs a square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def int_rank(matrix) -> int:
    """Rank over the rationals of an integer matrix.

    Cross-multiplication elimination with per-row gcd normalization keeps
    every intermediate value an exact integer.
    """
    a = [[int(x) for x in row] for row in matrix]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    rank = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(rank, nrows):
            if a[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        a[rank], a[pivot_row] = a[pivot_row], a[rank]
        prow = a[rank]
        pval = prow[c]
        for i in range(rank + 1, nrows):
            v = a[i][c]
            if v == 0:
                continue
            row = a[i]
            for j in range(c, ncols):
                row[j] = row[j] * pval - v * prow[j]
            g = 0
            for j in range(c + 1, ncols):
                g = gcd(g, row[j])
                if g == 1:
                    break
            if g > 1:
                for j in range(c + 1, ncols):
                    row[j] //= g
        rank += 1
        if rank == nrows:
            break
    return rank


def frac_det(matrix) -> Fraction:
    """Determinant over exact rationals (plain Gaussian elimination)."""
    a = [[Fraction(x) for x in row] for row in matrix]
    n = len(a)
    if n == 0:
        return Fraction(1)
    det = Fraction(1)
    for k in range(n):
        pivot_row = None
        for i in range(k, n):
            if a[i][k] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
            det = -det
        pivot = a[k][k]
        det *= pivot
        for i in range(k + 1, n):
            if a[i][k] == 0:
                continue
            factor = a[i][k] / pivot
            for j in range(k, n):
                a[i][j] -= factor * a[k][j]
    return det
