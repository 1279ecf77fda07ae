"""Exact linear algebra over the integers and rationals.

Small dense matrices only.  Bareiss elimination keeps the leading principal
minors available without fractions; the solver and row reduction work over
Fraction throughout, so every result is exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence


def leading_principal_minors(m: Sequence[Sequence[int]]) -> List[int]:
    """All leading principal minors d_1, ..., d_n of a square integer matrix.

    Fraction-free Bareiss elimination: after step k the pivot (k, k) equals
    the (k+1)-st leading minor.  A zero pivot means that minor is zero; the
    remaining minors cannot be continued division-free, so they are reported
    as computed up to that point followed by the zero.
    """
    n = len(m)
    a = [[int(x) for x in row] for row in m]
    for row in a:
        if len(row) != n:
            raise ValueError("matrix must be square")
    minors: List[int] = []
    prev = 1
    for k in range(n):
        piv = a[k][k]
        minors.append(piv)
        if piv == 0:
            break
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * piv - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = piv
    return minors


def is_negative_definite(m: Sequence[Sequence[int]]) -> bool:
    """Sylvester test: minors alternate (-1)^k d_k > 0, i.e. d_1 < 0, d_2 > 0, ...

    The empty matrix is negative definite vacuously.
    """
    n = len(m)
    for i in range(n):
        if len(m[i]) != n:
            raise ValueError("matrix must be square")
        for j in range(i + 1, n):
            if m[i][j] != m[j][i]:
                raise ValueError("matrix must be symmetric")
    sign = -1
    for k, d in enumerate(leading_principal_minors(m)):
        if sign * d <= 0:
            return False
        sign = -sign
    return True


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix (Bareiss with row swaps)."""
    n = len(m)
    a = [[int(x) for x in row] for row in m]
    for row in a:
        if len(row) != n:
            raise ValueError("matrix must be square")
    if n == 0:
        return 1
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
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * piv - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = piv
    return sign * a[n - 1][n - 1]


def solve_exact(a: Sequence[Sequence[Fraction]], rhs: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    """Solve a x = b for each column b of rhs; returns the solution columns.

    Gauss-Jordan with partial pivoting over Fraction.  Raises ValueError on a
    singular matrix.  ``rhs`` is a list of columns, each of length n.
    """
    n = len(a)
    cols = len(rhs)
    aug = [[Fraction(a[i][j]) for j in range(n)] + [Fraction(rhs[c][i]) for c in range(cols)]
           for i in range(n)]
    for k in range(n):
        piv_row = max(range(k, n), key=lambda i: abs(aug[i][k]))
        if aug[piv_row][k] == 0:
            raise ValueError("singular matrix")
        if piv_row != k:
            aug[k], aug[piv_row] = aug[piv_row], aug[k]
        piv = aug[k][k]
        aug[k] = [x / piv for x in aug[k]]
        for i in range(n):
            if i != k and aug[i][k] != 0:
                f = aug[i][k]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[k])]
    return [[aug[i][n + c] for i in range(n)] for c in range(cols)]


def rref(rows: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    """Reduced row echelon form with zero rows dropped."""
    if not rows:
        return []
    w = len(rows[0])
    mat = [[Fraction(x) for x in row] for row in rows]
    for row in mat:
        if len(row) != w:
            raise ValueError("ragged rows")
    out: List[List[Fraction]] = []
    lead = 0
    r = 0
    nrows = len(mat)
    while r < nrows and lead < w:
        piv = None
        for i in range(r, nrows):
            if mat[i][lead] != 0:
                piv = i
                break
        if piv is None:
            lead += 1
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        f = mat[r][lead]
        mat[r] = [x / f for x in mat[r]]
        for i in range(nrows):
            if i != r and mat[i][lead] != 0:
                g = mat[i][lead]
                mat[i] = [x - g * y for x, y in zip(mat[i], mat[r])]
        r += 1
        lead += 1
    for row in mat[:r]:
        out.append(row)
    return out


def pivot_columns(reduced: Sequence[Sequence[Fraction]]) -> List[int]:
    cols = []
    for row in reduced:
        for j, x in enumerate(row):
            if x != 0:
                cols.append(j)
                break
    return cols


def row_space_coordinates(reduced: Sequence[Sequence[Fraction]], vec: Sequence[Fraction]):
    """Coordinates of vec over the rows of an RREF matrix, or None.

    In reduced form the coordinate on row i can be read off at that row's
    pivot column; the residual then certifies membership.
    """
    pivots = pivot_columns(reduced)
    coords = [Fraction(vec[p]) for p in pivots]
    residual = list(vec)
    for c, row in zip(coords, reduced):
        residual = [x - c * y for x, y in zip(residual, row)]
    if any(x != 0 for x in residual):
        return None
    return coords
