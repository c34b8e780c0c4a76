"""Exact linear algebra over Z, Q and F_2 for small dense matrices."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = Sequence[Sequence[int]]


def det_bareiss(a: Matrix) -> int:
    """Integer determinant by fraction-free elimination with row pivoting."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(map(int, row)) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def leading_minors(a: Matrix) -> list[int]:
    """Leading principal minors, computed without pivoting.

    Stops early (returns a shorter list) once a minor vanishes, since the
    remaining minors are not recoverable from the elimination state.
    """
    n = len(a)
    m = [list(map(int, row)) for row in a]
    minors: list[int] = []
    prev = 1
    for k in range(n):
        pivot = m[k][k]
        minors.append(pivot)
        if pivot == 0:
            break
        for i in range(k + 1, n):
            mik = m[i][k]
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - mik * m[k][j]) // prev
        prev = pivot
    return minors


def inverse(a: Matrix) -> list[list[Fraction]]:
    """Exact rational inverse by Gauss-Jordan elimination."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        m[c], m[piv] = m[piv], m[c]
        inv_p = 1 / m[c][c]
        row_c = [x * inv_p for x in m[c]]
        m[c] = row_c
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                row_r = m[r]
                m[r] = [x - f * y for x, y in zip(row_r, row_c)]
    return [row[n:] for row in m]


def rank(a: Sequence[Sequence[int | Fraction]]) -> int:
    """Rank over Q."""
    m = [[Fraction(x) for x in row] for row in a]
    if not m:
        return 0
    rows, cols = len(m), len(m[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, rows):
            if m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return r


def gf2_rank(rows: Sequence[int]) -> int:
    """Rank over F_2 of a matrix whose rows are given as integer bitmasks."""
    basis: dict[int, int] = {}
    for row in rows:
        while row:
            top = row.bit_length() - 1
            if top in basis:
                row ^= basis[top]
            else:
                basis[top] = row
                break
    return len(basis)
