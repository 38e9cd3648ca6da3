"""Exact linear algebra over Z and Q for small dense matrices.

Everything here works on lists of lists of ``int`` or ``Fraction``; the
matrices that occur (root coefficient vectors) have at most eight columns.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Sequence

Matrix = Sequence[Sequence[int]]


def bareiss_echelon(rows: Matrix) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form of an integer matrix.

    Returns the echelon matrix and the list of pivot columns. Every
    intermediate division is exact (Bareiss), so entries stay integral and
    bounded by the minors of the input.
    """
    m = [list(map(int, r)) for r in rows]
    if not m:
        return m, []
    n_rows, n_cols = len(m), len(m[0])
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        piv = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, n_rows):
            f = m[i][c]
            row_i, row_r = m[i], m[r]
            for j in range(c, n_cols):
                row_i[j] = (p * row_i[j] - f * row_r[j]) // prev
            for j in range(c):
                row_i[j] = 0
        pivots.append(c)
        prev = p
        r += 1
    return m, pivots


def rank(rows: Matrix) -> int:
    """Rank of an integer matrix via fraction-free elimination."""
    if not rows:
        return 0
    return len(bareiss_echelon(rows)[1])


def determinant(rows: Matrix) -> int:
    """Determinant of a square integer matrix (Bareiss)."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(map(int, r)) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (matrix, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return m, []
    n_rows, n_cols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        piv = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _primitive(vec: Sequence[Fraction]) -> list[int]:
    den = 1
    for x in vec:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints] if g else ints


def integer_nullspace(rows: Matrix, n_cols: int) -> list[list[int]]:
    """Primitive integer basis of {v : rows @ v = 0}."""
    if not rows:
        return [[int(i == j) for j in range(n_cols)] for i in range(n_cols)]
    red, pivots = rref(rows)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n_cols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(_primitive(v))
    return basis


def solve_combination(basis: Matrix, target: Sequence[int]) -> list[Fraction] | None:
    """Coefficients x with sum x_i * basis[i] == target, or None.

    ``basis`` rows must be linearly independent.
    """
    k = len(basis)
    if k == 0:
        return [] if all(t == 0 for t in target) else None
    n = len(target)
    # augmented system: columns are basis vectors
    aug = [[basis[i][r] for i in range(k)] + [target[r]] for r in range(n)]
    red, pivots = rref(aug)
    if k in pivots:
        return None
    x = [Fraction(0)] * k
    for row, pc in zip(red, pivots):
        x[pc] = row[k]
    return x


def max_abs_minor(rows: Matrix) -> int:
    """Largest absolute value over all square minors of ``rows``."""
    if not rows:
        return 0
    n_rows, n_cols = len(rows), len(rows[0])
    best = 0
    for size in range(1, min(n_rows, n_cols) + 1):
        for cols in combinations(range(n_cols), size):
            for rsel in combinations(range(n_rows), size):
                d = abs(determinant([[rows[i][j] for j in cols] for i in rsel]))
                if d > best:
                    best = d
    return best
