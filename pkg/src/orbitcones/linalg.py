"""Exact Gauss-Jordan elimination over the rationals.

Matrices are lists of rows; entries are coerced to ``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


class RankDeficient(ValueError):
    pass


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def transpose(m: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list[Fraction]:
    return [sum((Fraction(x) * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def rref(m: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    a = as_matrix(m)
    rows = len(a)
    cols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m: Sequence[Sequence]) -> int:
    return len(rref(m)[1]) if m else 0


def solve(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    """Solve ``a @ x = b`` for x, with ``a`` of full column rank.

    ``a`` may be overdetermined; the system must then be consistent.
    Raises RankDeficient if the solution is not unique and ValueError
    if the system is inconsistent.
    """
    n = len(a[0])
    k = len(b[0])
    aug = [list(ra) + list(rb) for ra, rb in zip(a, b)]
    red, pivots = rref(aug)
    a_rank = sum(p < n for p in pivots)
    if a_rank < n:
        raise RankDeficient(f"matrix has rank {a_rank} < {n}")
    if len(pivots) > n:
        raise ValueError("inconsistent linear system")
    return [red[i][n:n + k] for i in range(n)]


def solve_vector(a: Sequence[Sequence], v: Sequence) -> list[Fraction]:
    return [row[0] for row in solve(a, [[x] for x in v])]


def inverse(a: Sequence[Sequence]) -> Matrix:
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("inverse of a non-square matrix")
    return solve(a, identity(n))
