"""Exact dense linear algebra over the rationals (Gauss-Jordan elimination)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def to_fractions(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    cols = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list[Fraction]:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def vecmat(v: Sequence, a: Sequence[Sequence]) -> list[Fraction]:
    return [sum((x * y for x, y in zip(v, col)), Fraction(0)) for col in zip(*a)]


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*a)]


class SingularMatrixError(ArithmeticError):
    pass


def inverse(a: Sequence[Sequence]) -> Matrix:
    """Inverse of a square matrix; raises SingularMatrixError when none exists."""
    n = len(a)
    work = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col]), None)
        if pivot is None:
            raise SingularMatrixError(f"matrix is singular (column {col})")
        work[col], work[pivot] = work[pivot], work[col]
        prow = work[col]
        inv = 1 / prow[col]
        if inv != 1:
            prow = work[col] = [x * inv for x in prow]
        for r in range(n):
            if r != col:
                f = work[r][col]
                if f:
                    row = work[r]
                    work[r] = [x - f * y if y else x for x, y in zip(row, prow)]
    return [row[n:] for row in work]


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    return matvec(inverse(a), b)
