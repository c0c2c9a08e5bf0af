"""Exact linear solves over Q."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence


class SingularSystemError(ArithmeticError):
    pass


def _lcm_denominators(values) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, Fraction(v).denominator)
    return out


def solve_exact(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Solve a square system A x = b with rational entries.

    Rows are cleared of denominators, then reduced by fraction-free
    (Bareiss) elimination so every intermediate entry stays an integer.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix) or len(rhs) != n:
        raise ValueError("square system expected")
    rows = []
    for row, b in zip(matrix, rhs):
        scale = _lcm_denominators(list(row) + [b])
        rows.append([int(Fraction(x) * scale) for x in row] + [int(Fraction(b) * scale)])
    prev = 1
    for k in range(n):
        pivot = next((i for i in range(k, n) if rows[i][k] != 0), None)
        if pivot is None:
            raise SingularSystemError(f"matrix is singular (column {k})")
        rows[k], rows[pivot] = rows[pivot], rows[k]
        pk = rows[k][k]
        for i in range(k + 1, n):
            rik = rows[i][k]
            ri = rows[i]
            rk = rows[k]
            for j in range(k + 1, n + 1):
                # exact by Sylvester's identity
                ri[j] = (pk * ri[j] - rik * rk[j]) // prev
            ri[k] = 0
        prev = pk
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = Fraction(rows[i][n])
        for j in range(i + 1, n):
            s -= rows[i][j] * x[j]
        x[i] = s / rows[i][i]
    return x


def rank(matrix: Sequence[Sequence]) -> int:
    rows = [[Fraction(x) for x in row] for row in matrix]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(r + 1, len(rows)):
            f = rows[i][c] / rows[r][c]
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


class IncrementalBasis:
    """Row echelon basis that accepts vectors only if they raise the rank."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[tuple[int, list[Fraction]]] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def try_add(self, vec: Sequence) -> bool:
        v = [Fraction(x) for x in vec]
        for piv, row in self.rows:
            if v[piv]:
                f = v[piv] / row[piv]
                v = [a - f * b for a, b in zip(v, row)]
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            return False
        self.rows.append((piv, v))
        return True
