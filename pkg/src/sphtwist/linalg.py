"""Exact Gaussian elimination over the rationals.

Vectors are dense lists of ``Fraction`` (or ``int``) entries. Only what the
mesh oracle and the path-algebra code need is here: row reduction, rank and
reduction of a vector modulo a row space.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def rref(rows: Sequence[Sequence], ncols: int):
    """Return ``(reduced_rows, pivots)`` for the row space of ``rows``.

    ``reduced_rows[i]`` has a 1 in column ``pivots[i]`` and zeros in every
    other pivot column.
    """
    mat = [[Fraction(x) for x in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        lead = mat[r][c]
        mat[r] = [x / lead for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


class QuotientSpace:
    """The quotient ``k^n / span(rows)`` with coordinates on the non-pivot columns."""

    def __init__(self, rows: Sequence[Sequence], ncols: int):
        self.ncols = ncols
        self.rows, self.pivots = rref(rows, ncols)
        pivot_set = set(self.pivots)
        self.free = [c for c in range(ncols) if c not in pivot_set]

    @property
    def dim(self) -> int:
        return len(self.free)

    def reduce(self, vec: Sequence) -> list[Fraction]:
        v = [Fraction(x) for x in vec]
        for row, p in zip(self.rows, self.pivots):
            if v[p] != 0:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def coords(self, vec: Sequence) -> list[Fraction]:
        v = self.reduce(vec)
        return [v[c] for c in self.free]

    def projection(self) -> list[list[Fraction]]:
        """Matrix (``dim`` x ``ncols``) of the quotient map in free coordinates."""
        cols = []
        for j in range(self.ncols):
            e = [0] * self.ncols
            e[j] = 1
            cols.append(self.coords(e))
        return [[cols[j][i] for j in range(self.ncols)] for i in range(self.dim)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence], inner: int | None = None):
    if not a:
        return []
    n = len(b[0]) if b else 0
    if inner is None:
        inner = len(b)
    return [[sum((a[i][k] * b[k][j] for k in range(inner)), Fraction(0)) for j in range(n)] for i in range(len(a))]
