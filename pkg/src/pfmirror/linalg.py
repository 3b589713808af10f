"""Exact linear algebra over the rationals.

Only what the fitting routines need: reduced row echelon form and a
null-space basis, both computed with :class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Return the reduced row echelon form of ``rows`` and its pivot columns."""
    mat = [[Fraction(x) for x in row] for row in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(mat):
            break
        p = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        inv = 1 / mat[r][c]
        pivot_row = [x * inv for x in mat[r]]
        mat[r] = pivot_row
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                row = mat[i]
                mat[i] = [a - f * b for a, b in zip(row, pivot_row)]
        pivots.append(c)
        r += 1
    return mat[:r], pivots


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{x : rows @ x = 0}``, one vector per free column."""
    if ncols is None:
        ncols = len(rows[0])
    reduced, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1]) if rows else 0


def primitive_integer_vector(v: Sequence[Fraction]) -> list[int]:
    """Scale a rational vector to coprime integers (sign unchanged)."""
    den = 1
    for x in v:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return ints
    return [x // g for x in ints]
