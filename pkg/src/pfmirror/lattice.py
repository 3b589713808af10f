"""Nonnegative integer kernels of exponent matrices.

Given Laurent monomials ``v_j = sign_j * y^(ygrade_j) * prod_i x_i^(a[j][i])``,
the products of the ``v_j`` that are free of every ``x_i`` correspond to
vectors ``b >= 0`` with ``sum_j b_j a[j] = 0``.  This module finds

* a lattice basis of the full integer kernel,
* the Hilbert basis of the monoid of nonnegative kernel vectors
  (Contejean-Devie completion), and
* every nonnegative kernel vector of a prescribed y-degree, by direct
  enumeration.  The enumeration is deliberately unrelated to the Hilbert
  basis search so the two can check each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import linprog

from .linalg import rref


@dataclass(frozen=True)
class ExponentMatrix:
    """Row j holds the x-exponents of monomial j."""

    rows: tuple[tuple[int, ...], ...]
    signs: tuple[int, ...]
    ygrades: tuple[int, ...]

    def __post_init__(self):
        m = len(self.rows)
        if len(self.signs) != m or len(self.ygrades) != m:
            raise ValueError("signs and ygrades must have one entry per monomial")
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise ValueError("ragged exponent matrix")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")
        if any(g < 0 for g in self.ygrades):
            raise ValueError("y-grades must be nonnegative")

    @classmethod
    def build(cls, rows, signs=None, ygrades=None) -> ExponentMatrix:
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        m = len(rows)
        signs = tuple(signs) if signs is not None else (1,) * m
        ygrades = tuple(ygrades) if ygrades is not None else (1,) * m
        return cls(rows, signs, ygrades)

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def image(self, b: Sequence[int]) -> tuple[int, ...]:
        """``sum_j b_j * row_j``: the x-exponent vector of ``prod v_j^b_j``."""
        out = [0] * self.n
        for bj, row in zip(b, self.rows):
            if bj:
                for i, a in enumerate(row):
                    out[i] += bj * a
        return tuple(out)

    def in_kernel(self, b: Sequence[int]) -> bool:
        return not any(self.image(b))

    def sign_of(self, b: Sequence[int]) -> int:
        neg = sum(bj for bj, s in zip(b, self.signs) if s < 0)
        return -1 if neg % 2 else 1

    def ydegree_of(self, b: Sequence[int]) -> int:
        return sum(bj * g for bj, g in zip(b, self.ygrades))


@dataclass(frozen=True)
class KernelGenerator:
    exponents: tuple[int, ...]
    sign: int
    ydegree: int

    def to_json(self) -> dict:
        return {"exponents": list(self.exponents), "sign": self.sign, "ydegree": self.ydegree}


def integer_kernel_basis(A: ExponentMatrix) -> list[tuple[int, ...]]:
    """Lattice basis of ``{b in Z^m : b . A = 0}``.

    Unimodular row reduction of ``[A | I]``: rows whose A-part is reduced to
    zero carry kernel vectors in their identity part, and together they span
    the kernel lattice over the integers.
    """
    m, n = A.m, A.n
    rows = [list(A.rows[j]) + [int(j == k) for k in range(m)] for j in range(m)]
    r = 0
    for c in range(n):
        # gcd-reduce column c among rows r.. until a single nonzero entry remains
        while True:
            live = [i for i in range(r, m) if rows[i][c] != 0]
            if len(live) <= 1:
                break
            p = min(live, key=lambda i: abs(rows[i][c]))
            for i in live:
                if i != p:
                    q = rows[i][c] // rows[p][c]
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[p])]
        live = [i for i in range(r, m) if rows[i][c] != 0]
        if live:
            p = live[0]
            rows[r], rows[p] = rows[p], rows[r]
            r += 1
    kernel = []
    for row in rows[r:]:
        assert not any(row[:n])
        kernel.append(tuple(row[n:]))
    return sorted(kernel)


def _dominates(p: Sequence[int], h: Sequence[int]) -> bool:
    return all(a >= b for a, b in zip(p, h))


def nonneg_kernel_generators(A: ExponentMatrix, degree_bound: int) -> list[KernelGenerator]:
    """Hilbert basis of ``ker(A) ∩ N^m``, restricted to y-degree <= ``degree_bound``.

    Contejean-Devie completion: starting from the unit vectors, a frontier
    vector p with nonzero image is only extended by e_j when the image of e_j
    points back towards the origin (``<A p, A e_j> < 0``).  Frontier vectors
    dominating an already-found solution are discarded, so every solution
    recorded is irreducible, and the geometric extension rule guarantees
    completeness.
    """
    if degree_bound <= 0:
        raise ValueError("degree_bound must be positive")
    m = A.m
    gram = [[sum(a * b for a, b in zip(A.rows[j], A.rows[k])) for k in range(m)] for j in range(m)]
    ygr = A.ygrades
    # a minimal solution is reached through vectors it dominates, so any
    # frontier vector leaving the solution box can be dropped
    box = coordinate_bounds(A, degree_bound)
    basis: list[tuple[int, ...]] = []
    # frontier entries: vector -> (<A p, A e_j> for all j, |A p|^2, y-degree)
    frontier = {}
    for j in range(m):
        if box[j] > 0 and ygr[j] <= degree_bound:
            p = tuple(int(j == k) for k in range(m))
            frontier[p] = (tuple(gram[j]), gram[j][j], ygr[j])
    while frontier:
        fresh = [p for p, (_, norm, _) in frontier.items()
                 if norm == 0 and not any(_dominates(p, h) for h in basis)]
        basis.extend(sorted(fresh))
        nxt = {}
        for p, (dots, norm, yd) in frontier.items():
            if norm == 0:
                continue
            for j in range(m):
                if dots[j] >= 0 or p[j] >= box[j] or yd + ygr[j] > degree_bound:
                    continue
                q = p[:j] + (p[j] + 1,) + p[j + 1:]
                if q in nxt or any(_dominates(q, h) for h in basis):
                    continue
                gj = gram[j]
                nxt[q] = (tuple(d + g for d, g in zip(dots, gj)), norm + 2 * dots[j] + gj[j],
                          yd + ygr[j])
        frontier = nxt
    return [KernelGenerator(b, A.sign_of(b), A.ydegree_of(b)) for b in sorted(basis)]


def coordinate_bounds(A: ExponentMatrix, ydegree: int) -> list[int]:
    """Upper bound on each coordinate of a nonnegative kernel vector of the given y-degree.

    Each bound is the maximum of that coordinate over the rational kernel
    cone sliced at this y-degree (a small linear program), rounded down.
    """
    m = A.m
    if ydegree == 0:
        return [0] * m
    a_eq = np.array([list(col) for col in zip(*A.rows)] + [list(A.ygrades)], dtype=float)
    b_eq = np.zeros(a_eq.shape[0])
    b_eq[-1] = ydegree
    bounds = []
    for j in range(m):
        c = np.zeros(m)
        c[j] = -1.0
        res = linprog(c, A_eq=a_eq, b_eq=b_eq, bounds=[(0, None)] * m, method="highs")
        if res.status == 3:
            raise ValueError(f"coordinate {j} is unbounded: y-grading is not positive on the kernel")
        if res.status == 2:
            bounds.append(0)
            continue
        bounds.append(int(math.floor(-res.fun + 1e-6)))
    return bounds


def enumerate_kernel_points(A: ExponentMatrix, ydegree: int) -> list[tuple[int, ...]]:
    """Every ``n in N^m`` with ``n . A = 0`` and y-degree exactly ``ydegree``.

    The x-exponent equations together with the y-degree equation are put in
    echelon form; the free coordinates are enumerated inside their bounds and
    the pivot coordinates are solved for, then checked for integrality and
    sign.  Output is sorted lexicographically.
    """
    if ydegree < 0:
        raise ValueError("ydegree must be nonnegative")
    m, n = A.m, A.n
    if m == 0:
        return [()] if ydegree == 0 else []
    bounds = coordinate_bounds(A, ydegree)
    # widest-range coordinates first so they become pivots and are solved for
    order = sorted(range(m), key=lambda j: -bounds[j])
    system = [[A.rows[j][i] for j in order] + [0] for i in range(n)]
    system.append([A.ygrades[j] for j in order] + [ydegree])
    reduced, piv = rref(system)
    if m in piv:
        return []
    pivots = [order[c] for c in piv]
    free_pos = [c for c in range(m) if c not in set(piv)]
    free = [order[c] for c in free_pos]
    # pivot_k = rhs_k - sum_f coef_{k,f} * n_f, all scaled to integers
    exprs = []
    for row in reduced:
        den = 1
        for x in row:
            den = math.lcm(den, x.denominator)
        exprs.append((int(row[m] * den), [int(row[c] * den) for c in free_pos], den))
    fb = [bounds[j] for j in free]
    fg = [A.ygrades[j] for j in free]
    results = []
    vals = [0] * len(free)
    nf = len(free)

    def pivot_ok(depth: int, partial: list[int]) -> bool:
        # can the still-free coordinates bring every pivot into range?
        for (rhs, coefs, den), pj, acc in zip(exprs, pivots, partial):
            lo = hi = rhs - acc
            for k in range(depth, nf):
                c = coefs[k]
                if c > 0:
                    lo -= c * fb[k]
                else:
                    hi -= c * fb[k]
            if hi < 0 or lo > den * bounds[pj]:
                return False
        return True

    def rec(depth: int, ydeg: int, partial: list[int]):
        if not pivot_ok(depth, partial):
            return
        if depth == nf:
            point = [0] * m
            for j, v in zip(free, vals):
                point[j] = v
            for (rhs, _, den), pj, acc in zip(exprs, pivots, partial):
                num = rhs - acc
                if num < 0 or num % den:
                    return
                point[pj] = num // den
            results.append(tuple(point))
            return
        g = fg[depth]
        top = fb[depth] if g == 0 else min(fb[depth], (ydegree - ydeg) // g)
        for v in range(top + 1):
            vals[depth] = v
            rec(depth + 1, ydeg + g * v,
                [acc + coefs[depth] * v for (_, coefs, _), acc in zip(exprs, partial)])
        vals[depth] = 0

    rec(0, 0, [0] * len(exprs))
    checked = [p for p in results if A.in_kernel(p) and A.ydegree_of(p) == ydegree]
    assert len(checked) == len(results)
    return sorted(results)


def decompose(point: Sequence[int], generators: Sequence[Sequence[int]]) -> list[int] | None:
    """Nonnegative multiplicities expressing ``point`` over ``generators``, or None."""
    point = tuple(point)
    if not any(point):
        return [0] * len(generators)

    def rec(rest: tuple, start: int):
        if not any(rest):
            return [0] * len(generators)
        for k in range(start, len(generators)):
            g = generators[k]
            if any(g) and _dominates(rest, g):
                sub = rec(tuple(a - b for a, b in zip(rest, g)), k)
                if sub is not None:
                    sub[k] += 1
                    return sub
        return None

    return rec(point, 0)
