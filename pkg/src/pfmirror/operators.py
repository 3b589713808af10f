"""Linear differential operators in the logarithmic derivative D = x d/dx.

An operator ``sum_i A_i(x) D^i`` is stored as its integer coefficient
polynomials ``A_0, ..., A_r``.  Operators are kept in a canonical form
(integer, content-free, the lowest nonzero coefficient of ``A_r`` positive)
so that fitted operators can be compared coefficient for coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .linalg import nullspace
from .series import (
    PowerSeries,
    SeriesError,
    poly_add,
    poly_divmod,
    poly_mul,
    poly_primitive,
    poly_trim,
    to_rational,
)


class OperatorError(ValueError):
    pass


class IndicialError(OperatorError):
    """The indicial polynomial has a factor without rational roots."""

    def __init__(self, roots, factor):
        self.roots = roots
        self.factor = factor
        super().__init__(f"non-rational factor {list(factor)} after rational roots {roots}")


def _normalize(coeffs: Sequence[Sequence]) -> tuple[tuple[int, ...], ...]:
    polys = [poly_trim(to_rational(c) for c in p) for p in coeffs]
    while polys and not polys[-1]:
        polys.pop()
    if not polys:
        raise OperatorError("zero operator")
    flat = [c for p in polys for c in p]
    prim = poly_primitive(flat)
    # poly_primitive fixes the sign by the first nonzero entry; redo it on A_r
    scale = next(c for c in flat if c != 0) / next(c for c in prim if c != 0)
    ints = [tuple(int(c / scale) for c in p) for p in polys]
    lead = next(c for c in ints[-1] if c != 0)
    if lead < 0:
        ints = [tuple(-c for c in p) for p in ints]
    return tuple(ints)


@dataclass(frozen=True)
class DiffOperator:
    coeffs: tuple[tuple[int, ...], ...]
    variable: str = "phi"

    @classmethod
    def make(cls, coeffs: Sequence[Sequence], variable: str = "phi") -> DiffOperator:
        return cls(_normalize(coeffs), variable)

    def __post_init__(self):
        if self.coeffs != _normalize(self.coeffs):
            raise OperatorError("operator is not in normal form; build it with DiffOperator.make")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def max_degree(self) -> int:
        return max((len(p) - 1 for p in self.coeffs if p), default=0)

    def coefficient(self, i: int) -> tuple[int, ...]:
        return self.coeffs[i] if i < len(self.coeffs) else ()

    def indicial_polynomial(self) -> tuple[int, ...]:
        """``sum_i A_i(0) s^i``."""
        return poly_trim(p[0] if p else 0 for p in self.coeffs)

    def shifted_polynomial(self, l: int) -> tuple[int, ...]:
        """``P_l(s) = sum_i [x^l]A_i * s^i``: the recurrence weight at shift l."""
        return poly_trim(p[l] if l < len(p) else 0 for p in self.coeffs)

    def to_json(self) -> dict:
        return {"order": self.order, "variable": self.variable,
                "coeffs": [list(p) for p in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> DiffOperator:
        try:
            coeffs = [[int(c) for c in p] for p in data["coeffs"]]
            variable = data.get("variable", "phi")
        except (KeyError, TypeError, ValueError) as exc:
            raise OperatorError(f"malformed operator: {exc!r}") from exc
        op = cls.make(coeffs, variable)
        if "order" in data and int(data["order"]) != op.order:
            raise OperatorError("operator order does not match its coefficients")
        return op

    def __str__(self) -> str:
        lines = []
        for i in range(self.order, -1, -1):
            p = self.coeffs[i]
            if not p:
                continue
            d = "" if i == 0 else ("D" if i == 1 else f"D^{i}")
            lines.append(f"{format_poly(p, self.variable)} {d}".rstrip())
        return "\n  + ".join(lines)


def format_poly(p: Sequence[int], var: str = "phi") -> str:
    """Human-readable polynomial with any power of the variable pulled out front."""
    p = list(p)
    k = next((i for i, c in enumerate(p) if c != 0), None)
    if k is None:
        return "0"
    rest = p[k:]
    terms = []
    for j, c in enumerate(rest):
        if c == 0:
            continue
        mono = "" if j == 0 else (var if j == 1 else f"{var}^{j}")
        if not terms:
            head = "-" if c < 0 else ""
        else:
            head = " - " if c < 0 else " + "
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        terms.append(head + body)
    inner = "".join(terms)
    prefix = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
    if not prefix:
        return f"({inner})" if len(terms) > 1 else inner
    return f"{prefix}*({inner})" if len(terms) > 1 else f"{prefix}*{inner}"


def _raw_apply(coeffs, f: PowerSeries) -> list[Fraction]:
    n = f.order
    out = [Fraction(0)] * n
    a = f.coeffs
    for i, poly in enumerate(coeffs):
        for l, c in enumerate(poly):
            if not c:
                continue
            for k in range(l, n):
                s = k - l
                if a[s]:
                    out[k] += c * s ** i * a[s]
    return out


def apply(op: DiffOperator, f: PowerSeries) -> PowerSeries:
    """``sum_i A_i D^i f``, with ``max_degree`` coefficients held back as a margin."""
    raw = _raw_apply(op.coeffs, f)
    return PowerSeries(raw[: max(f.order - op.max_degree, 0)])


@dataclass(frozen=True)
class FitResult:
    operator: DiffOperator
    equations_used: int
    surplus: int


def _fit_rows(f: PowerSeries, order: int, max_deg: int, count: int):
    a = f.coeffs
    rows = []
    for k in range(count):
        row = []
        for i in range(order + 1):
            for l in range(max_deg + 1):
                s = k - l
                row.append(Fraction(s ** i) * a[s] if s >= 0 else Fraction(0))
        rows.append(row)
    return rows


MIN_SURPLUS = 5


def fit_operator_report(f: PowerSeries, order: int, max_deg: int,
                        min_surplus: int = MIN_SURPLUS) -> FitResult:
    """Fit and report how many trailing coefficients were left over as checks.

    ``equations_used`` is the shortest prefix of coefficient equations that
    already pins the operator down to a scalar; the remaining ``surplus``
    equations then verify it.
    """
    if order < 0 or max_deg < 0:
        raise OperatorError("order and max_deg must be nonnegative")
    nvar = (order + 1) * (max_deg + 1)
    N = f.order
    rows = _fit_rows(f, order, max_deg, N)
    basis = nullspace(rows, nvar)
    if not basis:
        raise OperatorError(f"no operator at this (order, degree) = ({order}, {max_deg})")
    if len(basis) > 1:
        raise OperatorError(
            f"underdetermined: increase series order ({len(basis)}-dimensional solution space)")
    lo, hi = 0, N
    while lo < hi:
        mid = (lo + hi) // 2
        if len(nullspace(rows[:mid], nvar)) == 1:
            hi = mid
        else:
            lo = mid + 1
    used = lo
    surplus = N - used
    if surplus < min_surplus:
        raise OperatorError(
            f"underdetermined: increase series order (only {surplus} verification terms, "
            f"need {min_surplus})")
    sol = basis[0]
    coeffs = [sol[i * (max_deg + 1):(i + 1) * (max_deg + 1)] for i in range(order + 1)]
    op = DiffOperator.make(coeffs)
    assert not any(_raw_apply(op.coeffs, f))
    return FitResult(op, used, surplus)


def fit_operator(f: PowerSeries, order: int, max_deg: int,
                 min_surplus: int = MIN_SURPLUS) -> DiffOperator:
    return fit_operator_report(f, order, max_deg, min_surplus).operator


def invert_coordinate(op: DiffOperator, twist: int = 1) -> DiffOperator:
    """Rewrite the operator in psi = 1/x, with D_x -> -D_psi - twist.

    Coefficients become ``psi^deg * A_i(1/psi)`` for a common power ``deg``,
    the least one clearing all denominators.
    """
    deg = op.max_degree
    # (-D - twist)^i expanded as a polynomial in D
    total: list[tuple] = [()] * (op.order + 1)
    for i, poly in enumerate(op.coeffs):
        if not poly:
            continue
        rev = tuple(poly[deg - j] if 0 <= deg - j < len(poly) else 0 for j in range(deg + 1))
        for k in range(i + 1):
            c = comb(i, k) * (-1) ** k * (-twist) ** (i - k)
            if c:
                total[k] = poly_add(total[k], tuple(c * x for x in rev))
    # drop a common power of psi if every coefficient is divisible by it
    shift = min((next(j for j, c in enumerate(p) if c) for p in total if p), default=0)
    total = [tuple(p[shift:]) for p in total]
    return DiffOperator.make(total, op.variable)


def _rational_roots(poly: Sequence[int]) -> tuple[list[Fraction], tuple]:
    """Rational roots with multiplicity, plus the leftover factor."""
    p = tuple(Fraction(c) for c in poly_trim(poly))
    roots: list[Fraction] = []
    while len(p) > 1 and p[0] == 0:
        roots.append(Fraction(0))
        p = p[1:]
    while len(p) > 1:
        ints = poly_primitive(p)
        a0, an = abs(ints[0]), abs(ints[-1])
        found = None
        for num in _divisors(a0):
            for den in _divisors(an):
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    if sum(c * cand ** k for k, c in enumerate(ints)) == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        roots.append(found)
        p, rem = poly_divmod(p, (-found, Fraction(1)))
        assert not rem
    return sorted(roots), tuple(poly_primitive(p)) if len(p) > 1 else ()


def _divisors(n: int) -> list[int]:
    n = abs(n)
    return [d for d in range(1, n + 1) if n % d == 0]


def indicial_roots(op: DiffOperator) -> list[Fraction]:
    """Roots at x = 0 of ``sum_i A_i(0) s^i``, with multiplicity.

    A quadruple root 0 for an order-4 operator signals maximally unipotent
    monodromy.
    """
    poly = op.indicial_polynomial()
    if not poly:
        raise OperatorError("indicial polynomial vanishes identically: 0 is not a regular singular point")
    roots, rest = _rational_roots(poly)
    if rest:
        raise IndicialError(roots, rest)
    return roots


def is_mum(op: DiffOperator) -> bool:
    try:
        return indicial_roots(op) == [0] * op.order
    except OperatorError:
        return False


def _poly_at(p: Sequence[int], s: int) -> int:
    acc = 0
    for c in reversed(p):
        acc = acc * s + c
    return acc


def _solve_recurrence(op: DiffOperator, rhs: Sequence[Fraction], order: int, a0) -> list[Fraction]:
    """Coefficients a_k with ``(op a)_k = rhs_k`` and a given a_0."""
    weights = [op.shifted_polynomial(l) for l in range(op.max_degree + 1)]
    out = [Fraction(a0)]
    if _poly_at(weights[0], 0) * out[0] != rhs[0]:
        raise OperatorError("inconsistent at x^0: the operator does not fix this constant term")
    for k in range(1, order):
        s = Fraction(rhs[k])
        for l in range(1, min(k, op.max_degree) + 1):
            if weights[l]:
                s -= _poly_at(weights[l], k - l) * out[k - l]
        lead = _poly_at(weights[0], k)
        if lead == 0:
            raise OperatorError(f"resonant recurrence at k={k}")
        out.append(s / lead)
    return out


def holomorphic_solution(op: DiffOperator, order: int) -> PowerSeries:
    """The power series solution with constant term 1."""
    coeffs = _solve_recurrence(op, [Fraction(0)] * order, order, 1)
    return PowerSeries(coeffs)


@dataclass(frozen=True)
class FrobeniusPair:
    f0: PowerSeries
    g: PowerSeries


def frobenius_log_solution(op: DiffOperator, f0: PowerSeries) -> FrobeniusPair:
    """Find g, g(0) = 0, with ``f0 * (g + log x)`` annihilated by ``op``.

    With D(log x) = 1, ``op(f0 log x) = op(f0) log x + sum_i i A_i D^(i-1) f0``,
    so ``h = f0 g`` solves ``op(h) = -sum_i i A_i D^(i-1) f0``.
    """
    n = f0.order
    if any(_raw_apply(op.coeffs, f0)):
        raise OperatorError("f0 is not annihilated by the operator")
    derived = [poly_mul((i,), p) for i, p in enumerate(op.coeffs)][1:]
    rhs = [-c for c in _raw_apply(derived, f0)] if derived else [Fraction(0)] * n
    if rhs[0] != 0:
        raise OperatorError("inconsistent system: no logarithmic solution (operator not MUM?)")
    h = _solve_recurrence(op, rhs, n, 0)
    g = PowerSeries(h) / f0
    return FrobeniusPair(f0, g)


def check_frobenius(op: DiffOperator, pair: FrobeniusPair) -> bool:
    """Both f0 and f0*(g + log x) are annihilated to the available order."""
    f0, g = pair.f0, pair.g
    h = f0 * g
    derived = [poly_mul((i,), p) for i, p in enumerate(op.coeffs)][1:]
    log_part = _raw_apply(derived, f0) if derived else [0] * f0.order
    total = [x + y for x, y in zip(_raw_apply(op.coeffs, h), log_part)]
    return not any(_raw_apply(op.coeffs, f0)) and not any(total)


def leading_factorization(op: DiffOperator, factor: Sequence[int]):
    """Divide the leading coefficient by ``factor``; returns (quotient, remainder)."""
    return poly_divmod(op.coeffs[-1], factor)


__all__ = [
    "DiffOperator", "FitResult", "FrobeniusPair", "OperatorError", "IndicialError", "SeriesError",
    "apply", "fit_operator", "fit_operator_report", "invert_coordinate", "indicial_roots",
    "is_mum", "holomorphic_solution", "frobenius_log_solution", "check_frobenius",
    "format_poly", "leading_factorization",
]
