"""Truncated univariate power series with exact rational coefficients.

A :class:`PowerSeries` knows how many of its coefficients are valid: its
``order``.  Binary operations keep the smaller order, so a result never
claims more precision than its inputs had.

>>> f = PowerSeries([1, 5, 109])
>>> (f * f).coeffs
(Fraction(1, 1), Fraction(10, 1), Fraction(243, 1))
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Sequence

from .linalg import nullspace


class SeriesError(ValueError):
    """Raised when a series operation's precondition fails."""


def to_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {x!r} to an exact rational")


def rational_str(x) -> str:
    """Serialise as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    return str(to_rational(x))


@dataclass(frozen=True, init=False)
class PowerSeries:
    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable = (), order: int | None = None):
        cs = [to_rational(c) for c in coeffs]
        if order is not None:
            if order < 0:
                raise SeriesError("order must be nonnegative")
            cs = (cs + [Fraction(0)] * order)[:order]
        object.__setattr__(self, "coeffs", tuple(cs))

    # construction helpers

    @classmethod
    def constant(cls, c, order: int) -> PowerSeries:
        return cls([c], order)

    @classmethod
    def variable(cls, order: int) -> PowerSeries:
        """The series ``x`` itself."""
        return cls([0, 1], order)

    @classmethod
    def zero(cls, order: int) -> PowerSeries:
        return cls([], order)

    @classmethod
    def from_polynomial(cls, poly: Sequence, order: int) -> PowerSeries:
        return cls(poly, order)

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self) -> str:
        terms = ", ".join(str(c) for c in self.coeffs)
        return f"PowerSeries([{terms}], order={self.order})"

    def truncate(self, order: int) -> PowerSeries:
        if order > self.order:
            raise SeriesError(f"cannot extend a series of order {self.order} to {order}")
        return PowerSeries(self.coeffs[:order])

    def _coerce(self, other) -> PowerSeries:
        if isinstance(other, PowerSeries):
            return other
        return PowerSeries.constant(other, self.order)

    # ring operations

    def __add__(self, other) -> PowerSeries:
        other = self._coerce(other)
        n = min(self.order, other.order)
        return PowerSeries(a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n]))

    __radd__ = __add__

    def __neg__(self) -> PowerSeries:
        return PowerSeries(-a for a in self.coeffs)

    def __sub__(self, other) -> PowerSeries:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> PowerSeries:
        return self._coerce(other) - self

    def __mul__(self, other) -> PowerSeries:
        if not isinstance(other, PowerSeries):
            c = to_rational(other)
            return PowerSeries(c * a for a in self.coeffs)
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n):
            s = Fraction(0)
            for i in range(k + 1):
                if a[i] and b[k - i]:
                    s += a[i] * b[k - i]
            out.append(s)
        return PowerSeries(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> PowerSeries:
        if e < 0:
            return self.invert() ** (-e)
        result = PowerSeries.constant(1, self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __truediv__(self, other) -> PowerSeries:
        if isinstance(other, PowerSeries):
            return self * other.invert()
        return self * (1 / to_rational(other))

    def __rtruediv__(self, other) -> PowerSeries:
        return self._coerce(other) * self.invert()

    # analytic-style operations

    def invert(self) -> PowerSeries:
        """Multiplicative inverse; requires a nonzero constant term."""
        if not self.coeffs or self.coeffs[0] == 0:
            raise SeriesError("not a unit: constant term is zero")
        a = self.coeffs
        inv0 = 1 / a[0]
        out = [inv0]
        for k in range(1, self.order):
            s = sum((a[i] * out[k - i] for i in range(1, k + 1) if a[i]), Fraction(0))
            out.append(-s * inv0)
        return PowerSeries(out)

    def log_derivative(self) -> PowerSeries:
        """Termwise ``k * a_k``: the operator x d/dx."""
        return PowerSeries(k * a for k, a in enumerate(self.coeffs))

    def derivative(self) -> PowerSeries:
        """d/dx; the result has one fewer valid coefficient."""
        return PowerSeries(k * a for k, a in enumerate(self.coeffs) if k > 0)

    def integrate_log(self) -> PowerSeries:
        """Inverse of :meth:`log_derivative` on series without constant term."""
        if self.coeffs and self.coeffs[0] != 0:
            raise SeriesError("constant term must vanish to divide by k")
        return PowerSeries([0] + [a / k for k, a in enumerate(self.coeffs) if k > 0])

    def log(self) -> PowerSeries:
        if not self.coeffs or self.coeffs[0] != 1:
            raise SeriesError("log requires constant term 1")
        return (self.log_derivative() * self.invert()).integrate_log()

    def exp(self) -> PowerSeries:
        if self.coeffs and self.coeffs[0] != 0:
            raise SeriesError("exp requires constant term 0")
        f = self.coeffs
        out = [Fraction(1)] if self.order else []
        # n e_n = sum_{k=1}^n k f_k e_{n-k}
        for n in range(1, self.order):
            s = sum((k * f[k] * out[n - k] for k in range(1, n + 1) if f[k]), Fraction(0))
            out.append(s / n)
        return PowerSeries(out)

    def shift_down(self, k: int = 1) -> PowerSeries:
        """Divide by x^k; the first k coefficients must vanish."""
        if any(self.coeffs[:k]):
            raise SeriesError(f"series is not divisible by x^{k}")
        return PowerSeries(self.coeffs[k:])

    def shift_up(self, k: int = 1) -> PowerSeries:
        """Multiply by x^k, gaining k valid coefficients."""
        return PowerSeries([0] * k + list(self.coeffs))

    def compose(self, inner: PowerSeries) -> PowerSeries:
        """``self(inner(x))`` for ``inner`` with zero constant term."""
        if inner.coeffs and inner.coeffs[0] != 0:
            raise SeriesError("inner series must have zero constant term")
        n = min(self.order, inner.order)
        result = PowerSeries.zero(n)
        for c in reversed(self.coeffs[:n]):
            result = result * inner.truncate(n) + c
        return result

    def revert(self) -> PowerSeries:
        """Compositional inverse g with ``self(g(x)) = x``.

        Coefficients come from Lagrange inversion:
        ``[x^n] g = (1/n) [w^(n-1)] (w / f(w))^n``.
        """
        if len(self.coeffs) < 2 or self.coeffs[0] != 0 or self.coeffs[1] == 0:
            raise SeriesError("reversion requires f(0) = 0 and f'(0) != 0")
        h = self.shift_down(1).invert()
        out = [Fraction(0)]
        power = PowerSeries.constant(1, h.order)
        for n in range(1, self.order):
            power = power * h
            out.append(power.coeffs[n - 1] / n)
        return PowerSeries(out)

    def pade(self, num_deg: int, den_deg: int) -> RationalFunction:
        return pade(self, num_deg, den_deg)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def to_json(self) -> list[str]:
        return [rational_str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence) -> PowerSeries:
        return cls(to_rational(x) for x in data)


# dense polynomials: sequences of coefficients, lowest degree first

def poly_trim(p: Sequence) -> tuple:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def poly_mul(a: Sequence, b: Sequence) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly_trim(out)


def poly_add(a: Sequence, b: Sequence) -> tuple:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return poly_trim(x + y for x, y in zip(a, b))


def poly_scale(a: Sequence, c) -> tuple:
    return poly_trim(c * x for x in a)


def poly_eval(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_divmod(a: Sequence, b: Sequence) -> tuple[tuple, tuple]:
    """Polynomial long division over the rationals."""
    b = poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(x) for x in poly_trim(a)]
    quot = [Fraction(0)] * max(len(rem) - len(b) + 1, 0)
    lead = Fraction(b[-1])
    while len(rem) >= len(b) and rem:
        shift = len(rem) - len(b)
        c = rem[-1] / lead
        quot[shift] = c
        for i, y in enumerate(b):
            rem[shift + i] -= c * y
        rem = list(poly_trim(rem))
    return poly_trim(quot), tuple(rem)


def poly_content(p: Sequence) -> Fraction:
    """Positive rational c with p / c a primitive integer polynomial."""
    p = [to_rational(x) for x in p if x != 0]
    if not p:
        return Fraction(0)
    den = 1
    for x in p:
        den = lcm(den, x.denominator)
    g = 0
    for x in p:
        g = gcd(g, int(x * den))
    return Fraction(g, den)


def poly_primitive(p: Sequence) -> tuple[int, ...]:
    """Integer polynomial with coprime coefficients, positive at the lowest nonzero degree."""
    p = poly_trim(to_rational(x) for x in p)
    if not p:
        return ()
    c = poly_content(p)
    lowest = next(x for x in p if x != 0)
    if lowest < 0:
        c = -c
    return tuple(int(x / c) for x in p)


@dataclass(frozen=True)
class RationalFunction:
    """``numerator / denominator`` in lowest terms.

    The denominator is a primitive integer polynomial with positive constant
    term; the numerator carries whatever rational scale remains.
    """

    numerator: tuple[Fraction, ...]
    denominator: tuple[int, ...]

    def __post_init__(self):
        if not self.denominator or self.denominator[0] == 0:
            raise SeriesError("denominator must be nonzero at 0")

    def series(self, order: int) -> PowerSeries:
        return PowerSeries(self.numerator, order) / PowerSeries(self.denominator, order)

    def __call__(self, x):
        return Fraction(poly_eval(self.numerator, to_rational(x))) / poly_eval(
            self.denominator, to_rational(x))

    def scaled_integral(self) -> tuple[Fraction, tuple[int, ...]]:
        """Split the numerator as ``scale * primitive integer polynomial``."""
        prim = poly_primitive(self.numerator)
        if not prim:
            return Fraction(0), ()
        scale = next(to_rational(x) for x in self.numerator if x != 0) / next(
            x for x in prim if x != 0)
        return scale, prim

    def to_json(self) -> dict:
        return {
            "numerator": [rational_str(c) for c in self.numerator],
            "denominator": [str(c) for c in self.denominator],
        }


def pade(f: PowerSeries, num_deg: int, den_deg: int) -> RationalFunction:
    """Recognise ``f`` as P/Q with deg P <= num_deg, deg Q <= den_deg.

    P and Q come from the exact null space of the linear conditions
    ``f Q - P = O(x^(num_deg + den_deg + 1))``.  The fit must be unique and
    must also reproduce every remaining known coefficient of ``f``.
    """
    n, d = num_deg, den_deg
    if n < 0 or d < 0:
        raise SeriesError("degrees must be nonnegative")
    if f.order < n + d + 2:
        raise SeriesError(
            f"need at least {n + d + 2} coefficients for a verified ({n},{d}) fit, have {f.order}")
    a = f.coeffs
    nvar = (n + 1) + (d + 1)
    rows = []
    for k in range(n + d + 1):
        row = [Fraction(0)] * nvar
        if k <= n:
            row[k] = Fraction(-1)
        for j in range(min(k, d) + 1):
            row[n + 1 + j] = a[k - j]
        rows.append(row)
    basis = nullspace(rows, nvar)
    if len(basis) != 1:
        raise SeriesError(
            f"not rational of given degrees: solution space has dimension {len(basis)}")
    sol = basis[0]
    p, q = sol[: n + 1], sol[n + 1:]
    if q[0] == 0:
        raise SeriesError("not rational of given degrees: denominator vanishes at 0")
    residual = f * PowerSeries(q, f.order) - PowerSeries(p, f.order)
    if any(residual.coeffs):
        raise SeriesError("not rational of given degrees: surplus coefficients disagree")
    qi = poly_primitive(q)
    scale = Fraction(q[0]) / qi[0]
    return RationalFunction(poly_trim(x / scale for x in p), qi)
