"""Mirror map, Yukawa coupling and instanton numbers.

Conventions: the operator is written in D = phi d/dphi, the mirror
coordinate is ``q = phi * exp(g)`` (so its linear coefficient is 1), and the
A-model side of the comparison is

    kappa = n_0 + sum_d n_d d^3 q^d / (1 - q^d).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .operators import DiffOperator, OperatorError
from .series import PowerSeries, SeriesError, rational_str, to_rational


@dataclass(frozen=True)
class MirrorMap:
    q_of_phi: PowerSeries
    phi_of_q: PowerSeries
    jacobian: PowerSeries

    def to_json(self) -> dict:
        return {
            "q_of_phi": self.q_of_phi.to_json(),
            "phi_of_q": self.phi_of_q.to_json(),
            "jacobian": self.jacobian.to_json(),
        }


def yukawa_phi(op: DiffOperator, order: int) -> PowerSeries:
    """K with K(0) = 1 and ``D log K = -A_3 / (2 A_4)``."""
    if op.order != 4:
        raise OperatorError("Yukawa coupling needs an order-4 operator")
    a4, a3 = op.coefficient(4), op.coefficient(3)
    if not a4 or a4[0] == 0:
        raise OperatorError("leading coefficient vanishes at 0")
    rhs = -PowerSeries(a3, order) / (2 * PowerSeries(a4, order))
    if rhs.coeffs and rhs.coeffs[0] != 0:
        raise OperatorError("non-integrable: operator not in expected form")
    return rhs.integrate_log().exp()


def mirror_map(f0: PowerSeries, g: PowerSeries) -> MirrorMap:
    """``q = phi e^g``, its inverse, and ``dlog(phi)/dt`` as a series in q."""
    if g.coeffs and g.coeffs[0] != 0:
        raise SeriesError("g must vanish at 0")
    q = g.exp().shift_up(1).truncate(g.order)
    phi = q.revert()
    # (q / phi(q)) dphi/dq = D_q log phi(q) = 1 + D_q log(phi(q) / q)
    jac = phi.shift_down(1).log().log_derivative() + 1
    return MirrorMap(q, phi, jac)


def yukawa_q(K: PowerSeries, mmap: MirrorMap, f0: PowerSeries, c1=1) -> PowerSeries:
    """``jacobian^3 * c1 K(phi(q)) / f0(phi(q))^2``."""
    phi = mmap.phi_of_q
    k_q = K.compose(phi)
    f_q = f0.compose(phi)
    return mmap.jacobian ** 3 * k_q * to_rational(c1) / (f_q * f_q)


@dataclass(frozen=True)
class InstantonSeries:
    """Instanton numbers extracted from ``kappa / m``.

    ``n0`` and ``nd`` are the resolved numbers ``m * (extracted values)``; the
    per-unit values are ``per_m``.
    """

    n0: Fraction
    nd: tuple[Fraction, ...]
    m: Fraction = Fraction(1)
    point: str = "zero"
    per_m: tuple[Fraction, ...] = field(default=(), repr=False)

    @property
    def integral(self) -> bool:
        return all(x.denominator == 1 for x in self.per_m)

    def non_integral_degrees(self) -> list[int]:
        return [d for d, x in enumerate(self.per_m) if x.denominator != 1]

    def resolve(self, m) -> InstantonSeries:
        m = to_rational(m)
        return InstantonSeries(self.per_m[0] * m, tuple(x * m for x in self.per_m[1:]), m,
                               self.point, self.per_m)

    def to_json(self) -> dict:
        return {
            "n0": rational_str(self.n0),
            "nd": [rational_str(x) for x in self.nd],
            "m": rational_str(self.m),
            "point": self.point,
        }


def _divisors(d: int) -> list[int]:
    return [e for e in range(1, d + 1) if d % e == 0]


def extract_instantons(kappa: PowerSeries, m=1, point: str = "zero") -> InstantonSeries:
    """Invert the Lambert-type expansion of ``kappa`` (which is kappa/m).

    The q^d coefficient is ``sum_{e | d} n_e e^3``, so
    ``n_d = (coeff_d - sum_{e | d, e < d} n_e e^3) / d^3``.
    """
    if kappa.order < 1:
        raise SeriesError("kappa must have at least a constant term")
    c = kappa.coeffs
    per = [c[0]]
    for d in range(1, kappa.order):
        s = c[d] - sum(per[e] * e ** 3 for e in _divisors(d) if e < d)
        per.append(s / d ** 3)
    m = to_rational(m)
    return InstantonSeries(per[0] * m, tuple(x * m for x in per[1:]), m, point, tuple(per))


def lambert_roundtrip(inst: InstantonSeries, order: int) -> PowerSeries:
    """Rebuild ``kappa / m`` from instanton numbers."""
    coeffs = [Fraction(0)] * order
    if order:
        coeffs[0] = inst.n0 / inst.m
    for d, n in enumerate(inst.nd, start=1):
        if d >= order:
            break
        w = n * d ** 3 / inst.m
        for k in range(d, order, d):
            coeffs[k] += w
    return PowerSeries(coeffs)


def invert_rational_function(num: Sequence, den: Sequence, weight_power: int = 2,
                             sign: int = -1) -> tuple[tuple, tuple]:
    """Express ``sign * x^weight_power * num(x)/den(x)`` in psi = 1/x.

    Returns (numerator, denominator) polynomials in psi.  With the default
    arguments this carries the Yukawa coupling across x -> 1/x: the holomorphic
    form picks up one factor of x, and the three logarithmic derivatives each
    change sign.
    """
    num = list(num)
    den = list(den)
    dn, dd = len(num) - 1, len(den) - 1
    # x^w num(x)/den(x) = psi^(dd - dn - w) * rev(num)(psi) / rev(den)(psi)
    shift = dd - dn - weight_power
    rnum = [to_rational(c) * sign for c in reversed(num)]
    rden = [to_rational(c) for c in reversed(den)]
    if shift >= 0:
        rnum = [Fraction(0)] * shift + rnum
    else:
        rden = [Fraction(0)] * (-shift) + rden
    return tuple(rnum), tuple(rden)
