"""Holomorphic periods of the pfaffian and Grassmannian quotient families.

Two independent routes to the same integer series:

* :func:`period_enumeration` expands the residue integrand directly: every
  x-free product of the monomials contributes its sign times the product of
  multinomial coefficients counting its occurrences.
* the ``period_closed_form_*`` functions evaluate the reduced four-index
  sums in which those products have been parametrised by the generators of
  the x-free subring.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from math import comb, prod

from .lattice import enumerate_kernel_points
from .models import MonomialModel, get_model
from .series import PowerSeries


@dataclass(frozen=True)
class PeriodSeries:
    series: PowerSeries
    model: str
    method: str

    def to_json(self) -> dict:
        return {"model": self.model, "method": self.method, "period": self.series.to_json()}


@lru_cache(maxsize=None)
def factorial(n: int) -> int:
    return n * factorial(n - 1) if n > 1 else 1


def multinomial(parts) -> int:
    parts = list(parts)
    if any(p < 0 for p in parts):
        return 0
    out = factorial(sum(parts))
    for p in parts:
        out //= factorial(p)
    return out


def _check_order(order: int):
    if order < 1:
        raise ValueError("order must be at least 1")


def enumeration_coefficient(model: MonomialModel, m: int) -> int:
    """Coefficient of phi^m, summed over every x-free product of y-degree phi_ydeg * m."""
    A = model.exponent_matrix
    total = 0
    for point in enumerate_kernel_points(A, model.phi_ydeg * m):
        weight = prod(multinomial(block) for block in model.split(point))
        total += A.sign_of(point) * weight
    return total


def period_enumeration(model: MonomialModel | str, order: int) -> PeriodSeries:
    if isinstance(model, str):
        model = get_model(model)
    _check_order(order)
    coeffs = [enumeration_coefficient(model, m) for m in range(order)]
    return PeriodSeries(PowerSeries(coeffs), model.name, "enumeration")


def pfaffian_coefficient(m: int) -> int:
    """Coefficient of phi^m from the fully reduced pfaffian sum over (m1, m6, u1, u2)."""
    total = 0
    for m1 in range(m + 1):
        for m6 in range(m - m1 + 1):
            for u1 in range(m - m1 - m6 + 1):
                u2 = m - m1 - m6 - u1
                term = (comb(m, u1) ** 2 * comb(m, u2) ** 2 * comb(m + m6, m)
                        * multinomial((m1, u1 + m6, u2 + m6)))
                total += -term if m1 % 2 else term
    return total


def pfaffian_coefficient_inner_sums(m: int) -> int:
    """The same coefficient via the intermediate form with inner alternating sums.

    The second inner sum uses (m + m5 + m6)!, mirroring (m + m4 + m6)! in the
    first; the enumeration oracle confirms this reading.
    """
    f = factorial
    total = Fraction(0)
    for m1 in range(m + 1):
        for m6 in range(m - m1 + 1):
            for u1 in range(m - m1 - m6 + 1):
                u2 = m - m1 - m6 - u1
                outer = Fraction(f(m), f(m1) * f(m6) * f(u1) * f(u2) * f(m - u1) * f(m - u2))
                s1 = sum(Fraction((-1) ** m2 * f(m + (u1 - m2) + m6),
                                  f(m2) * f(u1 - m2) * f(u1 - m2 + m6))
                         for m2 in range(u1 + 1))
                s2 = sum(Fraction((-1) ** m3 * f(m + (u2 - m3) + m6),
                                  f(m3) * f(u2 - m3) * f(u2 - m3 + m6))
                         for m3 in range(u2 + 1))
                total += (-1) ** m1 * outer * s1 * s2
    assert total.denominator == 1
    return int(total)


def grassmannian_coefficient(m: int) -> int:
    """Coefficient of phi^m from the Grassmannian sum over (m1, m2, m3, m4)."""
    total = 0
    for m2 in range(m + 1):
        for m3 in range(m - m2 + 1):
            for m4 in range(m - m2 - m3 + 1):
                m1 = m - m2 - m3 - m4
                term = (comb(m, m2) * comb(m, m4) * comb(m + m3, m)
                        * multinomial((m1, m2 + m3, m2 + m3 + m4))
                        * multinomial((m1, m3 + m4, m2 + m3 + m4)))
                total += -term if (m2 + m4) % 2 else term
    return total


def period_closed_form_pfaffian(order: int) -> PeriodSeries:
    _check_order(order)
    return PeriodSeries(PowerSeries(pfaffian_coefficient(m) for m in range(order)),
                        "pfaffian", "closed_form")


def period_closed_form_grassmannian(order: int) -> PeriodSeries:
    _check_order(order)
    return PeriodSeries(PowerSeries(grassmannian_coefficient(m) for m in range(order)),
                        "grassmannian", "closed_form")


CLOSED_FORMS = {
    "pfaffian": period_closed_form_pfaffian,
    "grassmannian": period_closed_form_grassmannian,
}


def period(model: MonomialModel | str, order: int, method: str = "closed_form") -> PeriodSeries:
    """Closed form for the presets, enumeration otherwise (or on request)."""
    if isinstance(model, str):
        model = get_model(model)
    if method == "closed_form" and model.name in CLOSED_FORMS and model == get_model(model.name):
        return CLOSED_FORMS[model.name](order)
    return period_enumeration(model, order)
