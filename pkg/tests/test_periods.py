import pytest

from pfmirror.models import MonomialModel, Monomial
from pfmirror.periods import (
    grassmannian_coefficient,
    period,
    period_closed_form_grassmannian,
    period_closed_form_pfaffian,
    period_enumeration,
    pfaffian_coefficient,
    pfaffian_coefficient_inner_sums,
)
from reference_data import PERIOD


def test_pfaffian_closed_form():
    assert period_closed_form_pfaffian(5).series.coeffs == PERIOD[:5]
    assert period_closed_form_pfaffian(10).series.coeffs == PERIOD
    assert period_closed_form_pfaffian(1).series.coeffs == (1,)


def test_grassmannian_closed_form():
    assert period_closed_form_grassmannian(6).series.coeffs == PERIOD[:6]


def test_families_agree():
    assert period_closed_form_pfaffian(25).series == period_closed_form_grassmannian(25).series


def test_inner_sum_form_agrees():
    for m in range(8):
        assert pfaffian_coefficient_inner_sums(m) == pfaffian_coefficient(m)


def test_pfaffian_oracle_order_7():
    enum = period_enumeration("pfaffian", 7).series
    assert enum == period_closed_form_pfaffian(7).series


def test_grassmannian_oracle():
    enum = period_enumeration("grassmannian", 5).series
    assert enum.coeffs == PERIOD[:5]


def test_positive_and_log_convex():
    c = [pfaffian_coefficient(m) for m in range(25)]
    assert all(x > 0 for x in c)
    assert all(c[k] ** 2 <= c[k - 1] * c[k + 1] for k in range(1, 24))
    assert [grassmannian_coefficient(m) for m in range(25)] == c


def test_method_selection():
    assert period("pfaffian", 3).method == "closed_form"
    assert period("pfaffian", 3, method="enumeration").method == "enumeration"


def test_custom_model_uses_enumeration():
    # 1 / (1 - y x - y/x) : x-free products are (y x)^k (y/x)^k
    model = MonomialModel("toy", ("x",), ((Monomial.make(1, 1, x=1), Monomial.make(1, 1, x=-1)),),
                          phi_ydeg=2)
    ps = period(model, 5)
    assert ps.method == "enumeration"
    assert ps.series.coeffs == (1, 2, 6, 20, 70)


def test_order_validation():
    with pytest.raises(ValueError):
        period("pfaffian", 0)
