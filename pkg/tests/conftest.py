from fractions import Fraction

import pytest
from hypothesis import strategies as st

from pfmirror.periods import period

small_rationals = st.fractions(min_value=-20, max_value=20, max_denominator=9)


def series_strategy(min_order=1, max_order=8, unit=False, nonunit=False):
    @st.composite
    def build(draw):
        from pfmirror.series import PowerSeries
        n = draw(st.integers(min_order, max_order))
        cs = draw(st.lists(small_rationals, min_size=n, max_size=n))
        if unit and cs[0] == 0:
            cs[0] = Fraction(1)
        if nonunit:
            cs[0] = Fraction(0)
        return PowerSeries(cs)
    return build()


@pytest.fixture(scope="session")
def pfaffian_period_40():
    return period("pfaffian", 40).series
