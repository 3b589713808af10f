from fractions import Fraction

from hypothesis import given, settings, strategies as st

from pfmirror.mirror import (
    InstantonSeries,
    extract_instantons,
    invert_rational_function,
    lambert_roundtrip,
    mirror_map,
    yukawa_phi,
    yukawa_q,
)
from pfmirror.operators import DiffOperator, frobenius_log_solution, holomorphic_solution
from pfmirror.series import PowerSeries, RationalFunction, pade
from reference_data import (
    DISCRIMINANT,
    INSTANTONS_INFINITY_M7,
    INSTANTONS_ZERO,
    KAPPA_INFINITY,
    KAPPA_ZERO,
    OPERATOR_INFINITY,
    OPERATOR_ZERO,
    PERIOD,
)

OP0 = DiffOperator.make(OPERATOR_ZERO)
OPINF = DiffOperator.make(OPERATOR_INFINITY)
N = 20


def zero_side():
    f0 = holomorphic_solution(OP0, N)
    assert f0.coeffs[:10] == PERIOD
    pair = frobenius_log_solution(OP0, f0)
    return f0, pair.g, mirror_map(f0, pair.g)


def test_mirror_map_zero():
    f0, g, mm = zero_side()
    assert g.coeffs[:3] == (0, 14, 287)
    assert mm.q_of_phi.coeffs[:4] == (0, 1, 14, 385)
    assert mm.q_of_phi.compose(mm.phi_of_q) == PowerSeries.variable(N)
    assert mm.phi_of_q.compose(mm.q_of_phi) == PowerSeries.variable(N)


def test_trivial_mirror_map():
    mm = mirror_map(PowerSeries.constant(1, 6), PowerSeries.zero(6))
    assert mm.q_of_phi == PowerSeries.variable(6)
    # dividing phi(q) by q costs one coefficient
    assert mm.jacobian == PowerSeries.constant(1, 5)
    kappa = yukawa_q(PowerSeries.constant(1, 6), mm, PowerSeries.constant(1, 6), 1)
    assert kappa == PowerSeries.constant(1, 5)


def test_yukawa_phi_zero():
    K = yukawa_phi(OP0, N)
    expected = RationalFunction((Fraction(1), Fraction(-1, 3)), DISCRIMINANT).series(N)
    assert K == expected
    rf = pade(K, 1, 3)
    assert rf.scaled_integral()[1] == (3, -1)
    assert rf.denominator == DISCRIMINANT


def test_yukawa_phi_constant_when_a3_vanishes():
    op = DiffOperator.make([(), (), (), (), (1, 1)])
    assert yukawa_phi(op, 6) == PowerSeries.constant(1, 6)


def test_yukawa_phi_infinity_closed_form():
    K = yukawa_phi(OPINF, N)
    num, den = invert_rational_function((3, -1), DISCRIMINANT)
    twisted = PowerSeries(num, N) / PowerSeries(den, N)
    # the carried-over closed form is exactly the ODE solution, with weight 1
    assert twisted == K
    rf = pade(K, 1, 3)
    assert rf.denominator == (1, -289, -57, 1)


def test_yukawa_q_zero_and_instantons():
    f0, g, mm = zero_side()
    kappa = yukawa_q(yukawa_phi(OP0, N), mm, f0, 3)
    assert kappa.coeffs[:5] == KAPPA_ZERO
    inst = extract_instantons(kappa * 2, 1)
    assert inst.n0 == 6 and inst.nd[:4] == INSTANTONS_ZERO
    assert inst.integral


def test_yukawa_q_infinity_and_instantons():
    f0 = holomorphic_solution(OPINF, N)
    mm = mirror_map(f0, frobenius_log_solution(OPINF, f0).g)
    kappa = yukawa_q(yukawa_phi(OPINF, N), mm, f0, 1)
    assert kappa.coeffs[:3] == KAPPA_INFINITY
    inst = extract_instantons(kappa * 2).resolve(7)
    assert inst.n0 == 14 and inst.nd[:3] == INSTANTONS_INFINITY_M7
    assert inst.integral


def test_extract_examples():
    kappa = PowerSeries([2 * c for c in KAPPA_ZERO])
    inst = extract_instantons(kappa)
    assert inst.n0 == 6 and inst.nd == INSTANTONS_ZERO
    assert lambert_roundtrip(inst, 5).coeffs == (6, 28, 1428, 49168, 1812244)
    const = extract_instantons(PowerSeries([5, 0, 0, 0]))
    assert const.n0 == 5 and not any(const.nd)
    # n_1 = 1 puts 1 on every q^d; one extra unit at q^8 gives n_8 = 1/512
    half = extract_instantons(PowerSeries([0] + [1] * 7 + [2]))
    assert half.non_integral_degrees() == [8] and not half.integral


def test_resolve():
    inst = extract_instantons(PowerSeries([6, 28, 1428])).resolve(Fraction(7, 2))
    assert inst.n0 == 21 and inst.nd == (98, Fraction(1225, 2))
    assert inst.per_m == (6, 28, 175)
    assert lambert_roundtrip(inst, 3) == PowerSeries([6, 28, 1428])


@settings(max_examples=250, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=2, max_size=12), st.integers(1, 9))
def test_prop_lambert_roundtrip(ns, m):
    n0, nd = Fraction(ns[0]), tuple(Fraction(x) for x in ns[1:])
    inst = InstantonSeries(n0 * m, tuple(x * m for x in nd), Fraction(m), "zero", (n0,) + nd)
    kappa = lambert_roundtrip(inst, len(ns))
    back = extract_instantons(kappa, m)
    assert back.per_m == (n0,) + nd
    assert lambert_roundtrip(back, len(ns)) == kappa
