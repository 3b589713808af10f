"""Frozen reference values.

Operators are assembled from their factored forms so that the expanded
coefficients are never typed in by hand.
"""

from pfmirror.series import poly_mul


def _prod(*polys):
    out = (1,)
    for p in polys:
        out = poly_mul(out, p)
    return tuple(int(c) for c in out)


X = (0, 1)

# operator at phi = 0, coefficients A_0 .. A_4
OPERATOR_ZERO = (
    _prod(X, (-45, -2166, 12, -26, 1)),
    _prod((2,), X, (-153, -4773, 675, -87, 2)),
    _prod((2,), X, (-408, -7597, 2353, -239, 3)),
    _prod((4,), X, (-3, 1), (85, 867, -149, 1)),
    _prod((1, -57, -289, 1), (-3, 1), (-3, 1)),
)

# operator at phi = infinity in psi = 1/phi
OPERATOR_INFINITY = (
    _prod(X, (-17, -202, -8, -54, 9)),
    _prod((2,), X, (-69, -481, 159, -171, 18)),
    _prod((2,), X, (-212, -473, 725, -435, 27)),
    _prod((4,), X, (-1, 3), (143, 57, -87, 3)),
    _prod((1, -289, -57, 1), (1, -3), (1, -3)),
)

DISCRIMINANT = (1, -57, -289, 1)
OTHER_LOCUS = (1, -58, -289, 1)

PERIOD = (1, 5, 109, 3317, 121501, 4954505, 216867925, 9981053045, 476860000285,
          23451310381505)

# holomorphic solution of OPERATOR_INFINITY; test_operators also checks that
# the operator annihilates it to order 20
PERIOD_INFINITY = (1, 17, 1549, 215585, 36505501, 6921832517)

KAPPA_ZERO = (3, 14, 714, 24584, 906122)
INSTANTONS_ZERO = (28, 175, 1820, 28294)
KAPPA_INFINITY = (1, 42, 6958)
INSTANTONS_INFINITY_M7 = (588, 12103, 583884)
