from fractions import Fraction

import pytest

from hypoly import intersection as I
from hypoly import polynomial as P
from hypoly.errors import BadShape, DegreeMismatch, NonGenericWeights, NonIntegerPairing, SetNotShort

from _util import as_sets, mask

A = (1, 1, 3, 3, 3)
EPS = (1, 1, 3, 3, Fraction(3) + Fraction(1, 1000))
S12, S123 = mask(1, 2), mask(1, 2, 3)

WORKED = [
    (S12, (2, 0, 0, 0, 0), -2),
    (S12, (1, 0, 0, 0, 1), 0),
    (S12, (0, 0, 0, 1, 1), 2),
    (S12, (1, 1, 0, 0, 0), -2),
    (S12, (0, 0, 1, 0, 1), 2),
    (S12, (1, 0, 1, 0, 0), 0),
    (S123, (2, 0, 0, 0, 0), 1),
    (S123, (1, 0, 0, 0, 1), -1),
    (S123, (0, 0, 0, 1, 1), 1),
]


@pytest.mark.parametrize("S,m,value", WORKED)
def test_worked_integrals_closed(S, m, value):
    assert I.integrate(A, S, m) == value


@pytest.mark.parametrize("S,m,value", WORKED)
def test_worked_integrals_recursive(S, m, value):
    assert I.integrate_recursive(A, S, m) == value


def test_triangular_sets():
    assert as_sets(I.triangular_sets((3, 3, 3, 2)).sets) == {frozenset({3}), frozenset({3, 4})}
    assert I.triangular_sets((1, 1, 100)).sets == ()
    assert as_sets(I.triangular_sets((1, 1, 1)).sets) == {frozenset({3})}


def test_family_A():
    assert as_sets(I.family_A(EPS, S12, 1).sets) == {frozenset(s) for s in [(3, 4), (3, 5), (4, 5), (3, 4, 5)]}
    assert as_sets(I.family_A(EPS, S12, 0).sets) == {frozenset({5}), frozenset({4, 5})}
    assert as_sets(I.family_A(EPS, S123, 0).sets) == {frozenset({4, 5})}
    assert I.family_A((10, 10, 1, 1, 1), S12, 1).sets == ()


def test_family_Atilde():
    assert as_sets(I.family_Atilde(EPS, S123, 1).sets) == {frozenset({4, 5})}
    with pytest.raises(BadShape):
        I.family_Atilde(EPS, S12, 1)


def test_polygon_c1_power():
    assert I.polygon_c1_power((3, 3, 3, 2)) == 2
    assert I.polygon_c1_power((1, 1, 100)) == 0


@pytest.mark.parametrize(
    "alpha,S,m,pivot,sign",
    [
        (A, S12, (0, 2, 0, 0, 0), 2, 1),
        (A, S12, (0, 0, 2, 0, 0), 2, 1),
        ((1, 1, 1, 1, 10), mask(1, 2, 3, 4), (1, 0, 0, 0, 1), 2, -1),
    ],
)
def test_canonicalize(alpha, S, m, pivot, sign):
    _, S2, c = I.canonicalize(alpha, S, m)
    assert (c.pivot_power, c.tail, c.sign) == (pivot, 0, sign)
    assert S2 == (1 << c.s) - 1


def test_errors():
    with pytest.raises(DegreeMismatch):
        I.integrate(A, S12, (1, 0, 0, 0, 0))
    with pytest.raises(SetNotShort):
        I.integrate(A, mask(3, 4), (2, 0, 0, 0, 0))
    with pytest.raises(NonGenericWeights):
        I.integrate((1, 1, 1, 1), S12, (1, 0, 0, 0))


def test_pairing_matrix_diagonal():
    h = Fraction(1, 2)
    basis = [
        P.linear([h, 0, h, h, h]),
        P.linear([-h, 0, -h, 0, 0]),
        P.linear([-h, 0, 0, -h, 0]),
        P.linear([-h, 0, 0, 0, -h]),
    ]
    assert I.pairing_matrix(A, S12, basis) == [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]
    # relabelling the basis conjugates the matrix by the permutation
    perm = [2, 0, 3, 1]
    M = I.pairing_matrix(A, S12, [basis[i] for i in perm])
    assert M == [[[1, -1, -1, -1][i] if i == j else 0 for j in perm] for i in perm]


def test_pairing_rejects_fractions():
    with pytest.raises(NonIntegerPairing):
        I.pairing_matrix(A, S12, [P.linear([Fraction(1, 2), 0, 0, 0, 0])])


def test_type_one_matches_polygon_count():
    # on U_{1,2} of (1,1,3,3,3) the reduced weights are (2,3,3,3); reversed they give (3,3,3,2)
    assert I.integrate(A, S12, (2, 0, 0, 0, 0)) == (-1) ** (2 - 1) * I.polygon_c1_power((3, 3, 3, 2))
