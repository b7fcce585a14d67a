from math import comb as binom

import pytest

from hypoly import cohomology as C
from hypoly import polynomial as P

from _util import mask

A = (1, 1, 3, 3, 3)


def _count(pres, family):
    return sum(1 for f, _ in pres.relations if f == family)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_ring_X_relation_counts(n):
    pres = C.ring_X(n)
    assert _count(pres, "square_difference") == binom(n, 2)
    assert _count(pres, "top_monomial") == binom(2 * n - 3, n - 2)
    assert pres.top_degree == n - 3
    assert all(P.degree(r) == n - 2 for f, r in pres.relations if f == "top_monomial")


def test_ring_X_dims():
    assert C.graded_dims(C.ring_X(4)) == (1, 4)
    assert C.graded_dims(C.ring_X(5)) == (1, 5, 11)


def test_ring_US_dims():
    assert C.graded_dims(C.ring_US(A, mask(1, 2))) == (1, 4, 1)
    assert C.graded_dims(C.ring_US(A, mask(1, 2, 3))) == (1, 1, 1)


@pytest.mark.parametrize("S", [mask(1, 2, 3), mask(1, 2, 4), mask(1, 2, 5)])
def test_maximal_short_gives_truncated_polynomial_ring(S):
    dims = C.graded_dims(C.ring_US(A, S))
    assert dims == (1,) * (len(A) - 2)


def test_ring_US_moves_one_into_S():
    pres = C.ring_US((3, 1, 1, 3, 3), mask(2, 3))
    assert pres.order[0] in (1, 2)
    assert C.graded_dims(pres) == (1, 4, 1)


@pytest.mark.parametrize("S", [mask(1, 2), mask(1, 3), mask(2, 5), mask(1, 2, 3), mask(1, 2, 5)])
def test_ideal_consistency(S):
    assert C.verify_ideal_consistency(A, S)


def test_b_to_c():
    n = 3
    b1 = P.var(n, 0)
    c = C.b_to_c(b1, n)
    # b_1 = -(c_1 + c_1)/2 = -c_1
    assert c == P.scale(P.var(n, 0), -1)
