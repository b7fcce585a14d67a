from fractions import Fraction

import numpy as np
import pytest

from hypoly import isom_bridge as B
from hypoly.errors import MalformedResidue, NotClosed, UnstablePoint, ZeroQ
from hypoly.phb_moduli import ParabolicWeights

from _util import mask

ALPHA = tuple(Fraction(a, 22) for a in (1, 1, 3, 3, 3))
BETA = ParabolicWeights.from_alpha(ALPHA)


@pytest.fixture
def rng():
    return np.random.default_rng(7)


def test_lift_vector_poles():
    a = 0.3
    assert np.allclose(B.lift_vector(np.array([0, 0, a])), [np.sqrt(2 * a), 0])
    assert np.allclose(B.lift_vector(np.array([0, 0, -a])), [0, np.sqrt(2 * a)])


def test_lift_vector_inverts_vector_of(rng):
    for _ in range(20):
        v = rng.normal(size=3)
        assert np.allclose(B.vector_of(B.lift_vector(v)), v)


def test_polygon_sample_on_moment_level(rng):
    pt = B.polygon_sample(ALPHA, rng)
    real, cplx = B.moment_residuals(pt, ALPHA)
    assert real < 1e-12 and cplx < 1e-12
    assert B.alpha_stable(pt, ALPHA).stable


def test_random_point_violates_moment(rng):
    pt = B.HyperpolygonPoint(rng.normal(size=(5, 2)) + 0j, rng.normal(size=(5, 2)) + 0j)
    assert max(B.moment_residuals(pt, ALPHA)) > 1e-3


def test_straight_sets():
    q = np.array([[1, 2], [2, 4], [1, 0], [0, 1]], dtype=complex)
    pt = B.HyperpolygonPoint(np.zeros_like(q), q)
    assert B.straight_sets(pt) == sorted([mask(1, 2), mask(3), mask(4)])
    same = B.HyperpolygonPoint(np.zeros((3, 2)), np.ones((3, 2)))
    assert B.straight_sets(same) == [mask(1, 2, 3)]
    with pytest.raises(ZeroQ):
        B.straight_sets(B.HyperpolygonPoint(np.zeros((3, 2)), np.zeros((3, 2))))


def test_all_parallel_is_unstable():
    pt = B.HyperpolygonPoint(np.zeros((5, 2)), np.ones((5, 2)))
    assert not B.alpha_stable(pt, ALPHA).stable


@pytest.mark.parametrize("S", [mask(1, 2), mask(1, 3), mask(1, 2, 3), mask(2, 5)])
def test_core_sample(rng, S):
    pt = B.core_sample(ALPHA, S, rng)
    assert max(B.moment_residuals(pt, ALPHA)) < 1e-12
    assert B.alpha_stable(pt, ALPHA).stable
    assert S in B.straight_sets(pt)


def test_round_trip_and_residues(rng):
    for S in (mask(1, 2), mask(1, 2, 4)):
        pt = B.core_sample(ALPHA, S, rng)
        phb = B.to_phb(pt, BETA)
        assert max(B.residue_invariants(phb).values()) < 1e-12
        back = B.from_phb(phb)
        ref = B.normalize_point(pt)
        assert np.abs(back.p - ref.p).max() < 1e-12 and np.abs(back.q - ref.q).max() < 1e-12
        assert B.phb_stable(phb, BETA).stable


def test_zero_p_gives_zero_residues(rng):
    phb = B.to_phb(B.polygon_sample(ALPHA, rng), BETA)
    assert np.abs(phb.residues).max() == 0
    assert np.abs(B.from_phb(phb).p).max() == 0
    assert B.phb_stable(phb, BETA).stable


def test_phb_all_flags_equal_is_unstable():
    flags = np.tile([1.0, 0.5], (5, 1)).astype(complex)
    phb = B.PHBPoint(flags, np.zeros((5, 2, 2), dtype=complex), BETA)
    assert not B.phb_stable(phb, BETA).stable


def test_to_phb_rejects_unstable():
    pt = B.HyperpolygonPoint(np.zeros((5, 2)), np.ones((5, 2)))
    with pytest.raises(Exception) as info:
        B.to_phb(pt, BETA)
    assert info.type.__name__ in ("UnstablePoint", "MomentViolation")


def test_from_phb_rejects_bad_residue():
    flags = np.array([[1, 0]] * 4, dtype=complex)
    res = np.zeros((4, 2, 2), dtype=complex)
    res[0] = [[1, 0], [0, 1]]
    with pytest.raises(MalformedResidue):
        B.from_phb(B.PHBPoint(flags, res))


def test_gauge_invariance(rng):
    pt = B.core_sample(ALPHA, mask(1, 2), rng)
    g = B.random_su2(rng)
    moved = pt.act(g, rng.uniform(0, 2 * np.pi, size=5))
    assert max(B.moment_residuals(moved, ALPHA)) < 1e-12
    assert B.straight_sets(moved) == B.straight_sets(pt)


def test_open_polygon_rejected():
    with pytest.raises(NotClosed):
        B.lift_polygon([[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def test_core_sample_with_one_point_outside(rng):
    alpha = tuple(Fraction(a, 20) for a in (1, 1, 1, 5))
    pt = B.core_sample(alpha, mask(1, 2, 3), rng)
    assert max(B.moment_residuals(pt, alpha)) < 1e-12
    assert B.alpha_stable(pt, alpha).stable
