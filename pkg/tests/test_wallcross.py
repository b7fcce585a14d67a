from fractions import Fraction

import pytest

from hypoly import wallcross as W
from hypoly.combinatorics import short_sets
from hypoly.errors import NonGenericWeights, NotAdjacent, SameChamber

from _util import as_sets, mask

MINUS = (2, 1, 5, 1, 2)
PLUS = (3, Fraction(3, 2), 5, 1, 2)


def test_identify_wall():
    assert W.identify_wall(MINUS, PLUS).discrete_data == mask(1, 2, 5)
    with pytest.raises(SameChamber):
        W.identify_wall(MINUS, MINUS)
    with pytest.raises((NotAdjacent, NonGenericWeights)):
        W.identify_wall(MINUS, (3, 1, 5, 1, 2))
    with pytest.raises(NotAdjacent):
        W.identify_wall(MINUS, (1, 10, 1, 1, 1))


def test_classify():
    S = mask(1, 2, 5)
    assert W.classify(mask(1, 2), S) == W.INSIDE_S
    assert W.classify(mask(1, 4), S) == W.UNCHANGED
    assert W.classify(mask(4, 5), S) == W.UNCHANGED
    assert W.classify(mask(3, 4), S) == W.IN_SC
    assert W.classify(S, S) == W.REPLACED


def test_crossing_report():
    rep = W.crossing_report(MINUS, PLUS)
    assert rep.S_minus_short == mask(1, 2, 5)
    assert rep.removed == mask(1, 2, 5) and rep.added == mask(3, 4)
    after = (set(short_sets(MINUS, 2)) - {rep.removed}) | {rep.added}
    assert after == set(short_sets(PLUS, 2))
    changes = dict(rep.component_changes)
    assert {B for B, v in changes.items() if v == W.INSIDE_S} == {mask(1, 2), mask(1, 5), mask(2, 5)}
    assert {B for B, v in changes.items() if v == W.UNCHANGED} == {
        mask(1, 4), mask(2, 4), mask(4, 5), mask(1, 2, 4), mask(1, 4, 5), mask(2, 4, 5)
    }
    assert rep.polygon_change["kind"] == "flip"


def test_crossing_is_orientation_aware():
    rep = W.crossing_report(PLUS, MINUS)
    assert rep.S_minus_short == mask(3, 4)
    assert rep.added == mask(1, 2, 5)


def test_vanishing_wall():
    rep = W.crossing_report((1, 2, 2, 4), (1, 2, 2, 6))
    assert rep.wall.is_vanishing
    assert rep.polygon_change["kind"] == "vanishes"
    assert rep.added is None or rep.removed is None
