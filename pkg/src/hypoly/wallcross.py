"""Bookkeeping for crossing a single wall between adjacent chambers."""

from __future__ import annotations

from dataclasses import dataclass

from .combinatorics import (
    Wall,
    as_weights,
    card,
    chamber_signature,
    complement,
    is_short,
    members,
    polygon_nonempty,
    short_sets,
)
from .errors import NotAdjacent, SameChamber

REPLACED = "Replaced"
UNCHANGED = "Unchanged"
INSIDE_S = "BlowUpDown_insideS"
IN_SC = "BlowUpDown_inSc"


@dataclass(frozen=True)
class WallCrossReport:
    wall: Wall
    S_minus_short: int
    removed: int | None
    added: int | None
    component_changes: tuple  # ((B, variant), ...)
    polygon_change: dict


def identify_wall(alpha_minus, alpha_plus) -> Wall:
    a = chamber_signature(as_weights(alpha_minus))
    b = chamber_signature(as_weights(alpha_plus))
    diff = a.differing(b)
    if not diff:
        raise SameChamber("both weight vectors lie in the same chamber")
    if len(diff) > 1:
        raise NotAdjacent(f"{len(diff)} walls separate the chambers: {[members(m) for m in diff]}")
    return Wall(a.n, diff[0])


def classify(B: int, S: int) -> str:
    if B == S:
        return REPLACED
    if B & S == B:
        return INSIDE_S
    if not B & S:
        return IN_SC
    return UNCHANGED


def crossing_report(alpha_minus, alpha_plus) -> WallCrossReport:
    am, ap = as_weights(alpha_minus), as_weights(alpha_plus)
    wall = identify_wall(am, ap)
    n = wall.n
    S = wall.discrete_data
    if not is_short(am, S):
        S = complement(S, n)
    Sc = complement(S, n)
    changes = tuple((B, classify(B, S)) for B in short_sets(am, 2))
    before, after = polygon_nonempty(am), polygon_nonempty(ap)
    if before and after:
        polygon = {
            "kind": "flip",
            "blown_up": {"set": members(S), "projective_dim": card(Sc) - 2},
            "blown_down": {"set": members(Sc), "projective_dim": card(S) - 2},
        }
    elif before:
        polygon = {"kind": "vanishes", "note": "vanishing wall: the polygon space becomes empty"}
    elif after:
        polygon = {"kind": "appears", "note": "vanishing wall: the polygon space appears"}
    else:
        polygon = {"kind": "empty", "note": "the polygon space is empty on both sides"}
    return WallCrossReport(
        wall,
        S,
        S if card(S) >= 2 else None,
        Sc if card(Sc) >= 2 else None,
        changes,
        polygon,
    )
