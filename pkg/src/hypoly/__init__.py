"""Exact invariants of hyperpolygon spaces and their parabolic Higgs counterparts."""

from . import cohomology, combinatorics, core_geometry, intersection, isom_bridge, phb_moduli, polynomial, wallcross
from .combinatorics import (
    ChamberSignature,
    Perturbed,
    Wall,
    chamber_signature,
    epsilon_S,
    is_generic,
    is_short,
    maximal_short_sets,
    polygon_nonempty,
    short_sets,
)
from .core_geometry import core_components, core_intersection, fixed_components, poincare_X
from .errors import HypolyError
from .intersection import integrate, integrate_recursive, pairing_matrix, triangular_sets
from .phb_moduli import ParabolicWeights, critical_submanifolds
from .wallcross import crossing_report, identify_wall

__all__ = [
    "ChamberSignature",
    "HypolyError",
    "ParabolicWeights",
    "Perturbed",
    "Wall",
    "chamber_signature",
    "cohomology",
    "combinatorics",
    "core_components",
    "core_geometry",
    "core_intersection",
    "critical_submanifolds",
    "crossing_report",
    "epsilon_S",
    "fixed_components",
    "identify_wall",
    "integrate",
    "integrate_recursive",
    "intersection",
    "is_generic",
    "is_short",
    "isom_bridge",
    "maximal_short_sets",
    "pairing_matrix",
    "phb_moduli",
    "poincare_X",
    "polygon_nonempty",
    "polynomial",
    "short_sets",
    "triangular_sets",
    "wallcross",
]
