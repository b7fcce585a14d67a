"""Fixed loci, core components and Poincare polynomials of hyperpolygon spaces."""

from __future__ import annotations

from dataclasses import dataclass

from .cohomology import graded_dims_X
from .combinatorics import (
    as_weights,
    card,
    is_short,
    maximal_short_sets,
    members,
    polygon_nonempty,
    require_generic,
    short_sets,
)
from .errors import BadShape, MorseInconsistency, SetNotShort

POLYGON_SPACE = "PolygonSpace"
XS = "XS"


@dataclass(frozen=True)
class FixedComponent:
    kind: str
    S: int | None
    diffeo_type: str
    morse_index: int

    @property
    def projective_dim(self) -> int | None:
        return None if self.S is None else card(self.S) - 2


@dataclass(frozen=True)
class CoreComponent:
    S: int
    complex_dim: int
    is_projective_space: bool


@dataclass(frozen=True)
class CoreIntersectionClass:
    variant: str
    note: str


def fixed_components(alpha) -> list[FixedComponent]:
    alpha = as_weights(alpha)
    n = len(alpha)
    out = []
    if polygon_nonempty(alpha):
        out.append(FixedComponent(POLYGON_SPACE, None, "polygon space", 0))
    for S in short_sets(alpha, 2):
        out.append(FixedComponent(XS, S, f"CP^{card(S) - 2}", 2 * (n - 1 - card(S))))
    return out


def core_components(alpha) -> list[CoreComponent]:
    alpha = as_weights(alpha)
    n = len(alpha)
    maximal = set(maximal_short_sets(alpha))
    # maximal short sets give CP^{n-3}; for n = 4 every component is a sphere
    return [CoreComponent(S, n - 3, n == 4 or S in maximal) for S in short_sets(alpha, 2)]


def core_intersection(alpha, S: int, T: int) -> CoreIntersectionClass:
    alpha = as_weights(alpha)
    require_generic(alpha)
    for X in (S, T):
        if card(X) < 2 or not is_short(alpha, X):
            raise SetNotShort(f"{members(X)} is not a short set of size >= 2")
    if S == T:
        raise BadShape("need two different core components")
    small, big = (S, T) if card(S) < card(T) else (T, S)
    if small & big == small:
        d = card(small) - 2
        return CoreIntersectionClass(
            "FlagIntersection",
            f"U_{members(small)} meets U_{members(big)} inside U_{members(big)}; "
            f"U_{members(small)} cut with the fixed locus X_{members(big)} is CP^{d}",
        )
    if not S & T:
        return CoreIntersectionClass(
            "PolygonIntersection", f"intersection is M_S cut with M_T inside the polygon space"
        )
    if is_short(alpha, S | T):
        return CoreIntersectionClass("InsideUnion", f"intersection lies inside U_{members(S | T)}")
    return CoreIntersectionClass("Empty", f"union {members(S | T)} is long")


def poincare_X(n: int) -> tuple:
    """Betti numbers b_0, b_2, ..., b_{2(n-3)} of any hyperpolygon space with n weights."""
    if n < 4:
        raise BadShape("need n >= 4")
    return graded_dims_X(n)


def morse_sum(alpha) -> tuple:
    """Contribution of the non-minimal fixed loci, as coefficients of t^{2d}."""
    alpha = as_weights(alpha)
    n = len(alpha)
    coeffs = [0] * (n - 2)
    for S in short_sets(alpha, 2):
        base = n - 1 - card(S)
        for d in range(card(S) - 1):
            coeffs[base + d] += 1
    return tuple(coeffs)


def derived_polygon_poincare(alpha) -> tuple:
    """Betti numbers of the polygon space read off from the perfect Morse decomposition."""
    alpha = as_weights(alpha)
    n = len(alpha)
    px = poincare_X(n)
    diff = tuple(a - b for a, b in zip(px, morse_sum(alpha)))
    if not polygon_nonempty(alpha):
        if any(diff):
            raise MorseInconsistency(f"polygon space is empty but leftover is {diff}")
        return diff
    if min(diff) < 0 or diff != diff[::-1] or diff[0] != 1:
        raise MorseInconsistency(f"leftover {diff} is not a Poincare polynomial")
    return diff
