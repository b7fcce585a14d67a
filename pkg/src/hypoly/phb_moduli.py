"""Critical submanifolds of rank 2 parabolic Higgs moduli under the circle action.

A critical submanifold is labelled by an integer ``d0`` (degree of the
destabilising line subbundle) and the index set ``S`` of points where that
subbundle meets the flag.  Everything here is exact; the geometry of the
components is only reported as text.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .combinatorics import card, epsilon_S, full_mask, members, parse_rational
from .errors import InvariantViolation, NonGenericWeights, ParseError, UnsupportedGenus


@dataclass(frozen=True)
class ParabolicWeights:
    beta1: tuple
    beta2: tuple

    def __post_init__(self):
        b1 = tuple(parse_rational(x) for x in self.beta1)
        b2 = tuple(parse_rational(x) for x in self.beta2)
        if len(b1) != len(b2) or not b1:
            raise ParseError("beta1 and beta2 must be nonempty and of equal length")
        for x, y in zip(b1, b2):
            if not 0 <= x < y < 1:
                raise ParseError(f"need 0 <= beta1 < beta2 < 1 at every point, got {x}, {y}")
        object.__setattr__(self, "beta1", b1)
        object.__setattr__(self, "beta2", b2)

    @property
    def n(self) -> int:
        return len(self.beta1)

    @property
    def alpha(self) -> tuple:
        return tuple(y - x for x, y in zip(self.beta1, self.beta2))

    @classmethod
    def from_alpha(cls, alpha: Sequence, beta1: Sequence | None = None) -> "ParabolicWeights":
        alpha = [parse_rational(a) for a in alpha]
        b1 = [Fraction(0)] * len(alpha) if beta1 is None else [parse_rational(b) for b in beta1]
        return cls(tuple(b1), tuple(x + a for x, a in zip(b1, alpha)))


@dataclass(frozen=True)
class CriticalSubmanifold:
    d0: int
    S: int
    g: int
    d: int
    m: int
    morse_index: int
    description: str


def morse_index_phb(g: int, d: int, d0: int, S: int, n: int) -> int:
    return 2 * (g - 1 + n) + 4 * d0 - 2 * d - 2 * card(S)


def _description(g: int, m: int) -> str:
    if g == 0:
        return f"CP^{m}"
    return f"2^{2 * g}-cover of S^{m} Sigma"


def critical_submanifolds(g: int, d: int, beta: ParabolicWeights) -> list[CriticalSubmanifold]:
    """All (d0, S) with eps_S(alpha) + d < 2 d0 <= d + 2(g-1) + |S|, ordered by (d0, S)."""
    if g < 0:
        raise ParseError("genus must be nonnegative")
    alpha = beta.alpha
    n = beta.n
    out = []
    for S in range(full_mask(n) + 1):
        low = epsilon_S(alpha, S) + d
        if low.denominator == 1 and low.numerator % 2 == 0:
            raise NonGenericWeights(
                f"weights lie on the hyperplane of d0={low.numerator // 2}, S={members(S)}"
            )
        high = d + 2 * (g - 1) + card(S)
        for d0 in range(math.floor(low / 2) + 1, math.floor(Fraction(high, 2)) + 1):
            m = d - 2 * d0 + 2 * (g - 1) + card(S)
            out.append(
                CriticalSubmanifold(d0, S, g, d, m, morse_index_phb(g, d, d0, S, n), _description(g, m))
            )
    out.sort(key=lambda c: (c.d0, c.S))
    for c in out:
        if c.m < 0 or c.morse_index < 0 or c.morse_index % 2:
            raise InvariantViolation(f"bad critical data {c}")
    return out


def restrict_H(components: Sequence[CriticalSubmanifold]) -> list[CriticalSubmanifold]:
    """Keep the components inside the holomorphically trivial locus (d = 0, d0 = 0)."""
    return [c for c in components if c.d == 0 and c.d0 == 0]


def vanishing_walls(g: int, d: int, n: int) -> list[tuple]:
    """Pairs (d0, S) whose hyperplane empties the minimal stratum, ordered by (d0, S)."""
    if g != 0:
        raise UnsupportedGenus("vanishing walls are only classified in genus 0")
    out = []
    for S in range(full_mask(n) + 1):
        v = d + 1 - n + card(S)
        if v % 2 == 0:
            out.append((v // 2, S))
    out.sort()
    return out


def zero_index_components(g: int, d: int, beta: ParabolicWeights) -> list[CriticalSubmanifold]:
    zeros = [c for c in critical_submanifolds(g, d, beta) if c.morse_index == 0]
    if g == 0 and len(zeros) > 1:
        raise InvariantViolation(f"{len(zeros)} index-0 critical submanifolds in genus 0")
    if g >= 1 and zeros:
        raise InvariantViolation("index-0 critical submanifold in positive genus")
    return zeros
