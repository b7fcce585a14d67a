"""Exact arithmetic on weight vectors.

Index sets are plain ``int`` bitmasks over ``{1..n}`` with index 1 stored in
the lowest bit.  Weight vectors are tuples whose entries are either
``fractions.Fraction`` or :class:`Perturbed` values.  Every list of sets
returned here is sorted by ascending bitmask.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Iterable, Sequence

from .errors import NonGenericWeights, ParseError

_RATIONAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*[+-]?\d+)?\s*$")


@total_ordering
class Perturbed:
    """A value ``base + sum_k eps[k-1] * e_k`` with ``1 >> e_1 >> e_2 >> ...``.

    Comparison is lexicographic on ``(base, eps)``.  A value whose
    infinitesimal part vanishes compares and hashes like its base.
    """

    __slots__ = ("base", "eps")

    def __init__(self, base, eps: Iterable = ()):
        self.base = Fraction(base)
        coeffs = [Fraction(c) for c in eps]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.eps = tuple(coeffs)

    @classmethod
    def infinitesimal(cls, level: int, coeff=1) -> "Perturbed":
        """The value ``coeff * e_level`` (levels start at 1)."""
        if level < 1:
            raise ValueError("levels start at 1")
        return cls(0, [0] * (level - 1) + [coeff])

    @property
    def levels(self) -> int:
        return len(self.eps)

    def _pair(self, other):
        if isinstance(other, Perturbed):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Perturbed(other)
        return None

    def _key(self, width: int):
        return (self.base,) + self.eps + (Fraction(0),) * (width - len(self.eps))

    def __add__(self, other):
        o = self._pair(other)
        if o is None:
            return NotImplemented
        w = max(len(self.eps), len(o.eps))
        a, b = self._key(w), o._key(w)
        return Perturbed(a[0] + b[0], [x + y for x, y in zip(a[1:], b[1:])])

    __radd__ = __add__

    def __neg__(self):
        return Perturbed(-self.base, [-c for c in self.eps])

    def __sub__(self, other):
        o = self._pair(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._pair(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Perturbed(self.base * other, [c * other for c in self.eps])
        return NotImplemented

    __rmul__ = __mul__

    def sign(self) -> int:
        for c in self._key(0):
            if c:
                return 1 if c > 0 else -1
        return 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __eq__(self, other):
        o = self._pair(other)
        if o is None:
            return NotImplemented
        w = max(len(self.eps), len(o.eps))
        return self._key(w) == o._key(w)

    def __lt__(self, other):
        o = self._pair(other)
        if o is None:
            return NotImplemented
        w = max(len(self.eps), len(o.eps))
        return self._key(w) < o._key(w)

    def __hash__(self):
        if not self.eps:
            return hash(self.base)
        return hash((self.base, self.eps))

    def __repr__(self):
        if not self.eps:
            return f"Perturbed({self.base})"
        return f"Perturbed({self.base}, {list(map(str, self.eps))})"

    def __str__(self):
        parts = [str(self.base)]
        for k, c in enumerate(self.eps, start=1):
            if c:
                parts.append(f"{'+' if c > 0 else '-'}{abs(c) if abs(c) != 1 else ''}e{k}")
        return "".join(parts)


def sign(x) -> int:
    if isinstance(x, Perturbed):
        return x.sign()
    return (x > 0) - (x < 0)


def parse_rational(value) -> Fraction:
    """Parse ``"a/b"``, ``"a"``, an int or a Fraction.  Floats are refused."""
    if isinstance(value, bool) or isinstance(value, float):
        raise ParseError(f"refusing inexact weight {value!r}; pass a string like '3/2'")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL.match(value):
        try:
            return Fraction(value.replace(" ", ""))
        except ZeroDivisionError:
            raise ParseError(f"zero denominator in {value!r}") from None
    raise ParseError(f"cannot parse {value!r} as an exact rational")


def as_weights(values: Iterable, min_n: int = 3) -> tuple:
    """Validate a weight vector: at least ``min_n`` strictly positive exact entries."""
    out = []
    for v in values:
        out.append(v if isinstance(v, Perturbed) else parse_rational(v))
    if len(out) < min_n:
        raise ParseError(f"need at least {min_n} weights, got {len(out)}")
    for v in out:
        if sign(v) <= 0:
            raise ParseError(f"weights must be positive, got {v}")
    return tuple(out)


def max_level(alpha: Sequence) -> int:
    return max((a.levels for a in alpha if isinstance(a, Perturbed)), default=0)


def perturb(alpha: Sequence, index: int, level: int | None = None) -> tuple:
    """Add a fresh infinitesimal to coordinate ``index`` (1-based)."""
    if level is None:
        level = max_level(alpha) + 1
    out = list(alpha)
    out[index - 1] = out[index - 1] + Perturbed.infinitesimal(level)
    return tuple(out)


# index sets


def from_members(members: Iterable[int]) -> int:
    mask = 0
    for i in members:
        if i < 1:
            raise ParseError(f"indices are 1-based, got {i}")
        mask |= 1 << (i - 1)
    return mask


def members(mask: int) -> list[int]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def card(mask: int) -> int:
    return mask.bit_count()


def full_mask(n: int) -> int:
    return (1 << n) - 1


def complement(mask: int, n: int) -> int:
    return full_mask(n) & ~mask


def canonical(mask: int, n: int) -> int:
    """The member of ``{S, S^c}`` containing index 1."""
    return mask if mask & 1 else complement(mask, n)


def check_subset(mask: int, n: int) -> None:
    if mask < 0 or mask >> n:
        raise ParseError(f"index set {members(mask)} is not inside 1..{n}")


# weights


def subset_sums(alpha: Sequence) -> list:
    """``sums[S] = sum_{i in S} alpha_i`` for every bitmask ``S``."""
    sums = [0] * (1 << len(alpha))
    for mask in range(1, len(sums)):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + alpha[low.bit_length() - 1]
    return sums


def epsilon_S(alpha: Sequence, S: int):
    check_subset(S, len(alpha))
    inside = sum((a for i, a in enumerate(alpha) if S >> i & 1), Fraction(0))
    outside = sum((a for i, a in enumerate(alpha) if not S >> i & 1), Fraction(0))
    return inside - outside


@lru_cache(maxsize=4096)
def _epsilons_cached(alpha: tuple) -> tuple:
    sums = subset_sums(alpha)
    total = sums[-1]
    return tuple(2 * s - total for s in sums)


def _epsilons(alpha: Sequence) -> tuple:
    return _epsilons_cached(tuple(alpha))


def is_generic(alpha: Sequence) -> bool:
    return all(sign(e) != 0 for e in _epsilons(alpha))


def require_generic(alpha: Sequence) -> list:
    eps = _epsilons(alpha)
    for mask, e in enumerate(eps):
        if sign(e) == 0:
            raise NonGenericWeights(
                f"weights {[str(a) for a in alpha]} lie on the wall of {members(mask)}"
            )
    return eps


def is_short(alpha: Sequence, S: int) -> bool:
    return sign(epsilon_S(alpha, S)) < 0


def short_sets(alpha: Sequence, min_card: int = 0) -> list[int]:
    eps = require_generic(alpha)
    return [m for m, e in enumerate(eps) if sign(e) < 0 and card(m) >= min_card]


def maximal_short_sets(alpha: Sequence) -> list[int]:
    eps = require_generic(alpha)
    n = len(alpha)
    out = []
    for m, e in enumerate(eps):
        if card(m) < 2 or sign(e) > 0:
            continue
        # short sets are closed under taking subsets, so one step up suffices
        if all(sign(eps[m | 1 << i]) > 0 for i in range(n) if not m >> i & 1):
            out.append(m)
    return out


@dataclass(frozen=True)
class ChamberSignature:
    n: int
    signs: tuple  # ((canonical mask, +-1), ...) ascending by mask

    def as_dict(self) -> dict:
        return dict(self.signs)

    def differing(self, other: "ChamberSignature") -> list[int]:
        if self.n != other.n:
            raise ParseError("signatures of different lengths")
        b = other.as_dict()
        return [m for m, s in self.signs if b[m] != s]


def chamber_signature(alpha: Sequence) -> ChamberSignature:
    eps = require_generic(alpha)
    n = len(alpha)
    full = full_mask(n)
    return ChamberSignature(n, tuple((m, sign(eps[m])) for m in range(1, full, 2)))


def polygon_nonempty(alpha: Sequence) -> bool:
    require_generic(alpha)
    total = sum(alpha, Fraction(0))
    return all(sign(total - 2 * a) > 0 for a in alpha)


@dataclass(frozen=True)
class Wall:
    n: int
    discrete_data: int

    def __post_init__(self):
        d = self.discrete_data
        if not d & 1 or d == full_mask(self.n) or d <= 0:
            raise ParseError("wall data must be a proper subset containing 1")

    @classmethod
    def of(cls, S: int, n: int) -> "Wall":
        return cls(n, canonical(S, n))

    @property
    def is_vanishing(self) -> bool:
        """Crossing it empties or creates the polygon space."""
        return card(self.discrete_data) in (1, self.n - 1)

    def contains(self, alpha: Sequence) -> bool:
        return sign(epsilon_S(alpha, self.discrete_data)) == 0
