"""Intersection numbers of Chern monomials on core components.

``integrate`` reduces a monomial with the three restriction identities on
U_S (indices of S all give the same class; squares of indices outside S equal
the pivot square; when S misses a single index j, c_j is minus the pivot) and
then evaluates one of the closed triangular-set formulas.
``integrate_recursive`` is an independent evaluator that only uses the
two-term recursion merging the last two weights, bottoming out in three-gon
counts and two tiny closed cases.

Internally a weight is a fixed-width tuple of integers
``(base, e_1, e_2, ...)``: the whole vector is scaled by a common denominator
(every test here is a homogeneous linear sign test, so scaling is harmless)
and Python's tuple ordering is exactly the lexicographic order of the
infinitesimal tower.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from operator import add, sub
from typing import Sequence

from . import polynomial as P
from .combinatorics import Perturbed, as_weights, card, check_subset, members, require_generic
from .errors import (
    BadShape,
    DegreeMismatch,
    NonIntegerPairing,
    ParseError,
    RecursionShape,
    SetNotShort,
)


@dataclass(frozen=True)
class CanonicalIntegrand:
    """``sign * c_1^pivot_power * prod_{j in tail} c_j`` on U_{1..s}.

    ``sigma[k]`` is the old 0-based index now sitting in slot ``k``.
    """

    s: int
    pivot_power: int
    tail: int
    sign: int
    sigma: tuple
    S_sorted: bool = True

    @property
    def is_type_one(self) -> bool:
        return self.tail == 0

    def exponents(self, n: int) -> tuple:
        e = [0] * n
        e[0] = self.pivot_power
        for j in members(self.tail):
            e[j - 1] = 1
        return tuple(e)


@dataclass(frozen=True)
class TriangularFamily:
    m: int
    sets: tuple


@dataclass(frozen=True)
class AFamily:
    variant: str  # "A" or "Atilde"
    n: int
    l: int
    sets: tuple


# integer tuple arithmetic


def _vectors(alpha: Sequence, spare: int) -> tuple:
    """Scale to integer tuples with ``spare`` unused infinitesimal slots."""
    vals = [a if isinstance(a, Perturbed) else Perturbed(a) for a in alpha]
    levels = max((v.levels for v in vals), default=0)
    den = 1
    for v in vals:
        den = lcm(den, v.base.denominator, *(c.denominator for c in v.eps))
    width = 1 + levels + spare
    out = []
    for v in vals:
        row = [int(v.base * den)] + [int(c * den) for c in v.eps]
        out.append(tuple(row + [0] * (width - len(row))))
    return tuple(out)


def _zero(w: int) -> tuple:
    return (0,) * w


def _vsum(vs, w: int) -> tuple:
    out = _zero(w)
    for v in vs:
        out = tuple(map(add, out, v))
    return out


def _vsign(v: tuple) -> int:
    for x in v:
        if x:
            return 1 if x > 0 else -1
    return 0


def _used(alpha: tuple) -> int:
    """Index of the last tower slot in use."""
    last = 0
    for v in alpha:
        for k in range(len(v) - 1, last, -1):
            if v[k]:
                last = k
                break
    return last


def _bump(v: tuple, slot: int) -> tuple:
    if slot >= len(v):
        raise RecursionShape("ran out of infinitesimal slots")
    return v[:slot] + (v[slot] + 1,) + v[slot + 1 :]


def _short(alpha: tuple, S: int) -> bool:
    inside = _vsum((a for i, a in enumerate(alpha) if S >> i & 1), len(alpha[0]))
    outside = _vsum((a for i, a in enumerate(alpha) if not S >> i & 1), len(alpha[0]))
    return inside < outside


def _maximal(alpha: tuple, S: int) -> bool:
    return all(not _short(alpha, S | 1 << j) for j in range(len(alpha)) if not S >> j & 1)


def _ell(alpha: Sequence, J: int, I: int) -> tuple:
    """Sum over J minus sum over I \\ J (0-based bits)."""
    out = _zero(len(alpha[0]))
    for i, a in enumerate(alpha):
        if I >> i & 1:
            out = tuple(map(add if J >> i & 1 else sub, out, a))
    return out


def _subsets(mask: int) -> list[int]:
    sub_ = mask
    out = []
    while True:
        out.append(sub_)
        if sub_ == 0:
            break
        sub_ = (sub_ - 1) & mask
    return sorted(out)


# validation


def _check_monomial(m: Sequence[int], n: int) -> tuple:
    m = tuple(int(x) for x in m)
    if len(m) != n:
        raise ParseError(f"monomial has {len(m)} exponents, weights have {n}")
    if min(m) < 0:
        raise ParseError("exponents must be nonnegative")
    if sum(m) != n - 3:
        raise DegreeMismatch(f"monomial degree {sum(m)} but top degree is {n - 3}")
    return m


def _check_core(alpha: tuple, S: int) -> None:
    check_subset(S, len(alpha))
    if card(S) < 2 or not _short(alpha, S):
        raise SetNotShort(f"{members(S)} is not a short set of size >= 2")


@lru_cache(maxsize=4096)
def _prepared(alpha: tuple) -> tuple:
    require_generic(alpha)
    return _vectors(alpha, 3 * len(alpha))


def _prepare(alpha, S: int) -> tuple:
    v = _prepared(as_weights(alpha))
    _check_core(v, S)
    return v


# canonical form


def _canonicalize(alpha: tuple, S: int, m: tuple):
    n = len(alpha)
    pivot = (S & -S).bit_length() - 1
    K = 0
    odd = []
    for j in range(n):
        if S >> j & 1:
            K += m[j]
        else:
            K += 2 * (m[j] // 2)
            if m[j] % 2:
                odd.append(j)
    sgn = 1
    if card(S) == n - 1:
        # the single outside class is minus the pivot class
        for _ in odd:
            sgn = -sgn
            K += 1
        odd = []
    rest = [i for i in range(n) if S >> i & 1 and i != pivot]
    free = [j for j in range(n) if not S >> j & 1 and j not in odd]
    sigma = [pivot] + rest + free + odd
    alpha2 = tuple(alpha[o] for o in sigma)
    s = card(S)
    tail = ((1 << n) - 1) & ~((1 << (n - len(odd))) - 1)
    return alpha2, (1 << s) - 1, CanonicalIntegrand(s, K, tail, sgn, tuple(sigma))


def canonicalize(alpha, S: int, m: Sequence[int]):
    """Return ``(permuted alpha, {1..|S|}, CanonicalIntegrand)``."""
    alpha = as_weights(alpha)
    m = _check_monomial(m, len(alpha))
    _check_core(_vectors(alpha, 0), S)
    a2, S2, c = _canonicalize(tuple(alpha), S, m)
    return a2, S2, c


# families


def _triangular(at: Sequence) -> list[int]:
    m = len(at)
    I = ((1 << m) - 1) & ~3
    a1, a2 = at[0], at[1]
    out = []
    for J in _subsets(I):
        ell = _ell(at, J, I)
        if (
            _vsign(ell) > 0
            and a1 <= tuple(map(add, a2, ell))
            and a2 <= tuple(map(add, a1, ell))
            and ell <= tuple(map(add, a1, a2))
        ):
            out.append(J)
    return out


def triangular_sets(alpha_prime) -> TriangularFamily:
    """All J inside {3..m} with l_J > 0 passing the three (non-strict) triangle tests."""
    at = as_weights(alpha_prime)
    return TriangularFamily(len(at), tuple(_triangular(_vectors(at, 0))))


def _prefix_size(S: int) -> int:
    s = card(S)
    if S != (1 << s) - 1:
        raise BadShape(f"expected S = {{1..{s}}}, got {members(S)}")
    return s


def _family_A(alpha: tuple, s: int, l: int) -> list[int]:
    n = len(alpha)
    w = len(alpha[0])
    I = ((1 << n) - 1) & ~((1 << (n - l - 2)) - 1)
    sigma_S = _vsum(alpha[:s], w)
    middle = _vsum(alpha[s : n - l - 2], w)
    out = []
    for J in _subsets(I):
        ell = _ell(alpha, J, I)
        if _vsign(ell) > 0 and sigma_S < tuple(map(add, ell, middle)):
            out.append(J)
    return out


def _family_Atilde(alpha: tuple, s: int, l: int) -> list[int]:
    n = len(alpha)
    I = ((1 << n) - 1) & ~((1 << (n - l - 1)) - 1)
    sigma_S = _vsum(alpha[:s], len(alpha[0]))
    return [J for J in _subsets(I) if _ell(alpha, J, I) > sigma_S]


def _check_l(n: int, l: int) -> None:
    if l < 0 or n - l - 1 < 1:
        raise BadShape(f"l={l} out of range for n={n}")


def family_A(alpha, S: int, l: int) -> AFamily:
    alpha = as_weights(alpha)
    n = len(alpha)
    _check_l(n, l)
    s = _prefix_size(S)
    if s > n - l - 2:
        raise BadShape(f"|S|={s} exceeds n-l-2={n - l - 2}")
    return AFamily("A", n, l, tuple(_family_A(_vectors(alpha, 0), s, l)))


def family_Atilde(alpha, S: int, l: int) -> AFamily:
    alpha = as_weights(alpha)
    n = len(alpha)
    _check_l(n, l)
    s = _prefix_size(S)
    if s != n - l - 1:
        raise BadShape(f"|S|={s} must equal n-l-1={n - l - 1}")
    return AFamily("Atilde", n, l, tuple(_family_Atilde(_vectors(alpha, 0), s, l)))


def _signed_count(at: tuple, flip: int, offset: int) -> int:
    """Sum over triangular J of (-1)^(flip*[m in J] + |J| + offset)."""
    top = 1 << (len(at) - 1)
    total = 0
    for J in _triangular(at):
        e = flip * bool(J & top) + card(J) + offset
        total += -1 if e % 2 else 1
    return total


def polygon_c1_power(alpha_S) -> int:
    """Signed triangular-set count giving the top power of the first class on M(alpha_S).

    Multiplying by ``(-1)^(|S|-1)`` gives the type I value on U_S.
    """
    at = as_weights(alpha_S)
    require_generic(at)
    return _signed_count(_vectors(at, 0), len(at) - 1, 1)


# closed formulas


def _tower(alpha: tuple) -> tuple:
    """Fresh infinitesimals on every coordinate, the last one getting the largest."""
    base = _used(alpha) + 1
    n = len(alpha)
    return tuple(_bump(a, base + n - 1 - i) for i, a in enumerate(alpha))


def _closed(alpha: tuple, s: int, K: int, tail: int) -> int:
    n = len(alpha)
    w = len(alpha[0])
    t = card(tail)
    if K + t != n - 3:
        raise DegreeMismatch(f"pivot power {K} and tail {t} do not add to {n - 3}")
    if t == 0:
        if s == n - 1:
            return (-1) ** (n - 1)
        if s == n - 2:
            return (-1) ** (n - 1) if _maximal(alpha, (1 << s) - 1) else 0
        a = _tower(alpha)
        at = (a[n - 1],) + a[s : n - 1] + (_vsum(a[:s], w),)
        return _signed_count(at, n - s, s)
    l = t - 1
    if tail != ((1 << n) - 1) & ~((1 << (n - t)) - 1):
        raise BadShape("tail must occupy the last slots")
    if K != n - l - 4:
        raise DegreeMismatch(f"pivot power {K} != n-l-4 = {n - l - 4}")
    if s > n - l - 1:
        raise BadShape("tail overlaps S")
    a = _tower(alpha)
    if s == n - l - 1:
        return (-1) ** (n - l) * len(_family_Atilde(a, s, l))
    fam = _family_A(a, s, l)
    first = 1 << (n - l - 2)  # bit of index n-l-1
    if s == n - l - 2:
        return sum(-1 if (bool(J & first) + s + 1) % 2 else 1 for J in fam)
    I = ((1 << n) - 1) & ~(first - 1)
    sigma_S = _vsum(a[:s], w)
    total = 0
    for J in fam:
        at = (_ell(a, J, I),) + a[s : n - l - 2] + (sigma_S,)
        total += _signed_count(at, len(at) + 1, bool(J & first) + s + 1)
    return total


def integral_closed(alpha, S: int, integrand: CanonicalIntegrand) -> int:
    """Closed-formula value for data already in canonical position."""
    if not integrand.S_sorted or _prefix_size(S) != integrand.s:
        raise BadShape("S must be {1..|S|} matching the integrand")
    if integrand.tail & S:
        raise BadShape("tail meets S")
    v = _prepare(alpha, S)
    return integrand.sign * _closed(v, integrand.s, integrand.pivot_power, integrand.tail)


@lru_cache(maxsize=500_000)
def _integrate_cached(alpha: tuple, S: int, m: tuple) -> int:
    a2, _, c = _canonicalize(alpha, S, m)
    return c.sign * _closed(a2, c.s, c.pivot_power, c.tail)


def integrate(alpha, S: int, m: Sequence[int]) -> int:
    """Integral of ``prod c_i^{m_i}`` over U_S.  Only top degree n-3 is accepted."""
    v = _prepare(alpha, S)
    return _integrate_cached(v, S, _check_monomial(m, len(v)))


# recursion


def _rec(alpha: tuple, S: int, k: tuple) -> int:
    n = len(alpha)
    if not _short(alpha, S):
        return 0
    if n == 3:
        return 1
    a2, S2, c = _canonicalize(alpha, S, k)
    if c.tail == 0:
        if c.s == n - 1:
            return c.sign * (-1) ** (n - 1)
        if n == 4:
            return c.sign * ((-1) ** (n - 1) if _maximal(a2, S2) else 0)
        # trade two pivot factors for the square of an outside class
        k2 = (c.pivot_power - 2,) + (0,) * (n - 2) + (2,)
        return c.sign * _step(a2, S2, k2)
    return c.sign * _step(a2, S2, c.exponents(n))


def _step(alpha: tuple, S: int, k: tuple) -> int:
    n = len(alpha)
    if k[-1] < 1 or S >> (n - 2) & 3:
        raise RecursionShape(f"cannot split exponents {k} with S={members(S)}")
    if alpha[-1] == alpha[-2]:
        alpha = alpha[:-1] + (_bump(alpha[-1], _used(alpha) + 1),)
    diff = tuple(map(sub, alpha[-2], alpha[-1]))
    sg = _vsign(diff)
    plus = alpha[:-2] + (tuple(map(add, alpha[-2], alpha[-1])),)
    minus = alpha[:-2] + (diff if sg > 0 else tuple(-x for x in diff),)
    k2 = k[:-2] + (k[-2] + k[-1] - 1,)
    coeff = (-1) ** (k[-1] - 1) * sg ** (k[-2] + k[-1])
    return _rec(plus, S, k2) + coeff * _rec(minus, S, k2)


def integrate_recursive(alpha, S: int, m: Sequence[int]) -> int:
    """Evaluate by repeatedly merging the last two weights."""
    v = _prepare(alpha, S)
    return _rec(v, S, _check_monomial(m, len(v)))


# pairings


def pairing_matrix(alpha, S: int, basis: Sequence[dict], dual: Sequence[dict] | None = None) -> list:
    """Matrix of integrals of products of basis classes (polynomials in the c's)."""
    v = _prepare(alpha, S)
    n = len(v)
    right = basis if dual is None else dual
    out = []
    for f in basis:
        row = []
        for g in right:
            df, dg = P.degree(f), P.degree(g)
            if df is not None and dg is not None and df + dg != n - 3:
                raise DegreeMismatch(f"degrees {df}+{dg} do not reach {n - 3}")
            total = Fraction(0)
            for e, c in P.mul(f, g).items():
                total += c * _integrate_cached(v, S, e)
            if total.denominator != 1:
                raise NonIntegerPairing(f"pairing value {total} is not an integer")
            row.append(int(total))
        out.append(row)
    return out


def type_two_monomials(n: int, S: int) -> list[tuple]:
    """Canonical type II exponent vectors: pivot power plus distinct outside factors."""
    pivot = (S & -S).bit_length() - 1
    outside = [j for j in range(n) if not S >> j & 1]
    if len(outside) < 2:
        return []
    out = []
    for T in range(1, 1 << len(outside)):
        t = T.bit_count()
        if t > n - 3:
            continue
        e = [0] * n
        e[pivot] = n - 3 - t
        for b, j in enumerate(outside):
            if T >> b & 1:
                e[j] = 1
        out.append(tuple(e))
    return out
