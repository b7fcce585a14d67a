"""Ring presentations for X(alpha) and for the core components U_S.

Graded dimensions are computed by plain linear algebra: the degree ``d`` piece
of the ideal is spanned by ``relation * monomial`` products, and its rank is
found by exact Gaussian elimination over the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from . import polynomial as P
from .combinatorics import (
    as_weights,
    card,
    check_subset,
    complement,
    from_members,
    is_short,
    members,
    require_generic,
    sign,
    subset_sums,
)
from .errors import BadShape, SetNotShort


@dataclass(frozen=True)
class GradedRingPresentation:
    num_generators: int
    generator_names: tuple
    relations: tuple  # ((family label, polynomial dict), ...)
    top_degree: int
    # relabelling applied before building the relations (new k <- old order[k])
    order: tuple = field(default=())

    def relation_count(self, family: str | None = None) -> int:
        return sum(1 for f, _ in self.relations if family is None or f == family)


def ring_X(n: int) -> GradedRingPresentation:
    if n < 4:
        raise BadShape("the ring of X is defined here for n >= 4")
    rels = []
    for i, j in combinations(range(n), 2):
        rels.append(("square_difference", P.sub(P.power(P.var(n, i), 2, n), P.power(P.var(n, j), 2, n))))
    for e in P.monomials(n, n - 2):
        rels.append(("top_monomial", P.monomial(e)))
    names = tuple(f"c{i}" for i in range(1, n + 1))
    return GradedRingPresentation(n, names, tuple(rels), n - 3, tuple(range(n)))


def _order_with_one_in(S: int, n: int) -> list[int]:
    """Transposition moving min(S) to the first slot (0-based old indices)."""
    order = list(range(n))
    p = (S & -S).bit_length() - 1
    order[0], order[p] = order[p], order[0]
    return order


def relabel(alpha, S: int, order: list[int]):
    alpha2 = tuple(alpha[o] for o in order)
    S2 = from_members(k + 1 for k, o in enumerate(order) if S >> o & 1)
    return alpha2, S2


def ring_US(alpha, S: int) -> GradedRingPresentation:
    """Relations for the core component of a short set S with |S| >= 2.

    If ``1`` is not in S the indices 1 and min(S) are swapped first; the
    swap is recorded in ``order``.
    """
    alpha = as_weights(alpha)
    n = len(alpha)
    check_subset(S, n)
    require_generic(alpha)
    if card(S) < 2 or not is_short(alpha, S):
        raise SetNotShort(f"{members(S)} is not a short set of size >= 2")
    order = _order_with_one_in(S, n)
    alpha, S = relabel(alpha, S, order)
    sums = subset_sums(alpha)
    total = sums[-1]
    long_ = lambda m: sign(2 * sums[m] - total) > 0
    Sc = complement(S, n)
    b = [P.var(n, i) for i in range(n)]
    s = card(S)
    rels = []
    for i in members(S)[1:]:
        rels.append(("pivot", P.sub(b[0], b[i - 1])))
    for j in members(Sc):
        rels.append(("square", P.mul(b[j - 1], P.sub(b[0], b[j - 1]))))
    sc_members = members(Sc)
    for r in range(1, len(sc_members) + 1):
        for R in combinations(sc_members, r):
            Rm = from_members(R)
            if long_(Rm | S):
                rels.append(("long_union", P.prod([b[j - 1] for j in R], n)))
            if long_(Rm):
                factors = [P.sub(b[j - 1], b[0]) for j in R]
                rels.append(("long_complement", P.mul(P.power(b[0], s - 2, n), P.prod(factors, n))))
    names = tuple(f"b{i}" for i in range(1, n + 1))
    return GradedRingPresentation(n, names, tuple(rels), n - 3, tuple(order))


def _rank(rows: list[dict]) -> int:
    """Rank of sparse rational row vectors (dict column -> value)."""
    pivots: dict = {}
    rank = 0
    for row in rows:
        row = dict(row)
        while row:
            col = min(row)
            piv = pivots.get(col)
            if piv is None:
                lead = row[col]
                pivots[col] = {k: v / lead for k, v in row.items()}
                rank += 1
                break
            f = row[col]
            for k, v in piv.items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return rank


def degree_piece_dim(pres: GradedRingPresentation, d: int) -> int:
    n = pres.num_generators
    basis = P.monomials(n, d)
    index = {e: k for k, e in enumerate(basis)}
    rows = []
    for _, rel in pres.relations:
        e = P.degree(rel)
        if e is None or e > d:
            continue
        for m in P.monomials(n, d - e):
            prod = P.mul(rel, P.monomial(m))
            if prod:
                rows.append({index[k]: v for k, v in prod.items()})
    return len(basis) - _rank(rows)


def graded_dims(pres: GradedRingPresentation) -> tuple:
    return tuple(degree_piece_dim(pres, d) for d in range(pres.top_degree + 1))


@lru_cache(maxsize=None)
def graded_dims_X(n: int) -> tuple:
    return graded_dims(ring_X(n))


def b_to_c(poly: dict, n: int) -> dict:
    """Substitute ``b_i = -(c_1 + c_i)/2`` into a polynomial in the b's."""
    forms = []
    for i in range(n):
        coeffs = [Fraction(0)] * n
        coeffs[0] -= Fraction(1, 2)
        coeffs[i] -= Fraction(1, 2)
        forms.append(P.linear(coeffs))
    out: dict = {}
    for e, c in poly.items():
        term = P.const(n, c)
        for i, k in enumerate(e):
            if k:
                term = P.mul(term, P.power(forms[i], k, n))
        out = P.add(out, term)
    return out


def verify_ideal_consistency(alpha, S: int, *, return_failures: bool = False):
    """Every relation times every complementary monomial must integrate to 0."""
    from .intersection import integrate

    alpha = as_weights(alpha)
    pres = ring_US(alpha, S)
    n = pres.num_generators
    alpha2, S2 = relabel(alpha, S, list(pres.order))
    top = pres.top_degree
    cache: dict = {}

    def integrate_poly(poly: dict) -> Fraction:
        total = Fraction(0)
        for e, c in poly.items():
            if e not in cache:
                cache[e] = integrate(alpha2, S2, e)
            total += c * cache[e]
        return total

    failures = []
    for family, rel in pres.relations:
        e = P.degree(rel)
        if e is None or e > top:
            continue
        for m in P.monomials(n, top - e):
            value = integrate_poly(b_to_c(P.mul(rel, P.monomial(m)), n))
            if value:
                failures.append((family, P.to_json(rel), list(m), value))
                if not return_failures:
                    return False
    return failures if return_failures else True
