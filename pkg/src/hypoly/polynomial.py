"""Sparse polynomials with exact rational coefficients.

A polynomial in ``n`` variables is a dict mapping exponent tuples to nonzero
``Fraction`` coefficients.  Only what the ring and pairing code needs is here.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable


def _clean(p: dict) -> dict:
    return {e: c for e, c in p.items() if c}


def const(n: int, c=1) -> dict:
    return _clean({(0,) * n: Fraction(c)})


def var(n: int, i: int) -> dict:
    """The variable with 0-based index ``i``."""
    e = [0] * n
    e[i] = 1
    return {tuple(e): Fraction(1)}


def linear(coeffs: Iterable) -> dict:
    coeffs = [Fraction(c) for c in coeffs]
    n = len(coeffs)
    return _clean({tuple(int(j == i) for j in range(n)): c for i, c in enumerate(coeffs)})


def add(*ps: dict) -> dict:
    out: dict = {}
    for p in ps:
        for e, c in p.items():
            out[e] = out.get(e, 0) + c
    return _clean(out)


def scale(p: dict, c) -> dict:
    c = Fraction(c)
    return _clean({e: c * v for e, v in p.items()})


def sub(p: dict, q: dict) -> dict:
    return add(p, scale(q, -1))


def mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return _clean(out)


def prod(ps: Iterable[dict], n: int) -> dict:
    out = const(n)
    for p in ps:
        out = mul(out, p)
    return out


def power(p: dict, k: int, n: int) -> dict:
    return prod([p] * k, n)


def degree(p: dict) -> int | None:
    """Total degree if homogeneous, ``None`` for the zero polynomial."""
    degs = {sum(e) for e in p}
    if not degs:
        return None
    if len(degs) > 1:
        raise ValueError("polynomial is not homogeneous")
    return degs.pop()


@lru_cache(maxsize=None)
def monomials(n: int, d: int) -> tuple:
    """Exponent tuples of total degree ``d`` in ``n`` variables, in a fixed order."""
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return tuple(sorted(out, reverse=True))


def monomial(e: Iterable[int]) -> dict:
    return {tuple(e): Fraction(1)}


def permute(p: dict, order: list[int]) -> dict:
    """Rename variables: new variable ``k`` is old variable ``order[k]``."""
    return {tuple(e[o] for o in order): c for e, c in p.items()}


def to_json(p: dict) -> list:
    return [
        {"coeff": str(c), "exponents": list(e)}
        for e, c in sorted(p.items(), key=lambda t: t[0], reverse=True)
    ]


def from_json(terms: list, n: int) -> dict:
    from .combinatorics import parse_rational
    from .errors import ParseError

    out: dict = {}
    for t in terms:
        e = tuple(int(x) for x in t["exponents"])
        if len(e) != n or min(e, default=0) < 0:
            raise ParseError(f"bad exponent vector {list(e)} for n={n}")
        out[e] = out.get(e, 0) + parse_rational(str(t.get("coeff", "1")))
    return _clean(out)
