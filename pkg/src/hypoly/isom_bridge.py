"""Numerical checks of the map between hyperpolygons and parabolic Higgs bundles.

A hyperpolygon point stores rows ``p_i = (a_i, b_i)`` and columns
``q_i = (c_i, d_i)``.  The Higgs side stores the flag line ``[q_i]`` at each
marked point and the residue ``N_i = (q_i p_i)_0``.

Vectors in R^3 are identified with traceless hermitian matrices through
``M = [[z, x - iy], [x + iy, -z]]``, so ``(q q*)_0`` corresponds to
``(Re M21, Im M21, M11)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .combinatorics import card, from_members, members
from .errors import MalformedResidue, MomentViolation, NotClosed, ParseError, UnstablePoint, ZeroQ
from .phb_moduli import ParabolicWeights

TOL = 1e-9


@dataclass
class HyperpolygonPoint:
    p: np.ndarray  # (n, 2) complex rows
    q: np.ndarray  # (n, 2) complex columns

    def __post_init__(self):
        self.p = np.asarray(self.p, dtype=complex).reshape(-1, 2)
        self.q = np.asarray(self.q, dtype=complex).reshape(-1, 2)
        if self.p.shape != self.q.shape:
            raise ParseError("p and q must have the same length")

    @property
    def n(self) -> int:
        return self.q.shape[0]

    def act(self, g: np.ndarray, phases: Sequence[float] | None = None) -> "HyperpolygonPoint":
        """Apply ``g`` in SU(2) (q -> g q, p -> p g^-1) and optional U(1)^n phases."""
        q = self.q @ g.T
        p = self.p @ np.linalg.inv(g)
        if phases is not None:
            ph = np.exp(1j * np.asarray(phases))[:, None]
            q = q * ph
            p = p / ph
        return HyperpolygonPoint(p, q)


@dataclass
class PHBPoint:
    flags: np.ndarray  # (n, 2) normalised generators
    residues: np.ndarray  # (n, 2, 2)
    weights: ParabolicWeights | None = None


@dataclass
class StabilityReport:
    stable: bool
    witnesses: list = field(default_factory=list)
    tolerance: float = TOL


def _floats(alpha) -> np.ndarray:
    return np.array([float(Fraction(a)) if not isinstance(a, float) else a for a in alpha])


def _eps(alpha, S: int) -> Fraction:
    return sum(
        (Fraction(a) if (S >> i & 1) else -Fraction(a) for i, a in enumerate(alpha)), Fraction(0)
    )


def moment_residuals(pt: HyperpolygonPoint, alpha) -> tuple[float, float]:
    a, b = pt.p[:, 0], pt.p[:, 1]
    c, d = pt.q[:, 0], pt.q[:, 1]
    al = _floats(alpha)
    if len(al) != pt.n:
        raise ParseError("alpha length does not match the point")
    cx = [
        np.max(np.abs(a * c + b * d), initial=0.0),
        abs(np.sum(a * c - b * d)),
        abs(np.sum(a * d)),
        abs(np.sum(b * c)),
    ]
    norms = np.abs(c) ** 2 + np.abs(d) ** 2 - np.abs(a) ** 2 - np.abs(b) ** 2
    re = [
        np.max(np.abs(norms - 2 * al), initial=0.0),
        abs(np.sum(np.abs(c) ** 2 - np.abs(a) ** 2 + np.abs(b) ** 2 - np.abs(d) ** 2)),
        abs(np.sum(a * np.conj(b) - np.conj(c) * d)),
    ]
    return float(max(re)), float(max(cx))


def _unit(q: np.ndarray) -> np.ndarray:
    return q / np.linalg.norm(q)


def _parallel(u: np.ndarray, v: np.ndarray, tol: float) -> bool:
    u, v = _unit(u), _unit(v)
    return abs(u[0] * v[1] - u[1] * v[0]) < tol


def straight_sets(pt: HyperpolygonPoint, tol: float = TOL) -> list[int]:
    """Partition of the indices into classes of proportional q_i, as bitmasks."""
    for i, qi in enumerate(pt.q):
        if np.linalg.norm(qi) < tol:
            raise ZeroQ(f"q_{i + 1} vanishes")
    classes: list[list[int]] = []
    for i in range(pt.n):
        for cls in classes:
            if _parallel(pt.q[cls[0]], pt.q[i], tol):
                cls.append(i)
                break
        else:
            classes.append([i])
    return sorted(from_members(j + 1 for j in cls) for cls in classes)


def alpha_stable(pt: HyperpolygonPoint, alpha, tol: float = TOL) -> StabilityReport:
    zero = [i + 1 for i in range(pt.n) if np.linalg.norm(pt.q[i]) < tol]
    if zero:
        return StabilityReport(False, [("zero_q", from_members(zero), None)], tol)
    witnesses = []
    stable = True
    pnorm = np.linalg.norm(pt.p, axis=1)
    for S in straight_sets(pt, tol):
        if all(pnorm[j] < tol for j in range(pt.n) if not S >> j & 1):
            e = _eps(alpha, S)
            witnesses.append(("straight", S, e))
            if e >= 0:
                stable = False
    if stable:
        witnesses = sorted(witnesses, key=lambda w: -w[2])[:1]
    else:
        witnesses = [w for w in witnesses if w[2] >= 0]
    return StabilityReport(stable, witnesses, tol)


def normalize_flag(q: np.ndarray, tol: float = TOL) -> tuple[np.ndarray, complex]:
    """Generator with first nonzero coordinate 1, and lam with q = lam * generator."""
    q = np.asarray(q, dtype=complex)
    size = float(np.linalg.norm(q))
    if size == 0:
        raise ZeroQ("zero flag generator")
    if abs(q[0]) > tol * size:
        return np.array([1.0, q[1] / q[0]], dtype=complex), q[0]
    return np.array([0.0, 1.0], dtype=complex), q[1]


def normalize_point(pt: HyperpolygonPoint, tol: float = TOL) -> HyperpolygonPoint:
    """Rescale each (p_i, q_i) by lam_i so that q_i is the normalised generator."""
    p = pt.p.copy()
    q = pt.q.copy()
    for i in range(pt.n):
        q[i], lam = normalize_flag(pt.q[i], tol)
        p[i] = pt.p[i] * lam
    return HyperpolygonPoint(p, q)


def residue(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    a, b = p
    c, d = q
    h = (a * c - b * d) / 2
    return np.array([[h, b * c], [a * d, -h]], dtype=complex)


def to_phb(pt: HyperpolygonPoint, beta: ParabolicWeights, tol: float = TOL, check: bool = True) -> PHBPoint:
    alpha = beta.alpha
    if check:
        r, c = moment_residuals(pt, alpha)
        if max(r, c) > tol:
            raise MomentViolation(f"moment residuals {r:.3g}, {c:.3g} exceed {tol}")
        rep = alpha_stable(pt, alpha, tol)
        if not rep.stable:
            raise UnstablePoint(f"point is not stable: {rep.witnesses}")
    flags = np.zeros((pt.n, 2), dtype=complex)
    res = np.zeros((pt.n, 2, 2), dtype=complex)
    for i in range(pt.n):
        flags[i], _ = normalize_flag(pt.q[i], tol)
        res[i] = residue(pt.p[i], pt.q[i])
    return PHBPoint(flags, res, beta)


def from_phb(phb: PHBPoint, tol: float = TOL) -> HyperpolygonPoint:
    n = phb.flags.shape[0]
    p = np.zeros((n, 2), dtype=complex)
    q = np.zeros((n, 2), dtype=complex)
    for i in range(n):
        gen = phb.flags[i]
        N = phb.residues[i]
        scale = max(1.0, float(np.abs(N).max()))
        if abs(np.trace(N)) > tol * scale or abs(np.linalg.det(N)) > tol * scale**2:
            raise MalformedResidue(f"residue {i + 1} is not trace-free nilpotent")
        if np.linalg.norm(N @ gen) > tol * scale * max(1.0, np.linalg.norm(gen)):
            raise MalformedResidue(f"residue {i + 1} does not kill its flag")
        c, d = gen
        if abs(c) > tol and abs(d) > tol:
            p[i] = (N[1, 0] / d, N[0, 1] / c)
        elif abs(c) <= tol:
            p[i] = (N[1, 0] / d, 0)
        else:
            p[i] = (0, N[0, 1] / c)
        q[i] = gen
    return HyperpolygonPoint(p, q)


def residue_invariants(phb: PHBPoint) -> dict:
    """Largest violations of trace 0, det 0, sum 0 and N_i q_i = 0."""
    N = phb.residues
    return {
        "trace": float(np.max(np.abs(np.trace(N, axis1=1, axis2=2)), initial=0.0)),
        "det": float(np.max(np.abs(np.linalg.det(N)), initial=0.0)),
        "sum": float(np.abs(N.sum(axis=0)).max()),
        "kills_flag": float(
            max((np.linalg.norm(N[i] @ phb.flags[i]) for i in range(len(N))), default=0.0)
        ),
    }


def _invariant(N: np.ndarray, v: np.ndarray, tol: float) -> bool:
    w = N @ v
    return abs(v[0] * w[1] - v[1] * w[0]) <= tol * max(1.0, np.linalg.norm(w))


def phb_stable(phb: PHBPoint, beta: ParabolicWeights, tol: float = TOL, rng=None) -> StabilityReport:
    """Check every Higgs-invariant trivial line subbundle against the weights."""
    alpha = beta.alpha
    N = phb.residues
    flags = phb.flags
    n = flags.shape[0]
    nonzero = [i for i in range(n) if np.abs(N[i]).max() > tol]
    if nonzero:
        L = flags[nonzero[0]]
        if not all(_invariant(N[j], L, tol) for j in range(n)):
            return StabilityReport(True, [("no_invariant_line", 0, None)], tol)
        candidates = [L]
    else:
        rng = np.random.default_rng(0) if rng is None else rng
        generic = rng.normal(size=2) + 1j * rng.normal(size=2)
        candidates = [flags[i] for i in range(n)] + [generic]
    witnesses = []
    stable = True
    seen = set()
    for L in candidates:
        S = from_members(i + 1 for i in range(n) if _parallel(flags[i], L, tol))
        if S in seen:
            continue
        seen.add(S)
        e = _eps(alpha, S)
        if e >= 0:
            stable = False
            witnesses.append(("line", S, e))
        elif stable:
            witnesses.append(("line", S, e))
    if stable:
        witnesses = sorted(witnesses, key=lambda w: -w[2])[:1]
    return StabilityReport(stable, witnesses, tol)


# sample points


def vector_of(q: np.ndarray) -> np.ndarray:
    """The R^3 vector of ``(q q*)_0``."""
    c, d = q
    m21 = np.conj(c) * d
    return np.array([m21.real, m21.imag, (abs(c) ** 2 - abs(d) ** 2) / 2])


def lift_vector(v: np.ndarray) -> np.ndarray:
    """Spinor q with ``(q q*)_0`` equal to v and ``|q|^2 = 2|v|``."""
    x, y, z = v
    r = float(np.linalg.norm(v))
    if r + z <= 1e-14 * r:
        return np.array([0.0, np.sqrt(2 * r)], dtype=complex)
    c = np.sqrt(r + z)
    return np.array([c, (x + 1j * y) / c], dtype=complex)


def lift_polygon(vectors: Sequence, tol: float = TOL) -> HyperpolygonPoint:
    v = np.asarray(vectors, dtype=float).reshape(-1, 3)
    scale = max(1.0, float(np.abs(v).max()))
    if np.linalg.norm(v.sum(axis=0)) > tol * scale:
        raise NotClosed(f"polygon does not close: gap {np.linalg.norm(v.sum(axis=0)):.3g}")
    q = np.array([lift_vector(x) for x in v])
    return HyperpolygonPoint(np.zeros_like(q), q)


def _random_unit(rng) -> np.ndarray:
    x = rng.normal(size=3)
    return x / np.linalg.norm(x)


def _closable(r: float, rest: Sequence[float], margin: float) -> bool:
    lengths = list(rest) + [r]
    total = sum(lengths)
    return all(2 * x < total - margin for x in lengths)


def random_closed_polygon(lengths: Sequence[float], rng, tries: int = 20000) -> np.ndarray:
    """Random closed polygon in R^3 with prescribed side lengths."""
    lengths = [float(x) for x in lengths]
    n = len(lengths)
    if not _closable(0.0, lengths, 0.0) and n > 2:
        raise NotClosed("no closed polygon with these side lengths")
    if n == 2:
        if abs(lengths[0] - lengths[1]) > TOL * max(lengths):
            raise NotClosed("a closed 2-gon needs equal sides")
        v = lengths[0] * _random_unit(rng)
        return np.array([v, -v])
    margin = 1e-3 * min(lengths)
    for _ in range(100):
        pos = np.zeros(3)
        sides = []
        ok = True
        for k in range(n - 2):
            for _ in range(tries):
                v = lengths[k] * _random_unit(rng)
                if _closable(float(np.linalg.norm(pos + v)), lengths[k + 1 :], margin):
                    break
            else:
                ok = False
                break
            sides.append(v)
            pos = pos + v
        if not ok:
            continue
        D = float(np.linalg.norm(pos))
        a, b = lengths[n - 2], lengths[n - 1]
        back = -pos / D
        perp = np.cross(back, _random_unit(rng))
        perp /= np.linalg.norm(perp)
        cos = (D * D + a * a - b * b) / (2 * D * a)
        sin = np.sqrt(max(0.0, 1 - cos * cos))
        v1 = a * (cos * back + sin * perp)
        sides.append(v1)
        sides.append(-pos - v1)
        return np.array(sides)
    raise NotClosed("failed to sample a closed polygon")


def _rotation_to_z(w: np.ndarray) -> np.ndarray:
    u = w / np.linalg.norm(w)
    z = np.array([0.0, 0.0, 1.0])
    v = np.cross(u, z)
    s = np.linalg.norm(v)
    c = float(u @ z)
    if s < 1e-15:
        return np.eye(3) if c > 0 else np.diag([1.0, -1.0, -1.0])
    vx = np.array([[0, -v[2], v[1]], [v[2], 0, -v[0]], [-v[1], v[0], 0]])
    return np.eye(3) + vx + vx @ vx * ((1 - c) / s**2)


def polygon_sample(alpha, rng) -> HyperpolygonPoint:
    """A point of the polygon space (p = 0)."""
    return lift_polygon(random_closed_polygon(_floats(alpha), rng))


def core_sample(alpha, S: int, rng) -> HyperpolygonPoint:
    """A point of the core component U_S with S straight and p_j = 0 off S."""
    al = _floats(alpha)
    n = len(al)
    inside = members(S)
    outside = [j for j in range(1, n + 1) if not S >> (j - 1) & 1]
    if card(S) < 2 or _eps(alpha, S) >= 0:
        raise ParseError(f"{inside} is not a short set of size >= 2")
    Sa = al[[i - 1 for i in inside]]
    Ra = al[[j - 1 for j in outside]]
    R = float(Ra.sum())
    L = max(float(Sa.sum()), float(max(2 * Ra.max() - R, 0.0)))
    target = L + (R - L) * rng.uniform(0.25, 0.75)
    # polygon with sides (|w|, alpha_j for j outside S), w pointing up
    poly = random_closed_polygon([target] + list(Ra), rng)
    rot = _rotation_to_z(poly[0])
    poly = poly @ rot.T
    # planar u_i summing to 0, scaled so that sum sqrt(alpha_i^2 + |u_i|^2) = |w|
    zeta = rng.normal(size=len(inside)) + 1j * rng.normal(size=len(inside))
    zeta -= zeta.mean()
    f = lambda t: float(np.sum(np.sqrt(Sa**2 + (t * np.abs(zeta)) ** 2))) - target
    lo, hi = 0.0, 1.0
    while f(hi) < 0:
        hi *= 2
    for _ in range(200):
        mid = (lo + hi) / 2
        lo, hi = (mid, hi) if f(mid) < 0 else (lo, mid)
    zeta = zeta * (lo + hi) / 2
    p = np.zeros((n, 2), dtype=complex)
    q = np.zeros((n, 2), dtype=complex)
    for k, i in enumerate(inside):
        x = Sa[k] + np.sqrt(Sa[k] ** 2 + abs(zeta[k]) ** 2)
        c = np.sqrt(x)
        q[i - 1] = (c, 0)
        p[i - 1] = (0, np.conj(zeta[k]) / c)
    for k, j in enumerate(outside):
        q[j - 1] = lift_vector(poly[k + 1])
    return HyperpolygonPoint(p, q)


def random_su2(rng) -> np.ndarray:
    x = rng.normal(size=4)
    x /= np.linalg.norm(x)
    a, b = x[0] + 1j * x[1], x[2] + 1j * x[3]
    return np.array([[a, -np.conj(b)], [b, np.conj(a)]])
