"""Command line frontend.  Every invocation prints one JSON envelope."""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import cohomology, combinatorics as comb, core_geometry, intersection, isom_bridge, phb_moduli, wallcross
from . import polynomial as P
from .errors import HypolyError, ParseError, TooLarge

COMMANDS = (
    "generic",
    "shortsets",
    "chamber",
    "polygon-nonempty",
    "fixed",
    "core",
    "betti",
    "triangular",
    "intersect",
    "pairing",
    "ring",
    "verify-ideal",
    "phb-critical",
    "verify-isom",
    "wallcross",
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)

    def exit(self, status=0, message=None):
        if status:
            raise ParseError(message or "argument error")
        raise SystemExit(status)


def _max_n() -> int:
    raw = os.environ.get("HYPOLY_MAX_N", "10")
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"HYPOLY_MAX_N must be an integer, got {raw!r}") from None


def _cap(n: int) -> int:
    if n > _max_n():
        raise TooLarge(f"n={n} exceeds HYPOLY_MAX_N={_max_n()}")
    return n


def _list(value) -> list:
    if value is None:
        return None
    if isinstance(value, list):
        return value
    text = str(value).strip()
    if not text:
        return []
    return [x.strip() for x in text.split(",")]


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise ParseError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from None


def _weights(value, what="alpha") -> tuple:
    if value is None:
        raise ParseError(f"missing --{what}")
    if isinstance(value, str) and Path(value).is_file():
        data = _load_json(value)
        value = data.get("alpha", data) if isinstance(data, dict) else data
    alpha = comb.as_weights(_list(value))
    _cap(len(alpha))
    return alpha


def _set(value, n: int, what="S") -> int:
    if value is None:
        raise ParseError(f"missing --{what}")
    try:
        idx = [int(x) for x in _list(value)]
    except ValueError:
        raise ParseError(f"--{what} must be comma-separated integers") from None
    mask = comb.from_members(idx)
    comb.check_subset(mask, n)
    return mask


def _int(value, what: str, default=None) -> int:
    if value is None:
        if default is None:
            raise ParseError(f"missing --{what}")
        return default
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ParseError(f"--{what} must be an integer") from None


def _sets(masks) -> list:
    return [comb.members(m) for m in masks]


def _rat(x) -> str:
    return str(x)


# handlers


def cmd_generic(p):
    return {"generic": comb.is_generic(_weights(p.get("alpha")))}


def cmd_shortsets(p):
    alpha = _weights(p.get("alpha"))
    sets = comb.short_sets(alpha, _int(p.get("min_card"), "min-card", 0))
    return {"count": len(sets), "sets": _sets(sets)}


def cmd_chamber(p):
    sig = comb.chamber_signature(_weights(p.get("alpha")))
    return {"n": sig.n, "signs": [{"set": comb.members(m), "sign": s} for m, s in sig.signs]}


def cmd_polygon_nonempty(p):
    return {"nonempty": comb.polygon_nonempty(_weights(p.get("alpha")))}


def cmd_fixed(p):
    comps = core_geometry.fixed_components(_weights(p.get("alpha")))
    return {
        "components": [
            {
                "kind": c.kind,
                "S": None if c.S is None else comb.members(c.S),
                "diffeo_type": c.diffeo_type,
                "morse_index": c.morse_index,
            }
            for c in comps
        ]
    }


def cmd_core(p):
    alpha = _weights(p.get("alpha"))
    out = {
        "components": [
            {"S": comb.members(c.S), "complex_dim": c.complex_dim, "is_projective_space": c.is_projective_space}
            for c in core_geometry.core_components(alpha)
        ]
    }
    if p.get("S") is not None or p.get("T") is not None:
        cls = core_geometry.core_intersection(alpha, _set(p.get("S"), len(alpha)), _set(p.get("T"), len(alpha), "T"))
        out["intersection"] = {"variant": cls.variant, "note": cls.note}
    return out


def cmd_betti(p):
    alpha = _weights(p.get("alpha"))
    n = len(alpha)
    if n < 4:
        raise ParseError("betti needs at least 4 weights")
    return {
        "poincare_X": list(core_geometry.poincare_X(n)),
        "morse_sum": list(core_geometry.morse_sum(alpha)),
        "polygon_nonempty": comb.polygon_nonempty(alpha),
        "polygon": list(core_geometry.derived_polygon_poincare(alpha)),
    }


def cmd_triangular(p):
    fam = intersection.triangular_sets(_weights(p.get("alpha")))
    return {"m": fam.m, "sets": _sets(fam.sets)}


def _monomial(value, n: int) -> tuple:
    if value is None:
        raise ParseError("missing --monomial")
    try:
        return tuple(int(x) for x in _list(value))
    except ValueError:
        raise ParseError("--monomial must be comma-separated integers") from None


def cmd_intersect(p):
    alpha = _weights(p.get("alpha"))
    S = _set(p.get("S"), len(alpha))
    m = _monomial(p.get("monomial"), len(alpha))
    method = p.get("method") or "closed"
    if method == "closed":
        return {"value": intersection.integrate(alpha, S, m)}
    if method == "recursive":
        return {"value": intersection.integrate_recursive(alpha, S, m)}
    raise ParseError(f"unknown method {method!r}")


def _basis_element(obj, n: int) -> dict:
    if isinstance(obj, dict) and "linear" in obj:
        coeffs = [comb.parse_rational(str(c)) for c in obj["linear"]]
        if len(coeffs) != n:
            raise ParseError(f"linear form needs {n} coefficients")
        return P.linear(coeffs)
    if isinstance(obj, dict) and "terms" in obj:
        return P.from_json(obj["terms"], n)
    if isinstance(obj, list):
        return P.from_json(obj, n)
    raise ParseError("basis elements are {'linear': [...]} or {'terms': [...]}")


def cmd_pairing(p):
    alpha = _weights(p.get("alpha"))
    n = len(alpha)
    S = _set(p.get("S"), n)
    basis = p.get("basis")
    if basis is None:
        raise ParseError("missing --basis")
    if isinstance(basis, str):
        data = _load_json(basis)
        basis = data["basis"] if isinstance(data, dict) else data
    elems = [_basis_element(b, n) for b in basis]
    return {"matrix": intersection.pairing_matrix(alpha, S, elems)}


def cmd_ring(p):
    space = p.get("space") or "X"
    if space == "X":
        if p.get("n") is not None:
            n = _cap(_int(p.get("n"), "n"))
        else:
            n = len(_weights(p.get("alpha")))
        pres = cohomology.ring_X(n)
    elif space == "US":
        alpha = _weights(p.get("alpha"))
        pres = cohomology.ring_US(alpha, _set(p.get("S"), len(alpha)))
    else:
        raise ParseError("--space must be X or US")
    counts: dict = {}
    for fam, _ in pres.relations:
        counts[fam] = counts.get(fam, 0) + 1
    return {
        "space": space,
        "generators": list(pres.generator_names),
        "relabelling": [o + 1 for o in pres.order],
        "relation_counts": counts,
        "top_degree": pres.top_degree,
        "dims": list(cohomology.graded_dims(pres)),
    }


def cmd_verify_ideal(p):
    alpha = _weights(p.get("alpha"))
    S = _set(p.get("S"), len(alpha))
    failures = cohomology.verify_ideal_consistency(alpha, S, return_failures=True)
    return {
        "consistent": not failures,
        "failures": [
            {"family": f, "relation": rel, "monomial": m, "value": _rat(v)} for f, rel, m, v in failures[:20]
        ],
    }


def _beta_from(data) -> phb_moduli.ParabolicWeights:
    if "beta1" in data and "beta2" in data:
        return phb_moduli.ParabolicWeights(tuple(map(str, data["beta1"])), tuple(map(str, data["beta2"])))
    if "alpha" in data:
        return phb_moduli.ParabolicWeights.from_alpha([str(a) for a in data["alpha"]])
    raise ParseError("weights need beta1/beta2 or alpha")


def cmd_phb_critical(p):
    g = _int(p.get("g"), "g", 0)
    d = _int(p.get("d"), "d", 0)
    w = p.get("weights")
    if w is None:
        raise ParseError("missing --weights")
    data = _load_json(w) if isinstance(w, str) else w
    beta = _beta_from(data)
    _cap(beta.n)
    comps = phb_moduli.critical_submanifolds(g, d, beta)
    if p.get("restrict_H"):
        comps = phb_moduli.restrict_H(comps)
    return {
        "alpha": [_rat(a) for a in beta.alpha],
        "components": [
            {
                "d0": c.d0,
                "S": comb.members(c.S),
                "m": c.m,
                "morse_index": c.morse_index,
                "description": c.description,
            }
            for c in comps
        ],
    }


def _complex_list(values, what: str) -> np.ndarray:
    try:
        return np.array([complex(float(re), float(im)) for re, im in values])
    except (TypeError, ValueError):
        raise ParseError(f"{what} must be a list of [re, im] pairs") from None


def _report(rep) -> dict:
    return {
        "stable": rep.stable,
        "witnesses": [
            {"kind": k, "S": comb.members(S), "epsilon": None if e is None else _rat(e)} for k, S, e in rep.witnesses
        ],
    }


def cmd_verify_isom(p):
    src = p.get("point")
    if src is None:
        raise ParseError("missing --point")
    data = _load_json(src) if isinstance(src, str) else src
    tol = float(p.get("tol") or isom_bridge.TOL)
    if "p" in data and "q" in data:
        pvals = _complex_list(data["p"], "p")
        qvals = _complex_list(data["q"], "q")
        pt = isom_bridge.HyperpolygonPoint(pvals, qvals)
        scale = Fraction(1)
        if "beta1" not in data and "alpha" in data:
            # X(alpha) and X(alpha/t) are identified by (p, q) -> (p, q)/sqrt(t)
            top = max(comb.as_weights(data["alpha"]))
            if top >= 1:
                scale = 2 * top
                data = {"alpha": [str(comb.parse_rational(str(a)) / scale) for a in data["alpha"]]}
                root = float(scale) ** 0.5
                pt = isom_bridge.HyperpolygonPoint(pt.p / root, pt.q / root)
        beta = _beta_from(data)
        if beta.n != pt.n:
            raise ParseError("weights and point have different lengths")
        _cap(pt.n)
        real, cplx = isom_bridge.moment_residuals(pt, beta.alpha)
        ast = isom_bridge.alpha_stable(pt, beta.alpha, tol)
        phb = isom_bridge.to_phb(pt, beta, tol, check=False)
        inv = isom_bridge.residue_invariants(phb)
        back = isom_bridge.from_phb(phb, tol)
        ref = isom_bridge.normalize_point(pt, tol)
        err = float(max(np.abs(back.p - ref.p).max(), np.abs(back.q - ref.q).max()))
        pst = isom_bridge.phb_stable(phb, beta, tol)
        ok = max(real, cplx, *inv.values(), err) <= tol and ast.stable == pst.stable
        return {
            "moment_residuals": {"real": real, "complex": cplx},
            "scale": str(scale),
            "residue_invariants": inv,
            "round_trip_error": err,
            "alpha_stable": _report(ast),
            "phb_stable": _report(pst),
            "verified": bool(ok),
        }
    if "flags" in data and "residues" in data:
        beta = _beta_from(data)
        flags = np.array([_complex_list(f, "flags") for f in data["flags"]])
        res = np.array([[_complex_list(row, "residues") for row in N] for N in data["residues"]])
        phb = isom_bridge.PHBPoint(flags, res.reshape(-1, 2, 2), beta)
        pt = isom_bridge.from_phb(phb, tol)
        inv = isom_bridge.residue_invariants(phb)
        pst = isom_bridge.phb_stable(phb, beta, tol)
        ast = isom_bridge.alpha_stable(pt, beta.alpha, tol)
        again = isom_bridge.to_phb(pt, beta, tol, check=False)
        err = float(np.abs(again.residues - phb.residues).max())
        return {
            "residue_invariants": inv,
            "round_trip_error": err,
            "phb_stable": _report(pst),
            "alpha_stable": _report(ast),
            "verified": bool(max(*inv.values(), err) <= tol and ast.stable == pst.stable),
        }
    raise ParseError("point file needs p/q or flags/residues")


def cmd_wallcross(p):
    am = _weights(p.get("minus"), "minus")
    ap = _weights(p.get("plus"), "plus")
    rep = wallcross.crossing_report(am, ap)
    return {
        "wall": comb.members(rep.wall.discrete_data),
        "vanishing_wall": rep.wall.is_vanishing,
        "S_minus_short": comb.members(rep.S_minus_short),
        "removed": None if rep.removed is None else comb.members(rep.removed),
        "added": None if rep.added is None else comb.members(rep.added),
        "component_changes": [{"B": comb.members(B), "change": v} for B, v in rep.component_changes],
        "short_sets_minus": _sets(comb.short_sets(am, 2)),
        "short_sets_plus": _sets(comb.short_sets(ap, 2)),
        "polygon_change": rep.polygon_change,
    }


HANDLERS = {name: globals()["cmd_" + name.replace("-", "_")] for name in COMMANDS}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hypoly", description="Invariants of hyperpolygon spaces.")
    parser.add_argument("--pretty", action="store_true", help="indent the JSON output")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    specs = {
        "generic": ["alpha"],
        "shortsets": ["alpha", "min-card"],
        "chamber": ["alpha"],
        "polygon-nonempty": ["alpha"],
        "fixed": ["alpha"],
        "core": ["alpha", "S", "T"],
        "betti": ["alpha"],
        "triangular": ["alpha"],
        "intersect": ["alpha", "S", "monomial", "method"],
        "pairing": ["alpha", "S", "basis"],
        "ring": ["space", "alpha", "n", "S"],
        "verify-ideal": ["alpha", "S"],
        "phb-critical": ["g", "d", "weights"],
        "verify-isom": ["point", "tol"],
        "wallcross": ["minus", "plus"],
    }
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--json-in", dest="json_in", default=None, help="read parameters from a JSON file")
        sp.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)
        for opt in specs[name]:
            sp.add_argument(f"--{opt}", dest=opt.replace("-", "_"), default=None)
        if name == "phb-critical":
            sp.add_argument("--restrict-H", dest="restrict_H", action="store_true", default=None)
    return parser


def _params(args) -> dict:
    params: dict = {}
    if getattr(args, "json_in", None):
        data = _load_json(args.json_in)
        if not isinstance(data, dict):
            raise ParseError("--json-in must hold a JSON object")
        params.update({k.replace("-", "_"): v for k, v in data.items()})
    for k, v in vars(args).items():
        if k in ("command", "json_in", "pretty") or v is None:
            continue
        params[k] = v
    return params


def _dump(obj, pretty: bool) -> str:
    return json.dumps(obj, sort_keys=True, indent=2 if pretty else None, separators=None if pretty else (",", ":"), ensure_ascii=False, default=_default)


def _default(o):
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, (np.floating,)):
        return float(o)
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, np.bool_):
        return bool(o)
    raise TypeError(f"cannot serialise {type(o).__name__}")


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    pretty = "--pretty" in (argv if argv is not None else sys.argv[1:])
    try:
        args = build_parser().parse_args(argv)
        if not args.command:
            raise ParseError(f"choose a subcommand: {', '.join(COMMANDS)}")
        result = HANDLERS[args.command](_params(args))
        envelope = {"ok": True, "result": result}
        status = 0
    except HypolyError as exc:
        envelope = {"ok": False, "error": {"code": exc.code, "message": str(exc)}}
        status = exc.exit_status
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except (KeyError, TypeError, ValueError) as exc:
        envelope = {"ok": False, "error": {"code": "PARSE_ERROR", "message": f"{type(exc).__name__}: {exc}"}}
        status = 2
    print(_dump(envelope, pretty), file=out)
    return status


def main() -> None:
    sys.exit(run())
