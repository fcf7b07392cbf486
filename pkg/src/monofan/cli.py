"""Command line interface over JSON documents.

Every input document has a top-level ``kind``.  Output is deterministic:
sorted keys, sorted point and relation lists, and integers beyond the
53-bit safe range written as decimal strings.
"""
from __future__ import annotations

import argparse
import functools
import json
import re
import sys
from typing import Any

import jsonschema

from . import algebra as alg
from . import classify as cl
from . import fanspace as fs
from . import lattice as lat
from . import monoid as mon
from . import polyhedral as poly
from .errors import DocumentError, MonofanError

SAFE = 2 ** 53

# ---------------------------------------------------------------------------
# schemas

_INT = {"anyOf": [{"type": "integer"}, {"type": "string", "pattern": "^-?[0-9]+$"}]}
_VEC = {"type": "array", "items": _INT}
_MAT = {"type": "array", "items": _VEC}
_NAT = {"type": "integer", "minimum": 0}


def _obj(props: dict, required: list) -> dict:
    return {"type": "object", "properties": props, "required": required, "additionalProperties": False}


_MONOID = _obj({"kind": {"const": "monoid"}, "ambient_rank": _NAT, "generators": _MAT}, ["ambient_rank", "generators"])

SCHEMAS = {
    "monoid": _MONOID,
    "presented_monoid": _obj(
        {"kind": {"const": "presented_monoid"}, "generators": _NAT,
         "relations": {"type": "array", "items": {"type": "array", "items": _VEC, "minItems": 2, "maxItems": 2}}},
        ["kind", "generators", "relations"]),
    "cone": _obj({"kind": {"const": "cone"}, "ambient_rank": _NAT, "rays": _MAT}, ["kind", "ambient_rank", "rays"]),
    "classic_fan": _obj(
        {"kind": {"const": "classic_fan"}, "lattice_rank": _NAT,
         "cones": {"type": "array", "items": _obj({"rays": _MAT}, ["rays"])}},
        ["kind", "lattice_rank", "cones"]),
    "polytope": _obj({"kind": {"const": "polytope"}, "ambient_rank": _NAT, "vertices": _MAT},
                     ["kind", "ambient_rank", "vertices"]),
    "monoided_space": _obj(
        {"kind": {"const": "monoided_space"},
         "points": {"type": "array", "items": {"type": "string"}},
         "order": {"type": "array", "items": {"type": "array", "items": {"type": "string"}, "minItems": 2, "maxItems": 2}},
         "stalks": {"type": "object", "additionalProperties": _MONOID},
         "gen_maps": {"type": "object", "additionalProperties": _MAT}},
        ["kind", "points", "order", "stalks"]),
}


def _int(x) -> int:
    return int(x)


def _vec(xs) -> tuple:
    return tuple(_int(x) for x in xs)


def _mat(rows) -> tuple:
    return tuple(_vec(r) for r in rows)


def _enc(x: int):
    return str(x) if abs(x) > SAFE else x


def _enc_vec(v) -> list:
    return [_enc(x) for x in v]


def _enc_mat(A) -> list:
    return [_enc_vec(r) for r in A]


# ---------------------------------------------------------------------------
# decoding


@functools.lru_cache(maxsize=None)
def _validator(kind: str):
    cls = jsonschema.validators.validator_for(SCHEMAS[kind])
    cls.check_schema(SCHEMAS[kind])
    return cls(SCHEMAS[kind])


def _validate(doc: Any, kind: str):
    e = jsonschema.exceptions.best_match(_validator(kind).iter_errors(doc))
    if e is not None:
        where = "/".join(map(str, e.absolute_path)) or "<root>"
        raise DocumentError(f"{kind} document invalid at {where}: {e.message}")


def _monoid_from(doc) -> mon.AffineMonoid:
    n = doc["ambient_rank"]
    gens = _mat(doc["generators"])
    if any(len(g) != n for g in gens):
        raise DocumentError(f"generator length differs from ambient_rank {n}")
    return mon.AffineMonoid(n, gens)


def _space_from(doc) -> fs.MonoidedSpace:
    points = doc["points"]
    if any("->" in p for p in points):
        raise DocumentError("point names may not contain '->'")
    maps = {}
    for key, A in doc.get("gen_maps", {}).items():
        parts = key.split("->")
        if len(parts) != 2:
            raise DocumentError(f"gen_maps key {key!r} is not of the form 'q->p'")
        maps[(parts[0], parts[1])] = _mat(A)
    try:
        return fs.MonoidedSpace(tuple(points), frozenset(tuple(o) for o in doc["order"]),
                                {p: _monoid_from(s) for p, s in doc["stalks"].items()}, maps)
    except ValueError as e:
        if isinstance(e, MonofanError):
            raise
        raise DocumentError(str(e)) from None


def parse_document(doc: Any):
    """``(kind, object)`` for a decoded JSON document."""
    if not isinstance(doc, dict) or doc.get("kind") not in SCHEMAS:
        raise DocumentError(f"unknown or missing kind; expected one of {sorted(SCHEMAS)}")
    kind = doc["kind"]
    _validate(doc, kind)
    if kind == "monoid":
        return kind, _monoid_from(doc)
    if kind == "presented_monoid":
        k = doc["generators"]
        rels = tuple((_vec(u), _vec(v)) for u, v in doc["relations"])
        if any(len(u) != k or len(v) != k for u, v in rels):
            raise DocumentError("relation length differs from the generator count")
        return kind, mon.PresentedMonoid(k, rels)
    if kind == "cone":
        rays = _mat(doc["rays"])
        if any(len(r) != doc["ambient_rank"] for r in rays):
            raise DocumentError("ray length differs from ambient_rank")
        return kind, poly.Cone(doc["ambient_rank"], rays)
    if kind == "classic_fan":
        d = doc["lattice_rank"]
        cones = [_mat(c["rays"]) for c in doc["cones"]]
        if any(len(r) != d for c in cones for r in c):
            raise DocumentError("ray length differs from lattice_rank")
        return kind, poly.ClassicFan.from_maximal(d, cones)
    if kind == "polytope":
        verts = _mat(doc["vertices"])
        if any(len(v) != doc["ambient_rank"] for v in verts):
            raise DocumentError("vertex length differs from ambient_rank")
        return kind, poly.Polytope(doc["ambient_rank"], verts)
    return kind, _space_from(doc)


def load(path: str):
    try:
        if path == "-":
            doc = json.load(sys.stdin)
        else:
            with open(path) as fh:
                doc = json.load(fh)
    except json.JSONDecodeError as e:
        raise DocumentError(f"not valid JSON: {e}") from None
    except OSError as e:
        raise DocumentError(str(e)) from None
    return parse_document(doc)


# ---------------------------------------------------------------------------
# encoding


def monoid_doc(S: mon.AffineMonoid) -> dict:
    return {"kind": "monoid", "ambient_rank": S.ambient_rank, "generators": _enc_mat(sorted(S.generators))}


def space_doc(X: fs.MonoidedSpace) -> dict:
    maps = {}
    for (q, p), A in X.gen_maps.items():
        if A != lat.identity(len(A)) or len(A) != X.stalks[q].ambient_rank:
            maps[f"{q}->{p}"] = _enc_mat(A)
    return {
        "kind": "monoided_space",
        "points": sorted(X.points),
        "order": sorted([p, q] for p, q in X.covers),
        "stalks": {p: monoid_doc(X.stalks[p]) for p in X.points},
        "gen_maps": maps,
    }


def fan_doc(F: poly.ClassicFan) -> dict:
    return {"kind": "classic_fan", "lattice_rank": F.lattice_rank,
            "cones": sorted(({"rays": _enc_mat(c.rays)} for c in F.maximal_cones), key=lambda c: c["rays"])}


def presentation_doc(P: alg.AlgebraPresentation) -> dict:
    names = alg.variable_names(P.variable_count)
    return {
        "kind": "algebra_presentation",
        "base_ring": P.base_ring,
        "variables": names,
        "monoid_generators": _enc_mat(P.monoid.generators),
        "relations": [[_enc_vec(u), _enc_vec(v)] for u, v in P.relations],
        "equations": [f"{alg.format_monomial(u, names)} = {alg.format_monomial(v, names)}" for u, v in P.relations],
        "completeness_degree": P.completeness_degree,
        "certified_next_degree": P.certified_next_degree,
    }


def atlas_doc(A: alg.SchemeAtlas) -> dict:
    return {
        "kind": "scheme_atlas",
        "generic_point": A.generic,
        "charts": {name: presentation_doc(P) for name, P in A.charts.items()},
        "overlaps": [
            {"source": o.source, "target": o.target, "gamma": o.gamma, "s": _enc_vec(o.s),
             "s_exponent": _enc_vec(o.s_exponent), "transition": _enc_mat(o.images)}
            for _, o in sorted(A.overlaps.items())
        ],
        "non_affine": sorted([list(p) for p in A.non_affine]),
        "inconsistencies": alg.atlas_inconsistencies(A),
    }


def verdict_doc(v: cl.Verdict) -> dict:
    return {
        "kind": "verdict",
        "is_fan": v.is_fan,
        "irreducible": v.irreducible,
        "finite_type": v.finite_type,
        "integral": v.integral,
        "normal": v.normal,
        "non_normal": [[p, _enc_vec(w)] for p, w in v.non_normal],
        "separated": v.separated,
        "violations": [list(x) for x in v.violations],
        "classic_toric": v.classic_toric,
        "realized": fan_doc(v.realized) if v.realized is not None else None,
        "failures": list(v.failures),
        "notes": list(v.notes),
        "report": verdict_line(v),
    }


def verdict_line(v: cl.Verdict) -> str:
    if v.classic_toric:
        return "classic toric"
    parts = [f"not classic toric: failed {', '.join(v.failures) or 'unknown'}"]
    for sigma, tau, why in v.violations:
        parts.append(f"charts {sigma} and {tau}: {why}")
    for p, w in v.non_normal:
        parts.append(f"stalk at {p} misses {list(w)}")
    return "; ".join(parts)


def markdown_report(v: cl.Verdict, title: str = "Classification") -> str:
    def fmt(x):
        return "not evaluated" if x is None else ("yes" if x else "no")

    lines = [f"# {title}", "", f"**Verdict:** {verdict_line(v)}", "", "| check | result |", "|---|---|"]
    for name in ("is_fan", "irreducible", "finite_type", "integral", "normal", "separated"):
        lines.append(f"| {name} | {fmt(getattr(v, name))} |")
    if v.non_normal:
        lines += ["", "## Non-saturated stalks", ""]
        lines += [f"- `{p}`: `{list(w)}` lies in the saturation but not in the stalk" for p, w in v.non_normal]
    if v.violations:
        lines += ["", "## Separatedness violations", ""]
        lines += [f"- `{s}`, `{t}`: {why}" for s, t, why in v.violations]
    if v.realized is not None:
        lines += ["", "## Realized fan", "", f"lattice rank {v.realized.lattice_rank}", ""]
        lines += [f"- cone over `{[list(r) for r in c.rays]}`" for c in v.realized.maximal_cones]
    if v.notes:
        lines += ["", "## Notes", ""] + [f"- {n}" for n in v.notes]
    return "\n".join(lines) + "\n"


def dot_graph(X: fs.MonoidedSpace) -> str:
    lines = ["digraph specialization {", "  rankdir=BT;"]
    for p in sorted(X.points):
        gens = sorted(mon.reduced(X.stalks[p]).generators)
        label = p + "\\n" + " ".join("(" + ",".join(map(str, g)) + ")" for g in gens)
        lines.append(f'  "{p}" [label="{label}"];')
    for p, q in sorted(X.covers):
        lines.append(f'  "{p}" -> "{q}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands


_FLAT = re.compile(r'\[([\s\d,"-]*)\]')


def _dump(obj) -> str:
    text = json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)
    # integer vectors on one line
    text = _FLAT.sub(lambda m: "[" + ", ".join(x.strip() for x in m.group(1).split(",") if x.strip()) + "]", text)
    return text + "\n"


def _expect(kind, allowed):
    if kind not in allowed:
        raise DocumentError(f"expected a document of kind {' or '.join(allowed)}, got {kind}")


def _as_space(kind, obj) -> fs.MonoidedSpace:
    if kind == "monoided_space":
        return obj
    if kind == "classic_fan":
        return fs.from_classic_fan(obj)
    if kind == "monoid":
        return fs.spec(obj)
    if kind == "polytope":
        return fs.from_classic_fan(poly.normal_fan(obj))
    raise DocumentError(f"cannot read a {kind} document as a space")


def run(args) -> tuple[int, str]:
    kind, obj = load(args.input)
    cmd = args.command
    if cmd == "spec":
        _expect(kind, ["monoid"])
        return 0, _dump(space_doc(fs.spec(obj)))
    if cmd == "convert":
        _expect(kind, ["classic_fan", "polytope"])
        return 0, _dump(space_doc(_as_space(kind, obj)))
    if cmd == "hilbert":
        _expect(kind, ["cone"])
        return 0, _dump({"kind": "hilbert_basis", "ambient_rank": obj.ambient_rank,
                         "elements": _enc_mat(poly.hilbert_basis(obj))})
    if cmd == "saturate":
        _expect(kind, ["monoid"])
        w = mon.saturation_witness(obj)
        return 0, _dump({"kind": "saturation", "saturated": w is None,
                         "witness": None if w is None else _enc_vec(w),
                         "saturation": monoid_doc(mon.reduced(mon.saturation(obj)))})
    if cmd == "algebra":
        _expect(kind, ["monoid", "monoided_space", "classic_fan"])
        if kind == "monoid":
            return 0, _dump(presentation_doc(alg.monoid_algebra(obj, args.base, args.degree)))
        X = _as_space(kind, obj)
        charts = {p: presentation_doc(alg.monoid_algebra(X.stalks[p], args.base, args.degree))
                  for p in X.maximal_points}
        return 0, _dump({"kind": "algebra_presentations", "charts": charts})
    if cmd == "atlas":
        _expect(kind, ["monoided_space", "classic_fan", "monoid"])
        return 0, _dump(atlas_doc(alg.scheme_atlas(_as_space(kind, obj), args.base, args.degree)))
    if cmd in ("classify", "report"):
        if kind == "presented_monoid":
            v = cl.classify_presented(obj, args.degree)
        else:
            v = cl.classify(_as_space(kind, obj))
        text = _dump(verdict_doc(v)) if cmd == "classify" else markdown_report(v)
        return (0 if v.classic_toric else 1), text
    if cmd == "dot":
        return 0, dot_graph(_as_space(kind, obj))
    raise DocumentError(f"unknown command {cmd}")


@functools.lru_cache(maxsize=None)
def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="monofan", description="Monoid spectra, abstract fans and toric classification.")
    sub = ap.add_subparsers(dest="command", required=True)
    helps = {
        "spec": "spectrum of a monoid as a space document",
        "convert": "classic fan or polytope to a space document",
        "hilbert": "Hilbert basis of a pointed cone",
        "saturate": "saturation of a monoid with a witness",
        "algebra": "binomial presentation of monoid algebras",
        "atlas": "chart presentations and transition maps",
        "classify": "classic-toric verdict (exit 1 when negative)",
        "dot": "specialization poset in DOT format",
        "report": "markdown verdict (exit 1 when negative)",
    }
    for name, h in helps.items():
        p = sub.add_parser(name, help=h)
        p.add_argument("input", nargs="?", default="-", help="JSON document path, '-' for stdin")
        p.add_argument("--degree", "-D", type=int, default=6, help="degree bound for relations and Gilmer checks")
        p.add_argument("--base", default="k", help="base ring tag")
        p.add_argument("--seedless", action="store_true", help="accepted for compatibility; output is always deterministic")
        p.add_argument("--output", "-o", default=None, help="write to a file instead of stdout")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code, text = run(args)
    except (MonofanError, ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except NotImplementedError as e:
        print(f"unsupported: {e}", file=sys.stderr)
        return 2
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
