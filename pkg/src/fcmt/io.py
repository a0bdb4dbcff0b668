"""Structure files: a JSON envelope ``{"kind", "format_version", "body"}``.

Only strings and integers appear as data.  Maps whose keys are not
strings (identity tables, composition tables) are written as lists of rows,
so every value round-trips exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

import jsonschema

from .bim import Bimodule, Monad
from .core import FcOracle, Frame, Hor, Path
from .enrich import EnrichedCategory, comp_frame, ids_frame
from .errors import MalformedData, ParseError
from .instances.double import DoubleFc, StrictDoublePresentation
from .instances.monoidal import MonoidalFc, TableMonoidal
from .instances.multicat import MulticatFc, MulticatPresentation
from .instances.span import SpanFc, SpanUniverse

FORMAT_VERSION = 1
BASE_KINDS = ("span-universe", "monoidal", "multicat", "double")
KINDS = BASE_KINDS + ("monad", "bimodule", "enriched", "subset-family")

# ---------------------------------------------------------------------------
# Schemas (shape only; cross-references are checked by the constructors)

_atom = {"type": ["string", "integer"]}
_atoms = {"type": "array", "items": _atom}


def _rows(n: int) -> dict:
    return {"type": "array", "items": {"type": "array", "minItems": n, "maxItems": n}}


def _obj(props: dict, required: list | None = None) -> dict:
    return {"type": "object", "properties": props, "required": required if required is not None else list(props),
            "additionalProperties": False}


_ends = {"type": "array", "items": _atom, "minItems": 2, "maxItems": 2}
_monad_body = _obj({"carrier": _atom, "t": _atom, "mult": {}, "unit": {}})
_category_tables = _obj({"arrows": {"type": "object", "additionalProperties": _ends},
                         "identities": _rows(2), "composition": _rows(3)})

SCHEMAS: dict[str, dict] = {
    "span-universe": _obj({
        "sets": {"type": "object", "additionalProperties": _atoms},
        "functions": {"type": "object", "additionalProperties": _obj(
            {"dom": {"type": "string"}, "cod": {"type": "string"}, "values": _atoms})},
        "spans": {"type": "object", "additionalProperties": _obj(
            {"src": {"type": "string"}, "dst": {"type": "string"}, "apex": _atoms, "left": _atoms, "right": _atoms})},
        "composites": _rows(3),
        "partial_bijections": {"type": "boolean"},
    }, ["sets"]),
    "monoidal": _obj({
        "objects": _atoms, "unit": _atom, "tensor": _rows(3),
        "morphisms": {"type": "object", "additionalProperties": _ends},
        "identities": _rows(2), "composition": _rows(3), "tensor_morphisms": _rows(3),
    }),
    "multicat": _obj({
        "objects": _atoms,
        "operations": {"type": "object", "additionalProperties": _obj({"inputs": _atoms, "output": _atom})},
        "identities": _rows(2), "composition": _rows(3),
        "arity_bound": {"type": "integer", "minimum": 0},
    }),
    "double": _obj({
        "objects": _atoms, "vertical": _category_tables, "horizontal": _category_tables,
        "squares": {"type": "object", "additionalProperties": {"type": "array", "items": _atom,
                                                               "minItems": 4, "maxItems": 4}},
        "hcomp": _rows(3), "vcomp": _rows(3), "h_id_squares": _rows(2), "v_id_squares": _rows(2),
    }),
    "monad": _obj({"base": {"type": "object"}, **_monad_body["properties"]}),
    "bimodule": _obj({"base": {"type": "object"}, "src": _monad_body, "tgt": _monad_body,
                      "m": _atom, "act_src": {}, "act_tgt": {}}),
    "enriched": _obj({"base": {"type": "object"}, "objects": _atoms, "ends": _rows(2), "homs": _rows(3),
                      "comp": _rows(4), "ids": _rows(2)}),
    "subset-family": _obj({"base_set": _atoms, "family": {"type": "array", "items": {
        "type": "array", "prefixItems": [_atom, _atoms], "minItems": 2, "maxItems": 2}}}),
}

ENVELOPE = _obj({"kind": {"enum": list(KINDS)}, "format_version": {"const": FORMAT_VERSION},
                 "body": {"type": "object"}})


# ---------------------------------------------------------------------------
# Typed documents


@dataclass
class Based:
    """A structure living in a base fc-multicategory read from the same file."""

    base_kind: str
    base: Any
    value: Any
    oracle: FcOracle | None = field(default=None, compare=False, repr=False)


@dataclass
class SubsetFamily:
    base_set: tuple
    family: dict


@dataclass
class Document:
    kind: str
    value: Any


def parse_text(text: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None
    _validate(data, ENVELOPE, "envelope")
    _validate(data["body"], SCHEMAS[data["kind"]], data["kind"])
    return data


def _validate(data, schema, what: str) -> None:
    try:
        jsonschema.validate(data, schema, cls=jsonschema.Draft202012Validator)
    except jsonschema.ValidationError as e:
        where = "/".join(str(p) for p in e.absolute_path) or "(top)"
        raise MalformedData(f"{what}: {e.message} at {where}") from None


def load(text: str) -> Document:
    """Parse and build a document; raises ParseError or a construction error."""
    data = parse_text(text)
    return Document(data["kind"], from_json(data["kind"], data["body"]))


def dumps(doc: Document) -> str:
    data = {"kind": doc.kind, "format_version": FORMAT_VERSION, "body": to_json(doc.kind, doc.value)}
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# Base structures


def oracle_for(kind: str, value) -> FcOracle:
    """The (unvalidated) oracle of a base structure."""
    if kind == "span-universe":
        return SpanFc(value)
    if kind == "monoidal":
        return MonoidalFc(value)
    if kind == "multicat":
        return MulticatFc(value)
    if kind == "double":
        return DoubleFc(value)
    raise MalformedData(f"{kind!r} is not a base structure")


def _pairs(rows) -> dict:
    return {a: b for a, b in rows}


def _triples(rows) -> dict:
    return {(a, b): c for a, b, c in rows}


def _span_universe_from(body: dict) -> SpanUniverse:
    return SpanUniverse.build(
        sets=body["sets"],
        functions={n: (f["dom"], f["cod"], f["values"]) for n, f in body.get("functions", {}).items()},
        spans={n: (s["src"], s["dst"], s["apex"], s["left"], s["right"]) for n, s in body.get("spans", {}).items()},
        composites=_triples(body.get("composites", [])),
        restrict_to_partial_bijections=body.get("partial_bijections", False),
    )


def _span_universe_to(u: SpanUniverse) -> dict:
    out: dict = {"sets": {n: list(s.elements) for n, s in u.sets.items()}}
    out["functions"] = {n: {"dom": f.dom.name, "cod": f.cod.name, "values": list(f.values)}
                        for n, f in u.functions.items()}
    out["spans"] = {n: {"src": s.src.name, "dst": s.dst.name, "apex": list(s.apex.elements),
                        "left": list(s.leg_l.values), "right": list(s.leg_r.values)} for n, s in u.spans.items()}
    out["composites"] = [[g, f, h] for (g, f), h in u.composites.items()]
    out["partial_bijections"] = u.restrict_to_partial_bijections
    return out


def _base_from(kind: str, body: dict):
    if kind == "span-universe":
        return _span_universe_from(body)
    if kind == "monoidal":
        return TableMonoidal(
            objects_=list(body["objects"]), unit=body["unit"], tensor_table=_triples(body["tensor"]),
            morphisms={n: tuple(e) for n, e in body["morphisms"].items()},
            identities=_pairs(body["identities"]), composition=_triples(body["composition"]),
            tensor_morphisms=_triples(body["tensor_morphisms"]))
    if kind == "multicat":
        return MulticatPresentation(
            objects=list(body["objects"]),
            operations={n: (tuple(o["inputs"]), o["output"]) for n, o in body["operations"].items()},
            identities=_pairs(body["identities"]),
            composition={(op, tuple(ch)): res for op, ch, res in body["composition"]},
            arity_bound=body["arity_bound"])
    if kind == "double":
        v, h = body["vertical"], body["horizontal"]
        return StrictDoublePresentation(
            objects=list(body["objects"]),
            v_arrows={n: tuple(e) for n, e in v["arrows"].items()}, v_identities=_pairs(v["identities"]),
            v_composition=_triples(v["composition"]),
            h_arrows={n: tuple(e) for n, e in h["arrows"].items()}, h_identities=_pairs(h["identities"]),
            h_composition=_triples(h["composition"]),
            squares={n: tuple(s) for n, s in body["squares"].items()},
            square_hcomp=_triples(body["hcomp"]), square_vcomp=_triples(body["vcomp"]),
            h_id_squares=_pairs(body["h_id_squares"]), v_id_squares=_pairs(body["v_id_squares"]))
    raise MalformedData(f"{kind!r} is not a base structure")


def _base_to(kind: str, x) -> dict:
    if kind == "span-universe":
        return _span_universe_to(x)
    if kind == "monoidal":
        return {"objects": list(x.objects_), "unit": x.unit,
                "tensor": [[a, b, c] for (a, b), c in x.tensor_table.items()],
                "morphisms": {n: list(e) for n, e in x.morphisms.items()},
                "identities": [[a, f] for a, f in x.identities.items()],
                "composition": [[g, f, h] for (g, f), h in x.composition.items()],
                "tensor_morphisms": [[f, g, h] for (f, g), h in x.tensor_morphisms.items()]}
    if kind == "multicat":
        return {"objects": list(x.objects),
                "operations": {n: {"inputs": list(i), "output": o} for n, (i, o) in x.operations.items()},
                "identities": [[a, f] for a, f in x.identities.items()],
                "composition": [[op, list(ch), r] for (op, ch), r in x.composition.items()],
                "arity_bound": x.arity_bound}
    if kind == "double":
        cat = lambda arrows, ids, comp: {"arrows": {n: list(e) for n, e in arrows.items()},
                                         "identities": [[a, f] for a, f in ids.items()],
                                         "composition": [[g, f, h] for (g, f), h in comp.items()]}
        return {"objects": list(x.objects),
                "vertical": cat(x.v_arrows, x.v_identities, x.v_composition),
                "horizontal": cat(x.h_arrows, x.h_identities, x.h_composition),
                "squares": {n: list(s) for n, s in x.squares.items()},
                "hcomp": [[s, t, u] for (s, t), u in x.square_hcomp.items()],
                "vcomp": [[s, t, u] for (s, t), u in x.square_vcomp.items()],
                "h_id_squares": [[f, s] for f, s in x.h_id_squares.items()],
                "v_id_squares": [[m, s] for m, s in x.v_id_squares.items()]}
    raise MalformedData(f"{kind!r} is not a base structure")


def _nested_base(body: dict) -> tuple[str, Any, FcOracle]:
    b = body["base"]
    _validate(b, _obj({"kind": {"enum": list(BASE_KINDS)}, "body": {"type": "object"}}), "base")
    _validate(b["body"], SCHEMAS[b["kind"]], f"base {b['kind']}")
    value = _base_from(b["kind"], b["body"])
    return b["kind"], value, oracle_for(b["kind"], value)


# ---------------------------------------------------------------------------
# Structures inside a base


def _hor(V: FcOracle, name, x, y) -> Hor:
    h = Hor(name, x, y)
    if not V.has_horizontal(h):
        raise MalformedData(f"no horizontal 1-cell {name!r} from {x!r} to {y!r}")
    return h


def _carrier(V: FcOracle, x):
    if not V.has_object(x):
        raise MalformedData(f"unknown object {x!r}")
    return x


def _monad_from(V: FcOracle, body: dict) -> Monad:
    x = _carrier(V, body["carrier"])
    t = _hor(V, body["t"], x, x)
    i = V.id_vert(x)
    mult = V.decode_cell(Frame(Path.of(t, t), i, i, t), body["mult"])
    unit = V.decode_cell(Frame(Path.empty(x), i, i, t), body["unit"])
    return Monad(x, t, mult, unit)


def _monad_to(V: FcOracle, T: Monad) -> dict:
    return {"carrier": T.x, "t": T.t.name, "mult": V.encode_cell(T.mult), "unit": V.encode_cell(T.unit)}


def _bimodule_from(V: FcOracle, body: dict) -> Bimodule:
    S, T = _monad_from(V, body["src"]), _monad_from(V, body["tgt"])
    m = _hor(V, body["m"], S.x, T.x)
    i, j = V.id_vert(S.x), V.id_vert(T.x)
    rho = V.decode_cell(Frame(Path.of(S.t, m), i, j, m), body["act_src"])
    lam = V.decode_cell(Frame(Path.of(m, T.t), i, j, m), body["act_tgt"])
    return Bimodule(m, S, T, rho, lam)


def _bimodule_to(V: FcOracle, M: Bimodule) -> dict:
    return {"src": _monad_to(V, M.src), "tgt": _monad_to(V, M.tgt), "m": M.m.name,
            "act_src": V.encode_cell(M.act_src), "act_tgt": V.encode_cell(M.act_tgt)}


def _enriched_from(V: FcOracle, body: dict) -> EnrichedCategory:
    obs = tuple(body["objects"])
    ends = {a: _carrier(V, x) for a, x in body["ends"]}
    if set(ends) != set(obs):
        raise MalformedData("ends must list every object exactly once")
    homs = {}
    for a, b, name in body["homs"]:
        if a not in ends or b not in ends:
            raise MalformedData(f"hom entry mentions unknown object ({a!r}, {b!r})")
        homs[(a, b)] = _hor(V, name, ends[a], ends[b])
    C = EnrichedCategory(obs, ends, homs, {}, {})
    for a, b, c, data in body["comp"]:
        if (a, b) not in homs or (b, c) not in homs or (a, c) not in homs:
            raise MalformedData(f"composition entry at ({a!r}, {b!r}, {c!r}) refers to a missing hom")
        C.comp[(a, b, c)] = V.decode_cell(comp_frame(V, C, a, b, c), data)
    for a, data in body["ids"]:
        if (a, a) not in homs:
            raise MalformedData(f"identity entry at {a!r} refers to a missing hom")
        C.ids[a] = V.decode_cell(ids_frame(V, C, a), data)
    return C


def _enriched_to(V: FcOracle, C: EnrichedCategory) -> dict:
    return {"objects": list(C.objects), "ends": [[a, C.ends[a]] for a in C.objects],
            "homs": [[a, b, h.name] for (a, b), h in C.homs.items()],
            "comp": [[a, b, c, V.encode_cell(cell)] for (a, b, c), cell in C.comp.items()],
            "ids": [[a, V.encode_cell(cell)] for a, cell in C.ids.items()]}


def from_json(kind: str, body: dict):
    try:
        if kind in BASE_KINDS:
            return _base_from(kind, body)
        if kind == "subset-family":
            labels = [lab for lab, _ in body["family"]]
            if len(set(labels)) != len(labels):
                raise MalformedData("repeated subset label")
            return SubsetFamily(tuple(body["base_set"]), {lab: tuple(c) for lab, c in body["family"]})
        bkind, base, V = _nested_base(body)
        build = {"monad": _monad_from, "bimodule": _bimodule_from, "enriched": _enriched_from}[kind]
        return Based(bkind, base, build(V, body), V)
    except (KeyError, TypeError, ValueError) as e:
        # shape problems the schema cannot express (e.g. unknown names in tables)
        raise MalformedData(f"{kind}: malformed body ({type(e).__name__}: {e})") from None


def to_json(kind: str, value) -> dict:
    if kind in BASE_KINDS:
        return _base_to(kind, value)
    if kind == "subset-family":
        return {"base_set": list(value.base_set), "family": [[lab, list(c)] for lab, c in value.family.items()]}
    V = value.oracle or oracle_for(value.base_kind, value.base)
    dump = {"monad": _monad_to, "bimodule": _bimodule_to, "enriched": _enriched_to}[kind]
    return {"base": {"kind": value.base_kind, "body": _base_to(value.base_kind, value.base)}, **dump(V, value.value)}


def based(base_kind: str, base, value) -> Based:
    return Based(base_kind, base, value, oracle_for(base_kind, base))
