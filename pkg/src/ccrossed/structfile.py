"""JSON structure files: one structure per file, explicit tables only.

Layout::

    {"format": 1, "kind": "<kind>", "body": {...}}

Binary tables are nested objects ``{a: {b: value}}``; the associator is a
list of ``[x, y, z, arrow]`` rows. The body schemas are in :data:`SCHEMA`
and are enforced with ``additionalProperties: false``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

import jsonschema

from .actions import CAction, SplitExtension
from .cgroup import CGroup, CGroupHom, PlainGroup
from .classical import CrossedModule, GroupGroupoid
from .crossed import CCrossedModule
from .monoidal import CategoricalGroup, FiniteGroupoid, MonoidalStructure
from .report import StructureError
from .setoid import FiniteSetoid

FORMAT_VERSION = 1
KINDS = ("setoid", "cgroup", "catgroup", "xmod", "gg", "ccm", "extension", "action")


class StructureFileError(ValueError):
    """A structure file violates the schema or names unknown ids."""


def _ids():
    return {"type": "array", "items": {"type": "string"}}


def _map():
    return {"type": "object", "additionalProperties": {"type": "string"}}


def _table():
    return {"type": "object", "additionalProperties": _map()}


def _partition():
    return {"type": "array", "items": _ids()}


def _obj(props: dict, required=None) -> dict:
    return {"type": "object", "properties": props, "required": list(required or props),
            "additionalProperties": False}


_GROUP = _obj({"name": {"type": "string"}, "elements": _ids(), "add": _table(), "zero": {"type": "string"},
               "neg": _map()}, ["elements", "add", "zero", "neg"])
_CGROUP = _obj({"name": {"type": "string"}, "elements": _ids(), "partition": _partition(), "add": _table(),
                "zero": {"type": "string"}, "neg": _map()}, ["elements", "partition", "add", "zero", "neg"])
_GROUPOID_PROPS = {
    "objects": _ids(),
    "morphisms": {"type": "object", "additionalProperties": {
        "type": "array", "items": {"type": "string"}, "minItems": 2, "maxItems": 2}},
    "comp": _table(), "ident": _map(), "inv": _map(),
}
_GROUPOID = _obj(_GROUPOID_PROPS)
_CATGROUP = _obj({**_GROUPOID_PROPS, "name": {"type": "string"}, "obj_sum": _table(), "mor_sum": _table(),
                  "zero": {"type": "string"},
                  "alpha": {"type": "array", "items": {"type": "array", "items": {"type": "string"},
                                                       "minItems": 4, "maxItems": 4}},
                  "lambda": _map(), "rho": _map(), "neg_obj": _map(), "eps": _map(), "delta": _map()},
                 [*_GROUPOID_PROPS, "obj_sum", "mor_sum", "zero", "alpha", "lambda", "rho", "neg_obj", "eps",
                  "delta"])

SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "ccrossed structure file",
    "type": "object",
    "required": ["format", "kind", "body"],
    "additionalProperties": False,
    "properties": {
        "format": {"const": FORMAT_VERSION},
        "kind": {"enum": list(KINDS)},
        "body": {"type": "object"},
    },
    "allOf": [
        {"if": {"properties": {"kind": {"const": k}}, "required": ["kind"]},
         "then": {"properties": {"body": {"$ref": f"#/$defs/{k}"}}}}
        for k in KINDS
    ],
    "$defs": {
        "group": _GROUP,
        "cgroup": _CGROUP,
        "setoid": _obj({"elements": _ids(), "partition": _partition()}),
        "catgroup": _CATGROUP,
        "xmod": _obj({"name": {"type": "string"}, "A": _GROUP, "B": _GROUP, "mu": _map(), "action": _table()},
                     ["A", "B", "mu", "action"]),
        "gg": _obj({"name": {"type": "string"}, "groupoid": _GROUPOID, "obj_group": _GROUP, "mor_group": _GROUP},
                   ["groupoid", "obj_group", "mor_group"]),
        "ccm": _obj({"name": {"type": "string"}, "G": _CGROUP, "H": _CGROUP, "bd": _map(), "action": _table(),
                     "special_H": _partition(), "special_G": _partition()},
                    ["G", "H", "bd", "action", "special_H"]),
        "extension": _obj({"A": _CGROUP, "E": _CGROUP, "B": _CGROUP, "i": _map(), "p": _map(), "s": _map()}),
        "action": _obj({"B": _CGROUP, "A": _CGROUP, "table": _table()}),
    },
}


@dataclass(frozen=True)
class StructureFile:
    kind: str
    value: Any
    version: int = FORMAT_VERSION


# ---------------------------------------------------------------- decoding

def _flat(table: dict, where: str = "") -> dict:
    return {(a, b): v for a, row in table.items() for b, v in row.items()}


def _group(d: dict) -> PlainGroup:
    return PlainGroup(tuple(d["elements"]), _flat(d["add"], "add"), d["zero"], dict(d["neg"]), d.get("name", ""))


def _cgroup(d: dict) -> CGroup:
    return CGroup(FiniteSetoid(d["elements"], d["partition"]), _flat(d["add"], "add"), d["zero"],
                  dict(d["neg"]), d.get("name", ""))


def _groupoid(d: dict) -> FiniteGroupoid:
    return FiniteGroupoid(tuple(d["objects"]), {f: tuple(st) for f, st in d["morphisms"].items()},
                          _flat(d["comp"], "comp"), dict(d["ident"]), dict(d["inv"]))


def _catgroup(d: dict) -> CategoricalGroup:
    alpha = {}
    for x, y, z, m in d["alpha"]:
        if (x, y, z) in alpha:
            raise StructureError(f"alpha row ({x!r}, {y!r}, {z!r}) given twice")
        alpha[x, y, z] = m
    monoidal = MonoidalStructure(_flat(d["obj_sum"], "obj_sum"), _flat(d["mor_sum"], "mor_sum"), d["zero"],
                                 alpha, dict(d["lambda"]), dict(d["rho"]))
    return CategoricalGroup(_groupoid(d), monoidal, dict(d["neg_obj"]), dict(d["eps"]), dict(d["delta"]),
                            d.get("name", ""))


def _decode(kind: str, d: dict):
    if kind == "setoid":
        return FiniteSetoid(d["elements"], d["partition"])
    if kind == "cgroup":
        return _cgroup(d)
    if kind == "catgroup":
        return _catgroup(d)
    if kind == "xmod":
        return CrossedModule(_group(d["A"]), _group(d["B"]), dict(d["mu"]), _flat(d["action"], "action"),
                             d.get("name", ""))
    if kind == "gg":
        return GroupGroupoid(_groupoid(d["groupoid"]), _group(d["obj_group"]), _group(d["mor_group"]),
                             d.get("name", ""))
    if kind == "ccm":
        G, H = _cgroup(d["G"]), _cgroup(d["H"])
        special_G = FiniteSetoid(G.elements, d["special_G"]) if "special_G" in d else None
        return CCrossedModule(G, H, CGroupHom(G, H, dict(d["bd"])), CAction(H, G, _flat(d["action"], "action")),
                              FiniteSetoid(H.elements, d["special_H"]), special_G, d.get("name", ""))
    if kind == "extension":
        A, E, B = _cgroup(d["A"]), _cgroup(d["E"]), _cgroup(d["B"])
        return SplitExtension(A, E, B, CGroupHom(A, E, dict(d["i"])), CGroupHom(E, B, dict(d["p"])),
                              CGroupHom(B, E, dict(d["s"])))
    if kind == "action":
        B, A = _cgroup(d["B"]), _cgroup(d["A"])
        return CAction(B, A, _flat(d["table"], "table"))
    raise StructureFileError(f"unknown kind {kind!r}")


def parse_structure(text: str) -> StructureFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StructureFileError(f"line {exc.lineno}: invalid JSON: {exc.msg}") from None
    _validate(doc)
    kind = doc["kind"]
    try:
        value = _decode(kind, doc["body"])
    except StructureError as exc:
        raise StructureFileError(f"body: {exc}") from None
    return StructureFile(kind, value, doc["format"])


_VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)


def _validate(doc) -> None:
    err = jsonschema.exceptions.best_match(_VALIDATOR.iter_errors(doc))
    if err is not None:
        path = ".".join(str(p) for p in err.absolute_path)
        raise StructureFileError(f"{path or '<root>'}: {err.message}")


# ---------------------------------------------------------------- encoding

def _nest(elements_a, elements_b, table) -> dict:
    return {a: {b: table[a, b] for b in elements_b if (a, b) in table} for a in elements_a}


def _enc_group(G: PlainGroup) -> dict:
    d = {"name": G.name} if G.name else {}
    d.update(elements=list(G.elements), add=_nest(G.elements, G.elements, G.add), zero=G.zero,
             neg={a: G.neg[a] for a in G.elements})
    return d


def _enc_cgroup(G: CGroup) -> dict:
    d = {"name": G.name} if G.name else {}
    d.update(elements=list(G.elements), partition=[list(b) for b in G.carrier.blocks],
             add=_nest(G.elements, G.elements, G.add), zero=G.zero, neg={a: G.neg[a] for a in G.elements})
    return d


def _enc_groupoid(G: FiniteGroupoid) -> dict:
    mors = list(G.morphisms)
    comp: dict = {g: {} for g in mors}
    for f in mors:
        for g in mors:
            if (g, f) in G.comp:
                comp[g][f] = G.comp[g, f]
    return {"objects": list(G.objects), "morphisms": {f: list(G.morphisms[f]) for f in mors},
            "comp": {g: row for g, row in comp.items() if row},
            "ident": {x: G.ident[x] for x in G.objects}, "inv": {f: G.inv[f] for f in mors}}


def _enc_map(h: CGroupHom) -> dict:
    return {a: h(a) for a in h.source.elements}


def _encode(kind: str, v) -> dict:
    if kind == "setoid":
        return {"elements": list(v.elements), "partition": [list(b) for b in v.blocks]}
    if kind == "cgroup":
        return _enc_cgroup(v)
    if kind == "catgroup":
        obs, mors = v.objects, v.morphisms
        d = {"name": v.name} if v.name else {}
        d.update(_enc_groupoid(v.groupoid))
        d.update(obj_sum=_nest(obs, obs, v.monoidal.obj_sum), mor_sum=_nest(mors, mors, v.monoidal.mor_sum),
                 zero=v.zero,
                 alpha=[[x, y, z, v.alpha(x, y, z)] for x in obs for y in obs for z in obs],
                 **{"lambda": {x: v.lam(x) for x in obs}},
                 rho={x: v.rho(x) for x in obs}, neg_obj={x: v.oneg(x) for x in obs},
                 eps={x: v.eps[x] for x in obs}, delta={x: v.delta[x] for x in obs})
        return d
    if kind == "xmod":
        d = {"name": v.name} if v.name else {}
        d.update(A=_enc_group(v.A), B=_enc_group(v.B), mu={a: v.mu[a] for a in v.A.elements},
                 action=_nest(v.B.elements, v.A.elements, v.action))
        return d
    if kind == "gg":
        d = {"name": v.name} if v.name else {}
        d.update(groupoid=_enc_groupoid(v.groupoid), obj_group=_enc_group(v.obj_group),
                 mor_group=_enc_group(v.mor_group))
        return d
    if kind == "ccm":
        d = {"name": v.name} if v.name else {}
        d.update(G=_enc_cgroup(v.G), H=_enc_cgroup(v.H), bd=_enc_map(v.bd),
                 action=_nest(v.H.elements, v.G.elements, v.act.table),
                 special_H=[list(b) for b in v.special_H.blocks])
        if v.special_G is not None:
            d["special_G"] = [list(b) for b in v.special_G.blocks]
        return d
    if kind == "extension":
        return {"A": _enc_cgroup(v.A), "E": _enc_cgroup(v.E), "B": _enc_cgroup(v.B),
                "i": _enc_map(v.i), "p": _enc_map(v.p), "s": _enc_map(v.s)}
    if kind == "action":
        return {"B": _enc_cgroup(v.B), "A": _enc_cgroup(v.A), "table": _nest(v.B.elements, v.A.elements, v.table)}
    raise StructureFileError(f"unknown kind {kind!r}")


def emit_structure(sf: StructureFile) -> str:
    doc = {"format": sf.version, "kind": sf.kind, "body": _encode(sf.kind, sf.value)}
    return json.dumps(doc, indent=1, ensure_ascii=False) + "\n"


def kind_of(value) -> str:
    for cls, kind in ((FiniteSetoid, "setoid"), (CGroup, "cgroup"), (CategoricalGroup, "catgroup"),
                      (CrossedModule, "xmod"), (GroupGroupoid, "gg"), (CCrossedModule, "ccm"),
                      (SplitExtension, "extension"), (CAction, "action")):
        if isinstance(value, cls):
            return kind
    if isinstance(value, PlainGroup):
        return "cgroup"
    raise TypeError(f"no structure-file kind for {type(value).__name__}")


def to_structure_file(value) -> StructureFile:
    kind = kind_of(value)
    if isinstance(value, PlainGroup):
        value = value.as_cgroup()
    return StructureFile(kind, value)


def dumps(value) -> str:
    return emit_structure(to_structure_file(value))


def load(path) -> StructureFile:
    with open(path, encoding="utf-8") as fh:
        return parse_structure(fh.read())


def dump(value, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(value))
