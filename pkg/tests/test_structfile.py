import json
from pathlib import Path

import jsonschema
import pytest

from conftest import catgroup, parity_extension, s3_extension, z4_mod2
from ccrossed import groups
from ccrossed.actions import induced_action
from ccrossed.classical import gg_from_xmod, inner_xmod
from ccrossed.kernels import build_cssc
from ccrossed.setoid import FiniteSetoid
from ccrossed.structfile import (
    SCHEMA, StructureFile, StructureFileError, dumps, emit_structure, parse_structure,
)

DOCS_SCHEMA = Path(__file__).resolve().parent.parent / "docs" / "structure.schema.json"


def samples():
    X, _ = build_cssc(catgroup("pair_z3"))
    return {
        "setoid": FiniteSetoid(list("0123"), [["0", "2"], ["1", "3"]]),
        "cgroup": z4_mod2(),
        "catgroup": catgroup("pair_z2"),
        "skeletal": catgroup("skeletal"),
        "xmod": inner_xmod(groups.symmetric(3)),
        "gg": gg_from_xmod(inner_xmod(groups.cyclic(3))),
        "ccm": X,
        "extension": s3_extension(),
        "parity_extension": parity_extension(),
        "action": induced_action(s3_extension()),
    }


@pytest.mark.parametrize("key", sorted(samples()))
def test_roundtrip(key):
    value = samples()[key]
    text = dumps(value)
    sf = parse_structure(text)
    assert sf.value == value
    assert emit_structure(sf) == text


def test_roundtrip_modulo_whitespace():
    text = dumps(catgroup("pair_z2"))
    squashed = json.dumps(json.loads(text), separators=(",", ":"))
    assert emit_structure(parse_structure(squashed)) == text


def test_element_order_preserved():
    G = groups.symmetric(3).as_cgroup()
    sf = parse_structure(dumps(G))
    assert sf.value.elements == G.elements


def test_minimal_setoid():
    sf = parse_structure('{"format": 1, "kind": "setoid", "body": {"elements": ["a"], "partition": [["a"]]}}')
    assert sf == StructureFile("setoid", FiniteSetoid(["a"], [["a"]]))


def test_unknown_field_rejected():
    doc = json.loads(dumps(z4_mod2()))
    doc["body"]["extra"] = 1
    with pytest.raises(StructureFileError, match="extra"):
        parse_structure(json.dumps(doc))
    doc = json.loads(dumps(z4_mod2()))
    doc["comment"] = "x"
    with pytest.raises(StructureFileError):
        parse_structure(json.dumps(doc))


def test_unknown_morphism_in_composition_cell():
    doc = json.loads(dumps(catgroup("pair_z2")))
    doc["body"]["comp"]["0>1"]["0>0"] = "ghost"
    with pytest.raises(StructureFileError, match=r"composition cell \('0>1', '0>0'\)"):
        parse_structure(json.dumps(doc))


def test_field_diagnostics():
    doc = json.loads(dumps(z4_mod2()))
    doc["body"]["add"]["1"]["1"] = 2
    with pytest.raises(StructureFileError, match=r"body\.add\.1\.1"):
        parse_structure(json.dumps(doc))
    with pytest.raises(StructureFileError, match="line 2"):
        parse_structure('{"format": 1,\n "kind": }')
    with pytest.raises(StructureFileError, match="format"):
        parse_structure('{"format": 9, "kind": "setoid", "body": {"elements": [], "partition": []}}')


def test_semantic_errors_reported():
    doc = json.loads(dumps(z4_mod2()))
    doc["body"]["partition"] = [["0", "2"], ["1"]]
    with pytest.raises(StructureFileError):
        parse_structure(json.dumps(doc))


def test_published_schema_matches():
    assert json.loads(DOCS_SCHEMA.read_text()) == json.loads(json.dumps(SCHEMA))


@pytest.mark.parametrize("key", sorted(samples()))
def test_emitted_files_satisfy_published_schema(key):
    schema = json.loads(DOCS_SCHEMA.read_text())
    jsonschema.validate(json.loads(dumps(samples()[key])), schema)
