import json

import pytest
from hypothesis import given

from linrel import instances
from linrel.io import (
    SchemaError,
    load_relation,
    parse_relation,
    relation_from_json,
    relation_to_json,
    serialize_relation,
)

from conftest import FIXTURES, relations

NAMES = ["Z", "MULT_I", "G1", "SA1", "SA2", "M0", "SWAP"]


@pytest.mark.parametrize("name", NAMES)
def test_fixture_round_trip(name):
    path = FIXTURES / f"{name}.json"
    text = path.read_text()
    t = load_relation(path)
    assert t == getattr(instances, name)
    assert serialize_relation(t) == text


@given(relations())
def test_serialize_round_trip(tg):
    t, _ = tg
    text = serialize_relation(t)
    back = parse_relation(text)
    assert back == t and serialize_relation(back) == text
    assert relation_from_json(json.loads(text)) == t
    assert relation_from_json(relation_to_json(t)) == t


def test_empty_relation_text():
    assert serialize_relation(instances.Z) == '{\n  "space_dim": 1,\n  "pairs": []\n}\n'


def test_non_canonical_input_is_canonicalized():
    doc = {"space_dim": 1, "pairs": [{"x": [["2", "0"]], "y": [["0", "2"]]},
                                      {"x": [["1", "0"]], "y": [["0", "1"]]}]}
    assert relation_from_json(doc) == instances.MULT_I


def _err(doc):
    with pytest.raises(SchemaError) as info:
        relation_from_json(doc)
    return info.value.path


def test_schema_errors():
    ok = {"x": [["1", "0"]], "y": [["0", "0"]]}
    assert _err([]) == "$"
    assert _err({"pairs": []}) == "$.space_dim"
    assert _err({"space_dim": 1}) == "$.pairs"
    assert _err({"space_dim": 1, "pairs": [], "extra": 1}) == "$.extra"
    assert _err({"space_dim": 0, "pairs": []}) == "$.space_dim"
    assert _err({"space_dim": True, "pairs": []}) == "$.space_dim"
    assert _err({"space_dim": 1, "pairs": {}}) == "$.pairs"
    assert _err({"space_dim": 1, "pairs": [ok, {"x": [["1", "0"]]}]}) == "$.pairs[1].y"
    assert _err({"space_dim": 1, "pairs": [{"x": [["1", "0"]], "y": [["0", "0"]], "z": 1}]}) \
        == "$.pairs[0].z"
    assert _err({"space_dim": 2, "pairs": [ok]}) == "$.pairs[0].x"
    assert _err({"space_dim": 1, "pairs": [{"x": [["1", "0"]], "y": [[0, 0]]}]}) == "$.pairs[0].y[0]"
    assert _err({"space_dim": 1, "pairs": [{"x": [["1.5", "0"]], "y": [["0", "0"]]}]}) \
        == "$.pairs[0].x[0]"
    assert _err({"space_dim": 1, "pairs": [{"x": [["2/4", "0"]], "y": [["0", "0"]]}]}) \
        == "$.pairs[0].x[0]"


def test_json_syntax_and_file_errors(tmp_path):
    with pytest.raises(SchemaError) as info:
        parse_relation('{"space_dim": 1,\n "pairs": [}')
    assert info.value.path.startswith("line 2 column")
    bad = tmp_path / "bad.json"
    bad.write_text('{"space_dim": 1, "pairs": [], "q": 0}')
    with pytest.raises(SchemaError) as info:
        load_relation(bad)
    assert str(bad) in str(info.value) and "$.q" in str(info.value)
    with pytest.raises(SchemaError):
        load_relation(tmp_path / "missing.json")
