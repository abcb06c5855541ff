import json

import pytest

from quivrep import GF, is_isomorphic, load_algebra, load_module
from quivrep.formats import (
    FormatError, algebra_from_dict, algebra_to_toml, module_from_dict, module_to_toml, resolve_module,
    to_json,
)


def test_algebra_round_trip(tmp_path, aus):
    p = tmp_path / "copy.alg"
    p.write_text(algebra_to_toml(aus))
    B = load_algebra(p)
    assert B.dimension == aus.dimension
    assert [a.name for a in B.quiver.arrows] == [a.name for a in aus.quiver.arrows]


def test_field_key_in_file(tmp_path):
    p = tmp_path / "f.alg"
    p.write_text('field = "fp:3"\n[quiver]\nvertices = ["1", "2"]\narrows = [{ name = "a", from = "1", to = "2" }]\n')
    A = load_algebra(p)
    assert A.field is GF(3)
    assert "fp:3" in algebra_to_toml(A)


def test_module_round_trip(tmp_path, aus, aus_ar):
    X = aus_ar.find("2/34/5").module
    p = tmp_path / "x.mod"
    p.write_text(module_to_toml(X))
    Y = load_module(aus, p)
    assert is_isomorphic(X, Y)


def test_simple_s5_file(corpus, aus, aus_ar):
    S = load_module(aus, corpus / "simple_s5.mod")
    assert S.dims == (0, 0, 0, 0, 1, 0)
    assert resolve_module(str(corpus / "simple_s5.mod"), aus, aus_ar).dims == S.dims


def test_resolve_by_name_and_label(aus, aus_ar):
    assert resolve_module("P2", aus, aus_ar) is resolve_module("2/34/5", aus, aus_ar)
    with pytest.raises(FormatError):
        resolve_module("9/9", aus, aus_ar)


@pytest.mark.parametrize("data", [
    {},
    {"quiver": {"vertices": ["1"], "arrows": [{"name": "a", "from": "1"}]}},
    {"quiver": {"vertices": ["1"], "arrows": []}, "relation": [{"terms": [["x", ["a"]]]}]},
])
def test_malformed_algebras(data):
    with pytest.raises(FormatError):
        algebra_from_dict(data)


def test_malformed_modules(aus):
    with pytest.raises(FormatError):
        module_from_dict(aus, {"dims": {"9": 1}})
    with pytest.raises(FormatError):
        module_from_dict(aus, {"dims": {"1": 1, "2": 1}, "maps": {"zz": [["1"]]}})
    with pytest.raises(FormatError):
        module_from_dict(aus, {"dims": {"1": 1, "2": 1}, "maps": {"a": [["1", "0"]]}})
    with pytest.raises(FormatError):
        # violates a c = 0
        module_from_dict(aus, {"dims": {"1": 1, "2": 1, "4": 1}, "maps": {"a": [["1"]], "c": [["1"]]}})


def test_bad_toml(tmp_path):
    p = tmp_path / "bad.alg"
    p.write_text("[quiver\n")
    with pytest.raises(FormatError):
        load_algebra(p)


def test_json_envelope():
    doc = json.loads(to_json("thing", {"a": 1}))
    assert list(doc) == ["schema", "version", "a"]
    assert doc["schema"] == "quivrep.thing"
