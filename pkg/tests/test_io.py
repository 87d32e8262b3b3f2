import json

import pytest

from nambu_weil.cochains import Cochain
from nambu_weil.io import (
    LoadError,
    algebra_to_doc,
    cochain_from_doc,
    cochain_to_doc,
    lie_from_doc,
    load_algebra,
    load_cochain,
    nlie_from_doc,
    nlie_to_doc,
)
from nambu_weil.lie import builtin, trace_coefficients
from nambu_weil.nlie import builtin_cross_product, induce


def test_shipped_fixture_is_gl2(fixtures_dir):
    L = load_algebra(f"{fixtures_dir}/gl2.json")
    assert L == builtin("gl", 2)
    assert L.matrices == builtin("gl", 2).matrices


@pytest.mark.parametrize("name,size", [("sl", 2), ("heisenberg", 3), ("gl", 3), ("abelian", 2)])
def test_roundtrip(name, size):
    L = builtin(name, size)
    assert lie_from_doc(json.loads(json.dumps(algebra_to_doc(L)))) == L


def test_parse_error_has_position(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"dim": 2,\n "f": [1, }')
    with pytest.raises(LoadError, match=r"line 2, column"):
        load_algebra(p)


def test_missing_file(tmp_path):
    with pytest.raises(LoadError):
        load_algebra(tmp_path / "nope.json")


def test_schema_violation_names_the_field():
    with pytest.raises(LoadError, match=r"schema violation at dim"):
        lie_from_doc({"dim": "", "f": []})
    with pytest.raises(LoadError, match=r"schema violation at \(root\)"):
        lie_from_doc({"f": []})
    with pytest.raises(LoadError, match=r"schema violation at f/0/3"):
        lie_from_doc({"dim": 2, "f": [[1, 2, 1, 0.5]]})
    with pytest.raises(LoadError, match="out of range"):
        lie_from_doc({"dim": 2, "f": [[1, 3, 1, "1"]]})


def test_antisymmetry_rejection_names_triple():
    with pytest.raises(LoadError, match=r"\(1,1,1\)"):
        lie_from_doc({"dim": 2, "f": [[1, 1, 1, "1"]]})


def test_reversed_pair_rejected_or_folded():
    doc = {"dim": 3, "basis": ["x", "y", "z"], "f": [[2, 1, 3, "-1"]]}
    with pytest.raises(LoadError, match=r"\(3,2,1\)"):
        lie_from_doc(doc)
    assert lie_from_doc(doc, antisymmetrize=True) == builtin("heisenberg", 3)
    conflict = {"dim": 3, "f": [[1, 2, 3, "1"], [2, 1, 3, "1"]]}
    with pytest.raises(LoadError, match="conflicting"):
        lie_from_doc(conflict, antisymmetrize=True)


def test_matrices_must_match_f():
    doc = algebra_to_doc(builtin("gl", 2))
    doc["f"][0][3] = "2"
    with pytest.raises(LoadError, match="matrices"):
        lie_from_doc(doc)


def test_cochain_documents(gl2, tmp_path):
    w = Cochain.from_vector(gl2, trace_coefficients(gl2))
    doc = cochain_to_doc(w)
    assert doc == {"degree": 1, "entries": [[[1], "1"], [[4], "1"]]}
    p = tmp_path / "w.json"
    p.write_text(json.dumps(doc))
    assert load_cochain(p, gl2) == w
    w2 = cochain_from_doc({"degree": 2, "entries": [[[2, 1], "3"]]}, gl2)
    assert w2.coeffs == {(0, 1): -3}
    with pytest.raises(LoadError):
        cochain_from_doc({"degree": 2, "entries": [[[1], "1"]]}, gl2)
    with pytest.raises(LoadError):
        cochain_from_doc({"degree": 2, "entries": [[[1, 1], "1"]]}, gl2)


def test_nlie_documents(gl2):
    N = induce(gl2, Cochain.from_vector(gl2, trace_coefficients(gl2)), 3)
    assert nlie_from_doc(json.loads(json.dumps(nlie_to_doc(N)))).K == N.K
    C = builtin_cross_product(3)
    assert nlie_from_doc(nlie_to_doc(C)).K == C.K
    with pytest.raises(LoadError, match="repeated"):
        nlie_from_doc({"dim": 3, "arity": 2, "K": [[[1, 1], 2, "1"]]})
