from collections import Counter
from fractions import Fraction

import pytest

from conftest import JACOBI_BUILTINS
from nambu_weil.dga import bracket2, bracket3, check_nilpotent, product
from nambu_weil.formula import expand_all, expand_bracket_form, parse, parse_bracket_form
from nambu_weil.lie import builtin, change_basis, check_jacobi, trace_coefficients, with_constant
from nambu_weil.nlie import induce
from nambu_weil.report import ConfigError
from nambu_weil.cochains import Cochain
from nambu_weil.weil import (
    STATED_LISTS,
    TARGETS,
    audit_formulas,
    build_extended_weil,
    build_weil,
    check_closed_elements,
    composite,
    derive_formula,
    tensor_form_check,
)

TRACE2 = [1, 0, 0, 1]


@pytest.fixture(scope="module")
def W2():
    return build_extended_weil(builtin("gl", 2), TRACE2)


@pytest.fixture(scope="module")
def audit2(W2):
    return audit_formulas(W2)


def entry(audit, group, target):
    (e,) = [e for e in audit.data["entries"] if e["list"] == group and e["target"] == f"d{target}^a"]
    return e


def test_abelian_weil():
    W = build_weil(builtin("abelian", 2))
    g = W.gens
    assert W.d(g.gen("A", 0)) == g.gen("F", 0)
    assert W.d(g.gen("F", 1)).is_zero()


@pytest.mark.parametrize("name,size", JACOBI_BUILTINS)
def test_weil_nilpotent_for_lie_algebras(name, size):
    assert check_nilpotent(build_weil(builtin(name, size)).d).passed


def test_weil_nilpotency_fails_without_jacobi():
    L = with_constant(builtin("sl", 2), 1, 0, 1, 1)
    assert not check_jacobi(L).passed
    rep = check_nilpotent(build_weil(L).d)
    assert not rep.passed
    assert any(v["generator"].startswith("F") for v in rep.violations)


@pytest.mark.parametrize("name,size,omega", [("gl", 2, None), ("gl", 3, None), ("abelian", 3, [1, 2, 3])])
def test_closed_elements(name, size, omega):
    L = builtin(name, size)
    W = build_extended_weil(L, omega or trace_coefficients(L))
    assert check_closed_elements(W).passed


def test_non_annihilating_omega():
    L = builtin("gl", 2)
    with pytest.raises(ConfigError):
        build_extended_weil(L, [1, 0, 0, 0])
    W = build_extended_weil(L, [1, 0, 0, 0], strict=False)
    rep = check_closed_elements(W)
    assert not rep.passed
    # d chi - phi = -1/2 w_a f^a_bc A^b A^c
    A = W.base.gens.family("A")
    expected = sum(
        (bracket2(L.f, A, A)[a] * Fraction(-1, 2) * w for a, w in enumerate([1, 0, 0, 0]) if w),
        W.base.gens.zero(),
    )
    dphi = bracket2(L.f, W.base.gens.family("F"), A)[0]  # w_a f^a_bc F^b A^c with w = T^1
    assert rep.violations == [
        {"identity": "d chi = phi", "residual": expected.render()},
        {"identity": "d phi = 0", "residual": dphi.render()},
    ]


def test_K_matches_induced_constants(W2):
    L = builtin("gl", 2)
    assert W2.K == induce(L, Cochain.from_vector(L, TRACE2), 3).K


def test_unknown_target(W2):
    with pytest.raises(ConfigError):
        composite(W2, "Theta")


def test_KAAA_identity(W2):
    # K^a_bcd A^b A^c A^d = 3 w_b f^a_cd A^b A^c A^d
    ctx = W2.composite
    A = ctx.family("A")
    lhs = bracket3(W2.K, A, A, A)
    chi = ctx.scalars["chi"][0]
    rhs = [chi * x * 3 for x in bracket2(W2.parent.f, A, A)]
    assert lhs == rhs
    lhs2 = expand_all(parse("K^a_bcd A^b A^c A^d"), ctx)
    assert lhs2 == lhs


def test_derived_differential_is_nilpotent(W2):
    d = W2.base.d
    for target in TARGETS:
        for x in derive_formula(W2, target):
            assert d(x).is_zero()


def test_first_list_verdicts(audit2):
    assert entry(audit2, "derived", "chi")["verdict"] == "MATCH"
    assert entry(audit2, "derived", "Omega")["verdict"] == "MATCH"
    phi = entry(audit2, "derived", "phi")
    assert phi["verdict"] == "INDEX-TYPO"
    assert phi["repair"] == "phi^a -> phi^b in term '-1/2 f^a_bc phi^a A^c'"
    assert entry(audit2, "derived", "psi")["verdict"] == "INDEX-TYPO"


def test_final_list_verdicts(audit2):
    assert entry(audit2, "extension", "F")["verdict"] == "MATCH"
    assert entry(audit2, "extension", "A")["verdict"] == "MATCH"
    om = entry(audit2, "extension", "Omega")
    assert om["verdict"] == "MISMATCH" and not om["degree_consistent"]
    assert om["degree_issues"] == [{"term": "K^a_bcd F^b F^c F^d", "degree": 6, "expected": 5}]
    xi = entry(audit2, "extension", "Xi")
    assert xi["verdict"] == "INDEX-TYPO" and xi["repair"].startswith("Xi -> Xi^c")
    assert entry(audit2, "extension", "Phi")["verdict"] == "MISMATCH"


def test_degree_audit_flags_only_the_kfff_image(audit2):
    flagged = [(e["list"], e["target"]) for e in audit2.data["entries"] if not e["degree_consistent"]]
    assert set(flagged) == {("transformed", "dOmega^a"), ("extension", "dOmega^a"), ("bracket", "dOmega^a")}
    deg = audit2.data["stated_differential"]["degree_consistency"]
    assert {v["generator"] for v in deg["violations"]} == {f"Omega^{i}" for i in range(1, 5)}
    assert all(v["term"] == "K^a_bcd F^b F^c F^d" for v in deg["violations"])


def test_every_stated_image_has_a_verdict(audit2):
    expected = [(g, f"d{t}^a") for g, items in STATED_LISTS.items() for t, _ in items]
    got = [(e["list"], e["target"]) for e in audit2.data["entries"]]
    assert got == expected
    for e in audit2.data["entries"]:
        assert e["verdict"] in ("MATCH", "INDEX-TYPO", "MISMATCH")
        if e["verdict"] == "INDEX-TYPO":
            assert e["repair"]
        if e["verdict"] == "MISMATCH":
            assert e["residual"]


def test_stated_differential_is_reported_not_assumed(audit2, W2):
    sd = audit2.data["stated_differential"]
    assert sd["repairs_applied"] == {"dXi": entry(audit2, "extension", "Xi")["repair"]}
    assert sd["nilpotent"]["passed"] is False
    assert W2.repairs == sd["repairs_applied"]


def test_tensor_form(W2):
    ctx = W2.standalone
    A = ctx.family("A")
    half = expand_bracket_form(parse_bracket_form("1/2 [A,A]"), ctx)
    assert half == expand_all(parse("1/2 f^a_bc A^b A^c"), ctx)
    sixth = expand_bracket_form(parse_bracket_form("1/6 [A,A,A]"), ctx)
    assert sixth == expand_all(parse("1/6 K^a_bcd A^b A^c A^d"), ctx)
    rep = tensor_form_check(W2)
    assert rep.passed
    verdicts = {r["target"]: r["verdict"] for r in rep.data["rows"]}
    assert verdicts.pop("dXi") == "INDEX-TYPO"
    assert set(verdicts.values()) == {"MATCH"}


def test_abelian_tensor_form():
    W = build_extended_weil(builtin("abelian", 2), [1, 1])
    ctx = W.standalone
    dA = expand_bracket_form(parse_bracket_form("F - 1/2 [A,A]"), ctx)
    assert dA == ctx.family("F")


def test_audit_stable_under_basis_permutation(audit2):
    L = builtin("gl", 2)
    perm = [2, 0, 3, 1]  # new basis vector i is old basis vector perm[i]
    P = [[1 if perm[c] == r else 0 for c in range(4)] for r in range(4)]
    L2 = change_basis(L, P)
    W = build_extended_weil(L2, [TRACE2[perm[i]] for i in range(4)])
    rep = audit_formulas(W)
    key = lambda a: Counter((e["list"], e["target"], e["verdict"]) for e in a.data["entries"])
    assert key(rep) == key(audit2)
