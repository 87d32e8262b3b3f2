import random
from itertools import combinations, product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import JACOBI_BUILTINS
from nambu_weil.cochains import Cochain, basis_eval, check_omega_condition, coboundary, evaluate, wedge
from nambu_weil.lie import basis_vector, bracket, builtin, from_brackets, random_lie_algebra, trace_coefficients
from nambu_weil.report import ConfigError
from nambu_weil.tensor import ShapeError


def random_cochain(L, k, rng):
    return Cochain(k, L, {I: rng.randint(-3, 3) for I in combinations(range(L.dim), k)})


def test_duality(sl2):
    assert evaluate(Cochain.dual(sl2, 0), basis_vector(3, 0)) == 1
    assert evaluate(Cochain.dual(sl2, 0), basis_vector(3, 1)) == 0


def test_alternating_evaluation(sl2):
    w = Cochain(2, sl2, {(0, 1): 1})
    assert basis_eval(w, 1, 0) == -1
    assert basis_eval(w, 1, 1) == 0
    assert Cochain(2, sl2, {(1, 0): 1}) == w.scale(-1)


def test_wrong_arity(sl2):
    with pytest.raises(ShapeError):
        evaluate(Cochain.dual(sl2, 0), basis_vector(3, 0), basis_vector(3, 1))


def test_wedge_with_constant_is_identity(sl2):
    w = Cochain(2, sl2, {(0, 1): 3, (1, 2): -1})
    assert wedge(Cochain.constant(sl2), w) == w
    assert wedge(w, Cochain.constant(sl2)) == w


def test_odd_wedge_square_vanishes(gl2):
    u = Cochain.from_vector(gl2, [1, 2, -1, 3])
    assert wedge(u, u).is_zero()


def test_parent_mismatch(sl2, gl2):
    with pytest.raises(ConfigError):
        wedge(Cochain.dual(sl2, 0), Cochain.dual(gl2, 0))


def test_omega_wedge_domega_three_term():
    L = from_brackets(["T1", "T2", "T3"], {("T2", "T3"): {"T1": 1}})
    w = Cochain.dual(L, 0)
    dw = coboundary(w)
    assert dw.coeffs == {(1, 2): 1}
    e = [basis_vector(3, i) for i in range(3)]
    cyclic = (
        evaluate(w, e[0]) * evaluate(dw, e[1], e[2])
        + evaluate(w, e[1]) * evaluate(dw, e[2], e[0])
        + evaluate(w, e[2]) * evaluate(dw, e[0], e[1])
    )
    assert evaluate(wedge(w, dw), *e) == 1 == cyclic


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_abelian_coboundary_vanishes(k):
    L = builtin("abelian", 4)
    assert coboundary(random_cochain(L, k, random.Random(k))).is_zero()


def test_omega_condition_examples(gl2, heis):
    rep = check_omega_condition(Cochain.from_vector(gl2, trace_coefficients(gl2)))
    assert rep.passed and rep.data["cocycle"]
    rep = check_omega_condition(Cochain.from_vector(heis, [1, 0, 1]))
    assert not rep.passed
    assert rep.violations == [{"indices": [1, 2, 3], "labels": ["x", "y", "z"], "value": 1}]
    L = builtin("affine1", 2)
    assert check_omega_condition(Cochain.from_vector(L, [3, -2])).passed


@given(st.integers(0, 10_000), st.integers(0, 3))
def test_coboundary_squares_to_zero(seed, k):
    rng = random.Random(seed)
    L = random_lie_algebra(rng, 4)
    if k > L.dim:
        k = L.dim
    assert coboundary(coboundary(random_cochain(L, k, rng))).is_zero()


@given(st.integers(0, 10_000), st.integers(0, 3), st.integers(0, 3))
def test_wedge_graded_commutative(seed, p, q):
    rng = random.Random(seed)
    L = builtin("gl", 2)
    u, v = random_cochain(L, p, rng), random_cochain(L, q, rng)
    assert wedge(u, v) == wedge(v, u).scale((-1) ** (p * q))


@pytest.mark.parametrize("name,size", JACOBI_BUILTINS[:7])
def test_degree_one_coboundary_is_omega_of_bracket(name, size):
    L = builtin(name, size)
    w = random_cochain(L, 1, random.Random(size))
    dw = coboundary(w)
    for x, y in product(range(L.dim), repeat=2):
        X, Y = basis_vector(L.dim, x), basis_vector(L.dim, y)
        assert evaluate(dw, X, Y) == evaluate(w, bracket(L, X, Y))


@given(st.integers(0, 10_000))
def test_degree_two_coboundary_against_brackets(seed):
    # (dw)(x,y,z) = w([x,y],z) - w([x,z],y) + w([y,z],x) under the sign (-1)^(i+j+1)
    rng = random.Random(seed)
    L = random_lie_algebra(rng, 4)
    if L.dim < 3:
        return
    w = random_cochain(L, 2, rng)
    x, y, z = ([rng.randint(-2, 2) for _ in range(L.dim)] for _ in range(3))
    expected = evaluate(w, bracket(L, x, y), z) - evaluate(w, bracket(L, x, z), y) + evaluate(w, bracket(L, y, z), x)
    assert evaluate(coboundary(w), x, y, z) == expected
