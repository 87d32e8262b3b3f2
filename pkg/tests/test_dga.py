import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nambu_weil.dga import (
    Differential,
    GeneratorSet,
    GradedElement,
    check_degree_consistency,
    check_leibniz,
    check_nilpotent,
    multiply,
    product,
    random_homogeneous,
)
from nambu_weil.lie import builtin, with_constant
from nambu_weil.report import ConfigError
from nambu_weil.weil import WEIL_FAMILIES, build_weil

MIXED = (("A", (1, 0)), ("F", (2, 0)), ("c", (0, 1)), ("p", (1, 1)))


def koszul_oracle(gens, seq):
    """Bubble-sort a generator sequence, flipping the sign on each odd/odd swap."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(len(seq) - 1 - i):
            a, b = seq[j], seq[j + 1]
            if a > b:
                pa, pb = gens.parity_of(gens.generators[a].bidegree), gens.parity_of(gens.generators[b].bidegree)
                if sum(x * y for x, y in zip(pa, pb)) % 2:
                    sign = -sign
                seq[j], seq[j + 1] = b, a
    for a, b in zip(seq, seq[1:]):
        if a == b and gens.odd[a]:
            return 0, ()
    return sign, tuple(seq)


def test_odd_square_vanishes():
    g = GeneratorSet.from_families(WEIL_FAMILIES, 2)
    A1, A2, F1 = g.gen("A", 0), g.gen("A", 1), g.gen("F", 0)
    assert (A1 * A1).is_zero()
    assert (A1 * A2 + A2 * A1).is_zero()
    assert (F1 * A2 - A2 * F1).is_zero()
    assert (F1 * F1).terms == {(2, 2): 1}


def test_mixed_generator_sets():
    g1 = GeneratorSet.from_families(WEIL_FAMILIES, 2)
    g2 = GeneratorSet.from_families(WEIL_FAMILIES, 2)
    with pytest.raises(ConfigError):
        g1.gen("A", 0) * g2.gen("A", 0)


@pytest.mark.parametrize("rule", ["total", "bigraded"])
@given(st.lists(st.integers(0, 7), max_size=5))
def test_products_follow_koszul_oracle(rule, seq):
    gens = GeneratorSet.from_families(MIXED, 2, rule)
    x = product([GradedElement(gens, {(g,): 1}) for g in seq], gens)
    sign, mono = koszul_oracle(gens, seq)
    expected = GradedElement(gens, {mono: sign} if sign else {})
    assert x == expected


@pytest.mark.parametrize("rule", ["total", "bigraded"])
@given(st.integers(0, 10_000))
def test_commutation_differs_by_koszul_sign(rule, seed):
    gens = GeneratorSet.from_families(MIXED, 2, rule)
    rng = random.Random(seed)
    x, y = random_homogeneous(gens, rng), random_homogeneous(gens, rng)
    px, py = gens.parity_of(x.bidegree()), gens.parity_of(y.bidegree())
    s = -1 if sum(a * b for a, b in zip(px, py)) % 2 else 1
    assert multiply(x, y) == multiply(y, x) * s


@given(st.integers(0, 10_000))
def test_canonical_is_stable(seed):
    gens = GeneratorSet.from_families(MIXED, 2)
    x = random_homogeneous(gens, random.Random(seed), terms=3)
    assert x.canonical() == x
    assert x.canonical().canonical().render() == x.render()


def test_render_is_deterministic():
    g = GeneratorSet.from_families(WEIL_FAMILIES, 2)
    x = g.gen("F", 1) * g.gen("A", 0) * Fraction(1, 2) - g.gen("A", 1) * 2
    assert x.render() == "-2*A^2 + 1/2*A^1*F^2"


def test_weil_leibniz_examples():
    W = build_weil(builtin("sl", 2))
    d = W.d
    g = W.gens
    assert d(g.one()).is_zero()
    A1, A2, F1 = g.gen("A", 0), g.gen("A", 1), g.gen("F", 0)
    assert d(A1 * A2) == d(A1) * A2 - A1 * d(A2)
    x, y = A1 * A2, F1
    assert d(x * y) - d(x) * y - x * d(y) == g.zero()


def test_sl2_dA_unrolled():
    # dA^h = F^h - 1/2 f^h_bc A^b A^c = F^h - A^e A^f  (f^h_ef = 1)
    W = build_weil(builtin("sl", 2))
    g = W.gens
    expected = g.gen("F", 0) - g.gen("A", 1) * g.gen("A", 2)
    assert W.d(g.gen("A", 0)) == expected


def test_zero_differential_is_nilpotent():
    g = GeneratorSet.from_families(WEIL_FAMILIES, 3)
    assert check_nilpotent(Differential(g, {}, (1, 0), "zero")).passed


def test_weil_differential_nilpotency_tracks_jacobi():
    sl2 = builtin("sl", 2)
    assert check_nilpotent(build_weil(sl2).d).passed
    rep = check_nilpotent(build_weil(with_constant(sl2, 1, 0, 1, 1)).d)
    assert not rep.passed
    assert all(v["residual"] for v in rep.violations)


def test_degree_consistency():
    g = GeneratorSet.from_families(WEIL_FAMILIES, 1)
    A, F = g.gen("A", 0), g.gen("F", 0)
    ok = Differential(g, {0: F - A * A}, (1, 0), "d")
    assert check_degree_consistency(ok).passed
    with pytest.raises(ConfigError):
        Differential(g, {0: F * F}, (1, 0), "d")
    loose = Differential(g, {0: F * F}, (1, 0), "d", strict=False)
    rep = check_degree_consistency(loose)
    assert not rep.passed and rep.violations[0]["degree"] == [4, 0]
    declared = Differential(g, {}, (1, 0), "d", declared={1: [("F F F", (6, 0))]}, strict=False)
    assert check_degree_consistency(declared).violations[0]["term"] == "F F F"


@pytest.mark.parametrize("name,size", [("sl", 2), ("gl", 2), ("heisenberg", 3)])
def test_leibniz_and_composite_nilpotency(name, size):
    D = build_weil(builtin(name, size)).d
    assert check_leibniz(D, trials=40, seed=size).passed
    rng = random.Random(size)
    for _ in range(20):
        x = random_homogeneous(D.gens, rng, terms=3)
        assert D(D(x)).is_zero()


@given(st.integers(0, 10_000))
def test_differential_is_linear(seed):
    D = build_weil(builtin("gl", 2)).d
    rng = random.Random(seed)
    x, y = random_homogeneous(D.gens, rng), random_homogeneous(D.gens, rng)
    c = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    assert D(x * c + y) == D(x) * c + D(y)


def test_odd_square_under_differential():
    D = build_weil(builtin("gl", 2)).d
    A = D.gens.gen("A", 1)
    assert D(A * A).is_zero()
