from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nambu_weil.tensor import ShapeError, Tensor, antisymmetrize, as_fraction, permutation_sign, sort_with_sign, tensor_get

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=12)


def test_zero_tensor_reads_zero():
    t = Tensor.zeros((3, 3, 3))
    assert all(tensor_get(t, i) == 0 for i in t.indices())


def test_single_entry_and_its_antisymmetrization():
    t = Tensor.from_entries((3, 3, 3), {(0, 1, 2): 1})
    assert t[0, 1, 2] == 1
    a = antisymmetrize(t, (1, 2))
    assert a[0, 2, 1] == Fraction(-1, 2)
    # the full antisymmetrization of f^1_23 = 1 alone gives 1/2 at (1,2,3)
    full = Tensor.from_entries((3, 3, 3), {(0, 1, 2): 1, (0, 2, 1): -1})
    assert antisymmetrize(full, (1, 2))[0, 2, 1] == -1


def test_two_permutation_average():
    t = Tensor.from_entries((2, 2), {(0, 1): 1})
    a = antisymmetrize(t, (0, 1))
    assert a[0, 1] == Fraction(1, 2)
    assert a[1, 0] == Fraction(-1, 2)


def test_symmetric_tensor_antisymmetrizes_to_zero():
    t = Tensor.from_entries((3, 3), {(0, 1): 2, (1, 0): 2, (2, 2): 5})
    assert antisymmetrize(t, (0, 1)).is_zero()


def test_out_of_bounds_and_unequal_extents():
    t = Tensor.zeros((2, 3))
    with pytest.raises(ShapeError):
        t[2, 0]
    with pytest.raises(ShapeError):
        t[0]
    with pytest.raises(ShapeError):
        antisymmetrize(t, (0, 1))


def test_floats_are_refused():
    with pytest.raises(TypeError):
        as_fraction(0.5)
    assert as_fraction("-3/4") == Fraction(-3, 4)


def test_permutation_sign():
    assert permutation_sign((0, 1, 2)) == 1
    assert permutation_sign((1, 0, 2)) == -1
    assert permutation_sign((2, 0, 1)) == 1
    assert permutation_sign((1, 1, 0)) == 0
    assert sort_with_sign((2, 0, 1)) == (1, (0, 1, 2))


@given(fractions, fractions, fractions)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@st.composite
def cubes(draw):
    n = draw(st.integers(1, 3))
    data = draw(st.lists(st.integers(-3, 3), min_size=n**3, max_size=n**3))
    return Tensor((n, n, n), data)


@given(cubes(), st.sampled_from([(0, 1), (1, 2), (0, 2), (0, 1, 2)]))
def test_antisymmetrize_is_a_projection(t, axes):
    once = antisymmetrize(t, axes)
    assert antisymmetrize(once, axes) == once


@given(cubes())
def test_tensor_arithmetic(t):
    assert (t + t.scale(-1)).is_zero()
    assert t - t == Tensor.zeros(t.dims)
    assert hash(t) == hash(Tensor(t.dims, [t[i] for i in t.indices()]))
