"""Exact rational scalars and small dense multi-index tensors.

Scalars are :class:`fractions.Fraction`; nothing in the engine touches floats.
A :class:`Tensor` stores ``prod(dims)`` entries in row-major order and keeps a
lazily built map of its nonzero entries, which is what the contraction loops
in the other modules actually iterate over.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product
from math import factorial
from typing import Iterable, Iterator, Mapping, Sequence

__all__ = [
    "Fraction",
    "ShapeError",
    "Tensor",
    "as_fraction",
    "permutation_sign",
    "sort_with_sign",
    "tensor_get",
    "antisymmetrize",
]

Index = tuple[int, ...]


class ShapeError(ValueError):
    """Index out of bounds, wrong arity or mismatched extents."""


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings; floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def permutation_sign(perm: Sequence[int]) -> int:
    """Sign of a permutation given as a sequence of distinct sortable items."""
    sign = 1
    seq = list(perm)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
            elif seq[i] == seq[j]:
                return 0
    return sign


def sort_with_sign(idx: Sequence[int]) -> tuple[int, Index]:
    """Sort ``idx`` ascending; return (sign of the sorting permutation, sorted).

    The sign is 0 when an index repeats, which is what an alternating
    functional wants.
    """
    s = permutation_sign(idx)
    return s, tuple(sorted(idx))


class Tensor:
    """Dense tensor of Fractions with per-axis extents ``dims``."""

    __slots__ = ("dims", "_data", "_strides", "_nz")

    def __init__(self, dims: Sequence[int], data: Iterable | None = None):
        self.dims: tuple[int, ...] = tuple(int(d) for d in dims)
        if any(d <= 0 for d in self.dims):
            raise ShapeError(f"extents must be positive: {self.dims}")
        size = 1
        for d in self.dims:
            size *= d
        if data is None:
            self._data = (Fraction(0),) * size
        else:
            vals = tuple(as_fraction(v) for v in data)
            if len(vals) != size:
                raise ShapeError(f"expected {size} entries, got {len(vals)}")
            self._data = vals
        strides = []
        acc = 1
        for d in reversed(self.dims):
            strides.append(acc)
            acc *= d
        self._strides = tuple(reversed(strides))
        self._nz: dict[Index, Fraction] | None = None

    @classmethod
    def zeros(cls, dims: Sequence[int]) -> "Tensor":
        return cls(dims)

    @classmethod
    def from_entries(cls, dims: Sequence[int], entries: Mapping[Index, object]) -> "Tensor":
        t = cls(dims)
        data = list(t._data)
        for idx, v in entries.items():
            data[t._offset(idx)] += as_fraction(v)
        return cls(dims, data)

    @property
    def rank(self) -> int:
        return len(self.dims)

    def _offset(self, idx: Sequence[int]) -> int:
        if len(idx) != len(self.dims):
            raise ShapeError(f"index {tuple(idx)} has wrong rank for dims {self.dims}")
        off = 0
        for i, d, s in zip(idx, self.dims, self._strides):
            if not 0 <= i < d:
                raise ShapeError(f"index {tuple(idx)} out of bounds for dims {self.dims}")
            off += i * s
        return off

    def __getitem__(self, idx: Sequence[int] | int) -> Fraction:
        if isinstance(idx, int):
            idx = (idx,)
        return self._data[self._offset(idx)]

    def indices(self) -> Iterator[Index]:
        return product(*(range(d) for d in self.dims))

    def nonzero(self) -> dict[Index, Fraction]:
        """Map of nonzero entries, in row-major order."""
        if self._nz is None:
            self._nz = {
                idx: v for idx, v in zip(self.indices(), self._data) if v
            }
        return self._nz

    def is_zero(self) -> bool:
        return not self.nonzero()

    def map(self, fn) -> "Tensor":
        return Tensor(self.dims, (fn(v) for v in self._data))

    def __add__(self, other: "Tensor") -> "Tensor":
        self._check_same(other)
        return Tensor(self.dims, (a + b for a, b in zip(self._data, other._data)))

    def __sub__(self, other: "Tensor") -> "Tensor":
        self._check_same(other)
        return Tensor(self.dims, (a - b for a, b in zip(self._data, other._data)))

    def __neg__(self) -> "Tensor":
        return self.map(lambda v: -v)

    def scale(self, c) -> "Tensor":
        c = as_fraction(c)
        return self.map(lambda v: c * v)

    def _check_same(self, other: "Tensor") -> None:
        if self.dims != other.dims:
            raise ShapeError(f"dims differ: {self.dims} vs {other.dims}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.dims == other.dims and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.dims, self._data))

    def __repr__(self) -> str:
        nz = ", ".join(f"{k}: {v}" for k, v in self.nonzero().items())
        return f"Tensor(dims={self.dims}, nonzero={{{nz}}})"


def tensor_get(t: Tensor, idx: Sequence[int]) -> Fraction:
    return t[idx]


def antisymmetrize(t: Tensor, axes: Sequence[int]) -> Tensor:
    """Signed average of ``t`` over all permutations of ``axes``."""
    axes = tuple(axes)
    if len(set(axes)) != len(axes) or any(not 0 <= a < t.rank for a in axes):
        raise ShapeError(f"bad axis set {axes} for rank {t.rank}")
    if len({t.dims[a] for a in axes}) > 1:
        raise ShapeError(f"axes {axes} have unequal extents {[t.dims[a] for a in axes]}")
    if len(axes) < 2:
        return t
    perms = [(p, permutation_sign(p)) for p in permutations(range(len(axes)))]
    norm = Fraction(1, factorial(len(axes)))
    out = {}
    for idx in t.indices():
        acc = Fraction(0)
        sub = [idx[a] for a in axes]
        for p, s in perms:
            src = list(idx)
            for k, a in enumerate(axes):
                src[a] = sub[p[k]]
            acc += s * t[src]
        if acc:
            out[idx] = acc * norm
    return Tensor.from_entries(t.dims, out)
