"""Chevalley-Eilenberg cochains with trivial coefficients.

A degree-k cochain is stored by its values on strictly increasing basis
k-tuples; everything else follows from total antisymmetry.

Sign conventions (chosen so that the degree-1 relations hold literally):

* coboundary: (dw)(x_0..x_k) = sum_{i<j} (-1)^(i+j+1) w([x_i,x_j], x_0..^i..^j..x_k),
  which is minus the textbook alternating sum and gives (dw)(x, y) = w([x, y]);
* wedge: unnormalized shuffle sum, so
  (w ^ dw)(u, v, t) = w(u) w([v,t]) + w(v) w([t,u]) + w(t) w([u,v]).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Mapping, Sequence

from .lie import LieAlgebra, basis_vector
from .report import ConfigError, Report
from .tensor import ShapeError, as_fraction, permutation_sign, sort_with_sign

Index = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class Cochain:
    degree: int
    parent: LieAlgebra
    coeffs: Mapping[Index, Fraction]

    def __post_init__(self):
        clean = {}
        for idx, v in self.coeffs.items():
            idx = tuple(idx)
            v = as_fraction(v)
            if len(idx) != self.degree:
                raise ShapeError(f"index {idx} for a degree-{self.degree} cochain")
            if any(not 0 <= i < self.parent.dim for i in idx):
                raise ShapeError(f"index {idx} out of range")
            s, key = sort_with_sign(idx)
            if s == 0:
                continue
            clean[key] = clean.get(key, Fraction(0)) + s * v
        object.__setattr__(self, "coeffs", {k: clean[k] for k in sorted(clean) if clean[k]})

    @classmethod
    def zero(cls, L: LieAlgebra, degree: int) -> "Cochain":
        return cls(degree, L, {})

    @classmethod
    def constant(cls, L: LieAlgebra, value=1) -> "Cochain":
        return cls(0, L, {(): value})

    @classmethod
    def from_vector(cls, L: LieAlgebra, omega: Sequence) -> "Cochain":
        """Degree-1 cochain omega = omega_a T^a."""
        if len(omega) != L.dim:
            raise ShapeError(f"{len(omega)} coefficients for dim {L.dim}")
        return cls(1, L, {(a,): v for a, v in enumerate(omega)})

    @classmethod
    def dual(cls, L: LieAlgebra, a: int) -> "Cochain":
        return cls(1, L, {(a,): 1})

    def vector(self) -> list[Fraction]:
        if self.degree != 1:
            raise ShapeError("only degree-1 cochains have a coefficient vector")
        return [self.coeffs.get((a,), Fraction(0)) for a in range(self.parent.dim)]

    def at(self, idx: Sequence[int]) -> Fraction:
        """Value on the basis tuple ``idx`` (any order, repeats allowed)."""
        s, key = sort_with_sign(idx)
        if s == 0:
            return Fraction(0)
        return s * self.coeffs.get(key, Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "Cochain") -> "Cochain":
        _same(self, other)
        if self.degree != other.degree:
            raise ShapeError("cannot add cochains of different degree")
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + v
        return Cochain(self.degree, self.parent, out)

    def scale(self, c) -> "Cochain":
        c = as_fraction(c)
        return Cochain(self.degree, self.parent, {k: c * v for k, v in self.coeffs.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return self.degree == other.degree and self.parent == other.parent and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.degree, tuple(self.coeffs.items())))

    def __repr__(self) -> str:
        terms = " + ".join(
            f"{v}*" + "^".join(f"T^{i + 1}" for i in k) if k else str(v) for k, v in self.coeffs.items()
        )
        return f"Cochain(degree={self.degree}, {terms or '0'})"


def _same(u: Cochain, v: Cochain) -> None:
    if u.parent is not v.parent and u.parent != v.parent:
        raise ConfigError("cochains live on different Lie algebras")


def evaluate(w: Cochain, *args: Sequence) -> Fraction:
    """Multilinear alternating evaluation on ``degree`` coefficient vectors."""
    if len(args) != w.degree:
        raise ShapeError(f"degree-{w.degree} cochain given {len(args)} arguments")
    n = w.parent.dim
    vecs = []
    for v in args:
        if len(v) != n:
            raise ShapeError(f"argument of length {len(v)}, expected {n}")
        vecs.append([as_fraction(x) for x in v])
    if w.degree == 0:
        return w.coeffs.get((), Fraction(0))
    acc = Fraction(0)
    k = w.degree
    for idx, c in w.coeffs.items():
        # c * det[vecs[j][idx[i]]]
        det = Fraction(0)
        for p in permutations(range(k)):
            term = Fraction(permutation_sign(p))
            for j in range(k):
                term *= vecs[j][idx[p[j]]]
                if not term:
                    break
            det += term
        acc += c * det
    return acc


def _shuffles(J: Index, p: int):
    """Yield (sign, first p entries, remaining entries) over (p, q)-shuffles of J."""
    positions = range(len(J))
    for pick in combinations(positions, p):
        rest = tuple(i for i in positions if i not in pick)
        sign = permutation_sign(pick + rest)
        yield sign, tuple(J[i] for i in pick), tuple(J[i] for i in rest)


def wedge(u: Cochain, v: Cochain) -> Cochain:
    _same(u, v)
    p, q = u.degree, v.degree
    n = u.parent.dim
    out = {}
    if p + q > n:
        return Cochain.zero(u.parent, p + q)
    for J in combinations(range(n), p + q):
        acc = Fraction(0)
        for s, I1, I2 in _shuffles(J, p):
            a = u.coeffs.get(I1)
            if a:
                b = v.coeffs.get(I2)
                if b:
                    acc += s * a * b
        if acc:
            out[J] = acc
    return Cochain(p + q, u.parent, out)


def coboundary(w: Cochain) -> Cochain:
    L = w.parent
    k = w.degree
    n = L.dim
    out = {}
    if k + 1 > n:
        return Cochain.zero(L, k + 1)
    brackets = L.brackets
    for J in combinations(range(n), k + 1):
        acc = Fraction(0)
        for i in range(k + 1):
            for j in range(i + 1, k + 1):
                col = brackets.get((J[i], J[j]))
                if not col:
                    continue
                rest = J[:i] + J[i + 1 : j] + J[j + 1 :]
                sign = -1 if (i + j) % 2 == 0 else 1  # (-1)^(i+j+1)
                for a, fv in col.items():
                    val = w.at((a,) + rest)
                    if val:
                        acc += sign * fv * val
        if acc:
            out[J] = acc
    return Cochain(k + 1, L, out)


def check_omega_condition(w: Cochain) -> Report:
    """Report every basis tuple where w ^ dw is nonzero."""
    L = w.parent
    c = wedge(w, coboundary(w))
    violations = [
        {
            "indices": [i + 1 for i in idx],
            "labels": [L.basis[i] for i in idx],
            "value": v,
        }
        for idx, v in c.coeffs.items()
    ]
    return Report(
        "omega_wedge_domega",
        violations,
        data={"degree": w.degree, "cocycle": coboundary(w).is_zero()},
    )


def basis_eval(w: Cochain, *idx: int) -> Fraction:
    """Convenience: evaluate on basis vectors T_{idx...}."""
    n = w.parent.dim
    return evaluate(w, *(basis_vector(n, i) for i in idx))
