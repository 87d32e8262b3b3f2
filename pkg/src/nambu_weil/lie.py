"""Finite-dimensional Lie algebras given by structure constants.

Convention: ``f[a, b, c]`` is f^a_{bc}, i.e. ``[T_b, T_c] = f^a_{bc} T_a``.
Indices are 0-based internally; reports and JSON use 1-based indices.

Builtin basis orders
--------------------
gl(n)        matrix units E_ij, row-major (E11, E12, ..., Enn)
sl(n)        H_1..H_{n-1} (H_i = E_ii - E_{i+1,i+1}), then off-diagonal E_ij
             row-major; sl(2) is therefore (h, e, f) with [h, e] = 2e
heisenberg   x_1..x_k, y_1..y_k, z with [x_i, y_i] = z (size = 2k + 1)
abelian      T1..Tn, all brackets zero
affine1      x, y with [x, y] = y (size must be 2)
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

import sympy

from .report import ConfigError, Report, UnsupportedError
from .tensor import ShapeError, Tensor, as_fraction

Matrix = tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    dim: int
    basis: tuple[str, ...]
    f: Tensor
    matrices: tuple[Matrix, ...] | None = None
    name: str = ""

    def __post_init__(self):
        if self.dim <= 0:
            raise ConfigError("dim must be positive")
        if len(self.basis) != self.dim:
            raise ConfigError(f"{len(self.basis)} basis labels for dim {self.dim}")
        if len(set(self.basis)) != self.dim:
            raise ConfigError("basis labels must be unique")
        if self.f.dims != (self.dim,) * 3:
            raise ShapeError(f"structure constants have dims {self.f.dims}, expected {(self.dim,) * 3}")

    @property
    def table(self) -> list[list[list[Fraction]]]:
        """f as nested lists ``table[a][b][c]``; cached, used in hot loops."""
        cached = self.__dict__.get("_table")
        if cached is None:
            n = self.dim
            cached = [[[self.f[a, b, c] for c in range(n)] for b in range(n)] for a in range(n)]
            object.__setattr__(self, "_table", cached)
        return cached

    @property
    def brackets(self) -> dict[tuple[int, int], dict[int, Fraction]]:
        """Sparse ``(b, c) -> {a: f^a_{bc}}`` over nonzero entries."""
        cached = self.__dict__.get("_brackets")
        if cached is None:
            cached = {}
            for (a, b, c), v in self.f.nonzero().items():
                cached.setdefault((b, c), {})[a] = v
            object.__setattr__(self, "_brackets", cached)
        return cached

    def index(self, label: str) -> int:
        try:
            return self.basis.index(label)
        except ValueError:
            raise ConfigError(f"no basis element named {label!r}") from None

    def is_antisymmetric(self) -> list[tuple[int, int, int]]:
        """Index triples (a, b, c) where f^a_{bc} != -f^a_{cb}."""
        t = self.table
        n = self.dim
        return [
            (a, b, c)
            for a, b, c in product(range(n), repeat=3)
            if b <= c and t[a][b][c] != -t[a][c][b]
        ]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.basis == other.basis and self.f == other.f

    def __hash__(self) -> int:
        return hash((self.basis, self.f))


def _vec(v: Sequence, n: int) -> list[Fraction]:
    if len(v) != n:
        raise ShapeError(f"vector of length {len(v)}, expected {n}")
    return [as_fraction(x) for x in v]


def bracket(L: LieAlgebra, x: Sequence, y: Sequence) -> list[Fraction]:
    x = _vec(x, L.dim)
    y = _vec(y, L.dim)
    z = [Fraction(0)] * L.dim
    for (b, c), col in L.brackets.items():
        w = x[b] * y[c]
        if w:
            for a, v in col.items():
                z[a] += v * w
    return z


def basis_vector(n: int, i: int) -> list[Fraction]:
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return v


def jacobi_residual(L: LieAlgebra, a: int, b: int, c: int, k: int) -> Fraction:
    """f^d_{bc} f^k_{ad} + f^d_{ca} f^k_{bd} + f^d_{ab} f^k_{cd}."""
    t = L.table
    tk = t[k]
    acc = Fraction(0)
    for d in range(L.dim):
        acc += t[d][b][c] * tk[a][d] + t[d][c][a] * tk[b][d] + t[d][a][b] * tk[c][d]
    return acc


def check_jacobi(L: LieAlgebra) -> Report:
    """Evaluate the quadratic Jacobi identity on every index 4-tuple."""
    n = L.dim
    violations = []
    for a, b, c, k in product(range(n), repeat=4):
        r = jacobi_residual(L, a, b, c, k)
        if r:
            violations.append(
                {
                    "indices": [a + 1, b + 1, c + 1, k + 1],
                    "labels": [L.basis[i] for i in (a, b, c, k)],
                    "residual": r,
                }
            )
    return Report(
        "jacobi",
        violations,
        data={"algebra": L.name or "custom", "dim": n, "tuples_checked": n**4},
    )


# ---------------------------------------------------------------- construction


def from_brackets(
    basis: Sequence[str], brackets: dict[tuple[str, str], dict[str, object]], name: str = ""
) -> LieAlgebra:
    """Build from ``{(X, Y): {Z: coeff}}`` meaning [X, Y] = coeff Z; antisymmetry added."""
    basis = tuple(basis)
    pos = {s: i for i, s in enumerate(basis)}
    n = len(basis)
    entries: dict[tuple[int, int, int], Fraction] = {}
    for (x, y), out in brackets.items():
        for z, v in out.items():
            v = as_fraction(v)
            b, c, a = pos[x], pos[y], pos[z]
            entries[(a, b, c)] = entries.get((a, b, c), Fraction(0)) + v
            entries[(a, c, b)] = entries.get((a, c, b), Fraction(0)) - v
    return LieAlgebra(n, basis, Tensor.from_entries((n, n, n), entries), name=name)


def _mat_unit(n: int, i: int, j: int) -> Matrix:
    return tuple(
        tuple(Fraction(1) if (r, c) == (i, j) else Fraction(0) for c in range(n)) for r in range(n)
    )


def _sym(m: Matrix) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in row] for row in m])


def _frac(x) -> Fraction:
    x = sympy.Rational(x)
    return Fraction(int(x.p), int(x.q))


def from_matrices(matrices: Sequence[Matrix], basis: Sequence[str], name: str = "") -> LieAlgebra:
    """Structure constants of the span of ``matrices`` under the commutator.

    The span must be closed under commutators; coordinates are solved exactly.
    """
    mats = [_sym(m) for m in matrices]
    n = len(mats)
    flat = sympy.Matrix.hstack(*[m.reshape(m.rows * m.cols, 1) for m in mats])
    if flat.rank() != n:
        raise ConfigError("basis matrices are linearly dependent")
    entries = {}
    for b in range(n):
        for c in range(b + 1, n):
            comm = mats[b] * mats[c] - mats[c] * mats[b]
            target = comm.reshape(comm.rows * comm.cols, 1)
            try:
                sol, params = flat.gauss_jordan_solve(target)
            except ValueError:
                raise ConfigError(f"span not closed: [{basis[b]}, {basis[c]}]") from None
            for a in range(n):
                v = _frac(sol[a])
                if v:
                    entries[(a, b, c)] = v
                    entries[(a, c, b)] = -v
    mats_t = tuple(tuple(tuple(_frac(x) for x in m.row(r)) for r in range(m.rows)) for m in mats)
    return LieAlgebra(n, tuple(basis), Tensor.from_entries((n, n, n), entries), mats_t, name)


def _gl(n: int) -> LieAlgebra:
    mats, labels = [], []
    for i, j in product(range(n), repeat=2):
        mats.append(_mat_unit(n, i, j))
        labels.append(f"E{i + 1}{j + 1}" if n < 10 else f"E{i + 1}_{j + 1}")
    # f from E_ij E_kl = delta_jk E_il, no solve needed
    entries: dict[tuple[int, int, int], Fraction] = {}

    def idx(i, j):
        return i * n + j

    for i, j, k, l in product(range(n), repeat=4):
        b, c = idx(i, j), idx(k, l)
        if j == k:
            key = (idx(i, l), b, c)
            entries[key] = entries.get(key, Fraction(0)) + 1
        if l == i:
            key = (idx(k, j), b, c)
            entries[key] = entries.get(key, Fraction(0)) - 1
    N = n * n
    return LieAlgebra(N, tuple(labels), Tensor.from_entries((N, N, N), entries), tuple(mats), f"gl({n})")


def _sl(n: int) -> LieAlgebra:
    if n == 2:
        labels = ["h", "e", "f"]
    else:
        labels = [f"H{i + 1}" for i in range(n - 1)]
    mats = []
    for i in range(n - 1):
        m = [[Fraction(0)] * n for _ in range(n)]
        m[i][i], m[i + 1][i + 1] = Fraction(1), Fraction(-1)
        mats.append(tuple(tuple(r) for r in m))
    for i, j in product(range(n), repeat=2):
        if i != j:
            mats.append(_mat_unit(n, i, j))
            if n != 2:
                labels.append(f"E{i + 1}{j + 1}")
    return from_matrices(mats, labels, f"sl({n})")


def _heisenberg(size: int) -> LieAlgebra:
    if size < 3 or size % 2 == 0:
        raise ConfigError("heisenberg size must be odd and >= 3")
    k = (size - 1) // 2
    m = k + 2
    mats, labels = [], []
    for i in range(k):
        mats.append(_mat_unit(m, 0, i + 1))
        labels.append("x" if k == 1 else f"x{i + 1}")
    for i in range(k):
        mats.append(_mat_unit(m, i + 1, m - 1))
        labels.append("y" if k == 1 else f"y{i + 1}")
    mats.append(_mat_unit(m, 0, m - 1))
    labels.append("z")
    return from_matrices(mats, labels, f"heisenberg({size})")


def _abelian(size: int) -> LieAlgebra:
    if size < 1:
        raise ConfigError("abelian size must be >= 1")
    mats = tuple(_mat_unit(size, i, i) for i in range(size))
    labels = tuple(f"T{i + 1}" for i in range(size))
    return LieAlgebra(size, labels, Tensor.zeros((size,) * 3), mats, f"abelian({size})")


def _affine1(size: int) -> LieAlgebra:
    if size != 2:
        raise ConfigError("affine1 has size 2")
    return from_matrices([_mat_unit(2, 0, 0), _mat_unit(2, 0, 1)], ["x", "y"], "affine1")


BUILTINS = {
    "gl": _gl,
    "sl": _sl,
    "heisenberg": _heisenberg,
    "abelian": _abelian,
    "affine1": _affine1,
}


def builtin(name: str, size: int) -> LieAlgebra:
    try:
        make = BUILTINS[name]
    except KeyError:
        raise ConfigError(f"unknown builtin {name!r}; choose from {sorted(BUILTINS)}") from None
    if name in ("gl", "sl") and size < (1 if name == "gl" else 2):
        raise ConfigError(f"{name}({size}) is not valid")
    return make(size)


def with_constant(L: LieAlgebra, a: int, b: int, c: int, value) -> LieAlgebra:
    """Copy of L with f^a_{bc} := value and f^a_{cb} := -value (breaks Jacobi on purpose)."""
    n = L.dim
    entries = dict(L.f.nonzero())
    v = as_fraction(value)
    entries[(a, b, c)] = v
    entries[(a, c, b)] = -v
    return LieAlgebra(n, L.basis, Tensor.from_entries((n,) * 3, entries), None, L.name + "*")


def direct_sum(L1: LieAlgebra, L2: LieAlgebra) -> LieAlgebra:
    n1, n = L1.dim, L1.dim + L2.dim
    entries = dict(L1.f.nonzero())
    for (a, b, c), v in L2.f.nonzero().items():
        entries[(a + n1, b + n1, c + n1)] = v
    labels = tuple(f"{s}_1" for s in L1.basis) + tuple(f"{s}_2" for s in L2.basis)
    return LieAlgebra(n, labels, Tensor.from_entries((n,) * 3, entries), None, f"{L1.name}+{L2.name}")


def change_basis(L: LieAlgebra, P: Sequence[Sequence]) -> LieAlgebra:
    """Re-express L in the basis whose i-th vector is column i of P."""
    n = L.dim
    Ps = sympy.Matrix([[sympy.Rational(str(as_fraction(x))) for x in row] for row in P])
    if Ps.shape != (n, n) or Ps.det() == 0:
        raise ConfigError("change of basis must be an invertible n x n matrix")
    Pinv = Ps.inv()
    cols = [[as_fraction(_frac(Ps[r, i])) for r in range(n)] for i in range(n)]
    inv = [[_frac(Pinv[r, c]) for c in range(n)] for r in range(n)]
    entries = {}
    for i in range(n):
        for j in range(i + 1, n):
            z = bracket(L, cols[i], cols[j])
            for a in range(n):
                v = sum((inv[a][d] * z[d] for d in range(n)), Fraction(0))
                if v:
                    entries[(a, i, j)] = v
                    entries[(a, j, i)] = -v
    labels = tuple(f"U{i + 1}" for i in range(n))
    return LieAlgebra(n, labels, Tensor.from_entries((n,) * 3, entries), None, f"{L.name}~")


def random_lie_algebra(rng: random.Random, max_dim: int = 4) -> LieAlgebra:
    """A Jacobi-passing algebra of dim <= max_dim in a random integer basis."""
    pool = [
        builtin("abelian", 2),
        builtin("affine1", 2),
        builtin("heisenberg", 3),
        builtin("sl", 2),
        builtin("abelian", 3),
        builtin("gl", 2),
        direct_sum(builtin("affine1", 2), builtin("affine1", 2)),
        direct_sum(builtin("sl", 2), builtin("abelian", 1)),
        direct_sum(builtin("heisenberg", 3), builtin("abelian", 1)),
        direct_sum(builtin("affine1", 2), builtin("abelian", 1)),
        direct_sum(builtin("affine1", 2), builtin("abelian", 2)),
    ]
    pool = [L for L in pool if L.dim <= max_dim]
    L = rng.choice(pool)
    n = L.dim
    while True:
        P = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        if sympy.Matrix(P).det() != 0:
            return change_basis(L, P)


# ---------------------------------------------------------------- bilinear forms


@dataclass(frozen=True)
class BilinearForm:
    g: Tensor
    nondegenerate: bool = field(init=False)

    def __post_init__(self):
        n = self.g.dims[0]
        if self.g.dims != (n, n):
            raise ShapeError("bilinear form must be rank 2 and square")
        for i in range(n):
            for j in range(i + 1, n):
                if self.g[i, j] != self.g[j, i]:
                    raise ConfigError(f"form not symmetric at ({i + 1}, {j + 1})")
        det = sympy.Matrix(n, n, lambda i, j: sympy.Rational(str(self.g[i, j]))).det()
        object.__setattr__(self, "nondegenerate", det != 0)

    def __call__(self, x: Sequence, y: Sequence) -> Fraction:
        acc = Fraction(0)
        for (i, j), v in self.g.nonzero().items():
            acc += v * x[i] * y[j]
        return acc


def trace_form(L: LieAlgebra) -> BilinearForm:
    """<T_a, T_b> = Tr(M_a M_b) for the matrix realization of L."""
    if L.matrices is None:
        raise UnsupportedError(f"{L.name or 'algebra'} has no matrix realization")
    mats = [_sym(m) for m in L.matrices]
    n = L.dim
    entries = {}
    for a in range(n):
        for b in range(n):
            v = _frac((mats[a] * mats[b]).trace())
            if v:
                entries[(a, b)] = v
    return BilinearForm(Tensor.from_entries((n, n), entries))


def trace_coefficients(L: LieAlgebra) -> list[Fraction]:
    """omega_a = Tr(M_a), the coefficients of the trace functional."""
    if L.matrices is None:
        raise UnsupportedError(f"{L.name or 'algebra'} has no matrix realization")
    return [sum((m[i][i] for i in range(len(m))), Fraction(0)) for m in L.matrices]
