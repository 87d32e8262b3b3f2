"""Free (bi)graded-commutative algebras and derivations on them.

Monomials are non-decreasing tuples of generator positions; a generator that
squares to zero under the sign rule (an odd one) appears at most once. The
generator list order is the monomial order, so keep families grouped and
indices ascending when building a :class:`GeneratorSet`.

Two sign rules are supported. ``"total"`` (default) swaps homogeneous
elements of bidegrees (p, q), (p', q') with (-1)^((p+q)(p'+q')).
``"bigraded"`` uses (-1)^(pp' + qq'). Derivations follow the same rule when
they are moved past an element.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .report import ConfigError, Report
from .tensor import Tensor, as_fraction

Monomial = tuple[int, ...]
Bidegree = tuple[int, int]

SIGN_RULES = ("total", "bigraded")


@dataclass(frozen=True)
class Generator:
    name: str
    family: str
    index: int | None
    bidegree: Bidegree

    @property
    def degree(self) -> int:
        return self.bidegree[0] + self.bidegree[1]


class GeneratorSet:
    def __init__(self, generators: Sequence[Generator], sign_rule: str = "total"):
        if sign_rule not in SIGN_RULES:
            raise ConfigError(f"unknown sign rule {sign_rule!r}")
        self.generators = tuple(generators)
        self.sign_rule = sign_rule
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ConfigError("generator names must be unique")
        self._pos = {g.name: i for i, g in enumerate(self.generators)}
        self._fam = {(g.family, g.index): i for i, g in enumerate(self.generators)}
        self.parity = tuple(self.parity_of(g.bidegree) for g in self.generators)
        self.odd = tuple(_dot(p, p) for p in self.parity)
        self._mul_cache: dict[tuple[Monomial, Monomial], tuple[int, Monomial]] = {}

    @classmethod
    def from_families(
        cls, families: Sequence[tuple[str, Bidegree]], size: int, sign_rule: str = "total"
    ) -> "GeneratorSet":
        """One generator ``family^i`` per family and basis index i = 1..size."""
        gens = [
            Generator(f"{fam}^{i + 1}", fam, i, tuple(bideg))
            for fam, bideg in families
            for i in range(size)
        ]
        return cls(gens, sign_rule)

    def parity_of(self, bidegree: Bidegree) -> tuple[int, ...]:
        if self.sign_rule == "total":
            return ((bidegree[0] + bidegree[1]) % 2,)
        return (bidegree[0] % 2, bidegree[1] % 2)

    def __len__(self) -> int:
        return len(self.generators)

    def position(self, name: str) -> int:
        try:
            return self._pos[name]
        except KeyError:
            raise ConfigError(f"no generator named {name!r}") from None

    def gen(self, family: str, index: int | None = None) -> "GradedElement":
        try:
            pos = self._fam[(family, index)]
        except KeyError:
            raise ConfigError(f"no generator {family}[{index}]") from None
        return GradedElement(self, {(pos,): Fraction(1)})

    def family(self, family: str) -> list["GradedElement"]:
        idx = sorted(i for (fam, i) in self._fam if fam == family)
        return [self.gen(family, i) for i in idx]

    def one(self) -> "GradedElement":
        return GradedElement(self, {(): Fraction(1)})

    def zero(self) -> "GradedElement":
        return GradedElement(self, {})

    def scalar(self, c) -> "GradedElement":
        return GradedElement(self, {(): as_fraction(c)})

    def bidegree(self, m: Monomial) -> Bidegree:
        p = q = 0
        for g in m:
            bp, bq = self.generators[g].bidegree
            p += bp
            q += bq
        return (p, q)

    def mul_monomials(self, m1: Monomial, m2: Monomial) -> tuple[int, Monomial]:
        """Koszul-signed product of two canonical monomials; sign 0 if it vanishes."""
        key = (m1, m2)
        hit = self._mul_cache.get(key)
        if hit is not None:
            return hit
        if not m1 or not m2:
            res = (1, m1 or m2)
        else:
            sign = 1
            par = self.parity
            odd = self.odd
            for h in m2:
                ph = par[h]
                if odd[h] and h in m1:
                    sign = 0
                    break
                for g in m1:
                    if g > h and _dot(par[g], ph):
                        sign = -sign
            res = (sign, tuple(sorted(m1 + m2)) if sign else ())
        self._mul_cache[key] = res
        return res

    def render_monomial(self, m: Monomial) -> str:
        if not m:
            return "1"
        return "*".join(self.generators[g].name for g in m)


def _dot(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    return sum(x * y for x, y in zip(a, b)) % 2


class GradedElement:
    """Finite linear combination of canonical monomials with Fraction coefficients."""

    __slots__ = ("gens", "terms")

    def __init__(self, gens: GeneratorSet, terms: Mapping[Monomial, Fraction] | None = None):
        self.gens = gens
        self.terms: dict[Monomial, Fraction] = {m: c for m, c in (terms or {}).items() if c}

    def _check(self, other: "GradedElement") -> None:
        if other.gens is not self.gens:
            raise ConfigError("elements belong to different generator sets")

    def _coerce(self, other) -> "GradedElement":
        if isinstance(other, GradedElement):
            self._check(other)
            return other
        return self.gens.scalar(other)

    def __add__(self, other) -> "GradedElement":
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return GradedElement(self.gens, out)

    __radd__ = __add__

    def __neg__(self) -> "GradedElement":
        return GradedElement(self.gens, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "GradedElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "GradedElement":
        return self._coerce(other) - self

    def __mul__(self, other) -> "GradedElement":
        if not isinstance(other, GradedElement):
            c = as_fraction(other)
            return GradedElement(self.gens, {m: c * v for m, v in self.terms.items()})
        self._check(other)
        out: dict[Monomial, Fraction] = {}
        mul = self.gens.mul_monomials
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                s, m = mul(m1, m2)
                if s:
                    out[m] = out.get(m, Fraction(0)) + s * c1 * c2
        return GradedElement(self.gens, out)

    def __rmul__(self, other) -> "GradedElement":
        return self * other  # scalars commute with everything

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GradedElement):
            return self.gens is other.gens and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({(): Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def bidegrees(self) -> set[Bidegree]:
        return {self.gens.bidegree(m) for m in self.terms}

    def bidegree(self) -> Bidegree:
        """Bidegree of a homogeneous nonzero element."""
        degs = self.bidegrees()
        if len(degs) != 1:
            raise ValueError(f"element is not homogeneous: {sorted(degs)}")
        return degs.pop()

    def canonical(self) -> "GradedElement":
        """Re-normalize every monomial through multiplication; identity on canonical input."""
        out = self.gens.zero()
        for m, c in self.terms.items():
            x = self.gens.scalar(c)
            for g in m:
                x = x * GradedElement(self.gens, {(g,): Fraction(1)})
            out = out + x
        return out

    def render(self) -> str:
        if not self.terms:
            return "0"
        gens = self.gens
        items = sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))
        parts = []
        for i, (m, c) in enumerate(items):
            neg = c < 0
            a = -c if neg else c
            mono = gens.render_monomial(m)
            if not m:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if i == 0:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"GradedElement({self.render()})"

    def to_json(self) -> str:
        return self.render()


def multiply(x: GradedElement, y: GradedElement) -> GradedElement:
    return x * y


def product(factors: Iterable[GradedElement], gens: GeneratorSet) -> GradedElement:
    out = gens.one()
    for f in factors:
        out = out * f
    return out


# ---------------------------------------------------------------- differentials


@dataclass(eq=False)
class Differential:
    """Derivation given on generators, extended by the graded Leibniz rule.

    ``shift`` is the bidegree raised by the map; ``None`` marks a sum of
    differentials that is only homogeneous in total degree (+1). ``declared``
    optionally records, per generator position, the structural degree of each
    term in the formula the image was built from, so that terms cancelling
    to zero are still audited.
    """

    gens: GeneratorSet
    images: dict[int, GradedElement]
    shift: Bidegree | None
    name: str = "d"
    declared: dict[int, list[tuple[str, Bidegree]]] = field(default_factory=dict)
    strict: bool = True

    def __post_init__(self):
        for g, img in self.images.items():
            if img.gens is not self.gens:
                raise ConfigError(f"image of {self.gens.generators[g].name} over a different generator set")
        if self.shift is None:
            if self.gens.sign_rule != "total":
                raise ConfigError("inhomogeneous differential needs the total sign rule")
            self.parity = (1,)
        else:
            self.parity = self.gens.parity_of(self.shift)
        self._cache: dict[Monomial, GradedElement] = {}
        if self.strict:
            bad = check_degree_consistency(self)
            if not bad.passed:
                raise ConfigError(f"{self.name}: degree-inconsistent images: {bad.violations}")

    @classmethod
    def from_families(
        cls, gens: GeneratorSet, images: Mapping[str, Sequence[GradedElement]], shift, name="d", **kw
    ) -> "Differential":
        """``images[family][i]`` is the image of generator family^(i+1)."""
        table = {}
        for fam, imgs in images.items():
            for i, img in enumerate(imgs):
                table[gens._fam[(fam, i)]] = img
        return cls(gens, table, shift, name, **kw)

    def image(self, g: int) -> GradedElement:
        return self.images.get(g) or self.gens.zero()

    def expected_bidegree(self, g: int) -> Bidegree:
        p, q = self.gens.generators[g].bidegree
        if self.shift is None:
            return (p, q)
        return (p + self.shift[0], q + self.shift[1])

    def on_monomial(self, m: Monomial) -> GradedElement:
        hit = self._cache.get(m)
        if hit is not None:
            return hit
        gens = self.gens
        out: dict[Monomial, Fraction] = {}
        par = gens.parity
        mul = gens.mul_monomials
        sign = 1
        for i, g in enumerate(m):
            img = self.images.get(g)
            if img is not None and img.terms:
                prefix, suffix = m[:i], m[i + 1 :]
                for mm, c in img.terms.items():
                    s1, left = mul(prefix, mm)
                    if not s1:
                        continue
                    s2, full = mul(left, suffix)
                    if not s2:
                        continue
                    out[full] = out.get(full, Fraction(0)) + sign * s1 * s2 * c
            if _dot(self.parity, par[g]):
                sign = -sign
        res = GradedElement(gens, out)
        self._cache[m] = res
        return res

    def __call__(self, x: GradedElement) -> GradedElement:
        if x.gens is not self.gens:
            raise ConfigError("element over a different generator set")
        out: dict[Monomial, Fraction] = {}
        for m, c in x.terms.items():
            for mm, v in self.on_monomial(m).terms.items():
                out[mm] = out.get(mm, Fraction(0)) + c * v
        return GradedElement(self.gens, out)

    def __add__(self, other: "Differential") -> "Differential":
        if other.gens is not self.gens:
            raise ConfigError("differentials over different generator sets")
        keys = sorted(set(self.images) | set(other.images))
        images = {g: self.image(g) + other.image(g) for g in keys}
        shift = self.shift if self.shift == other.shift else None
        return Differential(self.gens, images, shift, f"{self.name}+{other.name}", strict=self.strict and other.strict)


def apply_differential(D: Differential, x: GradedElement) -> GradedElement:
    return D(x)


def _residual_entry(D: Differential, g: int, res: GradedElement) -> dict:
    gen = D.gens.generators[g]
    return {"generator": gen.name, "residual": res.render(), "terms": len(res.terms)}


def check_nilpotent(D: Differential, E: Differential | None = None) -> Report:
    """D(D(g)) = 0 for every generator g; with E given, checks D E + E D instead."""
    violations = []
    for g in range(len(D.gens)):
        x = GradedElement(D.gens, {(g,): Fraction(1)})
        res = D(D(x)) if E is None else D(E(x)) + E(D(x))
        if res:
            violations.append(_residual_entry(D, g, res))
    name = f"{D.name}^2=0" if E is None else f"{D.name}{E.name}+{E.name}{D.name}=0"
    return Report(name, violations, data={"generators": len(D.gens), "sign_rule": D.gens.sign_rule})


def check_degree_consistency(D: Differential) -> Report:
    """Every term of every image, and every declared formula term, has the right (bi)degree."""
    violations = []
    gens = D.gens
    for g in sorted(set(D.images) | set(D.declared)):
        gen = gens.generators[g]
        want = D.expected_bidegree(g)
        total_only = D.shift is None

        def ok(deg: Bidegree) -> bool:
            if total_only:
                return deg[0] + deg[1] == want[0] + want[1] + 1
            return deg == want

        for text, deg in D.declared.get(g, []):
            if not ok(deg):
                violations.append(
                    {"generator": gen.name, "term": text, "degree": list(deg), "expected": list(want), "source": "formula"}
                )
        img = D.images.get(g)
        if img is None:
            continue
        for m in sorted(img.terms):
            deg = gens.bidegree(m)
            if not ok(deg):
                violations.append(
                    {
                        "generator": gen.name,
                        "term": gens.render_monomial(m),
                        "degree": list(deg),
                        "expected": list(want),
                        "source": "image",
                    }
                )
    return Report(f"{D.name}:degrees", violations)


def random_monomial(gens: GeneratorSet, rng: random.Random, max_len: int = 3) -> Monomial:
    while True:
        k = rng.randint(0, max_len)
        picks = [rng.randrange(len(gens)) for _ in range(k)]
        m = tuple(sorted(picks))
        if all(not gens.odd[g] or m.count(g) == 1 for g in m):
            return m


def random_homogeneous(gens: GeneratorSet, rng: random.Random, max_len: int = 3, terms: int = 2) -> GradedElement:
    """Random element whose monomials share one bidegree."""
    first = random_monomial(gens, rng, max_len)
    deg = gens.bidegree(first)
    out = {first: Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 1, 2, 3]))}
    for _ in range(50 * terms):
        if len(out) >= terms:
            break
        m = random_monomial(gens, rng, max_len)
        if gens.bidegree(m) == deg and m not in out:
            out[m] = Fraction(rng.choice([-2, -1, 1, 2]))
    return GradedElement(gens, out)


def check_leibniz(D: Differential, trials: int = 50, seed: int = 0) -> Report:
    """D(xy) - D(x)y - (-1)^{|x|} x D(y) = 0 on random homogeneous pairs."""
    rng = random.Random(seed)
    gens = D.gens
    violations = []
    for t in range(trials):
        x = random_homogeneous(gens, rng)
        y = random_homogeneous(gens, rng)
        sign = -1 if _dot(D.parity, gens.parity_of(x.bidegree())) else 1
        res = D(x * y) - D(x) * y - sign * (x * D(y))
        if res:
            violations.append({"trial": t, "x": x.render(), "y": y.render(), "residual": res.render()})
    return Report(f"{D.name}:leibniz", violations, data={"trials": trials, "seed": seed})


# ---------------------------------------------------------------- component families


def bracket2(f: Tensor, P: Sequence[GradedElement], Q: Sequence[GradedElement]) -> list[GradedElement]:
    """[T_b (x) P^b, T_c (x) Q^c] = T_a (x) f^a_{bc} P^b Q^c, componentwise."""
    n = f.dims[0]
    gens = P[0].gens
    out = [gens.zero() for _ in range(n)]
    acc: list[dict] = [dict() for _ in range(n)]
    prods: dict[tuple[int, int], GradedElement] = {}
    for (a, b, c), v in f.nonzero().items():
        pq = prods.get((b, c))
        if pq is None:
            pq = prods[(b, c)] = P[b] * Q[c]
        for m, cc in pq.terms.items():
            acc[a][m] = acc[a].get(m, Fraction(0)) + v * cc
    for a in range(n):
        out[a] = GradedElement(gens, acc[a])
    return out


def bracket3(
    K: Tensor, P: Sequence[GradedElement], Q: Sequence[GradedElement], R: Sequence[GradedElement]
) -> list[GradedElement]:
    """Ternary analog of :func:`bracket2` using K^a_{bcd}."""
    n = K.dims[0]
    gens = P[0].gens
    acc: list[dict] = [dict() for _ in range(n)]
    prods: dict[tuple[int, int, int], GradedElement] = {}
    for (a, b, c, d), v in K.nonzero().items():
        pqr = prods.get((b, c, d))
        if pqr is None:
            pqr = prods[(b, c, d)] = P[b] * Q[c] * R[d]
        for m, cc in pqr.terms.items():
            acc[a][m] = acc[a].get(m, Fraction(0)) + v * cc
    return [GradedElement(gens, acc[a]) for a in range(n)]


def contract(omega: Sequence, P: Sequence[GradedElement]) -> GradedElement:
    """omega_a P^a."""
    out = P[0].gens.zero()
    for w, p in zip(omega, P):
        if w:
            out = out + p * as_fraction(w)
    return out


def scale_family(c, P: Sequence[GradedElement]) -> list[GradedElement]:
    return [p * as_fraction(c) for p in P]


def add_families(*Ps: Sequence[GradedElement]) -> list[GradedElement]:
    return [sum(parts[1:], parts[0]) for parts in zip(*Ps)]


def lmul_family(x: GradedElement, P: Sequence[GradedElement]) -> list[GradedElement]:
    return [x * p for p in P]
