"""Index formulas like ``"Omega^a - 1/2 f^a_bc phi^b A^c"`` and their expansion.

A formula is a signed sum of terms; each term is an optional rational
coefficient, at most one structure-constant tensor (``f^a_bc`` or
``K^a_bcd``) and a product of factors. A factor is ``name^i`` (a component
of an indexed family) or a bare ``name`` (a scalar element, or an indexed
family written without its index, which cannot be evaluated literally).
The free index is ``a``; every other index symbol is summed over, including
one that occurs only once.

Bracket notation (``"F - 1/2 [A,A]"``) is handled separately by
:func:`parse_bracket_form`, which expands through :func:`nambu_weil.dga.bracket2`
and :func:`nambu_weil.dga.bracket3` instead of through index sums.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import product
from typing import Sequence

from .dga import GeneratorSet, GradedElement, add_families, bracket2, bracket3, scale_family
from .report import ConfigError
from .tensor import Tensor

FREE = "a"

_COEF = re.compile(r"^\d+(/\d+)?$")
_TENSOR = re.compile(r"^([fK])\^(\w)_(\w+)$")
_FACTOR = re.compile(r"^([A-Za-z]+)(?:\^(\w))?$")
_BRACKET = re.compile(r"^\[([A-Za-z]+(?:,[A-Za-z]+){1,2})\]$")


class MissingIndex(ValueError):
    """An indexed family was written without an index."""


@dataclass(frozen=True)
class Factor:
    name: str
    index: str | None = None

    def text(self) -> str:
        return self.name if self.index is None else f"{self.name}^{self.index}"


@dataclass(frozen=True)
class Term:
    coeff: Fraction
    tensor: str | None = None
    tensor_indices: tuple[str, ...] = ()
    factors: tuple[Factor, ...] = ()

    def symbols(self) -> list[str]:
        seen = []
        for s in self.tensor_indices + tuple(f.index for f in self.factors if f.index):
            if s not in seen:
                seen.append(s)
        return seen

    def label(self) -> str:
        """Signed rendering, e.g. ``-1/2 f^a_bc A^b Xi``."""
        return ("-" if self.coeff < 0 else "") + self.text()

    def text(self) -> str:
        parts = []
        if abs(self.coeff) != 1:
            parts.append(str(abs(self.coeff)))
        if self.tensor:
            up, *low = self.tensor_indices
            parts.append(f"{self.tensor}^{up}_{''.join(low)}")
        parts.extend(f.text() for f in self.factors)
        body = " ".join(p for p in parts if p)
        return body or "1"


@dataclass(frozen=True)
class Formula:
    terms: tuple[Term, ...]
    source: str = ""

    def text(self) -> str:
        out = []
        for i, t in enumerate(self.terms):
            sign = "-" if t.coeff < 0 else "+"
            body = t.text()
            if i == 0:
                out.append(("- " if sign == "-" else "") + body)
            else:
                out.append(f"{sign} {body}")
        return " ".join(out) if out else "0"

    def substitute(self, term: int, factor: int, index: str | None) -> "Formula":
        t = self.terms[term]
        facs = list(t.factors)
        facs[factor] = replace(facs[factor], index=index)
        terms = list(self.terms)
        terms[term] = replace(t, factors=tuple(facs))
        return replace(self, terms=tuple(terms))


def _split_signed(text: str) -> list[tuple[int, list[str]]]:
    # operators must be space separated; a leading "-x" is split off
    toks: list[str] = []
    for tok in text.split():
        if tok.startswith("-") and tok != "-":
            toks.extend(["-", tok[1:]])
        else:
            toks.append(tok)
    groups: list[tuple[int, list[str]]] = []
    sign = 1
    cur: list[str] = []
    for tok in toks:
        if tok in "+-":
            if cur:
                groups.append((sign, cur))
                cur = []
            sign = -1 if tok == "-" else 1
        else:
            cur.append(tok)
    if cur:
        groups.append((sign, cur))
    return groups


def parse(text: str) -> Formula:
    terms = []
    if text.strip() == "0":
        return Formula((), text)
    for sign, toks in _split_signed(text):
        coeff = Fraction(sign)
        tensor, tidx, factors = None, (), []
        for tok in toks:
            if _COEF.match(tok):
                coeff *= Fraction(tok)
            elif m := _TENSOR.match(tok):
                if tensor:
                    raise ConfigError(f"two tensors in one term: {toks}")
                tensor, tidx = m.group(1), (m.group(2),) + tuple(m.group(3))
            elif m := _FACTOR.match(tok):
                factors.append(Factor(m.group(1), m.group(2)))
            else:
                raise ConfigError(f"cannot parse token {tok!r} in {text!r}")
        terms.append(Term(coeff, tensor, tidx, tuple(factors)))
    return Formula(tuple(terms), text)


@dataclass
class Context:
    """Values for the names a formula may mention."""

    gens: GeneratorSet
    dim: int
    tensors: dict[str, Tensor]
    indexed: dict[str, tuple[list[GradedElement], tuple[int, int]]] = field(default_factory=dict)
    scalars: dict[str, tuple[GradedElement, tuple[int, int]]] = field(default_factory=dict)

    def degree(self, f: Factor) -> tuple[int, int]:
        if f.index is None and f.name in self.scalars:
            return self.scalars[f.name][1]
        if f.name in self.indexed:
            return self.indexed[f.name][1]
        raise ConfigError(f"unknown symbol {f.text()}")

    def family(self, name: str) -> list[GradedElement]:
        try:
            return self.indexed[name][0]
        except KeyError:
            raise ConfigError(f"unknown family {name!r}") from None


def term_degree(t: Term, ctx: Context) -> tuple[int, int]:
    p = q = 0
    for f in t.factors:
        dp, dq = ctx.degree(f)
        p, q = p + dp, q + dq
    return (p, q)


def expand(formula: Formula, ctx: Context, a: int) -> GradedElement:
    """Component ``a`` of the formula, with every other index summed."""
    out: dict = {}
    for t in formula.terms:
        dummies = [s for s in t.symbols() if s != FREE]
        for f in t.factors:
            if f.index is None and f.name not in ctx.scalars:
                raise MissingIndex(f"{f.name} has no index in '{t.text()}'")
        tens = ctx.tensors[t.tensor] if t.tensor else None
        for values in product(range(ctx.dim), repeat=len(dummies)):
            env = dict(zip(dummies, values))
            env[FREE] = a
            c = t.coeff
            if tens is not None:
                c *= tens[tuple(env[s] for s in t.tensor_indices)]
                if not c:
                    continue
            x = ctx.gens.scalar(c)
            for f in t.factors:
                if f.index is None:
                    x = x * ctx.scalars[f.name][0]
                else:
                    x = x * ctx.family(f.name)[env[f.index]]
                if not x:
                    break
            for m, v in x.terms.items():
                out[m] = out.get(m, Fraction(0)) + v
    return GradedElement(ctx.gens, out)


def expand_all(formula: Formula, ctx: Context) -> list[GradedElement]:
    return [expand(formula, ctx, a) for a in range(ctx.dim)]


# ---------------------------------------------------------------- bracket notation


@dataclass(frozen=True)
class BracketTerm:
    coeff: Fraction
    names: tuple[str, ...]  # one name = plain family, two/three = bracket


def parse_bracket_form(text: str) -> tuple[BracketTerm, ...]:
    terms = []
    for sign, toks in _split_signed(text):
        coeff = Fraction(sign)
        names: tuple[str, ...] = ()
        for tok in toks:
            if _COEF.match(tok):
                coeff *= Fraction(tok)
            elif m := _BRACKET.match(tok):
                names = tuple(m.group(1).split(","))
            elif re.match(r"^[A-Za-z]+$", tok):
                names = (tok,)
            else:
                raise ConfigError(f"cannot parse token {tok!r} in {text!r}")
        terms.append(BracketTerm(coeff, names))
    return tuple(terms)


def expand_bracket_form(terms: Sequence[BracketTerm], ctx: Context) -> list[GradedElement]:
    out = [ctx.gens.zero() for _ in range(ctx.dim)]
    for t in terms:
        fams = [ctx.family(n) for n in t.names]
        if len(fams) == 1:
            val = fams[0]
        elif len(fams) == 2:
            val = bracket2(ctx.tensors["f"], *fams)
        else:
            val = bracket3(ctx.tensors["K"], *fams)
        out = add_families(out, scale_family(t.coeff, val))
    return out


def bracket_form_degrees(terms: Sequence[BracketTerm], ctx: Context) -> list[tuple[str, tuple[int, int]]]:
    res = []
    for t in terms:
        p = q = 0
        for n in t.names:
            dp, dq = ctx.indexed[n][1]
            p, q = p + dp, q + dq
        label = t.names[0] if len(t.names) == 1 else "[" + ",".join(t.names) + "]"
        res.append((label, (p, q)))
    return res
