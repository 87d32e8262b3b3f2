"""JSON documents for Lie algebras, cochains and n-Lie algebras.

Rationals are strings ("p/q") so no float ever enters. Indices are 1-based.

    Lie algebra  {"dim": 4, "basis": [...], "f": [[b, c, a, "p/q"], ...],
                  "matrices": [[["p/q", ...], ...], ...]}   (matrices optional)
    cochain      {"degree": 1, "entries": [[[i1, ..., ik], "p/q"], ...]}
    n-Lie        {"dim": 4, "arity": 3, "basis": [...], "K": [[[b1, ..., bn], a, "p/q"], ...]}

Structure constants are listed for b < c only. A pair with b > c is either
rejected or folded in by antisymmetry (``antisymmetrize=True``); b == c with
a nonzero value is always rejected.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import jsonschema

from .cochains import Cochain
from .lie import LieAlgebra, from_matrices
from .nlie import NLieAlgebra, from_columns
from .report import ConfigError
from .tensor import Tensor, as_fraction, sort_with_sign

RATIONAL = {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}
INDEX = {"type": "integer", "minimum": 1}

LIE_SCHEMA = {
    "type": "object",
    "required": ["dim", "f"],
    "additionalProperties": False,
    "properties": {
        "dim": {"type": "integer", "minimum": 1},
        "name": {"type": "string"},
        "basis": {"type": "array", "items": {"type": "string"}},
        "f": {
            "type": "array",
            "items": {
                "type": "array",
                "prefixItems": [INDEX, INDEX, INDEX, RATIONAL],
                "minItems": 4,
                "maxItems": 4,
            },
        },
        "matrices": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "array", "items": RATIONAL}},
        },
    },
}

COCHAIN_SCHEMA = {
    "type": "object",
    "required": ["degree", "entries"],
    "additionalProperties": False,
    "properties": {
        "degree": {"type": "integer", "minimum": 0},
        "entries": {
            "type": "array",
            "items": {
                "type": "array",
                "prefixItems": [{"type": "array", "items": INDEX}, RATIONAL],
                "minItems": 2,
                "maxItems": 2,
            },
        },
    },
}

NLIE_SCHEMA = {
    "type": "object",
    "required": ["dim", "arity", "K"],
    "additionalProperties": False,
    "properties": {
        "dim": {"type": "integer", "minimum": 1},
        "arity": {"type": "integer", "minimum": 2},
        "name": {"type": "string"},
        "basis": {"type": "array", "items": {"type": "string"}},
        "K": {
            "type": "array",
            "items": {
                "type": "array",
                "prefixItems": [{"type": "array", "items": INDEX}, INDEX, RATIONAL],
                "minItems": 3,
                "maxItems": 3,
            },
        },
    },
}


class LoadError(ConfigError):
    """A document that cannot be turned into an object; the message says where."""


def _read(path: str | Path) -> object:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as e:
        raise LoadError(f"{path}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise LoadError(f"{path}: parse error at line {e.lineno}, column {e.colno}: {e.msg}") from None


def _validate(doc: object, schema: dict, source: str) -> None:
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        where = "/".join(str(p) for p in e.absolute_path) or "(root)"
        raise LoadError(f"{source}: schema violation at {where}: {e.message}")


def _in_range(idx, dim: int, where: str, source: str) -> None:
    for i in idx:
        if i > dim:
            raise LoadError(f"{source}: index {i} out of range 1..{dim} at {where}")


def _basis(doc: dict, dim: int, source: str, default: str) -> tuple[str, ...]:
    basis = doc.get("basis") or [f"{default}{i + 1}" for i in range(dim)]
    if len(basis) != dim:
        raise LoadError(f"{source}: schema violation at basis: {len(basis)} labels for dim {dim}")
    return tuple(basis)


def lie_from_doc(doc: object, antisymmetrize: bool = False, source: str = "<doc>") -> LieAlgebra:
    _validate(doc, LIE_SCHEMA, source)
    n = doc["dim"]
    basis = _basis(doc, n, source, "T")
    entries: dict[tuple[int, int, int], Fraction] = {}
    for k, (b, c, a, v) in enumerate(doc["f"]):
        _in_range((b, c, a), n, f"f/{k}", source)
        v = Fraction(v)
        if b == c:
            if v:
                raise LoadError(f"{source}: antisymmetry violation at f/{k}: f^{a}_{{{b}{c}}} = {v} on index triple ({a},{b},{c})")
            continue
        if b > c:
            if not antisymmetrize:
                raise LoadError(
                    f"{source}: antisymmetry violation at f/{k}: entry listed with b > c on index triple ({a},{b},{c});"
                    " list b < c or pass --antisymmetrize"
                )
            b, c, v = c, b, -v
        key = (a - 1, b - 1, c - 1)
        if key in entries and entries[key] != v:
            raise LoadError(f"{source}: antisymmetry violation at f/{k}: conflicting values for index triple ({a},{b},{c})")
        entries[key] = v
    full = {}
    for (a, b, c), v in entries.items():
        if v:
            full[(a, b, c)] = v
            full[(a, c, b)] = -v
    matrices = None
    if "matrices" in doc:
        mats = doc["matrices"]
        if len(mats) != n:
            raise LoadError(f"{source}: schema violation at matrices: {len(mats)} matrices for dim {n}")
        matrices = tuple(tuple(tuple(as_fraction(x) for x in row) for row in m) for m in mats)
    f = Tensor.from_entries((n,) * 3, full)
    if matrices is not None and from_matrices(matrices, basis).f != f:
        raise LoadError(f"{source}: matrices do not reproduce the structure constants f")
    return LieAlgebra(n, basis, f, matrices, doc.get("name", ""))


def load_algebra(path: str | Path, antisymmetrize: bool = False) -> LieAlgebra:
    return lie_from_doc(_read(path), antisymmetrize, str(path))


def algebra_to_doc(L: LieAlgebra) -> dict:
    doc: dict = {"dim": L.dim, "name": L.name, "basis": list(L.basis)}
    doc["f"] = [
        [b + 1, c + 1, a + 1, str(v)] for (a, b, c), v in sorted(L.f.nonzero().items(), key=lambda kv: (kv[0][1], kv[0][2], kv[0][0])) if b < c
    ]
    if L.matrices is not None:
        doc["matrices"] = [[[str(x) for x in row] for row in m] for m in L.matrices]
    return doc


def cochain_from_doc(doc: object, L: LieAlgebra, source: str = "<doc>") -> Cochain:
    _validate(doc, COCHAIN_SCHEMA, source)
    deg = doc["degree"]
    coeffs: dict = {}
    for k, (idx, v) in enumerate(doc["entries"]):
        if len(idx) != deg:
            raise LoadError(f"{source}: schema violation at entries/{k}/0: {len(idx)} indices for degree {deg}")
        _in_range(idx, L.dim, f"entries/{k}/0", source)
        s, key = sort_with_sign([i - 1 for i in idx])
        if s == 0:
            if Fraction(v):
                raise LoadError(f"{source}: antisymmetry violation at entries/{k}: repeated index in {tuple(idx)}")
            continue
        coeffs[key] = coeffs.get(key, Fraction(0)) + s * Fraction(v)
    return Cochain(deg, L, coeffs)


def load_cochain(path: str | Path, L: LieAlgebra) -> Cochain:
    return cochain_from_doc(_read(path), L, str(path))


def cochain_to_doc(w: Cochain) -> dict:
    return {"degree": w.degree, "entries": [[[i + 1 for i in idx], str(v)] for idx, v in w.coeffs.items()]}


def nlie_from_doc(doc: object, source: str = "<doc>") -> NLieAlgebra:
    _validate(doc, NLIE_SCHEMA, source)
    n, arity = doc["dim"], doc["arity"]
    basis = _basis(doc, n, source, "T")
    columns: dict = {}
    for k, (lower, a, v) in enumerate(doc["K"]):
        if len(lower) != arity:
            raise LoadError(f"{source}: schema violation at K/{k}/0: {len(lower)} lower indices for arity {arity}")
        _in_range(list(lower) + [a], n, f"K/{k}", source)
        v = Fraction(v)
        s, key = sort_with_sign([i - 1 for i in lower])
        if s == 0:
            if v:
                raise LoadError(f"{source}: antisymmetry violation at K/{k}: repeated lower index in {tuple(lower)}")
            continue
        col = columns.setdefault(key, {})
        if a - 1 in col and col[a - 1] != s * v:
            raise LoadError(f"{source}: antisymmetry violation at K/{k}: conflicting values for {tuple(lower)}")
        col[a - 1] = s * v
    return from_columns(n, arity, columns, basis=basis, name=doc.get("name", ""))


def load_nlie(path: str | Path) -> NLieAlgebra:
    return nlie_from_doc(_read(path), str(path))


def nlie_to_doc(N: NLieAlgebra) -> dict:
    rows = []
    for lower in sorted(N.columns):
        for a, v in sorted(N.columns[lower].items()):
            rows.append([[i + 1 for i in lower], a + 1, str(v)])
    return {"dim": N.dim, "arity": N.arity, "name": N.name, "basis": list(N.basis), "K": rows}
