"""Verification reports shared by every check in the package."""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence, TypeVar

SCHEMA_VERSION = 1

T = TypeVar("T")
R = TypeVar("R")


class ConfigError(ValueError):
    """Bad configuration: unknown name, mismatched parents, wrong degree."""


class UnsupportedError(ValueError):
    """Operation not defined for this object (e.g. no matrix realization)."""


def jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if hasattr(value, "to_json"):
        return value.to_json()
    return value


@dataclass
class Report:
    """Outcome of one check.

    ``violations`` is the complete list of offending items; an empty list
    means the check passed unless ``passed`` was set explicitly (audits use
    that for verdict-style outcomes).
    """

    name: str
    violations: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    data: dict = field(default_factory=dict)
    passed: bool | None = None

    def __post_init__(self):
        if self.passed is None:
            self.passed = not self.violations

    def __bool__(self) -> bool:
        return bool(self.passed)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "violations": jsonable(self.violations),
            "notes": list(self.notes),
            "data": jsonable(self.data),
        }

    def render(self) -> str:
        lines = [f"[{'PASS' if self.passed else 'FAIL'}] {self.name}"]
        for note in self.notes:
            lines.append(f"    note: {note}")
        for key in sorted(self.data):
            lines.append(f"    {key}: {_flat(self.data[key])}")
        for v in self.violations:
            lines.append("    - " + ", ".join(f"{k}={_flat(v[k])}" for k in v))
        return "\n".join(lines)


def _flat(value: Any) -> str:
    value = jsonable(value)
    if isinstance(value, str):
        return value
    return json.dumps(value, sort_keys=True)


def dump_json(payload: dict) -> str:
    return json.dumps(jsonable(payload), indent=2, sort_keys=True) + "\n"


def thread_count() -> int:
    raw = os.environ.get("NAMBU_WEIL_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def parallel_map(fn: Callable[[T], R], items: Sequence[T]) -> list[R]:
    """Map preserving input order; pool size from NAMBU_WEIL_THREADS."""
    n = thread_count()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def chunked(items: Sequence[T], n: int) -> list[Sequence[T]]:
    size = max(1, -(-len(items) // max(1, n)))
    return [items[i : i + size] for i in range(0, len(items), size)]


def merge(parts: Iterable[list]) -> list:
    out: list = []
    for p in parts:
        out.extend(p)
    return out
