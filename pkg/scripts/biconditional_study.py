"""Tally omega-condition and Filippov verdicts over random instances.

Each instance is a random Lie algebra of dim <= 4 (a builtin in a random
integer basis) and a random integer 1-cochain; the induced bracket has
arity 3. The tally shows which of the four verdict pairs occur and keeps a
few examples of each, written as JSON.

    python scripts/biconditional_study.py --instances 400 --seed 7 --out study.json
"""

from __future__ import annotations

import argparse
import random
from dataclasses import asdict, dataclass

from nambu_weil.cochains import Cochain
from nambu_weil.io import algebra_to_doc
from nambu_weil.lie import random_lie_algebra
from nambu_weil.nlie import check_biconditional
from nambu_weil.report import dump_json


@dataclass
class StudyConfig:
    instances: int = 400
    seed: int = 0
    max_dim: int = 4
    coeff_range: int = 2
    examples_per_cell: int = 2
    out: str | None = None


def run(cfg: StudyConfig) -> dict:
    rng = random.Random(cfg.seed)
    cells: dict[str, dict] = {}
    for _ in range(cfg.instances):
        L = random_lie_algebra(rng, cfg.max_dim)
        vec = [rng.randint(-cfg.coeff_range, cfg.coeff_range) for _ in range(L.dim)]
        rep = check_biconditional(L, Cochain.from_vector(L, vec), 3)
        key = f"condition={rep.data['omega_condition']},filippov={rep.data['filippov']}"
        cell = cells.setdefault(key, {"count": 0, "examples": []})
        cell["count"] += 1
        if len(cell["examples"]) < cfg.examples_per_cell:
            cell["examples"].append({"algebra": algebra_to_doc(L), "omega": [str(x) for x in vec]})
    return {"config": asdict(cfg), "cells": dict(sorted(cells.items()))}


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in asdict(StudyConfig()).items():
        p.add_argument(f"--{name.replace('_', '-')}", type=type(default) if default is not None else str, default=default)
    cfg = StudyConfig(**vars(p.parse_args()))
    result = run(cfg)
    for key, cell in result["cells"].items():
        print(f"{key}: {cell['count']}")
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(dump_json(result))


if __name__ == "__main__":
    main()
