"""Write the full report for several algebras into one directory.

    python scripts/full_report.py --outdir reports
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field
from pathlib import Path

from nambu_weil.cli import JobSpec, run


@dataclass
class ReportConfig:
    outdir: str = "reports"
    targets: list[tuple[str, str]] = field(
        default_factory=lambda: [
            ("gl:2", "trace"),
            ("gl:3", "trace"),
            ("sl:2", "zero"),
            ("heisenberg:3", "x+z"),
            ("abelian:3", "zero"),
        ]
    )


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--outdir", default=ReportConfig.outdir)
    cfg = ReportConfig(outdir=p.parse_args().outdir)
    Path(cfg.outdir).mkdir(parents=True, exist_ok=True)
    for builtin_name, omega in cfg.targets:
        out = Path(cfg.outdir) / f"{builtin_name.replace(':', '')}.json"
        code, _ = run(JobSpec(command="report", builtin=builtin_name, omega=omega, out=str(out)))
        print(f"{builtin_name:14s} omega={omega:6s} exit {code}  {out}")


if __name__ == "__main__":
    main()
