"""Command-line front end.

    nambu-weil check-theorem1 --builtin gl:2 --omega trace --arity 3
    nambu-weil audit-weil --algebra tests/fixtures/gl2.json --omega trace --out audit.json

Exit status: 0 when every check passes (for audits: no MISMATCH), 1 when a
check found violations (the full report is still written), 2 on usage or
configuration errors.
"""

from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

from .brs import build_brs, build_ghost, check_brs_relations, check_ghost_transformations
from .cochains import Cochain, check_omega_condition
from .dga import SIGN_RULES, check_degree_consistency, check_nilpotent
from .io import cochain_to_doc, load_algebra, load_cochain, load_nlie, nlie_to_doc
from .lie import BUILTINS, LieAlgebra, builtin, check_jacobi, trace_coefficients, trace_form
from .nlie import NLieAlgebra, check_antisymmetry, check_filippov, check_metric, check_biconditional, induce
from .report import SCHEMA_VERSION, ConfigError, Report, UnsupportedError, dump_json, jsonable
from .tensor import ShapeError
from .weil import (
    annihilates_brackets,
    audit_formulas,
    build_extended_weil,
    check_closed_elements,
    check_weil,
    tensor_form_check,
)

COMMANDS = (
    "check-jacobi",
    "induce",
    "check-filippov",
    "check-theorem1",
    "check-metric",
    "weil",
    "weil-extended",
    "audit-weil",
    "brs",
    "brs-ghost",
    "report",
)

CONVENTIONS = (
    "indices in reports are 1-based; f^a_bc is the coefficient of T_a in [T_b, T_c]",
    "coboundary: (dw)(x_1..x_k+1) = sum_{i<j} (-1)^(i+j+1) w([x_i,x_j], ...), so dw(x,y) = w([x,y]) in degree 1",
    "wedge product: unnormalized shuffle sum",
    "n-ary bracket: [x_1..x_n] = sum_{i<j} (-1)^(i+j+1) w(x_1..^i..^j..x_n) [x_i,x_j]",
    "graded signs: Koszul rule on total degree unless sign_rule says bigraded",
    "scalar i in the triple gauge transformation is taken as 1",
)


@dataclass
class JobSpec:
    command: str
    builtin: str | None = None
    algebra: str | None = None
    nlie: str | None = None
    omega: str | None = None
    arity: int = 3
    sign_rule: str = "total"
    antisymmetrize: bool = False
    full: bool = False
    out: str | None = None
    format: str = "text"
    emit: str | None = None


class UsageError(ConfigError):
    """Flags that do not describe a runnable job."""


# ---------------------------------------------------------------- inputs


def parse_builtin(text: str) -> LieAlgebra:
    m = re.fullmatch(r"([a-z0-9]+):(\d+)", text)
    if not m:
        raise UsageError(f"--builtin expects NAME:SIZE (one of {sorted(BUILTINS)}), got {text!r}")
    return builtin(m.group(1), int(m.group(2)))


_TERM = r"([+-])(?:(\d+(?:/\d+)?)\*)?([^+\-*]+)"


def _linear_combination(L: LieAlgebra, text: str) -> list[Fraction]:
    vec = [Fraction(0)] * L.dim
    s = text.replace(" ", "")
    if not s:
        raise UsageError("empty omega expression")
    if s[0] not in "+-":
        s = "+" + s
    if not re.fullmatch(f"(?:{_TERM})+", s):
        raise UsageError(f"cannot read omega expression {text!r}")
    for sign, coeff, label in re.findall(_TERM, s):
        c = Fraction(coeff) if coeff else Fraction(1)
        vec[L.index(label)] += -c if sign == "-" else c
    return vec


def parse_omega(L: LieAlgebra, text: str | None, degree: int) -> Cochain:
    """``trace``, ``dual:LABEL``, ``custom:PATH``, ``zero``, or a label sum such as ``x+z`` or ``2*e-1/2*f``."""
    if text is None:
        if L.matrices is None:
            raise UsageError("--omega is required for algebras without a matrix realization")
        text = "trace"
    if text.startswith("custom:"):
        w = load_cochain(text[len("custom:") :], L)
        if w.degree != degree:
            raise UsageError(f"custom omega has degree {w.degree}, this job needs degree {degree}")
        return w
    if text == "zero":
        return Cochain.zero(L, degree)
    if degree != 1:
        raise UsageError(f"omega {text!r} has degree 1, this job needs degree {degree}; use custom:PATH")
    if text == "trace":
        return Cochain.from_vector(L, trace_coefficients(L))
    if text.startswith("dual:"):
        return Cochain.dual(L, L.index(text[len("dual:") :]))
    return Cochain.from_vector(L, _linear_combination(L, text))


def _algebra(job: JobSpec) -> LieAlgebra:
    if bool(job.builtin) == bool(job.algebra):
        raise UsageError("give exactly one of --builtin NAME:SIZE or --algebra PATH")
    if job.builtin:
        return parse_builtin(job.builtin)
    return load_algebra(job.algebra, job.antisymmetrize)


def _describe(L: LieAlgebra) -> dict:
    return {"name": L.name, "dim": L.dim, "basis": list(L.basis)}


# ---------------------------------------------------------------- suites


@dataclass
class Outcome:
    checks: list[Report]
    inputs: dict
    # a check may pass or fail on its own; exit status follows these
    passed: bool


def _outcome(checks: list[Report], inputs: dict) -> Outcome:
    return Outcome(checks, inputs, all(r.passed for r in checks))


def _omega_inputs(job: JobSpec, L: LieAlgebra):
    w = parse_omega(L, job.omega, job.arity - 2)
    return w, {"algebra": _describe(L), "omega": cochain_to_doc(w), "arity": job.arity}


def run_check_jacobi(job: JobSpec) -> Outcome:
    L = _algebra(job)
    return _outcome([check_jacobi(L)], {"algebra": _describe(L)})


def run_induce(job: JobSpec) -> Outcome:
    L = _algebra(job)
    w, inputs = _omega_inputs(job, L)
    N = induce(L, w, job.arity)
    doc = nlie_to_doc(N)
    if job.emit:
        Path(job.emit).write_text(dump_json(doc))
    built = Report("induced_bracket", data={"nlie": doc})
    return _outcome([built, check_antisymmetry(N), check_omega_condition(w)], inputs)


def _nlie(job: JobSpec) -> tuple[NLieAlgebra, dict]:
    if job.nlie:
        if job.builtin or job.algebra:
            raise UsageError("--nlie cannot be combined with --builtin/--algebra")
        N = load_nlie(job.nlie)
        return N, {"nlie": {"name": N.name, "dim": N.dim, "arity": N.arity, "basis": list(N.basis)}}
    L = _algebra(job)
    w, inputs = _omega_inputs(job, L)
    return induce(L, w, job.arity), inputs


def run_check_filippov(job: JobSpec) -> Outcome:
    N, inputs = _nlie(job)
    return _outcome([check_filippov(N, full=job.full)], inputs)


def run_check_biconditional(job: JobSpec) -> Outcome:
    L = _algebra(job)
    w, inputs = _omega_inputs(job, L)
    return _outcome([check_biconditional(L, w, job.arity)], inputs)


def run_check_metric(job: JobSpec) -> Outcome:
    if job.arity != 3:
        raise UsageError("check-metric needs --arity 3")
    L = _algebra(job)
    w, inputs = _omega_inputs(job, L)
    inputs["form"] = "trace form Tr(M_a M_b)"
    return _outcome([check_metric(induce(L, w, 3), trace_form(L))], inputs)


def run_weil(job: JobSpec) -> Outcome:
    L = _algebra(job)
    return _outcome(check_weil(L), {"algebra": _describe(L)})


def _extended(job: JobSpec):
    if job.arity != 3:
        raise UsageError("the extended Weil algebra uses the ternary bracket; --arity must be 3")
    L = _algebra(job)
    w, inputs = _omega_inputs(job, L)
    return build_extended_weil(L, w), inputs


def run_weil_extended(job: JobSpec) -> Outcome:
    W, inputs = _extended(job)
    checks = [check_closed_elements(W), check_degree_consistency(W.d), check_nilpotent(W.d)]
    if W.repairs:
        checks[1].notes.append("repairs applied to stated images: " + "; ".join(f"{k}: {v}" for k, v in sorted(W.repairs.items())))
    return _outcome(checks, inputs)


def run_audit_weil(job: JobSpec) -> Outcome:
    W, inputs = _extended(job)
    return _outcome([audit_formulas(W), tensor_form_check(W)], inputs)


def run_brs(job: JobSpec) -> Outcome:
    L = _algebra(job)
    return _outcome(check_brs_relations(build_brs(L, job.sign_rule)), {"algebra": _describe(L), "sign_rule": job.sign_rule})


def run_brs_ghost(job: JobSpec) -> Outcome:
    L = _algebra(job)
    w = parse_omega(L, job.omega, 1)
    G = build_ghost(L, w.vector(), job.sign_rule)
    inputs = {"algebra": _describe(L), "omega": cochain_to_doc(w), "sign_rule": job.sign_rule}
    checks = check_ghost_transformations(G)
    return _outcome(checks, inputs)


def run_report(job: JobSpec) -> Outcome:
    """Every suite that applies to the given algebra and omega."""
    L = _algebra(job)
    w, inputs = _omega_inputs(job, L)
    inputs["sign_rule"] = job.sign_rule
    checks: list[Report] = [check_jacobi(L), check_biconditional(L, w, job.arity)]
    N = induce(L, w, job.arity)
    checks.append(check_filippov(N, full=job.full))
    skipped = []
    if job.arity == 3 and L.matrices is not None:
        checks.append(check_metric(N, trace_form(L)))
    else:
        skipped.append("metric: needs arity 3 and a matrix realization")
    checks.extend(check_weil(L))
    degree1 = w.degree == 1
    if degree1 and job.arity == 3 and not annihilates_brackets(L, w.vector()):
        W = build_extended_weil(L, w)
        checks += [check_closed_elements(W), audit_formulas(W), tensor_form_check(W)]
        G = build_ghost(L, w.vector(), job.sign_rule)
        checks += check_ghost_transformations(G)
    else:
        skipped.append("extended Weil, audit and ghost fields: need arity 3 and omega vanishing on brackets")
    checks += check_brs_relations(build_brs(L, job.sign_rule))
    out = _outcome(checks, inputs)
    if skipped:
        out.inputs["skipped"] = skipped
    return out


RUNNERS: dict[str, Callable[[JobSpec], Outcome]] = {
    "check-jacobi": run_check_jacobi,
    "induce": run_induce,
    "check-filippov": run_check_filippov,
    "check-theorem1": run_check_biconditional,
    "check-metric": run_check_metric,
    "weil": run_weil,
    "weil-extended": run_weil_extended,
    "audit-weil": run_audit_weil,
    "brs": run_brs,
    "brs-ghost": run_brs_ghost,
    "report": run_report,
}


# ---------------------------------------------------------------- output


def report_payload(job: JobSpec, out: Outcome) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": job.command,
        "inputs": jsonable(out.inputs),
        "conventions": list(CONVENTIONS),
        "passed": out.passed,
        "checks": [r.to_json() for r in out.checks],
    }


def render_text(job: JobSpec, out: Outcome) -> str:
    lines = [f"nambu-weil {job.command}: {'PASS' if out.passed else 'FAIL'} (schema {SCHEMA_VERSION})"]
    for key in sorted(out.inputs):
        lines.append(f"  {key}: {out.inputs[key]}")
    for r in out.checks:
        lines.append(r.render())
    return "\n".join(lines) + "\n"


def run(job: JobSpec) -> tuple[int, str]:
    """Execute a job; returns (exit status, text to print). Writes report files when asked."""
    if job.command not in RUNNERS:
        return 2, f"unknown command {job.command!r}\n"
    if job.sign_rule not in SIGN_RULES:
        return 2, f"sign rule must be one of {SIGN_RULES}\n"
    try:
        out = RUNNERS[job.command](job)
    except (ConfigError, UnsupportedError, ShapeError) as e:
        return 2, f"error: {e}\n"
    payload = dump_json(report_payload(job, out))
    text = render_text(job, out)
    if job.out:
        path = Path(job.out)
        path.write_text(payload)
        path.with_suffix(".txt").write_text(text)
    return (0 if out.passed else 1), (payload if job.format == "json" else text)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nambu-weil", description="Exact checks for Lie, n-Lie, Weil and B.R.S. algebras.")
    p.add_argument("command", choices=COMMANDS)
    src = p.add_argument_group("input")
    src.add_argument("--builtin", metavar="NAME:SIZE", help=f"builtin algebra, NAME in {sorted(BUILTINS)}")
    src.add_argument("--algebra", metavar="PATH", help="Lie algebra JSON document")
    src.add_argument("--nlie", metavar="PATH", help="n-Lie algebra JSON document (check-filippov only)")
    src.add_argument("--antisymmetrize", action="store_true", help="fold entries with b > c into b < c instead of rejecting")
    src.add_argument("--omega", help="trace | dual:LABEL | custom:PATH | zero | label sum like x+z")
    src.add_argument("--arity", type=int, default=3)
    src.add_argument("--sign-rule", choices=SIGN_RULES, default="total")
    src.add_argument("--full", action="store_true", help="enumerate all basis tuples in the Filippov check")
    o = p.add_argument_group("output")
    o.add_argument("--out", metavar="PATH", help="write the JSON report here and the text report next to it (.txt)")
    o.add_argument("--format", choices=("text", "json"), default="text", help="what to print on stdout")
    o.add_argument("--emit", metavar="PATH", help="induce: also write the n-Lie algebra JSON document")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    job = JobSpec(
        command=args.command,
        builtin=args.builtin,
        algebra=args.algebra,
        nlie=args.nlie,
        omega=args.omega,
        arity=args.arity,
        sign_rule=args.sign_rule,
        antisymmetrize=args.antisymmetrize,
        full=args.full,
        out=args.out,
        format=args.format,
        emit=args.emit,
    )
    code, text = run(job)
    (sys.stderr if code == 2 else sys.stdout).write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
