"""Command-line front end.

Exit codes: 0 = yes / success, 2 = no (negative verdict, failed trace,
no contact form, failed verification), 1 = error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Sequence

from . import __version__
from .algebra_file import AlgebraFileError, parse_algebra
from .cdga import cohomology, is_quasi_iso, verify_morphism
from .cechain import NotNilpotentError, adapted_basis, chevalley_eilenberg, first_betti
from .contact import find_contact_form, is_contact_form
from .decider import CHECKPOINTS, Verdict, decide_sasakian, proof_trace
from .exactlin import vector
from .exterior import ExteriorElement, format_element
from .tievsky import heisenberg_basic_ring, standard_heisenberg_morphism

SCHEMA = "nilsasaki.report/1"
EXIT_YES, EXIT_ERROR, EXIT_NO = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class Report:
    command: str
    payload: dict
    input_sha256: Optional[str] = None
    seed: Optional[int] = None
    exit_code: int = EXIT_YES
    text_lines: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        out: dict[str, Any] = {
            "schema": SCHEMA,
            "tool_version": __version__,
            "command": self.command,
            "exit_code": self.exit_code,
            "result": self.payload,
        }
        if self.input_sha256 is not None:
            out["input_sha256"] = self.input_sha256
        if self.seed is not None:
            out["seed"] = self.seed
        return out


def emit_report(report: Report, as_json: bool) -> str:
    if as_json:
        return json.dumps(report.as_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    return "\n".join(report.text_lines) + "\n"


# -- serialization helpers ---------------------------------------------------


def _q(x: Fraction) -> str:
    return str(x)


def _vec(v: Sequence[Fraction]) -> list[str]:
    return [_q(x) for x in v]


def _matrix(M) -> list[list[str]]:
    return [_vec(r) for r in M.entries]


def _jsonable(value):
    if isinstance(value, Fraction):
        return _q(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _trace_payload(trace) -> list[dict]:
    return [
        {
            "name": c.name,
            "anchor": c.anchor,
            "passed": c.passed,
            "obstruction": c.obstruction,
            "values": _jsonable(c.values),
        }
        for c in trace.checkpoints
    ]


def _trace_lines(trace) -> list[str]:
    lines = []
    for c in trace.checkpoints:
        status = "pass" if c.passed else "FAIL"
        vals = ", ".join(f"{k}={_jsonable(v)}" for k, v in c.values.items())
        line = f"  [{status}] {c.name:<13} \"{c.anchor}\""
        if vals:
            line += f"  ({vals})"
        if not c.passed:
            line += f"  -> {c.obstruction}"
        lines.append(line)
    skipped = len(CHECKPOINTS) - len(trace.checkpoints)
    if skipped:
        lines.append(f"  ({skipped} later checkpoint(s) not evaluated)")
    return lines


def _certificate_payload(cert) -> dict:
    return {
        "form": _vec(cert.coefficients),
        "form_text": format_element(cert.form),
        "reeb": _vec(cert.reeb),
        "top_value": _q(cert.top_value),
    }


# -- commands ------------------------------------------------------------------


def _load(path: str):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise UsageError(f"{path} is not UTF-8 text") from exc
    return parse_algebra(text), hashlib.sha256(data).hexdigest()


def cmd_check(args) -> Report:
    L, digest = _load(args.file)
    verdict: Verdict = decide_sasakian(L)
    payload: dict[str, Any] = {"algebra": L.name, "dim": L.dim, "answer": verdict.answer}
    lines = [f"{L.name} (dim {L.dim}): Sasakian nilmanifold quotient: {verdict.answer}"]
    if verdict.yes:
        w = verdict.witness
        payload["basis_change"] = _matrix(w.heisenberg.basis_change)
        payload["m"] = w.heisenberg.m
        payload["contact"] = _certificate_payload(w.contact)
        payload["witness_verified"] = w.verify(L)
        lines.append(f"  isomorphic to h(1,{w.heisenberg.m}); basis change (columns q1,p1,...,t):")
        lines += ["    " + "  ".join(f"{x:>6}" for x in row) for row in _matrix(w.heisenberg.basis_change)]
        lines.append(f"  contact form {format_element(w.contact.form)}, Reeb {_vec(w.contact.reeb)}")
    else:
        ob = verdict.obstruction
        payload["obstruction"] = {"name": ob.name, "anchor": ob.anchor, "evidence": _jsonable(ob.evidence)}
        lines.append(f"  obstruction: {ob.name} (\"{ob.anchor}\")")
        for k, v in ob.evidence.items():
            lines.append(f"    {k}: {_jsonable(v)}")
    payload["trace"] = _trace_payload(verdict.trace)
    return Report("check", payload, digest, exit_code=EXIT_YES if verdict.yes else EXIT_NO, text_lines=lines)


def cmd_trace(args) -> Report:
    L, digest = _load(args.file)
    trace = proof_trace(L)
    payload = {"algebra": L.name, "dim": L.dim, "passed": trace.passed, "checkpoints": _trace_payload(trace)}
    lines = [f"{L.name} (dim {L.dim}): proof trace"] + _trace_lines(trace)
    return Report("trace", payload, digest, exit_code=EXIT_YES if trace.passed else EXIT_NO, text_lines=lines)


def cmd_cohomology(args) -> Report:
    L, digest = _load(args.file)
    A = chevalley_eilenberg(L)
    degrees = []
    lines = [f"{L.name} (dim {L.dim}): Chevalley-Eilenberg cohomology"]
    for h in cohomology(A):
        reps = [format_element(A.to_exterior(A.from_vector(h.degree, r))) for r in h.representatives]
        degrees.append({"degree": h.degree, "betti": h.betti, "representatives": reps})
        lines.append(f"  H^{h.degree}: dim {h.betti}" + (f"  [{'; '.join(reps)}]" if reps else ""))
    betti = [d["betti"] for d in degrees]
    lines.insert(1, f"  betti = {tuple(betti)}")
    payload = {"algebra": L.name, "dim": L.dim, "betti": betti, "degrees": degrees}
    return Report("cohomology", payload, digest, text_lines=lines)


def cmd_adapted_basis(args) -> Report:
    L, digest = _load(args.file)
    basis = adapted_basis(L)
    b1 = first_betti(L)
    gamma = [
        {"l": l + 1, "i": i + 1, "j": j + 1, "value": _q(c)} for (l, i, j), c in sorted(basis.gamma.items())
    ]
    forms = [_vec(f) for f in basis.forms]
    violations = basis.violations(L, b1)
    payload = {
        "algebra": L.name,
        "dim": L.dim,
        "k": basis.k,
        "b1": b1,
        "forms": forms,
        "gamma": gamma,
        "flag_dims": list(basis.flag_dims),
        "violations": violations,
    }
    lines = [f"{L.name} (dim {L.dim}): adapted basis, k = {basis.k} (b1 = {b1})"]
    for l, f in enumerate(basis.forms):
        lines.append(f"  a~{l + 1} = {format_element(ExteriorElement.linear(f), 'e')}")
    for g in gamma:
        lines.append(f"  gamma_{g['l']}^({g['i']},{g['j']}) = {g['value']}")
    if violations:
        lines += [f"  VIOLATION: {v}" for v in violations]
    return Report("adapted-basis", payload, digest, exit_code=EXIT_NO if violations else EXIT_YES, text_lines=lines)


def _parse_coeffs(text: str, dim: int) -> tuple[Fraction, ...]:
    try:
        coeffs = vector(c.strip() for c in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad --form coefficients {text!r}: {exc}") from exc
    if len(coeffs) != dim:
        raise UsageError(f"--form needs {dim} comma-separated coefficients, got {len(coeffs)}")
    return coeffs


def cmd_contact(args) -> Report:
    L, digest = _load(args.file)
    if L.dim % 2 == 0:
        raise UsageError(f"contact forms need odd dimension; {L.name} has dim {L.dim}")
    if args.form is not None:
        coeffs = _parse_coeffs(args.form, L.dim)
        cert = is_contact_form(L, coeffs)
        payload: dict[str, Any] = {"algebra": L.name, "mode": "form", "form": _vec(coeffs)}
        form_text = format_element(ExteriorElement.linear(coeffs))
        if cert is None:
            payload.update(contact=False, conclusive=True, reason="top wedge vanishes")
            lines = [f"{form_text} is not a contact form (a^(da)^m = 0)"]
        else:
            payload.update(contact=True, certificate=_certificate_payload(cert))
            lines = [f"{form_text} is contact: top value {cert.top_value}, Reeb {_vec(cert.reeb)}"]
        return Report("contact", payload, digest, exit_code=EXIT_YES if cert else EXIT_NO, text_lines=lines)
    search = find_contact_form(L, trials=args.trials, seed=args.seed)
    payload = {
        "algebra": L.name,
        "mode": "search",
        "trials": args.trials,
        "tried": search.tried,
        "contact": search.found,
        "conclusive": search.conclusive,
        "reason": search.reason,
    }
    if search.found:
        payload["certificate"] = _certificate_payload(search.certificate)
        payload["found_by"] = search.found_by
        lines = [
            f"{L.name}: contact form {format_element(search.certificate.form)} ({search.found_by})",
            f"  top value {search.certificate.top_value}, Reeb {_vec(search.certificate.reeb)}",
        ]
    else:
        label = "conclusive" if search.conclusive else "probabilistic"
        lines = [f"{L.name}: no contact form found ({label}): {search.reason}"]
    return Report(
        "contact", payload, digest, seed=args.seed,
        exit_code=EXIT_YES if search.found else EXIT_NO, text_lines=lines,
    )


def cmd_tievsky_verify(args) -> Report:
    m = args.m
    if m < 1:
        raise UsageError("--m must be at least 1")
    f = standard_heisenberg_morphism(m)
    failure = verify_morphism(f)
    payload: dict[str, Any] = {"m": m, "morphism_ok": failure is None}
    lines = [f"h(1,{m}) -> Tievsky model of the Heisenberg basic ring (m = {m})"]
    ring = heisenberg_basic_ring(m)
    payload["omega"] = ring.ring.format(ring.omega)
    y_index = f.target.labels[1].index("y") + f.target.offsets[1]
    last = f.source.generator_index(f.source.n - 1)
    payload["y_coefficient"] = _q(f.images[last].get(y_index, Fraction(0)))
    if failure is not None:
        payload["failure"] = {"kind": failure.kind, "witness": list(failure.witness_labels), "detail": failure.detail}
        payload["quasi_iso"] = False
        lines.append(f"  morphism check FAILED: {failure}")
        return Report("tievsky-verify", payload, exit_code=EXIT_NO, text_lines=lines)
    result = is_quasi_iso(f)
    payload["quasi_iso"] = result.is_quasi_iso
    payload["betti_source"] = [d.betti_source for d in result.degrees]
    payload["betti_target"] = [d.betti_target for d in result.degrees]
    payload["induced_rank"] = [d.rank for d in result.degrees]
    lines.append(f"  omega = {payload['omega']}, f(a{2 * m + 1}) = {payload['y_coefficient']}*y")
    lines.append("  morphism: ok (degree, unit, chain map, multiplicative)")
    lines.append(f"  betti CE      = {tuple(payload['betti_source'])}")
    lines.append(f"  betti Tievsky = {tuple(payload['betti_target'])}")
    lines.append(f"  induced ranks = {tuple(payload['induced_rank'])}")
    lines.append(f"  quasi-isomorphism: {'yes' if result.is_quasi_iso else 'no'}")
    return Report(
        "tievsky-verify", payload, exit_code=EXIT_YES if result.is_quasi_iso else EXIT_NO, text_lines=lines
    )


# -- argument parsing ----------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized searches (default 0)")
    common.add_argument("--trials", type=int, default=64, help="random trials for contact search (default 64)")

    parser = _Parser(prog="nilsasaki", description="Sasakian structures on nilmanifolds, decided exactly.")
    parser.add_argument("--version", action="version", version=f"nilsasaki {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    for name, helptext in (
        ("check", "decide whether the nilmanifold admits a Sasakian structure"),
        ("trace", "run the checkpoint-by-checkpoint proof trace"),
        ("cohomology", "Betti numbers and class representatives"),
        ("adapted-basis", "adapted basis of g* with its gamma table"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("file")
    p = sub.add_parser("contact", parents=[common], help="test or search for an algebraic contact form")
    p.add_argument("file")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--form", help="comma-separated covector coefficients, e.g. 0,0,1")
    mode.add_argument("--search", action="store_true", help="search for a contact form (default)")
    p = sub.add_parser("tievsky-verify", parents=[common], help="verify the Heisenberg/Tievsky comparison morphism")
    p.add_argument("--m", type=int, required=True)
    return parser


COMMANDS = {
    "check": cmd_check,
    "trace": cmd_trace,
    "cohomology": cmd_cohomology,
    "adapted-basis": cmd_adapted_basis,
    "contact": cmd_contact,
    "tievsky-verify": cmd_tievsky_verify,
}


def run_command(argv: Sequence[str]) -> tuple[str, int, bool]:
    """Run one invocation; returns (output text, exit code, output is an error)."""
    as_json = "--json" in argv
    try:
        args = build_parser().parse_args(list(argv))
        if args.command is None:
            raise UsageError("missing command (one of: " + ", ".join(COMMANDS) + ")")
        if args.trials < 0:
            raise UsageError("--trials must be non-negative")
        report = COMMANDS[args.command](args)
        return emit_report(report, args.json), report.exit_code, False
    except AlgebraFileError as exc:
        error = exc.as_dict()
        text = str(exc)
    except (UsageError, NotNilpotentError) as exc:
        error = {"kind": "usage" if isinstance(exc, UsageError) else "not-nilpotent", "message": str(exc)}
        text = f"error: {exc}"
    if as_json:
        body = {"schema": SCHEMA, "tool_version": __version__, "exit_code": EXIT_ERROR, "error": error}
        return json.dumps(body, sort_keys=True, indent=2) + "\n", EXIT_ERROR, True
    return text + "\n", EXIT_ERROR, True


def main(argv: Optional[Sequence[str]] = None) -> int:
    out, code, is_error = run_command(sys.argv[1:] if argv is None else argv)
    stream = sys.stderr if is_error and "--json" not in (argv or sys.argv[1:]) else sys.stdout
    stream.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
