"""Decide whether the nilmanifold of a rational nilpotent Lie algebra is Sasakian.

The answer is yes exactly when the algebra is a generalized Heisenberg
algebra h(1,m). :func:`decide_sasakian` answers through structural
recognition; :func:`proof_trace` walks the chain of necessary conditions
(odd dimension, nilpotency, b1 parity, b1 = 2m, 2-step, contact form,
Heisenberg) and stops at the first that fails.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .cechain import adapted_basis, first_betti
from .contact import ContactCertificate, degeneracy_proof, is_contact_form
from .exactlin import inverse
from .liealg import (
    HeisenbergObstruction,
    HeisenbergWitness,
    LieAlgebra,
    check_jacobi,
    is_nilpotent,
    recognize_heisenberg,
)

OBSTRUCTIONS = (
    "even-dimension",
    "not-nilpotent",
    "b1-odd",
    "b1-not-2m",
    "not-2-step",
    "center-dim",
    "degenerate-cocycle",
)

# (checkpoint name, obstruction raised when it fails, anchor phrase)
CHECKPOINTS = (
    ("odd-dimension", "even-dimension", "dimension 2m+1"),
    ("nilpotent", "not-nilpotent", "compact homogeneous space of a nilpotent Lie group"),
    ("b1-even", "b1-odd", "b_1(N) is even"),
    ("b1-equals-2m", "b1-not-2m", "Therefore k=2m+1"),
    ("two-step", "not-2-step", "is 2-step nilpotent"),
    ("contact", "degenerate-cocycle", "algebraic contact structure on"),
    ("heisenberg", None, "is the Heisenberg algebra"),
)

ANCHORS = {name: anchor for name, _, anchor in CHECKPOINTS}


class InvalidLieAlgebra(ValueError):
    pass


@dataclass(frozen=True)
class Checkpoint:
    name: str
    anchor: str
    passed: bool
    values: dict = field(default_factory=dict)
    obstruction: Optional[str] = None


@dataclass(frozen=True)
class ProofTrace:
    checkpoints: tuple[Checkpoint, ...]

    @property
    def passed(self) -> bool:
        return len(self.checkpoints) == len(CHECKPOINTS) and all(c.passed for c in self.checkpoints)

    @property
    def terminal(self) -> Checkpoint:
        return self.checkpoints[-1]

    @property
    def obstruction(self) -> Optional[str]:
        return None if self.passed else self.terminal.obstruction


@dataclass(frozen=True)
class Obstruction:
    name: str
    anchor: str
    evidence: dict

    def __post_init__(self):
        if self.name not in OBSTRUCTIONS:
            raise ValueError(f"unknown obstruction {self.name!r}")


@dataclass(frozen=True)
class SasakianWitness:
    heisenberg: HeisenbergWitness
    contact: ContactCertificate

    def verify(self, L: LieAlgebra) -> bool:
        return self.heisenberg.verify(L) and self.contact.verify(L)


@dataclass(frozen=True)
class Verdict:
    answer: str  # "yes" | "no"
    witness: Optional[SasakianWitness]
    obstruction: Optional[Obstruction]
    trace: ProofTrace

    @property
    def yes(self) -> bool:
        return self.answer == "yes"


def _require_lie(L: LieAlgebra) -> None:
    violation = check_jacobi(L)
    if violation is not None:
        raise InvalidLieAlgebra(str(violation))


def proof_trace(L: LieAlgebra) -> ProofTrace:
    _require_lie(L)
    records: list[Checkpoint] = []

    def record(idx: int, passed: bool, values: dict, obstruction: Optional[str] = None) -> bool:
        name, default_obstruction, anchor = CHECKPOINTS[idx]
        if not passed and obstruction is None:
            obstruction = default_obstruction
        records.append(Checkpoint(name, anchor, passed, values, None if passed else obstruction))
        return passed

    n = L.dim
    m = (n - 1) // 2
    if not record(0, n % 2 == 1, {"dim": n, "m": m if n % 2 else None}):
        return ProofTrace(tuple(records))

    nil, step = is_nilpotent(L)
    if not record(1, nil, {"step": step}):
        return ProofTrace(tuple(records))

    b1 = first_betti(L)
    if not record(2, b1 % 2 == 0, {"b1": b1}):
        return ProofTrace(tuple(records))

    if not record(3, b1 == 2 * m, {"b1": b1, "k": b1 + 1, "2m+1": 2 * m + 1}):
        return ProofTrace(tuple(records))

    basis = adapted_basis(L)
    closed_ok = all(l >= 2 * m for (l, _, _) in basis.gamma)
    last_ok = all(i < 2 * m and j < 2 * m for (l, i, j) in basis.gamma if l == 2 * m)
    two_step = closed_ok and last_ok and step == 2
    values = {"k": basis.k, "step": step, "closed_forms": basis.k - 1}
    if not record(4, two_step, values):
        return ProofTrace(tuple(records))

    last_form = basis.form(2 * m)
    cert = is_contact_form(L, last_form)
    if cert is None:
        proof = degeneracy_proof(L)
        values = {
            "form": [str(c) for c in basis.forms[2 * m]],
            "top_value": "0",
            "conclusive": proof is not None,
            "reason": proof or "the last adapted covector is not contact",
        }
        record(5, False, values)
        return ProofTrace(tuple(records))
    record(5, True, {"form": [str(c) for c in basis.forms[2 * m]], "top_value": str(cert.top_value)})

    result = recognize_heisenberg(L)
    if isinstance(result, HeisenbergObstruction):
        record(6, False, dict(result.evidence, reason=result.message), obstruction=result.name)
    else:
        record(6, True, {"m": result.m})
    return ProofTrace(tuple(records))


def _obstruction_from(checkpoint: Checkpoint) -> Obstruction:
    return Obstruction(checkpoint.obstruction, checkpoint.anchor, dict(checkpoint.values))


def decide_sasakian(L: LieAlgebra) -> Verdict:
    """Yes iff L is isomorphic to h(1,m); the trace is attached either way.

    For a no, the obstruction is the trace's failing condition when it is
    one of the cohomological checkpoints; past those, it is the first
    structural condition that Heisenberg recognition rejects.
    """
    trace = proof_trace(L)
    terminal = trace.terminal
    if len(trace.checkpoints) <= 5 and not terminal.passed:
        return Verdict("no", None, _obstruction_from(terminal), trace)
    result = recognize_heisenberg(L)
    if isinstance(result, HeisenbergObstruction):
        anchor = ANCHORS["heisenberg"]
        evidence = dict(result.evidence, reason=result.message)
        if not terminal.passed:
            evidence["trace_obstruction"] = terminal.obstruction
        return Verdict("no", None, Obstruction(result.name, anchor, evidence), trace)
    # the transported last covector: dual to the central element t
    t_dual = inverse(result.basis_change).row(L.dim - 1)
    cert = is_contact_form(L, t_dual)
    if cert is None:
        raise AssertionError("Heisenberg witness without a contact form")
    return Verdict("yes", SasakianWitness(result, cert), None, trace)

