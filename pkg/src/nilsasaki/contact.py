"""Algebraic contact forms on odd-dimensional Lie algebras.

A covector a on a (2m+1)-dimensional Lie algebra is contact when
a ^ (da)^m is nonzero in the (one-dimensional) top exterior power.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .cechain import NotNilpotentError, adapted_basis, ce_d
from .exactlin import RationalMatrix, Vector, dot, kernel_basis, rank, solve, vector
from .exterior import ExteriorElement, interior, wedge
from .liealg import LieAlgebra

Covector = Union[ExteriorElement, Sequence]


class NotContactError(ValueError):
    pass


def _as_form(L: LieAlgebra, alpha: Covector) -> ExteriorElement:
    if isinstance(alpha, ExteriorElement):
        if alpha.n != L.dim or (alpha and alpha.degrees() != {1}):
            raise ValueError("expected a degree-one element on the algebra's dual")
        return alpha
    coeffs = vector(alpha)
    if len(coeffs) != L.dim:
        raise ValueError(f"covector needs {L.dim} coefficients")
    return ExteriorElement.linear(coeffs)


def _coefficients(alpha: ExteriorElement) -> Vector:
    return tuple(alpha.coefficient((i,)) for i in range(alpha.n))


def _half_dim(L: LieAlgebra) -> int:
    if L.dim % 2 == 0:
        raise ValueError(f"contact forms need odd dimension, got {L.dim}")
    return (L.dim - 1) // 2


@dataclass(frozen=True)
class ContactCertificate:
    form: ExteriorElement
    reeb: Vector
    top_value: Fraction

    @property
    def coefficients(self) -> Vector:
        return _coefficients(self.form)

    def verify(self, L: LieAlgebra) -> bool:
        """Re-check a(ξ) = 1, i_ξ da = 0 and the top coefficient, exactly."""
        m = _half_dim(L)
        da = ce_d(L, self.form)
        if dot(self.coefficients, self.reeb) != 1:
            return False
        if interior(self.reeb, da):
            return False
        top = top_coefficient(self.form, da, m)
        return top != 0 and top == self.top_value


def top_coefficient(alpha: ExteriorElement, dalpha: ExteriorElement, m: int) -> Fraction:
    """Coefficient of a ^ (da)^m on a_1 ^ ... ^ a_{2m+1}."""
    return wedge(alpha, dalpha**m).coefficient(range(alpha.n))


def _reeb_system(alpha: ExteriorElement, dalpha: ExteriorElement) -> tuple[RationalMatrix, Vector]:
    n = alpha.n
    rows = []
    for j in range(n):
        # (i_ξ da)(e_j) = sum_i ξ_i da(e_i, e_j)
        rows.append([interior(_unit(n, i), dalpha).coefficient((j,)) for i in range(n)])
    rows.append(list(_coefficients(alpha)))
    rhs = (Fraction(0),) * n + (Fraction(1),)
    return RationalMatrix.from_rows(rows, n), rhs


def _unit(n: int, i: int) -> Vector:
    return tuple(Fraction(int(t == i)) for t in range(n))


def _solve_reeb(alpha: ExteriorElement, dalpha: ExteriorElement) -> Optional[Vector]:
    A, b = _reeb_system(alpha, dalpha)
    xi = solve(A, b)
    if xi is None or kernel_basis(A):
        return None
    return xi


def is_contact_form(L: LieAlgebra, alpha: Covector) -> Optional[ContactCertificate]:
    m = _half_dim(L)
    a = _as_form(L, alpha)
    da = ce_d(L, a)
    top = top_coefficient(a, da, m)
    if not top:
        return None
    xi = _solve_reeb(a, da)
    if xi is None:
        raise AssertionError("contact form without a unique Reeb vector")
    return ContactCertificate(a, xi, top)


def reeb(L: LieAlgebra, alpha: Covector) -> Vector:
    cert = is_contact_form(L, alpha)
    if cert is None:
        raise NotContactError("form is not contact; the Reeb system is singular")
    return cert.reeb


def rank_bound(L: LieAlgebra) -> int:
    """Upper bound on rank(da) over all covectors a.

    da = -sum_k a_k C_k with C_k[i][j] = c_{ij}^k, so the image of da lies
    in the sum of the column spaces of the C_k.
    """
    n = L.dim
    if n == 0 or not L.table:
        return 0
    rows = []
    for i in range(n):
        rows.append([L.structure_constant(i, j, k) for k in range(n) for j in range(n)])
    return rank(RationalMatrix.from_rows(rows, n * n))


@dataclass(frozen=True)
class ContactSearch:
    certificate: Optional[ContactCertificate]
    conclusive: bool
    reason: str
    tried: int
    seed: int
    found_by: Optional[str] = None

    @property
    def found(self) -> bool:
        return self.certificate is not None


def degeneracy_proof(L: LieAlgebra) -> Optional[str]:
    """Reason why no covector can be contact, when the structure constants show it."""
    m = _half_dim(L)
    if not L.table:
        return "d vanishes identically, so a ^ (da)^m = 0 for every a"
    r = rank_bound(L)
    if r < 2 * m:
        return f"every da has rank at most {r} < {2 * m}, so (da)^m = 0 for every a"
    return None


def _random_trial_bound(t: int) -> int:
    return 3 << (t // 16)


def find_contact_form(L: LieAlgebra, trials: int = 64, seed: int = 0) -> ContactSearch:
    """Adapted-basis covectors first, then seeded random integer covectors.

    A returned certificate is exact. A negative answer is conclusive only
    when :func:`degeneracy_proof` applies; otherwise it is probabilistic.
    """
    m = _half_dim(L)
    n = L.dim
    proof = degeneracy_proof(L)
    try:
        basis = adapted_basis(L)
        candidates = [(f"adapted a{l + 1}", basis.forms[l]) for l in range(n)]
    except NotNilpotentError:
        candidates = [(f"dual e{l + 1}", _unit(n, l)) for l in range(n)]
    tried = 0
    for label, coeffs in candidates:
        tried += 1
        cert = is_contact_form(L, coeffs)
        if cert is not None:
            return ContactSearch(cert, True, f"found at {label}", tried, seed, label)
    rng = random.Random(seed)
    for t in range(trials):
        bound = _random_trial_bound(t)
        coeffs = [Fraction(rng.randint(-bound, bound)) for _ in range(n)]
        tried += 1
        cert = is_contact_form(L, coeffs)
        if cert is not None:
            return ContactSearch(cert, True, f"found at random trial {t}", tried, seed, f"random {t}")
    if proof is not None:
        return ContactSearch(None, True, proof, tried, seed)
    return ContactSearch(
        None,
        False,
        f"no contact form among {tried} candidates; this does not prove none exists (m = {m})",
        tried,
        seed,
    )
