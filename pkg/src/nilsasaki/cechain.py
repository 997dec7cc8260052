"""Chevalley-Eilenberg algebra of a Lie algebra and adapted bases of g*.

Sign convention: for a covector a, da(x, y) = -a([x, y]). On the dual
basis this reads  d a_k = -sum_{i<j} c_{ij}^k a_i ^ a_j.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .cdga import ExteriorCdga, derivation_on_monomial
from .exactlin import (
    RationalMatrix,
    Vector,
    inverse,
    kernel_basis,
    rank,
    rank_of_vectors,
    row_space_basis,
)
from .exterior import ExteriorElement, format_element, wedge
from .liealg import LieAlgebra, is_nilpotent


class NotNilpotentError(ValueError):
    pass


def generator_differentials(L: LieAlgebra) -> list[ExteriorElement]:
    n = L.dim
    out = [dict() for _ in range(n)]
    for (i, j), v in L.table.items():
        for k, c in enumerate(v):
            if c:
                out[k][(i, j)] = -c
    return [ExteriorElement(n, t) for t in out]


def ce_d(L: LieAlgebra, x: ExteriorElement) -> ExteriorElement:
    """Chevalley-Eilenberg differential applied to an exterior element."""
    gens = generator_differentials(L)
    out = ExteriorElement.zero(L.dim)
    for S, c in x.items():
        out = out + c * derivation_on_monomial(S, gens)
    return out


def chevalley_eilenberg(L: LieAlgebra, *, validate: bool = True) -> ExteriorCdga:
    if not is_nilpotent(L)[0]:
        warnings.warn(f"{L!r} is not nilpotent; its CE algebra is not a nilmanifold model", stacklevel=2)
    return ExteriorCdga(L.dim, generator_differentials(L), symbol="a", validate=validate)


def d1_matrix(L: LieAlgebra) -> RationalMatrix:
    """Matrix of d: g* -> Λ²g* with rows indexed by pairs i<j in lex order."""
    n = L.dim
    pairs = list(combinations(range(n), 2))
    rows = [[-L.structure_constant(i, j, k) for k in range(n)] for i, j in pairs]
    return RationalMatrix.from_rows(rows, n)


def first_betti(L: LieAlgebra) -> int:
    """dim H^1 = dim ker(d on g*); d vanishes on degree 0."""
    if L.dim < 2:
        return L.dim
    return L.dim - rank(d1_matrix(L))


# -- adapted basis -----------------------------------------------------------


def _pair_index(n: int) -> dict[tuple[int, int], int]:
    return {p: t for t, p in enumerate(combinations(range(n), 2))}


def _wedge_square_span(V: Sequence[Vector], n: int) -> list[Vector]:
    """Vectors (in pair coordinates) spanning Λ² of span(V)."""
    idx = _pair_index(n)
    out = []
    for u, v in combinations(V, 2):
        w = wedge(ExteriorElement.linear(u), ExteriorElement.linear(v))
        vec = [Fraction(0)] * len(idx)
        for S, c in w.items():
            vec[idx[S]] = c
        out.append(tuple(vec))
    return out


def _preimage_of_span(D: RationalMatrix, W: Sequence[Vector]) -> list[Vector]:
    """Basis of {x : D x ∈ span W}."""
    if W:
        annihilator = kernel_basis(RationalMatrix.from_rows(W, D.rows))
    else:
        annihilator = [tuple(Fraction(int(i == j)) for j in range(D.rows)) for i in range(D.rows)]
    if not annihilator:
        return [tuple(Fraction(int(i == j)) for j in range(D.cols)) for i in range(D.cols)]
    UD = RationalMatrix.from_rows(annihilator, D.rows) @ D
    return kernel_basis(UD)


def closed_flag(L: LieAlgebra) -> list[list[Vector]]:
    """V_0 = ker d, V_{i+1} = {a : da ∈ Λ²V_i}, each echelon-normalized."""
    n = L.dim
    if n == 0:
        return [[]]
    D = d1_matrix(L) if n > 1 else RationalMatrix.zeros(0, n)
    flag = [row_space_basis(_preimage_of_span(D, []), n)]
    while len(flag[-1]) < n:
        nxt = row_space_basis(_preimage_of_span(D, _wedge_square_span(flag[-1], n)), n)
        if len(nxt) == len(flag[-1]):
            raise NotNilpotentError(
                f"flag of closed forms stops at dimension {len(nxt)} < {n}; algebra is not nilpotent"
            )
        flag.append(nxt)
    return flag


@dataclass(frozen=True)
class AdaptedBasis:
    """Basis a_1..a_n of g* with d a_l = -sum_{i<j<l} gamma[l, i, j] a_i ^ a_j.

    ``forms[l]`` holds the coordinates of a_l in the standard dual basis;
    indices are 0-based, so the closed forms are ``forms[:k-1]``.
    """

    forms: tuple[Vector, ...]
    k: int
    gamma: dict[tuple[int, int, int], Fraction]
    flag_dims: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.forms)

    def form(self, l: int) -> ExteriorElement:
        return ExteriorElement.linear(self.forms[l])

    def matrix(self) -> RationalMatrix:
        return RationalMatrix.from_rows(self.forms, self.n)

    def dual_basis(self) -> RationalMatrix:
        """Columns are the vectors f_l of g with a_l(f_m) = δ_lm."""
        return inverse(self.matrix())

    def differential_from_gamma(self, l: int) -> ExteriorElement:
        out = ExteriorElement.zero(self.n)
        for (ll, i, j), c in self.gamma.items():
            if ll == l:
                out = out - c * wedge(self.form(i), self.form(j))
        return out

    def violations(self, L: LieAlgebra, b1: Optional[int] = None) -> list[str]:
        problems = []
        if rank_of_vectors(self.forms, self.n) != self.n:
            problems.append("forms are not a basis of g*")
            return problems
        for (l, i, j), c in self.gamma.items():
            if not i < j < l:
                problems.append(f"gamma[{l + 1}][{i + 1},{j + 1}] = {c} is not strictly triangular")
            if l < self.k - 1:
                problems.append(f"gamma[{l + 1}][{i + 1},{j + 1}] = {c} for l < k")
        for l in range(self.n):
            actual = ce_d(L, self.form(l))
            if actual != self.differential_from_gamma(l):
                problems.append(f"d a{l + 1} = {format_element(actual)} disagrees with gamma")
        if b1 is not None and b1 != self.k - 1:
            problems.append(f"k - 1 = {self.k - 1} but dim H^1 = {b1}")
        return problems


def adapted_basis(L: LieAlgebra) -> AdaptedBasis:
    n = L.dim
    flag = closed_flag(L)
    chosen: list[Vector] = []
    for V in flag:
        for v in V:
            if rank_of_vectors(chosen + [v], n) > len(chosen):
                chosen.append(v)
    A = RationalMatrix.from_rows(chosen, n) if n else RationalMatrix.zeros(0, 0)
    gamma: dict[tuple[int, int, int], Fraction] = {}
    if n:
        transported = L.change_basis(inverse(A))
        for (i, j), v in transported.table.items():
            for l, c in enumerate(v):
                if c:
                    gamma[(l, i, j)] = c
    return AdaptedBasis(tuple(chosen), len(flag[0]) + 1, gamma, tuple(len(V) for V in flag))

