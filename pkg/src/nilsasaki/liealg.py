"""Finite-dimensional Lie algebras given by rational structure constants.

Basis vectors are 0-based internally; ``[e_i, e_j] = sum_k c[i, j][k] e_k``
is stored only for i < j and only when nonzero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Optional, Sequence, Union

from .exactlin import (
    RationalMatrix,
    Vector,
    as_fraction,
    complement_basis,
    inverse,
    is_invertible,
    kernel_basis,
    matvec,
    rank,
    row_space_basis,
    unit_vector,
    zero_vector,
)

BracketSpec = Union[Sequence, Mapping[int, object]]


class JacobiError(ValueError):
    def __init__(self, violation: "JacobiViolation"):
        self.violation = violation
        super().__init__(str(violation))


@dataclass(frozen=True)
class JacobiViolation:
    i: int
    j: int
    k: int
    residual: Vector

    def __str__(self) -> str:
        res = ", ".join(str(x) for x in self.residual)
        return (
            f"Jacobi identity fails on (e{self.i + 1}, e{self.j + 1}, e{self.k + 1}); "
            f"residual ({res})"
        )


def _add_scaled(acc: list[Fraction], v: Sequence[Fraction], s: Fraction) -> None:
    if s:
        for t, x in enumerate(v):
            if x:
                acc[t] += s * x


class LieAlgebra:
    """A Lie algebra over Q given by structure constants.

    Jacobi is checked on construction unless ``check=False``; unchecked
    instances exist so that :func:`check_jacobi` can report on bad tables.
    """

    def __init__(
        self,
        dim: int,
        brackets: Mapping[tuple[int, int], BracketSpec] = (),
        *,
        name: Optional[str] = None,
        check: bool = True,
    ):
        if dim < 0:
            raise ValueError("dimension must be non-negative")
        self.dim = dim
        self.name = name
        table: dict[tuple[int, int], Vector] = {}
        for (i, j), value in dict(brackets).items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise IndexError(f"bracket index ({i}, {j}) out of range for dim {dim}")
            if i == j:
                raise ValueError(f"[e{i + 1}, e{i + 1}] is zero by antisymmetry and cannot be declared")
            if isinstance(value, Mapping):
                vec = [Fraction(0)] * dim
                for k, c in value.items():
                    if not 0 <= k < dim:
                        raise IndexError(f"output index {k} out of range for dim {dim}")
                    vec[k] += as_fraction(c)
            else:
                vec = [as_fraction(c) for c in value]
                if len(vec) != dim:
                    raise ValueError(f"bracket value must have length {dim}")
            if i > j:
                i, j = j, i
                vec = [-c for c in vec]
            if (i, j) in table:
                raise ValueError(f"bracket [e{i + 1}, e{j + 1}] declared twice")
            table[(i, j)] = tuple(vec)
        self._table = {key: v for key, v in sorted(table.items()) if any(v)}
        if check:
            violation = check_jacobi(self)
            if violation is not None:
                raise JacobiError(violation)

    @property
    def table(self) -> dict[tuple[int, int], Vector]:
        return dict(self._table)

    def bracket_basis(self, i: int, j: int) -> Vector:
        if i == j:
            return zero_vector(self.dim)
        if i < j:
            return self._table.get((i, j), zero_vector(self.dim))
        v = self._table.get((j, i))
        return tuple(-c for c in v) if v else zero_vector(self.dim)

    def structure_constant(self, i: int, j: int, k: int) -> Fraction:
        return self.bracket_basis(i, j)[k]

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        acc = [Fraction(0)] * self.dim
        for (i, j), v in self._table.items():
            s = as_fraction(x[i]) * as_fraction(y[j]) - as_fraction(x[j]) * as_fraction(y[i])
            _add_scaled(acc, v, s)
        return tuple(acc)

    def ad_matrix(self, x: Sequence) -> RationalMatrix:
        """Matrix of ad_x = [x, -] in the standard basis."""
        cols = [self.bracket(x, unit_vector(self.dim, j)) for j in range(self.dim)]
        return RationalMatrix.from_columns(cols, self.dim)

    def change_basis(self, P: RationalMatrix, name: Optional[str] = None) -> "LieAlgebra":
        """Structure constants in the basis given by the columns of P."""
        if P.rows != self.dim or not is_invertible(P):
            raise ValueError("basis change must be an invertible dim x dim matrix")
        Pinv = inverse(P)
        cols = P.columns()
        table = {}
        for a, b in combinations(range(self.dim), 2):
            v = self.bracket(cols[a], cols[b])
            if any(v):
                table[(a, b)] = matvec(Pinv, v)
        return LieAlgebra(self.dim, table, name=name, check=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.dim == other.dim and self._table == other._table

    __hash__ = None

    def __repr__(self) -> str:
        label = f"{self.name!r}, " if self.name else ""
        return f"LieAlgebra({label}dim={self.dim}, brackets={len(self._table)})"


def check_jacobi(L: LieAlgebra) -> Optional[JacobiViolation]:
    """First violating triple i<j<k in lexicographic order, or None."""
    n = L.dim
    for i, j, k in combinations(range(n), 3):
        acc = [Fraction(0)] * n
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            ab = L.bracket_basis(a, b)
            for t, s in enumerate(ab):
                if s:
                    _add_scaled(acc, L.bracket_basis(t, c), s)
        if any(acc):
            return JacobiViolation(i, j, k, tuple(acc))
    return None


# -- subspaces ---------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    ambient_dim: int
    basis: tuple[Vector, ...] = field(default=())

    @classmethod
    def span(cls, vectors: Sequence[Sequence], ambient_dim: int) -> "Subspace":
        vecs = [tuple(as_fraction(x) for x in v) for v in vectors]
        return cls(ambient_dim, tuple(row_space_basis(vecs, ambient_dim)))

    @classmethod
    def whole(cls, n: int) -> "Subspace":
        return cls(n, tuple(unit_vector(n, i) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence) -> bool:
        if not self.basis:
            return not any(v)
        return rank(RationalMatrix.from_rows(list(self.basis) + [v], self.ambient_dim)) == self.dim

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.basis)

    def __repr__(self) -> str:
        vecs = ", ".join("(" + ", ".join(str(x) for x in v) + ")" for v in self.basis)
        return f"Subspace(dim={self.dim} in {self.ambient_dim}: {vecs})"


def derived(L: LieAlgebra) -> Subspace:
    return Subspace.span(list(L.table.values()), L.dim)


def bracket_with(L: LieAlgebra, S: Subspace) -> Subspace:
    """[g, S] as a subspace."""
    vecs = []
    for a in range(L.dim):
        ea = unit_vector(L.dim, a)
        for v in S.basis:
            w = L.bracket(ea, v)
            if any(w):
                vecs.append(w)
    return Subspace.span(vecs, L.dim)


def center(L: LieAlgebra) -> Subspace:
    n = L.dim
    # x is central iff [x, e_j] = 0 for every j: stack the n x n blocks
    rows = []
    for j in range(n):
        for k in range(n):
            rows.append([L.structure_constant(i, j, k) for i in range(n)])
    if not rows:
        return Subspace(n, ())
    return Subspace.span(kernel_basis(RationalMatrix.from_rows(rows, n)), n)


def lower_central_series(L: LieAlgebra) -> list[Subspace]:
    series = [Subspace.whole(L.dim)]
    while series[-1].dim:
        nxt = bracket_with(L, series[-1])
        if nxt == series[-1]:
            break
        series.append(nxt)
    return series


def is_nilpotent(L: LieAlgebra) -> tuple[bool, Optional[int]]:
    """(nilpotent?, step); step is the index of the first zero term."""
    series = lower_central_series(L)
    if series[-1].dim:
        return False, None
    return True, len(series) - 1


# -- standard algebras -------------------------------------------------------


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra(n, {}, name=f"a{n}")


def heisenberg(m: int) -> LieAlgebra:
    """h(1,m): [e_{2i-1}, e_{2i}] = e_{2m+1} in 1-based indexing."""
    if m < 1:
        raise ValueError("heisenberg(m) needs m >= 1")
    n = 2 * m + 1
    return LieAlgebra(n, {(2 * i, 2 * i + 1): {n - 1: 1} for i in range(m)}, name=f"h(1,{m})")


def direct_sum(A: LieAlgebra, B: LieAlgebra, name: Optional[str] = None) -> LieAlgebra:
    n = A.dim + B.dim
    table = {}
    for (i, j), v in A.table.items():
        table[(i, j)] = tuple(v) + zero_vector(B.dim)
    for (i, j), v in B.table.items():
        table[(A.dim + i, A.dim + j)] = zero_vector(A.dim) + tuple(v)
    return LieAlgebra(n, table, name=name, check=False)


# -- symplectic normal form --------------------------------------------------


def standard_symplectic(m: int) -> RationalMatrix:
    """Block diagonal form with omega(q_i, p_i) = 1 on interleaved (q1, p1, q2, p2, ...)."""
    n = 2 * m
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(m):
        rows[2 * i][2 * i + 1] = Fraction(1)
        rows[2 * i + 1][2 * i] = Fraction(-1)
    return RationalMatrix.from_rows(rows, n)


def _form(B: RationalMatrix, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((u[i] * B[i, j] * v[j] for i in range(B.rows) if u[i] for j in range(B.cols) if v[j]), Fraction(0))


def symplectic_basis(B: RationalMatrix) -> RationalMatrix:
    """P with P^T B P = standard_symplectic(m), built by symplectic Gram-Schmidt.

    Pairs are chosen greedily: the first remaining vector, then the first
    remaining vector pairing nontrivially with it.
    """
    n = B.rows
    if B.cols != n or B.T != -B:
        raise ValueError("form is not skew-symmetric")
    if n % 2 or rank(B) != n:
        raise ValueError("form is degenerate")
    remaining = [unit_vector(n, i) for i in range(n)]
    chosen: list[Vector] = []
    while remaining:
        u = remaining.pop(0)
        idx = next((t for t, w in enumerate(remaining) if _form(B, u, w)), None)
        if idx is None:
            raise ValueError("form is degenerate")
        w = remaining.pop(idx)
        s = _form(B, u, w)
        v = tuple(x / s for x in w)
        chosen += [u, v]
        projected = []
        for w in remaining:
            a, b = _form(B, w, v), _form(B, w, u)
            projected.append(tuple(w[t] - a * u[t] + b * v[t] for t in range(n)))
        remaining = projected
    return RationalMatrix.from_columns(chosen, n)


# -- Heisenberg recognition --------------------------------------------------


@dataclass(frozen=True)
class HeisenbergWitness:
    """Columns of ``basis_change`` are (q1, p1, ..., qm, pm, t) in input coordinates."""

    m: int
    basis_change: RationalMatrix

    def verify(self, L: LieAlgebra) -> bool:
        P = self.basis_change
        if P.rows != L.dim or P.cols != 2 * self.m + 1 or not is_invertible(P):
            return False
        return L.change_basis(P) == heisenberg(self.m)


@dataclass(frozen=True)
class HeisenbergObstruction:
    name: str
    message: str
    evidence: dict

    def __str__(self) -> str:
        return self.message


def induced_cocycle(L: LieAlgebra, complement: Sequence[Vector], central: Vector) -> RationalMatrix:
    """omega(x, y) with [x, y] = omega(x, y) * central, on the given complement."""
    k = next(t for t, c in enumerate(central) if c)
    rows = []
    for x in complement:
        row = []
        for y in complement:
            v = L.bracket(x, y)
            s = v[k] / central[k]
            if any(v[t] != s * central[t] for t in range(L.dim)):
                raise ValueError("bracket leaves the centre")
            row.append(s)
        rows.append(row)
    return RationalMatrix.from_rows(rows, len(complement))


def recognize_heisenberg(L: LieAlgebra) -> Union[HeisenbergWitness, HeisenbergObstruction]:
    n = L.dim
    if n % 2 == 0 or n < 3:
        raise ValueError(f"Heisenberg recognition needs odd dimension >= 3, got {n}")
    nil, _ = is_nilpotent(L)
    if not nil:
        raise ValueError("input Lie algebra is not nilpotent")
    m = (n - 1) // 2
    z = center(L)
    if z.dim != 1:
        return HeisenbergObstruction(
            "center-dim", f"center dimension {z.dim} ≠ 1", {"center_dim": z.dim}
        )
    der = derived(L)
    if der != z:
        return HeisenbergObstruction(
            "not-2-step",
            f"derived algebra (dimension {der.dim}) differs from the center",
            {"derived_dim": der.dim, "center_dim": z.dim},
        )
    central = z.basis[0]
    complement = complement_basis([central], n)
    omega = induced_cocycle(L, complement, central)
    r = rank(omega)
    if r != 2 * m:
        return HeisenbergObstruction(
            "degenerate-cocycle",
            f"induced cocycle on g/z has rank {r} < {2 * m}",
            {"cocycle_rank": r},
        )
    S = symplectic_basis(omega)
    lifted = [
        tuple(sum((S[a, c] * complement[a][t] for a in range(2 * m)), Fraction(0)) for t in range(n))
        for c in range(2 * m)
    ]
    P = RationalMatrix.from_columns(lifted + [central], n)
    return HeisenbergWitness(m, P)


def random_invertible(n: int, rng, bound: int = 3, fractional: bool = True) -> RationalMatrix:
    """Seeded random invertible rational matrix (rejection sampling)."""
    while True:
        rows = []
        for _ in range(n):
            row = []
            for _ in range(n):
                num = rng.randint(-bound, bound)
                den = rng.randint(1, 3) if fractional else 1
                row.append(Fraction(num, den))
            rows.append(row)
        P = RationalMatrix.from_rows(rows, n)
        if is_invertible(P):
            return P


def conjugate(L: LieAlgebra, P: RationalMatrix) -> LieAlgebra:
    """Alias of :meth:`LieAlgebra.change_basis` that keeps the name."""
    return L.change_basis(P, name=L.name)

