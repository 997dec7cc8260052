"""Exact linear algebra over the rationals.

Matrices are dense and immutable; entries are :class:`fractions.Fraction`.
Elimination runs on integer rows (denominators cleared per row, content
divided out after every combination) and is normalized to reduced
fractions only when the result is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

Vector = tuple[Fraction, ...]


class DimensionMismatch(ValueError):
    pass


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; use int, Fraction or 'p/q' strings")
    return Fraction(x)


def vector(values: Iterable) -> Vector:
    return tuple(as_fraction(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise DimensionMismatch(f"dot of lengths {len(u)} and {len(v)}")
    return sum((a * b for a, b in zip(u, v) if a and b), Fraction(0))


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatch(f"entries do not form a {self.rows}x{self.cols} matrix")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], cols: Optional[int] = None) -> "RationalMatrix":
        data = tuple(vector(r) for r in rows)
        if cols is None:
            if not data:
                raise ValueError("cols must be given for a matrix with no rows")
            cols = len(data[0])
        return cls(len(data), cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "RationalMatrix":
        cols = [vector(c) for c in columns]
        if any(len(c) != rows for c in cols):
            raise DimensionMismatch("column length differs from row count")
        return cls(rows, len(cols), tuple(tuple(c[i] for c in cols) for i in range(rows)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, tuple(zero_vector(cols) for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, tuple(unit_vector(n, i) for i in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def T(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows, tuple(self.columns()))

    def is_zero(self) -> bool:
        return not any(x for r in self.entries for x in r)

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            return matmul(self, other)
        return matvec(self, other)

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch in addition")
        return RationalMatrix(
            self.rows,
            self.cols,
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)),
        )

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix(self.rows, self.cols, tuple(tuple(-a for a in r) for r in self.entries))

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self + (-other)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self.entries)
        return f"RationalMatrix({self.rows}x{self.cols}: [{body}])"


def matmul(A: RationalMatrix, B: RationalMatrix) -> RationalMatrix:
    if A.cols != B.rows:
        raise DimensionMismatch(f"cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    bcols = B.columns()
    out = []
    for r in A.entries:
        nz = [(k, a) for k, a in enumerate(r) if a]
        out.append(tuple(sum((a * c[k] for k, a in nz), Fraction(0)) for c in bcols))
    return RationalMatrix(A.rows, B.cols, tuple(out))


def matvec(A: RationalMatrix, v: Sequence) -> Vector:
    if len(v) != A.cols:
        raise DimensionMismatch(f"vector of length {len(v)} for {A.cols} columns")
    v = vector(v)
    return tuple(dot(r, v) for r in A.entries)


# -- integer elimination kernel ---------------------------------------------


def _integer_row(row: Sequence[Fraction]) -> list[int]:
    den = 1
    for x in row:
        if x.denominator != 1:
            den = lcm(den, x.denominator)
    return [int(x * den) for x in row]


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def _eliminate(rows: list[list[int]], ncols: int, stop_col: Optional[int] = None):
    """Gauss-Jordan on integer rows in place; returns pivot columns.

    Pivots are only searched in columns < stop_col (default: all).
    """
    limit = ncols if stop_col is None else stop_col
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(limit):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        pv = prow[c]
        for i in range(nrows):
            if i == r:
                continue
            a = rows[i][c]
            if a:
                g = gcd(pv, a)
                s, t = pv // g, a // g
                rows[i] = _primitive([s * x - t * y for x, y in zip(rows[i], prow)])
        pivots.append(c)
        r += 1
    return pivots


def rref(M: RationalMatrix) -> tuple[RationalMatrix, list[int], int]:
    """Reduced row echelon form, pivot columns and rank."""
    rows = [_primitive(_integer_row(r)) for r in M.entries]
    pivots = _eliminate(rows, M.cols)
    out = []
    for i, row in enumerate(rows):
        if i < len(pivots):
            pv = row[pivots[i]]
            out.append(tuple(Fraction(x, pv) for x in row))
        else:
            out.append(zero_vector(M.cols))
    return RationalMatrix(M.rows, M.cols, tuple(out)), pivots, len(pivots)


def rank(M: RationalMatrix) -> int:
    rows = [_primitive(_integer_row(r)) for r in M.entries]
    return len(_eliminate(rows, M.cols))


def rank_of_vectors(vectors: Sequence[Sequence[Fraction]], n: int) -> int:
    if not vectors:
        return 0
    return rank(RationalMatrix.from_rows(vectors, n))


def row_space_basis(vectors: Sequence[Sequence[Fraction]], n: int) -> list[Vector]:
    """Echelon-normalized basis of the span of ``vectors``."""
    if not vectors:
        return []
    R, _, r = rref(RationalMatrix.from_rows(vectors, n))
    return [R.row(i) for i in range(r)]


def kernel_basis(M: RationalMatrix) -> list[Vector]:
    R, pivots, _ = rref(M)
    pivset = set(pivots)
    basis = []
    for f in range(M.cols):
        if f in pivset:
            continue
        v = [Fraction(0)] * M.cols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -R[i, f]
        basis.append(tuple(v))
    return basis


def solve(A: RationalMatrix, b: Sequence) -> Optional[Vector]:
    """One solution of A x = b with free variables set to zero, or None."""
    if len(b) != A.rows:
        raise DimensionMismatch(f"right-hand side has length {len(b)}, matrix has {A.rows} rows")
    b = vector(b)
    aug = RationalMatrix(A.rows, A.cols + 1, tuple(r + (x,) for r, x in zip(A.entries, b)))
    R, pivots, _ = rref(aug)
    if pivots and pivots[-1] == A.cols:
        return None
    x = [Fraction(0)] * A.cols
    for i, pc in enumerate(pivots):
        x[pc] = R[i, A.cols]
    return tuple(x)


def complement_basis(W: Sequence[Sequence], ambient_dim: int) -> list[Vector]:
    """Standard basis vectors (lowest index first) extending W to a basis."""
    W = [vector(w) for w in W]
    if any(len(w) != ambient_dim for w in W):
        raise DimensionMismatch(f"vectors must have length {ambient_dim}")
    rows = [_primitive(_integer_row(w)) for w in W]
    if len(_eliminate([r[:] for r in rows], ambient_dim)) != len(W):
        raise ValueError("vectors in W are linearly dependent")
    # keep `rows` fully reduced so membership of e_j is a pivot lookup
    pivots = _eliminate(rows, ambient_dim)
    added = []
    for j in range(ambient_dim):
        if len(rows) == ambient_dim:
            break
        e = [0] * ambient_dim
        e[j] = 1
        rows.append(e)
        new_pivots = _eliminate(rows, ambient_dim)
        if len(new_pivots) > len(pivots):
            added.append(unit_vector(ambient_dim, j))
            pivots = new_pivots
            rows = rows[: len(pivots)]
        else:
            rows.pop()
    return added


def determinant(M: RationalMatrix) -> Fraction:
    """Bareiss determinant after clearing denominators row by row."""
    if M.rows != M.cols:
        raise DimensionMismatch("determinant of a non-square matrix")
    n = M.rows
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    a = []
    for r in M.entries:
        den = 1
        for x in r:
            den = lcm(den, x.denominator)
        scale /= den
        a.append([int(x * den) for x in r])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k]), None)
            if p is None:
                return Fraction(0)
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] * scale


def inverse(M: RationalMatrix) -> RationalMatrix:
    if M.rows != M.cols:
        raise DimensionMismatch("inverse of a non-square matrix")
    n = M.rows
    aug = RationalMatrix(n, 2 * n, tuple(r + unit_vector(n, i) for i, r in enumerate(M.entries)))
    R, pivots, _ = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular")
    return RationalMatrix(n, n, tuple(R.row(i)[n:] for i in range(n)))


def is_invertible(M: RationalMatrix) -> bool:
    return M.rows == M.cols and rank(M) == M.rows
