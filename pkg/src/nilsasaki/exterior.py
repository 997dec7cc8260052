"""Elements of the exterior algebra on n degree-one generators.

Monomials are strictly increasing tuples of 0-based generator indices;
``(0, 2)`` is a1^a3 in the 1-based notation used for display.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .exactlin import as_fraction

Monomial = tuple[int, ...]


def merge_sign(S: Sequence[int], T: Sequence[int]) -> int:
    """Sign of sorting the concatenation S+T, or 0 if they overlap.

    Both inputs must be strictly increasing.
    """
    inversions = 0
    j = 0
    for s in S:
        while j < len(T) and T[j] < s:
            j += 1
        if j < len(T) and T[j] == s:
            return 0
        inversions += j
    return -1 if inversions & 1 else 1


def _merge(S: Monomial, T: Monomial) -> Monomial:
    return tuple(sorted(S + T))


class ExteriorElement:
    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[Monomial, object] = ()):
        self.n = n
        clean: dict[Monomial, Fraction] = {}
        for S, c in dict(terms).items():
            S = tuple(S)
            if any(b <= a for a, b in zip(S, S[1:])):
                raise ValueError(f"monomial {S} is not strictly increasing")
            if S and (S[0] < 0 or S[-1] >= n):
                raise ValueError(f"monomial {S} out of range for {n} generators")
            c = as_fraction(c)
            if c:
                clean[S] = c
        self._terms = clean

    @classmethod
    def _raw(cls, n: int, terms: dict[Monomial, Fraction]) -> "ExteriorElement":
        obj = cls.__new__(cls)
        obj.n = n
        obj._terms = terms
        return obj

    @classmethod
    def zero(cls, n: int) -> "ExteriorElement":
        return cls._raw(n, {})

    @classmethod
    def one(cls, n: int) -> "ExteriorElement":
        return cls._raw(n, {(): Fraction(1)})

    @classmethod
    def generator(cls, n: int, i: int) -> "ExteriorElement":
        if not 0 <= i < n:
            raise IndexError(i)
        return cls._raw(n, {(i,): Fraction(1)})

    @classmethod
    def monomial(cls, n: int, S: Iterable[int], coeff=1) -> "ExteriorElement":
        return cls(n, {tuple(S): coeff})

    @classmethod
    def linear(cls, coefficients: Sequence) -> "ExteriorElement":
        """Degree-one element sum_i c_i a_i."""
        n = len(coefficients)
        return cls(n, {(i,): c for i, c in enumerate(coefficients)})

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(sorted(self._terms.items(), key=lambda kv: (len(kv[0]), kv[0])))

    def coefficient(self, S: Iterable[int]) -> Fraction:
        return self._terms.get(tuple(S), Fraction(0))

    def degrees(self) -> set[int]:
        return {len(S) for S in self._terms}

    def degree_part(self, p: int) -> "ExteriorElement":
        return ExteriorElement._raw(self.n, {S: c for S, c in self._terms.items() if len(S) == p})

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _check(self, other: "ExteriorElement") -> None:
        if not isinstance(other, ExteriorElement):
            raise TypeError(f"expected ExteriorElement, got {type(other).__name__}")
        if other.n != self.n:
            raise ValueError(f"ambient dimensions differ: {self.n} vs {other.n}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExteriorElement):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    __hash__ = None

    def __add__(self, other: "ExteriorElement") -> "ExteriorElement":
        self._check(other)
        out = dict(self._terms)
        for S, c in other._terms.items():
            v = out.get(S, 0) + c
            if v:
                out[S] = v
            else:
                out.pop(S, None)
        return ExteriorElement._raw(self.n, out)

    def __neg__(self) -> "ExteriorElement":
        return ExteriorElement._raw(self.n, {S: -c for S, c in self._terms.items()})

    def __sub__(self, other: "ExteriorElement") -> "ExteriorElement":
        return self + (-other)

    def __mul__(self, scalar) -> "ExteriorElement":
        if isinstance(scalar, ExteriorElement):
            return wedge(self, scalar)
        s = as_fraction(scalar)
        if not s:
            return ExteriorElement.zero(self.n)
        return ExteriorElement._raw(self.n, {S: s * c for S, c in self._terms.items()})

    def __rmul__(self, scalar) -> "ExteriorElement":
        return self * scalar

    def __xor__(self, other: "ExteriorElement") -> "ExteriorElement":
        return wedge(self, other)

    def __pow__(self, k: int) -> "ExteriorElement":
        out = ExteriorElement.one(self.n)
        for _ in range(k):
            out = wedge(out, self)
        return out

    def __repr__(self) -> str:
        return f"ExteriorElement({self.n}, {format_element(self)})"


def wedge(x: ExteriorElement, y: ExteriorElement) -> ExteriorElement:
    x._check(y)
    out: dict[Monomial, Fraction] = {}
    for S, a in x._terms.items():
        for T, b in y._terms.items():
            s = merge_sign(S, T)
            if not s:
                continue
            U = _merge(S, T)
            v = out.get(U, 0) + s * a * b
            if v:
                out[U] = v
            else:
                out.pop(U, None)
    return ExteriorElement._raw(x.n, out)


def interior(v: Sequence, x: ExteriorElement) -> ExteriorElement:
    """Contraction i_v x of an exterior element by a vector v."""
    if len(v) != x.n:
        raise ValueError("vector length differs from ambient dimension")
    out: dict[Monomial, Fraction] = {}
    for S, c in x._terms.items():
        for pos, i in enumerate(S):
            vi = v[i]
            if not vi:
                continue
            U = S[:pos] + S[pos + 1 :]
            val = out.get(U, 0) + (-1) ** pos * vi * c
            if val:
                out[U] = val
            else:
                out.pop(U, None)
    return ExteriorElement._raw(x.n, out)


def two_form_matrix(x: ExteriorElement) -> list[list[Fraction]]:
    """Skew matrix W with x = sum_{i<j} W[i][j] a_i^a_j."""
    n = x.n
    W = [[Fraction(0)] * n for _ in range(n)]
    for S, c in x._terms.items():
        if len(S) != 2:
            raise ValueError("element is not homogeneous of degree 2")
        i, j = S
        W[i][j] = c
        W[j][i] = -c
    return W


def format_monomial(S: Monomial, symbol: str = "a") -> str:
    if not S:
        return "1"
    return "^".join(f"{symbol}{i + 1}" for i in S)


def format_element(x: ExteriorElement, symbol: str = "a") -> str:
    if x.is_zero():
        return "0"
    parts = []
    for S, c in x.items():
        mono = format_monomial(S, symbol)
        if mono == "1":
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append(f"-{mono}")
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts).replace("+ -", "- ")
