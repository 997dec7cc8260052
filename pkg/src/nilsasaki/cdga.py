"""Finite-dimensional commutative differential graded algebras.

A :class:`CdgaFinite` has a graded basis (global indices, degree by degree),
a sparse multiplication table on basis pairs and a sparse differential.
Elements are sparse dicts ``{global index: Fraction}``. Every axiom is
checked when the algebra is built.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Optional, Sequence

from .exactlin import (
    RationalMatrix,
    Vector,
    kernel_basis,
    rank,
    row_space_basis,
    solve,
)
from .exterior import ExteriorElement, Monomial, format_monomial, merge_sign

Element = dict[int, Fraction]


class CdgaError(ValueError):
    """An axiom of a CDGA (or a morphism shape) is violated."""


def _axpy(acc: Element, x: Mapping[int, Fraction], s) -> None:
    if not s:
        return
    for k, c in x.items():
        v = acc.get(k, 0) + s * c
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)


def _clean(x: Mapping[int, object]) -> Element:
    return {k: Fraction(c) for k, c in x.items() if c}


class CdgaFinite:
    def __init__(
        self,
        labels: Sequence[Sequence[str]],
        products: Mapping[tuple[int, int], Mapping[int, object]],
        differential: Mapping[int, Mapping[int, object]],
        *,
        validate: bool = True,
    ):
        self.labels = tuple(tuple(ls) for ls in labels)
        if not self.labels or len(self.labels[0]) < 1:
            raise CdgaError("degree 0 must contain the unit")
        self.top_degree = len(self.labels) - 1
        self.offsets = []
        self._degree = []
        off = 0
        for p, ls in enumerate(self.labels):
            self.offsets.append(off)
            self._degree.extend([p] * len(ls))
            off += len(ls)
        self.size = off
        self._products = {key: _clean(v) for key, v in products.items()}
        self._products = {key: v for key, v in self._products.items() if v}
        self._d = {i: _clean(v) for i, v in differential.items()}
        self._d = {i: v for i, v in self._d.items() if v}
        if validate:
            self.validate()

    # -- basic access -----------------------------------------------------

    def dim(self, p: int) -> int:
        if 0 <= p <= self.top_degree:
            return len(self.labels[p])
        return 0

    def degree(self, i: int) -> int:
        return self._degree[i]

    def indices(self, p: int) -> range:
        if not 0 <= p <= self.top_degree:
            return range(0)
        return range(self.offsets[p], self.offsets[p] + self.dim(p))

    def label(self, i: int) -> str:
        p = self._degree[i]
        return self.labels[p][i - self.offsets[p]]

    @property
    def unit(self) -> Element:
        return {0: Fraction(1)}

    def basis_element(self, i: int) -> Element:
        return {i: Fraction(1)}

    def product_of_basis(self, i: int, j: int) -> Element:
        return self._products.get((i, j), {})

    def d_basis(self, i: int) -> Element:
        return self._d.get(i, {})

    def multiply(self, x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> Element:
        out: Element = {}
        for i, a in x.items():
            for j, b in y.items():
                prod = self._products.get((i, j))
                if prod:
                    _axpy(out, prod, a * b)
        return out

    def power(self, x: Mapping[int, Fraction], k: int) -> Element:
        out = self.unit
        for _ in range(k):
            out = self.multiply(out, x)
        return out

    def d(self, x: Mapping[int, Fraction]) -> Element:
        out: Element = {}
        for i, a in x.items():
            img = self._d.get(i)
            if img:
                _axpy(out, img, a)
        return out

    def to_vector(self, p: int, x: Mapping[int, Fraction]) -> Vector:
        off, n = self.offsets[p] if p <= self.top_degree else 0, self.dim(p)
        vec = [Fraction(0)] * n
        for i, c in x.items():
            if self._degree[i] != p:
                raise CdgaError(f"element has a component in degree {self._degree[i]}, expected {p}")
            vec[i - off] = c
        return tuple(vec)

    def from_vector(self, p: int, v: Sequence[Fraction]) -> Element:
        off = self.offsets[p]
        return {off + t: Fraction(c) for t, c in enumerate(v) if c}

    def d_matrix(self, p: int) -> RationalMatrix:
        """Matrix of d: A^p -> A^{p+1} (zero rows/cols outside the range)."""
        rows, cols = self.dim(p + 1), self.dim(p)
        entries = [[Fraction(0)] * cols for _ in range(rows)]
        if rows and cols:
            off_src, off_tgt = self.offsets[p], self.offsets[p + 1]
            for i in self.indices(p):
                for k, c in self.d_basis(i).items():
                    entries[k - off_tgt][i - off_src] = c
        return RationalMatrix.from_rows(entries, cols)

    @property
    def differential_matrices(self) -> list[RationalMatrix]:
        return [self.d_matrix(p) for p in range(self.top_degree + 1)]

    def format(self, x: Mapping[int, Fraction]) -> str:
        if not x:
            return "0"
        parts = []
        for i in sorted(x):
            c = x[i]
            lab = self.label(i)
            if lab == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(lab)
            elif c == -1:
                parts.append(f"-{lab}")
            else:
                parts.append(f"{c}*{lab}")
        return " + ".join(parts).replace("+ -", "- ")

    # -- axioms -----------------------------------------------------------

    def validate(self) -> None:
        deg = self._degree
        for (i, j), prod in self._products.items():
            for k in prod:
                if deg[k] != deg[i] + deg[j]:
                    raise CdgaError(f"product {self.label(i)}*{self.label(j)} leaves degree {deg[i] + deg[j]}")
        for i, img in self._d.items():
            for k in img:
                if deg[k] != deg[i] + 1:
                    raise CdgaError(f"d({self.label(i)}) is not of degree {deg[i] + 1}")
        for i in range(self.size):
            e = {i: Fraction(1)}
            if self.product_of_basis(0, i) != e or self.product_of_basis(i, 0) != e:
                raise CdgaError(f"basis element 0 is not a unit for {self.label(i)}")
        if self._d.get(0):
            raise CdgaError("d(1) must vanish")
        for i in range(self.size):
            dd = self.d(self.d_basis(i))
            if dd:
                raise CdgaError(f"d∘d ≠ 0 on {self.label(i)}")
        for i in range(self.size):
            for j in range(i, self.size):
                xy = self.product_of_basis(i, j)
                yx = self.product_of_basis(j, i)
                sign = -1 if deg[i] * deg[j] % 2 else 1
                if xy != {k: sign * c for k, c in yx.items()}:
                    raise CdgaError(
                        f"graded commutativity fails on ({self.label(i)}, {self.label(j)})"
                    )
        for i in range(self.size):
            di = self.d_basis(i)
            sign = -1 if deg[i] % 2 else 1
            for j in range(self.size):
                if deg[i] + deg[j] > self.top_degree:
                    continue
                lhs = self.d(self.product_of_basis(i, j))
                rhs: Element = {}
                if di:
                    _axpy(rhs, self.multiply(di, {j: Fraction(1)}), 1)
                dj = self.d_basis(j)
                if dj:
                    _axpy(rhs, self.multiply({i: Fraction(1)}, dj), sign)
                if lhs != rhs:
                    raise CdgaError(f"Leibniz rule fails on ({self.label(i)}, {self.label(j)})")

    def betti(self) -> list[int]:
        return [h.betti for h in cohomology(self)]

    def __repr__(self) -> str:
        dims = ", ".join(str(self.dim(p)) for p in range(self.top_degree + 1))
        return f"{type(self).__name__}(dims=({dims}))"


class ExteriorCdga(CdgaFinite):
    """Free graded-commutative algebra on n degree-one generators.

    ``generator_differentials[i]`` is d of the i-th generator, an
    :class:`ExteriorElement` of degree 2 (or None for d = 0); it is
    extended to all monomials as a derivation.
    """

    def __init__(
        self,
        n: int,
        generator_differentials: Optional[Sequence[ExteriorElement]] = None,
        *,
        symbol: str = "a",
        validate: bool = True,
    ):
        self.n = n
        self.symbol = symbol
        self.monomials: list[Monomial] = []
        labels = []
        for p in range(n + 1):
            mons = list(combinations(range(n), p))
            self.monomials.extend(mons)
            labels.append([format_monomial(S, symbol) for S in mons])
        self.index_of = {S: i for i, S in enumerate(self.monomials)}
        products = {}
        for i, S in enumerate(self.monomials):
            for j, T in enumerate(self.monomials):
                s = merge_sign(S, T)
                if s:
                    products[(i, j)] = {self.index_of[tuple(sorted(S + T))]: s}
        differential = {}
        if generator_differentials is not None:
            if len(generator_differentials) != n:
                raise CdgaError("need one differential per generator")
            for g in generator_differentials:
                if g.n != n or (g and g.degrees() != {2}):
                    raise CdgaError("generator differentials must be degree-2 elements")
            for i, S in enumerate(self.monomials):
                img = derivation_on_monomial(S, generator_differentials)
                if img:
                    differential[i] = self.from_exterior(img)
        self.generator_differentials = (
            tuple(generator_differentials) if generator_differentials is not None else None
        )
        super().__init__(labels, products, differential, validate=validate)

    def generator_index(self, i: int) -> int:
        return self.index_of[(i,)]

    def from_exterior(self, x: ExteriorElement) -> Element:
        return {self.index_of[S]: c for S, c in x.items()}

    def to_exterior(self, x: Mapping[int, Fraction]) -> ExteriorElement:
        return ExteriorElement(self.n, {self.monomials[i]: c for i, c in x.items()})


def derivation_on_monomial(S: Monomial, gen_d: Sequence[ExteriorElement]) -> ExteriorElement:
    """d(a_S) = sum_pos (-1)^pos a_{S<pos} ^ d(a_{S[pos]}) ^ a_{S>pos}."""
    n = len(gen_d)
    out = ExteriorElement.zero(n)
    for pos, s in enumerate(S):
        dg = gen_d[s]
        if not dg:
            continue
        term = ExteriorElement.monomial(n, S[:pos]) ^ dg ^ ExteriorElement.monomial(n, S[pos + 1 :])
        out = out + (term if pos % 2 == 0 else -term)
    return out


def apply_d(A: CdgaFinite, x: Mapping[int, Fraction]) -> Element:
    return A.d(x)


# -- cohomology --------------------------------------------------------------


@dataclass(frozen=True)
class DegreeCohomology:
    degree: int
    betti: int
    representatives: tuple[Vector, ...]
    exact_basis: tuple[Vector, ...]


def _reduce_mod(v: Sequence[Fraction], echelon: Sequence[Vector]) -> Vector:
    v = list(v)
    for row in echelon:
        c = next(t for t, x in enumerate(row) if x)
        if v[c]:
            s = v[c]
            for t, x in enumerate(row):
                if x:
                    v[t] -= s * x
    return tuple(v)


def degree_cohomology(A: CdgaFinite, p: int) -> DegreeCohomology:
    n = A.dim(p)
    if n == 0:
        return DegreeCohomology(p, 0, (), ())
    cycles = kernel_basis(A.d_matrix(p)) if A.dim(p + 1) else [
        tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)
    ]
    exact: list[Vector] = []
    if p > 0 and A.dim(p - 1):
        exact = row_space_basis(A.d_matrix(p - 1).columns(), n)
    reduced = [_reduce_mod(z, exact) for z in cycles]
    reps = row_space_basis(reduced, n)
    if len(reps) != len(cycles) - len(exact):
        raise CdgaError(f"inconsistent cohomology computation in degree {p}")
    return DegreeCohomology(p, len(reps), tuple(reps), tuple(exact))


def cohomology(A: CdgaFinite) -> list[DegreeCohomology]:
    return [degree_cohomology(A, p) for p in range(A.top_degree + 1)]


def class_coordinates(h: DegreeCohomology, v: Sequence[Fraction]) -> Optional[Vector]:
    """Coordinates of the class of a cycle v in the representative basis."""
    cols = list(h.exact_basis) + list(h.representatives)
    if not cols:
        return () if not any(v) else None
    M = RationalMatrix.from_columns(cols, len(v))
    x = solve(M, v)
    if x is None:
        return None
    return x[len(h.exact_basis) :]


# -- morphisms ---------------------------------------------------------------


class CdgaMorphism:
    """Linear map of CDGAs given by the images of source basis elements."""

    def __init__(self, source: CdgaFinite, target: CdgaFinite, images: Sequence[Mapping[int, object]]):
        if len(images) != source.size:
            raise CdgaError(f"need {source.size} images, got {len(images)}")
        for img in images:
            if any(not 0 <= k < target.size for k in img):
                raise CdgaError("image refers to an index outside the target")
        self.source = source
        self.target = target
        self.images = tuple(_clean(img) for img in images)

    @classmethod
    def from_matrices(cls, source: CdgaFinite, target: CdgaFinite, matrices: Sequence[RationalMatrix]):
        """One matrix per degree, mapping source degree p to target degree p."""
        if len(matrices) != source.top_degree + 1:
            raise CdgaError("need one matrix per source degree")
        images: list[Element] = []
        for p, M in enumerate(matrices):
            if (M.rows, M.cols) != (target.dim(p), source.dim(p)):
                raise CdgaError(
                    f"degree {p} matrix has shape {M.rows}x{M.cols}, "
                    f"expected {target.dim(p)}x{source.dim(p)}"
                )
            for j in range(M.cols):
                images.append(target.from_vector(p, M.column(j)) if M.rows else {})
        return cls(source, target, images)

    @classmethod
    def identity(cls, A: CdgaFinite) -> "CdgaMorphism":
        return cls(A, A, [{i: Fraction(1)} for i in range(A.size)])

    def apply(self, x: Mapping[int, Fraction]) -> Element:
        out: Element = {}
        for i, c in x.items():
            _axpy(out, self.images[i], c)
        return out

    def matrix(self, p: int) -> RationalMatrix:
        cols = [self.target.to_vector(p, self.images[i]) for i in self.source.indices(p)]
        if not cols:
            return RationalMatrix.zeros(self.target.dim(p), 0)
        return RationalMatrix.from_columns(cols, self.target.dim(p))


def extend_from_generators(
    source: ExteriorCdga, target: CdgaFinite, generator_images: Sequence[Mapping[int, object]]
) -> CdgaMorphism:
    """Multiplicative extension of images of the degree-one generators."""
    if len(generator_images) != source.n:
        raise CdgaError(f"need {source.n} generator images")
    gens = [_clean(g) for g in generator_images]
    images = []
    for S in source.monomials:
        x = target.unit
        for s in S:
            x = target.multiply(x, gens[s])
        images.append(x)
    return CdgaMorphism(source, target, images)


@dataclass(frozen=True)
class MorphismFailure:
    kind: str  # degree | not-unital | not-chain-map | not-multiplicative
    witness: tuple[int, ...]
    witness_labels: tuple[str, ...]
    detail: str

    def __str__(self) -> str:
        return f"{self.kind} at ({', '.join(self.witness_labels)}): {self.detail}"


def verify_morphism(f: CdgaMorphism) -> Optional[MorphismFailure]:
    """None if f is a CDGA morphism, else the first failure found.

    Checks run in the order: degrees, unit, chain map, multiplicativity;
    within each, basis elements (or pairs) in index order.
    """
    S, T = f.source, f.target

    def fail(kind, idx, detail):
        return MorphismFailure(kind, tuple(idx), tuple(S.label(i) for i in idx), detail)

    for i, img in enumerate(f.images):
        bad = [k for k in img if T.degree(k) != S.degree(i)]
        if bad:
            return fail("degree", (i,), f"image has a component {T.label(bad[0])} of degree {T.degree(bad[0])}")
    if f.images[0] != T.unit:
        return fail("not-unital", (0,), f"unit maps to {T.format(f.images[0])}")
    for i in range(S.size):
        lhs = T.d(f.images[i])
        rhs = f.apply(S.d_basis(i))
        if lhs != rhs:
            return fail("not-chain-map", (i,), f"d f = {T.format(lhs)} but f d = {T.format(rhs)}")
    for i in range(S.size):
        for j in range(S.size):
            if S.degree(i) + S.degree(j) > S.top_degree and S.degree(i) + S.degree(j) > T.top_degree:
                continue
            lhs = f.apply(S.product_of_basis(i, j))
            rhs = T.multiply(f.images[i], f.images[j])
            if lhs != rhs:
                return fail(
                    "not-multiplicative", (i, j), f"f(xy) = {T.format(lhs)} but f(x)f(y) = {T.format(rhs)}"
                )
    return None


@dataclass(frozen=True)
class InducedDegree:
    degree: int
    rank: int
    betti_source: int
    betti_target: int
    matrix: RationalMatrix

    @property
    def bijective(self) -> bool:
        return self.rank == self.betti_source == self.betti_target


@dataclass(frozen=True)
class QuasiIsoResult:
    is_quasi_iso: bool
    degrees: tuple[InducedDegree, ...]

    def __bool__(self) -> bool:
        return self.is_quasi_iso


def induced_map(f: CdgaMorphism, p: int, hs: DegreeCohomology, ht: DegreeCohomology) -> RationalMatrix:
    cols = []
    for r in hs.representatives:
        img = f.target.to_vector(p, f.apply(f.source.from_vector(p, r))) if f.target.dim(p) else ()
        coords = class_coordinates(ht, img)
        if coords is None:
            raise CdgaError(f"image of a cocycle is not closed in degree {p}")
        cols.append(coords)
    if not cols:
        return RationalMatrix.zeros(ht.betti, 0)
    return RationalMatrix.from_columns(cols, ht.betti)


def is_quasi_iso(f: CdgaMorphism) -> QuasiIsoResult:
    failure = verify_morphism(f)
    if failure is not None:
        raise CdgaError(f"not a CDGA morphism: {failure}")
    top = max(f.source.top_degree, f.target.top_degree)
    out = []
    for p in range(top + 1):
        hs = degree_cohomology(f.source, p)
        ht = degree_cohomology(f.target, p)
        M = induced_map(f, p, hs, ht)
        r = rank(M) if M.rows and M.cols else 0
        out.append(InducedDegree(p, r, hs.betti, ht.betti, M))
    return QuasiIsoResult(all(d.bijective for d in out), tuple(out))
