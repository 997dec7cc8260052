"""The CDGA H ⊗ Q[y]/(y²), deg y = 1, built from a basic cohomology ring.

Degree p of the model is H^p ⊕ y·H^{p-1}. The y-part is written with y
on the left, which makes the differential sign-free:

    d(a + y·b) = b·ω

(with y on the right the same map reads d(b·y) = (-1)^|b| b·ω).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .cdga import (
    CdgaFinite,
    CdgaMorphism,
    Element,
    ExteriorCdga,
    extend_from_generators,
)
from .cechain import chevalley_eilenberg
from .exactlin import RationalMatrix, solve
from .exterior import ExteriorElement
from .liealg import heisenberg


class TievskyError(ValueError):
    pass


@dataclass(frozen=True)
class BasicRing:
    """Graded-commutative ring with zero differential and a degree-2 class ω."""

    ring: CdgaFinite
    omega: Element
    m: int

    def __post_init__(self):
        if any(self.ring.d_basis(i) for i in range(self.ring.size)):
            raise TievskyError("basic ring must have zero differential")
        if self.m < 0:
            raise TievskyError("m must be non-negative")


def exterior_basic_ring(n_generators: int, omega: ExteriorElement, m: int) -> BasicRing:
    """Exterior ring on n degree-one classes b1..bn with the given ω."""
    ring = ExteriorCdga(n_generators, None, symbol="b")
    if omega.n != n_generators:
        raise TievskyError("ω lives on a different number of generators")
    return BasicRing(ring, ring.from_exterior(omega), m)


def heisenberg_basic_ring(m: int) -> BasicRing:
    """Exterior ring on b1..b2m with ω = -sum_i b_{2i-1} b_{2i}."""
    if m < 1:
        raise TievskyError("heisenberg_basic_ring needs m >= 1")
    n = 2 * m
    omega = ExteriorElement(n, {(2 * i, 2 * i + 1): -1 for i in range(m)})
    return exterior_basic_ring(n, omega, m)


@dataclass(frozen=True)
class TransverseVolumeFailure:
    l: int

    def __str__(self) -> str:
        return f"ω^{self.l} = 0"


def check_transverse_volume(H: BasicRing) -> Optional[TransverseVolumeFailure]:
    """None if ω^l ≠ 0 for 1 <= l <= m, else the least failing l."""
    power = H.ring.unit
    for l in range(1, H.m + 1):
        power = H.ring.multiply(power, H.omega)
        if not power:
            return TransverseVolumeFailure(l)
    return None


@dataclass(frozen=True)
class TievskyModel:
    basic: BasicRing
    cdga: CdgaFinite
    plain: tuple[int, ...]  # ring index -> model index of b
    shifted: tuple[int, ...]  # ring index -> model index of y·b

    @property
    def y(self) -> int:
        return self.shifted[0]

    def embed(self, x: Element) -> Element:
        return {self.plain[i]: c for i, c in x.items()}

    def embed_shifted(self, x: Element) -> Element:
        return {self.shifted[i]: c for i, c in x.items()}


def tievsky_model(H: BasicRing, *, validate: bool = True) -> TievskyModel:
    R = H.ring
    omega_degrees = {R.degree(i) for i in H.omega}
    if omega_degrees and omega_degrees != {2}:
        raise TievskyError("ω must be homogeneous of degree 2")
    top = R.top_degree + 1
    labels = []
    plain = [0] * R.size
    shifted = [0] * R.size
    off = 0
    for p in range(top + 1):
        deg_labels = []
        for i in R.indices(p):
            plain[i] = off + len(deg_labels)
            deg_labels.append(R.label(i))
        for i in R.indices(p - 1):
            shifted[i] = off + len(deg_labels)
            lab = R.label(i)
            deg_labels.append("y" if lab == "1" else f"y*{lab}")
        labels.append(deg_labels)
        off += len(deg_labels)

    def lift(x: Element, table) -> dict[int, Fraction]:
        return {table[k]: c for k, c in x.items()}

    products = {}
    for i in range(R.size):
        sign = -1 if R.degree(i) % 2 else 1
        for j in range(R.size):
            prod = R.product_of_basis(i, j)
            if not prod:
                continue
            products[(plain[i], plain[j])] = lift(prod, plain)
            # a·(y b) = (-1)^|a| y (a b);  (y a)·b = y (a b);  y·y = 0
            products[(plain[i], shifted[j])] = {k: sign * c for k, c in lift(prod, shifted).items()}
            products[(shifted[i], plain[j])] = lift(prod, shifted)
    differential = {}
    for i in range(R.size):
        img = R.multiply({i: Fraction(1)}, H.omega)
        if img:
            differential[shifted[i]] = lift(img, plain)
    T = CdgaFinite(labels, products, differential, validate=validate)
    return TievskyModel(H, T, tuple(plain), tuple(shifted))


def heisenberg_generator_images(m: int, model: TievskyModel, y_coefficient) -> list[Element]:
    """Images a_i -> b_i (i <= 2m) and a_{2m+1} -> y_coefficient * y."""
    R = model.basic.ring
    images = []
    for i in range(2 * m):
        images.append({model.plain[R.index_of[(i,)]]: Fraction(1)})
    c = Fraction(y_coefficient)
    images.append({model.y: c} if c else {})
    return images


def solve_y_coefficient(source: ExteriorCdga, model: TievskyModel, partial: CdgaMorphism) -> Fraction:
    """The scalar a with f(d a_last) = d(a·y) = a·ω.

    ``partial`` must already send the first n-1 generators to their images;
    only its value on d a_last (which involves no a_last) is used.
    """
    last = source.generator_index(source.n - 1)
    image = partial.apply(source.d_basis(last))
    T = model.cdga
    target = T.to_vector(2, image)
    omega = T.to_vector(2, model.embed(model.basic.omega))
    a = solve(RationalMatrix.from_columns([omega], len(omega)), target)
    if a is None or not a[0]:
        raise TievskyError("no nonzero scalar makes the morphism a chain map")
    return a[0]


def heisenberg_morphism_with(m: int, y_coefficient) -> CdgaMorphism:
    """a_i -> b_i for i <= 2m and a_{2m+1} -> y_coefficient * y."""
    source = chevalley_eilenberg(heisenberg(m))
    model = tievsky_model(heisenberg_basic_ring(m))
    return extend_from_generators(source, model.cdga, heisenberg_generator_images(m, model, y_coefficient))


def standard_heisenberg_morphism(m: int) -> CdgaMorphism:
    """The comparison morphism with the y coefficient solved from the chain-map condition."""
    source = chevalley_eilenberg(heisenberg(m))
    model = tievsky_model(heisenberg_basic_ring(m))
    partial = extend_from_generators(source, model.cdga, heisenberg_generator_images(m, model, 0))
    a = solve_y_coefficient(source, model, partial)
    return extend_from_generators(source, model.cdga, heisenberg_generator_images(m, model, a))
