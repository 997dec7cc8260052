from fractions import Fraction as F
from math import factorial

import pytest

from nilsasaki.cdga import is_quasi_iso, verify_morphism
from nilsasaki.cechain import chevalley_eilenberg
from nilsasaki.exterior import ExteriorElement
from nilsasaki.liealg import heisenberg
from nilsasaki.tievsky import (
    TievskyError,
    check_transverse_volume,
    exterior_basic_ring,
    heisenberg_basic_ring,
    heisenberg_morphism_with,
    standard_heisenberg_morphism,
    tievsky_model,
)


def omega_from(n, pairs):
    return ExteriorElement(n, {pair: c for pair, c in pairs.items()})


def test_m1_model_betti():
    H = exterior_basic_ring(2, omega_from(2, {(0, 1): 1}), 1)
    T = tievsky_model(H).cdga
    assert T.betti() == [1, 2, 2, 1]
    assert [T.dim(p) for p in range(4)] == [1, 3, 3, 1]


def test_zero_omega_doubles_betti():
    H = exterior_basic_ring(3, ExteriorElement.zero(3), 1)
    T = tievsky_model(H).cdga
    hb = H.ring.betti() + [0]
    assert T.betti() == [hb[p] + (hb[p - 1] if p else 0) for p in range(5)]
    assert all(not T.d_basis(i) for i in range(T.size))


def test_m2_model_is_valid_with_euler_characteristic_zero():
    H = exterior_basic_ring(4, omega_from(4, {(0, 1): 1, (2, 3): 1}), 2)
    T = tievsky_model(H).cdga
    b = T.betti()
    assert sum((-1) ** p * x for p, x in enumerate(b)) == 0


def test_model_dimensions_and_y_squared():
    model = tievsky_model(heisenberg_basic_ring(2))
    T, R = model.cdga, model.basic.ring
    for p in range(T.top_degree + 1):
        below = R.dim(p - 1) if 0 < p <= R.top_degree + 1 else 0
        here = R.dim(p) if p <= R.top_degree else 0
        assert T.dim(p) == here + below
    y = {model.y: F(1)}
    assert T.multiply(y, y) == {}
    assert T.d(y) == model.embed(model.basic.omega)


def test_omega_must_have_degree_two():
    with pytest.raises(TievskyError):
        tievsky_model(exterior_basic_ring(2, ExteriorElement.generator(2, 0), 1))


def test_heisenberg_basic_ring_examples():
    H = heisenberg_basic_ring(1)
    assert H.ring.size == 4
    assert H.ring.to_exterior(H.omega) == omega_from(2, {(0, 1): -1})
    H2 = heisenberg_basic_ring(2)
    assert H2.ring.size == 16
    square = H2.ring.multiply(H2.omega, H2.omega)
    assert H2.ring.to_exterior(square) == omega_from(4, {(0, 1, 2, 3): 2})
    with pytest.raises(TievskyError):
        heisenberg_basic_ring(0)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_transverse_volume_on_heisenberg_rings(m):
    H = heisenberg_basic_ring(m)
    assert check_transverse_volume(H) is None
    power = H.ring.unit
    for _ in range(m):
        power = H.ring.multiply(power, H.omega)
    top = tuple(range(2 * m))
    assert H.ring.to_exterior(power) == ExteriorElement(2 * m, {top: (-1) ** m * factorial(m)})


def test_transverse_volume_failures():
    # ω = b1 b2 declared with m = 2: ω² = 0
    H = exterior_basic_ring(4, omega_from(4, {(0, 1): 1}), 2)
    assert check_transverse_volume(H).l == 2
    H0 = exterior_basic_ring(2, ExteriorElement.zero(2), 1)
    assert check_transverse_volume(H0).l == 1


@pytest.mark.parametrize("m", [1, 2, 3])
def test_standard_morphism(m):
    f = standard_heisenberg_morphism(m)
    assert verify_morphism(f) is None
    result = is_quasi_iso(f)
    assert result.is_quasi_iso
    source_betti = chevalley_eilenberg(heisenberg(m)).betti()
    assert [d.betti_source for d in result.degrees] == source_betti
    assert [d.betti_target for d in result.degrees] == source_betti


def test_standard_morphism_y_coefficient_is_one():
    for m in (1, 2):
        f = standard_heisenberg_morphism(m)
        g = heisenberg_morphism_with(m, 1)
        assert f.images == g.images


def test_top_class_maps_to_omega_y():
    result = is_quasi_iso(standard_heisenberg_morphism(1))
    top = result.degrees[3]
    assert top.betti_source == top.betti_target == 1
    assert top.matrix[0, 0] != 0


def test_m2_betti_vector():
    assert tievsky_model(heisenberg_basic_ring(2)).cdga.betti() == [1, 4, 5, 5, 4, 1]


@pytest.mark.parametrize("coefficient", [-1, 2, 0])
def test_wrong_y_coefficient_breaks_chain_map(coefficient):
    f = heisenberg_morphism_with(1, coefficient)
    failure = verify_morphism(f)
    assert failure.kind == "not-chain-map"
    assert failure.witness_labels == ("a3",)
