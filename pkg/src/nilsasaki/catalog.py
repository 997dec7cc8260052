"""Named Lie algebras used for testing and as CLI examples."""

from __future__ import annotations

from .liealg import LieAlgebra, abelian, direct_sum, heisenberg


def _named(L: LieAlgebra, name: str) -> LieAlgebra:
    L.name = name
    return L


def l5() -> LieAlgebra:
    """[e1,e2]=e3, [e1,e3]=e4 on a 5-dimensional space (step 3, b1 = 3)."""
    return LieAlgebra(5, {(0, 1): {2: 1}, (0, 2): {3: 1}}, name="L5")


def filiform(n: int) -> LieAlgebra:
    """Standard filiform algebra: [e1, ei] = e_{i+1} for 2 <= i < n."""
    return LieAlgebra(n, {(0, i): {i + 1: 1} for i in range(1, n - 1)}, name=f"filiform{n}")


def n5_filiform2() -> LieAlgebra:
    """[e1,e2]=e3, [e1,e3]=e4, [e1,e4]=e5, [e2,e3]=e5 (b1 = 2, dim 5)."""
    return LieAlgebra(
        5, {(0, 1): {2: 1}, (0, 2): {3: 1}, (0, 3): {4: 1}, (1, 2): {4: 1}}, name="n5_filiform2"
    )


def two_step_center2() -> LieAlgebra:
    """[e1,e2]=e4, [e1,e3]=e5: 2-step with a 2-dimensional derived algebra."""
    return LieAlgebra(5, {(0, 1): {3: 1}, (0, 2): {4: 1}}, name="n5_2step")


def free_two_step_3() -> LieAlgebra:
    """Free 2-step nilpotent algebra on three generators (dim 6)."""
    return LieAlgebra(6, {(0, 1): {3: 1}, (0, 2): {4: 1}, (1, 2): {5: 1}}, name="n6_free")


def twisted_heisenberg() -> LieAlgebra:
    """h(1,2) in a non-normal basis: [e1,e3]=e5, [e2,e4]=2 e5, [e1,e4]=e5."""
    return LieAlgebra(5, {(0, 2): {4: 1}, (1, 3): {4: 2}, (0, 3): {4: 1}}, name="h12_twisted")


def solvable_r3() -> LieAlgebra:
    """[e1,e2]=e2, [e1,e3]=e3: solvable, not nilpotent."""
    return LieAlgebra(3, {(0, 1): {1: 1}, (0, 2): {2: 1}}, name="r3")


def catalog() -> dict[str, LieAlgebra]:
    """Every named algebra; keys are stable identifiers."""
    entries = [
        _named(abelian(1), "a1"),
        _named(abelian(3), "a3"),
        _named(abelian(5), "a5"),
        _named(abelian(7), "a7"),
        _named(abelian(9), "a9"),
        _named(heisenberg(1), "h11"),
        _named(heisenberg(2), "h12"),
        _named(heisenberg(3), "h13"),
        _named(heisenberg(4), "h14"),
        l5(),
        filiform(4),
        filiform(6),
        filiform(7),
        n5_filiform2(),
        two_step_center2(),
        free_two_step_3(),
        twisted_heisenberg(),
        solvable_r3(),
        direct_sum(heisenberg(1), abelian(1), name="h11_a1"),
        direct_sum(heisenberg(1), abelian(2), name="h11_a2"),
        direct_sum(heisenberg(1), abelian(4), name="h11_a4"),
        direct_sum(heisenberg(2), abelian(2), name="h12_a2"),
        direct_sum(direct_sum(heisenberg(1), heisenberg(1)), abelian(1), name="h11_h11_a1"),
        direct_sum(l5(), abelian(2), name="L5_a2"),
    ]
    return {L.name: L for L in entries}


def nilpotent_catalog(max_dim: int = 9) -> dict[str, LieAlgebra]:
    from .liealg import is_nilpotent

    return {k: L for k, L in catalog().items() if L.dim <= max_dim and is_nilpotent(L)[0]}
