from __future__ import annotations

import pytest

from supertropical import errors
from supertropical.core import OrderedGhostSemiring, SupertropicalMonoid
from supertropical.fixtures import fix1, fix2, fix3, fix4
from supertropical.valuations import (
    FiniteSemiring,
    MValuation,
    almost_tangible_lift,
    covered_valuation,
    dominance_classes,
    dominates,
    ghost_value_ranks,
    ghost_value_set,
    hat_relation_of_lift,
    ideals_of_M,
    interval_bijection,
    interval_members,
    make_supervaluation,
    nc_products,
    partial_tangible_lift,
    semiring_of,
    semiring_of_chain,
    support,
    tangible_lift,
    validate_m_supervaluation,
    validate_m_valuation,
)


def chain(k):
    names = ["0", "e"] + [f"c{i}" for i in range(2, k)]
    mul = [[min(i + j - 1, k - 1) if i and j else 0 for j in range(k)] for i in range(k)]
    return OrderedGhostSemiring(mul, 0, 1, range(k), names, "M")


def twin_identity():
    T = fix2()
    return make_supervaluation(semiring_of(T), T, range(T.size))


def test_semiring_validation():
    with pytest.raises(errors.NotSemiring):
        semiring_of(fix4())
    with pytest.raises(errors.SupertropicalError):
        # 0 is not an additive identity
        FiniteSemiring([[0, 1], [0, 1]], [[0, 0], [0, 1]], 0, 1)


def test_identity_valuation_on_a_chain():
    M = chain(3)
    R = semiring_of_chain(M)
    v = MValuation(R, M, (0, 1, 2))
    assert validate_m_valuation(v)
    assert support(v) == {0}
    with pytest.raises(errors.UnitMismatch):
        validate_m_valuation(MValuation(R, M, (0, 0, 2)))


def test_nc_products():
    phi = twin_identity()
    v = covered_valuation(phi)
    assert {v.M.names[a] for a in nc_products(v)} == {"c"}
    U = fix1()
    R = semiring_of(U)
    v = MValuation(R, chain(2), (0, 1, 1))
    assert validate_m_valuation(v) and nc_products(v) == frozenset()


def test_plane_nc_products():
    P = fix3()
    # the plane is not a semiring; use the ghost map of its reflection instead
    from supertropical.core import hat

    sigma, H = hat(P)
    R = semiring_of(H)
    M = chain(4)
    table = [min(H.rank[H.gh[x]], 3) for x in H.elements()]
    v = MValuation(R, M, tuple(table))
    assert validate_m_valuation(v)
    assert sorted(H.nm(r) for r in nc_products(v)) == sorted(["c3", "x3", "x2y", "xy2", "y3"])


def test_all_ghost_lift():
    T = fix2()
    R = semiring_of(T)
    M = SupertropicalMonoid([[0, 0, 0], [0, 1, 2], [0, 2, 2]], 0, 1, 1, [0, 1, 2], ["0", "e", "c"], "M")
    phi = make_supervaluation(R, M, [T.rank[T.gh[x]] for x in T.elements()])
    assert validate_m_supervaluation(phi)
    assert M.nms(sorted(ghost_value_set(phi))) == ["0", "e", "c"]
    lift = tangible_lift(phi)
    assert lift.psi.U.names == ("0", "e", "c", "~e", "~c")
    assert lift.psi.format() == "0 ~e ~c ~e ~c ~c"
    with pytest.raises(errors.NotTangiblySurjective):
        tangible_lift(make_supervaluation(R, T, [T.gh[x] if x != T.one else x for x in T.elements()]))


def test_twin_identity_lifts():
    phi = twin_identity()
    full = tangible_lift(phi)
    assert full.psi.U.names == ("0", "e", "c", "~e", "~c", "1", "x1", "x2")
    almost = almost_tangible_lift(phi)
    assert almost.psi.format() == "0 ~e c 1 x1 x2"
    assert dominates(full.psi, phi) and not dominates(phi, full.psi)
    assert dominates(full.psi, almost.psi) and not dominates(almost.psi, full.psi)
    assert hat_relation_of_lift(phi) is not None


def test_partial_lift_errors():
    phi = twin_identity()
    T = phi.U
    with pytest.raises(errors.NotAnIdeal):
        partial_tangible_lift(phi, [T.names.index("e")])


def test_interval_bijection_twin():
    phi = twin_identity()
    T = phi.U
    pairs = interval_bijection(phi)
    got = sorted((T.nms(sorted(A, key=T.rank.__getitem__)), sorted(ghost_value_ranks(l.psi) | {0})) for A, l in pairs)
    assert got == [(["0"], [0]), (["0", "c"], [0, 2]), (["0", "e", "c"], [0, 1, 2])]
    members = interval_members(phi)
    assert len(dominance_classes(members)) == len(ideals_of_M(T, ghost_value_set(phi) | {T.zero}))
