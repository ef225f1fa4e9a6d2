from __future__ import annotations

import pytest

from supertropical import errors
from supertropical.core import (
    Kind,
    MonoidWithZero,
    OrderedGhostSemiring,
    SupertropicalMonoid,
    colon,
    fiber,
    ghost,
    hat,
    ideal_closure,
    ideal_compression,
    is_semiring,
    is_unfolded,
    kind,
    quotient_set,
    semiring_witness,
    str_construct,
    tangible_nc_products,
    validate_monoid,
)
from supertropical.fixtures import catalog, fix1, fix2, fix3, fix4, fix5


def ix(U, *names):
    return [U.names.index(n) for n in names]


def test_catalog_sizes_and_tangibles():
    sizes = {U.name: (U.size, len(U.tangibles)) for U in catalog()}
    assert sizes == {"minimal": (3, 1), "twin": (6, 3), "plane": (15, 10), "collapse": (6, 3), "swap": (7, 4)}


def test_kind_ghost_fiber():
    U = fix1()
    (one,) = ix(U, "1")
    assert kind(U, one) is Kind.TANGIBLE and U.nm(ghost(U, one)) == "e"
    assert kind(U, U.zero) is Kind.ZERO
    T = fix2()
    assert sorted(T.nms(fiber(T, *ix(T, "c")))) == ["c", "x1", "x2"]
    P = fix3()
    assert sorted(P.nms(fiber(P, *ix(P, "c2")))) == ["c2", "x2", "xy", "y2"]
    with pytest.raises(errors.NotGhost):
        fiber(T, *ix(T, "x1"))


def _twin_spec(order):
    T = fix2()
    return {
        "elements": T.names,
        "rows": [T.nms(r) for r in T.mul],
        "zero": "0", "one": "1", "e": "e", "order": order,
    }


def test_validate_monoid_orders():
    assert validate_monoid(_twin_spec(["0", "e", "c"])).same_as(fix2())
    # c*c = c and e*c = c: both orders 0<e<c and 0<c<e are compatible
    U = validate_monoid(_twin_spec(["0", "c", "e"]))
    assert U.nm(U.add(*ix(U, "e", "c"))) == "e"


def test_incompatible_order_rejected():
    # on a chain e < c < d with c*c = d, swapping c and d breaks monotonicity
    mul = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 3], [0, 3, 3, 3]]
    SupertropicalMonoid(mul, 0, 1, 1, [0, 1, 2, 3], ["0", "e", "c", "d"])
    with pytest.raises(errors.OrderIncompatible):
        SupertropicalMonoid(mul, 0, 1, 1, [0, 1, 3, 2], ["0", "e", "c", "d"])


def test_axiom_errors():
    with pytest.raises(errors.NonCommutative):
        SupertropicalMonoid([[0, 0, 0], [0, 1, 2], [0, 1, 2]], 0, 2, 1, [0, 1])
    with pytest.raises(errors.ENotIdempotent):
        SupertropicalMonoid([[0, 0, 0], [0, 2, 1], [0, 1, 2]], 0, 2, 1, [0, 1])
    with pytest.raises(errors.GhostKillsTangible):
        SupertropicalMonoid([[0, 0, 0, 0], [0, 1, 1, 0], [0, 1, 2, 3], [0, 0, 3, 0]], 0, 2, 1, [0, 1])


def test_str_construct_minimal_and_errors():
    N = MonoidWithZero([[0, 0], [0, 1]], names=["0", "1"])
    M = OrderedGhostSemiring([[0, 0], [0, 1]], 0, 1, [0, 1], ["0", "e"])
    assert str_construct(N, M, [0, 1]).same_as(fix1())
    with pytest.raises(errors.RhoUnitMismatch):
        str_construct(N, M, [0, 0])


def test_str_construct_cannot_glue_the_truncated_plane():
    # the monomials with overflow sent to 0 form a monoid N, but rho(overflow) = 0
    # while the ghost product is c3, so the truncated plane is not STR(N, M, rho)
    P = fix3()
    tang = list(P.tangibles)
    pos = {t: i + 1 for i, t in enumerate(tang)}
    names = ["0"] + P.nms(tang)

    def n_id(x):
        return pos.get(x, 0)

    size = len(tang) + 1
    mul = [[0] * size for _ in range(size)]
    for a in tang:
        for b in tang:
            mul[pos[a]][pos[b]] = n_id(P.mul[a][b])
    N = MonoidWithZero(mul, 0, names.index("1"), names)
    M = OrderedGhostSemiring([[P.rank[P.mul[a][b]] for b in P.ghost_order] for a in P.ghost_order],
                             0, 1, range(5), P.nms(P.ghost_order))
    rho = [0] + [P.rank[P.gh[t]] for t in tang]
    with pytest.raises(errors.RhoNotMultiplicative):
        str_construct(N, M, rho)


def test_str_construct_glues_a_ghost_chain():
    N = MonoidWithZero([[0, 0, 0], [0, 1, 2], [0, 2, 2]], 0, 1, ["0", "1", "t"])
    M = OrderedGhostSemiring([[0, 0, 0], [0, 1, 2], [0, 2, 2]], 0, 1, [0, 1, 2], ["0", "e", "c"])
    S = str_construct(N, M, [0, 1, 2], "glued")
    t, c, e = ix(S, "t", "c", "e")
    assert is_unfolded(S) and S.nms(S.tangibles) == ["1", "t"]
    assert S.mul[t][t] == t and S.mul[e][t] == c


def test_unfolded_and_semiring_flags():
    assert is_unfolded(fix1()) and not is_unfolded(fix2()) and not is_unfolded(fix3())
    assert is_unfolded(fix4())
    assert all(is_semiring(U) for U in (fix1(), fix2(), fix3(), fix5()))


def test_collapse_is_not_a_semiring():
    U = fix4()
    w = semiring_witness(U)
    assert U.nms(w) == ["x1", "e", "x1"]
    z, x, y = ix(U, "x1", "x1", "1")
    assert U.mul[z][U.add(x, y)] != U.add(U.mul[z][x], U.mul[z][y])


def test_tangible_nc_products():
    U = fix4()
    assert U.nms(sorted(tangible_nc_products(U))) == ["x1",]
    assert tangible_nc_products(fix2()) == frozenset()
    assert tangible_nc_products(fix1()) == frozenset()


def test_ideal_compression_examples():
    U = fix4()
    P, V = ideal_compression(U, ideal_closure(U, ix(U, "x1")))
    assert V.nms(V.tangibles) == ["1", "x2"]
    x2 = V.names.index("x2")
    assert V.nm(V.mul[x2][x2]) == "c"
    T = fix2()
    _, G = ideal_compression(T, range(T.size))
    assert G.tangibles == ()
    _, same = ideal_compression(T, T.ghost_order)
    assert same.same_as(T)


def test_hat():
    sigma, H = hat(fix4())
    assert H.nms(H.tangibles) == ["1", "x2"]
    assert is_semiring(H)
    for U in (fix1(), fix2()):
        sigma, H = hat(U)
        assert sigma.relation().is_diag()


def test_quotient_sets():
    T = fix2()
    assert T.nms(sorted(quotient_set(T, *ix(T, "c", "x1")))) == ["e", "c", "x1", "x2"]
    U = fix1()
    assert U.nms(sorted(quotient_set(U, *ix(U, "e", "1")))) == ["e",]
    S = fix5()
    assert S.nms(sorted(quotient_set(S, *ix(S, "x2", "x1")))) == ["u",]
    # 1*x1 = x1 is the only product with x1 outside M
    assert set(colon(T, T.ghost_order, ix(T, "x1")[0])) == set(T.elements()) - set(ix(T, "1"))
