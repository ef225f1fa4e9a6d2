from __future__ import annotations

import pytest

from supertropical import errors
from supertropical.core import SupertropicalMonoid, compression_partition, ideal_closure, quotient_monoid, submonoid
from supertropical.fixtures import fix1, fix2, fix3, fix4
from supertropical.relations import e_nu, merge, quotient
from supertropical.transmissions import (
    Transmission,
    canonical_isomorphism,
    compose,
    compose_tm,
    divide_zero_kernel,
    find_isomorphism,
    identity,
    is_fiber_contraction,
    is_mixing,
    is_tangible,
    is_transmission,
    quotient_map,
    search_transmissions,
    tangible_lift_of_transmission,
    tangible_unfolding,
    tm_factorization,
    tm_factorization_general,
    unfold,
)


def ix(U, *names):
    return [U.names.index(n) for n in names]


def _compress(U, *names):
    E = compression_partition(U, ideal_closure(U, ix(U, *names)))
    V = quotient_monoid(U, E, f"{U.name}/c")
    return Transmission(U, V, E.labels)


def test_validation_examples():
    T = fix2()
    assert is_transmission(T, T, range(T.size))
    pi, Q = quotient(T, merge(T, ix(T, "x1", "x2")))
    assert is_transmission(T, Q, pi.table)
    U = fix1()
    # 1 must go to 1; sending it to e breaks unit preservation
    with pytest.raises(errors.UnitMismatch):
        Transmission(U, U, [0, 1, 1])


def test_flags():
    T = fix2()
    ident = identity(T)
    assert is_tangible(ident) and is_mixing(ident)
    pi, Q = quotient(T, merge(T, ix(T, "x1", "x2")))
    assert is_tangible(pi) and not is_mixing(pi)
    full = _compress(T, "x1", "x2")
    assert not is_tangible(full) and not is_mixing(full)
    single = _compress(T, "x1")
    assert not is_tangible(single) and is_mixing(single)


def test_ghost_map_factorization():
    T = fix2()
    E = e_nu(T)
    nu = quotient_map(T, E, quotient_monoid(T, E, "M"))
    f = tm_factorization(nu)
    assert f.middle.nms(f.middle.tangibles) == ["1", "x1|x2"]
    assert is_tangible(f.tangible_part) and is_mixing(f.mixing_part)
    assert is_fiber_contraction(f.mixing_part)
    assert f.composite() == nu


def test_collapse_ghost_map_factorization_is_unique():
    C = fix4()
    E = e_nu(C)
    nu = quotient_map(C, E, quotient_monoid(C, E, "M"))
    f = tm_factorization(nu)
    assert f.composite() == nu
    # any other factorization through a middle of the same size is the same up to isomorphism
    assert find_isomorphism(f.middle, f.middle) is not None
    assert canonical_isomorphism(f, tm_factorization(nu)) == list(range(f.middle.size))


def test_identity_factorization_is_trivial():
    f = tm_factorization(identity(fix2()))
    assert f.tangible_part.relation().is_diag() and f.middle.same_as(fix2())


def test_factorization_errors():
    T = fix2()
    M, keep = submonoid(T, [0, 1, 2, 3])
    incl = Transmission(M, T, keep)
    with pytest.raises(errors.NotSurjective):
        tm_factorization(incl)
    f = tm_factorization_general(incl)
    assert f.composite() == incl and is_mixing(f.mixing_part)


def test_zero_kernel_division():
    U = fix1()
    V = SupertropicalMonoid([[0]], 0, 0, 0, [0], ["0"], "trivial")
    kill = Transmission(U, V, [0, 0, 0])
    with pytest.raises(errors.NonTrivialZeroKernel):
        tm_factorization(kill)
    pi, rest = divide_zero_kernel(kill)
    assert compose(pi, rest) == kill and len(rest.zero_kernel()) == 1


def test_compose_tm_agrees_on_merge_then_compress():
    T = fix2()
    pi, Q = quotient(T, merge(T, ix(T, "x1", "x2")))
    beta = _compress(Q, "x1|x2")
    f = compose_tm(tm_factorization(pi), tm_factorization(beta))
    assert f.composite() == compose(pi, beta)


def test_composite_of_mixing_maps_can_fail_to_mix():
    # compress x1 to c, then everything to its ghost: both steps are mixing but
    # x1 and x2 meet in the composite with no multiplier separating them
    T = fix2()
    alpha = _compress(T, "x1")
    beta = _compress(alpha.target, "1")
    assert is_mixing(alpha) and is_mixing(beta)
    assert not is_mixing(compose(alpha, beta))
    with pytest.raises(AssertionError):
        compose_tm(tm_factorization(alpha), tm_factorization(beta))


def test_search_and_isomorphism():
    T = fix2()
    maps = list(search_transmissions(T, T))
    assert tuple(range(T.size)) in maps
    swap = tuple(ix(T, "0", "e", "c", "1", "x2", "x1"))
    assert swap in maps
    assert find_isomorphism(T, T) is not None


def test_unfold_examples():
    uf = unfold(fix1())
    assert uf.monoid.same_as(fix1()) or uf.monoid.size == 3
    T = fix2()
    uf = unfold(T, ix(T, "0", "1", "x1", "x2", "c"))
    W = uf.monoid
    assert W.names == ("0", "e", "c", "~c", "1", "x1", "x2")
    x1, tc = ix(W, "x1", "~c")
    assert W.mul[x1][x1] == tc and W.is_tangible(tc)
    assert [T.nm(y) for y in uf.tau.table] == ["0", "e", "c", "c", "1", "x1", "x2"]


def test_unfold_ghost_chain():
    M = SupertropicalMonoid([[0, 0, 0], [0, 1, 2], [0, 2, 2]], 0, 1, 1, [0, 1, 2], ["0", "e", "c"], "M")
    uf = unfold(M, [0, 1, 2])
    assert uf.monoid.names == ("0", "e", "c", "~e", "~c")
    assert uf.tau.table == (0, 1, 2, 1, 2)


def test_unfold_errors():
    T = fix2()
    with pytest.raises(errors.NotASubmonoid):
        unfold(T, ix(T, "0", "x1", "x2", "c"))
    with pytest.raises(errors.MissingTangibles):
        unfold(T, ix(T, "0", "1", "c"))


def test_tangible_lifts_of_maps():
    U = fix1()
    lifted, uf = tangible_lift_of_transmission(identity(U))
    assert lifted.table == (0, 1, 2)
    with pytest.raises(errors.NotUnfolded):
        tangible_lift_of_transmission(identity(fix3()))
    T = fix2()
    ident = identity(T)
    lifted, src, tgt = tangible_unfolding(ident, ix(T, "0", "1", "x1", "x2", "c"), ix(T, "0", "1", "x1", "x2", "c"))
    assert compose(lifted, tgt.tau) == compose(src.tau, ident)
    with pytest.raises(errors.ImageEscapesN):
        tangible_unfolding(ident, ix(T, "0", "e", "c", "1", "x1", "x2"), ix(T, "0", "1", "x1", "x2", "c"))
