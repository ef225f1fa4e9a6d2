from __future__ import annotations

from hypothesis import given, strategies as st

from supertropical.partition import Partition, UnionFind, is_finer

labels = st.integers(1, 7).flatmap(lambda n: st.lists(st.integers(0, 3), min_size=n, max_size=n))


def test_canonical_labels_follow_first_appearance():
    assert Partition([5, 5, 2, 5]).labels == (0, 0, 1, 0)
    assert Partition([5, 5, 2, 5]) == Partition([1, 1, 0, 1])


def test_constructors():
    assert Partition.diag(3).is_diag()
    assert Partition.full(3).num_classes() == 1
    P = Partition.from_classes(5, [(1, 3), (2, 4)])
    assert P.classes() == ((0,), (1, 3), (2, 4))
    assert Partition.from_pairs(5, [(1, 3), (3, 4)]).class_of(4) == (1, 3, 4)
    assert list(Partition.from_pairs(4, [(0, 2)]).pairs()) == [(0, 2)]


def test_union_find_reports_merges():
    uf = UnionFind(4)
    assert uf.union(0, 1)
    assert not uf.union(1, 0)
    assert uf.labels()[0] == uf.labels()[1] != uf.labels()[2]


@given(labels, labels)
def test_meet_and_join_bound_both(a, b):
    n = min(len(a), len(b))
    P, Q = Partition(a[:n]), Partition(b[:n])
    m, j = P.meet(Q), P.join(Q)
    assert m <= P and m <= Q and P <= j and Q <= j
    assert is_finer(m, j)
    assert P.meet(P) == P and P.join(Partition.diag(n)) == P


@given(labels)
def test_refinement_is_a_partial_order(a):
    P = Partition(a)
    assert P <= P and not P < P
    assert Partition.diag(len(a)) <= P <= Partition.full(len(a))
