from __future__ import annotations

import pytest

from supertropical.fixtures import all_fixtures, fix2, fix3
from supertropical.oracle import (
    AmbiguityReport,
    closure_mfce,
    coarsest_ghost_separating_inside,
    enumerate_mfce,
    finest_with,
    mixing_relations,
    partitions,
)
from supertropical.relations import e_nu, format_classes, ghost_separating_refinement, validate_mfce

COUNTS = {"minimal": 2, "twin": 6, "plane": 104, "collapse": 5, "swap": 6, "lone": 3, "spread": 4}


def test_partition_count():
    assert sum(1 for _ in partitions(5)) == 52


@pytest.mark.parametrize("U", all_fixtures(), ids=lambda U: U.name)
def test_mfce_counts(U):
    rels = enumerate_mfce(U, cap=16)
    assert len(rels) == COUNTS[U.name]
    assert all(validate_mfce(U, E) for E in rels)


def test_twin_listing():
    T = fix2()
    got = [format_classes(T, E, True) for E in enumerate_mfce(T)]
    assert got == ["{e 1} {c x1 x2}", "{c x1 x2}", "{c x1}", "{c x2}", "{x1 x2}", ""]


def test_closure_on_plane():
    P = fix3()
    E = closure_mfce(P, [(P.names.index("x2"), P.names.index("xy"))])
    assert format_classes(P, E, True) == "{x2 xy} {x3 x2y xy2}"


def test_extremes():
    T = fix2()
    x1, c = T.names.index("x1"), T.names.index("c")
    assert format_classes(T, finest_with(T, lambda E: E.related(x1, c)), True) == "{c x1}"
    assert finest_with(T, lambda E: False) is None
    amb = finest_with(T, lambda E: E.related(x1, c) or E.related(T.names.index("x2"), c))
    assert isinstance(amb, AmbiguityReport) and len(amb.minimal) == 2


def test_mixing_relations_twin():
    T = fix2()
    got = sorted(format_classes(T, E, True) for E in mixing_relations(T))
    assert got == ["", "{c x1}", "{c x2}"]


@pytest.mark.parametrize("U", all_fixtures(), ids=lambda U: U.name)
def test_refinement_is_the_coarsest_separating_relation_inside(U):
    E = e_nu(U)
    assert coarsest_ghost_separating_inside(U, E, cap=16) == ghost_separating_refinement(U, E)
