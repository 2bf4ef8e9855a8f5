import pytest

from generators import gen_condensed_wall
from internal.errors import InputError
from internal.linkage_search import two_path_prefilter
from models.embedding import SearchStatus
from models.graph import LabeledGraph, Role
from models.specs import CondensedWallSpec
from services.embedding_service import (
    count_linkages,
    find_linkage,
    find_two_edge_disjoint_linkages,
    verify_linkage,
)


def wall(r, jumps=True):
    return gen_condensed_wall(CondensedWallSpec(r, jump_edges=jumps))


def test_smallest_wall_has_exactly_one_linkage():
    w = wall(1)
    assert count_linkages(w) == 1
    linkage = find_linkage(w).linkage
    assert set(linkage.pcd) == {"z0", "z1"}
    assert set(linkage.pab) == {"a", "u1_1", "u1_2", "b"}


def test_linkage_in_condensed_wall():
    w = wall(2)
    result = find_linkage(w)
    assert result.found
    assert verify_linkage(w, result.linkage)
    assert count_linkages(w) >= 1


def test_no_linkage_without_jump_edges():
    result = find_linkage(wall(1, jumps=False))
    assert result.status is SearchStatus.NONE
    assert result.stats.exhausted


def test_no_two_edge_disjoint_linkages():
    for r in (1, 2):
        result = find_two_edge_disjoint_linkages(wall(r))
        assert result.status is SearchStatus.NONE
        assert result.stats.exhausted


def test_two_linkages_in_a_ladder():
    roles = {"s": Role.terminal_role("a"), "t": Role.terminal_role("b"), "p": Role.terminal_role("c"), "q": Role.terminal_role("d")}
    edges = [("s", "t"), ("s", "x"), ("x", "t"), ("p", "q"), ("p", "y"), ("y", "q")]
    g = LabeledGraph.build(["s", "t", "p", "q", "x", "y"], edges, roles, name="ladder")
    result = find_two_edge_disjoint_linkages(g)
    assert result.found
    first, second = result.linkages
    assert not first.edges() & second.edges()


def test_budget_exceeded_linkage():
    result = find_linkage(wall(2), budget=1)
    assert result.status is SearchStatus.BUDGET_EXCEEDED
    assert result.linkage is None


def test_terminal_errors():
    vs = ["x0", "x1", "x2"]
    plain = LabeledGraph.build(vs, [("x0", "x1"), ("x1", "x2")])
    with pytest.raises(InputError):
        find_linkage(plain)
    with pytest.raises(InputError):
        find_linkage(wall(2), pairs=(("a", "b"), ("a", "d")))


def test_two_path_prefilter():
    w = wall(2)
    assert two_path_prefilter(w, "a", "b", "z0", "z2")
    assert not two_path_prefilter(wall(1, jumps=False), "a", "b", "z0", "z1")
