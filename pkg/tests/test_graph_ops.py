import pytest

from graph_ops import (
    bundle_paths,
    delete_edges,
    delete_vertices,
    edge_subgraph,
    fold_midpoint,
    identify_vertices,
    is_path,
    r_fold,
    restricted_shortest_path,
    subdivide_edge,
    to_networkx,
    union_graphs,
)
from internal.errors import InputError, RoleConflictError
from models.graph import LabeledGraph, Role, RoleKind, edge_of


def triangle():
    return LabeledGraph.build(["x", "y", "z"], [("x", "y"), ("y", "z"), ("x", "z")], name="tri")


def test_build_rejects_loops_and_parallel_edges():
    with pytest.raises(InputError):
        LabeledGraph.build(["x"], [("x", "x")])
    with pytest.raises(InputError):
        LabeledGraph.build(["x", "y"], [("x", "y"), ("y", "x")])


def test_subdivide_edge_inserts_labeled_path():
    g = subdivide_edge(triangle(), ("x", "y"), 2)
    assert len(g.vertices) == 5
    assert len(g.edges) == 5
    assert not g.has_edge("x", "y")
    inner = [v for v in g.vertices if g.roles[v].kind is RoleKind.SUBDIVISION_VERTEX]
    assert len(inner) == 2
    assert all(g.degree(v) == 2 for v in inner)


def test_subdivide_zero_is_identity_and_unknown_edge_fails():
    g = triangle()
    assert subdivide_edge(g, ("x", "y"), 0) is g
    with pytest.raises(InputError):
        subdivide_edge(g, ("x", "w"), 1)
    with pytest.raises(InputError):
        subdivide_edge(g, ("x", "y"), -1)


def test_r_fold_counts_and_bundles():
    g = r_fold(triangle(), 2)
    assert len(g.vertices) == 3 + 3 * 2
    assert len(g.edges) == 3 * 2 * 2
    paths = bundle_paths(g, ("x", "y"), 2)
    assert paths == [("x", fold_midpoint("x", "y", 0), "y"), ("x", fold_midpoint("x", "y", 1), "y")]
    assert all(is_path(g, p) for p in paths)
    with pytest.raises(InputError):
        r_fold(triangle(), 0)


def test_identify_collapses_parallel_edges():
    g = LabeledGraph.build(["x", "y", "z"], [("x", "y"), ("y", "z")])
    merged = identify_vertices(g, "x", "z")
    assert merged.vertices == frozenset({"x", "y"})
    assert merged.edges == frozenset({edge_of("x", "y")})


def test_identify_role_conflict():
    roles = {"x": Role.terminal_role("a"), "y": Role.terminal_role("b")}
    g = LabeledGraph.build(["x", "y", "z"], [("x", "z"), ("y", "z")], roles)
    with pytest.raises(RoleConflictError):
        identify_vertices(g, "x", "y")


def test_identify_keeps_the_non_plain_role():
    roles = {"x": Role.terminal_role("a")}
    g = LabeledGraph.build(["x", "y", "z"], [("x", "z"), ("y", "z")], roles)
    merged = identify_vertices(g, "y", "x")
    assert merged.roles["y"] == Role.terminal_role("a")


def test_delete_and_union():
    g = triangle()
    h = delete_edges(g, [("y", "x")])
    assert len(h.edges) == 2
    with pytest.raises(InputError):
        delete_edges(g, [("x", "w")])
    assert delete_vertices(g, ["z"]).edges == frozenset({edge_of("x", "y")})
    other = LabeledGraph.build(["z", "w"], [("z", "w")])
    u = union_graphs(g, other, name="u")
    assert len(u.vertices) == 4
    assert len(u.edges) == 4


def test_edge_subgraph_and_networkx_bridge():
    g = triangle()
    sub = edge_subgraph(g, [("x", "y")])
    assert sub.vertices == frozenset({"x", "y"})
    h = to_networkx(g)
    assert h.number_of_nodes() == 3
    assert h.number_of_edges() == 3


def test_restricted_shortest_path():
    g = LabeledGraph.build(["s", "m", "n", "t"], [("s", "m"), ("m", "t"), ("s", "n"), ("n", "t")])
    assert restricted_shortest_path(g, "s", "t", blocked_vertices=["m"]) == ("s", "n", "t")
    assert restricted_shortest_path(g, "s", "t", blocked_vertices=["m", "n"]) is None
