import pytest

from generators import (
    attach_gadget,
    body,
    bottleneck,
    brick_gadget,
    cd_path_gadget,
    double_brick_gadget,
    gen_brick_wall,
    gen_condensed_wall,
    gen_elementary_grid,
    gen_elementary_wall,
    gen_wall,
    layer_vertices,
    outer_bricks,
    row_vertex,
    wall_interior,
)
from internal.errors import InputError
from models.graph import EdgeClass, LabeledGraph, RoleKind, edge_of
from models.specs import CondensedWallSpec, WallSpec


def enumerate_condensed_wall(r, jump_edges=True):
    """Item-by-item vertex and edge lists, written independently of the generator."""
    vertices = {"a", "b"} | {f"z{i}" for i in range(r + 1)}
    edges = set()
    for j in range(1, r + 1):
        row = [f"u{j}_{k}" for k in range(1, 2 * r + 1)]
        vertices.update(row)
        for left, right in zip(row, row[1:]):
            edges.add(edge_of(left, right))
        for k, v in enumerate(row, start=1):
            above = f"z{j - 1}" if k % 2 == 1 else f"z{j}"
            edges.add(edge_of(above, v))
        edges.add(edge_of("a", row[0]))
        edges.add(edge_of("b", row[-1]))
    if jump_edges:
        for i in range(1, r + 1):
            edges.add(edge_of(f"z{i - 1}", f"z{i}"))
    return vertices, edges


@pytest.mark.parametrize("r", range(1, 9))
def test_condensed_wall_counts(r):
    wall = gen_condensed_wall(CondensedWallSpec(r))
    assert len(wall.vertices) == 2 * r * r + r + 3
    assert len(wall.edges) == 4 * r * r + 2 * r
    vertices, edges = enumerate_condensed_wall(r)
    assert wall.vertices == vertices
    assert wall.edges == edges


def test_condensed_wall_known_sizes():
    assert (len(gen_condensed_wall(CondensedWallSpec(1)).vertices), len(gen_condensed_wall(CondensedWallSpec(1)).edges)) == (6, 6)
    w2 = gen_condensed_wall(CondensedWallSpec(2))
    assert (len(w2.vertices), len(w2.edges)) == (13, 20)
    w5 = gen_condensed_wall(CondensedWallSpec(5))
    assert (len(w5.vertices), len(w5.edges)) == (58, 110)


def test_modified_wall_drops_jump_edges():
    wall = gen_condensed_wall(CondensedWallSpec(3, jump_edges=False))
    vertices, edges = enumerate_condensed_wall(3, jump_edges=False)
    assert wall.edges == edges
    assert not any(c is EdgeClass.JUMP_EDGE for c in wall.edge_classes.values())
    assert wall.name == "Wminus3"


def test_condensed_wall_roles():
    wall = gen_condensed_wall(CondensedWallSpec(3))
    assert wall.terminal("a") == "a"
    assert wall.terminal("c") == bottleneck(0)
    assert wall.terminal("d") == bottleneck(3)
    assert wall.roles[row_vertex(2, 5)].kind is RoleKind.ROW_VERTEX
    assert wall.edge_class(bottleneck(0), bottleneck(1)) is EdgeClass.JUMP_EDGE
    assert wall.edge_class("a", row_vertex(1, 1)) is EdgeClass.TERMINAL_ATTACHMENT
    assert sorted(wall.bottlenecks()) == [0, 1, 2, 3]


def test_condensed_wall_rejects_size_zero():
    with pytest.raises(InputError):
        CondensedWallSpec(0)


def test_layer_vertices_and_interior():
    wall = gen_condensed_wall(CondensedWallSpec(2))
    assert layer_vertices(wall, 1) == frozenset({"u1_1", "u1_2", "u1_3", "u1_4", "z0", "z1"})
    interior = wall_interior(wall)
    assert "a" not in interior and "z0" not in interior and "z2" not in interior
    assert "z1" in interior
    assert len(interior) == 2 * 4 + 1


def test_grid_counts():
    g = gen_elementary_grid(3, 4)
    assert len(g.vertices) == 12
    assert len(g.edges) == 3 * 3 + 2 * 4
    with pytest.raises(InputError):
        gen_elementary_grid(0, 2)


def test_elementary_wall_six_by_four():
    wall, cert = gen_elementary_wall(6, 4)
    assert len(cert.bricks()) == 24
    assert len(outer_bricks(cert)) == 16
    assert wall.max_degree() <= 3
    for cycle in cert.cycles.values():
        assert len(cycle) == 6
        for i in range(6):
            assert wall.has_edge(cycle[i], cycle[(i + 1) % 6])


def test_body_keeps_bricks_with_three_neighbours():
    wall, cert = gen_elementary_wall(6, 4)
    graph, kept = body(wall, cert)
    assert kept.bricks()
    assert all(len(cert.neighbours(b)) >= 3 for b in kept.bricks())
    assert graph.edges <= wall.edges
    with pytest.raises(InputError):
        body(wall, None)


def test_wall_plan_subdivides_bricks():
    wall, cert = gen_elementary_wall(2, 2)
    cycle = cert.cycles["r1c1"]
    e = edge_of(cycle[0], cycle[1])
    sub, sub_cert = gen_wall(WallSpec(2, 2, plan={e: 2}))
    assert len(sub.vertices) == len(wall.vertices) + 2
    assert len(sub_cert.cycles["r1c1"]) == 8
    with pytest.raises(InputError):
        WallSpec(2, 2, plan={e: -1})


@pytest.mark.parametrize(
    "wall_id, n_vertices, n_edges",
    [("B1", 6, 6), ("B2", 10, 11), ("B3", 13, 15), ("B1sq", 12, 14)],
)
def test_brick_wall_sizes(wall_id, n_vertices, n_edges):
    graph, _ = gen_brick_wall(wall_id)
    assert len(graph.vertices) == n_vertices
    assert len(graph.edges) == n_edges


def test_brick_wall_b7_is_a_flower():
    graph, cert = gen_brick_wall("B7")
    assert len(cert.bricks()) == 7
    assert sum(1 for b in cert.bricks() if len(cert.neighbours(b)) == 6) == 1
    assert len(graph.vertices) == 24
    assert len(graph.edges) == 30


def test_brick_wall_unknown_id():
    with pytest.raises(InputError):
        gen_brick_wall("B11")


def test_cd_path_gadget():
    wall = gen_condensed_wall(CondensedWallSpec(3))
    gadget = cd_path_gadget(wall, 2)
    assert len(gadget.copy_edges) == 2
    assert all(len(edges) == 3 for edges in gadget.copy_edges)
    assert not gadget.copy_edges[0] & gadget.copy_edges[1]
    host = attach_gadget(wall, gadget)
    assert len(host.vertices) == len(wall.vertices) + 4
    assert len(host.edges) == len(wall.edges) + 6


def test_folded_gadgets_have_disjoint_copies():
    wall = gen_condensed_wall(CondensedWallSpec(3))
    for make in (brick_gadget, double_brick_gadget):
        gadget = make(wall, 3)
        assert len(gadget.copy_edges) == 3
        for i in range(3):
            for j in range(i + 1, 3):
                assert not gadget.copy_edges[i] & gadget.copy_edges[j]
        assert attach_gadget(wall, gadget).edges >= wall.edges


def test_attach_gadget_rejects_shared_interior():
    wall = gen_condensed_wall(CondensedWallSpec(2))
    gadget = cd_path_gadget(wall, 1)
    clash = LabeledGraph.build(["u1_1", "x"], [("u1_1", "x")])
    with pytest.raises(InputError):
        attach_gadget(wall, type(gadget)("bad", clash, (frozenset(clash.edges),)))
