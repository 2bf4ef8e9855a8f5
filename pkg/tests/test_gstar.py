import pytest

from generators import (
    build_gstar,
    build_gstar_parts,
    check_terminal_orientation,
    exterior_part,
    gen_elementary_wall,
    min_bricks_touched,
    pick_terminal_edges,
    terminal_edges_ok,
)
from graph_ops import delete_edges, fold_midpoint
from internal.errors import InputError
from models.graph import edge_of
from models.specs import GStarSpec
from services.embedding_service import verify_embedding, verify_linkage
from services.lemma_service import gstar_expansion, gstar_wall_pattern


@pytest.fixture(scope="module")
def parts():
    return build_gstar_parts(GStarSpec(multiplicity=2))


def test_gstar_spec_validation():
    with pytest.raises(InputError):
        GStarSpec(rows=5)
    with pytest.raises(InputError):
        GStarSpec(multiplicity=0)


def test_terminal_edges_pass_seven_brick_condition():
    wall, cert = gen_elementary_wall(6, 4)
    e1, e2 = pick_terminal_edges(wall, cert)
    assert terminal_edges_ok(wall, cert, e1, e2)
    assert min_bricks_touched(wall, cert, e1, e2) == 7
    with pytest.raises(InputError):
        min_bricks_touched(wall, cert, ("v1_1", "v7_10"), e2)


def test_gstar_sizes(parts):
    g = parts.graph
    wall = parts.wall
    r = parts.multiplicity
    assert len(g.vertices) == 13 + len(wall.vertices) - 4 + r * (len(wall.edges) - 2)
    assert len(g.edges) == 20 + 2 * r * (len(wall.edges) - 2)
    assert g.name == "Gstar2"
    assert build_gstar(GStarSpec(multiplicity=2)).edges == g.edges


def test_gstar_terminals(parts):
    g = parts.graph
    assert {parts.gstar_id(v) for v in parts.e1} == {"a", "b"}
    assert {parts.gstar_id(v) for v in parts.e2} == {"z0", "z2"}
    assert check_terminal_orientation(g)
    x = exterior_part(g)
    assert all(x.has_terminal(t) for t in "abcd")


def test_condensed_part_is_the_wall(parts):
    assert parts.condensed_part.edges == parts.condensed.edges


def test_gstar_expansion_verifies(parts):
    embedding, linkage = gstar_expansion(parts)
    pattern = gstar_wall_pattern(parts)
    assert verify_embedding(parts.graph, embedding, pattern)
    assert embedding.edges() & parts.condensed_part.edges == linkage.edges()
    assert verify_linkage(parts.condensed_part, linkage)


def test_gstar_expansion_survives_one_deletion(parts):
    u, v = sorted(e for e in parts.wall.edges if e not in (edge_of(*parts.e1), edge_of(*parts.e2)))[0]
    hit = edge_of(parts.gstar_id(u), fold_midpoint(u, v, 0))
    embedding, _ = gstar_expansion(parts, deleted=[hit])
    assert hit not in embedding.edges()
    assert verify_embedding(delete_edges(parts.graph, [hit]), embedding, gstar_wall_pattern(parts))
