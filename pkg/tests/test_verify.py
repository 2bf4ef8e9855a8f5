import pytest

from generators import gen_condensed_wall
from internal.errors import MalformedCertificateError
from models.embedding import Embedding, Linkage, Packing
from models.graph import LabeledGraph
from models.specs import CondensedWallSpec
from services.embedding_service import find_linkage, verify_embedding, verify_linkage, verify_packing
from services.pattern_service import reduce_pattern


def cycle(n):
    vs = [f"x{i}" for i in range(n)]
    return LabeledGraph.build(vs, [(vs[i], vs[(i + 1) % n]) for i in range(n)], name=f"C{n}")


def triangle_pattern():
    return reduce_pattern(cycle(3), "C3")


def identity_embedding(pattern):
    return Embedding(
        pattern_id=pattern.pattern_id,
        branch_map={p: p for p in pattern.branch_vertices},
        path_map={ch.chain_id: (ch.ends[0], *ch.inner, ch.ends[1]) for ch in pattern.chains},
    )


def test_identity_embedding_verifies():
    pattern = triangle_pattern()
    assert verify_embedding(cycle(3), identity_embedding(pattern), pattern)


def test_embedding_rejections():
    pattern = triangle_pattern()
    host = cycle(3)
    good = identity_embedding(pattern)
    not_injective = Embedding(pattern.pattern_id, {**good.branch_map, "x1": "x0"}, good.path_map)
    assert not verify_embedding(host, not_injective, pattern)
    chain = pattern.chains[0]
    reversed_path = Embedding(
        pattern.pattern_id,
        good.branch_map,
        {**good.path_map, chain.chain_id: tuple(reversed(good.path_map[chain.chain_id]))},
    )
    assert not verify_embedding(host, reversed_path, pattern)
    partial = Embedding(pattern.pattern_id, good.branch_map, {chain.chain_id: good.path_map[chain.chain_id]})
    assert not verify_embedding(host, partial, pattern)


def test_subdivided_host_needs_long_enough_paths():
    pattern = triangle_pattern()
    host = cycle(6)
    embedding = Embedding(
        pattern.pattern_id,
        {"x0": "x0", "x1": "x2", "x2": "x4"},
        {},
    )
    paths = {}
    for ch in pattern.chains:
        s, t = embedding.branch_map[ch.ends[0]], embedding.branch_map[ch.ends[1]]
        i, j = int(s[1:]), int(t[1:])
        step = 1 if (j - i) % 6 == 2 else -1
        path = [s]
        while path[-1] != t:
            path.append(f"x{(int(path[-1][1:]) + step) % 6}")
        paths[ch.chain_id] = tuple(path)
    embedding = Embedding(pattern.pattern_id, embedding.branch_map, paths)
    assert verify_embedding(host, embedding, pattern)


def test_unknown_vertex_is_malformed():
    pattern = triangle_pattern()
    good = identity_embedding(pattern)
    bad = Embedding(pattern.pattern_id, {**good.branch_map, "x0": "nowhere"}, good.path_map)
    with pytest.raises(MalformedCertificateError):
        verify_embedding(cycle(3), bad, pattern)


def test_linkage_checks():
    wall = gen_condensed_wall(CondensedWallSpec(2))
    linkage = find_linkage(wall).linkage
    assert verify_linkage(wall, linkage)
    swapped = Linkage(pab=linkage.pcd, pcd=linkage.pab)
    assert not verify_linkage(wall, swapped)
    crossing = Linkage(pab=("a", "u1_1", "z0", "z1", "u1_4", "b"), pcd=("z0", "z1", "z2"))
    assert not verify_linkage(wall, crossing)


def test_packing_must_be_edge_disjoint():
    pattern = triangle_pattern()
    host = cycle(3)
    e = identity_embedding(pattern)
    assert verify_packing(host, Packing(pattern.pattern_id, (e,)), pattern)
    assert not verify_packing(host, Packing(pattern.pattern_id, (e, e)), pattern)
    assert verify_packing(host, Packing(pattern.pattern_id, ()), pattern)
