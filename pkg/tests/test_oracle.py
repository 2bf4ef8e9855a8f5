"""
Cross-check of the embedding search against a brute-force enumerator on
small random hosts.
"""
import itertools
import random

import networkx as nx
import pytest

from models.embedding import SearchStatus
from models.graph import LabeledGraph
from services.embedding_service import find_topological_minor
from services.pattern_service import get_pattern, reduce_pattern


def _graph(name, edges):
    vs = sorted({x for e in edges for x in e})
    return LabeledGraph.build(vs, edges, name=name)


def _k23_pair():
    edges = []
    for side in "xy":
        p0, p1 = f"{side}p0", f"{side}p1"
        for mid in (f"{side}q0", f"{side}q1", f"{side}s"):
            edges += [(p0, mid), (mid, p1)]
    edges.append(("xs", "ys"))
    return _graph("K23pair", edges)


PATTERNS = {
    "C3": _graph("C3", [("p0", "p1"), ("p1", "p2"), ("p0", "p2")]),
    "claw": _graph("claw", [("p0", "p1"), ("p0", "p2"), ("p0", "p3")]),
    "theta": _graph("theta", [("p0", "q0"), ("q0", "p1"), ("p0", "q1"), ("q1", "p1"), ("p0", "p1")]),
    "K4": _graph("K4", [(f"p{i}", f"p{j}") for i in range(4) for j in range(i + 1, 4)]),
    "P3": _graph("P3", [("p0", "p1"), ("p1", "p2")]),
}

# six branch vertices each; K23pair has twin chains and a bridge
LARGE_PATTERNS = {
    "prism": _graph(
        "prism",
        [("t0", "t1"), ("t1", "t2"), ("t2", "t0"), ("u0", "u1"), ("u1", "u2"), ("u2", "u0")]
        + [(f"t{i}", f"u{i}") for i in range(3)],
    ),
    "K33": _graph("K33", [(f"l{i}", f"r{j}") for i in range(3) for j in range(3)]),
    "K23pair": _k23_pair(),
}


def _naive_contains(host: nx.Graph, pattern) -> bool:
    branch = list(pattern.branch_vertices)
    chains = list(pattern.chains)
    need = min((pattern.degree(p) for p in branch), default=0)
    candidates = [v for v in host.nodes if host.degree(v) >= need]
    for images in itertools.permutations(candidates, len(branch)):
        image = dict(zip(branch, images))
        if any(host.degree(image[p]) < pattern.degree(p) for p in branch):
            continue
        if _route(host, chains, image, 0, set(images), set()):
            return True
    return False


def _route(host, chains, image, i, used, used_edges) -> bool:
    if i == len(chains):
        return True
    ch = chains[i]
    s, t = image[ch.ends[0]], image[ch.ends[1]]
    for path in nx.all_simple_paths(host, s, t):
        if len(path) - 1 < ch.min_length:
            continue
        inner = set(path[1:-1])
        edges = {frozenset(e) for e in zip(path, path[1:])}
        if inner & used or edges & used_edges:
            continue
        if _route(host, chains, image, i + 1, used | inner, used_edges | edges):
            return True
    return False


def _labeled(g: nx.Graph, name: str):
    g = nx.relabel_nodes(g, lambda x: f"v{x}")
    return LabeledGraph.build(list(g.nodes), list(g.edges), name=name), g


def _instances(count, seed=7):
    rng = random.Random(seed)
    for k in range(count):
        n = rng.randint(4, 8)
        m = rng.randint(n - 1, min(n * (n - 1) // 2, 2 * n))
        g = nx.gnm_random_graph(n, m, seed=rng.randrange(10**6))
        yield _labeled(g, f"R{k}")


def _subdivided_instances(count, seed=11):
    """Subdivided K33 or prism hosts of 12 to 14 vertices.

    Every third host loses an edge, every third gets a triangle hung on one
    vertex so that it splits into two blocks.
    """
    rng = random.Random(seed)
    for k in range(count):
        g = nx.Graph(rng.choice([nx.complete_bipartite_graph(3, 3), nx.circular_ladder_graph(3)]))
        hung = k % 3 == 2
        for _ in range(rng.randint(6, 8) - (2 if hung else 0)):
            u, v = rng.choice(sorted(g.edges))
            w = g.number_of_nodes()
            g.remove_edge(u, v)
            g.add_edges_from([(u, w), (w, v)])
        if k % 3 == 1:
            g.remove_edge(*rng.choice(sorted(g.edges)))
        elif hung:
            n = g.number_of_nodes()
            g.add_edges_from([(0, n), (n, n + 1), (n + 1, 0)])
        yield _labeled(g, f"S{k}")


def _agree(instances, patterns):
    found = set()
    for host, g in instances:
        for name, pattern in patterns.items():
            result = find_topological_minor(host, pattern)
            assert result.status is not SearchStatus.BUDGET_EXCEEDED
            expected = _naive_contains(g, pattern)
            assert result.found == expected, f"{name} in {host.name}"
            if expected:
                found.add(name)
    return found


def _small_patterns():
    return {name: reduce_pattern(g, name) for name, g in PATTERNS.items()}


def _large_patterns():
    patterns = {name: reduce_pattern(g, name) for name, g in LARGE_PATTERNS.items()}
    patterns["B2"] = get_pattern("B2")
    return patterns


def test_search_agrees_with_brute_force():
    _agree(_instances(20), _small_patterns())


def test_large_patterns_agree_with_brute_force():
    patterns = _large_patterns()
    assert all(len(patterns[name].branch_vertices) == 6 for name in LARGE_PATTERNS)
    hosts = list(_subdivided_instances(6))
    assert all(12 <= len(host.vertices) <= 14 for host, _ in hosts)
    found = _agree(hosts, patterns)
    assert found & {"prism", "K33"}


@pytest.mark.slow
def test_search_agrees_with_brute_force_many_hosts():
    _agree(_instances(200), _small_patterns())
    _agree(_subdivided_instances(60), _large_patterns())
