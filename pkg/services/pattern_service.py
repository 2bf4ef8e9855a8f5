import logging
from functools import lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

import networkx as nx

from generators import BRICK_WALL_IDS, gen_brick_wall
from graph_ops import to_networkx
from internal.errors import InputError
from internal.utils import sorted_vertices, vertex_key
from models.embedding import Pattern, PatternChain
from models.graph import LabeledGraph
from models.specs import BrickCertificate

logger = logging.getLogger(__name__)


def reduce_pattern(graph: LabeledGraph, pattern_id: Optional[str] = None, keep: Iterable[str] = ()) -> Pattern:
    """Collapse degree-2 vertices of ``graph`` into chains between branch vertices.

    Branch vertices are the vertices of degree other than 2 plus ``keep``. A
    cycle component without such a vertex keeps all of its vertices, and a
    chain that would close on its own start keeps its inner vertices.
    """
    branch: Set[str] = {v for v in graph.vertices if graph.degree(v) != 2} | set(keep)
    unknown = set(keep) - graph.vertices
    if unknown:
        raise InputError(f"cannot keep unknown vertices {sorted_vertices(unknown)}")
    for component in nx.connected_components(to_networkx(graph)):
        if not component & branch:
            branch |= component

    while True:
        chains, looped = _walk_chains(graph, branch)
        if not looped:
            break
        branch |= looped

    ordered = sorted(chains, key=lambda ch: (vertex_key(ch[0]), vertex_key(ch[2]), len(ch[1]), [vertex_key(v) for v in ch[1]]))
    pattern_chains = tuple(
        PatternChain(chain_id=f"e{k}", ends=(start, end), inner=tuple(inner))
        for k, (start, inner, end) in enumerate(ordered)
    )
    return Pattern(
        pattern_id=pattern_id or graph.name,
        graph=graph,
        branch_vertices=tuple(sorted_vertices(branch)),
        chains=pattern_chains,
    )


def _walk_chains(graph: LabeledGraph, branch: Set[str]):
    seen = set()
    chains = []
    looped: Set[str] = set()
    for start in sorted_vertices(branch):
        for first in graph.neighbors(start):
            edge = frozenset((start, first))
            if edge in seen:
                continue
            seen.add(edge)
            inner = []
            prev, cur = start, first
            while cur not in branch:
                inner.append(cur)
                nxt = next(w for w in graph.neighbors(cur) if w != prev)
                seen.add(frozenset((cur, nxt)))
                prev, cur = cur, nxt
            if cur == start:
                looped.update(inner)
                continue
            if vertex_key(cur) < vertex_key(start):
                chains.append((cur, list(reversed(inner)), start))
            else:
                chains.append((start, inner, cur))
    return chains, looped


@lru_cache(maxsize=None)
def _library_pattern(pattern_id: str, path_lengths: Tuple[int, int]) -> Tuple[Pattern, BrickCertificate]:
    graph, cert = gen_brick_wall(pattern_id, path_lengths=path_lengths)
    return reduce_pattern(graph, pattern_id), cert


def get_pattern(pattern_id: str, path_lengths: Tuple[int, int] = (1, 1)) -> Pattern:
    """Reduced elementary brick wall B1..B10 or B1sq."""
    if pattern_id not in BRICK_WALL_IDS:
        raise InputError(f"unknown pattern id: {pattern_id}")
    return _library_pattern(pattern_id, tuple(path_lengths))[0]


def brick_certificate(pattern_id: str) -> BrickCertificate:
    if pattern_id not in BRICK_WALL_IDS:
        raise InputError(f"unknown pattern id: {pattern_id}")
    return _library_pattern(pattern_id, (1, 1))[1]


def brick_parts(pattern_id: str, bricks: int) -> List[FrozenSet[str]]:
    """Vertex sets of the sub-brick-walls with ``bricks`` bricks.

    Two bricks form a part when they share an edge; three bricks form a part
    when they meet in a common vertex.
    """
    cert = brick_certificate(pattern_id)
    cycles = {b: set(c) for b, c in cert.cycles.items()}
    names = list(cert.cycles)
    parts = []
    if bricks == 1:
        parts = [frozenset(cycles[b]) for b in names]
    elif bricks == 2:
        for x, y in combinations(names, 2):
            if len(cycles[x] & cycles[y]) >= 2:
                parts.append(frozenset(cycles[x] | cycles[y]))
    elif bricks == 3:
        for x, y, z in combinations(names, 3):
            if cycles[x] & cycles[y] & cycles[z]:
                parts.append(frozenset(cycles[x] | cycles[y] | cycles[z]))
    else:
        raise InputError(f"brick parts of size {bricks} are not supported")
    return parts


def part_degree3_vertices(pattern: Pattern, part: FrozenSet[str]) -> List[str]:
    """Vertices of degree 3 inside the subgraph induced by a part's cycles."""
    g = pattern.graph
    return sorted_vertices(
        v for v in part if sum(1 for w in g.neighbors(v) if w in part) == 3
    )


def chains_inside(pattern: Pattern, part: FrozenSet[str]) -> List[str]:
    return [ch.chain_id for ch in pattern.chains if ch.elementary_vertices <= part]


def pattern_from_graph(graph: LabeledGraph, pattern_id: Optional[str] = None) -> Pattern:
    return reduce_pattern(graph, pattern_id)


def is_two_connected(pattern: Pattern) -> bool:
    g = pattern.graph
    if len(g.vertices) < 3:
        return False
    return nx.is_biconnected(to_networkx(g))


def resolve_pattern(spec: str, graphs: Optional[Dict[str, LabeledGraph]] = None) -> Pattern:
    """Library id, or a named graph from ``graphs``."""
    if spec in BRICK_WALL_IDS:
        return get_pattern(spec)
    if graphs and spec in graphs:
        return reduce_pattern(graphs[spec], spec)
    raise InputError(f"unknown pattern: {spec}")
