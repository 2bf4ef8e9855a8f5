"""
Exhaustive search for vertex-disjoint path pairs between terminal pairs.
"""
import logging
from collections import deque
from typing import Dict, FrozenSet, Iterator, Optional, Sequence, Set, Tuple

import networkx as nx

from graph_ops import delete_edges, to_networkx
from internal.budget import NodeCounter
from internal.errors import InputError
from internal.utils import vertex_key
from models.embedding import Linkage
from models.graph import LabeledGraph

logger = logging.getLogger(__name__)

DEFAULT_PAIRS = (("a", "b"), ("c", "d"))


def _terminals(host: LabeledGraph, pairs) -> Tuple[str, str, str, str]:
    for pair in pairs:
        for letter in pair:
            if not host.has_terminal(letter):
                raise InputError(f"graph {host.name} has no terminal {letter}")
    (s1, t1), (s2, t2) = pairs
    ids = tuple(host.terminal(x) for x in (s1, t1, s2, t2))
    if len(set(ids)) != 4:
        raise InputError("linkage terminals must be four distinct vertices")
    return ids


def two_path_prefilter(host: LabeledGraph, s1: str, t1: str, s2: str, t2: str) -> bool:
    """Necessary condition: two vertex-disjoint paths from {s1, s2} to {t1, t2}."""
    g = to_networkx(host)
    source, sink = "__source__", "__sink__"
    g.add_edges_from([(source, s1), (source, s2), (t1, sink), (t2, sink)])
    return nx.algorithms.connectivity.local_node_connectivity(g, source, sink) >= 2


class _PathSearch:
    def __init__(self, host: LabeledGraph):
        self.host = host
        self._dist: Dict[str, Dict[str, int]] = {}

    def neighbors(self, v: str):
        return self.host.neighbors(v)

    def distances(self, target: str) -> Dict[str, int]:
        if target not in self._dist:
            dist = {target: 0}
            queue = deque([target])
            while queue:
                x = queue.popleft()
                for w in self.neighbors(x):
                    if w not in dist:
                        dist[w] = dist[x] + 1
                        queue.append(w)
            self._dist[target] = dist
        return self._dist[target]

    def connected(self, s: str, t: str, blocked: Set[str]) -> bool:
        return self.route(s, t, blocked) is not None

    def route(self, s: str, t: str, blocked: Set[str]) -> Optional[Tuple[str, ...]]:
        """Shortest s–t path avoiding ``blocked``, canonical on ties."""
        if s in blocked or t in blocked:
            return None
        parent = {s: None}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            if x == t:
                path = [t]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return tuple(reversed(path))
            for w in sorted(self.neighbors(x), key=vertex_key):
                if w in parent or w in blocked:
                    continue
                parent[w] = x
                queue.append(w)
        return None

    def simple_paths(
        self, s: str, t: str, blocked: Set[str], counter: NodeCounter, keep_connected: Sequence[Tuple[str, str]] = ()
    ) -> Iterator[Tuple[str, ...]]:
        """Every simple s–t path avoiding ``blocked``.

        Branches that separate ``t`` from the path head, or a pair in
        ``keep_connected`` from each other, are cut.
        """
        if s in blocked or t in blocked:
            return
        dist = self.distances(t)
        far = len(self.host.vertices) + 1
        path = [s]
        on_path = {s}

        def alive() -> bool:
            avoid = blocked | on_path
            head = path[-1]
            if not self.connected_from(head, t, avoid):
                return False
            return all(self.connected(x, y, avoid) for x, y in keep_connected)

        def extend() -> Iterator[Tuple[str, ...]]:
            x = path[-1]
            for w in sorted(self.neighbors(x), key=lambda v: (dist.get(v, far), vertex_key(v))):
                if w == t:
                    yield tuple(path) + (t,)
                    continue
                if w in on_path or w in blocked:
                    continue
                counter.tick()
                path.append(w)
                on_path.add(w)
                if alive():
                    yield from extend()
                path.pop()
                on_path.discard(w)

        counter.tick()
        if alive():
            yield from extend()

    def connected_from(self, head: str, t: str, avoid: Set[str]) -> bool:
        seen = {head}
        queue = deque([head])
        while queue:
            x = queue.popleft()
            for w in self.neighbors(x):
                if w == t:
                    return True
                if w in seen or w in avoid:
                    continue
                seen.add(w)
                queue.append(w)
        return False


def iter_linkages(
    host: LabeledGraph,
    pairs=DEFAULT_PAIRS,
    counter: Optional[NodeCounter] = None,
    blocked_edges: FrozenSet = frozenset(),
    all_second_paths: bool = True,
    stats: Optional[dict] = None,
) -> Iterator[Linkage]:
    """Linkages in canonical order: first path by guided DFS, then the second.

    With ``all_second_paths`` every second path is emitted for each first
    path; otherwise only the canonical shortest one.
    """
    counter = counter or NodeCounter()
    s1, t1, s2, t2 = _terminals(host, pairs)
    counter.tick()
    working = delete_edges(host, blocked_edges) if blocked_edges else host
    counter.tick()
    if not two_path_prefilter(working, s1, t1, s2, t2):
        if stats is not None:
            stats["certificate"] = "two-path connectivity bound"
        return
    search = _PathSearch(working)
    for first in search.simple_paths(s1, t1, {s2, t2}, counter, keep_connected=((s2, t2),)):
        taken = set(first)
        if all_second_paths:
            for second in search.simple_paths(s2, t2, taken, counter):
                yield Linkage(pab=first, pcd=second)
        else:
            second = search.route(s2, t2, taken)
            if second is not None:
                yield Linkage(pab=first, pcd=second)


def first_linkage(host: LabeledGraph, pairs=DEFAULT_PAIRS, counter: Optional[NodeCounter] = None) -> Optional[Linkage]:
    for linkage in iter_linkages(host, pairs, counter, all_second_paths=False):
        return linkage
    return None


def first_edge_disjoint_pair(
    host: LabeledGraph, pairs=DEFAULT_PAIRS, counter: Optional[NodeCounter] = None
) -> Optional[Tuple[Linkage, Linkage]]:
    """Two linkages sharing no edge, or None once every first linkage is tried."""
    counter = counter or NodeCounter()
    for first in iter_linkages(host, pairs, counter):
        used = frozenset(first.edges())
        second = None
        for candidate in iter_linkages(host, pairs, counter, blocked_edges=used, all_second_paths=False):
            second = candidate
            break
        if second is not None:
            return first, second
    return None
