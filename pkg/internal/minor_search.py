"""
Branch-and-bound search for subdivisions of a reduced pattern in a host.

Branch vertices are placed one at a time; as soon as both ends of a chain
are placed the chain is routed by depth-first search over simple host paths.
Everything is visited in canonical vertex order so results do not depend on
set iteration order.
"""
import logging
from collections import deque
from typing import Dict, FrozenSet, Iterator, List, Optional, Set, Tuple

import networkx as nx

from internal.budget import NodeCounter
from internal.certificates import check_embedding
from internal.errors import InputError
from internal.utils import sorted_vertices, vertex_key
from models.embedding import Embedding, Pattern, PatternChain, SearchConstraints
from models.graph import Edge, LabeledGraph, edge_of

logger = logging.getLogger(__name__)


def validate_constraints(host: LabeledGraph, pattern: Pattern, constraints: SearchConstraints) -> None:
    branch = set(pattern.branch_vertices)
    for p, h in constraints.pins.items():
        if p not in branch:
            raise InputError(f"pin on {p}, which is not a branch vertex of {pattern.pattern_id}")
        if h not in host.vertices:
            raise InputError(f"pin {p}->{h} targets an unknown host vertex")
        if h in constraints.forbidden:
            raise InputError(f"pin {p}->{h} targets a forbidden vertex")
        if p in constraints.allowed and h not in constraints.allowed[p]:
            raise InputError(f"pin {p}->{h} contradicts the allowed set of {p}")
    images = list(constraints.pins.values())
    if len(set(images)) != len(images):
        raise InputError("two pins target the same host vertex")
    for p in constraints.allowed:
        if p not in branch:
            raise InputError(f"allowed set given for {p}, which is not a branch vertex")
    unknown = set(constraints.forbidden) - host.vertices
    if unknown:
        raise InputError(f"forbidden vertices not in host: {sorted_vertices(unknown)}")
    if constraints.within is not None:
        stray = set(constraints.within) - host.edges
        if stray:
            raise InputError(f"containment edges not in host: {sorted(stray)[:5]}")
    for part in constraints.parts:
        stray = set(part.vertices) - pattern.graph.vertices
        if stray:
            raise InputError(f"part names vertices outside the pattern: {sorted_vertices(stray)}")


class MinorSearch:
    """One constrained search; single use."""

    def __init__(
        self,
        host: LabeledGraph,
        pattern: Pattern,
        constraints: SearchConstraints,
        counter: NodeCounter,
    ):
        self.host = host
        self.pattern = pattern
        self.constraints = constraints
        self.counter = counter
        forbidden = constraints.forbidden
        within = constraints.within
        self.vertices: List[str] = [v for v in sorted_vertices(host.vertices) if v not in forbidden]
        self.adj: Dict[str, Tuple[str, ...]] = {
            v: tuple(
                w
                for w in host.neighbors(v)
                if w not in forbidden and (within is None or edge_of(v, w) in within)
            )
            for v in self.vertices
        }
        self.edge_count = sum(len(ns) for ns in self.adj.values()) // 2
        self.pdeg = {p: pattern.degree(p) for p in pattern.branch_vertices}

        self.vertex_avoid: Dict[str, FrozenSet[str]] = {}
        self.chain_avoid: Dict[str, FrozenSet[str]] = {}
        for part in constraints.parts:
            for p in pattern.branch_vertices:
                if p in part.vertices:
                    self.vertex_avoid[p] = self.vertex_avoid.get(p, frozenset()) | part.avoid
            for ch in pattern.chains:
                if ch.elementary_vertices <= part.vertices:
                    self.chain_avoid[ch.chain_id] = self.chain_avoid.get(ch.chain_id, frozenset()) | part.avoid

        self.order = self._placement_order()
        position = {p: i for i, p in enumerate(self.order)}
        self.steps: List[List[PatternChain]] = [[] for _ in self.order]
        for ch in pattern.chains:
            step = max(position[ch.ends[0]], position[ch.ends[1]])
            self.steps[step].append(ch)
        for chains in self.steps:
            chains.sort(key=lambda ch: int(ch.chain_id[1:]) if ch.chain_id[1:].isdigit() else ch.chain_id)
        self.twin_of = self._twins()

        self.image: Dict[str, str] = {}
        self.image_owner: Dict[str, str] = {}
        self.used: Set[str] = set()
        self.used_edges: Set[Edge] = set()
        self.paths: Dict[str, Tuple[str, ...]] = {}
        self.unrouted = dict(self.pdeg)
        self.unrouted_inner = sum(len(ch.inner) for ch in pattern.chains)
        self._nx = None
        self._dist: Dict[str, Dict[str, int]] = {}

    def _placement_order(self) -> List[str]:
        remaining = set(self.pattern.branch_vertices)
        order: List[str] = []
        links: Dict[str, int] = {p: 0 for p in remaining}
        while remaining:
            best = min(
                remaining,
                key=lambda p: (-links[p], p not in self.constraints.pins, -self.pdeg[p], vertex_key(p)),
            )
            order.append(best)
            remaining.discard(best)
            for ch in self.pattern.chains_at(best):
                for end in ch.ends:
                    if end in remaining:
                        links[end] += 1
        return order

    def _twins(self) -> Dict[str, str]:
        groups: Dict[Tuple, List[PatternChain]] = {}
        for ch in self.pattern.chains:
            groups.setdefault((ch.ends, ch.min_length), []).append(ch)
        twin_of = {}
        for chains in groups.values():
            for prev, cur in zip(chains, chains[1:]):
                twin_of[cur.chain_id] = prev.chain_id
        return twin_of

    # -- prefilters ---------------------------------------------------------

    def prefilter(self) -> Optional[str]:
        """Reason the search space is empty, or None."""
        p = self.pattern
        if p.min_vertices > len(self.vertices):
            return "vertex-count bound"
        if p.min_edges > self.edge_count:
            return "edge-count bound"
        host_degrees = sorted((len(self.adj[v]) for v in self.vertices), reverse=True)
        pattern_degrees = sorted(self.pdeg.values(), reverse=True)
        if any(pd > hd for pd, hd in zip(pattern_degrees, host_degrees)):
            return "degree-sequence bound"
        for part in self.constraints.parts:
            reason = self._part_block_bound(part)
            if reason:
                return reason
        return None

    def _part_block_bound(self, part) -> Optional[str]:
        sub = self.pattern.graph
        part_graph = nx.Graph()
        part_graph.add_nodes_from(part.vertices)
        part_graph.add_edges_from(e for e in sub.edges if e[0] in part.vertices and e[1] in part.vertices)
        if len(part.vertices) < 3 or not nx.is_biconnected(part_graph):
            return None
        h = nx.Graph()
        keep = [v for v in self.vertices if v not in part.avoid]
        h.add_nodes_from(keep)
        h.add_edges_from((v, w) for v in keep for w in self.adj[v] if w not in part.avoid)
        largest = max((len(b) for b in nx.biconnected_components(h)), default=0)
        if largest < len(part.vertices):
            return "block-size bound on constrained part"
        return None

    # -- state --------------------------------------------------------------

    def _free_degree(self, h: str) -> int:
        count = 0
        for w in self.adj[h]:
            if edge_of(h, w) in self.used_edges:
                continue
            if w in self.used and w not in self.image_owner:
                continue
            count += 1
        return count

    def _feasible(self) -> bool:
        for p, left in self.unrouted.items():
            if left and p in self.image and self._free_degree(self.image[p]) < left:
                return False
        unplaced = [p for p in self.order if p not in self.image]
        free = [v for v in self.vertices if v not in self.used]
        if len(unplaced) + self.unrouted_inner > len(free):
            return False
        if unplaced:
            need = sorted((self.pdeg[p] for p in unplaced), reverse=True)
            have = sorted((self._free_degree(v) for v in free), reverse=True)
            if any(n > h for n, h in zip(need, have)):
                return False
        return True

    def _place(self, p: str, h: str) -> None:
        self.image[p] = h
        self.image_owner[h] = p
        self.used.add(h)

    def _unplace(self, p: str, h: str) -> None:
        del self.image[p]
        del self.image_owner[h]
        self.used.discard(h)

    def _mark(self, ch: PatternChain, path: Tuple[str, ...]) -> None:
        self.paths[ch.chain_id] = path
        self.used.update(path[1:-1])
        self.used_edges.update(edge_of(path[i], path[i + 1]) for i in range(len(path) - 1))
        for end in ch.ends:
            self.unrouted[end] -= 1
        self.unrouted_inner -= len(ch.inner)

    def _unmark(self, ch: PatternChain, path: Tuple[str, ...]) -> None:
        del self.paths[ch.chain_id]
        self.used.difference_update(path[1:-1])
        self.used_edges.difference_update(edge_of(path[i], path[i + 1]) for i in range(len(path) - 1))
        for end in ch.ends:
            self.unrouted[end] += 1
        self.unrouted_inner += len(ch.inner)

    # -- candidates and routing --------------------------------------------

    def _candidates(self, p: str) -> List[str]:
        if p in self.constraints.pins:
            pool = [self.constraints.pins[p]]
        elif p in self.constraints.allowed:
            pool = sorted_vertices(self.constraints.allowed[p])
        else:
            pool = self.vertices
        avoid = self.vertex_avoid.get(p, frozenset())
        need = self.pdeg[p]
        return [
            h
            for h in pool
            if h in self.adj and h not in self.used and h not in avoid and len(self.adj[h]) >= need
        ]

    def _distances(self, target: str) -> Dict[str, int]:
        if target not in self._dist:
            if self._nx is None:
                g = nx.Graph()
                g.add_nodes_from(self.vertices)
                g.add_edges_from((v, w) for v in self.vertices for w in self.adj[v])
                self._nx = g
            self._dist[target] = nx.single_source_shortest_path_length(self._nx, target)
        return self._dist[target]

    def _reachable(self, source: str, target: str, blocked: Set[str], avoid: FrozenSet[str]) -> bool:
        queue = deque([source])
        seen = {source}
        while queue:
            x = queue.popleft()
            for w in self.adj[x]:
                if w in seen or edge_of(x, w) in self.used_edges:
                    continue
                if w == target:
                    return True
                if w in self.used or w in blocked or w in avoid:
                    continue
                seen.add(w)
                queue.append(w)
        return False

    def _routes(self, source: str, target: str, min_length: int, avoid: FrozenSet[str]) -> Iterator[Tuple[str, ...]]:
        dist = self._distances(target)
        far = len(self.vertices) + 1
        path = [source]
        on_path = {source}

        def extend() -> Iterator[Tuple[str, ...]]:
            x = path[-1]
            ordered = sorted(self.adj[x], key=lambda w: (dist.get(w, far), vertex_key(w)))
            for w in ordered:
                if edge_of(x, w) in self.used_edges:
                    continue
                if w == target:
                    if len(path) >= min_length:
                        yield tuple(path) + (target,)
                    continue
                if w in self.used or w in on_path or w in avoid:
                    continue
                self.counter.tick()
                path.append(w)
                on_path.add(w)
                if self._reachable(w, target, on_path, avoid):
                    yield from extend()
                path.pop()
                on_path.discard(w)

        if source in avoid or target in avoid:
            return
        yield from extend()

    # -- driver -------------------------------------------------------------

    def run(self) -> Iterator[Embedding]:
        yield from self._assign(0)

    def _assign(self, i: int) -> Iterator[Embedding]:
        if i == len(self.order):
            yield self._emit()
            return
        p = self.order[i]
        for h in self._candidates(p):
            self.counter.tick()
            self._place(p, h)
            if self._feasible():
                yield from self._route(i, 0)
            self._unplace(p, h)

    def _route(self, i: int, k: int) -> Iterator[Embedding]:
        chains = self.steps[i]
        if k == len(chains):
            yield from self._assign(i + 1)
            return
        ch = chains[k]
        source, target = self.image[ch.ends[0]], self.image[ch.ends[1]]
        twin = self.twin_of.get(ch.chain_id)
        floor = tuple(vertex_key(v) for v in self.paths[twin]) if twin else None
        avoid = self.chain_avoid.get(ch.chain_id, frozenset())
        for path in self._routes(source, target, ch.min_length, avoid):
            if floor is not None and tuple(vertex_key(v) for v in path) <= floor:
                continue
            self._mark(ch, path)
            if self._feasible():
                yield from self._route(i, k + 1)
            self._unmark(ch, path)

    def _emit(self) -> Embedding:
        embedding = Embedding(
            pattern_id=self.pattern.pattern_id,
            branch_map=dict(sorted(self.image.items(), key=lambda kv: vertex_key(kv[0]))),
            path_map={ch.chain_id: self.paths[ch.chain_id] for ch in self.pattern.chains},
        )
        reason = check_embedding(self.host, embedding, self.pattern)
        if reason is not None:
            raise AssertionError(f"search produced an invalid embedding: {reason}")
        used = embedding.vertices()
        if used & self.constraints.forbidden:
            raise AssertionError("search produced an embedding on a forbidden vertex")
        for p, h in self.constraints.pins.items():
            if embedding.branch_map[p] != h:
                raise AssertionError(f"search ignored pin {p}->{h}")
        return embedding


def _effective_blocks(host: LabeledGraph, constraints: SearchConstraints) -> List[FrozenSet[Edge]]:
    h = nx.Graph()
    for u, v in host.edges:
        if u in constraints.forbidden or v in constraints.forbidden:
            continue
        if constraints.within is not None and (u, v) not in constraints.within:
            continue
        h.add_edge(u, v)
    blocks = [frozenset(edge_of(u, v) for u, v in comp) for comp in nx.biconnected_component_edges(h)]
    return sorted(blocks, key=lambda b: min((vertex_key(e[0]), vertex_key(e[1])) for e in b))


def search_embeddings(
    host: LabeledGraph,
    pattern: Pattern,
    constraints: SearchConstraints,
    counter: NodeCounter,
    two_connected: bool = False,
    stats: Optional[dict] = None,
) -> Iterator[Embedding]:
    """All constrained embeddings, block by block for 2-connected patterns."""
    validate_constraints(host, pattern, constraints)
    counter.tick()
    root = MinorSearch(host, pattern, constraints, counter)
    counter.tick()
    reason = root.prefilter()
    if reason is not None:
        logger.debug(f"{pattern.pattern_id} in {host.name}: empty by {reason}")
        if stats is not None:
            stats["certificate"] = reason
        return
    if not two_connected:
        yield from root.run()
        return
    blocks = _effective_blocks(host, constraints)
    if len(blocks) <= 1:
        yield from root.run()
        return
    pins = set(constraints.pins.values())
    for block in blocks:
        block_vertices = {x for e in block for x in e}
        if len(block_vertices) < pattern.min_vertices or len(block) < pattern.min_edges:
            continue
        if not pins <= block_vertices:
            continue
        scoped = SearchConstraints(
            forbidden=constraints.forbidden,
            pins=constraints.pins,
            allowed=constraints.allowed,
            within=block,
            parts=constraints.parts,
            budget=constraints.budget,
            max_witnesses=constraints.max_witnesses,
        )
        search = MinorSearch(host, pattern, scoped, counter)
        if search.prefilter() is None:
            yield from search.run()
