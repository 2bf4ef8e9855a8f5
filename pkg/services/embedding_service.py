"""
Embedding, linkage and packing searches plus their certificate checks.

Every search returns a SearchResult whose status distinguishes a witness,
an exhausted search space and a budget overrun.
"""
import logging
from collections import defaultdict
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms import isomorphism

from graph_ops import edge_subgraph
from internal.budget import NodeCounter
from internal.certificates import check_embedding, check_linkage
from internal.errors import BudgetExceededError, InputError
from internal.linkage_search import DEFAULT_PAIRS, first_edge_disjoint_pair, first_linkage, iter_linkages
from internal.minor_search import search_embeddings
from internal.utils import sorted_vertices, vertex_key
from models.embedding import (
    Embedding,
    Linkage,
    Packing,
    Pattern,
    SearchConstraints,
    SearchResult,
    SearchStats,
    SearchStatus,
)
from models.graph import Edge, LabeledGraph, edge_of, path_edges
from services.pattern_service import is_two_connected, reduce_pattern

logger = logging.getLogger(__name__)


def verify_embedding(host: LabeledGraph, embedding: Embedding, pattern: Pattern) -> bool:
    reason = check_embedding(host, embedding, pattern)
    if reason is not None:
        logger.debug(f"{pattern.pattern_id} certificate rejected: {reason}")
    return reason is None


def verify_linkage(host: LabeledGraph, linkage: Linkage, pairs=DEFAULT_PAIRS) -> bool:
    reason = check_linkage(host, linkage, pairs)
    if reason is not None:
        logger.debug(f"linkage certificate rejected: {reason}")
    return reason is None


def verify_packing(host: LabeledGraph, packing: Packing, pattern: Pattern) -> bool:
    seen: set = set()
    for embedding in packing.embeddings:
        if embedding.pattern_id != pattern.pattern_id or not verify_embedding(host, embedding, pattern):
            return False
        edges = embedding.edges()
        if seen & edges:
            logger.debug(f"packing of {pattern.pattern_id} reuses edges {sorted(seen & edges)[:3]}")
            return False
        seen |= edges
    return True


class EmbeddingStream:
    """Iterable over constrained embeddings that records how the stream ended.

    After iteration ``status`` is FOUND when something was emitted, NONE
    when the space was exhausted without a witness and BUDGET_EXCEEDED when
    the counter overran; ``stats.exhausted`` is True only for a complete run.
    """

    def __init__(
        self,
        host: LabeledGraph,
        pattern: Pattern,
        constraints: Optional[SearchConstraints] = None,
        counter: Optional[NodeCounter] = None,
    ):
        self.host = host
        self.pattern = pattern
        self.constraints = constraints or SearchConstraints()
        self.counter = counter or NodeCounter(self.constraints.budget)
        self.stats = SearchStats()
        self.status: Optional[SearchStatus] = None
        self._started_at = self.counter.nodes

    def __iter__(self) -> Iterator[Embedding]:
        cap = self.constraints.max_witnesses
        extra: dict = {}
        try:
            for embedding in search_embeddings(
                self.host,
                self.pattern,
                self.constraints,
                self.counter,
                two_connected=is_two_connected(self.pattern),
                stats=extra,
            ):
                self.stats.witnesses += 1
                if cap is not None and self.stats.witnesses >= cap:
                    self._finish(exhausted=False)
                    yield embedding
                    return
                yield embedding
        except BudgetExceededError as e:
            self.stats.nodes = self.counter.nodes - self._started_at
            self.status = SearchStatus.BUDGET_EXCEEDED
            logger.warning(f"{self.pattern.pattern_id} in {self.host.name}: {e}")
            return
        self.stats.certificate = extra.get("certificate", "exhaustive search")
        self._finish(exhausted=True)

    def _finish(self, exhausted: bool) -> None:
        self.stats.nodes = self.counter.nodes - self._started_at
        self.stats.exhausted = exhausted
        self.status = SearchStatus.FOUND if self.stats.witnesses else SearchStatus.NONE

    @property
    def budget_exceeded(self) -> bool:
        return self.status is SearchStatus.BUDGET_EXCEEDED


def enumerate_embeddings(
    host: LabeledGraph,
    pattern: Pattern,
    constraints: Optional[SearchConstraints] = None,
    counter: Optional[NodeCounter] = None,
) -> EmbeddingStream:
    return EmbeddingStream(host, pattern, constraints, counter)


def find_topological_minor(
    host: LabeledGraph,
    pattern: Pattern,
    constraints: Optional[SearchConstraints] = None,
    counter: Optional[NodeCounter] = None,
) -> SearchResult:
    """First embedding in canonical search order, or an exhaustion certificate.

    The canonical order is the search order itself: host blocks by least
    edge (2-connected patterns only), branch vertices in placement order,
    each tried on host candidates by vertex id, and every chain routed
    nearest-first with ties broken by vertex id. The witness is the least
    one under that order, so it is the same on every run and every thread.
    """
    base = constraints or SearchConstraints()
    capped = SearchConstraints(
        forbidden=base.forbidden,
        pins=base.pins,
        allowed=base.allowed,
        within=base.within,
        parts=base.parts,
        budget=base.budget,
        max_witnesses=1,
    )
    stream = EmbeddingStream(host, pattern, capped, counter)
    witness = next(iter(stream), None)
    logger.info(
        f"{pattern.pattern_id} in {host.name}: {stream.status.value} after {stream.stats.nodes} nodes"
    )
    return SearchResult(status=stream.status, stats=stream.stats, embedding=witness)


def _linkage_result(run, counter: NodeCounter, what: str) -> SearchResult:
    start = counter.nodes
    stats = SearchStats()
    try:
        witness = run()
    except BudgetExceededError as e:
        stats.nodes = counter.nodes - start
        logger.warning(f"{what}: {e}")
        return SearchResult(status=SearchStatus.BUDGET_EXCEEDED, stats=stats)
    stats.nodes = counter.nodes - start
    if witness is None:
        stats.exhausted = True
        stats.certificate = "exhaustive search"
        return SearchResult(status=SearchStatus.NONE, stats=stats)
    stats.witnesses = 1
    if isinstance(witness, Linkage):
        return SearchResult(status=SearchStatus.FOUND, stats=stats, linkage=witness)
    return SearchResult(status=SearchStatus.FOUND, stats=stats, linkages=witness)


def find_linkage(
    host: LabeledGraph,
    pairs=DEFAULT_PAIRS,
    budget: Optional[int] = None,
    counter: Optional[NodeCounter] = None,
) -> SearchResult:
    counter = counter or NodeCounter(budget)
    result = _linkage_result(lambda: first_linkage(host, pairs, counter), counter, f"linkage in {host.name}")
    if result.linkage is not None:
        reason = check_linkage(host, result.linkage, pairs)
        if reason is not None:
            raise AssertionError(f"linkage search produced an invalid linkage: {reason}")
    logger.info(f"linkage in {host.name}: {result.status.value} after {result.stats.nodes} nodes")
    return result


def find_two_edge_disjoint_linkages(
    host: LabeledGraph,
    pairs=DEFAULT_PAIRS,
    budget: Optional[int] = None,
    counter: Optional[NodeCounter] = None,
) -> SearchResult:
    counter = counter or NodeCounter(budget)
    result = _linkage_result(
        lambda: first_edge_disjoint_pair(host, pairs, counter), counter, f"two linkages in {host.name}"
    )
    if result.linkages is not None:
        first, second = result.linkages
        for linkage in (first, second):
            reason = check_linkage(host, linkage, pairs)
            if reason is not None:
                raise AssertionError(f"linkage pair search produced an invalid linkage: {reason}")
        if first.edges() & second.edges():
            raise AssertionError("linkage pair search produced linkages sharing an edge")
    logger.info(f"two linkages in {host.name}: {result.status.value} after {result.stats.nodes} nodes")
    return result


def count_linkages(host: LabeledGraph, pairs=DEFAULT_PAIRS, budget: Optional[int] = None) -> int:
    return sum(1 for _ in iter_linkages(host, pairs, NodeCounter(budget)))


def _packing_key(embedding: Embedding) -> Tuple:
    return tuple(sorted((vertex_key(u), vertex_key(v)) for u, v in embedding.edges()))


def find_edge_disjoint_packing(
    host: LabeledGraph,
    pattern: Pattern,
    k: int,
    constraints: Optional[SearchConstraints] = None,
    counter: Optional[NodeCounter] = None,
) -> SearchResult:
    """``k`` pairwise edge-disjoint embeddings, chosen greedily with backtracking.

    Embeddings are picked in increasing edge-set order so each packing is
    visited once.
    """
    if k < 0:
        raise InputError(f"packing size must be non-negative, got {k}")
    base = constraints or SearchConstraints()
    counter = counter or NodeCounter(base.budget)
    start = counter.nodes
    stats = SearchStats()
    if k == 0:
        stats.exhausted = True
        return SearchResult(status=SearchStatus.FOUND, stats=stats, packing=Packing(pattern.pattern_id, ()))
    all_edges = frozenset(base.within) if base.within is not None else frozenset(host.edges)

    def extend(chosen: List[Embedding], free: FrozenSet[Edge]) -> Optional[List[Embedding]]:
        if len(chosen) == k:
            return chosen
        floor = _packing_key(chosen[-1]) if chosen else None
        scoped = SearchConstraints(
            forbidden=base.forbidden,
            pins=base.pins,
            allowed=base.allowed,
            within=free,
            parts=base.parts,
        )
        for embedding in search_embeddings(host, pattern, scoped, counter, two_connected=is_two_connected(pattern)):
            if floor is not None and _packing_key(embedding) <= floor:
                continue
            found = extend(chosen + [embedding], free - embedding.edges())
            if found is not None:
                return found
        return None

    try:
        chosen = extend([], all_edges)
    except BudgetExceededError as e:
        stats.nodes = counter.nodes - start
        logger.warning(f"packing {k}x{pattern.pattern_id} in {host.name}: {e}")
        return SearchResult(status=SearchStatus.BUDGET_EXCEEDED, stats=stats)
    stats.nodes = counter.nodes - start
    if chosen is None:
        stats.exhausted = True
        stats.certificate = "exhaustive search"
        return SearchResult(status=SearchStatus.NONE, stats=stats)
    packing = Packing(pattern.pattern_id, tuple(chosen))
    if not verify_packing(host, packing, pattern):
        raise AssertionError("packing search produced an invalid packing")
    stats.witnesses = k
    return SearchResult(status=SearchStatus.FOUND, stats=stats, packing=packing)


def _multigraph(branch: Sequence[str], chains: Iterable[Tuple[str, str]]) -> nx.MultiGraph:
    g = nx.MultiGraph()
    g.add_nodes_from(sorted_vertices(branch))
    for u, v in chains:
        g.add_edge(u, v)
    return g


def lift_subdivision(host: LabeledGraph, edges: Iterable[Edge], pattern: Pattern) -> Optional[Embedding]:
    """Embedding of ``pattern`` whose paths use exactly ``edges``, if they form one.

    The reduced forms of the edge set and the pattern are matched as
    multigraphs; parallel chains are then paired shortest with shortest.
    """
    chosen = {edge_of(*e) for e in edges}
    if not chosen:
        return None
    sub = edge_subgraph(host, chosen, name=f"lift:{pattern.pattern_id}")
    witness = reduce_pattern(sub)
    if len(witness.branch_vertices) != len(pattern.branch_vertices) or len(witness.chains) != len(pattern.chains):
        return None
    wg = _multigraph(witness.branch_vertices, (ch.ends for ch in witness.chains))
    pg = _multigraph(pattern.branch_vertices, (ch.ends for ch in pattern.chains))

    witness_between: Dict[FrozenSet[str], List[Tuple[str, ...]]] = defaultdict(list)
    for ch in witness.chains:
        witness_between[frozenset(ch.ends)].append((ch.ends[0], *ch.inner, ch.ends[1]))
    pattern_between = defaultdict(list)
    for ch in pattern.chains:
        pattern_between[frozenset(ch.ends)].append(ch)

    matcher = isomorphism.MultiGraphMatcher(wg, pg)
    for mapping in matcher.isomorphisms_iter():
        image = {p: w for w, p in mapping.items()}
        path_map = {}
        ok = True
        for ends, chains in pattern_between.items():
            p, q = tuple(ends)
            paths = sorted(witness_between[frozenset((image[p], image[q]))], key=lambda path: (len(path), path))
            chains = sorted(chains, key=lambda ch: (ch.min_length, ch.chain_id))
            if len(paths) != len(chains) or any(len(path) - 1 < ch.min_length for path, ch in zip(paths, chains)):
                ok = False
                break
            for path, ch in zip(paths, chains):
                path_map[ch.chain_id] = path if path[0] == image[ch.ends[0]] else tuple(reversed(path))
        if not ok:
            continue
        embedding = Embedding(
            pattern_id=pattern.pattern_id,
            branch_map=dict(sorted(image.items(), key=lambda kv: vertex_key(kv[0]))),
            path_map={ch.chain_id: path_map[ch.chain_id] for ch in pattern.chains},
        )
        if check_embedding(host, embedding, pattern) is None:
            return embedding
    return None


def count_disjoint_exits(edges: Iterable[Edge], part: Iterable[str], inside: Iterable[str]) -> int:
    """Internally disjoint paths from ``part`` to vertices outside ``inside``.

    Only the subgraph spanned by ``edges`` is used.
    """
    part_set, inside_set = set(part), set(inside)
    g = nx.Graph()
    source, sink = "__part__", "__outside__"
    g.add_node(source)
    g.add_node(sink)
    for u, v in sorted(edge_of(*e) for e in edges):
        u2 = source if u in part_set else u
        v2 = source if v in part_set else v
        if u2 != v2:
            g.add_edge(u2, v2)
    outside = [v for v in g.nodes if v not in (source, sink) and v not in inside_set]
    for v in outside:
        g.add_edge(v, sink)
    if not outside:
        return 0
    return nx.algorithms.connectivity.local_node_connectivity(g, source, sink)


def embedding_vertices_of(embedding: Embedding, pattern_vertices: Iterable[str], pattern: Pattern) -> FrozenSet[str]:
    """Host vertices carrying the given pattern vertices, subdivision vertices included."""
    wanted = set(pattern_vertices)
    found = {embedding.branch_map[p] for p in wanted if p in embedding.branch_map}
    for ch in pattern.chains:
        if ch.elementary_vertices <= wanted:
            found.update(embedding.path_map[ch.chain_id])
    return frozenset(found)


def embedding_edges_of(embedding: Embedding, pattern_vertices: Iterable[str], pattern: Pattern) -> FrozenSet[Edge]:
    wanted = set(pattern_vertices)
    return frozenset(
        e
        for ch in pattern.chains
        if ch.elementary_vertices <= wanted
        for e in path_edges(embedding.path_map[ch.chain_id])
    )
