"""
Named lemma checks over condensed walls and their gadgets.

Each check combines constructive templates with exhaustive refutations and
reports a verdict together with the witness or the exhaustion statistics
that back it. Checks are registered in a ``LemmaSuite`` by their LemmaId.
"""
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import chain
from typing import Any, Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from config_loader import default_config, get_search_config, get_suite_config, get_trial_config
from figures import TemplatePacker, build_packing_host
from generators import (
    GStarParts,
    build_gstar_parts,
    gen_condensed_wall,
    layer_vertices,
)
from graph_document import certificate_payload as witness_payload
from graph_ops import delete_edges, delete_vertices, fold_midpoint
from internal.budget import NodeCounter
from internal.errors import BudgetExceededError, ConstructionError, InputError
from internal.utils import iter_subsets, sample_subsets, sorted_vertices, subset_count, vertex_key
from models.embedding import (
    Embedding,
    Linkage,
    PartConstraint,
    Pattern,
    SearchConstraints,
    SearchResult,
    SearchStatus,
)
from models.graph import Edge, LabeledGraph, RoleKind, edge_of, path_edges
from models.report import DeletionTrial, LemmaId, LemmaReport, TrialMode, Verdict
from models.specs import CondensedWallSpec, GStarSpec
from services.embedding_service import (
    count_disjoint_exits,
    embedding_vertices_of,
    enumerate_embeddings,
    find_linkage,
    find_topological_minor,
    find_two_edge_disjoint_linkages,
    verify_embedding,
    verify_linkage,
)
from services.pattern_service import (
    brick_certificate,
    brick_parts,
    get_pattern,
    part_degree3_vertices,
    reduce_pattern,
)

logger = logging.getLogger(__name__)

R_PARAMS = ("r",)
PACKING_PARAMS = ("n", "r")

PACKING_TEMPLATES = {
    LemmaId.B3_LAYER_PACKING: "b3-layer",
    LemmaId.B6_PACKING: "b6-stack",
    LemmaId.B7_PACKING_WITH_CD: "b7-cd",
    LemmaId.B8_PACKING_WITH_B1: "b8-brick",
    LemmaId.B9_PACKING_WITH_B2: "b9-double-brick",
}


@dataclass
class CheckContext:
    """Everything one check run may use; owned by that run alone."""
    params: Dict[str, int]
    counter: NodeCounter
    trial: TrialMode = TrialMode.EXHAUSTIVE
    seed: int = 20240601
    exhaustive_limit: int = 1_000_000
    sample_count: int = 10_000
    mixed_samples: int = 10_000
    notes: List[str] = field(default_factory=list)
    searches: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def r(self) -> int:
        return self.params["r"]

    def need(self, result: SearchResult, label: str) -> SearchResult:
        """Record a sub-search; an overrun aborts the whole check."""
        self.searches.append(
            {
                "search": label,
                "status": result.status.value,
                "nodes": result.stats.nodes,
                "exhausted": result.stats.exhausted,
                "certificate": result.stats.certificate,
            }
        )
        if result.status is SearchStatus.BUDGET_EXCEEDED:
            raise BudgetExceededError(self.counter.nodes, self.counter.budget)
        return result


@dataclass
class Outcome:
    verdict: Verdict
    witness: Optional[Dict[str, Any]] = None
    vacuous: bool = False
    trial: Optional[DeletionTrial] = None


CheckFn = Callable[[CheckContext], Outcome]


def _sorted_edges(edges: Iterable[Edge]) -> List[Edge]:
    return sorted((edge_of(*e) for e in edges), key=lambda e: (vertex_key(e[0]), vertex_key(e[1])))


def _deletion_witness(graph: LabeledGraph, deleted: Sequence[Edge]) -> Dict[str, Any]:
    return {"kind": "deletion-set", "graph": graph.name, "edges": [list(e) for e in _sorted_edges(deleted)]}


def _wall(r: int, jump_edges: bool = True) -> LabeledGraph:
    return gen_condensed_wall(CondensedWallSpec(r, jump_edges=jump_edges))


def _deletion_sets(
    ctx: CheckContext, universe: Sequence[Edge], sizes: Sequence[int]
) -> Tuple[Iterable[Tuple[Edge, ...]], DeletionTrial, int]:
    """Deletion sets of the given sizes: all of them when affordable, else a seeded sample."""
    total = sum(subset_count(len(universe), k) for k in sizes)
    size = max(sizes) if sizes else 0
    if ctx.trial is TrialMode.EXHAUSTIVE and total <= ctx.exhaustive_limit:
        sets = chain.from_iterable(iter_subsets(universe, k) for k in sizes)
        return sets, DeletionTrial(mode=TrialMode.EXHAUSTIVE, size=size, universe=len(universe)), total
    if ctx.trial is TrialMode.EXHAUSTIVE:
        ctx.notes.append(f"{total} deletion sets exceed the exhaustive limit {ctx.exhaustive_limit}; sampled instead")
    sets = chain.from_iterable(
        sample_subsets(universe, k, ctx.sample_count, ctx.seed + k) for k in sizes
    )
    trial = DeletionTrial(mode=TrialMode.SAMPLED, size=size, seed=ctx.seed, universe=len(universe))
    return sets, trial, total


def _close_trial(trial: DeletionTrial, count: int, total: int) -> DeletionTrial:
    trial.count = count
    if trial.mode is TrialMode.EXHAUSTIVE and count != total:
        raise AssertionError(f"exhaustive deletion trial covered {count} of {total} sets")
    return trial


def check_no_two_linkages(ctx: CheckContext) -> Outcome:
    wall = _wall(ctx.r)
    single = ctx.need(find_linkage(wall, counter=ctx.counter), "linkage")
    if not single.found:
        ctx.notes.append(f"{wall.name} has no linkage at all")
        return Outcome(Verdict.REFUTED)
    pair = ctx.need(find_two_edge_disjoint_linkages(wall, counter=ctx.counter), "two edge-disjoint linkages")
    if pair.found:
        return Outcome(Verdict.REFUTED, witness_payload(pair.linkages, wall.name))
    return Outcome(Verdict.VERIFIED, witness_payload(single.linkage, wall.name))


def _bundle_hits(parts: GStarParts) -> Dict[Edge, Tuple[Edge, int]]:
    gid = parts.gstar_id
    hits = {}
    for u, v in parts.wall.edges:
        if edge_of(u, v) in (edge_of(*parts.e1), edge_of(*parts.e2)):
            continue
        for k in range(parts.multiplicity):
            m = fold_midpoint(u, v, k)
            hits[edge_of(gid(u), m)] = ((u, v), k)
            hits[edge_of(m, gid(v))] = ((u, v), k)
    return hits


def _dead_bundle(hits: Dict[Edge, Tuple[Edge, int]], deleted: Iterable[Edge], multiplicity: int) -> Optional[Edge]:
    broken: Dict[Edge, set] = {}
    for e in deleted:
        if e in hits:
            bundle, k = hits[e]
            broken.setdefault(bundle, set()).add(k)
    for bundle, copies in sorted(broken.items()):
        if len(copies) >= multiplicity:
            return bundle
    return None


def _hitting_sets(ctx: CheckContext, universe: List[Edge], wall_edges: List[Edge]):
    sizes = list(range(ctx.r))
    total = sum(subset_count(len(universe), k) for k in sizes)
    if ctx.trial is TrialMode.EXHAUSTIVE and total <= ctx.exhaustive_limit:
        sets = chain.from_iterable(iter_subsets(universe, k) for k in sizes)
        return sets, DeletionTrial(mode=TrialMode.EXHAUSTIVE, size=ctx.r - 1, universe=len(universe)), total
    ctx.notes.append("deletions inside the wall are exhaustive, mixed deletions are sampled")
    inside = chain.from_iterable(iter_subsets(wall_edges, k) for k in sizes)
    mixed = sample_subsets(universe, ctx.r - 1, ctx.mixed_samples, ctx.seed)
    trial = DeletionTrial(mode=TrialMode.SAMPLED, size=ctx.r - 1, seed=ctx.seed, universe=len(universe))
    return chain(inside, mixed), trial, total


def check_hitting_robust(ctx: CheckContext) -> Outcome:
    parts = build_gstar_parts(GStarSpec(multiplicity=ctx.r))
    g = parts.graph
    w_part = parts.condensed_part
    hits = _bundle_hits(parts)
    pattern = gstar_wall_pattern(parts)
    universe = _sorted_edges(g.edges)
    wall_edges = _sorted_edges(w_part.edges)
    sets, trial, total = _hitting_sets(ctx, universe, wall_edges)
    linkages: Dict[FrozenSet[Edge], Optional[Linkage]] = {}
    first_witness = None
    count = 0
    for deleted in sets:
        ctx.counter.tick()
        count += 1
        dead = _dead_bundle(hits, deleted, parts.multiplicity)
        if dead is not None:
            logger.error(f"HittingRobust: deleting {list(deleted)} kills every copy of {dead}")
            ctx.notes.append(f"every parallel path of {dead[0]}-{dead[1]} is hit")
            return Outcome(Verdict.REFUTED, _deletion_witness(g, deleted), trial=_close_trial(trial, count, count))
        inner = frozenset(e for e in deleted if e in w_part.edges)
        if inner not in linkages:
            result = ctx.need(
                find_linkage(delete_edges(w_part, inner), counter=ctx.counter), f"linkage after {len(inner)} deletions"
            )
            linkages[inner] = result.linkage
        linkage = linkages[inner]
        if linkage is None:
            logger.error(f"HittingRobust: no linkage survives {list(inner)}")
            return Outcome(Verdict.REFUTED, _deletion_witness(g, deleted), trial=_close_trial(trial, count, count))
        embedding = _expansion_from_linkage(parts, pattern, linkage, deleted)
        if embedding is None or not verify_embedding(delete_edges(g, deleted), embedding, pattern):
            raise AssertionError(f"surviving bundles and linkage do not give an expansion for {list(deleted)}")
        if first_witness is None:
            first_witness = witness_payload(embedding, g.name)
    trial = _close_trial(trial, count, total)
    ctx.notes.append(f"{len(linkages)} distinct deletion patterns inside the wall")
    return Outcome(Verdict.VERIFIED, first_witness, trial=trial)


def _b3_center() -> str:
    cycles = [set(c) for c in brick_certificate("B3").cycles.values()]
    common = set.intersection(*cycles)
    if len(common) != 1:
        raise AssertionError(f"B3 bricks share {len(common)} vertices, expected one")
    return common.pop()


def _is_bottleneck(host: LabeledGraph, v: str) -> bool:
    return host.roles[v].kind is RoleKind.BOTTLENECK


def check_b3_center_bottleneck(ctx: CheckContext) -> Outcome:
    wall = _wall(ctx.r)
    pattern = get_pattern("B3")
    center = _b3_center()
    ab = frozenset({wall.terminal("a"), wall.terminal("b")})
    stream = enumerate_embeddings(wall, pattern, SearchConstraints(forbidden=ab), ctx.counter)
    seen = 0
    for embedding in stream:
        seen += 1
        image = embedding.branch_map[center]
        if not _is_bottleneck(wall, image):
            logger.error(f"B3 centre mapped to {image} in {wall.name}")
            return Outcome(Verdict.REFUTED, witness_payload(embedding, wall.name))
    ctx.need(_stream_result(stream), "B3 enumeration")
    ctx.notes.append(f"{seen} B3 embeddings enumerated")
    return Outcome(Verdict.VERIFIED, vacuous=seen == 0)


def _stream_result(stream) -> SearchResult:
    return SearchResult(status=stream.status, stats=stream.stats)


def _packing_check(figure_id: str) -> CheckFn:
    def run(ctx: CheckContext) -> Outcome:
        n, r = ctx.params["n"], ctx.params["r"]
        host, gadget = build_packing_host(figure_id, n, r)
        packer = TemplatePacker(figure_id, host, gadget)
        ctx.counter.tick()
        sets, trial, total = _deletion_sets(ctx, _sorted_edges(host.edges), [r])
        first = None
        count = 0
        for deleted in sets:
            ctx.counter.tick()
            count += 1
            packing = packer.pack(n, deleted)
            if packing is None:
                logger.error(f"{figure_id}: no {n} surviving templates after deleting {list(deleted)}")
                return Outcome(Verdict.REFUTED, _deletion_witness(host, deleted), trial=_close_trial(trial, count, count))
            if first is None:
                first = witness_payload(packing, host.name)
        ctx.notes.append(f"host {host.name} with {len(host.edges)} edges")
        return Outcome(Verdict.VERIFIED, first, trial=_close_trial(trial, count, total))

    run.__name__ = f"check_{figure_id.replace('-', '_')}_packing"
    return run


def check_no_b4(ctx: CheckContext) -> Outcome:
    wall = _wall(ctx.r)
    ab = frozenset({wall.terminal("a"), wall.terminal("b")})
    result = ctx.need(find_topological_minor(wall, get_pattern("B4"), SearchConstraints(forbidden=ab), ctx.counter), "B4")
    if result.found:
        return Outcome(Verdict.REFUTED, witness_payload(result.embedding, wall.name))
    return Outcome(Verdict.VERIFIED)


def _no_extension_over_b3(ctx: CheckContext, pattern_id: str, jump_edges: bool) -> Outcome:
    wall = _wall(ctx.r, jump_edges=jump_edges)
    ab = frozenset({wall.terminal("a"), wall.terminal("b")})
    base = ctx.need(
        find_topological_minor(wall, get_pattern("B3"), SearchConstraints(forbidden=ab), ctx.counter), "B3"
    )
    if not base.found:
        ctx.notes.append(f"no B3 in {wall.name} - {{a,b}}")
        return Outcome(Verdict.VERIFIED, vacuous=True)
    pattern = get_pattern(pattern_id)
    parts = brick_parts(pattern_id, 3)
    if not parts:
        ctx.notes.append(f"{pattern_id} has no three-brick part")
        return Outcome(Verdict.VERIFIED, vacuous=True)
    for k, part in enumerate(parts):
        constraints = SearchConstraints(parts=(PartConstraint(part, ab),))
        result = ctx.need(find_topological_minor(wall, pattern, constraints, ctx.counter), f"{pattern_id} part {k}")
        if result.found:
            logger.error(f"{pattern_id} extends a B3 in {wall.name}")
            return Outcome(Verdict.REFUTED, witness_payload(result.embedding, wall.name))
    ctx.notes.append(f"{len(parts)} three-brick parts of {pattern_id} tried")
    return Outcome(Verdict.VERIFIED)


def check_no_b4_over_b3(ctx: CheckContext) -> Outcome:
    return _no_extension_over_b3(ctx, "B4", jump_edges=False)


def check_no_b5_over_b3(ctx: CheckContext) -> Outcome:
    return _no_extension_over_b3(ctx, "B5", jump_edges=True)


def _layer_of(wall: LabeledGraph, vertices: FrozenSet[str]) -> Optional[int]:
    for j in range(1, len(wall.bottlenecks())):
        if vertices <= layer_vertices(wall, j):
            return j
    return None


def check_b2_bottleneck(ctx: CheckContext) -> Outcome:
    wall = _wall(ctx.r)
    pattern = get_pattern("B3")
    ab = frozenset({wall.terminal("a"), wall.terminal("b")})
    seen = 0
    max_exits = 0
    for part in brick_parts("B3", 2):
        corners = part_degree3_vertices(pattern, part)
        stream = enumerate_embeddings(
            wall, pattern, SearchConstraints(parts=(PartConstraint(part, ab),)), ctx.counter
        )
        for embedding in stream:
            seen += 1
            images = [embedding.branch_map[p] for p in corners]
            if not any(_is_bottleneck(wall, v) for v in images):
                logger.error(f"B2 corners {images} in {wall.name} miss every bottleneck")
                return Outcome(Verdict.REFUTED, witness_payload(embedding, wall.name))
            b2 = embedding_vertices_of(embedding, part, pattern)
            layer = _layer_of(wall, b2)
            if layer is None:
                ctx.notes.append(f"a B2 image spans more than one layer: {sorted_vertices(b2)[:4]}")
                continue
            exits = count_disjoint_exits(embedding.edges(), b2, layer_vertices(wall, layer))
            max_exits = max(max_exits, exits)
            if exits > 3:
                logger.error(f"B2 in layer {layer} has {exits} disjoint exits")
                return Outcome(Verdict.REFUTED, witness_payload(embedding, wall.name))
        ctx.need(_stream_result(stream), "B3 enumeration over a B2 part")
    ctx.notes.append(f"{seen} B3 embeddings enumerated; at most {max_exits} disjoint exits from a B2")
    ctx.notes.append("exit bound checked inside enumerated B3 embeddings only")
    return Outcome(Verdict.VERIFIED, vacuous=seen == 0)


def _chain_walk(ch) -> Tuple[str, ...]:
    return (ch.ends[0], *ch.inner, ch.ends[1])


@lru_cache(maxsize=None)
def b7_path_variants() -> Tuple[Tuple[str, Pattern, Tuple[str, str]], ...]:
    """B7 minus one outer chain, one spoke and one centre edge.

    Each variant keeps the removed chain's ends as branch vertices so they
    can be restricted to terminals and bottlenecks.
    """
    pattern = get_pattern("B7")
    cert = brick_certificate("B7")
    centre = next(b for b in cert.bricks() if len(cert.neighbours(b)) == 6)
    picked: Dict[str, Any] = {}
    for ch in pattern.chains:
        walk = _chain_walk(ch)
        bricks = cert.containing_edge(walk[0], walk[1])
        if len(bricks) == 1:
            label = "outer"
        elif centre in bricks:
            label = "centre-edge"
        else:
            label = "spoke"
        picked.setdefault(label, ch)
    variants = []
    for label in ("outer", "spoke", "centre-edge"):
        ch = picked[label]
        g = delete_edges(pattern.graph, path_edges(_chain_walk(ch)))
        g = delete_vertices(g, ch.inner)
        variants.append((label, reduce_pattern(g, f"B7-{label}", keep=ch.ends), ch.ends))
    return tuple(variants)


def check_no_b7(ctx: CheckContext) -> Outcome:
    wall = _wall(ctx.r)
    result = ctx.need(find_topological_minor(wall, get_pattern("B7"), counter=ctx.counter), "B7")
    if result.found:
        return Outcome(Verdict.REFUTED, witness_payload(result.embedding, wall.name))
    ab = frozenset({wall.terminal("a"), wall.terminal("b")})
    ends_allowed = ab | frozenset(wall.bottlenecks().values())
    for label, pattern, (p, q) in b7_path_variants():
        for first, second in ((p, q), (q, p)):
            constraints = SearchConstraints(allowed={first: ab, second: ends_allowed})
            result = ctx.need(find_topological_minor(wall, pattern, constraints, ctx.counter), f"B7 without {label}")
            if result.found:
                logger.error(f"B7 without its {label} chain embeds in {wall.name}")
                return Outcome(Verdict.REFUTED, witness_payload(result.embedding, wall.name))
    ctx.notes.append("path shapes tried: none, outer, spoke, centre-edge")
    return Outcome(Verdict.VERIFIED)


@lru_cache(maxsize=None)
def _reduced_wall(parts_wall: LabeledGraph) -> Pattern:
    return reduce_pattern(parts_wall, "B")


def gstar_wall_pattern(parts: GStarParts) -> Pattern:
    return _reduced_wall(parts.wall)


def _expansion_from_linkage(
    parts: GStarParts, pattern: Pattern, linkage: Linkage, deleted: Iterable[Edge] = ()
) -> Optional[Embedding]:
    gid = parts.gstar_id
    gone = {edge_of(*e) for e in deleted}
    e1, e2 = edge_of(*parts.e1), edge_of(*parts.e2)

    def image(x: str, y: str) -> Optional[Tuple[str, ...]]:
        e = edge_of(x, y)
        if e in (e1, e2):
            path = linkage.pab if e == e1 else linkage.pcd
            return path if path[0] == gid(x) else tuple(reversed(path))
        for k in range(parts.multiplicity):
            path = (gid(x), fold_midpoint(x, y, k), gid(y))
            if not set(path_edges(path)) & gone:
                return path
        return None

    path_map = {}
    for ch in pattern.chains:
        walk = _chain_walk(ch)
        out = [gid(walk[0])]
        for x, y in zip(walk, walk[1:]):
            segment = image(x, y)
            if segment is None:
                return None
            out.extend(segment[1:])
        path_map[ch.chain_id] = tuple(out)
    return Embedding(
        pattern_id=pattern.pattern_id,
        branch_map={p: gid(p) for p in pattern.branch_vertices},
        path_map=path_map,
    )


def gstar_expansion(
    parts: GStarParts, deleted: Iterable[Edge] = (), counter: Optional[NodeCounter] = None
) -> Optional[Tuple[Embedding, Linkage]]:
    """Expansion of the elementary wall in G* avoiding ``deleted``.

    Wall edges other than e1 and e2 use their first intact parallel path;
    e1 and e2 use the two paths of a linkage of the condensed wall.
    """
    gone = {edge_of(*e) for e in deleted}
    w_part = parts.condensed_part
    result = find_linkage(delete_edges(w_part, gone & w_part.edges), counter=counter)
    if result.status is SearchStatus.BUDGET_EXCEEDED:
        raise BudgetExceededError(result.stats.nodes)
    if result.linkage is None:
        return None
    embedding = _expansion_from_linkage(parts, gstar_wall_pattern(parts), result.linkage, gone)
    if embedding is None:
        return None
    return embedding, result.linkage


def check_gstar_expansion_linkage(ctx: CheckContext) -> Outcome:
    parts = build_gstar_parts(GStarSpec(multiplicity=ctx.r))
    expansion = gstar_expansion(parts, counter=ctx.counter)
    if expansion is None:
        ctx.notes.append("the condensed wall has no linkage")
        return Outcome(Verdict.REFUTED)
    embedding, linkage = expansion
    pattern = gstar_wall_pattern(parts)
    if not verify_embedding(parts.graph, embedding, pattern):
        raise AssertionError("constructed expansion does not verify")
    w_part = parts.condensed_part
    restricted = embedding.edges() & w_part.edges
    if restricted != linkage.edges() or not verify_linkage(w_part, linkage):
        logger.error("expansion restricted to the condensed wall is not a linkage")
        return Outcome(Verdict.REFUTED, witness_payload(embedding, parts.graph.name))
    ctx.notes.append(f"terminal edges {parts.e1} and {parts.e2}")
    return Outcome(Verdict.VERIFIED, witness_payload(embedding, parts.graph.name))


DEFAULT_CHECKS: Dict[LemmaId, Tuple[CheckFn, Tuple[str, ...]]] = {
    LemmaId.NO_TWO_LINKAGES: (check_no_two_linkages, R_PARAMS),
    LemmaId.HITTING_ROBUST: (check_hitting_robust, R_PARAMS),
    LemmaId.B3_CENTER_BOTTLENECK: (check_b3_center_bottleneck, R_PARAMS),
    LemmaId.B3_LAYER_PACKING: (_packing_check(PACKING_TEMPLATES[LemmaId.B3_LAYER_PACKING]), PACKING_PARAMS),
    LemmaId.NO_B4: (check_no_b4, R_PARAMS),
    LemmaId.NO_B4_OVER_B3: (check_no_b4_over_b3, R_PARAMS),
    LemmaId.NO_B5_OVER_B3: (check_no_b5_over_b3, R_PARAMS),
    LemmaId.B2_BOTTLENECK: (check_b2_bottleneck, R_PARAMS),
    LemmaId.NO_B7: (check_no_b7, R_PARAMS),
    LemmaId.B6_PACKING: (_packing_check(PACKING_TEMPLATES[LemmaId.B6_PACKING]), PACKING_PARAMS),
    LemmaId.B7_PACKING_WITH_CD: (_packing_check(PACKING_TEMPLATES[LemmaId.B7_PACKING_WITH_CD]), PACKING_PARAMS),
    LemmaId.B8_PACKING_WITH_B1: (_packing_check(PACKING_TEMPLATES[LemmaId.B8_PACKING_WITH_B1]), PACKING_PARAMS),
    LemmaId.B9_PACKING_WITH_B2: (_packing_check(PACKING_TEMPLATES[LemmaId.B9_PACKING_WITH_B2]), PACKING_PARAMS),
    LemmaId.GSTAR_EXPANSION_LINKAGE: (check_gstar_expansion_linkage, R_PARAMS),
}


def _lemma_id(name: Union[LemmaId, str]) -> LemmaId:
    try:
        return LemmaId(name)
    except ValueError:
        raise InputError(f"unknown lemma id: {name}")


class LemmaSuite:
    """Registry of lemma checks plus the budgets and trial policy they run under.

    Checks can be registered and unregistered at runtime; each registered
    check is also exposed as an attribute named after its LemmaId.
    """

    def __init__(self, config: Optional[Dict[str, Any]] = None, checks: Optional[Dict[Any, Any]] = None):
        self.config = config if config is not None else default_config()
        search = get_search_config(self.config)
        trials = get_trial_config(self.config)
        suite = get_suite_config(self.config)
        self.node_budget: int = search.get("node_budget", 100_000_000)
        self.exhaustive_limit: int = trials.get("exhaustive_limit", 1_000_000)
        self.sample_count: int = trials.get("sample_count", 10_000)
        self.seed: int = trials.get("seed", 20240601)
        self.max_r: int = suite.get("max_r", 2)
        self.workers: int = suite.get("workers", 1)
        self.mixed_samples: int = suite.get("mixed_samples", 10_000)

        self._checks: Dict[str, Tuple[CheckFn, Tuple[str, ...]]] = {}
        for lemma_id, (fn, keys) in (checks if checks is not None else DEFAULT_CHECKS).items():
            self.register_check(_lemma_id(lemma_id).value, fn, keys)

    # --- check registry ---------------------------------------------------------------
    def register_check(self, name: str, check: CheckFn, param_keys: Sequence[str] = R_PARAMS) -> None:
        """Register ``check`` under a LemmaId value and mirror it as an attribute."""
        if not name or not isinstance(name, str):
            raise ValueError("check name must be a non-empty string")
        if name not in {x.value for x in LemmaId}:
            raise ValueError(f"check name must be a lemma id, got {name!r}")
        self._checks[name] = (check, tuple(param_keys))
        setattr(self, name, check)

    def get_check(self, name: str, default: Any = None) -> Any:
        entry = self._checks.get(name)
        return entry[0] if entry else default

    def unregister_check(self, name: str) -> None:
        if name in self._checks:
            del self._checks[name]
        if hasattr(self, name):
            delattr(self, name)

    def list_checks(self) -> Dict[str, CheckFn]:
        return {name: fn for name, (fn, _) in self._checks.items()}

    # --- running ----------------------------------------------------------------------
    def _normalize(self, lemma_id: LemmaId, keys: Tuple[str, ...], params: Optional[Dict[str, Any]]) -> Dict[str, int]:
        given = dict(params or {})
        unknown = set(given) - set(keys)
        if unknown:
            raise InputError(f"{lemma_id.value} does not take parameters {sorted(unknown)}")
        if keys == PACKING_PARAMS:
            values = {"n": 1, "r": 0}
        else:
            values = {k: self.max_r for k in keys}
        for k, v in given.items():
            try:
                values[k] = int(v)
            except (TypeError, ValueError):
                raise InputError(f"{lemma_id.value}: parameter {k} must be an integer, got {v!r}")
        if "n" in values and values["n"] < 1:
            raise InputError(f"{lemma_id.value}: n must be at least 1, got {values['n']}")
        if keys == PACKING_PARAMS and values["r"] < 0:
            raise InputError(f"{lemma_id.value}: r must be non-negative, got {values['r']}")
        if keys == R_PARAMS and values["r"] < 1:
            raise InputError(f"{lemma_id.value}: r must be at least 1, got {values['r']}")
        return values

    def check(
        self,
        lemma_id: Union[LemmaId, str],
        params: Optional[Dict[str, Any]] = None,
        budget: Optional[int] = None,
        trial: Optional[TrialMode] = None,
        seed: Optional[int] = None,
    ) -> LemmaReport:
        lid = _lemma_id(lemma_id)
        if lid.value not in self._checks:
            raise InputError(f"no check registered for {lid.value}")
        fn, keys = self._checks[lid.value]
        values = self._normalize(lid, keys, params)
        ctx = CheckContext(
            params=values,
            counter=NodeCounter(budget if budget is not None else self.node_budget),
            trial=TrialMode(trial) if trial is not None else TrialMode.EXHAUSTIVE,
            seed=seed if seed is not None else self.seed,
            exhaustive_limit=self.exhaustive_limit,
            sample_count=self.sample_count,
            mixed_samples=self.mixed_samples,
        )
        logger.info(f"checking {lid.value} with {values}")
        started = time.perf_counter()
        try:
            ctx.counter.tick()
            outcome = fn(ctx)
        except BudgetExceededError as e:
            logger.warning(f"{lid.value} {values}: {e}")
            ctx.notes.append(str(e))
            outcome = Outcome(Verdict.BUDGET_EXCEEDED)
        except ConstructionError as e:
            logger.error(f"{lid.value} {values}: construction failed: {e}")
            ctx.notes.append(f"construction failed: {e}")
            outcome = Outcome(Verdict.REFUTED)
        report = LemmaReport(
            lemma_id=lid,
            params=values,
            verdict=outcome.verdict,
            vacuous=outcome.vacuous,
            sampled=outcome.trial is not None and outcome.trial.mode is TrialMode.SAMPLED,
            trial=outcome.trial,
            witness=outcome.witness,
            stats={"nodes": ctx.counter.nodes, "budget": ctx.counter.budget, "searches": ctx.searches},
            notes=ctx.notes,
            wall_clock=time.perf_counter() - started,
        )
        logger.info(f"{lid.value} {values}: {report.verdict.value} after {ctx.counter.nodes} nodes")
        return report

    def parameter_points(self, max_r: int) -> List[Tuple[LemmaId, Dict[str, int]]]:
        """One parameter point per registered check, in LemmaId order."""
        points = []
        for lid in LemmaId:
            if lid.value not in self._checks:
                continue
            keys = self._checks[lid.value][1]
            if keys != PACKING_PARAMS:
                points.append((lid, {k: max_r for k in keys}))
            elif lid in (LemmaId.B3_LAYER_PACKING, LemmaId.B6_PACKING):
                points.append((lid, {"n": 1, "r": max_r - 1}))
            else:
                points.append((lid, {"n": 1, "r": 0}))
        return points

    def run_all(
        self,
        max_r: Optional[int] = None,
        trial: Optional[TrialMode] = None,
        seed: Optional[int] = None,
        workers: Optional[int] = None,
        budget: Optional[int] = None,
    ) -> List[LemmaReport]:
        max_r = self.max_r if max_r is None else max_r
        if max_r < 1:
            raise InputError(f"run_all needs max_r >= 1, got {max_r}")
        points = self.parameter_points(max_r)
        workers = workers or self.workers
        logger.info(f"running {len(points)} checks up to r={max_r} on {workers} workers")
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(
                pool.map(lambda point: self.check(point[0], point[1], budget=budget, trial=trial, seed=seed), points)
            )
        return reports
