"""
Deterministic constructors for grids, walls, condensed walls, brick walls,
exterior gadgets and the counterexample graph G*.
"""
import heapq
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

import networkx as nx

from graph_ops import (
    delete_edges,
    delete_vertices,
    edge_label,
    fold_midpoint,
    identify_vertices,
    r_fold,
    subdivide_edges,
    subdivision_ids,
    to_networkx,
    union_graphs,
)
from internal.budget import NodeCounter
from internal.errors import BudgetExceededError, ConstructionError, InputError
from internal.linkage_search import first_linkage
from internal.utils import sorted_vertices
from models.graph import Edge, EdgeClass, LabeledGraph, Role, RoleKind, edge_of, path_edges
from models.specs import BrickCertificate, CondensedWallSpec, GStarSpec, WallSpec

logger = logging.getLogger(__name__)

BRICK_WALL_IDS = tuple(f"B{n}" for n in range(1, 11)) + ("B1sq",)

# Brick centres in honeycomb coordinates, in the order bricks are added.
_HONEYCOMB_CENTRES = (
    (1, 0),
    (-1, 0),
    (0, 1),
    (0, -1),
    (2, -1),
    (2, 1),
    (3, 0),
    (4, -1),
    (4, 1),
    (5, 0),
)


def grid_vertex(i: int, j: int) -> str:
    return f"v{i}_{j}"


def gen_elementary_grid(m: int, n: int) -> LabeledGraph:
    if m < 1 or n < 1:
        raise InputError(f"grid needs m, n >= 1, got {m}x{n}")
    vertices = [grid_vertex(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]
    edges = []
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            if j < n:
                edges.append((grid_vertex(i, j), grid_vertex(i, j + 1)))
            if i < m:
                edges.append((grid_vertex(i, j), grid_vertex(i + 1, j)))
    return LabeledGraph.build(vertices, edges, name=f"grid{m}x{n}")


def _brick_adjacency(cycles: Mapping[str, Tuple[str, ...]]) -> Dict[str, Tuple[str, ...]]:
    vertex_sets = {b: set(c) for b, c in cycles.items()}
    return {
        b: tuple(o for o in cycles if o != b and vertex_sets[b] & vertex_sets[o])
        for b in cycles
    }


def brick_id(i: int, k: int) -> str:
    return f"r{i}c{k}"


def gen_elementary_wall(m: int, n: int) -> Tuple[LabeledGraph, BrickCertificate]:
    """Elementary wall with ``m`` brick rows and ``n`` bricks per row."""
    if m < 1 or n < 1:
        raise InputError(f"wall needs m, n >= 1, got {m}x{n}")
    grid = gen_elementary_grid(m + 1, 2 * n + 2)
    removed = []
    for i in range(1, m + 1):
        for j in range(1, 2 * n + 2 + 1):
            if (i % 2 == 1 and j % 2 == 0) or (i % 2 == 0 and j % 2 == 1):
                removed.append((grid_vertex(i, j), grid_vertex(i + 1, j)))
    wall = delete_edges(grid, removed)
    while True:
        leaves = [v for v in wall.vertices if wall.degree(v) <= 1]
        if not leaves:
            break
        wall = delete_vertices(wall, leaves)
    cycles = {}
    for i in range(1, m + 1):
        for k in range(1, n + 1):
            c = 2 * k - 1 if i % 2 == 1 else 2 * k
            cycles[brick_id(i, k)] = (
                grid_vertex(i, c),
                grid_vertex(i, c + 1),
                grid_vertex(i, c + 2),
                grid_vertex(i + 1, c + 2),
                grid_vertex(i + 1, c + 1),
                grid_vertex(i + 1, c),
            )
    cert = BrickCertificate(cycles=cycles, adjacency=_brick_adjacency(cycles), shape=(m, n))
    return wall.renamed(f"wall{m}x{n}"), cert


def _apply_plan(
    graph: LabeledGraph, cert: BrickCertificate, plan: Mapping[Edge, int]
) -> Tuple[LabeledGraph, BrickCertificate]:
    if not plan:
        return graph, cert
    normalized = {edge_of(*e): t for e, t in plan.items()}
    subdivided = subdivide_edges(graph, normalized)
    cycles = {}
    for b, cycle in cert.cycles.items():
        out: List[str] = []
        for idx, x in enumerate(cycle):
            y = cycle[(idx + 1) % len(cycle)]
            out.append(x)
            e = edge_of(x, y)
            inner = subdivision_ids(e, normalized.get(e, 0))
            out.extend(inner if e[0] == x else reversed(inner))
        cycles[b] = tuple(out)
    return subdivided, BrickCertificate(cycles=cycles, adjacency=dict(cert.adjacency), shape=cert.shape)


def gen_wall(spec: WallSpec) -> Tuple[LabeledGraph, BrickCertificate]:
    wall, cert = gen_elementary_wall(spec.rows, spec.columns)
    return _apply_plan(wall, cert, spec.plan)


def bottleneck(i: int) -> str:
    return f"z{i}"


def row_vertex(layer: int, position: int) -> str:
    return f"u{layer}_{position}"


def gen_condensed_wall(spec: CondensedWallSpec) -> LabeledGraph:
    r = spec.size
    roles: Dict[str, Role] = {"a": Role.terminal_role("a"), "b": Role.terminal_role("b")}
    for i in range(r + 1):
        letter = "c" if i == 0 else ("d" if i == r else None)
        roles[bottleneck(i)] = Role.bottleneck(i, letter)
    for j in range(1, r + 1):
        for k in range(1, 2 * r + 1):
            roles[row_vertex(j, k)] = Role.row_vertex(j, k)
    edges = []
    classes: Dict[Edge, EdgeClass] = {}
    for j in range(1, r + 1):
        for k in range(1, 2 * r):
            edges.append((row_vertex(j, k), row_vertex(j, k + 1)))
        for i in range(1, r + 1):
            edges.append((bottleneck(j - 1), row_vertex(j, 2 * i - 1)))
            edges.append((bottleneck(j), row_vertex(j, 2 * i)))
        for end, position in (("a", 1), ("b", 2 * r)):
            e = (end, row_vertex(j, position))
            edges.append(e)
            classes[edge_of(*e)] = EdgeClass.TERMINAL_ATTACHMENT
    if spec.jump_edges:
        for i in range(1, r + 1):
            e = (bottleneck(i - 1), bottleneck(i))
            edges.append(e)
            classes[edge_of(*e)] = EdgeClass.JUMP_EDGE
    name = f"W{r}" if spec.jump_edges else f"Wminus{r}"
    return LabeledGraph.build(roles.keys(), edges, roles, classes, name=name)


def layer_vertices(wall: LabeledGraph, layer: int) -> FrozenSet[str]:
    """Vertex set of layer ``layer``: its row plus the two bottlenecks around it."""
    members = {
        v
        for v in wall.vertices
        if wall.roles[v].kind is RoleKind.ROW_VERTEX and wall.roles[v].layer == layer
    }
    zs = wall.bottlenecks()
    for i in (layer - 1, layer):
        if i in zs:
            members.add(zs[i])
    return frozenset(members)


def wall_interior(g: LabeledGraph) -> FrozenSet[str]:
    """Condensed-wall vertices other than the four terminals."""
    return frozenset(
        v
        for v in g.vertices
        if g.roles[v].kind is RoleKind.ROW_VERTEX
        or (g.roles[v].kind is RoleKind.BOTTLENECK and g.roles[v].terminal is None)
    )


def honeycomb_vertex(x: int, y: int) -> str:
    return f"h{x},{y}"


def _honeycomb_cycle(cx: int, cy: int) -> Tuple[str, ...]:
    return tuple(
        honeycomb_vertex(x, y)
        for x, y in (
            (cx - 1, 3 * cy),
            (cx - 1, 3 * cy + 2),
            (cx, 3 * cy + 3),
            (cx + 1, 3 * cy + 2),
            (cx + 1, 3 * cy),
            (cx, 3 * cy - 1),
        )
    )


def _graph_from_cycles(cycles: Mapping[str, Tuple[str, ...]], extra_edges=(), name="G") -> LabeledGraph:
    vertices = set()
    edges = set()
    for cycle in cycles.values():
        vertices.update(cycle)
        edges.update(path_edges(cycle + (cycle[0],)))
    for u, v in extra_edges:
        vertices.update((u, v))
        edges.add(edge_of(u, v))
    return LabeledGraph.build(vertices, edges, name=name)


def _b1_squared(first_length: int, second_length: int) -> Tuple[LabeledGraph, BrickCertificate]:
    if first_length < 1 or second_length < 1:
        raise InputError("B1sq path lengths must be at least 1")
    cycles = {
        "P": tuple(f"p{k}" for k in range(6)),
        "Q": tuple(f"q{k}" for k in range(6)),
    }
    extra = []
    for label, (start, end), length in (
        ("s1", ("p0", "q0"), first_length),
        ("s2", ("p3", "q3"), second_length),
    ):
        chain = [start] + [f"{label}_{t}" for t in range(1, length)] + [end]
        extra.extend(path_edges(chain))
    graph = _graph_from_cycles(cycles, extra, name="B1sq")
    return graph, BrickCertificate(cycles=cycles, adjacency={"P": (), "Q": ()})


def gen_brick_wall(
    wall_id: str,
    plan: Optional[Mapping[Edge, int]] = None,
    path_lengths: Tuple[int, int] = (1, 1),
) -> Tuple[LabeledGraph, BrickCertificate]:
    """Elementary B1..B10 on the honeycomb, or B1sq, subdivided per ``plan``."""
    if wall_id == "B1sq":
        graph, cert = _b1_squared(*path_lengths)
        return _apply_plan(graph, cert, plan or {})
    if wall_id not in BRICK_WALL_IDS:
        raise InputError(f"unknown brick wall id: {wall_id}")
    n = int(wall_id[1:])
    cycles = {f"H{x},{y}": _honeycomb_cycle(x, y) for x, y in _HONEYCOMB_CENTRES[:n]}
    graph = _graph_from_cycles(cycles, name=wall_id)
    cert = BrickCertificate(cycles=cycles, adjacency=_brick_adjacency(cycles))
    return _apply_plan(graph, cert, plan or {})


def outer_bricks(cert: BrickCertificate) -> List[str]:
    """Bricks with fewer than six neighbours, i.e. on the outer face."""
    return [b for b in cert.cycles if len(cert.neighbours(b)) < 6]


def body(wall: LabeledGraph, cert: Optional[BrickCertificate]) -> Tuple[LabeledGraph, BrickCertificate]:
    if cert is None:
        raise InputError("body() needs the wall's brick certificate")
    keep = [b for b in cert.cycles if len(cert.neighbours(b)) >= 3]
    edges = set()
    for b in keep:
        cycle = cert.cycles[b]
        edges.update(path_edges(cycle + (cycle[0],)))
    vertices = {x for e in edges for x in e}
    graph = LabeledGraph.build(
        vertices,
        edges,
        {v: wall.roles[v] for v in vertices},
        {e: wall.edge_classes[e] for e in edges},
        name=f"body({wall.name})",
    )
    return graph, cert.restricted(keep)


def min_bricks_touched(
    wall: LabeledGraph,
    cert: BrickCertificate,
    e1: Edge,
    e2: Edge,
    threshold: int = 7,
    counter: Optional[NodeCounter] = None,
) -> int:
    """Fewest bricks an e1–e2 path meets, ignoring the bricks holding e1 or e2.

    A brick counts as met when it shares a vertex with the path. The search
    is best-first over (vertex, bricks met) states and stops at
    ``threshold``; the return value is then ``threshold``.
    """
    counter = counter or NodeCounter()
    e1, e2 = edge_of(*e1), edge_of(*e2)
    for e in (e1, e2):
        if e not in wall.edges:
            raise InputError(f"terminal edge {e[0]}-{e[1]} is not a wall edge")
    excluded = set(cert.containing_edge(*e1)) | set(cert.containing_edge(*e2))
    met_by: Dict[str, FrozenSet[str]] = {
        v: frozenset(b for b in cert.containing_vertex(v) if b not in excluded) for v in wall.vertices
    }
    targets = set(e2)
    heap = []
    seen = set()
    for s in sorted_vertices(e1):
        start = met_by[s]
        heapq.heappush(heap, (len(start), sorted(start), s, start))
    while heap:
        cost, _, v, met = heapq.heappop(heap)
        if cost >= threshold:
            return threshold
        if (v, met) in seen:
            continue
        seen.add((v, met))
        counter.tick()
        if v in targets:
            return cost
        for w in wall.neighbors(v):
            if edge_of(v, w) in (e1, e2):
                continue
            grown = met | met_by[w]
            if (w, grown) not in seen and len(grown) < threshold:
                heapq.heappush(heap, (len(grown), sorted(grown), w, grown))
    return threshold


def terminal_edges_ok(
    wall: LabeledGraph,
    cert: BrickCertificate,
    e1: Edge,
    e2: Edge,
    threshold: int = 7,
    budget: Optional[int] = None,
) -> bool:
    return min_bricks_touched(wall, cert, e1, e2, threshold, NodeCounter(budget)) >= threshold


def pick_terminal_edges(
    wall: LabeledGraph, cert: BrickCertificate, budget: Optional[int] = None
) -> Tuple[Edge, Edge]:
    """Canonical e1 (top of the last row-1 brick) and e2 (bottom of the first
    body brick in the last row), checked against the seven-brick condition."""
    if cert.shape is None:
        raise InputError("terminal edges need a wall certificate with its shape")
    m, n = cert.shape
    if m < 6 or n < 4:
        raise InputError(f"terminal edges need a wall of at least 6x4, got {m}x{n}")
    e1 = edge_of(grid_vertex(1, 2 * n), grid_vertex(1, 2 * n + 1))
    if m % 2 == 0:
        e2 = edge_of(grid_vertex(m + 1, 2), grid_vertex(m + 1, 3))
    else:
        e2 = edge_of(grid_vertex(m + 1, 3), grid_vertex(m + 1, 4))
    try:
        ok = terminal_edges_ok(wall, cert, e1, e2, budget=budget)
    except BudgetExceededError:
        logger.warning(f"seven-brick check for {e1}/{e2} ran out of budget")
        raise
    if not ok:
        raise ConstructionError(f"terminal edges {e1} and {e2} fail the seven-brick condition")
    logger.debug(f"terminal edges picked: e1={e1} e2={e2}")
    return e1, e2


@dataclass
class GStarParts:
    """G* together with the pieces it was assembled from."""
    graph: LabeledGraph
    wall: LabeledGraph
    cert: BrickCertificate
    e1: Edge
    e2: Edge
    multiplicity: int
    condensed: LabeledGraph
    terminal_of: Dict[str, str] = field(default_factory=dict)

    def gstar_id(self, wall_vertex: str) -> str:
        return self.terminal_of.get(wall_vertex, wall_vertex)

    @property
    def condensed_part(self) -> LabeledGraph:
        return delete_vertices(self.graph, self.graph.vertices - self.condensed.vertices)


def _assemble(wall, e1, e2, r, swap) -> Tuple[LabeledGraph, LabeledGraph, Dict[str, str]]:
    condensed = gen_condensed_wall(CondensedWallSpec(r, jump_edges=True))
    exterior = r_fold(delete_edges(wall, [e1, e2]), r)
    g = union_graphs(condensed, exterior, name=f"Gstar{r}")
    c_end, d_end = (e2[1], e2[0]) if swap else (e2[0], e2[1])
    terminal_of = {e1[0]: "a", e1[1]: "b", c_end: bottleneck(0), d_end: bottleneck(r)}
    for wall_vertex, terminal in terminal_of.items():
        g = identify_vertices(g, terminal, wall_vertex)
    return g.renamed(f"Gstar{r}"), condensed, terminal_of


def build_gstar_parts(spec: GStarSpec, budget: Optional[int] = None) -> GStarParts:
    wall, cert = gen_elementary_wall(spec.rows, spec.columns)
    if spec.terminal_edges is None:
        e1, e2 = pick_terminal_edges(wall, cert, budget=budget)
    else:
        e1, e2 = (edge_of(*spec.terminal_edges[0]), edge_of(*spec.terminal_edges[1]))
        if not terminal_edges_ok(wall, cert, e1, e2, budget=budget):
            raise ConstructionError(f"terminal edges {e1} and {e2} fail the seven-brick condition")
    candidates = [_assemble(wall, e1, e2, spec.multiplicity, swap) for swap in (False, True)]
    for g, condensed, terminal_of in candidates:
        if _orientation_by_planarity(g):
            return GStarParts(g, wall, cert, e1, e2, spec.multiplicity, condensed, terminal_of)
    for g, condensed, terminal_of in candidates:
        if check_terminal_orientation(g, budget=budget):
            return GStarParts(g, wall, cert, e1, e2, spec.multiplicity, condensed, terminal_of)
    raise ConstructionError("neither c/d pairing separates b from d on every a-c path")


def build_gstar(spec: GStarSpec, budget: Optional[int] = None) -> LabeledGraph:
    parts = build_gstar_parts(spec, budget)
    logger.info(
        f"built {parts.graph.name}: {len(parts.graph.vertices)} vertices, {len(parts.graph.edges)} edges"
    )
    return parts.graph


def exterior_part(g: LabeledGraph) -> LabeledGraph:
    """G* minus the interior of its condensed wall."""
    return delete_vertices(g, wall_interior(g))


def _orientation_by_planarity(g: LabeledGraph) -> bool:
    """Planarity certificate that no (a–c, b–d) linkage exists outside W.

    Closing the terminals into the cycle a, b, c, d and adding a vertex on
    all four turns such a linkage into a K5 subdivision.
    """
    x = exterior_part(g)
    h = to_networkx(x)
    a, b, c, d = (x.terminal(t) for t in "abcd")
    apex = "__apex__"
    h.add_edges_from([(apex, a), (apex, b), (apex, c), (apex, d), (a, b), (b, c), (c, d), (d, a)])
    planar, _ = nx.check_planarity(h)
    return planar


def check_terminal_orientation(g: LabeledGraph, budget: Optional[int] = None) -> bool:
    """True iff every a–c path outside the wall interior separates b from d."""
    for letter in "abcd":
        if not g.has_terminal(letter):
            raise InputError(f"graph {g.name} has no terminal {letter}")
    if _orientation_by_planarity(g):
        return True
    x = exterior_part(g)
    linkage = first_linkage(x, (("a", "c"), ("b", "d")), NodeCounter(budget))
    return linkage is None


@dataclass
class ExteriorGadget:
    """Gadget hung off a condensed wall through its terminals.

    ``copy_edges[k]`` lists the edges of the k-th edge-disjoint copy; every
    copy is internally disjoint from the wall and from the other copies.
    """
    kind: str
    graph: LabeledGraph
    copy_edges: Tuple[FrozenSet[Edge], ...]
    connections: Dict[str, str] = field(default_factory=dict)


def _folded_gadget(kind: str, base_edges: List[Edge], copies: int, connections) -> ExteriorGadget:
    vertices = {x for e in base_edges for x in e}
    base = LabeledGraph.build(vertices, base_edges, name=kind)
    folded = r_fold(base, copies)
    per_copy = []
    for k in range(copies):
        edges = set()
        for u, v in base.edges:
            m = fold_midpoint(u, v, k)
            edges.add(edge_of(u, m))
            edges.add(edge_of(m, v))
        per_copy.append(frozenset(edges))
    return ExteriorGadget(kind, folded.renamed(kind), tuple(per_copy), dict(connections))


def cd_path_gadget(wall: LabeledGraph, copies: int, length: int = 3) -> ExteriorGadget:
    """``copies`` internally disjoint c–d paths of the given length."""
    if copies < 1 or length < 2:
        raise InputError("c-d gadget needs at least one copy of length >= 2")
    c, d = wall.terminal("c"), wall.terminal("d")
    origin = edge_label((c, d))
    vertices = {c, d}
    roles = {}
    per_copy = []
    for k in range(copies):
        inner = [f"cd{k}_{t}" for t in range(1, length)]
        for v in inner:
            roles[v] = Role.subdivision(origin)
        vertices.update(inner)
        per_copy.append(frozenset(path_edges([c, *inner, d])))
    edges = set().union(*per_copy)
    graph = LabeledGraph.build(vertices, edges, roles, name="cd_paths")
    return ExteriorGadget("cd_paths", graph, tuple(per_copy), {"c": c, "d": d})


def brick_gadget(wall: LabeledGraph, copies: int) -> ExteriorGadget:
    """Folded hexagon whose consecutive corners x1, x2, x3 reach c, b, d."""
    c, b, d = wall.terminal("c"), wall.terminal("b"), wall.terminal("d")
    hexagon = [f"x{k}" for k in range(1, 7)]
    edges = list(path_edges(hexagon + [hexagon[0]]))
    edges += [edge_of(c, "x1"), edge_of(b, "x2"), edge_of(d, "x3")]
    return _folded_gadget("brick", edges, copies, {"c": "x1", "b": "x2", "d": "x3"})


def double_brick_gadget(wall: LabeledGraph, copies: int) -> ExteriorGadget:
    """Folded B2 whose degree-2 vertices ya, yb, yc, yd reach a, b, c, d."""
    a, b, c, d = (wall.terminal(t) for t in "abcd")
    first = ["yS", "yc", "yb", "ye1", "ye2", "yT"]
    second = ["yT", "yf1", "yf2", "yd", "ya", "yS"]
    edges = set(path_edges(first + [first[0]])) | set(path_edges(second + [second[0]]))
    edges |= {edge_of(a, "ya"), edge_of(b, "yb"), edge_of(c, "yc"), edge_of(d, "yd")}
    return _folded_gadget("double_brick", sorted(edges), copies, {"a": "ya", "b": "yb", "c": "yc", "d": "yd"})


def attach_gadget(wall: LabeledGraph, gadget: ExteriorGadget) -> LabeledGraph:
    shared = wall.vertices & gadget.graph.vertices
    terminals = {wall.terminal(t) for t in "abcd" if wall.has_terminal(t)}
    if not shared <= terminals:
        raise InputError(f"gadget {gadget.kind} shares non-terminal vertices with the wall")
    return union_graphs(wall, gadget.graph, name=f"{wall.name}+{gadget.kind}")
