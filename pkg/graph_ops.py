"""
Transformations on LabeledGraph: subdivision, r-fold, identification,
deletion and union, plus the bridge to networkx.
"""
import logging
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from internal.errors import InputError, RoleConflictError
from internal.utils import sorted_vertices, vertex_key
from models.graph import Edge, EdgeClass, LabeledGraph, Path, Role, edge_of

logger = logging.getLogger(__name__)


def edge_label(edge: Edge) -> str:
    u, v = edge_of(*edge)
    return f"{u}~{v}"


def subdivision_ids(edge: Edge, count: int) -> List[str]:
    """Inner vertex ids placed on ``edge``, ordered from its first endpoint."""
    label = edge_label(edge)
    return [f"s[{label}]{k}" for k in range(1, count + 1)]


def fold_midpoint(u: str, v: str, copy: int) -> str:
    return f"m[{edge_label((u, v))}]{copy}"


def _rebuild(g: LabeledGraph, vertices, edges, roles, classes, name=None) -> LabeledGraph:
    return LabeledGraph.build(vertices, edges, roles, classes, name=name or g.name)


def subdivide_edge(g: LabeledGraph, edge: Tuple[str, str], count: int) -> LabeledGraph:
    """Replace ``edge`` by a path with ``count`` new inner vertices."""
    if count < 0:
        raise InputError(f"subdivision count must be non-negative, got {count}")
    e = edge_of(*edge)
    if e not in g.edges:
        raise InputError(f"unknown edge {edge[0]}-{edge[1]}")
    if count == 0:
        return g
    inner = subdivision_ids(e, count)
    clash = [v for v in inner if v in g.vertices]
    if clash:
        raise InputError(f"subdivision vertex ids already in use: {clash}")
    chain = [e[0], *inner, e[1]]
    edges = set(g.edges)
    edges.discard(e)
    edges.update(edge_of(chain[i], chain[i + 1]) for i in range(len(chain) - 1))
    roles = dict(g.roles)
    origin = edge_label(e)
    for v in inner:
        roles[v] = Role.subdivision(origin)
    classes = {x: c for x, c in g.edge_classes.items() if x != e}
    return _rebuild(g, g.vertices | set(inner), edges, roles, classes)


def subdivide_edges(g: LabeledGraph, plan: Dict[Edge, int]) -> LabeledGraph:
    for edge in sorted(plan, key=lambda e: (vertex_key(edge_of(*e)[0]), vertex_key(edge_of(*e)[1]))):
        g = subdivide_edge(g, edge, plan[edge])
    return g


def r_fold(g: LabeledGraph, r: int) -> LabeledGraph:
    """Replace every edge uv by ``r`` internally disjoint paths u–m–v."""
    if r < 1:
        raise InputError(f"r-fold multiplicity must be at least 1, got {r}")
    vertices = set(g.vertices)
    edges = set()
    roles = dict(g.roles)
    for u, v in g.edges:
        origin = edge_label((u, v))
        for k in range(r):
            m = fold_midpoint(u, v, k)
            if m in vertices:
                raise InputError(f"fold midpoint id {m} already in use")
            vertices.add(m)
            roles[m] = Role.subdivision(origin)
            edges.add(edge_of(u, m))
            edges.add(edge_of(m, v))
    return _rebuild(g, vertices, edges, roles, {}, name=f"{g.name}^{r}")


def bundle_paths(g: LabeledGraph, edge: Edge, r: int) -> List[Path]:
    """The ``r`` fold paths standing for an original edge, in copy order."""
    u, v = edge_of(*edge)
    return [(u, fold_midpoint(u, v, k), v) for k in range(r)]


def _merge_roles(first: Role, second: Role, where: str) -> Role:
    if first.is_plain:
        return second
    if second.is_plain or first == second:
        return first
    raise RoleConflictError(f"cannot merge roles {first.to_text()} and {second.to_text()} at {where}")


def identify_vertices(g: LabeledGraph, u: str, v: str) -> LabeledGraph:
    """Merge ``v`` into ``u``; parallel edges collapse and the id ``u`` survives."""
    if u == v:
        raise InputError("cannot identify a vertex with itself")
    for x in (u, v):
        if x not in g.vertices:
            raise InputError(f"unknown vertex {x}")
    merged_role = _merge_roles(g.roles[u], g.roles[v], f"{u}/{v}")
    edges = set()
    classes: Dict[Edge, EdgeClass] = {}
    for (x, y), edge_class in g.edge_classes.items():
        x2 = u if x == v else x
        y2 = u if y == v else y
        if x2 == y2:
            continue
        e = edge_of(x2, y2)
        edges.add(e)
        if classes.get(e, EdgeClass.PLAIN) is EdgeClass.PLAIN:
            classes[e] = edge_class
    roles = {x: r for x, r in g.roles.items() if x != v}
    roles[u] = merged_role
    return _rebuild(g, g.vertices - {v}, edges, roles, classes)


def delete_edges(g: LabeledGraph, edges: Iterable[Tuple[str, str]]) -> LabeledGraph:
    doomed = {edge_of(*e) for e in edges}
    unknown = doomed - g.edges
    if unknown:
        raise InputError(f"unknown edges: {sorted(unknown)}")
    if not doomed:
        return g
    classes = {e: c for e, c in g.edge_classes.items() if e not in doomed}
    return _rebuild(g, g.vertices, g.edges - doomed, g.roles, classes)


def delete_vertices(g: LabeledGraph, vertices: Iterable[str]) -> LabeledGraph:
    doomed = set(vertices)
    unknown = doomed - g.vertices
    if unknown:
        raise InputError(f"unknown vertices: {sorted_vertices(unknown)}")
    if not doomed:
        return g
    edges = {e for e in g.edges if e[0] not in doomed and e[1] not in doomed}
    roles = {v: r for v, r in g.roles.items() if v not in doomed}
    classes = {e: c for e, c in g.edge_classes.items() if e in edges}
    return _rebuild(g, g.vertices - doomed, edges, roles, classes)


def union_graphs(first: LabeledGraph, second: LabeledGraph, name: Optional[str] = None) -> LabeledGraph:
    """Union on shared vertex ids; roles merge like identification does."""
    roles = dict(first.roles)
    for v, role in second.roles.items():
        roles[v] = _merge_roles(roles[v], role, v) if v in roles else role
    classes = dict(first.edge_classes)
    for e, edge_class in second.edge_classes.items():
        if classes.get(e, EdgeClass.PLAIN) is EdgeClass.PLAIN:
            classes[e] = edge_class
    return LabeledGraph.build(
        first.vertices | second.vertices,
        first.edges | second.edges,
        roles,
        classes,
        name=name or first.name,
    )


def induced_subgraph(g: LabeledGraph, vertices: Iterable[str]) -> LabeledGraph:
    keep = set(vertices)
    return delete_vertices(g, g.vertices - keep)


def edge_subgraph(g: LabeledGraph, edges: Iterable[Tuple[str, str]], name: Optional[str] = None) -> LabeledGraph:
    """Subgraph spanned by ``edges``; roles and classes carry over."""
    chosen = {edge_of(*e) for e in edges}
    unknown = chosen - g.edges
    if unknown:
        raise InputError(f"unknown edges: {sorted(unknown)}")
    vertices = {x for e in chosen for x in e}
    return LabeledGraph.build(
        vertices,
        chosen,
        {v: g.roles[v] for v in vertices},
        {e: g.edge_classes[e] for e in chosen},
        name=name or g.name,
    )


def is_path(g: LabeledGraph, path: Sequence[str]) -> bool:
    if len(path) < 2 or len(set(path)) != len(path):
        return False
    if any(v not in g.vertices for v in path):
        return False
    return all(g.has_edge(path[i], path[i + 1]) for i in range(len(path) - 1))


def to_networkx(g: LabeledGraph) -> nx.Graph:
    """Plain networkx copy with nodes and edges inserted in canonical order."""
    h = nx.Graph()
    for v in sorted_vertices(g.vertices):
        h.add_node(v, role=g.roles[v].to_text())
    for u, v in sorted(g.edges, key=lambda e: (vertex_key(e[0]), vertex_key(e[1]))):
        h.add_edge(u, v, edge_class=g.edge_classes[(u, v)].value)
    return h


def restricted_shortest_path(
    g: LabeledGraph,
    source: str,
    target: str,
    blocked_vertices: Iterable[str] = (),
    blocked_edges: Iterable[Edge] = (),
) -> Optional[Path]:
    """Shortest source–target path avoiding the blocked members, or None."""
    h = to_networkx(g)
    blocked = set(blocked_vertices) - {source, target}
    view = nx.restricted_view(h, blocked, list(blocked_edges))
    try:
        return tuple(nx.shortest_path(view, source, target))
    except (nx.NetworkXNoPath, nx.NodeNotFound):
        return None
