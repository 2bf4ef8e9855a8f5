"""
Drawn brick-wall embeddings in a few consecutive layers of a condensed wall.

Templates are written as vertex paths over symbolic addresses: ``a`` and
``b`` are terminals, ``zk`` is the k-th bottleneck of the chunk, ``vI.J`` is
drawn position I (0..11) of the chunk's J-th row and ``vI.J~vK.J`` walks a
row from I to K. Drawn positions are compressed per row onto the host's
actual positions, so a template fits any wall of at least its minimum size.
"""
import logging
import re
from dataclasses import dataclass, field
from functools import lru_cache
from math import ceil
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from generators import (
    ExteriorGadget,
    attach_gadget,
    bottleneck,
    brick_gadget,
    cd_path_gadget,
    double_brick_gadget,
    gen_condensed_wall,
    row_vertex,
)
from graph_ops import restricted_shortest_path
from internal.errors import ConstructionError, InputError
from models.embedding import Embedding, Packing
from models.graph import Edge, LabeledGraph, RoleKind, edge_of, path_edges
from models.specs import CondensedWallSpec
from services.embedding_service import lift_subdivision, verify_embedding, verify_packing
from services.pattern_service import get_pattern

logger = logging.getLogger(__name__)

DRAWN_WIDTH = 12

Address = Tuple  # ("a",), ("b",), ("z", k) or ("v", index, row)


@dataclass(frozen=True)
class FigureTemplate:
    figure_id: str
    pattern_id: str
    layers: int
    paths: Tuple[str, ...]
    exterior: Optional[str] = None

    @property
    def attachments(self) -> Tuple[str, ...]:
        return _ATTACHMENTS.get(self.exterior, ())


_ATTACHMENTS = {
    "cd_paths": ("c", "d"),
    "brick": ("d", "b", "c"),
    "double_brick": ("a", "b", "c", "d"),
}

TEMPLATES: Dict[str, FigureTemplate] = {
    "b3-layer": FigureTemplate(
        "b3-layer",
        "B3",
        1,
        (
            "z0 v2.0",
            "z0 v6.0",
            "z0 v10.0",
            "v1.0~v11.0",
            "z1 v1.0",
            "z1 v11.0",
        ),
    ),
    "b6-stack": FigureTemplate(
        "b6-stack",
        "B6",
        3,
        (
            "z0 v0.0 v1.0 z1 v5.0 v6.0 z0",
            "z0 v10.0~v6.0",
            "z1 v4.1 v5.1 z2",
            "v0.0 a v0.2",
            "v10.0 v11.0 b v11.2",
            "z2 v0.2 v1.2 z3 v7.2~v4.2 z2",
            "z3 v11.2~v7.2",
        ),
    ),
    "b7-cd": FigureTemplate(
        "b7-cd",
        "B7",
        5,
        (
            "z0 v2.0~v5.0 z1 v2.1~v5.1 z2 v4.2 v5.2 z3 v10.3 v11.3 z4 v4.4 v5.4 z5",
            "a v0.0~v2.0",
            "z0 v10.0 v11.0 b",
            "z1 v11.0",
            "v5.1~v11.1 b",
            "a v0.3~v3.3 z4",
            "v3.3 v4.3 z3",
            "v11.3 b",
            "a v0.4 v1.4 z5",
        ),
        exterior="cd_paths",
    ),
    "b8-brick": FigureTemplate(
        "b8-brick",
        "B8",
        3,
        (
            "z0 v10.0 v11.0 z1 v2.1 v3.1 z2 v10.2 v11.2 z3",
            "a v0.0~v3.0",
            "z0 v6.0~v3.0",
            "z1 v3.0",
            "v11.0 b v11.2",
            "a v0.2~v2.2",
            "v2.2 z2",
            "v2.2~v5.2 z3",
            "a v0.1 v1.1 v2.1",
        ),
        exterior="brick",
    ),
    "b9-double-brick": FigureTemplate(
        "b9-double-brick",
        "B9",
        3,
        (
            "z0 v0.0 v1.0 z1 v6.1 v7.1 z2 v0.2 v1.2 z3",
            "a v0.0",
            "a v0.2",
            "z0 v10.0 v11.0 b",
            "z1 v10.1 v11.1 b",
            "v7.1~v10.1",
            "z2 v4.2 v5.2 z3",
        ),
        exterior="double_brick",
    ),
}

_TOKEN = re.compile(r"^(?:(a|b)|z(\d+)|v(\d+)\.(\d+)(?:~v(\d+)\.(\d+))?)$")


def get_template(figure_id: str) -> FigureTemplate:
    if figure_id not in TEMPLATES:
        raise InputError(f"unknown figure template: {figure_id}")
    return TEMPLATES[figure_id]


def _expand(path_text: str) -> List[Address]:
    walk: List[Address] = []
    for token in path_text.split():
        m = _TOKEN.match(token)
        if not m:
            raise ConstructionError(f"bad template token {token!r}")
        terminal, z, i, j, k, j2 = m.groups()
        if terminal:
            walk.append((terminal,))
        elif z is not None:
            walk.append(("z", int(z)))
        elif k is None:
            walk.append(("v", int(i), int(j)))
        else:
            if j != j2:
                raise ConstructionError(f"row walk {token} changes rows")
            start, stop = int(i), int(k)
            step = 1 if stop >= start else -1
            walk.extend(("v", x, int(j)) for x in range(start, stop + step, step))
    return walk


@lru_cache(maxsize=None)
def template_edges(template: FigureTemplate) -> FrozenSet[Tuple[Address, Address]]:
    """Symbolic edges of a template, checked against the wall's adjacency rules."""
    edges = set()
    for text in template.paths:
        walk = _expand(text)
        for x, y in zip(walk, walk[1:]):
            _check_symbolic_edge(template, x, y)
            edges.add(tuple(sorted((x, y))))
    return frozenset(edges)


def _check_symbolic_edge(template: FigureTemplate, x: Address, y: Address) -> None:
    kinds = {x[0], y[0]}
    ok = False
    if kinds == {"v"}:
        ok = x[2] == y[2] and abs(x[1] - y[1]) == 1
    elif kinds == {"v", "z"}:
        v, z = (x, y) if x[0] == "v" else (y, x)
        ok = z[1] == (v[2] if v[1] % 2 == 0 else v[2] + 1)
    elif kinds == {"v", "a"}:
        ok = (x if x[0] == "v" else y)[1] == 0
    elif kinds == {"v", "b"}:
        ok = (x if x[0] == "v" else y)[1] == DRAWN_WIDTH - 1
    if not ok:
        raise ConstructionError(f"{template.figure_id}: {x} and {y} are not adjacent in a wall")


def _row_runs(template: FigureTemplate, row: int) -> List[List[int]]:
    edges = template_edges(template)
    used = sorted(
        {addr[1] for e in edges for addr in e if addr[0] == "v" and addr[2] == row}
    )
    runs: List[List[int]] = []
    for i in used:
        if runs and runs[-1][-1] == i - 1 and (("v", i - 1, row), ("v", i, row)) in edges:
            runs[-1].append(i)
        else:
            runs.append([i])
    return runs


def _greedy_positions(runs: Sequence[Sequence[int]]) -> Tuple[Dict[int, int], int]:
    placed: Dict[int, int] = {}
    last = 0
    for run in runs:
        p = last + 1
        # even drawn index sits on an odd position
        if (p % 2 == 1) != (run[0] % 2 == 0):
            p += 1
        for t, i in enumerate(run):
            placed[i] = p + t
        last = p + len(run) - 1
    return placed, last


def _b_adjacent(template: FigureTemplate, row: int) -> bool:
    return any(
        {e[0][0], e[1][0]} == {"v", "b"} and ("v", DRAWN_WIDTH - 1, row) in e
        for e in template_edges(template)
    )


def row_positions(template: FigureTemplate, size: int) -> Dict[Tuple[int, int], int]:
    """Host row position of every drawn (index, row) on a wall of ``size``."""
    positions = {}
    for row in range(template.layers):
        runs = _row_runs(template, row)
        placed, end = _greedy_positions(runs)
        if end > 2 * size:
            raise InputError(
                f"{template.figure_id} needs rows of {end} positions, wall of size {size} has {2 * size}"
            )
        if runs and _b_adjacent(template, row):
            last = runs[-1]
            start = 2 * size - len(last) + 1
            for t, i in enumerate(last):
                placed[i] = start + t
        for i, p in placed.items():
            positions[(i, row)] = p
    return positions


def min_host_size(figure_id: str) -> int:
    template = get_template(figure_id)
    widest = max(_greedy_positions(_row_runs(template, row))[1] for row in range(template.layers))
    return max(template.layers, ceil(widest / 2))


def wall_size(host: LabeledGraph) -> int:
    zs = host.bottlenecks()
    if not zs:
        raise InputError(f"graph {host.name} has no bottleneck vertices")
    return max(zs)


@dataclass(frozen=True)
class FigurePlacement:
    """A template mapped onto layers ``offset+1 .. offset+layers`` of a host.

    ``attachments`` names the terminals an exterior part has to supply;
    ``embedding`` is set once the template is complete.
    """
    figure_id: str
    pattern_id: str
    offset: int
    edges: FrozenSet[Edge]
    vertices: FrozenSet[str]
    top: str
    bottom: str
    attachments: Tuple[str, ...] = ()
    embedding: Optional[Embedding] = None
    completion: FrozenSet[Edge] = field(default_factory=frozenset)


def place_figure(figure_id: str, offset: int, host: LabeledGraph) -> FigurePlacement:
    template = get_template(figure_id)
    size = wall_size(host)
    if offset < 0 or offset + template.layers > size:
        raise InputError(
            f"{figure_id} needs layers {offset + 1}..{offset + template.layers}, wall has {size}"
        )
    if size < min_host_size(figure_id):
        raise InputError(f"{figure_id} needs a wall of size at least {min_host_size(figure_id)}, got {size}")
    positions = row_positions(template, size)

    def host_id(addr: Address) -> str:
        if addr[0] in ("a", "b"):
            return host.terminal(addr[0])
        if addr[0] == "z":
            return bottleneck(offset + addr[1])
        return row_vertex(offset + addr[2] + 1, positions[(addr[1], addr[2])])

    edges = set()
    for x, y in template_edges(template):
        e = edge_of(host_id(x), host_id(y))
        if e not in host.edges:
            raise InputError(f"{figure_id} at offset {offset}: host {host.name} lacks edge {e[0]}-{e[1]}")
        edges.add(e)
    vertices = frozenset(v for e in edges for v in e)
    return FigurePlacement(
        figure_id=figure_id,
        pattern_id=template.pattern_id,
        offset=offset,
        edges=frozenset(edges),
        vertices=vertices,
        top=bottleneck(offset),
        bottom=bottleneck(offset + template.layers),
        attachments=template.attachments,
    )


def _wall_vertices(host: LabeledGraph) -> Set[str]:
    return {
        v for v in host.vertices if host.roles[v].kind in (RoleKind.ROW_VERTEX, RoleKind.BOTTLENECK)
    }


def exterior_completion(
    placement: FigurePlacement,
    host: LabeledGraph,
    gadget: ExteriorGadget,
    copy: int,
    blocked_edges: Iterable[Edge] = (),
) -> Optional[FrozenSet[Edge]]:
    """Routes from the chunk to c and d inside the wall plus one gadget copy.

    Returns None when a route is blocked.
    """
    blocked = set(blocked_edges) | set(placement.edges)
    outside = host.vertices - _wall_vertices(host)
    chunk = set(placement.vertices)
    copy_edges = gadget.copy_edges[copy]
    if copy_edges & blocked:
        return None
    added: Set[Edge] = set()
    taken: Set[str] = set()
    for end, letter in ((placement.top, "c"), (placement.bottom, "d")):
        target = host.terminal(letter)
        if end == target:
            continue
        route = restricted_shortest_path(
            host,
            end,
            target,
            blocked_vertices=(chunk - {end}) | outside | taken,
            blocked_edges=blocked | added,
        )
        if route is None:
            return None
        added.update(path_edges(route))
        taken.update(route)
    return frozenset(added | copy_edges)


def construct_figure_embedding(
    figure_id: str,
    offset: int,
    host: LabeledGraph,
    gadget: Optional[ExteriorGadget] = None,
    copy: int = 0,
    blocked_edges: Iterable[Edge] = (),
) -> FigurePlacement:
    """Place a template and, when possible, lift it to a verified embedding.

    Templates with an exterior part only get an embedding when ``gadget``
    is attached to ``host``.
    """
    placement = place_figure(figure_id, offset, host)
    pattern = get_pattern(placement.pattern_id)
    completion: FrozenSet[Edge] = frozenset()
    if placement.attachments:
        if gadget is None:
            return placement
        completion = exterior_completion(placement, host, gadget, copy, blocked_edges)
        if completion is None:
            raise ConstructionError(f"{figure_id} at offset {offset}: no free route to the exterior")
    embedding = lift_subdivision(host, placement.edges | completion, pattern)
    if embedding is None or not verify_embedding(host, embedding, pattern):
        raise ConstructionError(f"{figure_id} at offset {offset} is not a subdivision of {pattern.pattern_id}")
    return FigurePlacement(
        figure_id=placement.figure_id,
        pattern_id=placement.pattern_id,
        offset=placement.offset,
        edges=placement.edges,
        vertices=placement.vertices,
        top=placement.top,
        bottom=placement.bottom,
        attachments=placement.attachments,
        embedding=embedding,
        completion=completion,
    )


_GADGETS = {
    "cd_paths": cd_path_gadget,
    "brick": brick_gadget,
    "double_brick": double_brick_gadget,
}


def packing_host_size(figure_id: str, n: int, r: int) -> int:
    template = get_template(figure_id)
    return max(template.layers * (n + r), min_host_size(figure_id))


def build_figure_host(
    figure_id: str, size: int, copies: int = 1, jump_edges: bool = False
) -> Tuple[LabeledGraph, Optional[ExteriorGadget]]:
    """Condensed wall of ``size`` with the template's exterior gadget attached."""
    template = get_template(figure_id)
    wall = gen_condensed_wall(CondensedWallSpec(size, jump_edges=jump_edges))
    if template.exterior is None:
        return wall, None
    gadget = _GADGETS[template.exterior](wall, copies)
    return attach_gadget(wall, gadget), gadget


def build_packing_host(figure_id: str, n: int, r: int) -> Tuple[LabeledGraph, Optional[ExteriorGadget]]:
    if n < 1 or r < 0:
        raise InputError(f"packing needs n >= 1 and r >= 0, got n={n}, r={r}")
    return build_figure_host(figure_id, packing_host_size(figure_id, n, r), copies=n + r)


class TemplatePacker:
    """Stacks one template per chunk of consecutive layers.

    Template-only placements are computed once per chunk; exterior
    completions are rerouted for every deletion set.
    """

    def __init__(self, figure_id: str, host: LabeledGraph, gadget: Optional[ExteriorGadget] = None):
        self.template = get_template(figure_id)
        self.host = host
        self.gadget = gadget
        self.pattern = get_pattern(self.template.pattern_id)
        size = wall_size(host)
        self.placements = [
            place_figure(figure_id, k * self.template.layers, host)
            for k in range(size // self.template.layers)
        ]
        self._lifted: Dict[int, Embedding] = {}

    def _template_embedding(self, index: int) -> Embedding:
        if index not in self._lifted:
            placement = self.placements[index]
            embedding = lift_subdivision(self.host, placement.edges, self.pattern)
            if embedding is None:
                raise ConstructionError(
                    f"{self.template.figure_id} at offset {placement.offset} is not a subdivision of {self.pattern.pattern_id}"
                )
            self._lifted[index] = embedding
        return self._lifted[index]

    def pack(self, n: int, deleted: Iterable[Edge] = ()) -> Optional[Packing]:
        """``n`` edge-disjoint embeddings avoiding ``deleted``, or None."""
        deleted = {edge_of(*e) for e in deleted}
        intact = [i for i, p in enumerate(self.placements) if not p.edges & deleted]
        if len(intact) < n:
            logger.debug(f"{self.template.figure_id}: only {len(intact)} intact chunks")
            return None
        chosen = intact[:n]
        if not self.template.attachments:
            embeddings = tuple(self._template_embedding(i) for i in chosen)
        else:
            embeddings = self._pack_with_exterior(chosen, deleted)
            if embeddings is None:
                return None
        packing = Packing(self.pattern.pattern_id, embeddings)
        if not verify_packing(self.host, packing, self.pattern):
            raise ConstructionError(f"{self.template.figure_id} packing is not edge-disjoint")
        return packing

    def _pack_with_exterior(self, chosen: List[int], deleted: Set[Edge]) -> Optional[Tuple[Embedding, ...]]:
        if self.gadget is None:
            raise InputError(f"{self.template.figure_id} needs an exterior {self.template.exterior} gadget")
        reserved = set().union(*(self.placements[i].edges for i in chosen))
        used: Set[Edge] = set()
        free_copies = [
            k for k, edges in enumerate(self.gadget.copy_edges) if not edges & deleted
        ]
        embeddings = []
        for i in chosen:
            placement = self.placements[i]
            completion = None
            while free_copies and completion is None:
                copy = free_copies.pop(0)
                completion = exterior_completion(
                    placement, self.host, self.gadget, copy, deleted | used | (reserved - placement.edges)
                )
            if completion is None:
                return None
            embedding = lift_subdivision(self.host, placement.edges | completion, self.pattern)
            if embedding is None:
                raise ConstructionError(
                    f"{self.template.figure_id} at offset {placement.offset} with its exterior completion "
                    f"is not a subdivision of {self.pattern.pattern_id}"
                )
            used |= completion
            embeddings.append(embedding)
        return tuple(embeddings)
