"""
DOT text for labeled graphs, with certificates drawn as coloured overlays.
"""
import logging
from typing import Iterable, List, Sequence, Union

from graph_document import CertificateDocument
from internal.errors import MalformedCertificateError
from internal.utils import sorted_vertices, vertex_key
from models.graph import Edge, EdgeClass, LabeledGraph, RoleKind, edge_of

logger = logging.getLogger(__name__)

OVERLAY_COLORS = ("red", "blue", "darkgreen", "orange", "purple")

Overlay = Union[CertificateDocument, Iterable[Edge]]


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _node_attrs(g: LabeledGraph, v: str) -> str:
    role = g.roles[v]
    label = v if role.terminal in (None, v) else f"{v} ({role.terminal})"
    attrs = [f"label={_quote(label)}"]
    if role.kind is RoleKind.TERMINAL:
        attrs.append("style=filled")
        attrs.append("fillcolor=lightgray")
    elif role.kind is RoleKind.BOTTLENECK:
        attrs.append("shape=doublecircle")
        if role.terminal is not None:
            attrs.append("style=filled")
            attrs.append("fillcolor=lightgray")
    elif role.kind is RoleKind.SUBDIVISION_VERTEX:
        attrs.append("shape=point")
    return ", ".join(attrs)


def _overlay_edges(g: LabeledGraph, overlay: Overlay) -> List[frozenset]:
    if isinstance(overlay, CertificateDocument):
        overlay.check_references(g)
        parts = overlay.edges()
    else:
        parts = [frozenset(edge_of(*e) for e in overlay)]
    for edges in parts:
        missing = {x for e in edges for x in e} - g.vertices
        if missing:
            raise MalformedCertificateError(f"overlay references vertices missing from {g.name}: {sorted_vertices(missing)[:5]}")
        absent = edges - g.edges
        if absent:
            raise MalformedCertificateError(f"overlay references edges missing from {g.name}: {sorted(absent)[:3]}")
    return parts


def export_dot(g: LabeledGraph, overlays: Sequence[Overlay] = ()) -> str:
    """DOT text for ``g``; overlay parts get colours in order of appearance.

    A certificate with several parts (a packing, a linkage pair) uses one
    colour per part. An edge in more than one part keeps the first colour.
    """
    parts: List[frozenset] = []
    for overlay in overlays:
        parts.extend(_overlay_edges(g, overlay))
    color_of = {}
    for index, edges in enumerate(parts):
        color = OVERLAY_COLORS[index % len(OVERLAY_COLORS)]
        for e in edges:
            color_of.setdefault(e, color)

    lines = [f"graph {_quote(g.name)} {{", "    node [shape=circle];"]
    for v in sorted_vertices(g.vertices):
        lines.append(f"    {_quote(v)} [{_node_attrs(g, v)}];")
    for e in sorted(g.edges, key=lambda x: (vertex_key(x[0]), vertex_key(x[1]))):
        attrs = []
        if g.edge_classes[e] is EdgeClass.JUMP_EDGE:
            attrs.append("style=dashed")
        if e in color_of:
            attrs.append(f"color={color_of[e]}")
            attrs.append("penwidth=2")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"    {_quote(e[0])} -- {_quote(e[1])}{suffix};")
    lines.append("}")
    logger.debug(f"DOT for {g.name}: {len(g.vertices)} nodes, {len(g.edges)} edges, {len(parts)} overlay parts")
    return "\n".join(lines) + "\n"
