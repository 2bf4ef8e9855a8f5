import re

import pytest

from dot_export import export_dot
from generators import gen_condensed_wall
from graph_document import CertificateDocument
from internal.errors import MalformedCertificateError
from models.graph import LabeledGraph
from models.specs import CondensedWallSpec
from services.embedding_service import find_linkage

_ID = r'"(?:[^"\\]|\\.)*"'
_ATTRS = r"(?: \[[a-z]+=(?:[A-Za-z0-9]+|" + _ID + r")(?:, [a-z]+=(?:[A-Za-z0-9]+|" + _ID + r"))*\])?"
_NODE = re.compile(rf"^    {_ID}{_ATTRS};$")
_EDGE = re.compile(rf"^    {_ID} -- {_ID}{_ATTRS};$")


def well_formed(text):
    lines = text.rstrip("\n").split("\n")
    assert re.match(rf"^graph {_ID} \{{$", lines[0])
    assert lines[1] == "    node [shape=circle];"
    assert lines[-1] == "}"
    for line in lines[2:-1]:
        assert _NODE.match(line) or _EDGE.match(line), line
    return lines


def test_condensed_wall_counts():
    w = gen_condensed_wall(CondensedWallSpec(5))
    lines = well_formed(export_dot(w))
    edges = [l for l in lines if " -- " in l]
    nodes = [l for l in lines[2:-1] if " -- " not in l]
    assert len(nodes) == 58
    assert len(edges) == 110
    assert sum("style=dashed" in l for l in edges) == 5


def test_terminals_and_bottlenecks_are_marked():
    w = gen_condensed_wall(CondensedWallSpec(2))
    text = export_dot(w)
    assert '"a" [label="a", style=filled, fillcolor=lightgray];' in text
    assert '"z0" [label="z0 (c)", shape=doublecircle, style=filled, fillcolor=lightgray];' in text
    assert '"z1" [label="z1", shape=doublecircle];' in text


def test_overlay_colours_exactly_the_certificate():
    w = gen_condensed_wall(CondensedWallSpec(2))
    linkage = find_linkage(w).linkage
    lines = well_formed(export_dot(w, [CertificateDocument.of(linkage, w.name)]))
    red = [l for l in lines if "color=red" in l]
    assert len(red) == len(linkage.edges())
    assert all("penwidth=2" in l for l in red)
    assert not any("color=blue" in l for l in lines)


def test_edge_list_overlays():
    w = gen_condensed_wall(CondensedWallSpec(1))
    text = export_dot(w, [[("z0", "z1")], [("a", "u1_1")]])
    assert '"z0" -- "z1" [style=dashed, color=red, penwidth=2];' in text
    assert "color=blue" in text


def test_empty_graph():
    text = export_dot(LabeledGraph.build([], [], name="empty"))
    assert text == 'graph "empty" {\n    node [shape=circle];\n}\n'


def test_overlay_must_fit_the_graph():
    w = gen_condensed_wall(CondensedWallSpec(1))
    with pytest.raises(MalformedCertificateError):
        export_dot(w, [[("a", "nowhere")]])
    with pytest.raises(MalformedCertificateError):
        export_dot(w, [[("a", "b")]])
    big = gen_condensed_wall(CondensedWallSpec(3))
    doc = CertificateDocument.of(find_linkage(big).linkage, big.name)
    with pytest.raises(MalformedCertificateError):
        export_dot(w, [doc])
