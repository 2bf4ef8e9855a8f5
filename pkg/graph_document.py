"""
Text format for labeled graphs and JSON certificates.

GraphDocument is line oriented:

    # format 1
    graph <name> v=<n> e=<m>
    v <id> <role>
    e <id> <id> <class>

Blank lines and lines starting with ``#`` are ignored.
"""
import json
import logging
import re
from enum import Enum
from typing import Any, Dict, FrozenSet, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field

from internal.errors import InputError, MalformedCertificateError, ParseError
from internal.utils import sorted_vertices, vertex_key
from models.embedding import Embedding, Linkage, Packing
from models.graph import Edge, EdgeClass, LabeledGraph, Role
from models.report import LemmaReport

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1

_HEADER = re.compile(r"^graph (\S+) v=(\d+) e=(\d+)$")


def serialize(g: LabeledGraph) -> str:
    if re.search(r"\s", g.name) or not g.name:
        raise InputError(f"graph name {g.name!r} cannot be written to a document")
    lines = [
        f"# format {FORMAT_VERSION}",
        f"graph {g.name} v={len(g.vertices)} e={len(g.edges)}",
    ]
    for v in sorted_vertices(g.vertices):
        lines.append(f"v {v} {g.roles[v].to_text()}")
    for u, v in sorted(g.edges, key=lambda e: (vertex_key(e[0]), vertex_key(e[1]))):
        lines.append(f"e {u} {v} {g.edge_classes[(u, v)].value}")
    return "\n".join(lines) + "\n"


def parse(text: str) -> LabeledGraph:
    header = None
    header_line = 0
    vertices: List[str] = []
    roles: Dict[str, Role] = {}
    edges: List[Tuple[str, str]] = []
    classes: Dict[Tuple[str, str], EdgeClass] = {}
    seen_edges = set()
    line_no = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            m = _HEADER.match(line)
            if not m:
                raise ParseError(line_no, f"expected 'graph <name> v=<n> e=<m>', got {line!r}")
            header = (m.group(1), int(m.group(2)), int(m.group(3)))
            header_line = line_no
            continue
        fields = line.split()
        if fields[0] == "v":
            if len(fields) != 3:
                raise ParseError(line_no, "vertex line needs an id and a role")
            _, vid, role_text = fields
            if vid in roles:
                raise ParseError(line_no, f"duplicate vertex id {vid}")
            if edges:
                raise ParseError(line_no, "vertex line after edge lines")
            try:
                roles[vid] = Role.from_text(role_text)
            except InputError as e:
                raise ParseError(line_no, str(e))
            vertices.append(vid)
        elif fields[0] == "e":
            if len(fields) != 4:
                raise ParseError(line_no, "edge line needs two endpoints and a class")
            _, u, v, class_text = fields
            if u == v:
                raise ParseError(line_no, f"loop at vertex {u}")
            for x in (u, v):
                if x not in roles:
                    raise ParseError(line_no, f"edge endpoint {x} is not a declared vertex")
            key = frozenset((u, v))
            if key in seen_edges:
                raise ParseError(line_no, f"duplicate edge {u}-{v}")
            seen_edges.add(key)
            try:
                classes[(u, v)] = EdgeClass.from_text(class_text)
            except InputError as e:
                raise ParseError(line_no, str(e))
            edges.append((u, v))
        else:
            raise ParseError(line_no, f"unknown record type {fields[0]!r}")
    if header is None:
        raise ParseError(max(line_no, 1), "missing graph header")
    name, n, m = header
    if n != len(vertices):
        raise ParseError(header_line, f"header announces {n} vertices, document has {len(vertices)}")
    if m != len(edges):
        raise ParseError(header_line, f"header announces {m} edges, document has {len(edges)}")
    try:
        return LabeledGraph.build(vertices, edges, roles, classes, name=name)
    except InputError as e:
        raise ParseError(header_line, str(e))


def read_graph(path: str) -> LabeledGraph:
    with open(path, "r", encoding="utf-8") as f:
        return parse(f.read())


def write_graph(g: LabeledGraph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(serialize(g))


class CertificateKind(str, Enum):
    EMBEDDING = "embedding"
    LINKAGE = "linkage"
    PACKING = "packing"
    LEMMA_REPORT = "lemma-report"


class EmbeddingPayload(BaseModel):
    pattern_id: str
    branch_map: List[Tuple[str, str]]
    path_map: Dict[str, List[str]]

    @classmethod
    def from_embedding(cls, e: Embedding) -> "EmbeddingPayload":
        return cls(
            pattern_id=e.pattern_id,
            branch_map=[(p, h) for p, h in e.branch_map.items()],
            path_map={chain_id: list(path) for chain_id, path in e.path_map.items()},
        )

    def to_embedding(self) -> Embedding:
        return Embedding(
            pattern_id=self.pattern_id,
            branch_map=dict(self.branch_map),
            path_map={chain_id: tuple(path) for chain_id, path in self.path_map.items()},
        )


class LinkagePayload(BaseModel):
    pab: List[str]
    pcd: List[str]


class PackingPayload(BaseModel):
    pattern_id: str
    embeddings: List[EmbeddingPayload] = Field(default_factory=list)


class CertificateDocument(BaseModel):
    """JSON sidecar holding one certificate and the name of its host graph."""

    kind: CertificateKind
    graph: Optional[str] = None
    embedding: Optional[EmbeddingPayload] = None
    linkage: Optional[LinkagePayload] = None
    linkages: Optional[List[LinkagePayload]] = None
    packing: Optional[PackingPayload] = None
    report: Optional[LemmaReport] = None

    model_config = ConfigDict(use_enum_values=False)

    @classmethod
    def of(cls, witness: Any, graph: Optional[str] = None) -> "CertificateDocument":
        if isinstance(witness, Embedding):
            return cls(kind=CertificateKind.EMBEDDING, graph=graph, embedding=EmbeddingPayload.from_embedding(witness))
        if isinstance(witness, Linkage):
            return cls(
                kind=CertificateKind.LINKAGE,
                graph=graph,
                linkage=LinkagePayload(pab=list(witness.pab), pcd=list(witness.pcd)),
            )
        if isinstance(witness, tuple) and witness and all(isinstance(x, Linkage) for x in witness):
            return cls(
                kind=CertificateKind.LINKAGE,
                graph=graph,
                linkages=[LinkagePayload(pab=list(x.pab), pcd=list(x.pcd)) for x in witness],
            )
        if isinstance(witness, Packing):
            return cls(
                kind=CertificateKind.PACKING,
                graph=graph,
                packing=PackingPayload(
                    pattern_id=witness.pattern_id,
                    embeddings=[EmbeddingPayload.from_embedding(e) for e in witness.embeddings],
                ),
            )
        if isinstance(witness, LemmaReport):
            return cls(kind=CertificateKind.LEMMA_REPORT, graph=graph, report=witness)
        raise InputError(f"cannot build a certificate from {type(witness).__name__}")

    def to_object(self) -> Union[Embedding, Linkage, Tuple[Linkage, ...], Packing, LemmaReport]:
        if self.kind is CertificateKind.EMBEDDING and self.embedding is not None:
            return self.embedding.to_embedding()
        if self.kind is CertificateKind.LINKAGE and self.linkage is not None:
            return Linkage(pab=tuple(self.linkage.pab), pcd=tuple(self.linkage.pcd))
        if self.kind is CertificateKind.LINKAGE and self.linkages:
            return tuple(Linkage(pab=tuple(x.pab), pcd=tuple(x.pcd)) for x in self.linkages)
        if self.kind is CertificateKind.PACKING and self.packing is not None:
            return Packing(self.packing.pattern_id, tuple(e.to_embedding() for e in self.packing.embeddings))
        if self.kind is CertificateKind.LEMMA_REPORT and self.report is not None:
            return self.report
        raise MalformedCertificateError(f"{self.kind.value} certificate has no payload")

    def referenced_vertices(self) -> FrozenSet[str]:
        found = set()
        embeddings = []
        if self.embedding is not None:
            embeddings.append(self.embedding)
        if self.packing is not None:
            embeddings.extend(self.packing.embeddings)
        for e in embeddings:
            found.update(h for _, h in e.branch_map)
            for path in e.path_map.values():
                found.update(path)
        for link in ([self.linkage] if self.linkage else []) + list(self.linkages or []):
            found.update(link.pab)
            found.update(link.pcd)
        return frozenset(found)

    def check_references(self, g: LabeledGraph) -> None:
        missing = self.referenced_vertices() - g.vertices
        if missing:
            raise MalformedCertificateError(
                f"certificate references vertices missing from {g.name}: {sorted_vertices(missing)[:5]}"
            )

    def edges(self) -> List[FrozenSet[Edge]]:
        """Edges of each certificate part, in overlay order."""
        obj = self.to_object()
        if isinstance(obj, Embedding):
            return [frozenset(obj.edges())]
        if isinstance(obj, Linkage):
            return [frozenset(obj.edges())]
        if isinstance(obj, tuple):
            return [frozenset(x.edges()) for x in obj]
        if isinstance(obj, Packing):
            return [frozenset(e.edges()) for e in obj.embeddings]
        return []


def certificate_payload(witness: Any, graph: Optional[str] = None) -> Dict[str, Any]:
    return CertificateDocument.of(witness, graph).model_dump(mode="json", exclude_none=True)


def read_certificate(path: str) -> CertificateDocument:
    with open(path, "r", encoding="utf-8") as f:
        try:
            return CertificateDocument.model_validate_json(f.read())
        except ValueError as e:
            raise InputError(f"{path}: not a certificate document: {e}")


def write_certificate(doc: CertificateDocument, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(doc.model_dump_json(indent=2, exclude_none=True))
        f.write("\n")


def dump_certificate(doc: CertificateDocument) -> str:
    return json.dumps(doc.model_dump(mode="json", exclude_none=True), indent=2, sort_keys=True)
