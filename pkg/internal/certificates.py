"""
Certificate checkers for embeddings and linkages.

Each checker returns None for a valid certificate or a short reason string.
Dangling ids raise MalformedCertificateError instead.
"""
from typing import Optional, Sequence

from internal.errors import MalformedCertificateError
from models.embedding import Embedding, Linkage, Pattern
from models.graph import LabeledGraph, edge_of


def _check_path_shape(host: LabeledGraph, path: Sequence[str], what: str) -> Optional[str]:
    if len(path) < 2:
        return f"{what} has fewer than two vertices"
    if len(set(path)) != len(path):
        return f"{what} repeats a vertex"
    for i in range(len(path) - 1):
        if not host.has_edge(path[i], path[i + 1]):
            return f"{what} uses non-edge {path[i]}-{path[i + 1]}"
    return None


def _require_vertices(host: LabeledGraph, vertices, what: str) -> None:
    missing = [v for v in vertices if v not in host.vertices]
    if missing:
        raise MalformedCertificateError(f"{what} references unknown host vertices {missing[:5]}")


def check_embedding(host: LabeledGraph, embedding: Embedding, pattern: Pattern) -> Optional[str]:
    branch = set(pattern.branch_vertices)
    chain_ids = {ch.chain_id for ch in pattern.chains}
    extra_branch = set(embedding.branch_map) - branch
    if extra_branch:
        raise MalformedCertificateError(f"branch map names unknown pattern vertices {sorted(extra_branch)}")
    extra_chains = set(embedding.path_map) - chain_ids
    if extra_chains:
        raise MalformedCertificateError(f"path map names unknown pattern edges {sorted(extra_chains)}")
    _require_vertices(host, embedding.branch_map.values(), "branch map")
    for chain_id, path in embedding.path_map.items():
        _require_vertices(host, path, f"path {chain_id}")

    if set(embedding.branch_map) != branch:
        return "branch map is not total"
    if set(embedding.path_map) != chain_ids:
        return "path map is not total"
    images = list(embedding.branch_map.values())
    if len(set(images)) != len(images):
        return "branch map is not injective"
    image_set = set(images)

    inner_seen = set()
    edges_seen = set()
    for ch in pattern.chains:
        path = embedding.path_map[ch.chain_id]
        reason = _check_path_shape(host, path, f"path {ch.chain_id}")
        if reason:
            return reason
        start, end = embedding.branch_map[ch.ends[0]], embedding.branch_map[ch.ends[1]]
        if (path[0], path[-1]) != (start, end):
            return f"path {ch.chain_id} does not join the images of {ch.ends[0]} and {ch.ends[1]}"
        if len(path) - 1 < ch.min_length:
            return f"path {ch.chain_id} is shorter than {ch.min_length}"
        for v in path[1:-1]:
            if v in image_set:
                return f"path {ch.chain_id} passes through branch image {v}"
            if v in inner_seen:
                return f"paths share inner vertex {v}"
            inner_seen.add(v)
        for i in range(len(path) - 1):
            e = edge_of(path[i], path[i + 1])
            if e in edges_seen:
                return f"edge {e[0]}-{e[1]} used by two paths"
            edges_seen.add(e)
    return None


def check_linkage(host: LabeledGraph, linkage: Linkage, pairs=(("a", "b"), ("c", "d"))) -> Optional[str]:
    _require_vertices(host, linkage.pab, "a-b path")
    _require_vertices(host, linkage.pcd, "c-d path")
    for path, (s, t), what in ((linkage.pab, pairs[0], "first path"), (linkage.pcd, pairs[1], "second path")):
        reason = _check_path_shape(host, path, what)
        if reason:
            return reason
        if {path[0], path[-1]} != {host.terminal(s), host.terminal(t)}:
            return f"{what} does not join {s} and {t}"
    if set(linkage.pab) & set(linkage.pcd):
        return "linkage paths share a vertex"
    return None
