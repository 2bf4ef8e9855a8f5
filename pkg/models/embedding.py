from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple

from models.graph import Edge, LabeledGraph, Path, path_edges


@dataclass(frozen=True)
class PatternChain:
    """A maximal path of the elementary pattern between two branch vertices."""
    chain_id: str
    ends: Tuple[str, str]
    inner: Tuple[str, ...] = ()

    @property
    def min_length(self) -> int:
        return len(self.inner) + 1

    @property
    def elementary_vertices(self) -> FrozenSet[str]:
        return frozenset(self.ends) | frozenset(self.inner)


@dataclass(frozen=True)
class Pattern:
    """Reduced form of an elementary pattern graph.

    Topological-minor containment of ``graph`` in a host is containment of
    ``branch_vertices`` joined by internally disjoint host paths, one per
    chain, each at least ``min_length`` long.
    """
    pattern_id: str
    graph: LabeledGraph
    branch_vertices: Tuple[str, ...]
    chains: Tuple[PatternChain, ...]

    def chain(self, chain_id: str) -> PatternChain:
        for ch in self.chains:
            if ch.chain_id == chain_id:
                return ch
        raise KeyError(chain_id)

    def chains_at(self, vertex: str) -> List[PatternChain]:
        return [ch for ch in self.chains if vertex in ch.ends]

    def degree(self, vertex: str) -> int:
        return sum((ch.ends[0] == vertex) + (ch.ends[1] == vertex) for ch in self.chains)

    @property
    def min_vertices(self) -> int:
        return len(self.branch_vertices) + sum(len(ch.inner) for ch in self.chains)

    @property
    def min_edges(self) -> int:
        return sum(ch.min_length for ch in self.chains)


@dataclass(frozen=True)
class Embedding:
    """Branch-vertex map plus one host path per pattern chain."""
    pattern_id: str
    branch_map: Mapping[str, str]
    path_map: Mapping[str, Path]

    def edges(self) -> FrozenSet[Edge]:
        return frozenset(e for path in self.path_map.values() for e in path_edges(path))

    def vertices(self) -> FrozenSet[str]:
        return frozenset(v for path in self.path_map.values() for v in path) | frozenset(
            self.branch_map.values()
        )

    def key(self) -> Tuple:
        """Identity up to rerouting-equivalence: branch map plus path edge sets."""
        return (
            tuple(sorted(self.branch_map.items())),
            frozenset(frozenset(path_edges(p)) for p in self.path_map.values()),
        )


@dataclass(frozen=True)
class Linkage:
    """Vertex-disjoint a–b and c–d paths."""
    pab: Path
    pcd: Path

    def edges(self) -> FrozenSet[Edge]:
        return frozenset(path_edges(self.pab)) | frozenset(path_edges(self.pcd))


@dataclass(frozen=True)
class Packing:
    pattern_id: str
    embeddings: Tuple[Embedding, ...] = ()

    def __len__(self) -> int:
        return len(self.embeddings)


@dataclass(frozen=True)
class PartConstraint:
    """Image of the pattern part spanned by ``vertices`` must avoid ``avoid``.

    Branch vertices in the part and chains lying wholly inside it are bound
    by the constraint.
    """
    vertices: FrozenSet[str]
    avoid: FrozenSet[str]


@dataclass(frozen=True)
class SearchConstraints:
    forbidden: FrozenSet[str] = frozenset()
    pins: Mapping[str, str] = field(default_factory=dict)
    allowed: Mapping[str, FrozenSet[str]] = field(default_factory=dict)
    within: Optional[FrozenSet[Edge]] = None
    parts: Tuple[PartConstraint, ...] = ()
    budget: Optional[int] = None
    max_witnesses: Optional[int] = None


class SearchStatus(str, Enum):
    FOUND = "found"
    NONE = "none"
    BUDGET_EXCEEDED = "budget_exceeded"


@dataclass
class SearchStats:
    nodes: int = 0
    exhausted: bool = False
    witnesses: int = 0
    certificate: str = ""


@dataclass
class SearchResult:
    status: SearchStatus
    stats: SearchStats
    embedding: Optional[Embedding] = None
    linkage: Optional[Linkage] = None
    linkages: Optional[Tuple[Linkage, Linkage]] = None
    packing: Optional[Packing] = None

    @property
    def found(self) -> bool:
        return self.status is SearchStatus.FOUND

    @property
    def exhausted_none(self) -> bool:
        return self.status is SearchStatus.NONE and self.stats.exhausted

    def witness(self) -> Optional[object]:
        for value in (self.embedding, self.linkage, self.linkages, self.packing):
            if value is not None:
                return value
        return None
