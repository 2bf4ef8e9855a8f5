from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Dict, FrozenSet, Iterable, Mapping, Optional, Tuple

from internal.errors import InputError
from internal.utils import vertex_key

Edge = Tuple[str, str]
Path = Tuple[str, ...]

TERMINAL_LETTERS = ("a", "b", "c", "d")


def edge_of(u: str, v: str) -> Edge:
    """Normalized undirected edge: endpoints in canonical vertex order."""
    if vertex_key(u) <= vertex_key(v):
        return (u, v)
    return (v, u)


def path_edges(path: Iterable[str]) -> Tuple[Edge, ...]:
    seq = tuple(path)
    return tuple(edge_of(seq[i], seq[i + 1]) for i in range(len(seq) - 1))


class RoleKind(str, Enum):
    PLAIN = "Plain"
    TERMINAL = "Terminal"
    BOTTLENECK = "Bottleneck"
    ROW_VERTEX = "RowVertex"
    SUBDIVISION_VERTEX = "SubdivisionVertex"
    BRANCH_VERTEX = "BranchVertex"


class EdgeClass(str, Enum):
    PLAIN = "Plain"
    JUMP_EDGE = "JumpEdge"
    TERMINAL_ATTACHMENT = "TerminalAttachment"

    @classmethod
    def from_text(cls, text: str) -> "EdgeClass":
        try:
            return cls(text)
        except ValueError:
            raise InputError(f"unknown edge class: {text}")


@dataclass(frozen=True)
class Role:
    """Vertex role.

    ``terminal`` names the terminal letter a vertex stands for: a and b are
    Terminal roles, c and d are the outer bottlenecks z_0 and z_r and keep
    their Bottleneck kind.
    """
    kind: RoleKind = RoleKind.PLAIN
    terminal: Optional[str] = None
    index: Optional[int] = None
    layer: Optional[int] = None
    position: Optional[int] = None
    origin: Optional[str] = None

    @classmethod
    def plain(cls) -> "Role":
        return cls()

    @classmethod
    def terminal_role(cls, letter: str) -> "Role":
        return cls(kind=RoleKind.TERMINAL, terminal=letter)

    @classmethod
    def bottleneck(cls, index: int, terminal: Optional[str] = None) -> "Role":
        return cls(kind=RoleKind.BOTTLENECK, index=index, terminal=terminal)

    @classmethod
    def row_vertex(cls, layer: int, position: int) -> "Role":
        return cls(kind=RoleKind.ROW_VERTEX, layer=layer, position=position)

    @classmethod
    def subdivision(cls, origin: str) -> "Role":
        return cls(kind=RoleKind.SUBDIVISION_VERTEX, origin=origin)

    @classmethod
    def branch(cls) -> "Role":
        return cls(kind=RoleKind.BRANCH_VERTEX)

    @property
    def is_plain(self) -> bool:
        return self.kind is RoleKind.PLAIN

    def to_text(self) -> str:
        if self.kind is RoleKind.TERMINAL:
            return f"Terminal:{self.terminal}"
        if self.kind is RoleKind.BOTTLENECK:
            if self.terminal:
                return f"Bottleneck:{self.index}:{self.terminal}"
            return f"Bottleneck:{self.index}"
        if self.kind is RoleKind.ROW_VERTEX:
            return f"RowVertex:{self.layer}:{self.position}"
        if self.kind is RoleKind.SUBDIVISION_VERTEX:
            return f"SubdivisionVertex:{self.origin}"
        return self.kind.value

    @classmethod
    def from_text(cls, text: str) -> "Role":
        head, _, rest = text.partition(":")
        try:
            kind = RoleKind(head)
        except ValueError:
            raise InputError(f"unknown role: {text}")
        try:
            if kind is RoleKind.TERMINAL:
                if rest not in TERMINAL_LETTERS:
                    raise InputError(f"unknown terminal letter in role: {text}")
                return cls.terminal_role(rest)
            if kind is RoleKind.BOTTLENECK:
                index, _, letter = rest.partition(":")
                if letter and letter not in TERMINAL_LETTERS:
                    raise InputError(f"unknown terminal letter in role: {text}")
                return cls.bottleneck(int(index), letter or None)
            if kind is RoleKind.ROW_VERTEX:
                layer, _, position = rest.partition(":")
                return cls.row_vertex(int(layer), int(position))
            if kind is RoleKind.SUBDIVISION_VERTEX:
                if not rest:
                    raise InputError(f"subdivision role without origin: {text}")
                return cls.subdivision(rest)
        except ValueError as e:
            if isinstance(e, InputError):
                raise
            raise InputError(f"malformed role: {text}")
        if rest:
            raise InputError(f"unexpected role arguments: {text}")
        return cls(kind=kind)


PLAIN = Role()


@dataclass(frozen=True)
class LabeledGraph:
    """Immutable simple graph with vertex roles and edge classes.

    Role and edge-class maps are total; vertices and edges missing from the
    maps passed in get the Plain default. The name does not take part in
    equality.
    """
    vertices: FrozenSet[str]
    edges: FrozenSet[Edge]
    roles: Mapping[str, Role]
    edge_classes: Mapping[Edge, EdgeClass]
    name: str = field(default="G", compare=False)
    _adjacency: Dict[str, Tuple[str, ...]] = field(default=None, compare=False, repr=False)

    @classmethod
    def build(
        cls,
        vertices: Iterable[str],
        edges: Iterable[Tuple[str, str]] = (),
        roles: Optional[Mapping[str, Role]] = None,
        edge_classes: Optional[Mapping[Tuple[str, str], EdgeClass]] = None,
        name: str = "G",
    ) -> "LabeledGraph":
        vertex_set = frozenset(vertices)
        normalized = set()
        for u, v in edges:
            if u == v:
                raise InputError(f"loop at vertex {u}")
            e = edge_of(u, v)
            if e in normalized:
                raise InputError(f"parallel edge {u}-{v}")
            normalized.add(e)
        role_map = {v: PLAIN for v in vertex_set}
        for v, role in (roles or {}).items():
            if v not in vertex_set:
                raise InputError(f"role given for unknown vertex {v}")
            role_map[v] = role
        class_map = {e: EdgeClass.PLAIN for e in normalized}
        for (u, v), edge_class in (edge_classes or {}).items():
            e = edge_of(u, v)
            if e not in class_map:
                raise InputError(f"edge class given for unknown edge {u}-{v}")
            class_map[e] = edge_class
        return cls(
            vertices=vertex_set,
            edges=frozenset(normalized),
            roles=MappingProxyType(role_map),
            edge_classes=MappingProxyType(class_map),
            name=name,
        )

    def __post_init__(self):
        for u, v in self.edges:
            if u == v:
                raise InputError(f"loop at vertex {u}")
            if u not in self.vertices or v not in self.vertices:
                raise InputError(f"edge {u}-{v} has an endpoint outside the vertex set")
            if (u, v) != edge_of(u, v):
                raise InputError(f"edge {u}-{v} is not normalized")
        if set(self.roles) != set(self.vertices):
            raise InputError("role map must cover exactly the vertex set")
        if set(self.edge_classes) != set(self.edges):
            raise InputError("edge class map must cover exactly the edge set")
        seen_letters: Dict[str, str] = {}
        for v in self.vertices:
            letter = self.roles[v].terminal
            if letter is None:
                continue
            if letter in seen_letters:
                raise InputError(f"terminal {letter} carried by {seen_letters[letter]} and {v}")
            seen_letters[letter] = v
        for e, edge_class in self.edge_classes.items():
            if edge_class is EdgeClass.JUMP_EDGE:
                ru, rv = self.roles[e[0]], self.roles[e[1]]
                if (
                    ru.kind is not RoleKind.BOTTLENECK
                    or rv.kind is not RoleKind.BOTTLENECK
                    or abs(ru.index - rv.index) != 1
                ):
                    raise InputError(f"jump edge {e[0]}-{e[1]} must join consecutive bottlenecks")

    def __hash__(self):
        return hash((self.vertices, self.edges))

    @property
    def adjacency(self) -> Dict[str, Tuple[str, ...]]:
        if self._adjacency is None:
            adj: Dict[str, list] = {v: [] for v in self.vertices}
            for u, v in self.edges:
                adj[u].append(v)
                adj[v].append(u)
            frozen = {v: tuple(sorted(ns, key=vertex_key)) for v, ns in adj.items()}
            object.__setattr__(self, "_adjacency", frozen)
        return self._adjacency

    def neighbors(self, v: str) -> Tuple[str, ...]:
        if v not in self.vertices:
            raise InputError(f"unknown vertex {v}")
        return self.adjacency[v]

    def degree(self, v: str) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: str, v: str) -> bool:
        return edge_of(u, v) in self.edges

    def role(self, v: str) -> Role:
        return self.roles[v]

    def edge_class(self, u: str, v: str) -> EdgeClass:
        return self.edge_classes[edge_of(u, v)]

    def terminal(self, letter: str) -> str:
        """Vertex standing for terminal ``letter``."""
        for v in self.vertices:
            if self.roles[v].terminal == letter:
                return v
        raise InputError(f"graph {self.name} has no terminal {letter}")

    def has_terminal(self, letter: str) -> bool:
        return any(self.roles[v].terminal == letter for v in self.vertices)

    def bottlenecks(self) -> Dict[int, str]:
        return {
            self.roles[v].index: v
            for v in self.vertices
            if self.roles[v].kind is RoleKind.BOTTLENECK
        }

    def max_degree(self) -> int:
        return max((len(ns) for ns in self.adjacency.values()), default=0)

    def renamed(self, name: str) -> "LabeledGraph":
        return LabeledGraph(
            vertices=self.vertices,
            edges=self.edges,
            roles=self.roles,
            edge_classes=self.edge_classes,
            name=name,
        )

    def __len__(self) -> int:
        return len(self.vertices)
