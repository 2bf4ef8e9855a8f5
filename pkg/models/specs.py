from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple

from internal.errors import InputError
from models.graph import Edge


@dataclass(frozen=True)
class CondensedWallSpec:
    size: int
    jump_edges: bool = True

    def __post_init__(self):
        if self.size < 1:
            raise InputError(f"condensed wall size must be at least 1, got {self.size}")


@dataclass(frozen=True)
class WallSpec:
    """Wall with ``rows`` brick rows and ``columns`` bricks per row.

    ``plan`` maps elementary edges to the number of inner vertices placed on
    them; edges not in the plan stay unsubdivided.
    """
    rows: int
    columns: int
    plan: Mapping[Edge, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.rows < 1 or self.columns < 1:
            raise InputError(f"wall needs at least one row and column, got {self.rows}x{self.columns}")
        for edge, count in self.plan.items():
            if count < 0:
                raise InputError(f"negative subdivision count on {edge}")


@dataclass
class BrickCertificate:
    """Brick cycles keyed by brick id plus the brick adjacency relation."""
    cycles: Dict[str, Tuple[str, ...]]
    adjacency: Dict[str, Tuple[str, ...]]
    shape: Optional[Tuple[int, int]] = None

    def bricks(self) -> List[str]:
        return list(self.cycles)

    def neighbours(self, brick: str) -> Tuple[str, ...]:
        return self.adjacency.get(brick, ())

    def containing_vertex(self, vertex: str) -> List[str]:
        return [b for b, cycle in self.cycles.items() if vertex in cycle]

    def containing_edge(self, u: str, v: str) -> List[str]:
        found = []
        for b, cycle in self.cycles.items():
            n = len(cycle)
            for i in range(n):
                x, y = cycle[i], cycle[(i + 1) % n]
                if {x, y} == {u, v}:
                    found.append(b)
                    break
        return found

    def restricted(self, bricks) -> "BrickCertificate":
        keep = [b for b in self.cycles if b in set(bricks)]
        return BrickCertificate(
            cycles={b: self.cycles[b] for b in keep},
            adjacency={b: tuple(n for n in self.adjacency[b] if n in keep) for b in keep},
            shape=self.shape,
        )


@dataclass(frozen=True)
class GStarSpec:
    rows: int = 6
    columns: int = 4
    multiplicity: int = 2
    terminal_edges: Optional[Tuple[Edge, Edge]] = None

    def __post_init__(self):
        if self.rows < 6 or self.columns < 4:
            raise InputError(f"G* needs a wall of at least 6x4, got {self.rows}x{self.columns}")
        if self.multiplicity < 1:
            raise InputError(f"multiplicity must be at least 1, got {self.multiplicity}")
