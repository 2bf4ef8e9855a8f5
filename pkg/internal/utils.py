"""
Small helpers shared across modules: canonical ordering and trial sampling.
"""
import math
import random
import re
from itertools import combinations
from typing import Iterable, Iterator, List, Sequence, Tuple, TypeVar

T = TypeVar("T")

_DIGITS = re.compile(r"(\d+)")


def vertex_key(vertex: str) -> Tuple:
    """Natural sort key: ``u2_10`` sorts after ``u2_9``."""
    parts = []
    for chunk in _DIGITS.split(vertex):
        if not chunk:
            continue
        if chunk.isdigit():
            parts.append((0, int(chunk), ""))
        else:
            parts.append((1, 0, chunk))
    return (tuple(parts), vertex)


def sorted_vertices(vertices: Iterable[str]) -> List[str]:
    return sorted(vertices, key=vertex_key)


def subset_count(size: int, k: int) -> int:
    """Number of k-subsets of a size-element set."""
    if k < 0 or k > size:
        return 0
    return math.comb(size, k)


def iter_subsets(items: Sequence[T], k: int) -> Iterator[Tuple[T, ...]]:
    return combinations(items, k)


def sample_subsets(items: Sequence[T], k: int, count: int, seed: int) -> List[Tuple[T, ...]]:
    """Draw ``count`` k-subsets with a seeded generator, in draw order.

    Duplicates are kept out; if fewer than ``count`` distinct subsets exist
    all of them are returned.
    """
    total = subset_count(len(items), k)
    if total <= count:
        return list(combinations(items, k))
    rng = random.Random(seed)
    seen = set()
    drawn: List[Tuple[T, ...]] = []
    indices = range(len(items))
    while len(drawn) < count:
        picked = tuple(sorted(rng.sample(indices, k)))
        if picked in seen:
            continue
        seen.add(picked)
        drawn.append(tuple(items[i] for i in picked))
    return drawn
