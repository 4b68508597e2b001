"""Brute-force enumeration of monopole-dimer configurations.

This is the independent oracle for the determinant formula: it never builds
a matrix, it walks loops and multiplies edge weights.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator

from .core import (
    DASHED,
    SOLID,
    Dicot,
    DicotError,
    Loop,
    MonopoleDimerConfig,
    config_weight,
)

__all__ = [
    "DEFAULT_MAX_VERTICES",
    "TooLarge",
    "enumerate_configs",
    "count_configs",
    "brute_force_partition_function",
    "check_positivity",
]

DEFAULT_MAX_VERTICES = 16


class TooLarge(DicotError):
    def __init__(self, vertex_count: int, limit: int):
        self.vertex_count = vertex_count
        self.limit = limit
        super().__init__(
            f"refusing to enumerate a dicot with {vertex_count} vertices (limit {limit}); "
            "raise max_vertices to override"
        )


def _guard(d: Dicot, max_vertices: int | None) -> None:
    limit = DEFAULT_MAX_VERTICES if max_vertices is None else max_vertices
    if d.n > limit:
        raise TooLarge(d.n, limit)


def _loops_from(start: int, d: Dicot, free: list[bool]) -> Iterator[Loop]:
    """Loops whose smallest vertex is ``start``, through free vertices only.

    Doubled edges first (solid then dashed per neighbour), then longer loops
    in lexicographic order of their vertex sequences, both directions.
    """
    adj = d.adjacency
    for u, kind in adj[start]:
        if free[u]:
            yield Loop((start, u), (kind, kind))

    path = [start]
    kinds: list[str] = []
    on_path = {start}

    def extend(cur: int, dashed: int) -> Iterator[Loop]:
        for u, kind in adj[cur]:
            nd = dashed + (kind == DASHED)
            if u == start:
                if len(path) >= 4 and len(path) % 2 == 0 and nd % 2 == 0:
                    yield Loop(tuple(path), tuple(kinds) + (kind,))
            elif free[u] and u not in on_path:
                path.append(u)
                kinds.append(kind)
                on_path.add(u)
                yield from extend(u, nd)
                on_path.discard(u)
                kinds.pop()
                path.pop()

    yield from extend(start, 0)


def enumerate_configs(d: Dicot, max_vertices: int | None = None) -> Iterator[MonopoleDimerConfig]:
    """Yield every monopole-dimer configuration of ``d`` exactly once.

    The smallest uncovered vertex is either isolated or the start of a loop.
    Loops of length >= 4 are emitted once per direction; doubled edges once.
    The order is deterministic.
    """
    _guard(d, max_vertices)
    n = d.n
    free = [False] + [True] * n
    loops: list[Loop] = []
    isolated: list[int] = []

    def rec(lowest: int) -> Iterator[MonopoleDimerConfig]:
        v = lowest
        while v <= n and not free[v]:
            v += 1
        if v > n:
            yield MonopoleDimerConfig(tuple(loops), tuple(isolated))
            return
        free[v] = False
        isolated.append(v)
        yield from rec(v + 1)
        isolated.pop()
        for loop in list(_loops_from(v, d, free)):
            for u in loop.vertices[1:]:
                free[u] = False
            loops.append(loop)
            yield from rec(v + 1)
            loops.pop()
            for u in loop.vertices[1:]:
                free[u] = True
        free[v] = True

    yield from rec(1)


def count_configs(d: Dicot, max_vertices: int | None = None) -> int:
    return sum(1 for _ in enumerate_configs(d, max_vertices))


def brute_force_partition_function(d: Dicot, max_vertices: int | None = None) -> Fraction:
    """Exact sum of configuration weights."""
    return sum((config_weight(c, d) for c in enumerate_configs(d, max_vertices)), Fraction(0))


def check_positivity(
    d: Dicot, max_vertices: int | None = None
) -> tuple[bool, MonopoleDimerConfig | None]:
    """(True, None) if every configuration weight is positive.

    Otherwise (False, witness), the witness being a negative configuration
    with the fewest loop-covered vertices (first in enumeration order on ties).
    """
    witness = None
    for c in enumerate_configs(d, max_vertices):
        if config_weight(c, d) < 0 and (witness is None or c.loop_size < witness.loop_size):
            witness = c
    return witness is None, witness
