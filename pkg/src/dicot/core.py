"""Dicots, monopole-dimer configurations and their weights.

A dicot carries two edge sets on the vertex set {1, ..., n}: solid edges,
each stored as an ordered ``(tail, head, weight)`` triple whose order is the
orientation, and undirected dashed edges ``(u, v, weight)`` with ``u < v``.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping

from .gaussian import as_fraction

__all__ = [
    "SOLID",
    "DASHED",
    "DicotError",
    "SelfLoop",
    "DuplicateEdge",
    "NotBipartite",
    "NonPositiveWeight",
    "BadLabels",
    "EdgeNotInDicot",
    "OddDashedCount",
    "InvalidLoop",
    "CoverageError",
    "Dicot",
    "Loop",
    "MonopoleDimerConfig",
    "validate_dicot",
    "validate_graph",
    "make_dicot",
    "complete_dicot",
    "odd_cycle",
    "two_coloring",
    "loop_weight",
    "config_weight",
    "load_dicot",
    "dump_dicot",
]

SOLID = "s"
DASHED = "d"


class DicotError(ValueError):
    """Base class for every structural error raised by this package."""


class SelfLoop(DicotError):
    def __init__(self, vertex: int, kind: str):
        self.vertex = vertex
        self.kind = kind
        super().__init__(f"{_kind_name(kind)} edge ({vertex},{vertex}) is a self-loop")


class DuplicateEdge(DicotError):
    def __init__(self, u: int, v: int, kind: str):
        self.pair = (min(u, v), max(u, v))
        self.kind = kind
        super().__init__(f"duplicate {_kind_name(kind)} edge between {u} and {v}")


class NotBipartite(DicotError):
    def __init__(self, witness: tuple[int, ...]):
        self.witness = witness
        super().__init__(f"underlying graph is not bipartite; odd cycle {witness}")


class NonPositiveWeight(DicotError):
    def __init__(self, what: str, value):
        self.what = what
        self.value = value
        super().__init__(f"weight of {what} must be positive, got {value}")


class BadLabels(DicotError):
    pass


class EdgeNotInDicot(DicotError):
    def __init__(self, u: int, v: int, kind: str):
        self.edge = (u, v)
        self.kind = kind
        super().__init__(f"no {_kind_name(kind)} edge between {u} and {v}")


class OddDashedCount(DicotError):
    def __init__(self, count: int):
        self.count = count
        super().__init__(f"loop uses {count} dashed edges; an even number is required")


class InvalidLoop(DicotError):
    pass


class CoverageError(DicotError):
    pass


def _kind_name(kind: str) -> str:
    return {SOLID: "solid", DASHED: "dashed"}.get(kind, kind)


Edge = tuple[int, int, Fraction]


@dataclass(frozen=True)
class Dicot:
    """A validated, oriented, weighted dicot.

    ``x[v - 1]`` is the weight of vertex ``v``. Build instances through
    :func:`make_dicot` or :func:`validate_dicot`; the constructor does not
    check the axioms.
    """

    x: tuple[Fraction, ...]
    solid: tuple[Edge, ...]
    dashed: tuple[Edge, ...] = ()

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def weight(self, v: int) -> Fraction:
        return self.x[v - 1]

    @cached_property
    def _solid(self) -> dict[tuple[int, int], Edge]:
        return {(min(u, v), max(u, v)): (u, v, w) for u, v, w in self.solid}

    @cached_property
    def _dashed(self) -> dict[tuple[int, int], Fraction]:
        return {(u, v): w for u, v, w in self.dashed}

    @cached_property
    def adjacency(self) -> dict[int, tuple[tuple[int, str], ...]]:
        """v -> sorted ``(neighbour, kind)`` pairs; a doubled pair appears twice."""
        adj: dict[int, list[tuple[int, str]]] = {v: [] for v in self.vertices}
        for u, v, _ in self.solid:
            adj[u].append((v, SOLID))
            adj[v].append((u, SOLID))
        for u, v, _ in self.dashed:
            adj[u].append((v, DASHED))
            adj[v].append((u, DASHED))
        return {v: tuple(sorted(nbrs)) for v, nbrs in adj.items()}

    def has_edge(self, u: int, v: int, kind: str) -> bool:
        key = (min(u, v), max(u, v))
        return key in (self._solid if kind == SOLID else self._dashed)

    def solid_weight(self, u: int, v: int) -> Fraction:
        """Weight a(u, v), or 0 when there is no solid edge."""
        e = self._solid.get((min(u, v), max(u, v)))
        return e[2] if e else Fraction(0)

    def dashed_weight(self, u: int, v: int) -> Fraction:
        """Weight b(u, v), or 0 when there is no dashed edge."""
        return self._dashed.get((min(u, v), max(u, v)), Fraction(0))

    def orientation(self, u: int, v: int) -> int:
        """+1 if the solid edge points u -> v, -1 if v -> u."""
        e = self._solid.get((min(u, v), max(u, v)))
        if e is None:
            raise EdgeNotInDicot(u, v, SOLID)
        return 1 if e[0] == u else -1

    def is_simple(self) -> bool:
        """True when no pair of vertices carries both a solid and a dashed edge."""
        return not (self._solid.keys() & self._dashed.keys())

    def underlying_edges(self) -> list[tuple[int, int]]:
        """Sorted vertex pairs joined by at least one edge."""
        return sorted(self._solid.keys() | self._dashed.keys())

    def reoriented(self, pairs: Iterable[tuple[int, int]]) -> Dicot:
        """Copy with solid edges oriented as ``tail -> head`` for each given pair.

        Solid edges not mentioned keep their orientation.
        """
        want = {}
        for t, h in pairs:
            key = (min(t, h), max(t, h))
            if key not in self._solid:
                raise EdgeNotInDicot(t, h, SOLID)
            want[key] = (t, h)
        solid = []
        for u, v, w in self.solid:
            t, h = want.get((min(u, v), max(u, v)), (u, v))
            solid.append((t, h, w))
        return Dicot(self.x, tuple(solid), self.dashed)

    def orientation_pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((u, v) for u, v, _ in self.solid)

    def with_weights(self, x=None, solid=None, dashed=None) -> Dicot:
        """Replace weights uniformly (scalars) keeping structure and orientation."""
        xs = self.x if x is None else tuple(as_fraction(x) for _ in self.x)
        ss = self.solid if solid is None else tuple((u, v, as_fraction(solid)) for u, v, _ in self.solid)
        ds = self.dashed if dashed is None else tuple((u, v, as_fraction(dashed)) for u, v, _ in self.dashed)
        return Dicot(xs, ss, ds)

    def to_json(self) -> dict:
        return {
            "vertices": [{"id": v, "x": str(w)} for v, w in zip(self.vertices, self.x)],
            "solid": [[u, v, str(w)] for u, v, w in self.solid],
            "dashed": [[u, v, str(w)] for u, v, w in self.dashed],
        }


def _positive(value, what: str) -> Fraction:
    try:
        w = as_fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise DicotError(f"weight of {what} is not an exact rational: {value!r}") from exc
    if w <= 0:
        raise NonPositiveWeight(what, w)
    return w


def _label(v, n: int) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise BadLabels(f"vertex label {v!r} is not an integer")
    if not 1 <= v <= n:
        raise BadLabels(f"vertex label {v} outside 1..{n}")
    return v


def two_coloring(n: int, pairs: Iterable[tuple[int, int]]) -> tuple[dict[int, int] | None, tuple[int, ...] | None]:
    """Breadth-first 2-colouring of the graph on 1..n.

    Returns ``(colour, None)`` on success and ``(None, odd_cycle)`` otherwise,
    where ``odd_cycle`` lists the vertices of an odd cycle in order.
    """
    adj: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
    for u, v in pairs:
        adj[u].append(v)
        adj[v].append(u)
    colour: dict[int, int] = {}
    parent: dict[int, int | None] = {}
    for root in range(1, n + 1):
        if root in colour:
            continue
        colour[root] = 0
        parent[root] = None
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in sorted(adj[u]):
                if w not in colour:
                    colour[w] = 1 - colour[u]
                    parent[w] = u
                    queue.append(w)
                elif colour[w] == colour[u]:
                    return None, _cycle_through(u, w, parent)
    return colour, None


def _cycle_through(u: int, w: int, parent: Mapping[int, int | None]) -> tuple[int, ...]:
    # u and w are adjacent and equally coloured; join their tree paths.
    path_u = [u]
    while parent[path_u[-1]] is not None:
        path_u.append(parent[path_u[-1]])
    path_w = [w]
    while parent[path_w[-1]] is not None:
        path_w.append(parent[path_w[-1]])
    on_u = set(path_u)
    i = 0
    while path_w[i] not in on_u:
        i += 1
    lca = path_w[i]
    up = path_u[: path_u.index(lca) + 1]
    cycle = up[::-1] + path_w[:i]
    k = cycle.index(min(cycle))
    cycle = cycle[k:] + cycle[:k]
    if len(cycle) > 2 and cycle[-1] < cycle[1]:
        cycle = [cycle[0]] + cycle[:0:-1]
    return tuple(cycle)


def odd_cycle(d: Dicot) -> tuple[int, ...] | None:
    """An odd cycle of the underlying graph, or None if it is bipartite."""
    return two_coloring(d.n, d.underlying_edges())[1]


def make_dicot(
    x: Iterable,
    solid: Iterable[tuple] = (),
    dashed: Iterable[tuple] = (),
    *,
    bipartite: bool = True,
) -> Dicot:
    """Validate raw parts and build a :class:`Dicot`.

    ``x`` lists the vertex weights of 1..n in order. Solid triples keep their
    order as the orientation; dashed pairs are normalised to ``u < v``.
    Set ``bipartite=False`` for plain graphs that need not be 2-colourable.
    """
    xs = tuple(_positive(w, f"vertex {i}") for i, w in enumerate(x, start=1))
    n = len(xs)
    if n == 0:
        raise BadLabels("a dicot needs at least one vertex")

    def edges(raw, kind):
        seen = set()
        out = []
        for item in raw:
            if len(item) != 3:
                raise DicotError(f"{_kind_name(kind)} edge {item!r} must be (u, v, weight)")
            u, v, w = item
            u, v = _label(u, n), _label(v, n)
            if u == v:
                raise SelfLoop(u, kind)
            key = (min(u, v), max(u, v))
            if key in seen:
                raise DuplicateEdge(u, v, kind)
            seen.add(key)
            w = _positive(w, f"{_kind_name(kind)} edge ({u},{v})")
            out.append((u, v, w) if kind == SOLID else (key[0], key[1], w))
        out.sort(key=lambda e: (min(e[0], e[1]), max(e[0], e[1])))
        return tuple(out)

    d = Dicot(xs, edges(solid, SOLID), edges(dashed, DASHED))
    if bipartite:
        witness = odd_cycle(d)
        if witness is not None:
            raise NotBipartite(witness)
    return d


def validate_dicot(raw, *, bipartite: bool = True) -> Dicot:
    """Validate a JSON-style description (or an existing Dicot) into a Dicot.

    Accepted form::

        {"vertices": [{"id": 1, "x": "1"}, ...],
         "solid": [[u, v, "a"], ...],
         "dashed": [[u, v, "b"], ...]}
    """
    if isinstance(raw, Dicot):
        raw = raw.to_json()
    if not isinstance(raw, Mapping):
        raise DicotError("dicot description must be a JSON object")
    verts = raw.get("vertices")
    if not isinstance(verts, list) or not verts:
        raise BadLabels("'vertices' must be a non-empty list")
    weights: dict[int, object] = {}
    for item in verts:
        if not isinstance(item, Mapping) or "id" not in item:
            raise BadLabels(f"vertex entry {item!r} lacks an 'id'")
        vid = item["id"]
        if isinstance(vid, bool) or not isinstance(vid, int):
            raise BadLabels(f"vertex label {vid!r} is not an integer")
        if vid in weights:
            raise BadLabels(f"vertex {vid} listed twice")
        weights[vid] = item.get("x", 1)
    n = len(weights)
    if set(weights) != set(range(1, n + 1)):
        raise BadLabels(f"vertex labels must be exactly 1..{n}, got {sorted(weights)}")
    solid = raw.get("solid", [])
    dashed = raw.get("dashed", [])
    if not isinstance(solid, list) or not isinstance(dashed, list):
        raise DicotError("'solid' and 'dashed' must be lists")
    return make_dicot([weights[v] for v in range(1, n + 1)], solid, dashed, bipartite=bipartite)


def validate_graph(raw) -> Dicot:
    """A simple weighted oriented graph: a dicot without dashed edges, any parity."""
    g = validate_dicot(raw, bipartite=False)
    if g.dashed:
        raise DicotError("a graph may not carry dashed edges")
    return g


def complete_dicot(n: int, x=1, a=1, b=1) -> Dicot:
    """The complete dicot on 2n vertices: odd labels versus even labels.

    Every odd-even pair gets one solid edge (oriented smaller -> larger) and
    one dashed edge.
    """
    if n < 1:
        raise ValueError("complete dicot needs n >= 1")
    pairs = [(u, v) for u in range(1, 2 * n + 1) for v in range(u + 1, 2 * n + 1) if (u + v) % 2]
    return make_dicot(
        [x] * (2 * n),
        [(u, v, a) for u, v in pairs],
        [(u, v, b) for u, v in pairs],
    )


@dataclass(frozen=True)
class Loop:
    """A directed closed walk (v1, ..., v_2m) with the edge kind of every step.

    Step j goes from ``vertices[j]`` to ``vertices[j + 1]`` (cyclically) along
    an edge of kind ``kinds[j]``. With m = 1 the single edge is doubled.
    """

    vertices: tuple[int, ...]
    kinds: tuple[str, ...]

    def __post_init__(self):
        if len(self.vertices) != len(self.kinds):
            raise InvalidLoop("loop needs one edge kind per step")
        if len(self.vertices) < 2 or len(self.vertices) % 2:
            raise InvalidLoop(f"loop length {len(self.vertices)} is not a positive even number")
        if any(k not in (SOLID, DASHED) for k in self.kinds):
            raise InvalidLoop(f"unknown edge kinds in {self.kinds}")
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidLoop(f"loop {self.vertices} revisits a vertex")

    def __len__(self):
        return len(self.vertices)

    @property
    def is_doubled_edge(self) -> bool:
        return len(self.vertices) == 2

    @property
    def dashed_count(self) -> int:
        return self.kinds.count(DASHED)

    def steps(self):
        k = len(self.vertices)
        for j in range(k):
            yield self.vertices[j], self.vertices[(j + 1) % k], self.kinds[j]

    def reversed(self) -> Loop:
        v = self.vertices
        return Loop((v[0],) + v[:0:-1], self.kinds[::-1]).canonical()

    def canonical(self) -> Loop:
        """Rotate to start at the smallest vertex; direction is kept."""
        if self.is_doubled_edge:
            return Loop(tuple(sorted(self.vertices)), self.kinds)
        j = self.vertices.index(min(self.vertices))
        return Loop(self.vertices[j:] + self.vertices[:j], self.kinds[j:] + self.kinds[:j])

    def to_json(self) -> tuple[list[int], list[str]]:
        return list(self.vertices), list(self.kinds)


@dataclass(frozen=True)
class MonopoleDimerConfig:
    """Vertex-disjoint loops plus isolated vertices (monopoles)."""

    loops: tuple[Loop, ...]
    isolated: tuple[int, ...]

    def check_cover(self, d: Dicot) -> None:
        seen: list[int] = list(self.isolated)
        for loop in self.loops:
            seen.extend(loop.vertices)
        if sorted(seen) != list(d.vertices):
            raise CoverageError("configuration does not cover every vertex exactly once")

    @property
    def loop_size(self) -> int:
        return sum(len(l) for l in self.loops)

    def canonical(self) -> MonopoleDimerConfig:
        return MonopoleDimerConfig(
            tuple(sorted((l.canonical() for l in self.loops), key=lambda l: (l.vertices, l.kinds))),
            tuple(sorted(self.isolated)),
        )

    def to_json(self, d: Dicot | None = None) -> dict:
        out = {
            "loops": [list(l.vertices) for l in self.loops],
            "kinds": [list(l.kinds) for l in self.loops],
            "isolated": list(self.isolated),
        }
        if d is not None:
            out["weight"] = str(config_weight(self, d))
        return out


def loop_weight(loop: Loop, d: Dicot) -> Fraction:
    """Signed weight of a directed loop.

    The product over steps of +a (with the orientation), -a (against it) or
    i*b (dashed), negated. The dashed count is even, so i*i pairs collapse to
    -1 and the result is rational.
    """
    dashed = loop.dashed_count
    if dashed % 2:
        raise OddDashedCount(dashed)
    value = Fraction(-1) if (dashed // 2) % 2 == 0 else Fraction(1)
    for u, v, kind in loop.steps():
        if kind == SOLID:
            w = d.solid_weight(u, v)
            if not w:
                raise EdgeNotInDicot(u, v, SOLID)
            value *= w if d.orientation(u, v) > 0 else -w
        else:
            w = d.dashed_weight(u, v)
            if not w:
                raise EdgeNotInDicot(u, v, DASHED)
            value *= w
    return value


def config_weight(config: MonopoleDimerConfig, d: Dicot) -> Fraction:
    config.check_cover(d)
    value = Fraction(1)
    for loop in config.loops:
        value *= loop_weight(loop, d)
    for v in config.isolated:
        value *= d.weight(v)
    return value


def load_dicot(path, *, bipartite: bool = True) -> Dicot:
    with open(path) as fh:
        return validate_dicot(json.load(fh), bipartite=bipartite)


def dump_dicot(d: Dicot, path) -> None:
    with open(path, "w") as fh:
        json.dump(d.to_json(), fh, indent=1)
        fh.write("\n")
