"""Planar dicots: faces of a straight-line embedding and Kasteleyn orientations.

All geometry is exact: coordinates are Fractions and every predicate is a
sign of a cross product, so no tolerance enters anywhere.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Mapping, Sequence

from .core import SOLID, Dicot, DicotError, EdgeNotInDicot, Loop, OddDashedCount, validate_dicot
from .gaussian import as_fraction

__all__ = [
    "CrossingEdges",
    "DisconnectedGraph",
    "NotPlanarDicot",
    "NoKasteleynOrientation",
    "VertexOnBoundary",
    "Face",
    "PlanarDicot",
    "extract_faces",
    "is_planar_dicot",
    "kasteleyn_orient",
    "verify_kasteleyn",
    "face_parity",
    "enclosed_vertices",
    "planar_loop_weight",
    "validate_planar",
]

Point = tuple[Fraction, Fraction]


class CrossingEdges(DicotError):
    def __init__(self, e: tuple[int, int], f: tuple[int, int]):
        self.pair = (e, f)
        super().__init__(f"edges {e} and {f} cross or overlap")


class DisconnectedGraph(DicotError):
    pass


class NotPlanarDicot(DicotError):
    pass


class NoKasteleynOrientation(DicotError):
    def __init__(self, face: tuple[int, ...]):
        self.face = face
        super().__init__(
            f"no orientation of the solid edges makes face {face} odd; "
            "it is sealed off from the outer face by dashed edges"
        )


class VertexOnBoundary(DicotError):
    pass


@dataclass(frozen=True)
class Face:
    """A face as the cyclic vertex sequence of its boundary walk.

    Bounded faces are walked counter-clockwise, so ``area2`` (twice the
    signed area) is positive for them and negative for the outer face.
    """

    vertices: tuple[int, ...]
    area2: Fraction

    def half_edges(self):
        k = len(self.vertices)
        for j in range(k):
            yield self.vertices[j], self.vertices[(j + 1) % k]


@dataclass(frozen=True)
class PlanarDicot:
    dicot: Dicot
    coords: Mapping[int, Point]
    faces: tuple[Face, ...]
    outer: Face

    def with_dicot(self, d: Dicot) -> PlanarDicot:
        """Same embedding, different orientation or weights."""
        if d.underlying_edges() != self.dicot.underlying_edges() or d.n != self.dicot.n:
            raise ValueError("replacement dicot has a different edge set")
        return PlanarDicot(d, self.coords, self.faces, self.outer)

    def to_json(self) -> dict:
        out = self.dicot.to_json()
        out["coords"] = {str(v): [str(x), str(y)] for v, (x, y) in sorted(self.coords.items())}
        return out


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    return (
        _cross(a, b, p) == 0
        and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def _segments_conflict(a: Point, b: Point, c: Point, d: Point, shared: bool) -> bool:
    d1, d2 = _cross(a, b, c), _cross(a, b, d)
    d3, d4 = _cross(c, d, a), _cross(c, d, b)
    if shared:
        # Segments meeting at an endpoint conflict only if they overlap.
        return d1 == 0 and d2 == 0 and (
            (_on_segment(c, a, b) and c not in (a, b))
            or (_on_segment(d, a, b) and d not in (a, b))
            or (_on_segment(a, c, d) and a not in (c, d))
            or (_on_segment(b, c, d) and b not in (c, d))
        )
    if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)) and 0 not in (d1, d2, d3, d4):
        return True
    return (
        (d1 == 0 and _on_segment(c, a, b))
        or (d2 == 0 and _on_segment(d, a, b))
        or (d3 == 0 and _on_segment(a, c, d))
        or (d4 == 0 and _on_segment(b, c, d))
    )


def _half_plane(dx: Fraction, dy: Fraction) -> int:
    return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1


def _ccw_sorted(center: Point, nbrs: list[int], coords: Mapping[int, Point]) -> list[int]:
    def cmp(u, w):
        pu, pw = coords[u], coords[w]
        hu = _half_plane(pu[0] - center[0], pu[1] - center[1])
        hw = _half_plane(pw[0] - center[0], pw[1] - center[1])
        if hu != hw:
            return hu - hw
        c = _cross(center, pu, pw)
        return -1 if c > 0 else (1 if c < 0 else 0)

    return sorted(nbrs, key=cmp_to_key(cmp))


def _area2(cycle: Sequence[int], coords: Mapping[int, Point]) -> Fraction:
    total = Fraction(0)
    k = len(cycle)
    for j in range(k):
        x1, y1 = coords[cycle[j]]
        x2, y2 = coords[cycle[(j + 1) % k]]
        total += x1 * y2 - x2 * y1
    return total


def extract_faces(d: Dicot, coords: Mapping) -> PlanarDicot:
    """Trace the faces of the straight-line drawing of ``d``.

    ``coords`` maps each vertex to an (x, y) pair of rationals. A pair joined
    by both a solid and a dashed edge is drawn as a single segment; such a
    dicot is accepted here but is not a planar dicot.
    """
    pts: dict[int, Point] = {}
    for v in d.vertices:
        raw = coords.get(v, coords.get(str(v))) if isinstance(coords, Mapping) else None
        if raw is None:
            raise DicotError(f"no coordinates for vertex {v}")
        pts[v] = (as_fraction(raw[0]), as_fraction(raw[1]))
    if len(set(pts.values())) != d.n:
        raise DicotError("two vertices share a position")

    edges = d.underlying_edges()
    for i, (a, b) in enumerate(edges):
        for c, e in edges[i + 1 :]:
            shared = len({a, b, c, e}) < 4
            if _segments_conflict(pts[a], pts[b], pts[c], pts[e], shared):
                raise CrossingEdges((a, b), (c, e))
        for v in d.vertices:
            if v not in (a, b) and _on_segment(pts[v], pts[a], pts[b]):
                raise CrossingEdges((a, b), (v, v))

    adj: dict[int, list[int]] = {v: [] for v in d.vertices}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = {1}
    queue = deque([1])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    if len(seen) != d.n:
        raise DisconnectedGraph(f"vertices {sorted(set(d.vertices) - seen)} are unreachable from 1")

    rot = {v: _ccw_sorted(pts[v], adj[v], pts) for v in d.vertices}
    idx = {v: {u: i for i, u in enumerate(rot[v])} for v in d.vertices}
    used: set[tuple[int, int]] = set()
    walks = []
    for a, b in edges:
        for start in ((a, b), (b, a)):
            if start in used:
                continue
            walk = []
            u, v = start
            while (u, v) not in used:
                used.add((u, v))
                walk.append(u)
                # Next half-edge: the neighbour of v just clockwise of u.
                w = rot[v][idx[v][u] - 1]
                u, v = v, w
            walks.append(tuple(walk))

    faces = [Face(w, _area2(w, pts)) for w in walks]
    if d.n == 1:
        outer = Face((1,), Fraction(0))
        return PlanarDicot(d, pts, (), outer)
    outer_idx = min(range(len(faces)), key=lambda i: (faces[i].area2, i))
    outer = faces[outer_idx]
    if outer.area2 >= 0 and len(faces) > 1:
        raise DicotError("could not identify the outer face")
    bounded = tuple(f for i, f in enumerate(faces) if i != outer_idx)
    if d.n - len(edges) + len(faces) != 2:
        raise DicotError("Euler relation fails; the drawing is not a plane embedding")
    return PlanarDicot(d, pts, bounded, outer)


def validate_planar(raw) -> PlanarDicot:
    """Parse the JSON dicot format extended with a ``"coords"`` object."""
    d = validate_dicot(raw)
    coords = raw.get("coords")
    if not isinstance(coords, Mapping):
        raise DicotError("planar dicot needs a 'coords' object")
    return extract_faces(d, {int(k): v for k, v in coords.items()})


def _dashed_on(face: Face, d: Dicot) -> int:
    return sum(1 for u, v in face.half_edges() if not d.has_edge(u, v, SOLID))


def is_planar_dicot(pd: PlanarDicot) -> bool:
    """Simple, and every bounded face has an even number of dashed edges."""
    d = pd.dicot
    if not d.is_simple():
        return False
    return all(_dashed_on(f, d) % 2 == 0 for f in pd.faces)


def face_parity(face: Face, d: Dicot) -> int:
    """(clockwise solid edges + dashed edges / 2) mod 2 for one face."""
    cw = 0
    dashed = 0
    ccw_walk = face.area2 > 0
    for u, v in face.half_edges():
        if d.has_edge(u, v, SOLID):
            along = d.orientation(u, v) > 0
            if along != ccw_walk:
                cw += 1
        else:
            dashed += 1
    return (cw + dashed // 2) % 2


def verify_kasteleyn(pd: PlanarDicot, orientation=None) -> bool:
    """Check the face parity condition on every bounded face.

    ``orientation`` is an optional iterable of (tail, head) pairs overriding
    the dicot's stored orientation.
    """
    d = pd.dicot if orientation is None else pd.dicot.reoriented(orientation)
    return all(face_parity(f, d) == 1 for f in pd.faces)


def kasteleyn_orient(pd: PlanarDicot) -> tuple[tuple[int, int], ...]:
    """An orientation of the solid edges satisfying the Kasteleyn condition.

    Faces are linked through shared solid edges into a spanning forest rooted
    at the outer face where possible. Walking from the leaves inwards, each
    face fixes its parity by flipping the edge to its parent. A root other
    than the outer face has no edge left to flip; if its parity is still
    wrong no valid orientation exists.
    """
    if not is_planar_dicot(pd):
        raise NotPlanarDicot("every bounded face needs an even number of dashed edges and no doubled pairs")
    d = pd.dicot
    faces = list(pd.faces) + [pd.outer]
    outer = len(faces) - 1
    side: dict[tuple[int, int], int] = {}
    for i, f in enumerate(faces):
        for u, v in f.half_edges():
            side[(u, v)] = i

    dual: dict[int, list[tuple[int, tuple[int, int]]]] = {i: [] for i in range(len(faces))}
    for t, h, _ in d.solid:
        f, g = side[(t, h)], side[(h, t)]
        if f != g:
            dual[f].append((g, (t, h)))
            dual[g].append((f, (t, h)))

    parent: dict[int, tuple[int, tuple[int, int]] | None] = {}
    order: list[int] = []
    roots: list[int] = []
    for root in [outer] + list(range(len(faces) - 1)):
        if root in parent:
            continue
        parent[root] = None
        roots.append(root)
        queue = deque([root])
        while queue:
            f = queue.popleft()
            order.append(f)
            for g, e in dual[f]:
                if g not in parent:
                    parent[g] = (f, e)
                    queue.append(g)

    flip: set[tuple[int, int]] = set()
    parity = {i: face_parity(f, d) for i, f in enumerate(faces)}
    for f in reversed(order):
        link = parent[f]
        if link is None or f == outer:
            continue
        if parity[f] != 1:
            g, e = link
            flip ^= {e}
            parity[f] ^= 1
            parity[g] ^= 1
    for r in roots:
        if r != outer and parity[r] != 1:
            raise NoKasteleynOrientation(faces[r].vertices)
    return tuple((h, t) if (t, h) in flip else (t, h) for t, h, _ in d.solid)


def _point_in_polygon(p: Point, poly: Sequence[Point]) -> bool:
    inside = False
    k = len(poly)
    for j in range(k):
        a, b = poly[j], poly[(j + 1) % k]
        if (a[1] > p[1]) != (b[1] > p[1]):
            x = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1])
            if x > p[0]:
                inside = not inside
    return inside


def enclosed_vertices(loop: Loop, pd: PlanarDicot) -> list[int]:
    """Vertices strictly inside the polygon traced by ``loop``."""
    if loop.is_doubled_edge:
        return []
    poly = [pd.coords[v] for v in loop.vertices]
    on_loop = set(loop.vertices)
    inside = []
    for v in pd.dicot.vertices:
        if v in on_loop:
            continue
        p = pd.coords[v]
        if any(_on_segment(p, poly[j], poly[(j + 1) % len(poly)]) for j in range(len(poly))):
            raise VertexOnBoundary(f"vertex {v} lies on the loop {loop.vertices}")
        if _point_in_polygon(p, poly):
            inside.append(v)
    return inside


def planar_loop_weight(loop: Loop, pd: PlanarDicot) -> Fraction:
    """Loop weight read off the embedding: (-1)^(enclosed vertices) times magnitudes.

    Valid only when ``pd.dicot`` carries a Kasteleyn orientation.
    """
    if loop.dashed_count % 2:
        raise OddDashedCount(loop.dashed_count)
    d = pd.dicot
    value = Fraction(1)
    for u, v, kind in loop.steps():
        w = d.solid_weight(u, v) if kind == SOLID else d.dashed_weight(u, v)
        if not w:
            raise EdgeNotInDicot(u, v, kind)
        value *= w
    if len(enclosed_vertices(loop, pd)) % 2:
        value = -value
    return value
