"""Fixed-point-free involutions, adapted partitions and quotient dicots.

For a graph G with such an involution pi, an adapted partition {P1, P2}
splits every orbit {v, pi(v)} across the blocks. An edge e and its image
pi(e) then either have matching orientations (e lies inside a block) or
opposite ones (e crosses between blocks). That dichotomy is what
:func:`find_adapted_partition` propagates.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .core import Dicot, DicotError, make_dicot, odd_cycle
from .gaussian import GaussianRational
from .linalg import build_matrix, determinant, partition_function

__all__ = [
    "InvolutionError",
    "HasFixedPoint",
    "NotInvolution",
    "NotAutomorphism",
    "Disconnected",
    "HypothesisViolated",
    "BlockIdentityFailure",
    "Involution",
    "AdaptedPartition",
    "BlockSplit",
    "SquarenessReport",
    "check_involution",
    "is_adapted",
    "find_adapted_partition",
    "quotient_dicot",
    "block_split",
    "verify_squareness",
    "load_involution",
]


class InvolutionError(DicotError):
    pass


class HasFixedPoint(InvolutionError):
    def __init__(self, v: int):
        self.vertex = v
        super().__init__(f"vertex {v} is fixed by the involution")


class NotInvolution(InvolutionError):
    def __init__(self, v: int):
        self.vertex = v
        super().__init__(f"pi(pi({v})) != {v}")


class NotAutomorphism(InvolutionError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"map is not a weighted automorphism: {witness}")


class Disconnected(DicotError):
    pass


class HypothesisViolated(DicotError):
    """A hypothesis of the squareness theorem fails.

    ``which`` is one of ``"bipartite-G"``, ``"no-adapted-partition"`` or
    ``"bipartite-quotient"``.
    """

    def __init__(self, which: str, detail: str = ""):
        self.which = which
        super().__init__(f"hypothesis not met: {which}" + (f" ({detail})" if detail else ""))


class BlockIdentityFailure(DicotError):
    pass


@dataclass(frozen=True)
class Involution:
    perm: tuple[int, ...]  # perm[v - 1] = pi(v)

    def __call__(self, v: int) -> int:
        return self.perm[v - 1]

    def as_dict(self) -> dict[int, int]:
        return {v: w for v, w in enumerate(self.perm, start=1)}


@dataclass(frozen=True)
class AdaptedPartition:
    """Two blocks, canonicalised so that vertex 1 lies in ``p1``."""

    p1: tuple[int, ...]
    p2: tuple[int, ...]


@dataclass(frozen=True)
class BlockSplit:
    """K(G) in the order (P1, pi(P1)) is [[M, B], [-B, M]]."""

    order: tuple[int, ...]
    M: list[list[Fraction]]
    B: list[list[Fraction]]


@dataclass(frozen=True)
class SquarenessReport:
    z_graph: Fraction
    z_quotient: Fraction
    holds: bool
    partition: AdaptedPartition
    quotient: Dicot


def check_involution(g: Dicot, perm: Mapping[int, int]) -> Involution:
    """Validate ``perm`` as a fixed-point-free involutive automorphism of ``g``."""
    n = g.n
    p = {int(k): int(v) for k, v in perm.items()}
    if sorted(p) != list(g.vertices) or sorted(p.values()) != list(g.vertices):
        raise InvolutionError(f"permutation must be a bijection of 1..{n}")
    for v in g.vertices:
        if p[v] == v:
            raise HasFixedPoint(v)
    for v in g.vertices:
        if p[p[v]] != v:
            raise NotInvolution(v)
    for v in g.vertices:
        if g.weight(v) != g.weight(p[v]):
            raise NotAutomorphism(("vertex", v, p[v]))
    for u, v, w in g.solid:
        if g.solid_weight(p[u], p[v]) != w:
            raise NotAutomorphism(("solid", (u, v), (p[u], p[v])))
    for u, v, w in g.dashed:
        if g.dashed_weight(p[u], p[v]) != w:
            raise NotAutomorphism(("dashed", (u, v), (p[u], p[v])))
    return Involution(tuple(p[v] for v in g.vertices))


def _connected(g: Dicot) -> bool:
    adj = g.adjacency
    seen = {1}
    queue = deque([1])
    while queue:
        u = queue.popleft()
        for w, _ in adj[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == g.n


def is_adapted(g: Dicot, pi: Involution, p1) -> bool:
    """Check all four adaptedness conditions for the block ``p1``."""
    block1 = set(p1)
    if len(block1) * 2 != g.n:
        return False
    for v in g.vertices:
        if (v in block1) == (pi(v) in block1):
            return False
    for v in block1:
        if g.has_edge(v, pi(v), "s"):
            return False
    for u, v, _ in g.solid:
        if u in block1 and v in block1:
            if g.orientation(pi(u), pi(v)) != 1:
                return False
        elif (u in block1) != (v in block1):
            # The image edge must also run between the same blocks in the same sense.
            if g.orientation(pi(v), pi(u)) != 1:
                return False
    return True


def find_adapted_partition(g: Dicot, pi: Involution, seed: int = 1) -> AdaptedPartition | None:
    """The adapted partition of (g, pi), or None when there is none.

    ``seed`` starts in the first block during propagation; the result is
    always reported with vertex 1 in ``p1``.
    """
    if not _connected(g):
        raise Disconnected("adapted partitions are only determined on connected graphs")
    # side[v] in {0, 1}; constraints: side[pi(v)] != side[v];
    # edge kept in orientation by pi -> same side, reversed -> opposite sides.
    constraints: dict[int, list[tuple[int, int]]] = {v: [] for v in g.vertices}
    for v in g.vertices:
        constraints[v].append((pi(v), 1))
    for u, v, _ in g.solid:
        flip = 0 if g.orientation(pi(u), pi(v)) == 1 else 1
        constraints[u].append((v, flip))
        constraints[v].append((u, flip))
    side = {seed: 0}
    queue = deque([seed])
    while queue:
        u = queue.popleft()
        for w, flip in constraints[u]:
            want = side[u] ^ flip
            if w not in side:
                side[w] = want
                queue.append(w)
            elif side[w] != want:
                return None
    first = 0 if side[1] == 0 else 1
    p1 = tuple(sorted(v for v in g.vertices if side[v] == first))
    p2 = tuple(sorted(v for v in g.vertices if side[v] != first))
    if not is_adapted(g, pi, p1):
        return None
    return AdaptedPartition(p1, p2)


def quotient_dicot(g: Dicot, pi: Involution, p: AdaptedPartition) -> Dicot:
    """The quotient dicot on ``p.p1``, relabelled 1..k in increasing order.

    Solid edges are the edges of g inside P1 with their orientation; a
    dashed edge joins u, v in P1 whenever g has the edge (u, pi(v)).
    """
    label = {v: i for i, v in enumerate(p.p1, start=1)}
    block = set(p.p1)
    solid = [(label[u], label[v], w) for u, v, w in g.solid if u in block and v in block]
    dashed = {}
    for u, v, w in g.solid:
        if (u in block) == (v in block):
            continue
        inner, outer = (u, v) if u in block else (v, u)
        a, b = label[inner], label[pi(outer)]
        dashed[(min(a, b), max(a, b))] = w
    return make_dicot(
        [g.weight(v) for v in p.p1],
        solid,
        [(a, b, w) for (a, b), w in sorted(dashed.items())],
        bipartite=False,
    )


def block_split(g: Dicot, pi: Involution, p: AdaptedPartition) -> BlockSplit:
    """Read M and B off K(G) and check the [[M, B], [-B, M]] pattern entrywise."""
    order = tuple(p.p1) + tuple(pi(v) for v in p.p1)
    k = len(p.p1)
    K = build_matrix(g, order)
    real = [[e.re for e in row] for row in K]
    M = [row[:k] for row in real[:k]]
    B = [row[k:] for row in real[:k]]
    for i in range(k):
        for j in range(k):
            if real[k + i][k + j] != M[i][j]:
                raise BlockIdentityFailure(f"lower-right block differs from M at ({i}, {j})")
            if real[k + i][j] != -B[i][j]:
                raise BlockIdentityFailure(f"lower-left block differs from -B at ({i}, {j})")
            if B[i][j] != B[j][i]:
                raise BlockIdentityFailure(f"B is not symmetric at ({i}, {j})")
    return BlockSplit(order, M, B)


def verify_squareness(g: Dicot, pi: Involution) -> SquarenessReport:
    """Compute Z(G) and Z(G/pi) independently and compare Z(G) with Z(G/pi)^2.

    Also checks det K(G) = det(M + iB) det(M - iB) exactly, raising
    :class:`BlockIdentityFailure` if it does not hold.
    """
    if odd_cycle(g) is not None:
        raise HypothesisViolated("bipartite-G", f"odd cycle {odd_cycle(g)}")
    p = find_adapted_partition(g, pi)
    if p is None:
        raise HypothesisViolated("no-adapted-partition", "no adapted partition exists for this involution")
    q = quotient_dicot(g, pi, p)
    if odd_cycle(q) is not None:
        raise HypothesisViolated("bipartite-quotient", f"odd cycle {odd_cycle(q)}")

    z_graph = determinant(build_matrix(g))
    if z_graph.im != 0:
        raise BlockIdentityFailure("signed adjacency determinant is not real")
    z_quotient = partition_function(q)

    split = block_split(g, pi, p)
    k = len(p.p1)
    plus = [[GaussianRational(split.M[i][j], split.B[i][j]) for j in range(k)] for i in range(k)]
    minus = [[GaussianRational(split.M[i][j], -split.B[i][j]) for j in range(k)] for i in range(k)]
    if determinant(plus) * determinant(minus) != z_graph:
        raise BlockIdentityFailure("det K(G) != det(M + iB) det(M - iB)")
    # With vertex 1 pinned to P1 the cross edges may all point P2 -> P1; then
    # B carries the opposite sign and the quotient matrix is M - iB instead.
    kq = build_matrix(q)
    if plus != kq and minus != kq:
        raise BlockIdentityFailure("neither M + iB nor M - iB is the quotient's complex adjacency matrix")

    return SquarenessReport(z_graph.re, z_quotient, z_graph.re == z_quotient**2, p, q)


def load_involution(raw, g: Dicot) -> Involution:
    """Parse ``{"pi": {"1": 4, ...}}`` and validate it against ``g``."""
    if not isinstance(raw, Mapping) or not isinstance(raw.get("pi"), Mapping):
        raise InvolutionError("involution file must look like {\"pi\": {\"1\": 4, ...}}")
    try:
        perm = {int(k): int(v) for k, v in raw["pi"].items()}
    except (TypeError, ValueError) as exc:
        raise InvolutionError(f"bad involution entry: {exc}") from exc
    return check_involution(g, perm)
