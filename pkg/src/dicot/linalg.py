"""Complex adjacency matrices and their exact determinants."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .core import Dicot, DicotError
from .gaussian import GaussianRational

__all__ = [
    "Matrix",
    "NonRealDeterminant",
    "build_matrix",
    "determinant",
    "partition_function",
    "matrix_to_json",
    "transpose",
    "block_diagonal",
]

Matrix = list[list[GaussianRational]]

_ZERO = GaussianRational(0)


class NonRealDeterminant(DicotError):
    """det K came out with a nonzero imaginary part; this is always a bug."""

    def __init__(self, value: GaussianRational):
        self.value = value
        super().__init__(f"determinant {value} is not real")


def build_matrix(d: Dicot, order: Sequence[int] | None = None) -> Matrix:
    """The complex adjacency matrix of ``d``.

    Diagonal entries are vertex weights; for a solid edge u -> v and a dashed
    edge on the same pair, K[u][v] = a + ib and K[v][u] = -a + ib. Rows and
    columns follow ``order`` (default: labels 1..n).
    """
    order = list(d.vertices) if order is None else list(order)
    if sorted(order) != list(d.vertices):
        raise ValueError("order must be a permutation of the vertex labels")
    pos = {v: i for i, v in enumerate(order)}
    n = d.n
    re = [[Fraction(0)] * n for _ in range(n)]
    im = [[Fraction(0)] * n for _ in range(n)]
    for v in d.vertices:
        re[pos[v]][pos[v]] = d.weight(v)
    for t, h, w in d.solid:
        re[pos[t]][pos[h]] += w
        re[pos[h]][pos[t]] -= w
    for u, v, w in d.dashed:
        im[pos[u]][pos[v]] += w
        im[pos[v]][pos[u]] += w
    return [[GaussianRational._raw(re[i][j], im[i][j]) for j in range(n)] for i in range(n)]


def determinant(m: Sequence[Sequence]) -> GaussianRational:
    """Exact determinant by Gaussian elimination over Q(i).

    Pivots are the first nonzero entry in each column; row swaps flip the
    sign. Entries may be ints, Fractions or GaussianRationals.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    a = [[e if isinstance(e, GaussianRational) else GaussianRational(e) for e in row] for row in m]
    det = GaussianRational(1)
    for k in range(n):
        p = next((r for r in range(k, n) if a[r][k]), None)
        if p is None:
            return _ZERO
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        pivot = a[k][k]
        det = det * pivot
        inv = GaussianRational(1) / pivot
        row_k = a[k]
        nz = [j for j in range(k + 1, n) if row_k[j]]
        for r in range(k + 1, n):
            row = a[r]
            if not row[k]:
                continue
            f = row[k] * inv
            for j in nz:
                row[j] = row[j] - f * row_k[j]
    return det


def partition_function(d: Dicot) -> Fraction:
    """Monopole-dimer partition function as det K, returned as an exact rational."""
    z = determinant(build_matrix(d))
    if z.im != 0:
        raise NonRealDeterminant(z)
    return z.re


def transpose(m: Matrix) -> Matrix:
    return [list(col) for col in zip(*m)]


def block_diagonal(a: Matrix, b: Matrix) -> Matrix:
    na, nb = len(a), len(b)
    out = [[_ZERO] * (na + nb) for _ in range(na + nb)]
    for i in range(na):
        out[i][:na] = a[i]
    for i in range(nb):
        out[na + i][na:] = b[i]
    return out


def matrix_to_json(m: Matrix) -> list[list[dict[str, str]]]:
    """Debug dump; not a stable interchange format."""
    return [[e.to_json() for e in row] for row in m]
