"""Generators and closed-form partition functions for special families.

Grids use boustrophedon labels: row k (counted from the bottom, 1-based) of
a grid with ``cols`` columns holds labels (k-1)*cols + 1 .. k*cols, running
left to right on odd rows and right to left on even rows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import Dicot, DicotError, make_dicot
from .gaussian import as_fraction
from .quotient import check_involution, find_adapted_partition, quotient_dicot

__all__ = [
    "EvenOrder",
    "cycle_dicot",
    "cycle_graph",
    "lucas",
    "cycle_formula",
    "grid_label",
    "grid_coords",
    "grid_graph",
    "grid_involution",
    "grid_quotient_dicot",
    "grid_dicot",
    "grid_partition_formula",
    "grid_quotient_formula",
    "grid_vert_dicot",
    "grid_vert_formula",
    "y_factor",
    "wheel_dicot",
    "wheel_coords",
    "wheel_formula",
    "FamilySpec",
    "FAMILIES",
]


class EvenOrder(DicotError):
    def __init__(self, n: int):
        self.n = n
        super().__init__(f"wheel dicots need odd order, got {n}")


def lucas(n: int, t) -> Fraction:
    """L_n(t) from L_0 = 2, L_1 = t, L_n = t L_{n-1} + L_{n-2}."""
    if n < 0:
        raise ValueError("Lucas index must be non-negative")
    if not isinstance(t, float):
        t = as_fraction(t)
    prev, cur = 2 * t**0, t
    for _ in range(n):
        prev, cur = cur, t * cur + prev
    return prev


def cycle_dicot(n: int, x=1, a=1, b=None) -> Dicot:
    """Path 1 - 2 - ... - 2n of solid edges closed by the dashed edge (1, 2n).

    The dashed weight defaults to the solid weight ``a``.
    """
    if n < 1:
        raise ValueError("cycle dicot needs n >= 1")
    b = a if b is None else b
    return make_dicot(
        [x] * (2 * n),
        [(j, j + 1, a) for j in range(1, 2 * n)],
        [(1, 2 * n, b)],
    )


def cycle_graph(length: int, x=1, a=1) -> Dicot:
    """The cycle graph C_length with orientation smaller -> larger label."""
    if length < 3:
        raise ValueError("cycle graph needs at least 3 vertices")
    solid = [(j, j + 1, a) for j in range(1, length)] + [(1, length, a)]
    return make_dicot([x] * length, solid, bipartite=length % 2 == 0)


def grid_label(j: int, k: int, cols: int) -> int:
    """Label of column j, row k (both 1-based, row 1 at the bottom)."""
    return (k - 1) * cols + (j if k % 2 else cols + 1 - j)


def grid_coords(cols: int, rows: int) -> dict[int, tuple[int, int]]:
    """Unit-spaced integer positions, column j at x = j - 1, row k at y = k - 1."""
    return {grid_label(j, k, cols): (j - 1, k - 1) for j in range(1, cols + 1) for k in range(1, rows + 1)}


def _horizontal(cols: int, rows: int, w):
    # Smaller -> larger label, i.e. alternating direction from row to row.
    out = []
    for k in range(1, rows + 1):
        for j in range(1, cols):
            u, v = grid_label(j, k, cols), grid_label(j + 1, k, cols)
            out.append((min(u, v), max(u, v), w))
    return out


def grid_graph(cols: int, rows: int, x=1, a=1, b=1) -> Dicot:
    """The grid graph with ``cols`` columns and ``rows`` rows.

    Horizontal edges have weight ``a`` and point from smaller to larger
    label, which alternates their direction between rows. Vertical edges
    have weight ``b`` and point towards the seam between rows rows//2 and
    rows//2 + 1. With both dimensions even this is the Kasteleyn
    orientation compatible with the half-turn involution.
    """
    half = rows // 2
    solid = _horizontal(cols, rows, a)
    for j in range(1, cols + 1):
        for k in range(1, rows):
            lo, hi = grid_label(j, k, cols), grid_label(j, k + 1, cols)
            solid.append((lo, hi, b) if k < half else (hi, lo, b))
    return make_dicot([x] * (cols * rows), solid)


def grid_involution(cols: int, rows: int) -> dict[int, int]:
    """Half-turn rotation (j, k) -> (cols + 1 - j, rows + 1 - k) as a label map."""
    return {
        grid_label(j, k, cols): grid_label(cols + 1 - j, rows + 1 - k, cols)
        for j in range(1, cols + 1)
        for k in range(1, rows + 1)
    }


def grid_quotient_dicot(two_m: int, n: int, x=1, a=1, b=1) -> Dicot:
    """The quotient of the 2m x 2n grid graph by its half-turn (two_m columns, n rows)."""
    g = grid_graph(two_m, 2 * n, x, a, b)
    pi = check_involution(g, grid_involution(two_m, 2 * n))
    p = find_adapted_partition(g, pi)
    if p is None:
        raise DicotError("grid graph has no adapted partition; orientation is wrong")
    return quotient_dicot(g, pi, p)


def grid_dicot(cols: int, rows: int, x=1, a=1, b=1, *, vertical: str = "s", horizontal: str = "s",
               vertical_bands=None, horizontal_bands=None) -> Dicot:
    """Grid dicot with every edge solid or dashed, orientation smaller -> larger.

    ``vertical`` / ``horizontal`` set the kind of all vertical / horizontal
    edges. ``vertical_bands`` (a kind per gap between rows) and
    ``horizontal_bands`` (a kind per gap between columns) override them band
    by band, which keeps every unit face even in dashed edges.
    """
    vb = list(vertical_bands) if vertical_bands is not None else [vertical] * (rows - 1)
    hb = list(horizontal_bands) if horizontal_bands is not None else [horizontal] * (cols - 1)
    solid, dashed = [], []
    for k in range(1, rows + 1):
        for j in range(1, cols):
            u, v = sorted((grid_label(j, k, cols), grid_label(j + 1, k, cols)))
            (solid if hb[j - 1] == "s" else dashed).append((u, v, a))
    for j in range(1, cols + 1):
        for k in range(1, rows):
            u, v = sorted((grid_label(j, k, cols), grid_label(j, k + 1, cols)))
            (solid if vb[k - 1] == "s" else dashed).append((u, v, b))
    return make_dicot([x] * (cols * rows), solid, dashed)


def grid_vert_dicot(m: int, n: int, x=1, a=1, b1=1, b2=1) -> Dicot:
    """m columns by n rows; every vertical pair carries a solid (b1) and a dashed (b2) edge."""
    if m < 1 or n < 1:
        raise ValueError("grid dimensions must be positive")
    solid = _horizontal(m, n, a)
    dashed = []
    for j in range(1, m + 1):
        for k in range(1, n):
            lo, hi = grid_label(j, k, m), grid_label(j, k + 1, m)
            solid.append((lo, hi, b1))
            dashed.append((lo, hi, b2))
    return make_dicot([x] * (m * n), solid, dashed)


def grid_partition_formula(m: int, n: int, x=1.0, a=1.0, b=1.0) -> float:
    """Closed-form Z of the 2m x 2n grid graph (2m columns of weight a, 2n rows of weight b)."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    return grid_quotient_formula(m, n, x, a, b) ** 2


def grid_quotient_formula(m: int, n: int, x=1.0, a=1.0, b=1.0) -> float:
    """Closed-form Z of the quotient grid dicot; the square root of the grid value."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    x, a, b = float(x), float(a), float(b)
    return math.prod(
        x * x
        + 4 * a * a * math.cos(j * math.pi / (2 * m + 1)) ** 2
        + 4 * b * b * math.cos(k * math.pi / (2 * n + 1)) ** 2
        for j in range(1, m + 1)
        for k in range(1, n + 1)
    )


def y_factor(m: int, b, c, x) -> float:
    """prod_{j <= m/2} (x^2 + 4 (b^2 + c^2) cos^2(j pi / (m + 1)))."""
    b, c, x = float(b), float(c), float(x)
    return math.prod(
        x * x + 4 * (b * b + c * c) * math.cos(j * math.pi / (m + 1)) ** 2 for j in range(1, m // 2 + 1)
    )


def grid_vert_formula(m: int, n: int, x=1.0, a=1.0, b1=1.0, b2=1.0) -> float:
    """Closed-form Z of the m x n grid dicot with doubled vertical edges."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    x, a, b1, b2 = float(x), float(a), float(b1), float(b2)
    bb = b1 * b1 + b2 * b2
    core = math.prod(
        (
            x * x
            + 4 * a * a * math.cos(j * math.pi / (m + 1)) ** 2
            + 4 * bb * math.cos(k * math.pi / (n + 1)) ** 2
        )
        ** 2
        for j in range(1, m // 2 + 1)
        for k in range(1, n // 2 + 1)
    )
    if m % 2 == 0 and n % 2 == 0:
        return core
    if m % 2 == 0:
        return core * y_factor(m, a, 0, x)
    if n % 2 == 0:
        return core * y_factor(n, b1, b2, x)
    return core * x * y_factor(m, a, 0, x) * y_factor(n, b1, b2, x)


def _wheel_positions(n: int) -> list[int]:
    """labels[p] for positions p = 0 .. 2n-1 around the circle."""
    labels = [0] * (2 * n)
    for i in range(n):
        labels[2 * i] = i + 1
        labels[(n + 2 * i) % (2 * n)] = n + 1 + i
    return labels


def wheel_dicot(n: int, x=1, a=1, b=1) -> Dicot:
    """Solid 2n-cycle with dashed chords between antipodal vertices, n odd.

    Labels 1..n go on every other position starting from position 0, and
    n+1..2n on every other position starting from the antipode of 1, so each
    vertex has both solid edges pointing in or both pointing out under the
    smaller -> larger orientation.
    """
    if n % 2 == 0 or n < 1:
        raise EvenOrder(n)
    pos = _wheel_positions(n)
    solid = []
    for p in range(2 * n):
        u, v = pos[p], pos[(p + 1) % (2 * n)]
        solid.append((min(u, v), max(u, v), a))
    dashed = [(pos[p], pos[p + n], b) for p in range(n)]
    return make_dicot([x] * (2 * n), solid, dashed)


def wheel_coords(n: int) -> dict[int, tuple[float, float]]:
    """Clockwise positions on the unit circle (for drawing only)."""
    pos = _wheel_positions(n)
    return {
        pos[p]: (math.sin(2 * math.pi * p / (2 * n)), -math.cos(2 * math.pi * p / (2 * n)))
        for p in range(2 * n)
    }


def wheel_formula(n: int, x=1.0, a=1.0, b=1.0) -> float:
    """prod_{j < n} (x^2 + b^2 + 4 a^2 cos^2(pi j / n)) for odd n."""
    if n % 2 == 0 or n < 1:
        raise EvenOrder(n)
    x, a, b = float(x), float(a), float(b)
    return math.prod(x * x + b * b + 4 * a * a * math.cos(math.pi * j / n) ** 2 for j in range(n))


def cycle_formula(n: int, x=1, a=1) -> Fraction:
    """a^(2n) L_2n(x / a), exact."""
    x, a = as_fraction(x), as_fraction(a)
    return a ** (2 * n) * lucas(2 * n, x / a)


FAMILIES = ("cycle", "grid", "grid_quotient", "grid_vert", "wheel")


@dataclass(frozen=True)
class FamilySpec:
    """A family member with its weights, as given on the command line.

    For ``grid`` and ``grid_quotient``, ``m`` and ``n`` are half the column
    and row counts of the grid graph. For ``grid_vert`` they are the column
    and row counts themselves. ``cycle`` and ``wheel`` use ``n`` only.
    """

    family: str
    n: int
    m: int = 1
    x: Fraction = Fraction(1)
    a: Fraction = Fraction(1)
    b: Fraction = Fraction(1)
    b1: Fraction = Fraction(1)
    b2: Fraction = Fraction(1)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        for name in ("x", "a", "b", "b1", "b2"):
            if as_fraction(getattr(self, name)) <= 0:
                raise ValueError(f"weight {name} must be positive")
        if self.family == "wheel" and self.n % 2 == 0:
            raise EvenOrder(self.n)
        if self.n < 1 or self.m < 1:
            raise ValueError("size parameters must be positive")

    def dicot(self) -> Dicot:
        f = self.family
        if f == "cycle":
            return cycle_dicot(self.n, self.x, self.a, self.b)
        if f == "grid":
            return grid_graph(2 * self.m, 2 * self.n, self.x, self.a, self.b)
        if f == "grid_quotient":
            return grid_quotient_dicot(2 * self.m, self.n, self.x, self.a, self.b)
        if f == "grid_vert":
            return grid_vert_dicot(self.m, self.n, self.x, self.a, self.b1, self.b2)
        return wheel_dicot(self.n, self.x, self.a, self.b)

    def formula(self) -> float | Fraction | None:
        """Closed form: exact for cycles with b = a, a float otherwise (None if unknown)."""
        f = self.family
        if f == "cycle":
            if as_fraction(self.b) != as_fraction(self.a):
                return None
            return cycle_formula(self.n, self.x, self.a)
        if f == "grid":
            return grid_partition_formula(self.m, self.n, self.x, self.a, self.b)
        if f == "grid_quotient":
            return grid_quotient_formula(self.m, self.n, self.x, self.a, self.b)
        if f == "grid_vert":
            return grid_vert_formula(self.m, self.n, self.x, self.a, self.b1, self.b2)
        return wheel_formula(self.n, self.x, self.a, self.b)
