"""Random sub-dicots of complete dicots, for property checks."""

from __future__ import annotations

import random
from fractions import Fraction

from .core import Dicot, make_dicot

__all__ = ["random_weight", "random_subdicot"]


def random_weight(rng: random.Random, lo=Fraction(1, 3), hi=Fraction(3), max_den: int = 6) -> Fraction:
    """A random rational in [lo, hi] with denominator at most ``max_den``."""
    while True:
        q = rng.randint(1, max_den)
        p = rng.randint(0, int(hi * q))
        w = Fraction(p, q)
        if lo <= w <= hi:
            return w


def random_subdicot(rng: random.Random, half: int, density: float = 0.6, flip: float = 0.5) -> Dicot:
    """Keep each edge of the complete dicot on 2*half vertices with probability ``density``.

    Weights are random rationals in [1/3, 3]; each kept solid edge is
    reversed with probability ``flip``.
    """
    n = 2 * half
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if (u + v) % 2]
    solid, dashed = [], []
    for u, v in pairs:
        if rng.random() < density:
            t, h = (v, u) if rng.random() < flip else (u, v)
            solid.append((t, h, random_weight(rng)))
        if rng.random() < density:
            dashed.append((u, v, random_weight(rng)))
    return make_dicot([random_weight(rng) for _ in range(n)], solid, dashed)
