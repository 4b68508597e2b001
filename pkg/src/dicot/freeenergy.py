"""Free energies of the cycle, wheel and vertical-grid families.

Cycle and wheel limits have closed forms. The grid limit is a double
integral evaluated by nested adaptive Simpson quadrature.
"""

from __future__ import annotations

import math
from typing import Callable

__all__ = [
    "QuadratureNonConvergence",
    "adaptive_simpson",
    "cycle_free_energy",
    "wheel_free_energy",
    "wheel_free_energy_alpha",
    "grid_vert_free_energy",
    "grid_vert_refinements",
    "free_energy",
]


class QuadratureNonConvergence(ArithmeticError):
    pass


def adaptive_simpson(f: Callable[[float], float], a: float, b: float, tol: float = 1e-10,
                     max_depth: int = 50) -> float:
    """Adaptive Simpson rule with Richardson extrapolation.

    A panel is accepted when its two halves differ from the whole by less
    than 15 * tol_panel; the extrapolated value S2 + (S2 - S1) / 15 is kept.
    """
    def simpson(fa, fm, fb, h):
        return h / 6.0 * (fa + 4.0 * fm + fb)

    fa, fb, fm = f(a), f(b), f((a + b) / 2)
    total = 0.0
    stack = [(a, b, fa, fm, fb, simpson(fa, fm, fb, b - a), tol, 0)]
    while stack:
        lo, hi, flo, fmid, fhi, whole, eps, depth = stack.pop()
        mid = (lo + hi) / 2
        fl, fr = f((lo + mid) / 2), f((mid + hi) / 2)
        left = simpson(flo, fl, fmid, mid - lo)
        right = simpson(fmid, fr, fhi, hi - mid)
        delta = left + right - whole
        if abs(delta) <= 15.0 * eps:
            total += left + right + delta / 15.0
        elif depth >= max_depth:
            raise QuadratureNonConvergence(f"panel [{lo}, {hi}] did not converge at depth {depth}")
        else:
            stack.append((lo, mid, flo, fl, fmid, left, eps / 2, depth + 1))
            stack.append((mid, hi, fmid, fr, fhi, right, eps / 2, depth + 1))
    return total


def cycle_free_energy(x: float = 1.0, a: float = 1.0) -> float:
    """Per-vertex free energy of cycle dicots: log((x + sqrt(x^2 + 4a^2)) / 2)."""
    x, a = float(x), float(a)
    return math.log((x + math.sqrt(x * x + 4 * a * a)) / 2)


def wheel_free_energy_alpha(alpha: float) -> float:
    """2 log((1 + sqrt(1 + alpha)) / 2), the wheel limit with x^2 + b^2 scaled to 1."""
    return 2 * math.log((1 + math.sqrt(1 + alpha)) / 2)


def wheel_free_energy(x: float = 1.0, a: float = 1.0, b: float = 1.0) -> float:
    """lim (1/n) log Z(W_n).

    Each factor is (x^2 + b^2)(1 + alpha cos^2) with alpha = 4a^2/(x^2+b^2),
    so this is log(x^2 + b^2) plus the scaled form; the two agree when
    x^2 + b^2 = 1.
    """
    x, a, b = float(x), float(a), float(b)
    s = x * x + b * b
    return math.log(s) + wheel_free_energy_alpha(4 * a * a / s)


def grid_vert_free_energy(x: float = 1.0, a: float = 1.0, b1: float = 1.0, b2: float = 1.0,
                          tol: float = 1e-10) -> float:
    """(2 / pi^2) times the integral over [0, pi/2]^2 of log(x^2 + 4a^2 cos^2 t + 4|b|^2 cos^2 p).

    ``tol`` bounds the absolute error of the outer integral; inner
    integrals run at a tenth of it.
    """
    x, a, b1, b2 = float(x), float(a), float(b1), float(b2)
    if x <= 0:
        raise ValueError("vertex weight must be positive")
    bb = b1 * b1 + b2 * b2
    half_pi = math.pi / 2
    inner_tol = tol / 10

    def inner(theta: float) -> float:
        c = x * x + 4 * a * a * math.cos(theta) ** 2
        return adaptive_simpson(lambda phi: math.log(c + 4 * bb * math.cos(phi) ** 2), 0.0, half_pi, inner_tol)

    return 2 / math.pi**2 * adaptive_simpson(inner, 0.0, half_pi, tol)


def grid_vert_refinements(x: float = 1.0, a: float = 1.0, b1: float = 1.0, b2: float = 1.0,
                          tols=(1e-6, 1e-7, 1e-8, 1e-9)) -> list[tuple[float, float]]:
    """(tol, value) for a sequence of tightening tolerances."""
    return [(t, grid_vert_free_energy(x, a, b1, b2, tol=t)) for t in tols]


def free_energy(family: str, **params) -> float:
    """Dispatch on ``family`` in {"cycle", "wheel", "grid_vert"}.

    ``wheel`` also accepts ``alpha`` alone.
    """
    if family == "cycle":
        return cycle_free_energy(params.get("x", 1.0), params.get("a", 1.0))
    if family == "wheel":
        if "alpha" in params:
            return wheel_free_energy_alpha(float(params["alpha"]))
        return wheel_free_energy(params.get("x", 1.0), params.get("a", 1.0), params.get("b", 1.0))
    if family == "grid_vert":
        return grid_vert_free_energy(
            params.get("x", 1.0), params.get("a", 1.0), params.get("b1", 1.0), params.get("b2", 1.0),
            tol=params.get("tol", 1e-10),
        )
    raise ValueError(f"no free energy for family {family!r}; choose cycle, wheel or grid_vert")
