"""Golden-section search for smooth one-dimensional problems."""
from math import sqrt
from typing import Callable, Tuple

INV_PHI = (sqrt(5) - 1) / 2


def golden_section_max(f: Callable[[float], float], lo: float, hi: float,
                       tol: float = 1e-10, max_iter: int = 200) -> Tuple[float, float]:
    """Maximise a unimodal ``f`` on ``[lo, hi]``; returns ``(x, f(x))``.

    The endpoints are compared against the interior optimum, so monotone
    objectives return the right boundary point.
    """
    a, b = lo, hi
    x1 = b - INV_PHI * (b - a)
    x2 = a + INV_PHI * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - INV_PHI * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + INV_PHI * (b - a)
            f2 = f(x2)
    x, fx = (x1, f1) if f1 >= f2 else (x2, f2)
    for xe in (lo, hi):
        fe = f(xe)
        if fe > fx:
            x, fx = xe, fe
    return x, fx


def golden_section_min(f: Callable[[float], float], lo: float, hi: float,
                       tol: float = 1e-10, max_iter: int = 200) -> Tuple[float, float]:
    x, fx = golden_section_max(lambda t: -f(t), lo, hi, tol, max_iter)
    return x, -fx
