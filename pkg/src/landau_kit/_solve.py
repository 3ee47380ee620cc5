"""Scalar bracketing solvers shared by the radius and certification code."""

from __future__ import annotations

import math
from typing import Callable

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class BracketError(RuntimeError):
    """The supplied interval does not bracket a sign change."""


def bisect(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-13,
    max_iter: int = 200,
) -> tuple[float, float]:
    """Root of ``f`` on ``[lo, hi]`` by bisection.

    Stops once the bracket is no wider than ``tol`` and ``|f| <= tol`` at the
    returned point, or when the bracket cannot shrink any further in floating
    point.  Returns ``(root, |f(root)|)``.
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo, 0.0
    if fhi == 0:
        return hi, 0.0
    if (flo > 0) == (fhi > 0):
        raise BracketError(f"no sign change on [{lo!r}, {hi!r}]: f = {flo!r}, {fhi!r}")
    best, fbest = (lo, abs(flo)) if abs(flo) < abs(fhi) else (hi, abs(fhi))
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        if abs(fm) < fbest:
            best, fbest = mid, abs(fm)
        if fm == 0:
            return mid, 0.0
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
        if hi - lo <= tol and fbest <= tol:
            break
    return best, fbest


def golden_min(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-10,
    max_iter: int = 500,
) -> tuple[float, float]:
    """Minimize a unimodal ``f`` on ``[a, b]``; returns ``(x, f(x))``."""
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    x = c if fc < fd else d
    return x, min(fc, fd)
