"""Univalence and covering radii for the bi-analytic and biharmonic classes.

Each solver returns a :class:`RadiusResult` pairing the univalence radius
``rho`` with the covering (schlicht disk) radius ``sigma``.  Closed forms are
evaluated directly.  The transcendental radii come from bisection on a
verified sign change, and the constant in the harmonic estimate ``tA`` is
recomputed by golden-section search.

Ids: ``t1``-``t4`` are the sharp bi-analytic radii, ``tA``-``tE`` the older
harmonic and biharmonic estimates used for comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._solve import BracketError, bisect, golden_min

ROOT_TOL = 1e-13
BRACKET = (1e-15, 1.0 - 1e-15)
MONOTONE_SAMPLES = 1000


class UniquenessDefect(RuntimeError):
    """A root equation failed the strict-decrease check on (0, 1)."""


@dataclass(frozen=True)
class Theorem1Params:
    """Bounds ``|G'| <= lambda1`` and ``|H'| < lambda2``."""

    lambda1: float
    lambda2: float

    def __post_init__(self):
        if not (math.isfinite(self.lambda1) and self.lambda1 >= 0):
            raise ValueError("lambda1 must be >= 0")
        if not (math.isfinite(self.lambda2) and self.lambda2 > 1):
            raise ValueError("lambda2 must be > 1")


@dataclass(frozen=True)
class Theorem2Params:
    """Bound ``|G'| <= lam`` with ``H`` bounded by one."""

    lam: float

    def __post_init__(self):
        if not (math.isfinite(self.lam) and self.lam >= 0):
            raise ValueError("lambda must be >= 0")


@dataclass(frozen=True)
class Theorem3Params:
    """Sup bounds ``|G| <= m1`` and ``|H| <= m2`` for normalized G, H.

    Normalized functions (``f(0) = 0``, ``f'(0) = 1``) bounded by ``M`` force
    ``M >= 1`` by the Schwarz lemma, so smaller bounds are rejected.
    """

    m1: float
    m2: float

    def __post_init__(self):
        for name in ("m1", "m2"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 1):
                raise ValueError(
                    f"{name} must be >= 1: a normalized function bounded by M "
                    "on the disk has M >= 1 (Schwarz lemma)"
                )


@dataclass(frozen=True)
class RadiusResult:
    rho: float
    sigma: float
    residual: float = 0.0
    branch: str = "closed_form"
    theorem: str = ""
    params: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# t1: |G'| <= L1, |H'| < L2


def theorem1_quadratic(r: float, p: Theorem1Params) -> float:
    """Numerator ``2 L1 r^2 - L2 (2 L1 + L2) r + L2`` of the univalence bound."""
    l1, l2 = p.lambda1, p.lambda2
    return 2 * l1 * r * r - l2 * (2 * l1 + l2) * r + l2


def rho1(p: Theorem1Params) -> float:
    """Univalence radius for ``|G'| <= L1``, ``|H'| < L2``.

    The smaller root of :func:`theorem1_quadratic`, in the rationalized form
    that stays stable as ``L1 -> 0``.
    """
    l1, l2 = p.lambda1, p.lambda2
    s = l2 * (2 * l1 + l2)
    rho = 2 * l2 / (s + math.sqrt(s * s - 8 * l1 * l2))
    res = abs(theorem1_quadratic(rho, p))
    if res > 1e-12:
        raise ArithmeticError(f"rho1 quadratic residual {res:.3e} exceeds 1e-12")
    return rho


def h0(x, p: Theorem1Params):
    """``L2^2 x - L1 x^2 + (L2^3 - L2) log(1 - x/L2)``, i.e. F1 on the real axis."""
    l1, l2 = p.lambda1, p.lambda2
    return l2 * l2 * x - l1 * x * x + (l2**3 - l2) * np.log1p(-np.asarray(x) / l2)


def h0_prime(x, p: Theorem1Params):
    """Derivative of :func:`h0`; vanishes exactly at ``rho1``."""
    return theorem1_quadratic(x, p) / (p.lambda2 - x)


def sigma1(p: Theorem1Params) -> float:
    return float(h0(rho1(p), p))


def theorem1_radii(p: Theorem1Params) -> RadiusResult:
    rho = rho1(p)
    return RadiusResult(
        rho=rho,
        sigma=float(h0(rho, p)),
        residual=abs(theorem1_quadratic(rho, p)),
        branch="quadratic_root",
        theorem="t1",
        params={"l1": p.lambda1, "l2": p.lambda2},
    )


# ---------------------------------------------------------------------------
# t2: |G'| <= lam, and its biharmonic analogue tD


def rho2_sigma2(p: Theorem2Params) -> RadiusResult:
    lam = p.lam
    if lam <= 0.5:
        rho, branch = 1.0, "lambda<=1/2"
    else:
        rho, branch = 1.0 / (2 * lam), "lambda>1/2"
    return RadiusResult(
        rho=rho, sigma=rho - lam * rho * rho, branch=branch, theorem="t2", params={"lambda": lam}
    )


def theoremD_radii(lam: float) -> RadiusResult:
    if not (math.isfinite(lam) and lam >= 0):
        raise ValueError("lambda must be >= 0")
    if lam <= 1 / 3:
        r, branch = 1.0, "lambda<=1/3"
    else:
        r, branch = 1.0 / math.sqrt(3 * lam), "lambda>1/3"
    return RadiusResult(
        rho=r, sigma=r - lam * r**3, branch=branch, theorem="tD", params={"lambda": lam}
    )


# ---------------------------------------------------------------------------
# t3 / t4: |G| <= M1, |H| <= M2


def theorem3_equation(r, p: Theorem3Params):
    """Left side of the root equation defining ``rho3``; decreasing on (0, 1)."""
    a = p.m2 - 1 / p.m2
    b = p.m1 - 1 / p.m1
    q = (1 - r) ** 2
    return 1 - a * (2 * r - r * r) / q - b * (3 - 2 * r) * r * r / q - 2 * r


def _check_decreasing(fn, what: str):
    r = np.linspace(BRACKET[0], 1 - 1e-3, MONOTONE_SAMPLES)
    v = fn(r)
    if not np.all(np.diff(v) < 0):
        raise UniquenessDefect(f"{what} is not strictly decreasing on (0, 1)")


def rho3(p: Theorem3Params, tol: float = ROOT_TOL) -> float:
    return theorem3_radii(p, tol).rho


def sigma3(p: Theorem3Params, rho: float) -> float:
    if not 0 < rho < 1:
        raise ValueError("rho3 must lie in (0, 1)")
    a = p.m2 - 1 / p.m2
    b = p.m1 - 1 / p.m1
    return rho - rho * rho - a * rho * rho / (1 - rho) - b * rho**3 / (1 - rho)


def theorem3_radii(p: Theorem3Params, tol: float = ROOT_TOL) -> RadiusResult:
    if not tol > 0:
        raise ValueError("tol must be positive")
    eq = lambda r: theorem3_equation(r, p)  # noqa: E731
    if eq(BRACKET[0]) <= 0:
        raise BracketError("t3 root equation is not positive near 0")
    _check_decreasing(eq, "t3 root equation")
    rho, res = bisect(eq, *BRACKET, tol=tol)
    return RadiusResult(
        rho=rho,
        sigma=sigma3(p, rho),
        residual=res,
        branch="bisection",
        theorem="t3",
        params={"m1": p.m1, "m2": p.m2},
    )


def theorem4_radius(p: Theorem3Params, tol: float = ROOT_TOL) -> RadiusResult:
    """Radius of sense preservation, univalence and full starlikeness.

    Same root as ``t3``, with the ``t3`` covering radius.
    """
    res = theorem3_radii(p, tol)
    return RadiusResult(
        rho=res.rho,
        sigma=res.sigma,
        residual=res.residual,
        branch="starlike",
        theorem="t4",
        params=res.params,
    )


# ---------------------------------------------------------------------------
# Older estimates: tA, tB, tC, tE


def theoremC_equation(r, lambda1: float, lambda2: float):
    return lambda2 * (1 - lambda2 * r) / (lambda2 - r) - 3 * lambda1 * r * r


def theoremC_radii(lambda1: float, lambda2: float, tol: float = ROOT_TOL) -> RadiusResult:
    p = Theorem1Params(lambda1, lambda2)
    eq = lambda r: theoremC_equation(r, p.lambda1, p.lambda2)  # noqa: E731
    _check_decreasing(eq, "tC root equation")
    r3, res = bisect(eq, *BRACKET, tol=tol)
    l1, l2 = p.lambda1, p.lambda2
    big_r = l2 * l2 * r3 + (l2**3 - l2) * math.log1p(-r3 / l2) - l1 * r3**3
    return RadiusResult(
        rho=r3,
        sigma=big_r,
        residual=res,
        branch="bisection",
        theorem="tC",
        params={"l1": l1, "l2": l2},
        diagnostics={"rho1": rho1(p)},
    )


def theoremE_radii(m: float) -> RadiusResult:
    if not (math.isfinite(m) and m > 0):
        raise ValueError("M must be > 0")
    r = 1 - math.sqrt(2 * m / (2 * m + 1))
    big_r = r - r * r - m * (r * r + r**3) / (1 - r)
    return RadiusResult(rho=r, sigma=big_r, theorem="tE", params={"m": m})


def theoremA_phi(r):
    return (3 - r * r) / (r * (1 - r * r))


def theoremA_constant(tol: float = 1e-10) -> tuple[float, float]:
    """Minimum ``m`` of ``(3 - r^2) / (r (1 - r^2))`` on (0, 1) and its location."""
    x, m = golden_min(theoremA_phi, 1e-6, 1 - 1e-6, tol=tol)
    return m, x


def theoremA_radius(m_bound: float, tol: float = 1e-10) -> RadiusResult:
    if not (math.isfinite(m_bound) and m_bound > 1):
        raise ValueError("M must be > 1")
    m, x = theoremA_constant(tol)
    r1 = math.pi**2 / (16 * m * m_bound)
    return RadiusResult(
        rho=r1,
        sigma=r1 / 2,
        branch="golden_section",
        theorem="tA",
        params={"m": m_bound},
        diagnostics={"phi_min": m, "phi_argmin": x},
    )


def theoremB_radius(lambda_bound: float) -> RadiusResult:
    if not (math.isfinite(lambda_bound) and lambda_bound >= 1):
        raise ValueError("Lambda must be >= 1")
    r2 = math.pi / (4 * (1 + lambda_bound))
    return RadiusResult(rho=r2, sigma=r2 / 2, theorem="tB", params={"lambda": lambda_bound})
