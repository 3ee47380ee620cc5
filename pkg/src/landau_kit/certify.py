"""Numerical certificates for univalence, covering and starlikeness claims.

These are grid-level checks: a ``pass`` corroborates a statement on a finite
sample, a ``fail`` always comes with a witness that can be re-evaluated
directly.  None of this is a proof.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from ._solve import bisect, golden_min
from .core import SeriesFunction, as_complex
from .maps import BiAnalyticMap, analytic_map, make_F1, make_F2, max_stretch, wirtinger_arrays
from .radii import Theorem1Params, Theorem2Params, h0, rho1, rho2_sigma2

PAIRWISE_CAP = 40_000
VANISHING = 1e-12
VERDICTS = ("pass", "fail", "inconclusive")
KINDS = (
    "injectivity", "jacobian", "coverage", "starlike", "sharpness",
    "lemma1", "lemma4", "carlson", "lemma3",
)


class GridCapError(ValueError):
    """Too many grid points for a pairwise check."""


class VanishingMapError(ValueError):
    """The map vanishes (numerically) on a circle where it is divided by."""


@dataclass(frozen=True)
class GridSpec:
    """Polar grid: the origin plus ``n_radial`` circles of ``n_angular`` points.

    With ``includes_boundary`` the outermost circle is ``|z| = radius``;
    otherwise circles sit at the midpoints ``radius (k - 1/2) / n_radial``.
    """

    n_radial: int
    n_angular: int
    radius: float
    includes_boundary: bool = True
    cap: int = PAIRWISE_CAP

    def __post_init__(self):
        if self.n_radial < 2 or self.n_angular < 8:
            raise ValueError("need n_radial >= 2 and n_angular >= 8")
        if not 0 < self.radius < 1:
            raise ValueError("grid radius must lie in (0, 1)")

    @property
    def size(self) -> int:
        return self.n_radial * self.n_angular + 1

    def levels(self) -> np.ndarray:
        k = np.arange(1, self.n_radial + 1)
        if self.includes_boundary:
            return self.radius * k / self.n_radial
        return self.radius * (k - 0.5) / self.n_radial

    def points(self) -> np.ndarray:
        theta = 2 * np.pi * np.arange(self.n_angular) / self.n_angular
        ring = np.outer(self.levels(), np.exp(1j * theta)).ravel()
        return np.concatenate([[0j], ring])

    def spacing(self) -> float:
        """Largest distance from a disk point to its nearest grid point (upper bound)."""
        dr = self.radius / self.n_radial
        arc = self.radius * 2 * np.pi / self.n_angular
        return 0.5 * math.hypot(dr, arc) + (dr if not self.includes_boundary else 0.0)

    def to_dict(self) -> dict:
        return {
            "n_radial": self.n_radial,
            "n_angular": self.n_angular,
            "radius": self.radius,
            "includes_boundary": self.includes_boundary,
        }


@dataclass(frozen=True)
class Witness:
    z1: complex
    z2: complex | None = None
    f1: complex | None = None
    f2: complex | None = None

    def to_dict(self) -> dict:
        pair = lambda w: None if w is None else [float(w.real), float(w.imag)]  # noqa: E731
        return {"z1": pair(self.z1), "z2": pair(self.z2), "f1": pair(self.f1), "f2": pair(self.f2)}


@dataclass(frozen=True)
class CertificateReport:
    kind: str
    verdict: str
    measured: float
    witness: Witness | None = None
    grid: GridSpec | None = None
    tolerance: float = 0.0
    seed: int | None = None
    notes: str = ""
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown report kind {self.kind!r}")
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.verdict == "fail" and self.witness is None:
            raise ValueError("a failing report needs a witness")
        if not math.isfinite(self.measured):
            raise ValueError("measured value must be finite")

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def __str__(self):
        level = " (grid-level)" if self.kind == "injectivity" and self.passed else ""
        return f"{self.kind}: {self.verdict}{level}, measured={self.measured:.6g}"

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "verdict": self.verdict,
            "measured": self.measured,
            "witness": None if self.witness is None else self.witness.to_dict(),
            "grid": None if self.grid is None else self.grid.to_dict(),
            "tolerance": self.tolerance,
            "seed": self.seed,
            "notes": self.notes,
            "details": self.details,
        }


def _verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


# ---------------------------------------------------------------------------
# injectivity


def _local_spacing(z: np.ndarray, grid: GridSpec) -> np.ndarray:
    dr = grid.radius / grid.n_radial
    return np.maximum(dr, np.abs(z) * 2 * np.pi / grid.n_angular)


def _solve_preimage(f: BiAnalyticMap, target, start, radius: float, step_cap: float, iters=40):
    """Damped Newton for ``F(z) = target`` from ``start`` (vectorized).

    Uses ``dz = (conj(F_z) R - F_zbar conj(R)) / J`` which solves the real
    2x2 system ``F_z dz + F_zbar conj(dz) = R``.
    """
    z = start.copy()
    alive = np.ones(z.shape, dtype=bool)
    for _ in range(iters):
        res = target - f(z)
        fz, fzb = wirtinger_arrays(f, z)
        jac = np.abs(fz) ** 2 - np.abs(fzb) ** 2
        bad = np.abs(jac) < 1e-300
        jac = np.where(bad, 1.0, jac)
        dz = (np.conj(fz) * res - fzb * np.conj(res)) / jac
        size = np.abs(dz)
        dz = np.where(size > step_cap, dz * step_cap / np.maximum(size, 1e-300), dz)
        z = z + np.where(alive & ~bad, dz, 0)
        out = np.abs(z) > radius
        z = np.where(out, z * (radius / np.maximum(np.abs(z), radius)), z)
        alive &= ~bad
    return z


def injectivity_check(
    f: BiAnalyticMap,
    grid: GridSpec,
    min_sep: float = 1e-3,
    tolerance: float = 1e-9,
    refine: bool = True,
) -> CertificateReport:
    """Look for ``z1 != z2`` in the grid disk with ``F(z1) = F(z2)``.

    Grid pairs whose images are within ``tolerance`` fail immediately.  Pairs
    that are far apart in the disk but whose images are within one covering
    radius of each other (found with a k-d tree over the image points) are
    refined: Newton's method solves ``F(z) = F(z1)`` from ``z2`` and a
    converged solution at distance ``>= min_sep`` from ``z1`` is a collision.
    """
    if grid.size > grid.cap:
        raise GridCapError(f"{grid.size} grid points exceed the cap of {grid.cap}")
    z = grid.points()
    w = f(z)
    tree = cKDTree(np.column_stack([w.real, w.imag]))

    close = tree.query_pairs(tolerance, output_type="ndarray")
    if close.size:
        sep = np.abs(z[close[:, 0]] - z[close[:, 1]])
        hit = np.flatnonzero(sep >= min_sep)
        if hit.size:
            i, j = close[hit[0]]
            return CertificateReport(
                "injectivity", "fail", float(abs(w[i] - w[j])),
                Witness(complex(z[i]), complex(z[j]), complex(w[i]), complex(w[j])),
                grid, tolerance, notes="grid-level collision",
            )

    stretch = float(np.max(max_stretch(f, z)))
    reach = stretch * grid.spacing()
    pairs = tree.query_pairs(reach, output_type="ndarray")
    far_floor = 2.5 * np.maximum(_local_spacing(z, grid), min_sep / 2.5)
    if pairs.size:
        i, j = pairs[:, 0], pairs[:, 1]
        sep = np.abs(z[i] - z[j])
        keep = (sep > far_floor[i]) & (sep > far_floor[j]) & (sep >= min_sep)
        i, j, sep = i[keep], j[keep], sep[keep]
    else:
        i = j = np.empty(0, dtype=int)
        sep = np.empty(0)

    measured = reach / (2 * grid.radius)
    if sep.size:
        measured = min(measured, float(np.min(np.abs(w[i] - w[j]) / sep)))
    details = {"candidates": int(sep.size), "reach": reach}

    if refine and sep.size:
        # try both orientations so either point can play the fixed role
        a = np.concatenate([i, j])
        b = np.concatenate([j, i])
        zs = _solve_preimage(f, w[a], z[b].astype(complex), grid.radius, grid.spacing())
        resid = np.abs(f(zs) - w[a])
        dist = np.abs(zs - z[a])
        ok = (resid <= tolerance * np.maximum(1.0, np.abs(w[a]))) & (dist >= min_sep)
        if np.any(ok):
            k = np.flatnonzero(ok)[np.argmax(dist[ok])]
            z1, z2 = complex(z[a[k]]), complex(zs[k])
            f1, f2 = complex(f(z1)), complex(f(z2))
            return CertificateReport(
                "injectivity", "fail", float(abs(f1 - f2)), Witness(z1, z2, f1, f2),
                grid, tolerance, notes="refined collision", details=details,
            )

    return CertificateReport(
        "injectivity", "pass", measured, None, grid, tolerance, notes="grid-level", details=details
    )


# ---------------------------------------------------------------------------
# Jacobian, coverage, starlikeness


def jacobian_positivity(f: BiAnalyticMap, grid: GridSpec) -> CertificateReport:
    """Minimum of ``J_F`` over the grid; passes when it is positive."""
    z = grid.points()
    fz, fzb = wirtinger_arrays(f, z)
    jac = np.abs(fz) ** 2 - np.abs(fzb) ** 2
    k = int(np.argmin(jac))
    zk = complex(z[k])
    return CertificateReport(
        "jacobian", _verdict(jac[k] > 0), float(jac[k]),
        Witness(zk, None, complex(f(zk))), grid, 0.0,
        details={"argmin": [zk.real, zk.imag]},
    )


def boundary_min_modulus(f: BiAnalyticMap, r: float, n_angular: int = 256) -> tuple[float, float]:
    """``min |F(r e^{it})|`` and its angle, grid search then golden-section refinement."""
    theta = 2 * np.pi * np.arange(n_angular) / n_angular
    mod = np.abs(f(r * np.exp(1j * theta)))
    k = int(np.argmin(mod))
    step = 2 * np.pi / n_angular
    t, m = golden_min(
        lambda s: abs(complex(f(r * complex(math.cos(s), math.sin(s))))),
        theta[k] - step, theta[k] + step, tol=1e-10,
    )
    if mod[k] <= m:
        t, m = float(theta[k]), float(mod[k])
    t = math.remainder(t, 2 * math.pi)
    return float(m), t


def coverage_min_modulus(
    f: BiAnalyticMap,
    r: float,
    n_angular: int = 256,
    claimed_sigma: float | None = None,
    tolerance: float = 1e-6,
) -> CertificateReport:
    """Radius of the disk about ``F(0) = 0`` covered by ``F(D_r)``.

    For ``F`` univalent on ``D_r`` this is the smallest modulus on the
    boundary circle.  Without ``claimed_sigma`` the check only asks for a
    positive radius.
    """
    if not 0 < r < 1:
        raise ValueError("r must lie in (0, 1)")
    m, t = boundary_min_modulus(f, r, n_angular)
    claim = 0.0 if claimed_sigma is None else claimed_sigma
    ok = m >= claim - tolerance if claimed_sigma is not None else m > 0
    zt = r * complex(math.cos(t), math.sin(t))
    return CertificateReport(
        "coverage", _verdict(ok), m, Witness(zt, None, complex(f(zt))),
        GridSpec(2, max(n_angular, 8), r), tolerance,
        details={"theta_min": t, "claimed_sigma": claimed_sigma},
    )


def starlike_boundary_check(
    f: BiAnalyticMap, r: float, n_angular: int = 256, tolerance: float = 1e-12
) -> CertificateReport:
    """Sign of ``Re((z F_z - conj(z) F_zbar) / F)`` on the circles ``|z| = k r / 10``."""
    if not 0 < r < 1:
        raise ValueError("r must lie in (0, 1)")
    theta = 2 * np.pi * np.arange(n_angular) / n_angular
    z = np.outer(r * np.arange(1, 11) / 10, np.exp(1j * theta)).ravel()
    val = f(z)
    if np.any(np.abs(val) < VANISHING):
        k = int(np.argmin(np.abs(val)))
        raise VanishingMapError(f"F vanishes near z = {complex(z[k])!r}")
    fz, fzb = wirtinger_arrays(f, z)
    q = np.real((z * fz - np.conj(z) * fzb) / val)
    k = int(np.argmin(q))
    return CertificateReport(
        "starlike", _verdict(q[k] > tolerance), float(q[k]),
        Witness(complex(z[k]), None, complex(val[k])),
        GridSpec(10, max(n_angular, 8), r), tolerance,
    )


# ---------------------------------------------------------------------------
# sharpness witnesses


def sharpness_witness_F1(p: Theorem1Params, r: float) -> CertificateReport:
    """Two points of ``D_r`` with equal ``F1`` values, for any ``r`` in ``(rho1, 1]``.

    ``h0 = F1`` on the real axis rises on ``[0, rho1)`` and falls afterwards.
    Step ``eps`` past ``rho1`` (half way to ``r``, and to the second zero of
    ``h0`` when ``h0(1) <= 0``) and find the point below ``rho1`` with the same
    value by bisection.
    """
    rho = rho1(p)
    if not rho < r <= 1:
        raise ValueError(f"need rho1 = {rho:.6g} < r <= 1, got r = {r!r}")
    hx = lambda x: float(h0(x, p))  # noqa: E731
    eps = (r - rho) / 2
    zero = None
    if hx(1.0) <= 0:
        zero, _ = bisect(hx, rho, 1.0, tol=1e-15)
        eps = min(eps, (zero - rho) / 2)
    x1 = rho + eps
    target = hx(x1)
    x2, _ = bisect(lambda x: hx(x) - target, 0.0, rho, tol=1e-16)
    f = make_F1(p)
    f1, f2 = complex(f(x1)), complex(f(x2))
    gap = abs(f1 - f2)
    return CertificateReport(
        "sharpness", _verdict(gap <= 1e-10), gap, Witness(x1, x2, f1, f2), None, 1e-10,
        details={"rho1": rho, "eps": eps, "h0_zero": zero},
    )


def collision_witness_F2(lam: float, r: float) -> CertificateReport:
    """Equal values of ``lam |z|^2 + z`` at ``-1/(2 lam) +- delta`` inside ``D_r``.

    ``lam x^2 + x`` takes the same value at ``x`` and ``-x - 1/lam``, so any
    ``r > 1/(2 lam)`` admits a collision.
    """
    if lam <= 0:
        raise ValueError("lambda must be positive for a collision")
    centre = 1 / (2 * lam)
    if not centre < r < 1:
        raise ValueError(f"need 1/(2 lambda) = {centre:.6g} < r < 1")
    delta = (r - centre) / 2
    x1, x2 = -centre + delta, -centre - delta
    f = make_F2(lam)
    f1, f2 = complex(f(x1)), complex(f(x2))
    gap = abs(f1 - f2)
    return CertificateReport(
        "sharpness", _verdict(gap <= 1e-12), gap, Witness(x1, x2, f1, f2), None, 1e-12,
        details={"rho2": rho2_sigma2(Theorem2Params(lam)).rho, "delta": delta},
    )


# ---------------------------------------------------------------------------
# Lemma-level checks


def _uniform_disk(rng: np.random.Generator, n: int, r: float) -> np.ndarray:
    out = np.empty(0, dtype=complex)
    while out.size < n:
        cand = rng.uniform(-r, r, size=(2 * n, 2)) @ np.array([1, 1j])
        out = np.concatenate([out, cand[np.abs(cand) <= r]])
    return out[:n]


def lemma1_distortion_check(
    h,
    lam: float,
    r: float,
    n_pairs: int = 1000,
    seed: int = 0,
    tolerance: float = 1e-10,
    n_angular: int = 256,
) -> CertificateReport:
    """Distortion and growth lower bounds for ``H`` with ``H'(0) = 1``, ``|H'| < lam``.

    (1) ``|H(z1) - H(z2)| >= lam (1 - lam r) / (lam - r) |z1 - z2|`` on ``D_r``;
    (2) ``min_{|z| = r} |H| >= lam^2 r + (lam^3 - lam) log(1 - r/lam)``.
    A non-positive right side makes that part vacuous, which is recorded.
    """
    if not lam > 1:
        raise ValueError("lambda must exceed 1")
    if not 0 < r < 1:
        raise ValueError("r must lie in (0, 1)")
    if abs(complex(h(0.0))) > 1e-9 or abs(complex(h.deriv(0.0)) - 1) > 1e-9:
        raise ValueError("H must satisfy H(0) = 0 and H'(0) = 1")
    from .coeffs import make_rng

    rng = make_rng(seed)
    pts = _uniform_disk(rng, 2 * n_pairs, r)
    z1, z2 = pts[:n_pairs], pts[n_pairs:]
    factor = lam * (1 - lam * r) / (lam - r)
    growth = lam * lam * r + (lam**3 - lam) * math.log1p(-r / lam)

    notes, margins, witness = [], [], None
    d1 = d2 = None
    if factor <= 0:
        notes.append("distortion bound vacuous")
    else:
        gap = np.abs(h(z1) - h(z2)) - factor * np.abs(z1 - z2)
        k = int(np.argmin(gap))
        d1 = float(gap[k])
        margins.append(d1)
        if d1 < -tolerance:
            witness = Witness(complex(z1[k]), complex(z2[k]), complex(h(z1[k])), complex(h(z2[k])))
    if growth <= 0:
        notes.append("growth bound vacuous")
    else:
        m, t = boundary_min_modulus(analytic_map(h), r, n_angular)
        d2 = m - growth
        margins.append(d2)
        if d2 < -tolerance and witness is None:
            zt = r * complex(math.cos(t), math.sin(t))
            witness = Witness(zt, None, complex(h(zt)))
    measured = min(margins) if margins else 0.0
    return CertificateReport(
        "lemma1", "fail" if witness is not None else "pass", measured, witness, None,
        tolerance, seed, notes="; ".join(notes),
        details={"distortion_margin": d1, "growth_margin": d2, "factor": factor, "growth_bound": growth},
    )


def _tail_padding(s: SeriesFunction, r: float, weight: str) -> float:
    """Bound the omitted part of the weighted coefficient sums from the tail bound.

    Cauchy estimates for the tail on the disk of radius ``R`` give
    ``|a_n| <= T / R**n`` for ``n > N``.
    """
    t, big_r, n = s.tail_bound, s.radius, s.truncation_order
    if t == 0:
        return 0.0
    q = r / big_r
    if q >= 1:
        return math.inf
    if weight == "h":
        # sum_{n>N} n |b_n| r^(n-1)
        return t / big_r * q**n * ((n + 1) - n * q) / (1 - q) ** 2
    # sum_{n>N} (n+1) |a_n| r^n
    return t * q ** (n + 1) * ((n + 2) - (n + 1) * q) / (1 - q) ** 2


def lemma4_sum(g: SeriesFunction, h: SeriesFunction, r: float) -> float:
    """``sum_{n>=2} n |b_n| r^(n-1) + sum_{n>=1} (n+1) |a_n| r^n`` with error padding."""
    a = np.abs(g.coeffs) + g.errors
    b = np.abs(h.coeffs) + h.errors
    na, nb = np.arange(a.size), np.arange(b.size)
    s_h = float(np.sum((nb * b * r ** np.maximum(nb - 1, 0))[2:]))
    s_g = float(np.sum(((na + 1) * a * r**na)[1:]))
    return s_h + s_g + _tail_padding(h, r, "h") + _tail_padding(g, r, "g")


def lemma4_radius(g: SeriesFunction, h: SeriesFunction, tol: float = 1e-12) -> float:
    """Largest ``r`` in ``(0, 1)`` where :func:`lemma4_sum` stays at most 1.

    In that disk ``F = conj(z) G + H`` is sense-preserving, univalent and
    fully starlike.
    """
    if h.coeffs.size < 2 or abs(h.coeffs[1] - 1) > 1e-9 or abs(h.coeffs[0]) > 1e-9:
        raise ValueError("H must be normalized: H(0) = 0, b_1 = 1")
    if abs(g.coeffs[0]) > 1e-9:
        raise ValueError("G must vanish at 0")
    if np.all(g.coeffs == 0) and g.tail_bound == 0:
        raise ValueError("G must not vanish identically")
    hi = 1.0
    for s in (g, h):
        if s.tail_bound > 0:
            hi = min(hi, s.radius)
    if lemma4_sum(g, h, hi * (1 - 1e-15)) <= 1:
        return hi
    lo = 0.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if lemma4_sum(g, h, mid) <= 1:
            lo = mid
        else:
            hi = mid
    return lo


def lemma4_report(g: SeriesFunction, h: SeriesFunction, tol: float = 1e-12) -> CertificateReport:
    r = lemma4_radius(g, h, tol)
    return CertificateReport(
        "lemma4", "pass" if r > 0 else "inconclusive", r, None, None, tol,
        details={"sum_at_radius": lemma4_sum(g, h, r) if r > 0 else 0.0},
    )


def reverify(f: BiAnalyticMap, w: Witness) -> float:
    """Recompute ``|F(z1) - F(z2)|`` for a collision witness, outside the grid machinery."""
    z1, z2 = as_complex(w.z1), as_complex(w.z2)
    return abs(complex(f(z1)) - complex(f(z2)))
