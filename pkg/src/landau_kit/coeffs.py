"""Random bounded analytic functions and coefficient-inequality checks.

Samples of the Schur class (``|f| <= 1``) are finite Blaschke products.  A
Schur function ``chi`` is lifted to a normalized function bounded by ``M``:

    psi(z) = (a + z chi(z)) / (1 + conj(a) z chi(z)),   a = 1/M
    f(z)   = M z psi(z)

so ``f(0) = 0``, ``f'(0) = 1`` and ``|f| <= M``.

Random numbers come from the Philox-4x32-10 counter-based generator keyed
directly by the integer seed, so a seed names the same sample everywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .certify import CertificateReport, Witness
from .core import (
    DEFAULT_SAMPLES,
    ClosedFormFunction,
    SeriesFunction,
    as_complex,
    lemma3_fn,
    taylor_coefficients,
)

MAX_DEGREE = 8
ZERO_RADIUS = 0.9
ABS_SLACK = 1e-9


def make_rng(seed: int) -> np.random.Generator:
    """Philox-4x32-10 generator keyed by ``seed`` (no seed hashing)."""
    if seed < 0:
        raise ValueError("seeds are nonnegative integers")
    return np.random.Generator(np.random.Philox(key=int(seed)))


@dataclass(frozen=True)
class SchurSample:
    """Finite Blaschke product ``rotation * prod (z - a) / (1 - conj(a) z)``."""

    blaschke_degree: int
    zeros: tuple
    rotation: complex
    seed: int | None = None

    def __post_init__(self):
        if not 0 <= self.blaschke_degree <= MAX_DEGREE:
            raise ValueError(f"degree must lie in [0, {MAX_DEGREE}]")
        if len(self.zeros) != self.blaschke_degree:
            raise ValueError("number of zeros must equal the degree")
        if any(abs(a) >= 1 for a in self.zeros):
            raise ValueError("Blaschke zeros must lie inside the unit disk")
        if abs(abs(self.rotation) - 1) > 1e-12:
            raise ValueError("rotation must be unimodular")

    def __call__(self, z):
        z = as_complex(z)
        out = self.rotation * (np.ones_like(z) if np.ndim(z) else 1 + 0j)
        for a in self.zeros:
            out = out * (z - a) / (1 - np.conj(a) * z)
        return out


def sample_schur(seed: int, max_degree: int = MAX_DEGREE) -> SchurSample:
    """Seeded Blaschke product: degree uniform in ``0..max_degree``, zeros uniform in ``|z| <= 0.9``."""
    if not 0 <= max_degree <= MAX_DEGREE:
        raise ValueError(f"max_degree must lie in [0, {MAX_DEGREE}]")
    rng = make_rng(seed)
    deg = int(rng.integers(0, max_degree + 1))
    rad = ZERO_RADIUS * np.sqrt(rng.random(deg))
    ang = 2 * np.pi * rng.random(deg)
    zeros = tuple(complex(z) for z in rad * np.exp(1j * ang))
    rot = complex(np.exp(2j * np.pi * rng.random()))
    return SchurSample(deg, zeros, rot, seed)


@dataclass(frozen=True)
class BMASample:
    """``f = M z psi`` built from a Schur function ``inner`` (``None`` means 0)."""

    m_bound: float
    inner: SchurSample | None = None

    @property
    def seed(self):
        return None if self.inner is None else self.inner.seed

    @property
    def degree(self):
        return 0 if self.inner is None else self.inner.blaschke_degree

    def psi(self, z):
        z = as_complex(z)
        a = 1.0 / self.m_bound
        if self.inner is None:
            return a * (np.ones_like(z) if np.ndim(z) else 1 + 0j)
        u = z * self.inner(z)
        return (a + u) / (1 + a * u)

    def __call__(self, z):
        z = as_complex(z)
        return self.m_bound * z * self.psi(z)


def lift_to_BMA(m_bound: float, chi: SchurSample | None) -> BMASample:
    if not m_bound >= 1:
        raise ValueError("M must be >= 1")
    return BMASample(float(m_bound), chi)


def sample_bma(seed: int, m_bound: float, max_degree: int = MAX_DEGREE) -> BMASample:
    return lift_to_BMA(m_bound, sample_schur(seed, max_degree))


def extract(f, n_max: int, bound: float, n_samples: int = DEFAULT_SAMPLES) -> SeriesFunction:
    """Coefficients of a function bounded by ``bound`` on the disk."""
    return taylor_coefficients(f, n_max, n_samples=max(n_samples, 4 * n_max), bound=bound)


def _square_err(a: np.ndarray, e: np.ndarray) -> np.ndarray:
    """Error bound of ``|a|^2`` given an error ``e`` on ``a``."""
    return 2 * np.abs(a) * e + e * e


def check_carlson(f: SeriesFunction, n_max: int) -> CertificateReport:
    """Carlson's inequalities for a function bounded by one.

    (a) ``|a_{2n+1}| <= 1 - |a_0|^2 - ... - |a_n|^2``
    (b) ``|a_{2n}| <= 1 - |a_0|^2 - ... - |a_{n-1}|^2 - |a_n|^2 / (1 + |a_0|)``
    """
    if n_max > f.truncation_order:
        raise ValueError("n_max exceeds the available coefficients")
    a = np.abs(f.coeffs)
    e = f.errors
    sq, sq_e = a * a, _square_err(a, e)
    worst, worst_idx, worst_slack = math.inf, -1, 0.0
    for idx in range(1, n_max + 1):
        n = idx // 2
        if idx % 2:
            rhs = 1 - sq[: n + 1].sum()
            slack = e[idx] + sq_e[: n + 1].sum()
        else:
            rhs = 1 - sq[:n].sum() - sq[n] / (1 + a[0])
            slack = e[idx] + sq_e[:n].sum() + (sq_e[n] + sq[n] * e[0]) / (1 + a[0])
        slack += ABS_SLACK
        margin = rhs - a[idx]
        if margin + slack < worst + worst_slack or worst_idx < 0:
            worst, worst_idx, worst_slack = margin, idx, slack
    ok = worst >= -worst_slack
    return _coeff_report("carlson", ok, worst, worst_idx, worst_slack, f, n_max)


def _coeff_report(kind, ok, margin, index, slack, f, n_max, m_bound=None, seed=None):
    # witness: z1 carries the offending index, f1 the coefficient
    witness = None if ok else Witness(complex(index), None, complex(f.coeffs[index]))
    return CertificateReport(
        kind,
        "pass" if ok else "fail",
        float(margin),
        witness,
        None,
        float(slack),
        seed,
        details={"worst_index": int(index), "n_max": int(n_max), "m_bound": m_bound},
    )


def check_lemma3(f, n_max: int, m_bound: float | None = None) -> CertificateReport:
    """Coefficient bounds for ``f`` in ``B_M`` with ``f(0) = 0``, ``f'(0) = 1``.

    Checks ``|a_n| <= M - 1/M`` for ``2 <= n <= n_max`` together with
    (a) ``|a_{2n}| <= M [1 - (|a_1|^2 + ... + |a_n|^2) / M^2]`` and
    (b) ``|a_{2n+1}| <= M [1 - (|a_1|^2 + ... + |a_n|^2) / M^2 - |a_{n+1}|^2 / (M (M + |a_1|))]``.
    """
    if isinstance(f, BMASample):
        m_bound = f.m_bound if m_bound is None else m_bound
        seed = f.seed
    else:
        seed = None
        if m_bound is None and isinstance(f, ClosedFormFunction):
            m_bound = f.sup_bound()
    if m_bound is None or m_bound < 1:
        raise ValueError("need a bound M >= 1")
    s = f if isinstance(f, SeriesFunction) else extract(f, n_max, m_bound)
    a = np.abs(s.coeffs)
    e = s.errors
    sq, sq_e = a * a, _square_err(a, e)
    m = float(m_bound)
    margins, slacks, idxs = [], [], []

    for n in range(2, n_max + 1):
        margins.append(m - 1 / m - a[n])
        slacks.append(e[n] + ABS_SLACK)
        idxs.append(n)
    for n in range(1, n_max // 2 + 1):
        rhs = m * (1 - sq[1 : n + 1].sum() / m**2)
        margins.append(rhs - a[2 * n])
        slacks.append(e[2 * n] + sq_e[1 : n + 1].sum() / m + ABS_SLACK)
        idxs.append(2 * n)
    for n in range(1, (n_max - 1) // 2 + 1):
        rhs = m * (1 - sq[1 : n + 1].sum() / m**2) - sq[n + 1] / (m + a[1])
        slack = e[2 * n + 1] + sq_e[1 : n + 1].sum() / m + (sq_e[n + 1] + sq[n + 1] * e[1]) / (m + a[1])
        margins.append(rhs - a[2 * n + 1])
        slacks.append(slack + ABS_SLACK)
        idxs.append(2 * n + 1)

    margins, slacks = np.array(margins), np.array(slacks)
    k = int(np.argmin(margins + slacks))
    ok = bool(np.all(margins >= -slacks))
    return _coeff_report("lemma3", ok, margins[k], idxs[k], slacks[k], s, n_max, m, seed)


def extremal_equality(m_bound: float, n: int, n_max: int | None = None) -> tuple[float, float]:
    """``(|a_n| - (M - 1/M), error bound)`` for the extremal ``f_n``."""
    n_max = max(n, n_max or n)
    s = extract(lemma3_fn(m_bound, n), n_max, m_bound)
    return float(abs(s.coeffs[n]) - (m_bound - 1 / m_bound)), float(s.errors[n])
