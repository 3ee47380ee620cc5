"""Complex values, truncated power series and closed-form analytic functions.

Everything here works on plain Python ``complex`` scalars or numpy complex
arrays.  A :class:`SeriesFunction` carries its own truncation error bound so
that downstream checks never mistake truncation noise for a real effect.

The series file format is a JSON object::

    {"coeffs": [[re, im], ...], "tail_bound": 0.0}

with coefficients indexed from the constant term.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Union

import numpy as np

POLE_THRESHOLD = 1e-12
DEFAULT_TRUNCATION = 60
DEFAULT_SAMPLE_RADIUS = 0.5
DEFAULT_SAMPLES = 512

_EPS = np.finfo(float).eps


class DomainError(ValueError):
    """Evaluation point outside the disk where a function is declared."""


class PoleProximityError(ValueError):
    """Evaluation point too close to a pole of a closed-form function."""


class BranchCutError(ValueError):
    """Logarithm requested on the closed negative real axis."""


class IllConditionedError(ValueError):
    """Cauchy-integral extraction would divide by a vanishing power."""


def as_complex(z, name="z"):
    """Validate and convert to complex (scalar) or complex ndarray.

    NaN and infinite components are rejected.
    """
    if np.ndim(z) == 0:
        w = complex(z)
        if not (math.isfinite(w.real) and math.isfinite(w.imag)):
            raise ValueError(f"{name} must be finite, got {w!r}")
        return w
    w = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(w)):
        raise ValueError(f"{name} contains non-finite entries")
    return w


def _max_abs(z) -> float:
    return float(np.max(np.abs(z))) if np.ndim(z) else abs(z)


def principal_log(z):
    """Principal branch of the logarithm, imaginary part in (-pi, pi).

    Raises :class:`BranchCutError` on the closed negative real axis,
    including zero.
    """
    z = as_complex(z)
    on_cut = (np.imag(z) == 0) & (np.real(z) <= 0)
    if np.any(on_cut):
        raise BranchCutError("principal log is undefined on (-inf, 0]")
    if np.ndim(z) == 0:
        return complex(np.log(z))
    return np.log(z)


# ---------------------------------------------------------------------------
# Truncated power series


@dataclass(frozen=True)
class SeriesFunction:
    """Truncated power series ``sum a_n z**n`` with an error budget.

    Parameters
    ----------
    coeffs : array_like of complex
        ``a_0, ..., a_N``.
    tail_bound : float
        Bound on ``|sum_{n>N} a_n z**n|`` for ``|z| <= radius``; zero when the
        series is exactly a polynomial.
    radius : float
        Radius of the evaluation disk on which ``tail_bound`` holds.
    coeff_err : array_like of float, optional
        Per-coefficient error bounds (e.g. from numerical extraction).
    """

    coeffs: np.ndarray
    tail_bound: float = 0.0
    radius: float = 1.0
    coeff_err: np.ndarray | None = None

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.size == 0:
            raise ValueError("a series needs at least one coefficient")
        if not np.all(np.isfinite(c)):
            raise ValueError("series coefficients must be finite")
        if not (self.tail_bound >= 0 and math.isfinite(self.tail_bound)):
            raise ValueError("tail_bound must be finite and nonnegative")
        if not self.radius > 0:
            raise ValueError("radius must be positive")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "tail_bound", float(self.tail_bound))
        object.__setattr__(self, "radius", float(self.radius))
        if self.coeff_err is not None:
            e = np.array(self.coeff_err, dtype=float).ravel()
            if e.shape != c.shape or np.any(e < 0):
                raise ValueError("coeff_err must be nonnegative, one per coefficient")
            e.setflags(write=False)
            object.__setattr__(self, "coeff_err", e)

    @property
    def truncation_order(self) -> int:
        return self.coeffs.size - 1

    @property
    def errors(self) -> np.ndarray:
        if self.coeff_err is None:
            return np.zeros(self.coeffs.size)
        return self.coeff_err

    def _check_domain(self, z):
        rmax = _max_abs(z)
        if self.tail_bound > 0:
            limit = min(self.radius, 1.0)
            if rmax > limit or rmax >= 1.0:
                raise DomainError(f"|z| = {rmax:g} outside evaluation disk of radius {limit:g}")
        elif rmax > max(self.radius, 1.0):
            raise DomainError(f"|z| = {rmax:g} exceeds 1")

    def __call__(self, z):
        z = as_complex(z)
        self._check_domain(z)
        acc = np.zeros_like(z, dtype=complex) if np.ndim(z) else 0j
        for a in self.coeffs[::-1]:
            acc = acc * z + a
        return acc

    def deriv(self, z):
        return derivative(self)(z)

    def error_bound(self, z) -> float:
        """Total bound on ``|series(z) - f(z)|`` from truncation and coefficient errors."""
        r = _max_abs(as_complex(z))
        powers = r ** np.arange(self.coeffs.size)
        return self.tail_bound + float(np.dot(self.errors, powers))

    def to_json(self) -> str:
        payload = {
            "coeffs": [[float(a.real), float(a.imag)] for a in self.coeffs],
            "tail_bound": self.tail_bound,
        }
        return json.dumps(payload)


def load_series(path: str | Path, radius: float = 1.0) -> SeriesFunction:
    """Read a series file (``{"coeffs": [[re, im], ...], "tail_bound": x}``)."""
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
        raw = payload["coeffs"]
        coeffs = [complex(float(re), float(im)) for re, im in raw]
        tail = float(payload.get("tail_bound", 0.0))
    except (OSError, KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed series file {path}: {exc}") from exc
    if tail > 0 and radius >= 1.0:
        radius = 1.0 - 1e-12
    return SeriesFunction(coeffs, tail_bound=tail, radius=radius)


def derivative(f: SeriesFunction) -> SeriesFunction:
    """Term-wise derivative.

    The tail bound is propagated as ``tail_bound * N / (1 - radius)`` where
    ``N`` is the truncation order and ``radius`` the declared evaluation disk.
    """
    n = f.truncation_order
    if n < 1 and f.tail_bound == 0:
        return SeriesFunction([0.0], radius=f.radius)
    if n < 1:
        raise ValueError("derivative of a bare tail bound is not available")
    k = np.arange(1, n + 1)
    coeffs = f.coeffs[1:] * k
    err = None if f.coeff_err is None else f.coeff_err[1:] * k
    tail = 0.0
    if f.tail_bound > 0:
        if f.radius >= 1.0:
            raise DomainError("cannot propagate a tail bound on a disk of radius >= 1")
        tail = f.tail_bound * n / (1.0 - f.radius)
    return SeriesFunction(coeffs, tail_bound=tail, radius=f.radius, coeff_err=err)


# ---------------------------------------------------------------------------
# Closed forms

CLOSED_FORM_KINDS = (
    "identity",
    "landau_f0",
    "lemma3_fn",
    "H1_part",
    "G1_part",
    "linear",
    "monomial",
)


@dataclass(frozen=True)
class ClosedFormFunction:
    """One of the fixed analytic functions used by the extremal mappings.

    ``kind`` selects the formula, ``params`` holds its parameters:

    ============  ============  ==========================================
    kind          params        f(z)
    ============  ============  ==========================================
    identity      ()            z
    landau_f0     (M,)          M z (1 - M z) / (M - z)
    lemma3_fn     (M, n)        M z (1 - M z^(n-1)) / (M - z^(n-1))
    H1_part       (L2,)         L2^2 z + (L2^3 - L2) log(1 - z / L2)
    G1_part       (L1,)         -L1 z
    linear        (c,)          c z
    monomial      (c, k)        c z^k
    ============  ============  ==========================================
    """

    kind: str
    params: tuple = ()

    def __post_init__(self):
        if self.kind not in CLOSED_FORM_KINDS:
            raise ValueError(f"unknown closed form {self.kind!r}")
        p = tuple(self.params)
        object.__setattr__(self, "params", p)
        if self.kind in ("landau_f0", "lemma3_fn"):
            if p[0] < 1:
                # for M < 1 the pole |z| = M**(1/(n-1)) lies inside the disk
                raise ValueError("M must be >= 1")
            if self.kind == "lemma3_fn" and (int(p[1]) != p[1] or p[1] < 2):
                raise ValueError("lemma3_fn needs an integer n >= 2")
        if self.kind == "H1_part" and not p[0] > 1:
            raise ValueError("H1_part needs L2 > 1")
        if self.kind == "monomial" and (int(p[1]) != p[1] or p[1] < 0):
            raise ValueError("monomial exponent must be a nonnegative integer")

    # bounds used for tail/aliasing estimates
    def sup_bound(self) -> float:
        """An upper bound for ``|f|`` on the closed unit disk."""
        k, p = self.kind, self.params
        if k == "identity":
            return 1.0
        if k in ("landau_f0", "lemma3_fn"):
            return float(p[0])
        if k == "H1_part":
            # |H| <= integral of |H'| <= L2 along radii
            return float(p[0])
        if k == "G1_part":
            return abs(p[0])
        return abs(complex(p[0]))

    def _rational_parts(self, z):
        m = float(self.params[0])
        k = 1 if self.kind == "landau_f0" else int(self.params[1]) - 1
        u = z**k
        den = m - u
        if np.any(np.abs(den) < POLE_THRESHOLD):
            raise PoleProximityError(f"{self.kind}{self.params} evaluated at a pole")
        return m, k, u, den

    def _check(self, z):
        z = as_complex(z)
        if _max_abs(z) > 1.0:
            raise DomainError("closed forms are evaluated on the closed unit disk")
        return z

    def __call__(self, z):
        z = self._check(z)
        k, p = self.kind, self.params
        if k == "identity":
            return z
        if k in ("landau_f0", "lemma3_fn"):
            m, _, u, den = self._rational_parts(z)
            return m * z * (1 - m * u) / den
        if k == "H1_part":
            lam = float(p[0])
            return lam**2 * z + (lam**3 - lam) * principal_log(1 - z / lam)
        if k == "G1_part":
            return -float(p[0]) * z
        if k == "linear":
            return complex(p[0]) * z
        return complex(p[0]) * z ** int(p[1])

    def deriv(self, z):
        """Exact first derivative."""
        z = self._check(z)
        k, p = self.kind, self.params
        if k == "identity":
            return np.ones_like(z) if np.ndim(z) else 1 + 0j
        if k in ("landau_f0", "lemma3_fn"):
            m, n1, u, den = self._rational_parts(z)
            return m * (1 - m * u) / den + m * n1 * u * (1 - m * m) / den**2
        if k == "H1_part":
            lam = float(p[0])
            den = lam - z
            if np.any(np.abs(den) < POLE_THRESHOLD):
                raise PoleProximityError("H1_part evaluated at its pole")
            return lam * (1 - lam * z) / den
        if k == "G1_part":
            c = -float(p[0])
            return c * np.ones_like(z) if np.ndim(z) else complex(c)
        if k == "linear":
            c = complex(p[0])
            return c * np.ones_like(z) if np.ndim(z) else c
        c, e = complex(p[0]), int(p[1])
        if e == 0:
            return np.zeros_like(z) if np.ndim(z) else 0j
        return c * e * z ** (e - 1)

    def divided_by_z(self) -> "ClosedFormFunction | None":
        """``f(z)/z`` when it is again one of the simple closed forms."""
        k, p = self.kind, self.params
        if k == "identity":
            return ClosedFormFunction("monomial", (1.0, 0))
        if k == "G1_part":
            return ClosedFormFunction("monomial", (-float(p[0]), 0))
        if k == "linear":
            return ClosedFormFunction("monomial", (complex(p[0]), 0))
        if k == "monomial" and int(p[1]) >= 1:
            return ClosedFormFunction("monomial", (p[0], int(p[1]) - 1))
        return None


def identity() -> ClosedFormFunction:
    return ClosedFormFunction("identity")


def landau_f0(m: float) -> ClosedFormFunction:
    return ClosedFormFunction("landau_f0", (float(m),))


def lemma3_fn(m: float, n: int) -> ClosedFormFunction:
    return ClosedFormFunction("lemma3_fn", (float(m), int(n)))


Evaluable = Union[SeriesFunction, ClosedFormFunction, Callable]


def evaluate(f: Evaluable, z):
    """Evaluate a series, closed form or plain callable at ``z``."""
    return f(as_complex(z))


# ---------------------------------------------------------------------------
# Coefficient extraction


def taylor_coefficients(
    f: Evaluable,
    n_max: int,
    sample_radius: float = DEFAULT_SAMPLE_RADIUS,
    n_samples: int = DEFAULT_SAMPLES,
    bound: float | None = None,
    eval_radius: float | None = None,
) -> SeriesFunction:
    """Taylor coefficients ``a_0..a_{n_max}`` by a discretized Cauchy integral.

    Samples ``f`` on the circle ``|z| = sample_radius`` and applies an FFT.
    Each coefficient carries an error bound made of the aliasing term
    ``M s**(K-n) / (1 - s**K)`` and a floating-point term
    ``8 eps log2(K) M / s**n`` (``K`` samples, radius ``s``).

    ``bound`` is a bound for ``|f|`` on the unit disk.  When given, the tail
    bound on the evaluation disk is the geometric ``M r**(N+1) / (1 - r)``;
    otherwise ``M`` is taken from the samples and the tail is estimated with
    Cauchy estimates on the sample circle, which needs ``eval_radius <
    sample_radius``.
    """
    if not 0 < sample_radius < 1:
        raise ValueError("sample_radius must lie in (0, 1)")
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    if n_samples < 4 * max(n_max, 1):
        raise ValueError("need n_samples >= 4 * n_max")
    if sample_radius**n_max < 1e-300:
        raise IllConditionedError("sample_radius**n_max underflows")
    if bound is None and isinstance(f, ClosedFormFunction):
        bound = f.sup_bound()

    theta = 2 * np.pi * np.arange(n_samples) / n_samples
    values = np.asarray(f(sample_radius * np.exp(1j * theta)), dtype=complex)
    sample_max = float(np.max(np.abs(values)))
    circle_bound = sample_max if bound is None else max(float(bound), sample_max)

    n = np.arange(n_max + 1)
    coeffs = np.fft.fft(values)[: n_max + 1] / n_samples / sample_radius**n

    s = sample_radius
    alias = circle_bound * s ** (n_samples - n) / (1 - s**n_samples)
    rounding = 8 * _EPS * math.log2(n_samples) * circle_bound / s**n
    err = alias + rounding

    if eval_radius is None:
        eval_radius = sample_radius if bound is not None else 0.8 * sample_radius
    if bound is not None:
        q = eval_radius
        tail = float(bound) * q ** (n_max + 1) / (1 - q)
    else:
        if eval_radius >= sample_radius:
            raise ValueError("without a disk bound, eval_radius must be below sample_radius")
        q = eval_radius / sample_radius
        tail = circle_bound * q ** (n_max + 1) / (1 - q)
    return SeriesFunction(coeffs, tail_bound=tail, radius=eval_radius, coeff_err=err)


def as_series(
    f: "ClosedFormFunction | SeriesFunction",
    n_max: int = 200,
    radius: float = 0.9,
) -> SeriesFunction:
    """Power-series form of a closed form.

    Polynomial kinds convert exactly; the rest go through
    :func:`taylor_coefficients` sampled and certified on ``|z| = radius``.
    """
    if isinstance(f, SeriesFunction):
        return f
    k, p = f.kind, f.params
    if k == "identity":
        return SeriesFunction([0.0, 1.0])
    if k in ("linear", "G1_part"):
        c = complex(p[0]) if k == "linear" else -float(p[0])
        return SeriesFunction([0.0, c])
    if k == "monomial":
        c = np.zeros(int(p[1]) + 1, dtype=complex)
        c[-1] = complex(p[0])
        return SeriesFunction(c)
    return taylor_coefficients(
        f, n_max, sample_radius=radius, n_samples=max(DEFAULT_SAMPLES, 8 * n_max), bound=f.sup_bound(),
        eval_radius=radius,
    )
