"""Bi-analytic maps ``F(z) = conj(z) G(z) + H(z)`` and their extremal members.

Maps are kept as their analytic parts ``(G, H)``; the Wirtinger derivatives
follow exactly from the parts:

    F_z    = conj(z) G'(z) + H'(z)
    F_zbar = G(z)

When ``G(0) = 0`` the same map reads ``|z|^2 G1(z) + H(z)`` with
``G1 = G / z``, which is the biharmonic view.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .core import (
    ClosedFormFunction,
    DomainError,
    SeriesFunction,
    as_complex,
    identity,
    landau_f0,
    lemma3_fn,
)
from .radii import Theorem1Params

Part = Union[SeriesFunction, ClosedFormFunction]

VIEWS = ("bi_analytic", "biharmonic")


@dataclass(frozen=True)
class WirtingerPair:
    d_z: complex
    d_zbar: complex


@dataclass(frozen=True)
class BiAnalyticMap:
    """``F(z) = conj(z) * g(z) + h(z)`` on the unit disk."""

    g: Part
    h: Part
    view: str = "bi_analytic"
    name: str = ""

    def __post_init__(self):
        if self.view not in VIEWS:
            raise ValueError(f"unknown view {self.view!r}")
        if self.view == "biharmonic" and abs(complex(self.g(0.0))) > 1e-14:
            raise ValueError("biharmonic view needs G(0) = 0")

    def __call__(self, z):
        z = as_complex(z)
        return np.conj(z) * self.g(z) + self.h(z)

    def g1(self, z):
        """The biharmonic factor ``G(z) / z`` (with its limit ``G'(0)`` at 0)."""
        z = as_complex(z)
        if isinstance(self.g, ClosedFormFunction):
            q = self.g.divided_by_z()
            if q is not None:
                return q(z)
        if isinstance(self.g, SeriesFunction):
            if abs(self.g.coeffs[0]) > 1e-14:
                raise ValueError("G(0) != 0, no biharmonic factor")
            shifted = SeriesFunction(self.g.coeffs[1:] if self.g.coeffs.size > 1 else [0.0])
            return shifted(z)
        zz = np.where(z == 0, 1.0, z)
        return np.where(z == 0, self.g.deriv(0.0), self.g(zz) / zz)

    def biharmonic(self, z):
        """Evaluate as ``|z|^2 G1(z) + H(z)``; equals ``self(z)``."""
        z = as_complex(z)
        return np.abs(z) ** 2 * self.g1(z) + self.h(z)


def _interior(z):
    z = as_complex(z)
    if np.max(np.abs(z)) >= 1.0:
        raise DomainError("Wirtinger derivatives are taken inside the unit disk")
    return z


def wirtinger_arrays(f: BiAnalyticMap, z):
    """Vectorized ``(F_z, F_zbar)``."""
    z = _interior(z)
    return np.conj(z) * f.g.deriv(z) + f.h.deriv(z), f.g(z)


def wirtinger(f: BiAnalyticMap, z) -> WirtingerPair:
    dz, dzb = wirtinger_arrays(f, complex(z))
    return WirtingerPair(complex(dz), complex(dzb))


def jacobian(f: BiAnalyticMap, z):
    dz, dzb = wirtinger_arrays(f, z)
    return np.abs(dz) ** 2 - np.abs(dzb) ** 2


def max_stretch(f: BiAnalyticMap, z):
    """``|F_z| + |F_zbar|``."""
    dz, dzb = wirtinger_arrays(f, z)
    return np.abs(dz) + np.abs(dzb)


def min_stretch(f: BiAnalyticMap, z):
    """``||F_z| - |F_zbar||``."""
    dz, dzb = wirtinger_arrays(f, z)
    return np.abs(np.abs(dz) - np.abs(dzb))


# ---------------------------------------------------------------------------
# Extremal maps


def make_F1(p: Theorem1Params) -> BiAnalyticMap:
    """Extremal for the ``(L1, L2)`` derivative bounds.

    ``F1(z) = L2^2 z - L1 |z|^2 + (L2^3 - L2) log(1 - z/L2)``; the ``-L1 |z|^2``
    term is ``conj(z) * G(z)`` with ``G(z) = -L1 z``.
    """
    g = ClosedFormFunction("G1_part", (p.lambda1,))
    h = ClosedFormFunction("H1_part", (p.lambda2,))
    return BiAnalyticMap(g, h, name=f"F1({p.lambda1:g},{p.lambda2:g})")


def make_F0(p: Theorem1Params) -> BiAnalyticMap:
    """Biharmonic extremal ``L2^2 z - L1 |z|^2 z + (L2^3 - L2) log(1 - z/L2)``."""
    g = ClosedFormFunction("monomial", (-p.lambda1, 2))
    h = ClosedFormFunction("H1_part", (p.lambda2,))
    return BiAnalyticMap(g, h, view="biharmonic", name=f"F0({p.lambda1:g},{p.lambda2:g})")


def make_F2(lam: float) -> BiAnalyticMap:
    """``lam |z|^2 + z``."""
    if not lam >= 0:
        raise ValueError("lambda must be >= 0")
    return BiAnalyticMap(
        ClosedFormFunction("linear", (float(lam),)), identity(), name=f"F2({lam:g})"
    )


def make_F3() -> BiAnalyticMap:
    """``|z|^2 + z``."""
    return BiAnalyticMap(identity(), identity(), name="F3")


def identity_map() -> BiAnalyticMap:
    return BiAnalyticMap(ClosedFormFunction("linear", (0.0,)), identity(), name="identity")


def analytic_map(f: Part, name: str = "") -> BiAnalyticMap:
    """An analytic function viewed as a bi-analytic map with ``G = 0``."""
    return BiAnalyticMap(ClosedFormFunction("linear", (0.0,)), f, name=name)


def named_map(name: str, params: list[float]) -> BiAnalyticMap:
    """Build a map from its short name: F1, F0 (l1, l2), F2 (l), F3, f0 (M), fn (M, n)."""
    arity = {"F1": 2, "F0": 2, "F2": 1, "F3": 0, "f0": 1, "fn": 2, "identity": 0}
    if name not in arity:
        raise ValueError(f"unknown map {name!r}; choose from {', '.join(arity)}")
    if len(params) != arity[name]:
        raise ValueError(f"{name} takes {arity[name]} parameter(s), got {len(params)}")
    if name == "F1":
        return make_F1(Theorem1Params(*params))
    if name == "F0":
        return make_F0(Theorem1Params(*params))
    if name == "F2":
        return make_F2(params[0])
    if name == "F3":
        return make_F3()
    if name == "f0":
        return analytic_map(landau_f0(params[0]), name=f"f0({params[0]:g})")
    if name == "fn":
        return analytic_map(lemma3_fn(params[0], int(params[1])), name=f"fn({params[0]:g},{int(params[1])})")
    return identity_map()
