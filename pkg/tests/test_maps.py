import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from landau_kit.core import DomainError, SeriesFunction
from landau_kit.maps import (
    BiAnalyticMap,
    identity_map,
    jacobian,
    make_F0,
    make_F1,
    make_F2,
    make_F3,
    max_stretch,
    min_stretch,
    named_map,
    wirtinger,
    wirtinger_arrays,
)
from landau_kit.radii import Theorem1Params

BUILTIN = [
    ("F1", [1.0, 2.0]),
    ("F1", [0.5, 1.5]),
    ("F0", [1.0, 2.0]),
    ("F2", [2.0]),
    ("F3", []),
    ("f0", [2.0]),
    ("fn", [1.5, 4]),
    ("identity", []),
]


def fd_wirtinger(f, z, h=1e-6):
    fx = (f(z + h) - f(z - h)) / (2 * h)
    fy = (f(z + 1j * h) - f(z - 1j * h)) / (2 * h)
    return 0.5 * (fx - 1j * fy), 0.5 * (fx + 1j * fy)


def random_disk(n, r, seed):
    rng = np.random.default_rng(seed)
    return r * np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))


@pytest.mark.parametrize("name,params", BUILTIN, ids=lambda v: str(v))
def test_wirtinger_vs_finite_differences(name, params):
    f = named_map(name, params)
    z = random_disk(100, 0.9, 11)
    dz, dzb = wirtinger_arrays(f, z)
    ez, ezb = fd_wirtinger(f, z)
    scale = np.maximum(np.abs(dz) + np.abs(dzb), 1.0)
    assert np.max(np.abs(dz - ez) / scale) < 1e-6
    assert np.max(np.abs(dzb - ezb) / scale) < 1e-6


def test_series_map_wirtinger():
    g = SeriesFunction([0, 0.3, -0.1j, 0.02])
    h = SeriesFunction([0, 1, 0.2, 0.05 + 0.01j])
    f = BiAnalyticMap(g, h)
    z = random_disk(50, 0.8, 2)
    dz, dzb = wirtinger_arrays(f, z)
    ez, ezb = fd_wirtinger(f, z)
    np.testing.assert_allclose(dz, ez, atol=1e-8)
    np.testing.assert_allclose(dzb, ezb, atol=1e-8)


@given(st.floats(0, 5), st.floats(0, 0.99), st.floats(0, 2 * math.pi))
def test_F2_jacobian_closed_form(lam, r, t):
    # J = |1 + lam conj(z)|^2 - lam^2 |z|^2 = 1 + 2 lam Re z
    z = r * complex(math.cos(t), math.sin(t))
    assert float(jacobian(make_F2(lam), z)) == pytest.approx(1 + 2 * lam * z.real, abs=1e-12)


@given(st.floats(0, 0.99), st.floats(0, 2 * math.pi))
@settings(max_examples=50)
def test_biharmonic_view_agrees(r, t):
    z = r * complex(math.cos(t), math.sin(t))
    f = make_F0(Theorem1Params(1.5, 3.0))
    assert f.biharmonic(z) == pytest.approx(complex(f(z)), abs=1e-14)
    assert f.g1(z) == pytest.approx(-1.5 * z, abs=1e-14)
    # F3 has G = z, so G1 = 1
    assert make_F3().g1(z) == pytest.approx(1.0)


def test_F1_on_real_axis():
    p = Theorem1Params(1.0, 2.0)
    f = make_F1(p)
    x = 0.3
    ref = 4 * x - x * x + 6 * math.log(1 - x / 2)
    assert complex(f(x)) == pytest.approx(ref, abs=1e-15)


def test_stretch_functions():
    f = make_F3()
    z = 0.25 + 0.1j
    w = wirtinger(f, z)
    assert w.d_z == pytest.approx(np.conj(z) + 1)
    assert w.d_zbar == pytest.approx(z)
    assert float(max_stretch(f, z)) == pytest.approx(abs(w.d_z) + abs(w.d_zbar))
    assert float(min_stretch(f, z)) == pytest.approx(abs(abs(w.d_z) - abs(w.d_zbar)))
    assert float(jacobian(f, z)) == pytest.approx(abs(w.d_z) ** 2 - abs(w.d_zbar) ** 2)


def test_identity_map():
    f = identity_map()
    assert complex(f(0.3j)) == 0.3j
    assert float(jacobian(f, 0.5)) == 1.0


def test_interior_only():
    with pytest.raises(DomainError):
        wirtinger(make_F3(), 1.0)


def test_named_map_errors():
    with pytest.raises(ValueError, match="unknown map"):
        named_map("F7", [])
    with pytest.raises(ValueError, match="parameter"):
        named_map("F1", [1.0])
    with pytest.raises(ValueError):
        named_map("F1", [1.0, 0.9])
    with pytest.raises(ValueError):
        make_F2(-1.0)


def test_biharmonic_view_requires_g0_zero():
    with pytest.raises(ValueError):
        BiAnalyticMap(SeriesFunction([1.0, 1.0]), SeriesFunction([0, 1]), view="biharmonic")
    with pytest.raises(ValueError):
        BiAnalyticMap(SeriesFunction([0.0]), SeriesFunction([0, 1]), view="other")
