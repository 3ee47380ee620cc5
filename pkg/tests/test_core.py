import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from landau_kit.core import (
    BranchCutError,
    ClosedFormFunction,
    DomainError,
    IllConditionedError,
    PoleProximityError,
    SeriesFunction,
    as_series,
    derivative,
    evaluate,
    identity,
    landau_f0,
    lemma3_fn,
    load_series,
    principal_log,
    taylor_coefficients,
)

finite = st.floats(-5, 5, allow_nan=False)
cplx = st.builds(complex, finite, finite)
disk_pt = st.builds(
    lambda r, t: r * complex(math.cos(t), math.sin(t)),
    st.floats(0, 0.95),
    st.floats(0, 2 * math.pi),
)


def exact_fn_coeffs(m, n, n_max):
    """Series of M z (1 - M u) / (M - u), u = z^(n-1), expanded by hand."""
    c = np.zeros(n_max + 1, dtype=complex)
    c[1] = 1.0
    j = 1
    while 1 + j * (n - 1) <= n_max:
        c[1 + j * (n - 1)] = (1 - m * m) / m**j
        j += 1
    return c


class TestSeries:
    @given(st.lists(cplx, min_size=1, max_size=12), disk_pt)
    def test_horner_matches_polyval(self, coeffs, z):
        s = SeriesFunction(coeffs)
        assert s(z) == pytest.approx(np.polyval(coeffs[::-1], z), abs=1e-9)

    def test_vectorized(self):
        s = SeriesFunction([1, 2, 3])
        z = np.array([0, 0.5, -0.5j])
        np.testing.assert_allclose(s(z), 1 + 2 * z + 3 * z * z)

    def test_immutable(self):
        s = SeriesFunction([1, 2])
        with pytest.raises(ValueError):
            s.coeffs[0] = 5

    @pytest.mark.parametrize("bad", [[], [np.nan], [1, np.inf]])
    def test_rejects_bad_coeffs(self, bad):
        with pytest.raises(ValueError):
            SeriesFunction(bad)

    def test_rejects_nonfinite_argument(self):
        with pytest.raises(ValueError):
            SeriesFunction([1, 1])(complex(np.nan, 0))

    def test_domain(self):
        with pytest.raises(DomainError):
            SeriesFunction([0, 1])(1.5)
        # a polynomial is exact up to the closed disk
        assert SeriesFunction([0, 1])(1.0) == 1
        with pytest.raises(DomainError):
            SeriesFunction([0, 1], tail_bound=1e-3, radius=0.5)(0.6)

    def test_error_bound(self):
        s = SeriesFunction([1, 1, 1], tail_bound=0.1, radius=0.5, coeff_err=[0.01, 0.02, 0.04])
        assert s.error_bound(0.5) == pytest.approx(0.1 + 0.01 + 0.01 + 0.01)

    def test_json_roundtrip(self, tmp_path):
        s = SeriesFunction([0, 1 + 2j, -0.5], tail_bound=1e-8)
        p = tmp_path / "s.json"
        p.write_text(s.to_json())
        back = load_series(p)
        np.testing.assert_array_equal(back.coeffs, s.coeffs)
        assert back.tail_bound == s.tail_bound
        assert back.radius < 1

    @pytest.mark.parametrize(
        "text", ["{", '{"coeffs": [1, 2]}', '{"tail": 0}', '{"coeffs": [["a", 0]]}', "[]"]
    )
    def test_malformed_file(self, tmp_path, text):
        p = tmp_path / "bad.json"
        p.write_text(text)
        with pytest.raises(ValueError, match="malformed"):
            load_series(p)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ValueError, match="malformed"):
            load_series(tmp_path / "nope.json")


class TestDerivative:
    @given(st.lists(cplx, min_size=2, max_size=10), disk_pt)
    def test_matches_polyder(self, coeffs, z):
        d = derivative(SeriesFunction(coeffs))
        ref = np.polyval(np.polyder(np.array(coeffs[::-1])), z)
        assert d(z) == pytest.approx(ref, abs=1e-8)

    def test_finite_difference(self):
        s = SeriesFunction([0.3, 1, -0.2j, 0.05, 0.01])
        z, h = 0.3 + 0.2j, 1e-6
        fd = (s(z + h) - s(z - h)) / (2 * h)
        assert abs(s.deriv(z) - fd) < 1e-8

    def test_tail_propagation(self):
        s = SeriesFunction([0, 1, 0.5], tail_bound=1e-6, radius=0.5, coeff_err=[0, 1e-9, 2e-9])
        d = derivative(s)
        assert d.tail_bound == pytest.approx(1e-6 * 2 / 0.5)
        np.testing.assert_allclose(d.errors, [1e-9, 4e-9])

    def test_tail_on_unit_disk_rejected(self):
        with pytest.raises(DomainError):
            derivative(SeriesFunction([0, 1], tail_bound=1e-6, radius=1.0))

    def test_constant(self):
        assert derivative(SeriesFunction([3.0]))(0.5) == 0
        with pytest.raises(ValueError):
            derivative(SeriesFunction([3.0], tail_bound=1e-3, radius=0.5))


class TestClosedForms:
    @pytest.mark.parametrize(
        "f",
        [
            identity(),
            landau_f0(2.0),
            landau_f0(1.0),
            lemma3_fn(1.5, 2),
            lemma3_fn(3.0, 5),
            ClosedFormFunction("H1_part", (2.0,)),
            ClosedFormFunction("H1_part", (1.5,)),
            ClosedFormFunction("G1_part", (0.7,)),
            ClosedFormFunction("linear", (2.0,)),
            ClosedFormFunction("monomial", (-1.0, 3)),
            ClosedFormFunction("monomial", (2.0, 0)),
        ],
        ids=str,
    )
    def test_derivative_vs_central_difference(self, f):
        rng = np.random.default_rng(3)
        z = 0.9 * np.sqrt(rng.random(50)) * np.exp(2j * np.pi * rng.random(50))
        h = 1e-6
        fd = (f(z + h) - f(z - h)) / (2 * h)
        np.testing.assert_allclose(f.deriv(z), fd, rtol=1e-6, atol=1e-8)

    def test_normalization(self):
        for f in (landau_f0(2.0), lemma3_fn(2.0, 4), ClosedFormFunction("H1_part", (3.0,))):
            assert abs(f(0.0)) < 1e-15
            assert f.deriv(0.0) == pytest.approx(1.0)

    @given(st.floats(1.0, 10.0), st.integers(2, 6))
    @settings(max_examples=30)
    def test_bounded_by_m_on_circle(self, m, n):
        f = lemma3_fn(m, n)
        t = np.linspace(0, 2 * np.pi, 400, endpoint=False)
        vals = np.abs(f(0.999 * np.exp(1j * t)))
        assert vals.max() <= m * (1 + 1e-12)

    def test_H1_derivative_bounded(self):
        f = ClosedFormFunction("H1_part", (2.0,))
        t = np.linspace(0, 2 * np.pi, 400)
        assert np.abs(f.deriv(np.exp(1j * t) * (1 - 1e-12))).max() <= 2.0 + 1e-9

    def test_validation(self):
        with pytest.raises(ValueError):
            landau_f0(0.5)
        with pytest.raises(ValueError):
            lemma3_fn(2.0, 1)
        with pytest.raises(ValueError):
            ClosedFormFunction("H1_part", (1.0,))
        with pytest.raises(ValueError):
            ClosedFormFunction("nope", ())
        with pytest.raises(DomainError):
            identity()(1.5)

    def test_pole(self):
        # M = 1: pole of M z (1 - M z)/(M - z) at z = 1 on the boundary
        with pytest.raises(PoleProximityError):
            landau_f0(1.0)(1.0)

    def test_divided_by_z(self):
        q = ClosedFormFunction("monomial", (2.0, 3)).divided_by_z()
        assert q(0.5) == pytest.approx(2 * 0.25)
        assert landau_f0(2.0).divided_by_z() is None

    def test_evaluate(self):
        assert evaluate(identity(), 0.25) == 0.25
        assert evaluate(lambda z: z * z, 0.5) == 0.25


class TestPrincipalLog:
    def test_branch_cut(self):
        for z in (0.0, -1.0, -0.5 + 0j):
            with pytest.raises(BranchCutError):
                principal_log(z)

    @given(disk_pt)
    def test_matches_cmath(self, z):
        w = 1 + 0.5 * z
        assert principal_log(w) == pytest.approx(complex(np.log(w)))


class TestExtraction:
    @pytest.mark.parametrize("m,n", [(1.5, 2), (2.0, 3), (5.0, 6), (1.0, 4)])
    def test_exact_series_of_fn(self, m, n):
        s = taylor_coefficients(lemma3_fn(m, n), 20, bound=m)
        ref = exact_fn_coeffs(m, n, 20)
        assert np.all(np.abs(s.coeffs - ref) <= s.errors)

    @given(st.lists(cplx, min_size=1, max_size=15), st.floats(0.3, 0.9))
    @settings(max_examples=50)
    def test_error_bounds_hold_for_polynomials(self, coeffs, s):
        c = np.array(coeffs, dtype=complex)
        bound = float(np.sum(np.abs(c))) + 1e-300
        n_max = 14
        got = taylor_coefficients(SeriesFunction(c), n_max, sample_radius=s, bound=bound)
        ref = np.zeros(n_max + 1, dtype=complex)
        ref[: c.size] = c
        assert np.all(np.abs(got.coeffs - ref) <= got.errors + 1e-300)

    def test_tail_bound_certifies_evaluation(self):
        f = landau_f0(2.0)
        s = taylor_coefficients(f, 40, bound=2.0, eval_radius=0.5)
        z = 0.5 * np.exp(1j * np.linspace(0, 2 * np.pi, 64))
        err = np.abs(s(z) - f(z))
        assert np.all(err <= s.error_bound(0.5))

    def test_without_bound(self):
        f = ClosedFormFunction("H1_part", (2.0,))
        s = taylor_coefficients(f.deriv, 30, sample_radius=0.6)
        z = 0.4 * np.exp(1j * np.linspace(0, 2 * np.pi, 32))
        assert np.all(np.abs(s(z) - f.deriv(z)) <= s.error_bound(0.4))
        with pytest.raises(ValueError):
            taylor_coefficients(f.deriv, 30, sample_radius=0.6, eval_radius=0.7)

    def test_validation(self):
        with pytest.raises(ValueError):
            taylor_coefficients(identity(), 10, sample_radius=1.0)
        with pytest.raises(ValueError):
            taylor_coefficients(identity(), 200, n_samples=64)
        with pytest.raises(IllConditionedError):
            taylor_coefficients(identity(), 2000, sample_radius=0.1, n_samples=8192)

    def test_as_series(self):
        np.testing.assert_array_equal(as_series(identity()).coeffs, [0, 1])
        m = as_series(ClosedFormFunction("monomial", (-2.0, 2)))
        assert m.tail_bound == 0 and m(0.5) == pytest.approx(-0.5)
        s = as_series(lemma3_fn(2.0, 3))
        assert abs(s(0.3) - lemma3_fn(2.0, 3)(0.3)) <= s.error_bound(0.3)

    def test_json_payload_shape(self):
        payload = json.loads(SeriesFunction([1j]).to_json())
        assert payload == {"coeffs": [[0.0, 1.0]], "tail_bound": 0.0}
