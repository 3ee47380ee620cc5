"""Acceptance run: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` (lines also land in the
terminal summary) or directly with ``python tests/test_acceptance.py``.
"""

import csv
import io
import time

import numpy as np
import pytest

from landau_kit.certify import (
    GridSpec,
    collision_witness_F2,
    coverage_min_modulus,
    injectivity_check,
    jacobian_positivity,
    lemma1_distortion_check,
    lemma4_radius,
    reverify,
    sharpness_witness_F1,
    starlike_boundary_check,
)
from landau_kit.cli import main
from landau_kit.coeffs import check_carlson, check_lemma3, extract, extremal_equality, sample_bma, sample_schur
from landau_kit.core import ClosedFormFunction, SeriesFunction
from landau_kit.maps import make_F1, make_F2, make_F3, named_map, wirtinger_arrays
from landau_kit.radii import (
    Theorem1Params,
    Theorem2Params,
    Theorem3Params,
    rho1,
    rho2_sigma2,
    sigma1,
    theorem1_quadratic,
    theorem3_radii,
    theoremA_radius,
    theoremC_radii,
    theoremE_radii,
)

RESULTS: list[str] = []


def record(n: int, ok: bool, detail: str):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n:2d}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def best_time(fn, repeat=20):
    """Fastest of ``repeat`` calls, in seconds (robust to scheduler noise)."""
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def test_criterion_01_sharp_t3():
    res = theorem3_radii(Theorem3Params(1.0, 1.0))
    dt = best_time(lambda: theorem3_radii(Theorem3Params(1.0, 1.0)))
    ok = abs(res.rho - 0.5) <= 1e-12 and abs(res.sigma - 0.25) <= 1e-12 and dt < 1e-3
    record(1, ok, f"rho3(1,1)={res.rho!r} sigma3={res.sigma!r} time={dt * 1e3:.3f} ms (<1 ms)")


def test_criterion_02_tA_constant():
    m_bound = 3.0
    res = theoremA_radius(m_bound)
    dt = best_time(lambda: theoremA_radius(m_bound))
    m = res.diagnostics["phi_min"]
    rel = abs(res.rho * m_bound * 11.105 - 1)
    ok = 6.84 <= m <= 6.86 and rel <= 1e-3 and dt < 1e-2
    record(2, ok, f"m={m:.6f} r1*M*11.105-1={rel:.2e} (<=1e-3) time={dt * 1e3:.3f} ms (<10 ms)")


def test_criterion_03_root_residuals():
    l1s, l2s = np.linspace(0, 10, 20), np.linspace(1.01, 10, 20)
    ms = np.linspace(1, 10, 20)
    worst = {"rho1": 0.0, "rho3": 0.0, "tC": 0.0}
    slowest = 0.0
    for a in range(20):
        for b in range(20):
            p1 = Theorem1Params(l1s[a], l2s[b])
            slowest = max(slowest, best_time(lambda: rho1(p1), 3))
            worst["rho1"] = max(worst["rho1"], abs(theorem1_quadratic(rho1(p1), p1)))
            p3 = Theorem3Params(ms[a], ms[b])
            slowest = max(slowest, best_time(lambda: theorem3_radii(p3), 3))
            worst["rho3"] = max(worst["rho3"], theorem3_radii(p3).residual)
            slowest = max(slowest, best_time(lambda: theoremC_radii(l1s[a], l2s[b]), 3))
            worst["tC"] = max(worst["tC"], theoremC_radii(l1s[a], l2s[b]).residual)
    ok = max(worst.values()) <= 1e-12 and slowest < 1e-3
    detail = " ".join(f"{k}={v:.1e}" for k, v in worst.items())
    record(3, ok, f"worst residuals {detail} (<=1e-12); slowest solve {slowest * 1e3:.3f} ms (<1 ms)")


def test_criterion_04_improvement_table(capsys, tmp_path):
    out = tmp_path / "compare.csv"
    code = main(["radii", "--compare", "t3,tE", "--m", "1:10:50", "-o", str(out)])
    text = out.read_text()
    rows = list(csv.DictReader(io.StringIO("\n".join(l for l in text.splitlines() if not l.startswith("#")))))
    impr = [float(r["rho_a"]) - float(r["rho_b"]) for r in rows]
    # recompute independently of the CLI
    direct = [theorem3_radii(Theorem3Params(m, m)).rho - theoremE_radii(m).rho for m in np.linspace(1, 10, 50)]
    with capsys.disabled():
        print("\n      M        rho3(M,M)        r5(M)      rho3 - r5")
        for r in rows[::7]:
            print(f"  {float(r['m']):7.4f}  {float(r['rho_a']):.10f}  {float(r['rho_b']):.10f}  {float(r['improvement']):.3e}")
    ok = code == 0 and len(rows) == 50 and min(impr) > 0 and min(direct) > 0
    record(4, ok, f"{len(rows)} rows, min(rho3 - r5) = {min(impr):.4e} (>0)")


def test_criterion_05_F1_suite():
    t0 = time.perf_counter()
    parts = []
    ok = True
    for l1, l2 in [(1, 2), (0.5, 1.5), (2, 4)]:
        p = Theorem1Params(l1, l2)
        f = make_F1(p)
        rho, sig = rho1(p), sigma1(p)
        inj = injectivity_check(f, GridSpec(40, 100, 0.99 * rho))
        gaps = []
        for frac in (0.01, 0.1, 0.5, 1.0):
            w = sharpness_witness_F1(p, rho + frac * (1 - rho))
            gaps.append(reverify(f, w.witness) if w.passed else np.inf)
        cov = coverage_min_modulus(f, rho, claimed_sigma=sig)
        cov_err = abs(cov.measured - sig)
        theta = abs(cov.details["theta_min"])
        ok &= inj.passed and max(gaps) <= 1e-10 and cov_err <= 1e-6 and theta <= 1e-6
        parts.append(f"({l1},{l2}): inj={inj.verdict} gap={max(gaps):.1e} cov_err={cov_err:.1e} theta={theta:.1e}")
    dt = time.perf_counter() - t0
    ok &= dt < 30
    record(5, ok, "; ".join(parts) + f"; total {dt:.2f} s (<30 s)")


def test_criterion_06_F2_suite():
    parts, ok = [], True
    for lam in (1.0, 2.0, 5.0):
        rho = rho2_sigma2(Theorem2Params(lam)).rho
        f = make_F2(lam)
        inj = injectivity_check(f, GridSpec(40, 100, 0.99 * rho))
        col = collision_witness_F2(lam, 1.05 * rho)
        cov = coverage_min_modulus(f, rho, claimed_sigma=rho - lam * rho * rho)
        err = abs(cov.measured - (rho - lam * rho * rho))
        ok &= inj.passed and col.passed and reverify(f, col.witness) <= 1e-12 and err <= 1e-10
        parts.append(f"lambda={lam:g}: inj={inj.verdict} collision={col.measured:.1e} cov_err={err:.1e}")
    record(6, ok, "; ".join(parts))


def test_criterion_07_F3():
    f = make_F3()
    jac = jacobian_positivity(f, GridSpec(100, 256, 0.49))
    inj = injectivity_check(f, GridSpec(40, 100, 0.49))
    star = starlike_boundary_check(f, 0.49)
    z = SeriesFunction([0.0, 1.0])
    r4 = lemma4_radius(z, z)
    ok = jac.passed and inj.passed and star.passed and r4 == 0.5
    record(7, ok, f"jac min={jac.measured:.4f} inj={inj.verdict} star min={star.measured:.4f} lemma4_radius(z,z)={r4!r}")


def test_criterion_08_lemma1():
    worst, fails, n = np.inf, 0, 0
    for lam in (1.5, 2.0, 4.0):
        h = ClosedFormFunction("H1_part", (lam,))
        for r in (0.1, 0.2, 0.4):
            rep = lemma1_distortion_check(h, lam, r, n_pairs=1000, seed=n)
            fails += rep.verdict != "pass"
            worst = min(worst, rep.measured)
            n += 1
    record(8, fails == 0, f"{n} configurations x 1000 pairs, violations={fails}, worst margin={worst:.2e}")


def test_criterion_09_coefficients():
    t0 = time.perf_counter()
    carlson_fail = sum(not check_carlson(extract(sample_schur(s), 12, 1.0), 12).passed for s in range(1000))
    lemma3_fail = {m: sum(not check_lemma3(sample_bma(s, m), 12).passed for s in range(1000)) for m in (1.5, 2.0, 5.0)}
    ext = [(m, n, *extremal_equality(m, n)) for m in (1.5, 2.0, 5.0) for n in range(2, 7)]
    ext_bad = [e for e in ext if abs(e[2]) > e[3]]
    dt = time.perf_counter() - t0
    ok = carlson_fail == 0 and not any(lemma3_fail.values()) and not ext_bad and dt < 60
    worst_ext = max(abs(e[2]) for e in ext)
    record(
        9, ok,
        f"carlson fails={carlson_fail}/1000; lemma3 fails={lemma3_fail}; "
        f"extremal max||a_n|-(M-1/M)|={worst_ext:.1e} within bound: {not ext_bad}; {dt:.2f} s (<60 s)",
    )


BUILTIN = [
    ("F1", [1.0, 2.0]), ("F1", [0.5, 1.5]), ("F1", [2.0, 4.0]), ("F0", [1.0, 2.0]),
    ("F2", [1.0]), ("F2", [2.0]), ("F2", [5.0]), ("F3", []), ("f0", [2.0]),
    ("fn", [2.0, 3]), ("identity", []),
]


def test_criterion_10_wirtinger():
    rng = np.random.default_rng(2024)
    z = 0.95 * np.sqrt(rng.random(100)) * np.exp(2j * np.pi * rng.random(100))
    h = 1e-6
    worst = 0.0
    for name, params in BUILTIN:
        f = named_map(name, params)
        dz, dzb = wirtinger_arrays(f, z)
        fx = (f(z + h) - f(z - h)) / (2 * h)
        fy = (f(z + 1j * h) - f(z - 1j * h)) / (2 * h)
        ez, ezb = 0.5 * (fx - 1j * fy), 0.5 * (fx + 1j * fy)
        scale = np.maximum(np.abs(dz) + np.abs(dzb), 1.0)
        worst = max(worst, float(np.max(np.abs(dz - ez) / scale)), float(np.max(np.abs(dzb - ezb) / scale)))
    record(10, worst < 1e-6, f"{len(BUILTIN)} maps x 100 points, worst relative gap {worst:.2e} (<1e-6)")


def test_criterion_11_determinism(tmp_path, monkeypatch):
    cmds = [
        ["radii", "--compare", "t3,tE", "--m", "1:10:50"],
        ["radii", "--theorem", "t1,t2,t3,tA,tB,tC,tD,tE", "--l1", "0:2:3", "--l2", "2", "--lambda", "0:3:4",
         "--m", "1:4:4", "--format", "json"],
        ["coeffs", "--m", "2", "--samples", "100", "--seed", "7"],
        ["coeffs", "--carlson", "--samples", "50", "--seed", "9", "--format", "json"],
        ["certify", "F1", "1", "2", "--at-theorem-radius", "--checks", "inj,cov,jac,lemma1,sharp", "--seed", "4"],
    ]
    same = 0
    for i, argv in enumerate(cmds):
        blobs = []
        for k, threads in enumerate(("1", "1", "4")):
            monkeypatch.setenv("LANDAU_KIT_THREADS", threads)
            path = tmp_path / f"{i}_{k}"
            main([*argv, "-o", str(path)])
            blobs.append(path.read_bytes())
        same += len(set(blobs)) == 1
    record(11, same == len(cmds), f"{same}/{len(cmds)} commands byte-identical across 3 runs (threads 1, 1, 4)")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
