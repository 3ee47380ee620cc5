"""Command-line front end: ``landau-kit {radii,certify,coeffs,sharpness}``.

Ranges are written ``start:stop:count`` and include both ends; a plain
number is a one-point range.  Output is CSV or JSON on stdout or ``--output``;
each output embeds a run manifest (command, parameters, seed, version).  The
wall time goes to stderr, or to ``<output>.manifest.json`` next to a file, so
that reruns with the same arguments produce byte-identical output.

Exit codes: 0 all checks pass, 1 a check failed (witnesses are emitted),
2 usage or domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .certify import (
    CertificateReport,
    GridSpec,
    collision_witness_F2,
    coverage_min_modulus,
    injectivity_check,
    jacobian_positivity,
    lemma1_distortion_check,
    lemma4_report,
    sharpness_witness_F1,
    starlike_boundary_check,
)
from .coeffs import check_carlson, check_lemma3, extract, extremal_equality, sample_bma, sample_schur
from .core import ClosedFormFunction, SeriesFunction, as_series, load_series
from .maps import BiAnalyticMap, named_map
from .radii import (
    Theorem1Params,
    Theorem2Params,
    Theorem3Params,
    rho2_sigma2,
    theorem1_radii,
    theorem3_radii,
    theorem4_radius,
    theoremA_radius,
    theoremB_radius,
    theoremC_radii,
    theoremD_radii,
    theoremE_radii,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
PARAM_NAMES = ("l1", "l2", "lambda", "m1", "m2", "m")


class UsageError(Exception):
    pass


def fmt(x) -> str:
    """Fixed float formatting for table output."""
    if x is None:
        return ""
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def parse_range(text: str) -> list[float]:
    """``a:b:n`` -> ``n`` evenly spaced values from ``a`` to ``b`` inclusive."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return [float(parts[0])]
        if len(parts) == 3:
            a, b, n = float(parts[0]), float(parts[1]), int(parts[2])
            if n < 1:
                raise ValueError
            return [float(v) for v in np.linspace(a, b, n)] if n > 1 else [a]
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"bad range {text!r}; use start:stop:count")


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("LANDAU_KIT_THREADS", "1")))
    except ValueError:
        return 1


def ordered_map(fn, items):
    """Map preserving input order; parallel when LANDAU_KIT_THREADS > 1."""
    items = list(items)
    n = thread_count()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _strip_output(argv):
    out, skip = [], False
    for a in argv:
        if skip:
            skip = False
        elif a in ("--output", "-o"):
            skip = True
        elif not a.startswith("--output="):
            out.append(a)
    return out


def manifest(args, argv) -> dict:
    # the destination path is left out so output bytes do not depend on it
    params = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "output")}
    return {
        "tool": "landau-kit",
        "version": __version__,
        "command": args.command,
        "argv": _strip_output(argv),
        "params": params,
        "seed": getattr(args, "seed", None),
    }


def emit(text: str, args, info: dict, wall: float):
    info = dict(info, wall_time_s=round(wall, 6))
    if args.output:
        out = Path(args.output)
        out.write_text(text, encoding="utf-8")
        Path(str(out) + ".manifest.json").write_text(
            json.dumps(info, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    else:
        sys.stdout.write(text)
        sys.stdout.flush()
        print(json.dumps({"wall_time_s": info["wall_time_s"]}), file=sys.stderr)


def csv_text(header, rows, info) -> str:
    buf = io.StringIO()
    buf.write("# manifest: " + json.dumps(info, sort_keys=True) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def json_text(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, allow_nan=False) + "\n"


# ---------------------------------------------------------------------------
# radii

THEOREMS = {
    "t1": (("l1", "l2"), lambda p: theorem1_radii(Theorem1Params(p["l1"], p["l2"]))),
    "t2": (("lambda",), lambda p: rho2_sigma2(Theorem2Params(p["lambda"]))),
    "t3": (("m1", "m2"), lambda p: theorem3_radii(Theorem3Params(p["m1"], p["m2"]))),
    "t4": (("m1", "m2"), lambda p: theorem4_radius(Theorem3Params(p["m1"], p["m2"]))),
    "tA": (("m",), lambda p: theoremA_radius(p["m"])),
    "tB": (("lambda",), lambda p: theoremB_radius(p["lambda"])),
    "tC": (("l1", "l2"), lambda p: theoremC_radii(p["l1"], p["l2"])),
    "tD": (("lambda",), lambda p: theoremD_radii(p["lambda"])),
    "tE": (("m",), lambda p: theoremE_radii(p["m"])),
}


def param_tuples(theorem: str, ranges: dict) -> list[dict]:
    need, _ = THEOREMS[theorem]
    if need == ("m1", "m2") and ranges.get("m1") is None and ranges.get("m2") is None:
        if ranges.get("m") is None:
            raise UsageError(f"{theorem} needs --m1 and --m2 (or --m for M1 = M2 = M)")
        return [{"m1": v, "m2": v} for v in ranges["m"]]
    missing = [k for k in need if ranges.get(k) is None]
    if missing:
        raise UsageError(f"{theorem} needs " + ", ".join("--" + k for k in missing))
    grids = np.meshgrid(*[ranges[k] for k in need], indexing="ij")
    flat = [g.ravel() for g in grids]
    return [{k: float(v[i]) for k, v in zip(need, flat)} for i in range(flat[0].size)]


def _solve(job):
    theorem, params = job
    try:
        return THEOREMS[theorem][1](params), None
    except (ValueError, ArithmeticError, RuntimeError) as exc:
        return None, f"{theorem} {params}: {exc}"


def cmd_radii(args, argv):
    ranges = {k: getattr(args, k.replace("lambda", "lam")) for k in PARAM_NAMES}
    info = manifest(args, argv)
    if args.compare:
        pair = [t.strip() for t in args.compare.split(",")]
        if len(pair) != 2 or any(t not in THEOREMS for t in pair):
            raise UsageError("--compare takes two theorem ids, e.g. t3,tE")
        tuples = [param_tuples(t, ranges) for t in pair]
        if len(tuples[0]) != len(tuples[1]):
            raise UsageError("compared theorems need parameter ranges of equal length")
        jobs = [(pair[0], p) for p in tuples[0]] + [(pair[1], p) for p in tuples[1]]
        results = ordered_map(_solve, jobs)
        n = len(tuples[0])
        rows, errors = [], []
        for i in range(n):
            (ra, ea), (rb, eb) = results[i], results[n + i]
            if ea or eb:
                errors.extend(e for e in (ea, eb) if e)
                continue
            merged = {**tuples[1][i], **tuples[0][i]}
            rows.append(
                [pair[0], pair[1]] + [merged.get(k) for k in PARAM_NAMES]
                + [ra.rho, ra.sigma, rb.rho, rb.sigma, ra.rho - rb.rho]
            )
        header = ["theorem_a", "theorem_b", *PARAM_NAMES, "rho_a", "sigma_a", "rho_b", "sigma_b", "improvement"]
    else:
        chosen = [t.strip() for t in (args.theorem or "").split(",") if t.strip()]
        if not chosen:
            raise UsageError("give --theorem or --compare")
        unknown = [t for t in chosen if t not in THEOREMS]
        if unknown:
            raise UsageError(f"unknown theorem(s): {', '.join(unknown)}; choose from {', '.join(THEOREMS)}")
        jobs = [(t, p) for t in chosen for p in param_tuples(t, ranges)]
        rows, errors = [], []
        for (t, p), (res, err) in zip(jobs, ordered_map(_solve, jobs)):
            if err:
                errors.append(err)
                continue
            rows.append([t] + [p.get(k) for k in PARAM_NAMES] + [res.rho, res.sigma, res.residual, res.branch])
        header = ["theorem", *PARAM_NAMES, "rho", "sigma", "residual", "branch"]

    for e in errors:
        print(f"domain error: {e}", file=sys.stderr)
    if args.format == "json":
        text = json_text({"manifest": info, "columns": header, "rows": rows, "errors": errors})
    else:
        text = csv_text(header, rows, info)
    return text, info, (EXIT_USAGE if not rows else EXIT_OK)


# ---------------------------------------------------------------------------
# certify

CHECKS = ("inj", "jac", "cov", "star", "sharp", "lemma1", "lemma4")


def theorem_radius(name: str, params: list[float]) -> tuple[float, float]:
    """Univalence radius and covering radius guaranteed for a named map."""
    if name == "F1":
        r = theorem1_radii(Theorem1Params(*params))
    elif name == "F0":
        r = theoremC_radii(*params)
    elif name == "F2":
        r = rho2_sigma2(Theorem2Params(params[0]))
    elif name == "F3":
        r = theorem3_radii(Theorem3Params(1.0, 1.0))
    elif name == "f0":
        m = params[0]
        rho = 1 / (m + math.sqrt(m * m - 1))
        return rho, m * rho * rho
    else:
        raise UsageError(f"no theorem radius known for {name}; pass --r")
    return r.rho, r.sigma


def _as_map_series(f: BiAnalyticMap) -> tuple[SeriesFunction, SeriesFunction]:
    return as_series(f.g), as_series(f.h)


def run_checks(f, name, params, r, sigma, checks, seed, at_theorem) -> list[CertificateReport]:
    reports = []
    inner = r * (1 - 1e-3) if at_theorem else r
    inner = min(inner, 0.999)
    for check in checks:
        if check == "inj":
            reports.append(injectivity_check(f, GridSpec(40, 100, inner)))
        elif check == "jac":
            reports.append(jacobian_positivity(f, GridSpec(100, 256, inner)))
        elif check == "cov":
            reports.append(coverage_min_modulus(f, min(r, 0.999), claimed_sigma=sigma))
        elif check == "star":
            reports.append(starlike_boundary_check(f, inner))
        elif check == "sharp":
            target = min(1.05 * r, 1.0) if at_theorem else r
            if name == "F1":
                reports.append(sharpness_witness_F1(Theorem1Params(*params), target))
            elif name in ("F2", "F3"):
                lam = params[0] if name == "F2" else 1.0
                reports.append(collision_witness_F2(lam, min(target, 0.999)))
            else:
                raise UsageError(f"no sharpness construction for {name}")
        elif check == "lemma1":
            h = f.h
            if not (isinstance(h, ClosedFormFunction) and h.kind == "H1_part"):
                raise UsageError("lemma1 needs a map whose H part is the F1 logarithmic part")
            reports.append(lemma1_distortion_check(h, h.params[0], min(r, 0.999), seed=seed))
        elif check == "lemma4":
            g, h = (f.g, f.h) if isinstance(f.g, SeriesFunction) else _as_map_series(f)
            reports.append(lemma4_report(g, h))
    return reports


def cmd_certify(args, argv):
    checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    bad = [c for c in checks if c not in CHECKS]
    if bad:
        raise UsageError(f"unknown check(s) {', '.join(bad)}; choose from {', '.join(CHECKS)}")
    if args.series:
        g, h = (load_series(p) for p in args.series)
        f, name, params = BiAnalyticMap(g, h, name="series"), "series", []
    else:
        if not args.map:
            raise UsageError("name a map (F1, F0, F2, F3, f0, fn) or pass --series G.json H.json")
        name, params = args.map[0], [float(v) for v in args.map[1:]]
        f = named_map(name, params)

    sigma = None
    if set(checks) <= {"lemma4"} and args.r is None and not args.at_theorem_radius:
        # lemma4 finds its own radius
        r, at_theorem = 1.0, False
    elif args.r is not None:
        r = args.r
        at_theorem = False
    elif args.at_theorem_radius:
        if name == "series":
            from .certify import lemma4_radius

            r = lemma4_radius(f.g, f.h)
        else:
            r, sigma = theorem_radius(name, params)
        at_theorem = True
    else:
        raise UsageError("give --r or --at-theorem-radius")
    if not 0 < r <= 1:
        raise UsageError(f"radius {r!r} outside (0, 1]")

    reports = run_checks(f, name, params, r, sigma, checks, args.seed, at_theorem)
    info = manifest(args, argv)
    payload = {"manifest": info, "map": name, "params": params, "radius": r, "reports": [x.to_dict() for x in reports]}
    code = EXIT_OK if all(x.passed for x in reports) else EXIT_FAIL
    return json_text(payload), info, code


# ---------------------------------------------------------------------------
# coeffs


def _lemma3_row(job):
    seed, m, n_max, max_degree = job
    s = sample_bma(seed, m, max_degree)
    rep = check_lemma3(s, n_max)
    return [seed, m, s.degree, n_max, rep.measured, rep.verdict]


def _carlson_row(job):
    seed, _, n_max, max_degree = job
    s = sample_schur(seed, max_degree)
    rep = check_carlson(extract(s, n_max, 1.0), n_max)
    return [seed, None, s.blaschke_degree, n_max, rep.measured, rep.verdict]


def cmd_coeffs(args, argv):
    info = manifest(args, argv)
    header = ["seed", "M", "degree", "max_n", "worst_margin", "verdict"]
    if args.extremal:
        if args.n is None or args.m is None:
            raise UsageError("--extremal needs --m and --n")
        n_max = max(args.n_max, args.n)
        rep = check_lemma3(ClosedFormFunction("lemma3_fn", (args.m, args.n)), n_max)
        gap, err = extremal_equality(args.m, args.n, n_max)
        rows = [[None, args.m, f"extremal n={args.n}", n_max, rep.measured, rep.verdict]]
        info["extremal"] = {"n": args.n, "abs_an_minus_bound": gap, "extraction_bound": err}
        code = EXIT_OK if rep.passed and abs(gap) <= err + 1e-12 else EXIT_FAIL
    else:
        if args.samples < 1:
            raise UsageError("--samples must be positive")
        if not args.carlson and (args.m is None or args.m < 1):
            raise UsageError("--m must be given and >= 1")
        jobs = [(args.seed + i, args.m, args.n_max, args.max_degree) for i in range(args.samples)]
        rows = ordered_map(_carlson_row if args.carlson else _lemma3_row, jobs)
        passed = sum(r[-1] == "pass" for r in rows)
        worst = min(r[4] for r in rows)
        rows.append(["summary", args.m, None, args.n_max, worst, f"pass={passed}/{len(rows)}"])
        code = EXIT_OK if passed == args.samples else EXIT_FAIL
    if args.format == "json":
        return json_text({"manifest": info, "columns": header, "rows": rows}), info, code
    return csv_text(header, rows, info), info, code


# ---------------------------------------------------------------------------
# sharpness


def cmd_sharpness(args, argv):
    rep = sharpness_witness_F1(Theorem1Params(args.l1, args.l2), args.r)
    info = manifest(args, argv)
    return json_text({"manifest": info, "reports": [rep.to_dict()]}), info, (
        EXIT_OK if rep.passed else EXIT_FAIL
    )


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="landau-kit",
        description="Landau-type radii for bounded bi-analytic maps and their numerical certificates.",
        epilog="Ranges: start:stop:count, inclusive at both ends. "
        "LANDAU_KIT_THREADS caps parallel workers.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("radii", help="tabulate univalence/covering radii")
    p.add_argument("--theorem", help="comma list of t1,t2,t3,t4,tA,tB,tC,tD,tE")
    p.add_argument("--compare", help="two theorem ids compared on the same parameters, e.g. t3,tE")
    for k in PARAM_NAMES:
        p.add_argument("--" + k, dest=k.replace("lambda", "lam"), type=parse_range, metavar="RANGE")
    p.set_defaults(func=cmd_radii)

    p = sub.add_parser("certify", help="run numerical checks on a map")
    p.add_argument("map", nargs="*", help="map name and parameters, e.g. F1 1 2")
    p.add_argument("--series", nargs=2, metavar=("G.json", "H.json"))
    p.add_argument("--r", type=float)
    p.add_argument("--at-theorem-radius", action="store_true")
    p.add_argument("--checks", default="inj,jac,cov", help="comma list of " + ",".join(CHECKS))
    p.set_defaults(func=cmd_certify, format="json")

    p = sub.add_parser("coeffs", help="coefficient-inequality campaigns")
    p.add_argument("--m", type=float)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--max-degree", type=int, default=8)
    p.add_argument("--carlson", action="store_true", help="Schur samples, Carlson inequalities")
    p.add_argument("--extremal", action="store_true", help="check the extremal f_n")
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("sharpness", help="equal-value witness for F1 above rho1")
    p.add_argument("--l1", type=float, required=True)
    p.add_argument("--l2", type=float, required=True)
    p.add_argument("--r", type=float, required=True)
    p.set_defaults(func=cmd_sharpness, format="json")

    for name, sp in sub.choices.items():
        sp.add_argument("--output", "-o")
        sp.add_argument("--seed", type=int, default=0)
        if name in ("radii", "coeffs"):
            sp.add_argument("--format", choices=("csv", "json"), default="csv")
    return ap


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        text, info, code = args.func(args, argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    emit(text, args, info, time.perf_counter() - start)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
