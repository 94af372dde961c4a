"""Command-line front end for reproducible runs.

Subcommands
-----------
selftest       spinor / two-form / twistor identity suites on random draws
analyze        congruence invariants over a spatial grid -> CSV + JSON
synthesize     assemble a null electromagnetic field over a 4d grid -> CSV + JSON
verify         field-equation residuals of a synthesized field, against --tol
example-sec4   certification suite for the worked CR hypersurface example

Reports are JSON with a ``schema`` field of ``nullcong-report-v1`` and the
seed echoed back; identical configuration and seed produce byte-identical
report files.  Sweeps mark numerically failing rows in the CSV ``status``
column and keep going rather than aborting.

Configuration may come from flags or from a flat key-value file with one
section per subcommand (``--config``); flags win over file values.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import cr_example
from .congruence import (
    DISTINGUISHED_EVENT,
    CongruenceField,
    grid_events,
    probe_domain_radius,
    shear_many,
    _solve_many,
)
from .maxwell import NullFieldSpec, assemble_many, hypercube_events, maxwell_residual
from .spinor import _EPS, Event, Spinor2, inner, inner_eps
from .spinor import SymmetricSpinor2, TwoForm, decompose_two_form, hodge_star, recompose_two_form
from .twistor import geodesic_from_twistor, incident_components, quadric_sigma

SCHEMA = "nullcong-report-v1"

EXIT_OK = 0
EXIT_TOLERANCE = 1
EXIT_CONFIG = 2


class ConfigError(ValueError):
    """Bad flag/config values; maps to exit code 2."""


# ---------------------------------------------------------------------------
# parsing helpers


def _parse_grid(text: str):
    """``t,x,y,z:half:n`` -> (center (4,), half_width, points per axis)."""
    try:
        center_s, half_s, n_s = text.split(":")
        center = np.array([float(c) for c in center_s.split(",")], dtype=float)
        half = float(half_s)
        n = int(n_s)
    except (ValueError, AttributeError) as exc:
        raise ConfigError(f"bad grid spec {text!r}; expected t,x,y,z:half:n") from exc
    if center.shape != (4,):
        raise ConfigError("grid centre needs exactly four coordinates")
    if n < 2:
        raise ConfigError("grid needs at least 2 points per axis")
    if half <= 0:
        raise ConfigError("grid half-width must be positive")
    return center, half, n


def _parse_complex_list(text: str, count: int, what: str):
    try:
        vals = [complex(tok.strip().replace(" ", "")) for tok in text.split(",")]
    except ValueError as exc:
        raise ConfigError(f"bad {what} {text!r}; expected comma-separated complex numbers") from exc
    if len(vals) != count:
        raise ConfigError(f"{what} needs exactly {count} comma-separated components")
    return vals


def _positive(value: float, what: str) -> float:
    if not value > 0:
        raise ConfigError(f"{what} must be positive")
    return value


def _build_field(ns) -> CongruenceField:
    family = ns.family
    if family == "constant":
        comps = _parse_complex_list(ns.components or "1,0", 2, "--components")
        params = {"components": comps}
    elif family == "linear_kerr":
        if not (ns.lam and ns.mu):
            raise ConfigError("linear_kerr needs --lam and --mu")
        params = {
            "lam": _parse_complex_list(ns.lam, 2, "--lam"),
            "mu": _parse_complex_list(ns.mu, 2, "--mu"),
        }
    elif family == "cr_graph":
        params = {"tol": ns.solver_tol, "path_step": ns.path_step}
    else:
        raise ConfigError(f"unknown family {family!r}")
    strategy = ns.strategy or ("fd" if family == "cr_graph" else "ad")
    return CongruenceField(family, params, strategy=strategy, fd_step=ns.step)


# ---------------------------------------------------------------------------
# report plumbing


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    return obj


def _emit_report(report: dict, out_dir) -> None:
    payload = json.dumps(_jsonable(report), sort_keys=True, indent=2) + "\n"
    sys.stdout.write(payload)
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "report.json").write_text(payload)


def _write_csv(out_dir, header, rows) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / "points.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _partitions(n_rows: int, workers: int):
    """Contiguous chunk boundaries; fixed by (n_rows, workers) alone."""
    workers = max(1, min(workers, n_rows))
    edges = np.linspace(0, n_rows, workers + 1).astype(int)
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def _run_chunks(worker, jobs, workers: int):
    """Map jobs to results, preserving job order regardless of scheduling."""
    if workers <= 1 or len(jobs) <= 1:
        return [worker(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(worker, jobs))


# ---------------------------------------------------------------------------
# selftest


def _selftest_inner_product(rng) -> dict:
    v = rng.normal(size=(10_000, 4))
    w = rng.normal(size=(10_000, 4))
    direct = inner(v, w)
    via_eps = inner_eps(v, w)
    scale = np.linalg.norm(v, axis=1) * np.linalg.norm(w, axis=1)
    err = float(np.max(np.abs(via_eps - direct) / scale))
    delta = _EPS @ _EPS.T  # epsilon^{AB} epsilon_{CB}
    exact = bool(np.array_equal(delta, np.eye(2)))
    return {
        "name": "inner_product_epsilon_route",
        "max_error": err,
        "tolerance": 1e-13,
        "identity_exact": exact,
        "passed": exact and err < 1e-13,
    }


def _selftest_hodge(rng) -> dict:
    comps = rng.normal(size=(10_000, 6)) + 1j * rng.normal(size=(10_000, 6))
    F = TwoForm(comps)
    double = hodge_star(hodge_star(F)).components
    err_star = float(np.max(np.abs(double + comps)))
    alpha, beta = decompose_two_form(F)
    rebuilt = recompose_two_form(alpha, beta).components
    err_split = float(np.max(np.abs(rebuilt - comps)))
    sd = recompose_two_form(
        SymmetricSpinor2(np.zeros_like(alpha.components), primed=False), beta
    )
    err_sd = float(np.max(np.abs(hodge_star(sd).components - 1j * sd.components)))
    err = max(err_star, err_split, err_sd)
    scale = float(np.max(np.abs(comps)))
    return {
        "name": "hodge_star_and_eigendecomposition",
        "max_error": err / scale,
        "tolerance": 1e-13,
        "passed": err / scale < 1e-13,
    }


def _selftest_twistor(rng) -> dict:
    xs = rng.normal(size=(1_000, 4))
    pis = rng.normal(size=(1_000, 2)) + 1j * rng.normal(size=(1_000, 2))
    zs = incident_components(xs, pis)
    sig = np.abs(quadric_sigma(zs)) / np.linalg.norm(zs, axis=1) ** 2
    max_sigma = float(sig.max())
    max_dist = 0.0
    for x, z in zip(xs, zs):
        geo = geodesic_from_twistor(z)
        delta = x - geo.base.coords
        u = np.asarray(geo.direction)
        perp = delta - (delta @ u) / (u @ u) * u
        max_dist = max(max_dist, float(np.linalg.norm(perp)))
    return {
        "name": "twistor_roundtrip",
        "max_sigma": max_sigma,
        "sigma_tolerance": 1e-13,
        "max_geodesic_distance": max_dist,
        "distance_tolerance": 1e-10,
        "passed": max_sigma < 1e-13 and max_dist < 1e-10,
    }


def _cmd_selftest(ns) -> int:
    rng = np.random.default_rng(ns.seed)
    checks = [_selftest_inner_product(rng), _selftest_hodge(rng), _selftest_twistor(rng)]
    report = {
        "schema": SCHEMA,
        "subcommand": "selftest",
        "seed": ns.seed,
        "checks": checks,
        "all_passed": all(c["passed"] for c in checks),
    }
    _emit_report(report, ns.out)
    return EXIT_OK if report["all_passed"] else EXIT_TOLERANCE


# ---------------------------------------------------------------------------
# analyze

_ANALYZE_HEADER = [
    "t", "x", "y", "z",
    "sigma_norm_scaled", "geodesy_kappa_re", "geodesy_kappa_im",
    "geodesy_residual", "twist_norm", "twist_signed", "status",
]


def _field_spec_tuple(ns):
    return (
        ns.family,
        ns.components,
        ns.lam,
        ns.mu,
        ns.solver_tol,
        ns.path_step,
        ns.strategy,
        ns.step,
    )


def _field_from_tuple(spec):
    family, components, lam, mu, solver_tol, path_step, strategy, step = spec
    ns = argparse.Namespace(
        family=family, components=components, lam=lam, mu=mu,
        solver_tol=solver_tol, path_step=path_step, strategy=strategy, step=step,
    )
    return _build_field(ns)


def _analyze_rows(field, xs):
    """Invariant rows for one batch; falls back to per-point on failure."""
    try:
        seeds = _solve_many(
            xs,
            tol=field.params.get("tol", 1e-12),
            path_step=field.params.get("path_step", 0.02),
        ) if field.family == "cr_graph" else None
        rep = shear_many(field, xs, _center_seeds=seeds)
        return [
            [x[0], x[1], x[2], x[3],
             rep["sigma_norm_scaled"][i], rep["geodesy_kappa"][i].real,
             rep["geodesy_kappa"][i].imag, rep["geodesy_residual"][i],
             rep["twist_norm"][i], rep["twist_signed"][i], "ok"]
            for i, x in enumerate(xs)
        ]
    except Exception:
        rows = []
        for x in xs:
            try:
                rep = shear_many(field, x[None, :])
                rows.append(
                    [x[0], x[1], x[2], x[3],
                     rep["sigma_norm_scaled"][0], rep["geodesy_kappa"][0].real,
                     rep["geodesy_kappa"][0].imag, rep["geodesy_residual"][0],
                     rep["twist_norm"][0], rep["twist_signed"][0], "ok"]
                )
            except Exception as exc:  # reported per point, sweep continues
                rows.append(list(x) + [float("nan")] * 6 + [f"error:{type(exc).__name__}"])
        return rows


def _analyze_chunk(job):
    spec, xs = job
    return _analyze_rows(_field_from_tuple(spec), np.asarray(xs))


def _cmd_analyze(ns) -> int:
    field = _build_field(ns)
    center, half, n = _parse_grid(ns.grid)
    pts = grid_events(center, half, n)
    spec = _field_spec_tuple(ns)
    jobs = [(spec, pts[a:b]) for a, b in _partitions(len(pts), ns.workers)]
    rows = [row for chunk in _run_chunks(_analyze_chunk, jobs, ns.workers) for row in chunk]

    ok = [r for r in rows if r[-1] == "ok"]
    n_err = len(rows) - len(ok)
    summary = {
        "schema": SCHEMA,
        "subcommand": "analyze",
        "seed": ns.seed,
        "family": ns.family,
        "grid": {"center": list(center), "half_width": half, "points_per_axis": n},
        "n_points": len(rows),
        "n_errors": n_err,
    }
    if ok:
        arr = np.array([r[4:10] for r in ok], dtype=float)
        summary.update(
            max_sigma_norm_scaled=float(arr[:, 0].max()),
            max_geodesy_residual=float(arr[:, 3].max()),
            twist_norm_range=[float(arr[:, 4].min()), float(arr[:, 4].max())],
            twist_signed_range=[float(arr[:, 5].min()), float(arr[:, 5].max())],
        )
    if ns.family == "cr_graph":
        summary["probed_domain_radius"] = probe_domain_radius(field, seed=ns.seed)
    if ns.tol is not None:
        summary["tolerance"] = ns.tol
        summary["passed"] = bool(ok) and summary["max_sigma_norm_scaled"] < ns.tol

    if ns.out is not None:
        _write_csv(ns.out, _ANALYZE_HEADER, rows)
    _emit_report(summary, ns.out)
    if ns.tol is not None and not summary["passed"]:
        return EXIT_TOLERANCE
    return EXIT_OK


# ---------------------------------------------------------------------------
# synthesize / verify

_SYNTH_HEADER = ["t", "x", "y", "z"] + [
    f"G{ab}_{part}" for ab in ("tx", "ty", "tz", "xy", "xz", "yz") for part in ("re", "im")
] + ["status"]


def _synth_chunk(job):
    spec_tuple, profile, nu, xs = job
    xs = np.asarray(xs)
    spec = NullFieldSpec(_field_from_tuple(spec_tuple), profile, nu=nu)
    try:
        g = assemble_many(spec, xs)
        return [
            list(x) + [v for c in g[i] for v in (c.real, c.imag)] + ["ok"]
            for i, x in enumerate(xs)
        ]
    except Exception:
        rows = []
        for x in xs:
            try:
                g = assemble_many(spec, x[None, :])
                rows.append(list(x) + [v for c in g[0] for v in (c.real, c.imag)] + ["ok"])
            except Exception as exc:
                rows.append(list(x) + [float("nan")] * 12 + [f"error:{type(exc).__name__}"])
        return rows


def _nu_tuple(ns):
    nu = _parse_complex_list(ns.nu, 2, "--nu")
    return (nu[0], nu[1])


def _cmd_synthesize(ns) -> int:
    _build_field(ns)  # validate family flags up front
    center, half, n = _parse_grid(ns.grid)
    pts = hypercube_events(center, half, n)
    job_spec = _field_spec_tuple(ns)
    nu = _nu_tuple(ns)
    jobs = [(job_spec, ns.profile, nu, pts[a:b]) for a, b in _partitions(len(pts), ns.workers)]
    rows = [row for chunk in _run_chunks(_synth_chunk, jobs, ns.workers) for row in chunk]

    n_err = sum(1 for r in rows if r[-1] != "ok")
    report = {
        "schema": SCHEMA,
        "subcommand": "synthesize",
        "seed": ns.seed,
        "family": ns.family,
        "profile": ns.profile,
        "grid": {"center": list(center), "half_width": half, "points_per_axis": n},
        "n_points": len(rows),
        "n_errors": n_err,
    }
    if ns.out is not None:
        _write_csv(ns.out, _SYNTH_HEADER, rows)
    _emit_report(report, ns.out)
    return EXIT_OK


def _cmd_verify(ns) -> int:
    field = _build_field(ns)
    center, half, n = _parse_grid(ns.grid)
    pts = hypercube_events(center, half, n)
    spec = NullFieldSpec(field, ns.profile, nu=_nu_tuple(ns))
    tol = ns.tol if ns.tol is not None else 1e-10
    report = {
        "schema": SCHEMA,
        "subcommand": "verify",
        "seed": ns.seed,
        "family": ns.family,
        "profile": ns.profile,
        "grid": {"center": list(center), "half_width": half, "points_per_axis": n},
        "tolerance": tol,
    }
    try:
        rep = maxwell_residual(spec, pts)
    except Exception as exc:
        report["error"] = f"{type(exc).__name__}: {exc}"
        report["passed"] = False
    else:
        report.update(
            maxwell_residual=rep.maxwell_residual,
            self_duality_defect=rep.self_duality_defect,
            nullity_defect=rep.nullity_defect,
            energy_rank1_defect=rep.energy_rank1_defect,
            passed=bool(rep.maxwell_residual < tol),
        )
    _emit_report(report, ns.out)
    return EXIT_OK if report["passed"] else EXIT_TOLERANCE


# ---------------------------------------------------------------------------
# example-sec4


def _cmd_example(ns) -> int:
    suite = cr_example.certification_suite(seed=ns.seed)
    report = {
        "schema": SCHEMA,
        "subcommand": "example-sec4",
        "seed": ns.seed,
        "checks": suite["checks"],
        "all_passed": suite["all_passed"],
    }
    _emit_report(report, ns.out)
    return EXIT_OK if suite["all_passed"] else EXIT_TOLERANCE


# ---------------------------------------------------------------------------
# argument wiring

_CONFIG_KEYS = (
    "family", "grid", "step", "tol", "seed", "workers", "out",
    "components", "lam", "mu", "profile", "nu", "strategy",
    "solver_tol", "path_step",
)

_DEFAULTS = {
    "family": "linear_kerr",
    "grid": None,
    "step": 1e-5,
    "tol": None,
    "seed": 0,
    "workers": 1,
    "out": None,
    "components": None,
    "lam": None,
    "mu": None,
    "profile": "unit",
    "nu": "1,0",
    "strategy": None,
    "solver_tol": 1e-12,
    "path_step": 0.02,
}

_FLOAT_KEYS = {"step", "tol", "solver_tol", "path_step"}
_INT_KEYS = {"seed", "workers"}


def _add_common(sub):
    sub.add_argument("--seed", type=int, default=None,
                     help="RNG seed for random draws (default 0, echoed in reports)")
    sub.add_argument("--out", default=None,
                     help="output directory for report.json (and points.csv for sweeps)")
    sub.add_argument("--config", default=None,
                     help="key-value config file with one section per subcommand")


def _add_field_flags(sub):
    sub.add_argument("--family", choices=("constant", "linear_kerr", "cr_graph"),
                     default=None, help="congruence family (default linear_kerr)")
    sub.add_argument("--components", default=None,
                     help="constant family: two complex components, e.g. '1,0'")
    sub.add_argument("--lam", default=None,
                     help="linear_kerr: two complex components of the linear part")
    sub.add_argument("--mu", default=None,
                     help="linear_kerr: two complex components of the constant part")
    sub.add_argument("--strategy", choices=("ad", "fd"), default=None,
                     help="differentiation strategy (default ad; cr_graph always fd)")
    sub.add_argument("--step", type=float, default=None,
                     help="finite-difference step scale (default 1e-5)")
    sub.add_argument("--solver-tol", dest="solver_tol", type=float, default=None,
                     help="cr_graph Newton tolerance (default 1e-12)")
    sub.add_argument("--path-step", dest="path_step", type=float, default=None,
                     help="cr_graph continuation step (default 0.02)")
    sub.add_argument("--grid", default=None,
                     help="grid spec t,x,y,z:half:n (n >= 2 points per axis)")
    sub.add_argument("--workers", type=int, default=None,
                     help="sweep parallelism; partition boundaries are fixed by the config")
    sub.add_argument("--tol", type=float, default=None,
                     help="assertion tolerance for the subcommand's headline number")


def _add_profile_flags(sub):
    sub.add_argument("--profile", choices=("unit", "first_squared", "exp_second", "conj_first"),
                     default=None, help="free profile of the field amplitude (default unit)")
    sub.add_argument("--nu", default=None,
                     help="reference spinor for the amplitude scale, e.g. '1,0'")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nullcong",
        description="Shear-free null congruences: analysis sweeps, field synthesis, certification.",
    )
    subs = parser.add_subparsers(dest="subcommand", required=True)

    s = subs.add_parser("selftest", help="run the algebraic identity suites")
    _add_common(s)
    s.set_defaults(func=_cmd_selftest)

    s = subs.add_parser("analyze", help="congruence invariants over a spatial grid")
    _add_common(s)
    _add_field_flags(s)
    s.set_defaults(func=_cmd_analyze)

    s = subs.add_parser("synthesize", help="assemble a null field over a 4d grid")
    _add_common(s)
    _add_field_flags(s)
    _add_profile_flags(s)
    s.set_defaults(func=_cmd_synthesize)

    s = subs.add_parser("verify", help="check field-equation residuals against --tol")
    _add_common(s)
    _add_field_flags(s)
    _add_profile_flags(s)
    s.set_defaults(func=_cmd_verify)

    s = subs.add_parser("example-sec4", help="certification suite for the worked CR example")
    _add_common(s)
    s.set_defaults(func=_cmd_example)

    return parser


def _apply_config(ns) -> None:
    """Fill unset flags from the config file section, then hard defaults."""
    file_values = {}
    if ns.config is not None:
        parser = configparser.ConfigParser()
        try:
            with open(ns.config) as fh:
                parser.read_file(fh)
        except (OSError, configparser.Error) as exc:
            raise ConfigError(f"cannot read config {ns.config!r}: {exc}") from exc
        if parser.has_section(ns.subcommand):
            file_values = dict(parser.items(ns.subcommand))
    for key in _CONFIG_KEYS:
        if not hasattr(ns, key):
            continue
        if getattr(ns, key) is None and key in file_values:
            raw = file_values[key]
            try:
                if key in _FLOAT_KEYS:
                    setattr(ns, key, float(raw))
                elif key in _INT_KEYS:
                    setattr(ns, key, int(raw))
                else:
                    setattr(ns, key, raw)
            except ValueError as exc:
                raise ConfigError(f"bad config value {key} = {raw!r}") from exc
        if getattr(ns, key) is None:
            setattr(ns, key, _DEFAULTS[key])
    if ns.out is not None:
        from pathlib import Path

        ns.out = Path(ns.out)
    for key in ("step", "solver_tol", "path_step"):
        if hasattr(ns, key):
            _positive(getattr(ns, key), f"--{key.replace('_', '-')}")
    if getattr(ns, "tol", None) is not None:
        _positive(ns.tol, "--tol")
    if hasattr(ns, "workers") and ns.workers < 1:
        raise ConfigError("--workers must be at least 1")
    if hasattr(ns, "grid") and ns.grid is None:
        center = DISTINGUISHED_EVENT if ns.family == "cr_graph" else np.zeros(4)
        ns.grid = ",".join(repr(float(c)) for c in center) + ":0.1:5"


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        _apply_config(ns)
        return ns.func(ns)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
