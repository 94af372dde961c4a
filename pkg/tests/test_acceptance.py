"""Acceptance gate: the nine headline properties at fixed tolerances.

Each test prints one pass/fail line with the measured numbers, then asserts.
Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
"""

import time

import numpy as np

from nullcong.congruence import (
    DISTINGUISHED_EVENT,
    CongruenceField,
    _chart_coefficients,
    _solve_many,
    conformal_invert,
    grid_events,
    shear,
    shear_many,
    sweep_grid,
)
from nullcong.cr_example import certification_suite
from nullcong.maxwell import NullFieldSpec, assemble_field, f_and_star_f
from nullcong.maxwell import energy_tensor as energy_of
from nullcong.maxwell import hypercube_events, maxwell_residual
from nullcong.spinor import (
    _EPS,
    SymmetricSpinor2,
    TwoForm,
    decompose_two_form,
    hodge_star,
    inner,
    inner_eps,
    recompose_two_form,
)
from nullcong.twistor import chart_raw, geodesic_from_twistor, incident_components, quadric_sigma

LAM = [0.3 + 0.1j, -0.2 + 0.7j]
MU = [0.5 - 0.2j, 1.1 + 0.4j]


def _line(num: int, ok: bool, detail: str) -> None:
    print(f"criterion {num}: {'PASS' if ok else 'FAIL'} ({detail})")


def test_criterion_1_spinor_metric_identities():
    rng = np.random.default_rng(1)
    t0 = time.perf_counter()
    v = rng.normal(size=(10_000, 4))
    w = rng.normal(size=(10_000, 4))
    scale = np.linalg.norm(v, axis=1) * np.linalg.norm(w, axis=1)
    rel = float(np.max(np.abs(inner_eps(v, w) - inner(v, w)) / scale))
    delta_exact = bool(np.array_equal(_EPS @ _EPS.T, np.eye(2)))
    dt = time.perf_counter() - t0
    ok = rel < 1e-13 and delta_exact and dt < 1.0
    _line(1, ok, f"rel err {rel:.2e}, eps.eps exact {delta_exact}, {dt:.2f}s")
    assert rel < 1e-13
    assert delta_exact
    assert dt < 1.0


def test_criterion_2_hodge_star_eigendecomposition():
    rng = np.random.default_rng(2)
    t0 = time.perf_counter()
    comps = rng.normal(size=(10_000, 6)) + 1j * rng.normal(size=(10_000, 6))
    F = TwoForm(comps)
    scale = float(np.max(np.abs(comps)))
    err_double = float(np.max(np.abs(hodge_star(hodge_star(F)).components + comps))) / scale
    alpha, beta = decompose_two_form(F)
    err_split = (
        float(np.max(np.abs(recompose_two_form(alpha, beta).components - comps))) / scale
    )
    # self-dual exactly when the unprimed block vanishes
    sd = recompose_two_form(SymmetricSpinor2(np.zeros_like(alpha.components)), beta)
    err_sd = (
        float(np.max(np.abs(hodge_star(sd).components - 1j * sd.components))) / scale
    )
    generic_defect = float(
        np.max(np.abs(hodge_star(F).components - 1j * comps)) / scale
    )
    dt = time.perf_counter() - t0
    err = max(err_double, err_split, err_sd)
    ok = err < 1e-13 and generic_defect > 1e-3 and dt < 1.0
    _line(2, ok, f"max err {err:.2e}, generic not self-dual {generic_defect:.2e}, {dt:.2f}s")
    assert err < 1e-13
    assert generic_defect > 1e-3
    assert dt < 1.0


def test_criterion_3_twistor_round_trip():
    rng = np.random.default_rng(3)
    t0 = time.perf_counter()
    xs = rng.normal(size=(1_000, 4))
    pis = rng.normal(size=(1_000, 2)) + 1j * rng.normal(size=(1_000, 2))
    zs = incident_components(xs, pis)
    max_sigma = float(np.max(np.abs(quadric_sigma(zs)) / np.linalg.norm(zs, axis=1) ** 2))
    max_dist = 0.0
    for x, z in zip(xs, zs):
        geo = geodesic_from_twistor(z)
        delta = x - geo.base.coords
        u = np.asarray(geo.direction)
        perp = delta - (delta @ u) / (u @ u) * u
        max_dist = max(max_dist, float(np.linalg.norm(perp)))
    dt = time.perf_counter() - t0
    ok = max_sigma < 1e-13 and max_dist < 1e-10 and dt < 1.0
    _line(3, ok, f"sigma {max_sigma:.2e}, geodesic dist {max_dist:.2e}, {dt:.2f}s")
    assert max_sigma < 1e-13
    assert max_dist < 1e-10
    assert dt < 1.0


def test_criterion_4_chart_diagonalizes_quadric():
    rng = np.random.default_rng(4)
    zs = rng.normal(size=(10_000, 4)) + 1j * rng.normal(size=(10_000, 4))
    raw = chart_raw(zs)
    combo = (
        np.abs(raw[:, 2]) ** 2
        + np.abs(raw[:, 3]) ** 2
        - np.abs(raw[:, 0]) ** 2
        - np.abs(raw[:, 1]) ** 2
    )
    rel = float(np.max(np.abs(quadric_sigma(zs) - combo) / np.linalg.norm(zs, axis=1) ** 2))
    ok = rel < 1e-12
    _line(4, ok, f"max rel err {rel:.2e} on 10^4 twistors")
    assert rel < 1e-12


def test_criterion_5_shear_analyzer():
    rng = np.random.default_rng(31)
    const = CongruenceField.constant([1.0, 0.4 - 0.3j])
    c_rep = shear(const, rng.normal(size=4))
    const_zero = (
        np.array_equal(c_rep.sigma.components, [0, 0]) and c_rep.sigma_norm_scaled == 0.0
    )
    kerr = CongruenceField.linear_kerr(LAM, MU)
    xs = rng.normal(size=(1_000, 4))
    rep = shear_many(kerr, xs)
    max_sigma = float(rep["sigma_norm_scaled"].max())
    min_twist = float(rep["twist_norm"].min())

    # the scaling law needs a field with genuine shear; the closed-form
    # families are shear-free, so use a generic polynomial field instead
    def sheared(t, x, y, z):
        return 1.0 + 0.3 * x * x + 0.1j * t * z, x + 0.2 * y * y - 0.5j

    def doubled(t, x, y, z):
        o0, o1 = sheared(t, x, y, z)
        return 2.0 * o0, 2.0 * o1

    x0 = np.array([0.9, 0.1, -0.7, 0.3])
    s1 = shear(CongruenceField.user(sheared), x0).sigma.components
    s2 = shear(CongruenceField.user(doubled), x0).sigma.components
    nonvacuous = float(np.max(np.abs(s2))) > 1e-3
    scaling_err = float(np.max(np.abs(s2 - 8.0 * s1)) / np.max(np.abs(s2)))
    ok = (
        const_zero
        and max_sigma < 1e-10
        and min_twist > 1e-3
        and nonvacuous
        and scaling_err < 1e-12
    )
    _line(
        5,
        ok,
        f"const exact {const_zero}, kerr sigma {max_sigma:.2e}, "
        f"twist min {min_twist:.2e}, scaling err {scaling_err:.2e}",
    )
    assert const_zero
    assert max_sigma < 1e-10
    assert min_twist > 1e-3
    assert nonvacuous
    assert scaling_err < 1e-12


def test_criterion_6_graph_congruence_desk_scale():
    t0 = time.perf_counter()
    pts = grid_events(DISTINGUISHED_EVENT, 0.1, 9)
    zetas = _solve_many(pts)
    c0, c1 = _chart_coefficients(pts)
    raw = c0 + zetas[:, None] * c1
    u, w, z = raw[:, 0] / raw[:, 3], raw[:, 1] / raw[:, 3], raw[:, 2] / raw[:, 3]
    from nullcong._core import g_many

    max_h = float(np.max(np.abs(z - w * g_many(u))))

    f_2h = CongruenceField("cr_graph", {"tol": 1e-13, "path_step": 0.02}, fd_step=2e-4)
    f_h = CongruenceField("cr_graph", {"tol": 1e-13, "path_step": 0.02}, fd_step=1e-4)
    _, rep_2h = sweep_grid(f_2h, DISTINGUISHED_EVENT, 0.1, 9)
    _, rep_h = sweep_grid(f_h, DISTINGUISHED_EVENT, 0.1, 9)
    ratio = float(rep_2h["sigma_norm_scaled"].max() / rep_h["sigma_norm_scaled"].max())
    min_twist = float(rep_h["twist_norm"].min())
    dt = time.perf_counter() - t0
    ok = max_h < 1e-12 and 3.5 < ratio < 4.5 and min_twist > 1e-3 and dt < 30.0
    _line(
        6,
        ok,
        f"|h| {max_h:.2e}, FD decay ratio {ratio:.3f}, twist min {min_twist:.2f}, {dt:.1f}s",
    )
    assert max_h < 1e-12
    assert 3.5 < ratio < 4.5
    assert min_twist > 1e-3
    assert dt < 30.0


def test_criterion_7_graph_example_certification():
    t0 = time.perf_counter()
    report = certification_suite(seed=0)
    dt = time.perf_counter() - t0
    c = report["checks"]
    bound_ok = c["N5_global_bound"]["passed"] and c["N5_global_bound"]["samples"] >= 100_000
    probes_ok = c["N3_vanishing_order"]["passed"]
    levi_ok = (
        c["levi_at_origin_point"]["worst"] < 1e-8
        and c["levi_negative_definite"]["passed"]
        and c["levi_negative_definite"]["samples"] >= 100
    )
    resid_ok = (
        c["l_annihilates_t"]["worst"] < 1e-12 and c["pushforward_rho"]["worst"] < 1e-12
    )
    ok = report["all_passed"] and bound_ok and probes_ok and levi_ok and resid_ok and dt < 10.0
    _line(
        7,
        ok,
        f"bound {c['N5_global_bound']['worst']:.4f} <= 1/3, "
        f"levi {c['levi_at_origin_point']['worst']:.1e}, "
        f"residuals {max(c['l_annihilates_t']['worst'], c['pushforward_rho']['worst']):.1e}, "
        f"{dt:.1f}s",
    )
    assert report["all_passed"]
    assert bound_ok and probes_ok and levi_ok and resid_ok
    assert dt < 10.0


def test_criterion_8_maxwell_suite():
    t0 = time.perf_counter()
    grid = hypercube_events([0.3, -1.1, 0.4, 0.2], 0.5, 9)
    plane = CongruenceField.constant([1.0, 0.0])
    kerr = CongruenceField.linear_kerr(LAM, MU)
    worst = 0.0
    for cong in (plane, kerr):
        for profile in ("first_squared", "exp_second"):  # two holomorphic profiles
            rep = maxwell_residual(NullFieldSpec(cong, profile), grid)
            worst = max(worst, rep.maxwell_residual)
    control = maxwell_residual(NullFieldSpec(kerr, "conj_first"), grid[:500]).maxwell_residual

    F, _ = f_and_star_f(assemble_field(NullFieldSpec(kerr, "first_squared"), [0.3, -1.1, 0.4, 0.2]))
    et = energy_of(F)
    scale = float(np.max(np.abs(et.tensor)))
    trace_rel = abs(et.trace) / scale
    dt = time.perf_counter() - t0
    ok = (
        worst < 1e-10
        and control > 1e-3
        and et.rank1_defect < 1e-10
        and trace_rel < 1e-12
        and dt < 60.0
    )
    _line(
        8,
        ok,
        f"dG {worst:.2e}, control {control:.2e}, energy rank1 {et.rank1_defect:.1e}, "
        f"trace {trace_rel:.1e}, {dt:.1f}s",
    )
    assert worst < 1e-10
    assert control > 1e-3
    assert et.rank1_defect < 1e-10
    assert trace_rel < 1e-12
    assert dt < 60.0


def test_criterion_9_conformal_invariance():
    rng = np.random.default_rng(9)
    minkowski = np.array([1.0, -1.0, -1.0, -1.0])
    fields = [
        conformal_invert(CongruenceField.constant([1.0, 0.4 - 0.3j])),
        conformal_invert(CongruenceField.linear_kerr(LAM, MU)),
    ]
    worst = 0.0
    checked = 0
    while checked < 100:
        x = rng.normal(size=4) * 1.5
        if abs(x @ (x * minkowski)) < 0.3:
            continue
        for f in fields:
            worst = max(worst, shear(f, x).sigma_norm_scaled)
        checked += 1
    ok = worst < 1e-8
    _line(9, ok, f"max inverted shear {worst:.2e} over {checked} events x 2 families")
    assert worst < 1e-8
