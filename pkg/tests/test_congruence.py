"""Congruence families: evaluation, shear/twist/geodesy, CR forms, inversion."""

import numpy as np
import pytest

from nullcong.congruence import (
    DISTINGUISHED_EVENT,
    CongruenceField,
    SolveError,
    conformal_invert,
    cr_forms,
    grid_events,
    probe_domain_radius,
    shear,
    shear_many,
    solve_cr_graph,
    sweep_grid,
    twist,
)
from nullcong.spinor import Event, vector_to_matrix
from nullcong.twistor import chart_coords, incident_components

RNG = np.random.default_rng(17)

LAM = np.array([0.3 + 0.1j, -0.2 + 0.7j])
MU = np.array([0.5 - 0.2j, 1.1 + 0.4j])


def _kerr_oracle(x):
    """Independent closed form: o_{A'} = eps . (i lam_A x^{AB'} + mu^{B'})."""
    m = vector_to_matrix(np.asarray(x, dtype=float))
    V = 1j * (LAM @ m) + MU
    return np.array([V[1], -V[0]])


def _kerr():
    return CongruenceField.linear_kerr(LAM, MU)


# -- construction and evaluation ---------------------------------------------


def test_unknown_family_and_strategy_rejected():
    with pytest.raises(ValueError, match="family"):
        CongruenceField("spiral", {})
    with pytest.raises(ValueError, match="strategy"):
        CongruenceField("constant", {"components": [1, 0]}, strategy="symbolic")
    with pytest.raises(ValueError, match="fd_step"):
        CongruenceField("constant", {"components": [1, 0]}, fd_step=0.0)


def test_constant_family_returns_stored_spinor():
    c = CongruenceField.constant([0.3 - 1j, 0.8])
    for x in RNG.normal(size=(5, 4)):
        assert np.array_equal(c.eval(x).components, [0.3 - 1j, 0.8])


def test_kerr_matches_independent_closed_form():
    f = _kerr()
    xs = RNG.normal(size=(50, 4))
    vals = f.evaluate_many(xs)
    expected = np.array([_kerr_oracle(x) for x in xs])
    assert np.max(np.abs(vals - expected)) < 1e-14 * np.max(np.abs(expected))


def test_kerr_with_zero_lambda_is_constant():
    f = CongruenceField.linear_kerr([0, 0], MU)
    vals = f.evaluate_many(RNG.normal(size=(10, 4)))
    assert np.max(np.abs(vals - np.array([MU[1], -MU[0]]))) == 0.0


def test_kerr_at_origin_is_eps_mu():
    val = _kerr().eval(np.zeros(4)).components
    assert np.array_equal(val, [MU[1], -MU[0]])


def test_user_family_matches_wrapped_closed_form():
    def fn(t, x, y, z):
        mu = 0 * t  # promotes to jet/array shape
        return MU[1] + mu, -MU[0] + mu

    f = CongruenceField.user(fn)
    assert np.allclose(f.eval(RNG.normal(size=4)).components, [MU[1], -MU[0]])


# -- shear, geodesy, twist ----------------------------------------------------


def test_constant_family_shear_twist_zero_exactly():
    c = CongruenceField.constant([1.0, 0.5j])
    rep = shear(c, RNG.normal(size=4))
    assert np.array_equal(rep.sigma.components, [0, 0])
    assert rep.sigma_norm_scaled == 0.0
    assert rep.twist_norm == 0.0
    assert rep.geodesy_kappa == 0
    assert rep.geodesy_residual == 0.0


def test_kerr_is_shear_free_and_twisting():
    rep = shear(_kerr(), np.array([0.3, -1.1, 0.4, 0.2]))
    assert rep.sigma_norm_scaled < 1e-12
    assert rep.twist_norm > 1e-3
    assert rep.geodesy_residual < 1e-12
    assert rep.twist_signed != 0.0


def test_geodesy_kappa_satisfies_defining_relation():
    # o^B o^{B'} d_{BB'} o_{A'} = kappa o_{A'}: rebuild both sides from FD
    f = _kerr()
    x = np.array([0.3, -1.1, 0.4, 0.2])
    rep = shear(f, x)
    h = 1e-6
    grad = np.empty((4, 2), dtype=complex)
    for mu in range(4):
        dx = np.zeros(4)
        dx[mu] = h
        grad[mu] = (f.eval(x + dx).components - f.eval(x - dx).components) / (2 * h)
    o = f.eval(x).components
    up = np.array([o[1], -o[0]])          # o^{A'}
    par = np.conj(up)                      # o^A  (flagpole convention)
    T = np.conj(vector_to_matrix(np.eye(4)))  # conj(S_mu) per coordinate
    dmat = np.einsum("mc,mbp->bpc", grad, T)  # d_{BB'} o_{C'}
    lhs = np.einsum("b,p,bpc->c", par, up, dmat)
    assert np.max(np.abs(lhs - rep.geodesy_kappa * o)) < 1e-6


def test_shear_scaling_law_mu_cubed():
    f = _kerr()
    x = np.array([0.9, 0.1, -0.7, 0.3])

    def doubled(t, xx, y, z):
        # reuse the library closed form through a user field at 2x the value
        o0, o1 = f._alg(t, xx, y, z)
        return 2.0 * o0, 2.0 * o1

    g = CongruenceField.user(doubled)
    s1 = shear(f, x).sigma.components
    s2 = shear(g, x).sigma.components
    scale = np.max(np.abs(s2)) or 1.0
    assert np.max(np.abs(s2 - 8.0 * s1)) < 1e-12 * max(scale, 1.0)
    # the scaled norm is gauge-invariant
    assert np.isclose(
        shear(g, x).sigma_norm_scaled, shear(f, x).sigma_norm_scaled, rtol=0, atol=1e-12
    )


def test_ad_and_fd_agree_on_kerr():
    x = np.array([0.3, -1.1, 0.4, 0.2])
    ad = CongruenceField("linear_kerr", {"lam": LAM, "mu": MU}, strategy="ad")
    fd = CongruenceField("linear_kerr", {"lam": LAM, "mu": MU}, strategy="fd", fd_step=1e-4)
    oa, ja = ad.jets_many(x[None, :])
    of, jf = fd.jets_many(x[None, :])
    assert np.max(np.abs(ja - jf)) < 1e-7
    # halving the step quarters the error against AD on a curved family
    inv = conformal_invert(ad)
    inv_h = conformal_invert(
        CongruenceField("linear_kerr", {"lam": LAM, "mu": MU}, strategy="fd", fd_step=1e-3)
    )
    inv_h2 = conformal_invert(
        CongruenceField("linear_kerr", {"lam": LAM, "mu": MU}, strategy="fd", fd_step=5e-4)
    )
    _, j_exact = inv.jets_many(x[None, :])
    _, j_h = inv_h.jets_many(x[None, :])
    _, j_h2 = inv_h2.jets_many(x[None, :])
    e_h = np.max(np.abs(j_h - j_exact))
    e_h2 = np.max(np.abs(j_h2 - j_exact))
    assert 3.5 < e_h / e_h2 < 4.5


# -- CR one-forms --------------------------------------------------------------


def test_cr_forms_annihilate_flagpole():
    rep = cr_forms(_kerr(), np.array([0.3, -1.1, 0.4, 0.2]))
    assert rep.gamma_contraction < 1e-13
    assert rep.lambda_contraction < 1e-13


def test_cr_forms_lie_dragged_into_span():
    rep = cr_forms(_kerr(), np.array([0.3, -1.1, 0.4, 0.2]))
    assert rep.lie_drag_residual < 1e-9


def test_cr_forms_constant_family_residual_zero():
    rep = cr_forms(CongruenceField.constant([1.0, 0.3 + 0.2j]), RNG.normal(size=4))
    assert rep.lie_drag_residual == 0.0


# -- the graph-solved congruence -----------------------------------------------


def test_distinguished_event_solves_to_zero_ratio():
    res = solve_cr_graph(DISTINGUISHED_EVENT, full_output=True)
    assert res.zeta == 0.0
    assert res.residual < 1e-12
    assert abs(res.u - 1.0) < 1e-14 and abs(res.w) < 1e-14 and abs(res.z) < 1e-14
    assert np.array_equal(res.spinor.components, [1.0, 0.0])
    f = CongruenceField.cr_graph()
    assert np.array_equal(f.eval(DISTINGUISHED_EVENT).components, [1.0, 0.0])


def test_solved_spinor_reincides():
    f = CongruenceField.cr_graph()
    from nullcong.cr_example import g_eval

    for _ in range(20):
        x = DISTINGUISHED_EVENT + 0.08 * RNG.normal(size=4)
        pi = solve_cr_graph(x).components
        p = chart_coords(incident_components(x, pi))
        assert abs(p.z - p.w * g_eval(p.u)) < 1e-10
        assert abs(p.rho()) < 1e-10


def test_graph_congruence_rotates_near_base_point():
    f = CongruenceField.cr_graph()
    rep = shear(f, DISTINGUISHED_EVENT)
    assert np.isclose(rep.twist_norm, np.sqrt(2.0), rtol=0, atol=1e-8)
    assert np.isclose(rep.twist_signed, -np.sqrt(2.0), rtol=0, atol=1e-8)
    assert rep.sigma_norm_scaled < 1e-7


def test_graph_shear_fd_quartering():
    x = DISTINGUISHED_EVENT + np.array([0.02, -0.01, 0.03, 0.015])
    vals = {}
    for h in (2e-4, 1e-4):
        f = CongruenceField("cr_graph", {"tol": 1e-13, "path_step": 0.02}, fd_step=h)
        vals[h] = shear(f, x).sigma_norm_scaled
    ratio = vals[2e-4] / vals[1e-4]
    assert 3.5 < ratio < 4.5


def test_twist_levi_sign_agreement():
    """Rotation of the solved congruence has one sign exactly where the graph's
    Levi matrix is definite with the matching sign, across sampled events."""
    from nullcong.cr_example import GraphPoint, levi_matrix

    f = CongruenceField.cr_graph()
    xs = DISTINGUISHED_EVENT + 0.05 * RNG.normal(size=(100, 4))
    rep = shear_many(f, xs)
    pis = [solve_cr_graph(x).components for x in xs]
    for x, pi, signed in zip(xs, pis, rep["twist_signed"]):
        p = chart_coords(incident_components(x, pi))
        eigs = np.linalg.eigvalsh(levi_matrix(GraphPoint(p.u, p.w)))
        assert signed < 0
        assert np.all(eigs < 0)


def test_solver_error_statuses_have_messages():
    with pytest.raises(SolveError, match="converge"):
        solve_cr_graph(DISTINGUISHED_EVENT + 0.05, tol=1e-30)


def test_probe_domain_radius_requires_graph_family():
    with pytest.raises(ValueError, match="cr_graph"):
        probe_domain_radius(_kerr())


def test_sweep_grid_layout_and_values():
    pts = grid_events([0.5, 1.0, 2.0, 3.0], 0.2, 3)
    assert pts.shape == (27, 4)
    assert np.all(pts[:, 0] == 0.5)
    assert np.array_equal(pts[0], [0.5, 0.8, 1.8, 2.8])
    assert np.array_equal(pts[-1], [0.5, 1.2, 2.2, 3.2])
    events, rep = sweep_grid(_kerr(), [0.5, 1.0, 2.0, 3.0], 0.2, 3)
    assert events.shape == (27, 4)
    assert rep["sigma_norm_scaled"].max() < 1e-12


# -- conformal inversion --------------------------------------------------------


def test_inverted_constant_is_shear_free():
    c = CongruenceField.constant([1.0, 0.4 - 0.3j])
    inv = conformal_invert(c)
    for _ in range(20):
        x = RNG.normal(size=4)
        if abs(x @ (x * np.array([1, -1, -1, -1]))) < 0.3:
            continue
        assert shear(inv, x).sigma_norm_scaled < 1e-8


def test_double_inversion_returns_projective_field():
    f = _kerr()
    twice = conformal_invert(conformal_invert(f))
    for _ in range(10):
        x = RNG.normal(size=4) * 1.5
        if abs(x @ (x * np.array([1, -1, -1, -1]))) < 0.3:
            continue
        a = f.evaluate_many(x[None, :])[0]
        b = twice.evaluate_many(x[None, :])[0]
        # involution up to the projective factor -1
        assert np.max(np.abs(a + b)) < 1e-10 * np.max(np.abs(a))


def test_inversion_preserves_twist_sign_and_nonvanishing():
    f = _kerr()
    inv = conformal_invert(f)
    hits = 0
    for _ in range(30):
        x = RNG.normal(size=4) * 1.2
        xx = x @ (x * np.array([1, -1, -1, -1]))
        if abs(xx) < 0.5:
            continue
        y = 2.0 * x / xx  # the inversion image: compare the two fields there
        t_direct = shear(f, y).twist_signed
        t_pulled = shear(inv, x).twist_signed
        if abs(t_direct) < 1e-6:
            continue
        assert np.sign(t_direct) == np.sign(t_pulled)
        assert abs(t_pulled) > 1e-6
        hits += 1
    assert hits >= 10


def test_inversion_rejects_null_cone():
    inv = conformal_invert(_kerr())
    x_on_cone = np.array([1.0, 1.0, 0.0, 0.0])
    with pytest.raises(ValueError, match="cone"):
        inv.evaluate_many(x_on_cone[None, :])


def test_inversion_of_solver_family_rejected():
    with pytest.raises(ValueError, match="closed form"):
        conformal_invert(CongruenceField.cr_graph())
