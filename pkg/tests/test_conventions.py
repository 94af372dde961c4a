"""The conventions document and the code must agree, constant for constant."""

import importlib.resources

import numpy as np

from nullcong.congruence import DISTINGUISHED_EVENT
from nullcong.spinor import (
    _EPS,
    COVEC_DYAD,
    SIGNATURE,
    VEC_DYAD,
    Spinor2,
    TwoForm,
    _levi_civita,
    hodge_star,
    hodge_star_tensor,
    inner,
    lower_index,
    raise_index,
    vector_to_matrix,
)
from nullcong.twistor import CHART_MAP, chart_coords, incident_components, quadric_sigma

RNG = np.random.default_rng(42)
SQRT2 = np.sqrt(2.0)


def _conventions_text() -> str:
    return importlib.resources.files("nullcong").joinpath("conventions.txt").read_text()


def test_document_present_and_versioned():
    text = _conventions_text()
    assert "conventions-v1" in text.splitlines()[0]


def test_documented_lines_still_present():
    text = _conventions_text()
    for line in [
        "signature: (+, -, -, -)",
        "epsilon_01 = +1",
        "matrix form: [[0, 1], [-1, 0]]",
        "x^{AA'} = (1/sqrt2) [[t+z, x+iy], [x-iy, t-z]]",
        "Levi-Civita tensor: epsilon_{txyz} = +1",
        "rho(u, w, z) = 1 + |z|^2 - |u|^2 - |w|^2",
        "x* = (-1/sqrt2, 0, 0, -1/sqrt2)",
    ]:
        assert line in text, f"conventions.txt lost the line {line!r}"


def test_signature_and_inner():
    assert np.array_equal(SIGNATURE, np.diag([1.0, -1.0, -1.0, -1.0]))
    v = RNG.normal(size=4)
    w = RNG.normal(size=4)
    assert inner(v, w) == v[0] * w[0] - v[1] * w[1] - v[2] * w[2] - v[3] * w[3]


def test_epsilon_matrix():
    assert np.array_equal(_EPS, np.array([[0, 1], [-1, 0]], dtype=complex))


def test_raise_lower_component_forms():
    a, b = 1.3 - 0.2j, 0.7 + 2.1j
    up = raise_index(Spinor2(np.array([a, b]), "unprimed-lower"))
    assert np.array_equal(up.components, np.array([b, -a]))
    assert up.index_kind == "unprimed-upper"
    down = lower_index(Spinor2(np.array([a, b]), "primed-upper"))
    assert np.array_equal(down.components, np.array([-b, a]))
    assert down.index_kind == "primed-lower"


def test_self_contraction_vanishes_and_pairing_antisymmetry():
    x0, x1, e0, e1 = (complex(a, b) for a, b in RNG.normal(size=(4, 2)))
    # raised components are (x1, -x0); contraction in scalar arithmetic is exact
    assert x1 * x0 + (-x0) * x1 == 0
    up_down = x1 * e0 + (-x0) * e1
    down_up = e1 * x0 + (-e0) * x1
    assert np.isclose(up_down, -down_up, rtol=0, atol=1e-15)


def test_vector_dyad_matches_documented_matrix():
    t, x, y, z = RNG.normal(size=4)
    m = vector_to_matrix(np.array([t, x, y, z]))
    expected = np.array([[t + z, x + 1j * y], [x - 1j * y, t - z]]) / SQRT2
    assert np.allclose(m, expected, rtol=0, atol=1e-15)
    assert np.array_equal(COVEC_DYAD, VEC_DYAD.conj())


def test_inner_is_twice_determinant():
    v = RNG.normal(size=4)
    m = vector_to_matrix(v)
    assert np.isclose(inner(v, v), 2 * np.linalg.det(m).real, rtol=0, atol=1e-13)


def test_levi_civita_orientation():
    eps = _levi_civita()
    assert eps[0, 1, 2, 3] == 1.0
    assert eps[1, 0, 2, 3] == -1.0


def test_tensor_star_equals_spinor_star():
    comps = RNG.normal(size=(40, 6)) + 1j * RNG.normal(size=(40, 6))
    F = TwoForm(comps)
    assert np.allclose(
        hodge_star(F).components, hodge_star_tensor(F).components, rtol=0, atol=1e-13
    )


def test_chart_map_rows_match_document():
    om0, om1, pi0, pi1 = RNG.normal(size=4) + 1j * RNG.normal(size=4)
    u, w, z, v = CHART_MAP @ np.array([om0, om1, pi0, pi1])
    assert np.isclose(u, (1j * om0 - 1j * pi0) / SQRT2)
    assert np.isclose(w, (om1 - pi1) / SQRT2)
    assert np.isclose(z, (om1 + pi1) / SQRT2)
    assert np.isclose(v, (om0 + pi0) / SQRT2)


def test_sigma_equals_chart_norm_combination():
    zc = RNG.normal(size=(200, 4)) + 1j * RNG.normal(size=(200, 4))
    u, w, z, v = (CHART_MAP @ zc.T)
    combo = abs(z) ** 2 + abs(v) ** 2 - abs(u) ** 2 - abs(w) ** 2
    assert np.allclose(quadric_sigma(zc), combo, rtol=0, atol=1e-12)


def test_distinguished_event_maps_to_unit_chart_point():
    assert np.allclose(DISTINGUISHED_EVENT, [-1 / SQRT2, 0, 0, -1 / SQRT2])
    z = incident_components(DISTINGUISHED_EVENT, np.array([1.0, 0.0], dtype=complex))
    p = chart_coords(z)
    assert np.isclose(p.u, 1.0, rtol=0, atol=1e-15)
    assert abs(p.w) < 1e-15 and abs(p.z) < 1e-15
    assert np.isclose(p.rho(), 0.0, rtol=0, atol=1e-15)
