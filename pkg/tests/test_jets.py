"""First- and second-order forward jets against finite differences."""

import numpy as np
import pytest

from nullcong.jets import (
    Jet,
    Jet2,
    j2abs2,
    j2conj,
    j2exp,
    j2log,
    jabs2,
    jconj,
    jet2_variables,
    jet_constant,
    jet_variables,
    jexp,
    jimag,
    jlog,
    jreal,
    jsqrt,
)

RNG = np.random.default_rng(7)


def _sample_fn(vars4):
    t, x, y, z = vars4
    return jexp(0.3 * t - x * z) * (y + 2.0) + jsqrt(jabs2(x + 1j * y) + 1.5) / (
        1.0 + jabs2(z)
    )


def _sample_fn2(vars4):
    a, b, c, d = vars4
    return j2exp(0.2 * a + b * c) - j2log(2.5 + j2abs2(d)) * j2conj(a) + a * a / (b + 3.0)


def _plain(fn, coords):
    jets = [Jet(v) for v in coords]
    # evaluate with zero gradients: value field only
    return fn(jets).v


def test_jet_gradient_matches_central_differences():
    coords = RNG.normal(size=4)
    jet = _sample_fn(jet_variables(coords))
    h = 1e-6
    for mu in range(4):
        shift = np.zeros(4)
        shift[mu] = h
        fd = (_plain(_sample_fn, coords + shift) - _plain(_sample_fn, coords - shift)) / (
            2 * h
        )
        assert abs(jet.g[mu] - fd) < 1e-8 * max(1.0, abs(fd))


def test_jet_reflected_operators():
    t = jet_variables(RNG.normal(size=4))[0]
    assert (2.0 + t).v == (t + 2.0).v
    assert np.allclose((2.0 - t).g, [-g for g in t.g])
    assert np.allclose((3.0 * t).g, (t * 3.0).g)
    q = 2.0 / t
    assert np.isclose(q.v, 2.0 / t.v)
    assert np.isclose(q.g[0], -2.0 / t.v**2)


def test_jet_conj_real_imag_abs2():
    coords = RNG.normal(size=4)
    t, x, y, z = jet_variables(coords)
    w = x + 1j * y
    assert jconj(w).v == np.conj(w.v)
    assert jreal(w).v == w.v.real and jimag(w).v == w.v.imag
    assert np.isclose(jabs2(w).v, abs(w.v) ** 2)
    # |w|^2 = x^2 + y^2 so d/dx is 2x
    assert np.isclose(jabs2(w).g[1], 2 * coords[1])


def test_jet_array_payload_broadcasts():
    xs = RNG.normal(size=(10, 4))
    t, x, y, z = jet_variables([xs[:, 0], xs[:, 1], xs[:, 2], xs[:, 3]])
    f = jexp(t) * x
    assert f.v.shape == (10,)
    assert np.allclose(f.g[0], np.exp(xs[:, 0]) * xs[:, 1])
    assert np.allclose(f.g[1], np.exp(xs[:, 0]))


def test_jet_log_principal_branch():
    t = Jet(-2.0 + 1e-30j, (1.0, 0, 0, 0))
    assert np.isclose(jlog(t).v.imag, np.pi)


def test_jet_constant_has_zero_gradient():
    c = jet_constant(3.5 - 1j)
    assert c.v == 3.5 - 1j and all(g == 0 for g in c.g)


def _plain2(fn, values):
    jets = [Jet2(complex(v)) for v in values]
    return fn(jets).v


def test_jet2_gradient_and_hessian_match_differences():
    values = RNG.normal(size=4)
    out = _sample_fn2(jet2_variables(values))
    h = 1e-5
    eye = np.eye(4)
    for m in range(4):
        fd = (
            _plain2(_sample_fn2, values + h * eye[m])
            - _plain2(_sample_fn2, values - h * eye[m])
        ) / (2 * h)
        assert abs(out.g[m] - fd) < 1e-7 * max(1.0, abs(fd))
    for m in range(4):
        for n in range(4):
            fd2 = (
                _plain2(_sample_fn2, values + h * (eye[m] + eye[n]))
                - _plain2(_sample_fn2, values + h * (eye[m] - eye[n]))
                - _plain2(_sample_fn2, values - h * (eye[m] - eye[n]))
                + _plain2(_sample_fn2, values - h * (eye[m] + eye[n]))
            ) / (4 * h * h)
            assert abs(out.h[m, n] - fd2) < 1e-5 * max(1.0, abs(fd2))


def test_jet2_hessian_symmetry():
    out = _sample_fn2(jet2_variables(RNG.normal(size=4)))
    assert np.allclose(out.h, out.h.T, rtol=0, atol=1e-14)


def test_jet2_reflected_operators():
    a = jet2_variables(RNG.normal(size=4))[0]
    assert (1.5 - a).v == 1.5 - a.v
    assert np.allclose((1.5 - a).g, -a.g)
    q = 1.0 / a
    assert np.isclose(q.g[0], -1.0 / a.v**2)
    assert np.allclose((2.0 * a).h, (a * 2.0).h)


def test_jet2_second_derivative_of_square():
    a = jet2_variables([1.7, 0.0, 0.0, 0.0])[0]
    sq = a * a
    assert np.isclose(sq.h[0, 0], 2.0)
    assert np.allclose(sq.h[1:, 1:], 0.0)


def test_division_by_zero_jet_raises():
    t = jet_variables([0.0, 0, 0, 0])[0]
    with pytest.raises(ZeroDivisionError):
        1.0 / t
