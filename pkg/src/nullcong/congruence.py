"""Null congruence families and their differential invariants.

A congruence field assigns to each event a primed-lower spinor o_{A'}; its
flagpole vector k^{AA'} = conj(o)^A o^{A'} spans a null direction field.
This module evaluates such fields, differentiates them (forward-mode jets
for closed forms, central finite differences for the solver-defined family),
and reports:

  * shear:   sigma_B = o^{A'} o^{B'} d_{BB'} o_{A'}, norm scaled by |o|^3;
  * geodesy: kappa and the defect of o^B o^{B'} d_{BB'} o_{A'} = kappa o_{A'};
  * twist:   the largest component of k ^ dk, scaled by |o|^4, plus a signed
    scalar from its metric dual;
  * CR data: the real conormal gamma = o_A o_{A'} dx^{AA'}, the complex
    conormal lambda = iota_A o_{A'} dx^{AA'}, their contractions with k, and
    the residual of the Lie-dragged forms outside span{gamma, lambda}.

Built-in families:
  constant      the same spinor everywhere (shear-free, twist-free).
  linear_kerr   o_{A'} = eps_{A'B'} (i lam_A x^{AB'} + mu^{B'}), the closed
                form solving lam_A omega^A + mu^{A'} pi_{A'} = 0 against
                incidence; shear-free with generically nonzero twist.
  cr_graph      o = (1, zeta(x)) with zeta the Newton root of the incidence
                equation of the graph-type CR hypersurface built on the
                slit-plane amplitude g; differentiated by central FD.
  user          any callable (t, x, y, z) -> (o0, o1).

A conformal inversion wrapper maps a field through x -> 2x / (x.x) composed
with the antilinear twistor involution; it preserves the shear-free class
and squares to -identity on values (the same projective field).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _core
from .jets import Jet, jconj
from .spinor import SQRT2, Event, Spinor2, vector_to_matrix
from .twistor import CHART_MAP

__all__ = [
    "SolveError",
    "CongruenceField",
    "ShearReport",
    "CRFormsReport",
    "CRSolveResult",
    "shear",
    "shear_many",
    "twist",
    "cr_forms",
    "solve_cr_graph",
    "conformal_invert",
    "sweep_grid",
    "grid_events",
    "probe_domain_radius",
    "DISTINGUISHED_EVENT",
]


class SolveError(ValueError):
    """Raised when the graph-congruence Newton solve cannot produce a value."""


# event whose solved graph twistor sits at the distinguished chart point
DISTINGUISHED_EVENT = np.array([-1.0 / SQRT2, 0.0, 0.0, -1.0 / SQRT2])

_EPS2 = np.array([[0.0, 1.0], [-1.0, 0.0]], dtype=complex)
_HALF = 1.0 / SQRT2


def _conj(v):
    return jconj(v) if isinstance(v, Jet) else np.conj(v)


def _matrix_entries(t, x, y, z):
    """Entries of x^{AA'} in any algebra supporting + * with complex scalars."""
    m00 = (t + z) * _HALF
    m01 = (x + 1j * y) * _HALF
    m10 = (x - 1j * y) * _HALF
    m11 = (t - z) * _HALF
    return m00, m01, m10, m11


def _kerr_algebra(lam, mu):
    lam = np.asarray(lam, dtype=complex)
    mu = np.asarray(mu, dtype=complex)

    def alg(t, x, y, z):
        m00, m01, m10, m11 = _matrix_entries(t, x, y, z)
        v0 = 1j * (lam[0] * m00 + lam[1] * m10) + mu[0]
        v1 = 1j * (lam[0] * m01 + lam[1] * m11) + mu[1]
        # o_{A'} = eps_{A'B'} V^{B'}
        return v1, -v0

    return alg


def _constant_algebra(components):
    c = np.asarray(components, dtype=complex)

    def alg(t, x, y, z):
        one = t * 0.0 + 1.0
        return c[0] * one, c[1] * one

    return alg


def _inversion_algebra(inner_alg, cone_tol):
    def alg(t, x, y, z):
        s = t * t - x * x - y * y - z * z
        sval = s.v if isinstance(s, Jet) else s
        if np.any(np.abs(np.asarray(sval)) < cone_tol):
            raise ValueError(
                "conformal inversion undefined on the null cone of the origin"
            )
        tt, xx, yy, zz = 2 * t / s, 2 * x / s, 2 * y / s, 2 * z / s
        p0, p1 = inner_alg(tt, xx, yy, zz)
        m00, m01, m10, m11 = _matrix_entries(tt, xx, yy, zz)
        w0 = 1j * (m00 * p0 + m01 * p1)
        w1 = 1j * (m10 * p0 + m11 * p1)
        return _conj(w1), -_conj(w0)

    return alg


# ---------------------------------------------------------------------------
# the graph-family Newton solve


@dataclass(frozen=True)
class CRSolveResult:
    """One Newton solve of the graph incidence equation at an event."""

    zeta: complex
    spinor: Spinor2          # (1, zeta), primed-lower
    residual: float          # |h(zeta)| at acceptance
    iterations: int
    u: complex               # normalised chart coordinates of the solution
    w: complex
    z: complex


def _chart_coefficients(xs):
    """Affine coefficients of the chart image of Z(zeta) = (i x pi, pi).

    With pi = (1, zeta) the raw chart coordinates are c0 + c1 * zeta; returns
    (c0, c1), each (N, 4) complex.
    """
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    m = vector_to_matrix(xs)  # (N, 2, 2)
    base = np.stack(
        [
            1j * m[:, 0, 0],
            1j * m[:, 1, 0],
            np.ones(len(xs), dtype=complex),
            np.zeros(len(xs), dtype=complex),
        ],
        axis=1,
    )
    slope = np.stack(
        [
            1j * m[:, 0, 1],
            1j * m[:, 1, 1],
            np.zeros(len(xs), dtype=complex),
            np.ones(len(xs), dtype=complex),
        ],
        axis=1,
    )
    return base @ CHART_MAP.T, slope @ CHART_MAP.T


_STATUS_MESSAGES = {
    _core.NO_CONVERGENCE: "newton did not converge",
    _core.SLIT: "slit crossed",
    _core.CHART_DEGENERATE: "chart undefined here",
    _core.DIVERGED: "newton did not converge",
}


def _raise_solve(status, x):
    msg = _STATUS_MESSAGES.get(int(status), "newton did not converge")
    raise SolveError(f"{msg} (event {np.asarray(x).tolist()})")


def _continuation_path(x, step):
    """Straight segment from the distinguished event to x, step <= `step`."""
    x = np.asarray(x, dtype=float)
    delta = x - DISTINGUISHED_EVENT
    dist = float(np.linalg.norm(delta))
    n = max(2, int(np.ceil(dist / step)) + 1)
    lam = np.linspace(0.0, 1.0, n)[1:]
    return DISTINGUISHED_EVENT + lam[:, None] * delta


def solve_cr_graph(
    x,
    seed: complex | None = None,
    tol: float = 1e-12,
    max_iterations: int = 50,
    path_step: float = 0.02,
    full_output: bool = False,
):
    """Solve h(zeta) = z(zeta) - w(zeta) g(u(zeta)) = 0 at the event x.

    (u, w, z) are the chart coordinates of the twistor incident at x with
    direction spinor pi = (1, zeta).  Returns the solved spinor pi(zeta*),
    or a CRSolveResult when full_output is set.  Without a seed the root is
    reached by Newton continuation along the straight segment from the
    distinguished event (where zeta = 0); with a seed, by a single Newton
    run.  Raises SolveError with reason 'newton did not converge',
    'slit crossed' or 'chart undefined here'.
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (4,):
        raise ValueError("solve_cr_graph expects a single event (4 coordinates)")
    if seed is None:
        path = _continuation_path(x, path_step)
        c0, c1 = _chart_coefficients(path)
        zetas, absh, iters, status = _core.cr_newton_chain(
            c0, c1, 0.0, tol, max_iterations
        )
        bad = np.nonzero(status != _core.OK)[0]
        if bad.size:
            _raise_solve(status[bad[0]], path[bad[0]])
        zeta, resid, its = complex(zetas[-1]), float(absh[-1]), int(iters[-1])
    else:
        c0, c1 = _chart_coefficients(x[None, :])
        zetas, absh, iters, status = _core.cr_newton_seeded(
            c0, c1, np.array([seed], dtype=complex), tol, max_iterations
        )
        if status[0] != _core.OK:
            _raise_solve(status[0], x)
        zeta, resid, its = complex(zetas[0]), float(absh[0]), int(iters[0])
    spinor = Spinor2(np.array([1.0, zeta]), "primed-lower")
    if not full_output:
        return spinor
    c0, c1 = _chart_coefficients(x[None, :])
    raw = c0[0] + c1[0] * zeta
    u, w, z = (raw[:3] / raw[3]).tolist()
    return CRSolveResult(
        zeta=zeta, spinor=spinor, residual=resid, iterations=its, u=u, w=w, z=z
    )


def _solve_many(xs, tol=1e-12, max_iterations=50, path_step=0.02, seeds=None):
    """zeta at each row of xs: seeded single solves, or continuation each."""
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    c0, c1 = _chart_coefficients(xs)
    if seeds is not None:
        zetas, _, _, status = _core.cr_newton_seeded(
            c0, c1, np.asarray(seeds, dtype=complex), tol, max_iterations
        )
        bad = np.nonzero(status != _core.OK)[0]
        if bad.size:
            _raise_solve(status[bad[0]], xs[bad[0]])
        return zetas
    out = np.empty(len(xs), dtype=complex)
    for k, x in enumerate(xs):
        out[k] = complex(
            solve_cr_graph(
                x, tol=tol, max_iterations=max_iterations, path_step=path_step
            ).components[1]
        )
    return out


# ---------------------------------------------------------------------------
# the field type


_KNOWN_FAMILIES = ("constant", "linear_kerr", "cr_graph", "user", "conformal_inversion")


class CongruenceField:
    """A spinor field o_{A'}(x) with a differentiation strategy.

    strategy 'ad' pushes forward-mode jets through the field's closed form;
    'fd' uses central differences with step fd_step * max(1, |x|_inf).  The
    cr_graph family has no closed form and always differentiates by finite
    differences, with the shifted solves seeded from the centre solution.
    """

    def __init__(self, family, params=None, strategy="ad", fd_step=1e-5):
        if family not in _KNOWN_FAMILIES:
            raise ValueError(f"unknown congruence family {family!r}")
        if strategy not in ("ad", "fd"):
            raise ValueError(f"unknown strategy {strategy!r}")
        self.family = family
        self.params = dict(params or {})
        self.fd_step = float(fd_step)
        if self.fd_step <= 0 or not np.isfinite(self.fd_step):
            raise ValueError("fd_step must be positive and finite")
        if family == "cr_graph":
            strategy = "fd"
        self.strategy = strategy
        self._alg = self._build_algebra()

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, components) -> "CongruenceField":
        return cls("constant", {"components": np.asarray(components, dtype=complex)})

    @classmethod
    def linear_kerr(cls, lam, mu) -> "CongruenceField":
        return cls(
            "linear_kerr",
            {
                "lam": np.asarray(lam, dtype=complex),
                "mu": np.asarray(mu, dtype=complex),
            },
        )

    @classmethod
    def cr_graph(cls, tol: float = 1e-12, path_step: float = 0.02) -> "CongruenceField":
        return cls("cr_graph", {"tol": tol, "path_step": path_step})

    @classmethod
    def user(cls, fn: Callable, strategy: str = "ad") -> "CongruenceField":
        return cls("user", {"fn": fn}, strategy=strategy)

    # -- evaluation ---------------------------------------------------------

    def _build_algebra(self):
        if self.family == "constant":
            return _constant_algebra(self.params["components"])
        if self.family == "linear_kerr":
            return _kerr_algebra(self.params["lam"], self.params["mu"])
        if self.family == "user":
            return self.params["fn"]
        if self.family == "conformal_inversion":
            inner = self.params["inner"]
            if inner._alg is None:
                raise ValueError(
                    "conformal inversion needs an inner family with a closed form"
                )
            return _inversion_algebra(inner._alg, self.params["cone_tol"])
        return None  # cr_graph: solver-driven

    def evaluate_many(self, xs) -> np.ndarray:
        """o_{A'} at each row of xs; returns (N, 2) complex."""
        xs = np.atleast_2d(np.asarray(xs, dtype=float))
        if self.family == "cr_graph":
            zetas = _solve_many(
                xs,
                tol=self.params.get("tol", 1e-12),
                path_step=self.params.get("path_step", 0.02),
            )
            return np.stack([np.ones_like(zetas), zetas], axis=1)
        o0, o1 = self._alg(xs[:, 0], xs[:, 1], xs[:, 2], xs[:, 3])
        out = np.empty((len(xs), 2), dtype=complex)
        out[:, 0] = o0
        out[:, 1] = o1
        return out

    def eval(self, x) -> Spinor2:
        """o_{A'}(x) as a primed-lower Spinor2."""
        x = x.coords if isinstance(x, Event) else np.asarray(x, dtype=float)
        return Spinor2(self.evaluate_many(x[None, :])[0], "primed-lower")

    evaluate = eval

    def jets_many(self, xs, _center_seeds=None):
        """(o, jac) with o (N, 2) and jac (N, 4, 2) = d_mu o_{A'}."""
        xs = np.atleast_2d(np.asarray(xs, dtype=float))
        if self.family == "cr_graph":
            return self._cr_graph_jets(xs, _center_seeds)
        if self.strategy == "ad":
            return self._ad_jets(xs)
        return self._fd_jets(xs)

    def _ad_jets(self, xs):
        n = len(xs)
        t = Jet(xs[:, 0] + 0j, (1.0, 0.0, 0.0, 0.0))
        x = Jet(xs[:, 1] + 0j, (0.0, 1.0, 0.0, 0.0))
        y = Jet(xs[:, 2] + 0j, (0.0, 0.0, 1.0, 0.0))
        z = Jet(xs[:, 3] + 0j, (0.0, 0.0, 0.0, 1.0))
        o0, o1 = self._alg(t, x, y, z)
        o = np.empty((n, 2), dtype=complex)
        jac = np.empty((n, 4, 2), dtype=complex)
        for a, comp in enumerate((o0, o1)):
            o[:, a] = np.broadcast_to(comp.v, (n,))
            for mu in range(4):
                jac[:, mu, a] = np.broadcast_to(comp.g[mu], (n,))
        if not (np.all(np.isfinite(o.view(float))) and np.all(np.isfinite(jac.view(float)))):
            raise ValueError("non-finite derivatives")
        return o, jac

    def _fd_steps(self, xs):
        scale = np.maximum(1.0, np.abs(xs).max(axis=1))
        h = self.fd_step * scale
        if np.any(h <= 0) or np.any(~np.isfinite(h)):
            raise ValueError("finite-difference step underflow")
        return h

    def _fd_jets(self, xs):
        o = self.evaluate_many(xs)
        h = self._fd_steps(xs)
        jac = np.empty((len(xs), 4, 2), dtype=complex)
        for mu in range(4):
            xp = xs.copy()
            xm = xs.copy()
            xp[:, mu] += h
            xm[:, mu] -= h
            jac[:, mu, :] = (self.evaluate_many(xp) - self.evaluate_many(xm)) / (
                2.0 * h[:, None]
            )
        if not np.all(np.isfinite(jac.view(float))):
            raise ValueError("non-finite derivatives")
        return o, jac

    def _cr_graph_jets(self, xs, center_seeds=None):
        tol = self.params.get("tol", 1e-12)
        path_step = self.params.get("path_step", 0.02)
        if center_seeds is None:
            centre = _solve_many(xs, tol=tol, path_step=path_step)
        else:
            centre = _solve_many(xs, tol=tol, seeds=center_seeds)
        h = self._fd_steps(xs)
        jac = np.zeros((len(xs), 4, 2), dtype=complex)
        for mu in range(4):
            xp = xs.copy()
            xm = xs.copy()
            xp[:, mu] += h
            xm[:, mu] -= h
            zp = _solve_many(xp, tol=tol, seeds=centre)
            zm = _solve_many(xm, tol=tol, seeds=centre)
            jac[:, mu, 1] = (zp - zm) / (2.0 * h)
        o = np.stack([np.ones_like(centre), centre], axis=1)
        return o, jac


def conformal_invert(field: CongruenceField, cone_tol: float = 1e-8) -> CongruenceField:
    """The image congruence under x -> 2x / (x.x).

    o'(x) = eps . conj(i x~^{AA'} o_{A'}(x~)) with x~ = 2x / (x.x).  Shear-free
    inputs give shear-free outputs; applying the inversion twice returns
    -1 times the original values (the same projective field).  Evaluation
    rejects events with |x.x| < cone_tol.
    """
    return CongruenceField(
        "conformal_inversion",
        {"inner": field, "cone_tol": float(cone_tol)},
        strategy=field.strategy if field.family != "cr_graph" else "fd",
        fd_step=field.fd_step,
    )


# ---------------------------------------------------------------------------
# invariants


@dataclass(frozen=True)
class ShearReport:
    """Pointwise differential invariants of a congruence."""

    sigma: Spinor2               # raw shear spinor sigma_B (unprimed-lower)
    sigma_norm_scaled: float     # |sigma| / |o|^3
    geodesy_kappa: complex       # multiplier in o^B o^{B'} d_{BB'} o = kappa o
    geodesy_residual: float      # |o^B o^{B'} d_{BB'} o_{A'} - kappa o_{A'}|
    twist_norm: float            # max |(k ^ dk)_{abc}| / |o|^4
    o: Spinor2                   # the field value the report was taken at
    twist_signed: float          # dual of k ^ dk against k, / |o|^6


def _raw_invariants(o, jac):
    sigma, kappa, resid, twist_comps = _core.shear_twist_raw(o, jac)
    onorm = np.linalg.norm(o, axis=1)
    if np.any(onorm < 1e-12):
        raise ValueError("congruence spinor vanishes here")
    shear_scaled = np.linalg.norm(sigma, axis=1) / onorm**3
    twist_scaled = np.abs(twist_comps).max(axis=1) / onorm**4
    return sigma, kappa, resid, twist_comps, onorm, shear_scaled, twist_scaled


def _twist_signed(o, twist_comps):
    """Time component of the metric dual of k ^ dk, scaled by |o|^6.

    With the orientation eps_{txyz} = +1 the raised volume form has
    eps^{txyz} = -1, so the dual vector of the 3-form components
    (txy, txz, tyz, xyz) is (-c3, +c2, -c1, +c0) with upper index.  The
    full contraction dual . k vanishes identically (antisymmetry), so the
    reported sign is the frame-dependent t-component; its nonvanishing is
    the frame-independent statement.
    """
    c = twist_comps.real
    onorm = np.linalg.norm(o, axis=1)
    return -c[:, 3] / onorm**6


def shear(field: CongruenceField, x) -> ShearReport:
    """Shear, geodesy and twist of the field at one event."""
    x = x.coords if isinstance(x, Event) else np.asarray(x, dtype=float)
    o, jac = field.jets_many(x[None, :])
    sigma, kappa, resid, twist_comps, _, shear_scaled, twist_scaled = _raw_invariants(
        o, jac
    )
    signed = _twist_signed(o, twist_comps)
    return ShearReport(
        sigma=Spinor2(sigma[0], "unprimed-lower"),
        sigma_norm_scaled=float(shear_scaled[0]),
        geodesy_kappa=complex(kappa[0]),
        geodesy_residual=float(resid[0]),
        twist_norm=float(twist_scaled[0]),
        o=Spinor2(o[0], "primed-lower"),
        twist_signed=float(signed[0]),
    )


def twist(field: CongruenceField, x) -> float:
    """max |(k ^ dk)_{abc}| / |o|^4 at one event; zero iff non-rotating."""
    return shear(field, x).twist_norm


def shear_many(field: CongruenceField, xs, _center_seeds=None):
    """Batched invariants; returns a dict of arrays over the rows of xs."""
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    o, jac = field.jets_many(xs, _center_seeds)
    sigma, kappa, resid, twist_comps, onorm, shear_scaled, twist_scaled = (
        _raw_invariants(o, jac)
    )
    return {
        "o": o,
        "sigma": sigma,
        "sigma_norm_scaled": shear_scaled,
        "geodesy_kappa": kappa,
        "geodesy_residual": resid,
        "twist_norm": twist_scaled,
        "twist_signed": _twist_signed(o, twist_comps),
    }


# ---------------------------------------------------------------------------
# CR conormal forms


@dataclass(frozen=True)
class CRFormsReport:
    gamma: np.ndarray            # (4,) the real conormal k_a
    lambda_form: np.ndarray      # (4,) the complex conormal iota_A o_{A'}
    gamma_contraction: float     # |k^a gamma_a| relative
    lambda_contraction: float    # |k^a lambda_a| relative
    lie_drag_residual: float     # L_k gamma and L_k lambda outside span{gamma, lambda}


_S_DYAD = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, 1j], [-1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
) / SQRT2


def cr_forms(field: CongruenceField, x) -> CRFormsReport:
    """Conormal one-forms of the congruence and their Lie-drag residual.

    gamma_a = o_A o_{A'} (real, the lowered flagpole) and
    lambda_a = iota_A o_{A'}, where iota^A is the unique spinor with
    o_A iota^A = 1 that is Euclidean-orthogonal to o^A.  Both annihilate k;
    for a shear-free congruence the dragged forms L_k gamma and L_k lambda
    stay inside span{gamma, lambda}.
    """
    x = x.coords if isinstance(x, Event) else np.asarray(x, dtype=float)
    o, jac = field.jets_many(x[None, :])
    o0 = Jet(o[0, 0], tuple(jac[0, :, 0]))
    o1 = Jet(o[0, 1], tuple(jac[0, :, 1]))

    up0, up1 = o1, -o0                      # o^{A'}
    p0, p1 = jconj(up0), jconj(up1)         # o^A
    low_u0, low_u1 = -p1, p0                # o_A
    n2 = p0 * jconj(p0) + p1 * jconj(p1)
    i_up0, i_up1 = -jconj(p1) / n2, jconj(p0) / n2   # iota^A
    i_low0, i_low1 = -i_up1, i_up0                   # iota_A

    def one_form(a0, a1):
        """c_nu = a_A o_{A'} S[nu, A, A'] as four jets."""
        comps = []
        for nu in range(4):
            s = _S_DYAD[nu]
            comps.append(
                a0 * (o0 * s[0, 0] + o1 * s[0, 1]) + a1 * (o0 * s[1, 0] + o1 * s[1, 1])
            )
        return comps

    gamma = one_form(low_u0, low_u1)
    lam = one_form(i_low0, i_low1)

    gamma_v = np.array([c.v for c in gamma])
    lam_v = np.array([c.v for c in lam])

    # flagpole vector k^mu from values
    K = np.outer(np.array([p0.v, p1.v]), np.array([up0.v, up1.v]))
    kvec = np.array(
        [
            (K[0, 0] + K[1, 1]).real / SQRT2,
            (K[0, 1] + K[1, 0]).real / SQRT2,
            ((K[0, 1] - K[1, 0]) / 1j).real / SQRT2,
            (K[0, 0] - K[1, 1]).real / SQRT2,
        ]
    )
    kscale = np.abs(kvec).max()
    g_con = abs(kvec @ gamma_v) / (kscale * np.abs(gamma_v).max())
    l_con = abs(kvec @ lam_v) / (kscale * np.abs(lam_v).max())

    basis = np.stack([gamma_v, lam_v], axis=1)

    def drag_residual(form):
        d = np.array([[form[nu].g[mu] for nu in range(4)] for mu in range(4)])
        d = d - d.T
        dragged = kvec @ d           # (L_k form)_nu = k^mu (d form)_{mu nu}
        dnorm = np.linalg.norm(dragged)
        if dnorm == 0.0:
            return 0.0
        coeff, *_ = np.linalg.lstsq(basis, dragged, rcond=None)
        return float(np.linalg.norm(dragged - basis @ coeff) / dnorm)

    return CRFormsReport(
        gamma=gamma_v.real,
        lambda_form=lam_v,
        gamma_contraction=float(g_con),
        lambda_contraction=float(l_con),
        lie_drag_residual=max(drag_residual(gamma), drag_residual(lam)),
    )


# ---------------------------------------------------------------------------
# grid sweeps


def grid_events(center, half_width: float, n: int) -> np.ndarray:
    """n^3 events on a spatial cube at fixed t around the given centre.

    Points are ordered lexicographically in (x, y, z) offsets, z fastest.
    """
    center = np.asarray(center, dtype=float)
    axis = np.linspace(-half_width, half_width, n)
    X, Y, Z = np.meshgrid(axis, axis, axis, indexing="ij")
    return np.stack(
        [
            np.full(X.size, center[0]),
            center[1] + X.ravel(),
            center[2] + Y.ravel(),
            center[3] + Z.ravel(),
        ],
        axis=1,
    )


def _grid_chain_seeds(field, pts, n):
    """Continuation solve of a cr_graph family over a lexicographic grid.

    Seeds flow along the z-fastest ordering: first point from the
    distinguished solution, each line/plane start from the previous
    neighbour.  Returns zeta over the flattened grid.
    """
    tol = field.params.get("tol", 1e-12)
    path_step = field.params.get("path_step", 0.02)
    zetas = np.empty(len(pts), dtype=complex)
    first = solve_cr_graph(pts[0], tol=tol, path_step=path_step, full_output=True)
    c0, c1 = _chart_coefficients(pts)
    # one serial chain along the flattened order; the lexicographic layout
    # keeps consecutive points adjacent except at line wraps, where the
    # previous solution is still an adequate seed at desk-scale widths
    zetas, absh, iters, status = _core.cr_newton_chain(
        c0, c1, first.zeta, tol, 50
    )
    bad = np.nonzero(status != _core.OK)[0]
    if bad.size:
        _raise_solve(status[bad[0]], pts[bad[0]])
    return zetas


def sweep_grid(field: CongruenceField, center, half_width: float, n: int):
    """Invariants over a spatial grid; returns (events, dict-of-arrays).

    For the cr_graph family the centre solves use one serial continuation
    chain across the grid (deterministic for a fixed grid spec); the FD
    shifts are then seeded from the centre solutions point by point.
    """
    pts = grid_events(center, half_width, n)
    if field.family == "cr_graph":
        seeds = _grid_chain_seeds(field, pts, n)
        return pts, shear_many(field, pts, _center_seeds=seeds)
    return pts, shear_many(field, pts)


def probe_domain_radius(
    field: CongruenceField,
    n_directions: int = 24,
    r_start: float = 0.05,
    growth: float = 1.4,
    r_max: float = 50.0,
    seed: int = 0,
) -> float:
    """Largest probed radius around the distinguished event where the
    cr_graph solve succeeds in every sampled direction.

    Expands geometrically until a Newton failure (or r_max) and returns the
    last all-good radius; 0.0 if even r_start fails.  Directions are drawn
    once from the given RNG seed, so the probe is reproducible.
    """
    if field.family != "cr_graph":
        raise ValueError("domain probe applies to the cr_graph family")
    rng = np.random.default_rng(seed)
    dirs = rng.normal(size=(n_directions, 4))
    dirs /= np.linalg.norm(dirs, axis=1)[:, None]
    good = 0.0
    r = r_start
    while r <= r_max:
        try:
            _solve_many(
                DISTINGUISHED_EVENT + r * dirs,
                tol=field.params.get("tol", 1e-12),
                path_step=field.params.get("path_step", 0.02),
            )
        except SolveError:
            return good
        good = r
        r *= growth
    return good
