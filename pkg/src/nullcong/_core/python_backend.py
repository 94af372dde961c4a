"""Pure-Python/numpy implementations of the hot kernels.

The compiled extension (_speedups) mirrors these signatures exactly; the
package selects an implementation at import time in _core.__init__.

Kernels:
  * g_scalar / g_prime_scalar / g_many / g_prime_many
      the slit-plane amplitude g(u) = (1/3) exp(-(1-u)^(-1/4)) and its
      derivative, principal branch, domain C minus the real ray u > 1.
  * cr_newton_chain / cr_newton_seeded
      Newton iteration on h(zeta) = z(zeta) - w(zeta) g(u(zeta)) where
      (u, w, z) are affine chart coordinates of the incident twistor,
      pre-division coordinates affine in zeta: raw = c0 + c1 * zeta.
  * shear_twist_raw
      shear spinor, geodesy scalar/residual and the rotation 3-form from a
      congruence value o and its coordinate Jacobian.
"""
from __future__ import annotations

import cmath

import numpy as np

BACKEND = "python"

_THIRD = 1.0 / 3.0

# Newton status codes
OK = 0
NO_CONVERGENCE = 1
SLIT = 2
CHART_DEGENERATE = 3
DIVERGED = 4


def g_scalar(u: complex) -> complex:
    """g(u) = (1/3) exp(-(1-u)^(-1/4)); 0.0 at u = 1; nan on the slit u > 1 real."""
    u = complex(u)
    w = 1.0 - u
    if w == 0.0:
        return 0.0 + 0.0j
    if w.imag == 0.0 and w.real < 0.0:
        return complex("nan")
    return _THIRD * cmath.exp(-cmath.exp(-0.25 * cmath.log(w)))


def g_prime_scalar(u: complex) -> complex:
    """g'(u) = -(1/12) exp(-(1-u)^(-1/4) - (5/4) Log(1-u)); 0.0 at u = 1."""
    u = complex(u)
    w = 1.0 - u
    if w == 0.0:
        return 0.0 + 0.0j
    if w.imag == 0.0 and w.real < 0.0:
        return complex("nan")
    lw = cmath.log(w)
    return -cmath.exp(-cmath.exp(-0.25 * lw) - 1.25 * lw) / 12.0


def g_many(u) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    w = 1.0 - u
    out = np.zeros_like(w)
    at_one = w == 0.0
    slit = (w.imag == 0.0) & (w.real < 0.0) & ~at_one
    reg = ~(at_one | slit)
    wr = w[reg]
    out[reg] = _THIRD * np.exp(-np.exp(-0.25 * np.log(wr)))
    out[slit] = np.nan
    return out


def g_prime_many(u) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    w = 1.0 - u
    out = np.zeros_like(w)
    at_one = w == 0.0
    slit = (w.imag == 0.0) & (w.real < 0.0) & ~at_one
    reg = ~(at_one | slit)
    lw = np.log(w[reg])
    out[reg] = -np.exp(-np.exp(-0.25 * lw) - 1.25 * lw) / 12.0
    out[slit] = np.nan
    return out


def _h_and_slope(c0, c1, zeta):
    """(h, dh/dzeta, status) at zeta; status != OK marks domain violations."""
    vh = c0[3] + c1[3] * zeta
    if abs(vh) < 1e-14:
        return 0.0, 0.0, CHART_DEGENERATE
    u = (c0[0] + c1[0] * zeta) / vh
    w = (c0[1] + c1[1] * zeta) / vh
    z = (c0[2] + c1[2] * zeta) / vh
    if u.imag == 0.0 and u.real > 1.0:
        return 0.0, 0.0, SLIT
    gv = g_scalar(u)
    h = z - w * gv
    inv2 = 1.0 / (vh * vh)
    du = (c1[0] * vh - (c0[0] + c1[0] * zeta) * c1[3]) * inv2
    dw = (c1[1] * vh - (c0[1] + c1[1] * zeta) * c1[3]) * inv2
    dz = (c1[2] * vh - (c0[2] + c1[2] * zeta) * c1[3]) * inv2
    dh = dz - dw * gv - w * g_prime_scalar(u) * du
    return h, dh, OK


def _newton_point(c0, c1, zeta, tol, maxit):
    """Newton on h(zeta); returns (zeta, |h|, iterations, status).

    After reaching |h| <= tol the iteration keeps polishing (up to two more
    steps) while |h| still shrinks, so the accepted root sits at the
    round-off floor rather than at tol; downstream finite differences of
    zeta depend on that.
    """
    for it in range(maxit):
        h, dh, st = _h_and_slope(c0, c1, zeta)
        if st != OK:
            return zeta, np.inf, it, st
        if abs(h) <= tol:
            best_z, best_h = zeta, abs(h)
            for _ in range(2):
                if dh == 0.0 or not np.isfinite(abs(dh)):
                    break
                cand = zeta - h / dh
                h2, dh2, st2 = _h_and_slope(c0, c1, cand)
                if st2 != OK or not abs(h2) < best_h:
                    break
                zeta, h, dh = cand, h2, dh2
                best_z, best_h = cand, abs(h2)
            return best_z, best_h, it, OK
        if dh == 0.0 or not np.isfinite(abs(dh)):
            return zeta, abs(h), it, DIVERGED
        zeta = zeta - h / dh
        if not np.isfinite(abs(zeta)) or abs(zeta) > 1e8:
            return zeta, np.inf, it, DIVERGED
    h, _, st = _h_and_slope(c0, c1, zeta)
    if st != OK:
        return zeta, np.inf, maxit, st
    if abs(h) <= tol:
        return zeta, abs(h), maxit, OK
    return zeta, abs(h), maxit, NO_CONVERGENCE


def cr_newton_chain(c0, c1, seed, tol=1e-13, maxit=50):
    """Solve points in order, seeding each from the previous solution."""
    c0 = np.asarray(c0, dtype=complex)
    c1 = np.asarray(c1, dtype=complex)
    n = c0.shape[0]
    zetas = np.zeros(n, dtype=complex)
    absh = np.zeros(n)
    iters = np.zeros(n, dtype=np.int64)
    status = np.zeros(n, dtype=np.int64)
    z = complex(seed)
    for k in range(n):
        z, h, it, st = _newton_point(c0[k], c1[k], z, tol, maxit)
        zetas[k] = z
        absh[k] = h
        iters[k] = it
        status[k] = st
        if st != OK:
            z = complex(seed)
    return zetas, absh, iters, status


def cr_newton_seeded(c0, c1, seeds, tol=1e-13, maxit=50):
    """Solve each point independently from its own seed."""
    c0 = np.asarray(c0, dtype=complex)
    c1 = np.asarray(c1, dtype=complex)
    seeds = np.asarray(seeds, dtype=complex)
    n = c0.shape[0]
    zetas = np.zeros(n, dtype=complex)
    absh = np.zeros(n)
    iters = np.zeros(n, dtype=np.int64)
    status = np.zeros(n, dtype=np.int64)
    for k in range(n):
        z, h, it, st = _newton_point(c0[k], c1[k], complex(seeds[k]), tol, maxit)
        zetas[k] = z
        absh[k] = h
        iters[k] = it
        status[k] = st
    return zetas, absh, iters, status


_EPS2 = np.array([[0.0, 1.0], [-1.0, 0.0]], dtype=complex)
_SQRT2 = float(np.sqrt(2.0))

# vector dyad S_mu and derivative map conj(S_mu); kept local so the compiled
# twin is self-contained
_S = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, 1j], [-1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
) / _SQRT2
_T = _S.conj()

_G_DIAG = np.array([1.0, -1.0, -1.0, -1.0])

# index triples of the rotation 3-form components (txy, txz, tyz, xyz)
_TRIPLES = ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))


def _matrix_to_vec(K):
    """Inverse dyad map on (..., 2, 2)."""
    t = (K[..., 0, 0] + K[..., 1, 1]) / _SQRT2
    x = (K[..., 0, 1] + K[..., 1, 0]) / _SQRT2
    y = (K[..., 0, 1] - K[..., 1, 0]) / (1j * _SQRT2)
    z = (K[..., 0, 0] - K[..., 1, 1]) / _SQRT2
    return np.stack([t, x, y, z], axis=-1)


def shear_twist_raw(o, jac):
    """Shear, geodesy and rotation data from o (N,2) and jac (N,4,2).

    o holds the primed-lower congruence spinor, jac its coordinate Jacobian
    d_mu o_{A'}.  Returns (sigma (N,2), kappa (N,), geodesy_residual (N,),
    twist_comps (N,4)), all unscaled.
    """
    o = np.asarray(o, dtype=complex)
    jac = np.asarray(jac, dtype=complex)
    o_up = np.einsum("ab,nb->na", _EPS2, o)          # o^{A'}
    o_unup = np.conj(o_up)                           # o^A
    # D[n, B, B', A'] = d_{BB'} o_{A'}
    D = np.einsum("mbc,nma->nbca", _T, jac)
    sigma = np.einsum("na,nc,nbca->nb", o_up, o_up, D)
    lhs = np.einsum("nb,nc,nbca->na", o_unup, o_up, D)
    denom = np.einsum("na,na->n", np.conj(o), o).real
    kappa = np.einsum("na,na->n", np.conj(o), lhs) / denom
    resid = np.linalg.norm(lhs - kappa[:, None] * o, axis=1)
    # covector field k_a and its Jacobian
    K = np.einsum("na,nb->nab", o_unup, o_up)
    kvec = _matrix_to_vec(K)
    kcov = kvec * _G_DIAG
    jac_up = np.einsum("ab,nmb->nma", _EPS2, jac)
    dK = np.einsum("nma,nb->nmab", np.conj(jac_up), o_up) + np.einsum(
        "na,nmb->nmab", o_unup, jac_up
    )
    dkcov = _matrix_to_vec(dK) * _G_DIAG             # (n, mu, nu) = d_mu k_nu
    dk = dkcov - np.swapaxes(dkcov, 1, 2)            # (dk)_{mu nu}
    twist = np.empty(o.shape[:1] + (4,), dtype=complex)
    for idx, (a, b, c) in enumerate(_TRIPLES):
        twist[:, idx] = (
            kcov[:, a] * dk[:, b, c]
            - kcov[:, b] * dk[:, a, c]
            + kcov[:, c] * dk[:, a, b]
        )
    return sigma, kappa, resid, twist
