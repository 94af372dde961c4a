# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the pure-Python kernels in python_backend.

Same signatures, same status codes, same branch conventions; tests assert
the two backends agree.  Only the scalar-loop kernels are compiled (the
amplitude g, its derivative, and the Newton iterations); shear_twist_raw
is already numpy-vectorized, so the python twin's version is re-exported
unchanged.
"""
import numpy as np

from .python_backend import shear_twist_raw  # noqa: F401  (re-export)

from libc.math cimport INFINITY, NAN, isfinite
from libc.stdint cimport int64_t

cdef extern from "complex.h" nogil:
    double complex cexp(double complex)
    double complex clog(double complex)
    double cabs(double complex)
    double creal(double complex)
    double cimag(double complex)

BACKEND = "compiled"

OK = 0
NO_CONVERGENCE = 1
SLIT = 2
CHART_DEGENERATE = 3
DIVERGED = 4

cdef int _OK = 0
cdef int _NO_CONVERGENCE = 1
cdef int _SLIT = 2
cdef int _CHART_DEGENERATE = 3
cdef int _DIVERGED = 4

cdef double _THIRD = 1.0 / 3.0


cdef inline double complex _g(double complex u) nogil:
    cdef double complex w = 1.0 - u
    if creal(w) == 0.0 and cimag(w) == 0.0:
        return 0.0
    if cimag(w) == 0.0 and creal(w) < 0.0:
        return <double complex> NAN
    return _THIRD * cexp(-cexp(-0.25 * clog(w)))


cdef inline double complex _g_prime(double complex u) nogil:
    cdef double complex w = 1.0 - u
    cdef double complex lw
    if creal(w) == 0.0 and cimag(w) == 0.0:
        return 0.0
    if cimag(w) == 0.0 and creal(w) < 0.0:
        return <double complex> NAN
    lw = clog(w)
    return -cexp(-cexp(-0.25 * lw) - 1.25 * lw) / 12.0


def g_scalar(u):
    """g(u) = (1/3) exp(-(1-u)^(-1/4)); 0.0 at u = 1; nan on the slit u > 1 real."""
    cdef double complex cu = complex(u)
    return _g(cu)


def g_prime_scalar(u):
    """g'(u) = -(1/12) exp(-(1-u)^(-1/4) - (5/4) Log(1-u)); 0.0 at u = 1."""
    cdef double complex cu = complex(u)
    return _g_prime(cu)


def g_many(u):
    arr = np.asarray(u, dtype=complex)
    shape = arr.shape
    flat = np.ascontiguousarray(arr.reshape(-1))
    out = np.empty(flat.shape[0], dtype=complex)
    cdef double complex[::1] uv = flat
    cdef double complex[::1] ov = out
    cdef Py_ssize_t i, n = uv.shape[0]
    with nogil:
        for i in range(n):
            ov[i] = _g(uv[i])
    return out.reshape(shape)


def g_prime_many(u):
    arr = np.asarray(u, dtype=complex)
    shape = arr.shape
    flat = np.ascontiguousarray(arr.reshape(-1))
    out = np.empty(flat.shape[0], dtype=complex)
    cdef double complex[::1] uv = flat
    cdef double complex[::1] ov = out
    cdef Py_ssize_t i, n = uv.shape[0]
    with nogil:
        for i in range(n):
            ov[i] = _g_prime(uv[i])
    return out.reshape(shape)


cdef inline int _h_and_slope(const double complex* c0, const double complex* c1,
                             double complex zeta,
                             double complex* h_out, double complex* dh_out) nogil:
    """(h, dh/dzeta, status) at zeta; status != OK marks domain violations."""
    cdef double complex vh = c0[3] + c1[3] * zeta
    cdef double complex u, w, z, gv, gp, inv2, du, dw, dz
    if cabs(vh) < 1e-14:
        h_out[0] = 0.0
        dh_out[0] = 0.0
        return _CHART_DEGENERATE
    u = (c0[0] + c1[0] * zeta) / vh
    w = (c0[1] + c1[1] * zeta) / vh
    z = (c0[2] + c1[2] * zeta) / vh
    if cimag(u) == 0.0 and creal(u) > 1.0:
        h_out[0] = 0.0
        dh_out[0] = 0.0
        return _SLIT
    gv = _g(u)
    gp = _g_prime(u)
    h_out[0] = z - w * gv
    inv2 = 1.0 / (vh * vh)
    du = (c1[0] * vh - (c0[0] + c1[0] * zeta) * c1[3]) * inv2
    dw = (c1[1] * vh - (c0[1] + c1[1] * zeta) * c1[3]) * inv2
    dz = (c1[2] * vh - (c0[2] + c1[2] * zeta) * c1[3]) * inv2
    dh_out[0] = dz - dw * gv - w * gp * du
    return _OK


cdef inline int _newton_point(const double complex* c0, const double complex* c1,
                              double complex zeta, double tol, int maxit,
                              double complex* z_out, double* h_out,
                              int64_t* it_out) nogil:
    """Newton on h(zeta); same polish-past-tol behaviour as the python twin."""
    cdef double complex h, dh, h2, dh2, cand, best_z
    cdef double best_h
    cdef int it, st, st2, polish
    for it in range(maxit):
        st = _h_and_slope(c0, c1, zeta, &h, &dh)
        if st != _OK:
            z_out[0] = zeta
            h_out[0] = INFINITY
            it_out[0] = it
            return st
        if cabs(h) <= tol:
            best_z = zeta
            best_h = cabs(h)
            for polish in range(2):
                if cabs(dh) == 0.0 or not isfinite(cabs(dh)):
                    break
                cand = zeta - h / dh
                st2 = _h_and_slope(c0, c1, cand, &h2, &dh2)
                if st2 != _OK or not cabs(h2) < best_h:
                    break
                zeta = cand
                h = h2
                dh = dh2
                best_z = cand
                best_h = cabs(h2)
            z_out[0] = best_z
            h_out[0] = best_h
            it_out[0] = it
            return _OK
        if cabs(dh) == 0.0 or not isfinite(cabs(dh)):
            z_out[0] = zeta
            h_out[0] = cabs(h)
            it_out[0] = it
            return _DIVERGED
        zeta = zeta - h / dh
        if not isfinite(cabs(zeta)) or cabs(zeta) > 1e8:
            z_out[0] = zeta
            h_out[0] = INFINITY
            it_out[0] = it
            return _DIVERGED
    st = _h_and_slope(c0, c1, zeta, &h, &dh)
    z_out[0] = zeta
    it_out[0] = maxit
    if st != _OK:
        h_out[0] = INFINITY
        return st
    h_out[0] = cabs(h)
    if cabs(h) <= tol:
        return _OK
    return _NO_CONVERGENCE


def cr_newton_chain(c0, c1, seed, tol=1e-13, maxit=50):
    """Solve points in order, seeding each from the previous solution."""
    c0a = np.ascontiguousarray(np.asarray(c0, dtype=complex))
    c1a = np.ascontiguousarray(np.asarray(c1, dtype=complex))
    cdef Py_ssize_t n = c0a.shape[0]
    zetas = np.zeros(n, dtype=complex)
    absh = np.zeros(n)
    iters = np.zeros(n, dtype=np.int64)
    status = np.zeros(n, dtype=np.int64)
    cdef double complex[:, ::1] c0v = c0a
    cdef double complex[:, ::1] c1v = c1a
    cdef double complex[::1] zv = zetas
    cdef double[::1] hv = absh
    cdef int64_t[::1] iv = iters
    cdef int64_t[::1] sv = status
    cdef double complex z = complex(seed)
    cdef double complex z0 = complex(seed)
    cdef double ctol = tol
    cdef int cmaxit = maxit
    cdef Py_ssize_t k
    cdef int st
    with nogil:
        for k in range(n):
            st = _newton_point(&c0v[k, 0], &c1v[k, 0], z, ctol, cmaxit,
                               &zv[k], &hv[k], &iv[k])
            sv[k] = st
            z = zv[k]
            if st != _OK:
                z = z0
    return zetas, absh, iters, status


def cr_newton_seeded(c0, c1, seeds, tol=1e-13, maxit=50):
    """Solve each point independently from its own seed."""
    c0a = np.ascontiguousarray(np.asarray(c0, dtype=complex))
    c1a = np.ascontiguousarray(np.asarray(c1, dtype=complex))
    sa = np.ascontiguousarray(np.asarray(seeds, dtype=complex))
    cdef Py_ssize_t n = c0a.shape[0]
    zetas = np.zeros(n, dtype=complex)
    absh = np.zeros(n)
    iters = np.zeros(n, dtype=np.int64)
    status = np.zeros(n, dtype=np.int64)
    cdef double complex[:, ::1] c0v = c0a
    cdef double complex[:, ::1] c1v = c1a
    cdef double complex[::1] sdv = sa
    cdef double complex[::1] zv = zetas
    cdef double[::1] hv = absh
    cdef int64_t[::1] iv = iters
    cdef int64_t[::1] sv = status
    cdef double ctol = tol
    cdef int cmaxit = maxit
    cdef Py_ssize_t k
    with nogil:
        for k in range(n):
            sv[k] = _newton_point(&c0v[k, 0], &c1v[k, 0], sdv[k], ctol, cmaxit,
                                  &zv[k], &hv[k], &iv[k])
    return zetas, absh, iters, status
