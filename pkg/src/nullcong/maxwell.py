"""Null electromagnetic fields riding a shear-free congruence.

The complex field two-form is G_{ab} = lambda(x) o_{A'} o_{B'} eps_{AB}: a
pure primed block, so G is self-dual (*G = iG) and null (G.G = 0) by
construction, pointwise, with no derivatives involved.  The physical field
is F = Im G with *F = Re G, and dG = 0 is equivalent to the vacuum Maxwell
equations for F.

The amplitude lambda comes from a free holomorphic profile of two variables
composed with coordinates constant along the congruence's rays:

    omega^A = i x^{AA'} o_{A'},   s = nu^{A'} o_{A'},
    lambda = s^(-3) F(omega^0 / s, omega^1 / s).

This closes Maxwell exactly for any holomorphic F (AD-verified to machine
precision on the linear family), but only in the spinor gauge induced by
the family's defining function: the linear family's affine gauge, any
constant gauge, and for the graph family the derivative gauge assembled
from the chart solve below.  Re-scaling o by a factor that is not constant
on the rays breaks it, which is why the graph family's normalized (1, zeta)
gauge cannot be used directly.

Every report also carries the pointwise self-duality and nullity defects
and the rank-one defect of the energy tensor of Im G.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from . import _core
from .congruence import CongruenceField, _chart_coefficients, _matrix_entries, _solve_many
from .jets import Jet, jconj, jexp
from .spinor import (
    SIGNATURE,
    SymmetricSpinor2,
    TwoForm,
    FactorizationError,
    _LEVI,
    COVEC_DYAD,
    factor_symmetric,
    hodge_star,
    recompose_two_form,
    vector_to_matrix,
)

__all__ = [
    "PROFILES",
    "NullFieldSpec",
    "FieldReport",
    "EnergyTensor",
    "assemble_field",
    "assemble_many",
    "maxwell_residual",
    "f_and_star_f",
    "energy_tensor",
    "shear_from_field",
    "hypercube_events",
]

_G_DIAG = np.diag(SIGNATURE).copy()  # (+,-,-,-) as a vector
_EPS_UP = np.array([[0.0, 1.0], [-1.0, 0.0]], dtype=complex)
_T_DYAD = np.conj(
    np.array(
        [[[1, 0], [0, 1]], [[0, 1], [1, 0]], [[0, 1j], [-1j, 0]], [[1, 0], [0, -1]]],
        dtype=complex,
    )
    / np.sqrt(2.0)
)

# beta components (phi00, phi01, phi11) -> six G components; pinned from the
# spinor module so the conversion can never drift from its conventions
_B2G = np.column_stack(
    [
        recompose_two_form(
            SymmetricSpinor2(np.zeros(3)),
            SymmetricSpinor2(np.eye(3)[j], primed=True),
        ).components
        for j in range(3)
    ]
)

# covector components from a 2x2 lower-index spinor matrix (inverse dyad)
_COVEC_INV = np.linalg.inv(COVEC_DYAD.reshape(4, 4).T)

# hodge star on components, pinned once from the spinor module
_S6 = np.column_stack(
    [hodge_star(TwoForm(np.eye(6)[k])).components for k in range(6)]
)

_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
_TRIPLES = ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))


def _exp(v):
    return jexp(v) if isinstance(v, Jet) else np.exp(v)


def _conj(v):
    return jconj(v) if isinstance(v, Jet) else np.conj(v)


PROFILES: dict[str, Callable] = {
    "unit": lambda a, b: a * 0.0 + 1.0,
    "first_squared": lambda a, b: a * a,
    "exp_second": lambda a, b: _exp(b),
    # anti-holomorphic negative control: breaks Maxwell by design
    "conj_first": lambda a, b: _conj(a),
}


@dataclass(frozen=True)
class NullFieldSpec:
    """A congruence plus an amplitude recipe.

    profile names an entry of PROFILES or is a two-argument callable
    F(omega0/s, omega1/s) acting in any algebra (complex arrays or jets).
    Alternatively `amplitude` supplies lambda directly as a scalar field
    of the four coordinates, bypassing the twistor composition entirely
    (the verify-only route for candidate fields).  nu is the reference
    spinor fixing the scale s = nu^{A'} o_{A'}.
    """

    congruence: CongruenceField
    profile: Union[str, Callable] = "unit"
    nu: tuple = (1.0, 0.0)
    amplitude: Optional[Callable] = None

    def __post_init__(self):
        if isinstance(self.profile, str) and self.profile not in PROFILES:
            raise ValueError(
                f"unknown profile {self.profile!r}; known: {sorted(PROFILES)}"
            )

    @property
    def profile_fn(self) -> Callable:
        return PROFILES[self.profile] if isinstance(self.profile, str) else self.profile

    @property
    def profile_name(self) -> str:
        return self.profile if isinstance(self.profile, str) else "user"


@dataclass(frozen=True)
class FieldReport:
    """Scaled worst-case defects of a field over an evaluation grid."""

    maxwell_residual: float
    self_duality_defect: float
    nullity_defect: float
    energy_rank1_defect: float


@dataclass(frozen=True)
class EnergyTensor:
    """T_{ac} = -F_a{}^b F_{cb} + (1/4) g_{ac} F^{de}F_{de}, with factor data."""

    tensor: np.ndarray          # (4, 4) real symmetric
    trace: float                # metric trace g^{ac} T_{ac}
    rank1_defect: float         # |second eigenvalue| / |leading eigenvalue|
    k: Optional[np.ndarray]     # real covector with T = k (x) k, or None


def hypercube_events(center, half_width: float, n: int) -> np.ndarray:
    """n^4 events on a uniform 4-cube around center, C-order flattened."""
    center = np.asarray(center, dtype=float)
    offs = np.linspace(-half_width, half_width, n)
    grids = np.meshgrid(*(center[i] + offs for i in range(4)), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=-1)


# ---------------------------------------------------------------------------
# gauge and amplitude evaluation


def _graph_gauge(field: CongruenceField, xs: np.ndarray, seeds=None) -> np.ndarray:
    """The derivative gauge for the graph family (experimental synthesis).

    With the chart solve written as K(x, pi) = raw2 - raw1 * g(raw0/raw3)
    (homogeneous of degree one in pi and vanishing on the congruence), the
    gauge o_{A'} = eps_{A'B'} dK/dpi_{B'} plays the role the affine gauge
    plays for the linear family; rescalings by first integrals are absorbed
    into the free profile.  Measured Maxwell residuals sit at the
    finite-difference floor (~1e-9) rather than machine precision.
    """
    tol = field.params.get("tol", 1e-12)
    step = field.params.get("path_step", 0.02)
    zetas = _solve_many(xs, tol=tol, path_step=step, seeds=seeds)
    c0, c1 = _chart_coefficients(xs)
    raw = c0 + zetas[:, None] * c1
    u = raw[:, 0] / raw[:, 3]
    gv = _core.g_many(u)
    gp = _core.g_prime_many(u)
    V = np.empty((len(xs), 2), dtype=complex)
    for bp, c in enumerate((c0, c1)):
        du = (c[:, 0] * raw[:, 3] - raw[:, 0] * c[:, 3]) / raw[:, 3] ** 2
        V[:, bp] = c[:, 2] - c[:, 1] * gv - raw[:, 1] * gp * du
    return np.stack([V[:, 1], -V[:, 0]], axis=-1)


def _gauge_many(spec: NullFieldSpec, xs: np.ndarray, seeds=None) -> np.ndarray:
    if spec.congruence.family == "cr_graph":
        return _graph_gauge(spec.congruence, xs, seeds=seeds)
    return spec.congruence.evaluate_many(xs)


def _amplitude_from(spec: NullFieldSpec, xs, o0, o1, xm=None):
    """lambda in whatever algebra (o0, o1) live in; xs is (N, 4) float."""
    if spec.amplitude is not None:
        if isinstance(o0, Jet):
            raise ValueError("user amplitudes are differentiated by fd only")
        return spec.amplitude(xs[:, 0], xs[:, 1], xs[:, 2], xs[:, 3])
    nu0, nu1 = complex(spec.nu[0]), complex(spec.nu[1])
    s = nu0 * o0 + nu1 * o1
    sval = s.v if isinstance(s, Jet) else s
    if np.any(np.abs(sval) < 1e-12):
        raise ValueError(
            "reference spinor nu is degenerate against the congruence on this "
            "grid; shift the grid or pick another nu"
        )
    if xm is None:
        m = vector_to_matrix(xs)
        m00, m01, m10, m11 = m[:, 0, 0], m[:, 0, 1], m[:, 1, 0], m[:, 1, 1]
    else:
        m00, m01, m10, m11 = xm
    w0 = 1j * (m00 * o0 + m01 * o1)
    w1 = 1j * (m10 * o0 + m11 * o1)
    inv = 1.0 / s
    return spec.profile_fn(w0 * inv, w1 * inv) * inv * inv * inv


def _values_many(spec: NullFieldSpec, xs, seeds=None):
    """(G components (N, 6), phi components (N, 3)) without derivatives."""
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    o = _gauge_many(spec, xs, seeds=seeds)
    lam = _amplitude_from(spec, xs, o[:, 0], o[:, 1])
    phi = np.stack(
        [lam * o[:, 0] * o[:, 0], lam * o[:, 0] * o[:, 1], lam * o[:, 1] * o[:, 1]],
        axis=-1,
    )
    return phi @ _B2G.T, phi


def assemble_field(spec: NullFieldSpec, x) -> TwoForm:
    """The complex field two-form G at one event."""
    G, _ = _values_many(spec, np.asarray(x, dtype=float)[None, :])
    return TwoForm(G[0])


def assemble_many(spec: NullFieldSpec, xs) -> np.ndarray:
    """G components on a batch of events; (N, 6) complex."""
    G, _ = _values_many(spec, xs)
    return G


# ---------------------------------------------------------------------------
# differentiation of the assembled field


def _partials_ad(spec: NullFieldSpec, xs):
    n = len(xs)
    jt = Jet(xs[:, 0] + 0j, (1.0, 0.0, 0.0, 0.0))
    jx = Jet(xs[:, 1] + 0j, (0.0, 1.0, 0.0, 0.0))
    jy = Jet(xs[:, 2] + 0j, (0.0, 0.0, 1.0, 0.0))
    jz = Jet(xs[:, 3] + 0j, (0.0, 0.0, 0.0, 1.0))
    o0, o1 = spec.congruence._alg(jt, jx, jy, jz)
    lam = _amplitude_from(spec, xs, o0, o1, xm=_matrix_entries(jt, jx, jy, jz))
    phi_jets = (lam * o0 * o0, lam * o0 * o1, lam * o1 * o1)
    g_jets = [sum(_B2G[k, j] * phi_jets[j] for j in range(3)) for k in range(6)]
    gval = np.empty((n, 6), dtype=complex)
    gpart = np.empty((n, 4, 6), dtype=complex)
    pval = np.empty((n, 3), dtype=complex)
    ppart = np.empty((n, 4, 3), dtype=complex)
    for k, jet in enumerate(g_jets):
        gval[:, k] = np.broadcast_to(jet.v, (n,))
        for mu in range(4):
            gpart[:, mu, k] = np.broadcast_to(jet.g[mu], (n,))
    for k, jet in enumerate(phi_jets):
        pval[:, k] = np.broadcast_to(jet.v, (n,))
        for mu in range(4):
            ppart[:, mu, k] = np.broadcast_to(jet.g[mu], (n,))
    if not np.all(np.isfinite(gpart.view(float))):
        raise ValueError("non-finite field derivatives")
    return gval, gpart, pval, ppart


def _partials_fd(spec: NullFieldSpec, xs):
    n = len(xs)
    h = spec.congruence._fd_steps(xs)
    seeds = None
    if spec.congruence.family == "cr_graph":
        field = spec.congruence
        seeds = _solve_many(
            xs,
            tol=field.params.get("tol", 1e-12),
            path_step=field.params.get("path_step", 0.02),
        )
    gval, pval = _values_many(spec, xs, seeds=seeds)
    gpart = np.empty((n, 4, 6), dtype=complex)
    ppart = np.empty((n, 4, 3), dtype=complex)
    for mu in range(4):
        shift = np.zeros_like(xs)
        shift[:, mu] = h
        gp, pp = _values_many(spec, xs + shift, seeds=seeds)
        gm, pm = _values_many(spec, xs - shift, seeds=seeds)
        gpart[:, mu, :] = (gp - gm) / (2.0 * h[:, None])
        ppart[:, mu, :] = (pp - pm) / (2.0 * h[:, None])
    return gval, gpart, pval, ppart


def _field_partials(spec: NullFieldSpec, xs):
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    use_ad = (
        spec.congruence.strategy == "ad"
        and spec.congruence.family != "cr_graph"
        and spec.amplitude is None
    )
    return (_partials_ad if use_ad else _partials_fd)(spec, xs)


def _exterior_components(gpart: np.ndarray) -> np.ndarray:
    """Four components (txy, txz, tyz, xyz) of dG from d_mu G_comps."""
    D3 = np.zeros(gpart.shape[:1] + (4, 4, 4), dtype=complex)
    for k, (i, j) in enumerate(_PAIRS):
        D3[:, :, i, j] = gpart[:, :, k]
        D3[:, :, j, i] = -gpart[:, :, k]
    out = np.empty(gpart.shape[:1] + (4,), dtype=complex)
    for idx, (a, b, c) in enumerate(_TRIPLES):
        out[:, idx] = D3[:, a, b, c] + D3[:, b, c, a] + D3[:, c, a, b]
    return out


def _dual_of_exterior(comps: np.ndarray) -> np.ndarray:
    """(*dG)_rho from the four exterior components, metric raisings included."""
    dG = np.zeros(comps.shape[:1] + (4, 4, 4), dtype=complex)
    for idx, (a, b, c) in enumerate(_TRIPLES):
        for perm, sign in (
            ((a, b, c), 1), ((b, c, a), 1), ((c, a, b), 1),
            ((b, a, c), -1), ((a, c, b), -1), ((c, b, a), -1),
        ):
            dG[:, perm[0], perm[1], perm[2]] = sign * comps[:, idx]
    g = _G_DIAG
    return np.einsum("pqsr,p,q,s,npqs->nr", _LEVI, g, g, g, dG) / 6.0


def _spinor_divergence(ppart: np.ndarray) -> np.ndarray:
    """Covector components of eps^{A'C'} d_{BC'} phi_{A'B'} per event."""
    n = ppart.shape[0]
    dphi = np.empty((n, 4, 2, 2), dtype=complex)
    dphi[:, :, 0, 0] = ppart[:, :, 0]
    dphi[:, :, 0, 1] = ppart[:, :, 1]
    dphi[:, :, 1, 0] = ppart[:, :, 1]
    dphi[:, :, 1, 1] = ppart[:, :, 2]
    div = np.einsum("xc,mbc,nmxy->nby", _EPS_UP, _T_DYAD, dphi)
    return div.reshape(n, 4) @ _COVEC_INV.T


def _energy_batch(f_real: np.ndarray):
    """(T (N,4,4), metric traces (N,), rank-1 defects (N,)) from Im G comps."""
    Fm = TwoForm(f_real).as_matrix().real
    g = _G_DIAG
    Fmix = Fm * g[None, None, :]
    term1 = -np.einsum("nab,ncb->nac", Fmix, Fm)
    ff = np.einsum("nab,nab,a,b->n", Fm, Fm, g, g)
    T = term1 + 0.25 * ff[:, None, None] * SIGNATURE[None, :, :]
    traces = np.einsum("naa,a->n", T, g)
    eigs = np.linalg.eigvalsh(T)
    mags = np.sort(np.abs(eigs), axis=1)
    lead = mags[:, -1]
    defect = np.where(lead > 0, mags[:, -2] / np.where(lead > 0, lead, 1.0), 0.0)
    return T, traces, defect


def maxwell_residual(spec: NullFieldSpec, grid) -> FieldReport:
    """Worst-case scaled field-equation residual over a grid of events.

    Computes the four components of dG by forward-mode jets (closed-form
    families) or seeded central differences (graph family / user
    amplitudes), scaled by the largest derivative magnitude so the number
    is unit-free.  The same partial derivatives are re-assembled along the
    spinor divergence route and the two routes are required to agree; a
    disagreement means the conversion conventions were broken, not that
    the field fails Maxwell, hence the hard error.
    """
    xs = np.atleast_2d(np.asarray(grid, dtype=float))
    gval, gpart, _, ppart = _field_partials(spec, xs)
    comps = _exterior_components(gpart)
    raw = np.abs(comps).max()
    scale = np.abs(gpart).max()
    residual = 0.0 if raw == 0.0 else float(raw / scale)

    star = _dual_of_exterior(comps)
    div = _spinor_divergence(ppart)
    route_gap = np.abs(star - 1j * div).max()
    if route_gap > 1e-10 * max(scale, 1e-300):
        raise ValueError(
            f"tensor and spinor differentiation routes disagree "
            f"({route_gap:.3e} vs scale {scale:.3e})"
        )

    gmax = np.abs(gval).max()
    f2 = TwoForm(gval)
    star_vals = f2.components @ _S6.T
    sd = float(np.abs(star_vals - 1j * gval).max() / max(gmax, 1e-300))
    nullity = float(np.abs(f2.contraction(f2)).max() / max(gmax**2, 1e-300))
    _, _, defects = _energy_batch(gval.imag)
    return FieldReport(
        maxwell_residual=residual,
        self_duality_defect=sd,
        nullity_defect=nullity,
        energy_rank1_defect=float(defects.max()),
    )


def f_and_star_f(G: TwoForm) -> tuple[TwoForm, TwoForm]:
    """The real field F = Im G and its dual *F = Re G; *F + iF reconstructs G."""
    c = np.asarray(G.components)
    return TwoForm(c.imag.copy()), TwoForm(c.real.copy())


def energy_tensor(F: TwoForm) -> EnergyTensor:
    """Stress-energy of a real two-form, with the rank-one factor when null.

    For a null field T = k (x) k for a real null covector k (sign fixed by
    k_t >= 0); for generic F the factorization fails and k is None.
    """
    comps = np.asarray(F.components, dtype=complex)
    if np.abs(comps.imag).max() > 1e-12 * max(np.abs(comps.real).max(), 1e-300):
        raise ValueError("energy_tensor expects a real two-form")
    T, traces, defects = _energy_batch(comps.real[None, :])
    T, trace, defect = T[0], float(traces[0]), float(defects[0])
    eigvals, eigvecs = np.linalg.eigh(T)
    i = int(np.argmax(np.abs(eigvals)))
    k = None
    if eigvals[i] > 0 and defect < 1e-6:
        k = np.sqrt(eigvals[i]) * eigvecs[:, i]
        if k[0] < 0:
            k = -k
    return EnergyTensor(tensor=T, trace=trace, rank1_defect=defect, k=k)


def shear_from_field(spec: NullFieldSpec, xs) -> float:
    """Largest scaled shear of the congruence recovered from the field.

    Decomposes G at each event, factors the primed block as a repeated
    principal direction, re-gauges to (1, ratio) so the recovered spinor
    field is smooth, and runs the congruence shear analyzer on it.  A
    Maxwell-satisfying null field must come out shear-free.
    """
    from .congruence import shear_many

    xs = np.atleast_2d(np.asarray(xs, dtype=float))

    def ratio_for(pts: np.ndarray) -> np.ndarray:
        _, phi = _values_many(spec, pts)
        scale = np.abs(phi).max(axis=1)
        inv2 = 2.0 * (phi[:, 0] * phi[:, 2] - phi[:, 1] ** 2)
        bad = np.abs(inv2) > 1e-8 * np.maximum(scale, 1e-300) ** 2
        if np.any(bad):
            raise FactorizationError(
                "assembled field is not null: principal directions split"
            )
        out = np.empty(len(pts), dtype=complex)
        for i in range(len(pts)):
            o, iota = factor_symmetric(
                SymmetricSpinor2(phi[i], primed=True), repeated_tol=1e-6
            )
            a, b = o.components, iota.components
            if abs(a[0] * b[1] - a[1] * b[0]) > 1e-6 * max(
                np.abs(a).max() * np.abs(b).max(), 1e-300
            ):
                raise FactorizationError(
                    "assembled field is not null: principal directions split"
                )
            if abs(a[0]) < 1e-12 * np.abs(a).max():
                raise FactorizationError(
                    "recovered spinor hits the (1, ratio) gauge pole; shift the grid"
                )
            out[i] = a[1] / a[0]
        return out

    def recovered(t, x, y, z):
        pts = np.stack(
            [np.atleast_1d(np.asarray(c, dtype=float)) for c in (t, x, y, z)], axis=-1
        )
        r = ratio_for(pts)
        ones = np.ones_like(r)
        if np.ndim(t) == 0:
            return ones[0], r[0]
        return ones, r

    probe = CongruenceField.user(recovered, strategy="fd")
    report = shear_many(probe, xs)
    return float(np.abs(report["sigma_norm_scaled"]).max())
