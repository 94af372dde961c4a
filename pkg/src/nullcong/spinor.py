"""Two-component spinor calculus over Minkowski space.

All conventions (signature, symplectic form, dyad map, orientation) are
pinned in conventions.txt at the package root; the constants below are the
numeric form of that document.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "EPSILON", "Epsilon", "SIGNATURE", "SQRT2", "VEC_DYAD", "COVEC_DYAD",
    "Spinor2", "Event", "SymmetricSpinor2", "TwoForm",
    "raise_index", "lower_index", "conjugate",
    "vector_to_matrix", "matrix_to_vector", "event_from_null_spinor",
    "inner", "inner_eps",
    "factor_symmetric", "decompose_two_form", "recompose_two_form",
    "hodge_star", "hodge_star_tensor", "two_form_from_vectors",
    "FactorizationError",
]

SQRT2 = float(np.sqrt(2.0))

# metric diag(+1, -1, -1, -1), coordinate order (t, x, y, z)
SIGNATURE = np.diag([1.0, -1.0, -1.0, -1.0])

_EPS = np.array([[0.0, 1.0], [-1.0, 0.0]], dtype=complex)


@dataclass(frozen=True)
class Epsilon:
    """The fixed symplectic arrays; lower and upper agree, epsilon_01 = +1."""

    lower: np.ndarray = field(default_factory=lambda: _EPS.copy())
    upper: np.ndarray = field(default_factory=lambda: _EPS.copy())


EPSILON = Epsilon()

# vector dyad map S_mu: x^{AA'} = sum_mu x^mu S_mu, rows A, columns A'
VEC_DYAD = np.array(
    [
        [[1, 0], [0, 1]],     # t
        [[0, 1], [1, 0]],     # x
        [[0, 1j], [-1j, 0]],  # y
        [[1, 0], [0, -1]],    # z
    ],
    dtype=complex,
) / SQRT2

# covector / derivative map: k_{AA'} = sum_mu k_mu conj(S_mu)
COVEC_DYAD = VEC_DYAD.conj()

_UNPRIMED = {"unprimed-upper", "unprimed-lower"}
_PRIMED = {"primed-upper", "primed-lower"}
_KINDS = _UNPRIMED | _PRIMED


class FactorizationError(ValueError):
    pass


@dataclass(frozen=True)
class Spinor2:
    """A two-component spinor with explicit index kind.

    index_kind is one of 'unprimed-upper', 'unprimed-lower',
    'primed-upper', 'primed-lower'.
    """

    components: np.ndarray
    index_kind: str

    def __post_init__(self):
        object.__setattr__(self, "components", np.asarray(self.components, dtype=complex))
        if self.components.shape != (2,):
            raise ValueError("Spinor2 needs exactly two components")
        if self.index_kind not in _KINDS:
            raise ValueError(f"unknown index kind {self.index_kind!r}")

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.components))


def raise_index(s: Spinor2) -> Spinor2:
    """xi^A = epsilon^{AB} xi_B: (a, b) -> (b, -a)."""
    if not s.index_kind.endswith("lower"):
        raise ValueError("can only raise a lower index")
    return Spinor2(_EPS @ s.components, s.index_kind.replace("lower", "upper"))


def lower_index(s: Spinor2) -> Spinor2:
    """xi_B = xi^A epsilon_{AB}: (p, q) -> (-q, p)."""
    if not s.index_kind.endswith("upper"):
        raise ValueError("can only lower an upper index")
    return Spinor2(s.components @ _EPS, s.index_kind.replace("upper", "lower"))


def conjugate(s: Spinor2) -> Spinor2:
    """Conjugation swaps primed and unprimed type, keeping index position."""
    kind = s.index_kind
    kind = kind.replace("unprimed", "#") if kind.startswith("unprimed") else kind.replace("primed", "unprimed")
    kind = kind.replace("#", "primed")
    return Spinor2(np.conj(s.components), kind)


@dataclass(frozen=True)
class Event:
    """A real Minkowski event in coordinates (t, x, y, z)."""

    coords: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coords", np.asarray(self.coords, dtype=float))
        if self.coords.shape != (4,):
            raise ValueError("Event needs four real coordinates")

    @property
    def matrix(self) -> np.ndarray:
        return vector_to_matrix(self.coords)


def vector_to_matrix(v) -> np.ndarray:
    """x^{AA'} = (1/sqrt2) [[t+z, x+iy], [x-iy, t-z]].  Accepts (..., 4)."""
    v = np.asarray(v)
    return np.einsum("...m,mab->...ab", v, VEC_DYAD)


def matrix_to_vector(m) -> tuple[np.ndarray, bool]:
    """Inverse dyad map.  Returns (coords, is_real).

    A Hermitian input gives real coordinates; a non-Hermitian input gives
    complexified coordinates flagged is_real=False (not an error).
    """
    m = np.asarray(m, dtype=complex)
    t = (m[..., 0, 0] + m[..., 1, 1]) / SQRT2
    z = (m[..., 0, 0] - m[..., 1, 1]) / SQRT2
    x = (m[..., 0, 1] + m[..., 1, 0]) / SQRT2
    y = (m[..., 0, 1] - m[..., 1, 0]) / (1j * SQRT2)
    coords = np.stack([t, x, y, z], axis=-1)
    scale = float(np.max(np.abs(m))) or 1.0
    is_real = bool(np.max(np.abs(coords.imag)) <= 1e-12 * scale)
    if is_real:
        coords = coords.real
    return coords, is_real


def event_from_null_spinor(o: Spinor2) -> np.ndarray:
    """Real null future-pointing vector o^A conj(o)^{A'} from an unprimed-upper spinor."""
    if o.index_kind != "unprimed-upper":
        raise ValueError("expected an unprimed-upper spinor")
    m = np.outer(o.components, np.conj(o.components))
    coords, _ = matrix_to_vector(m)
    return coords.real


def inner(v, w) -> np.ndarray:
    """Minkowski inner product, signature (+,-,-,-).  Accepts (..., 4)."""
    v = np.asarray(v)
    w = np.asarray(w)
    return (v * w * np.array([1.0, -1.0, -1.0, -1.0])).sum(axis=-1)


def inner_eps(v, w) -> np.ndarray:
    """The same product via epsilon_{AB} epsilon_{A'B'} v^{AA'} w^{BB'}."""
    mv = vector_to_matrix(v)
    mw = vector_to_matrix(w)
    return np.einsum("AB,ab,...Aa,...Bb->...", _EPS, _EPS, mv, mw)


@dataclass(frozen=True)
class SymmetricSpinor2:
    """Symmetric rank-2 spinor phi_{AB} (or primed), stored as (phi00, phi01, phi11)."""

    components: np.ndarray
    primed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "components", np.asarray(self.components, dtype=complex))
        if self.components.shape[-1] != 3:
            raise ValueError("SymmetricSpinor2 stores (phi00, phi01, phi11)")

    @classmethod
    def from_pair(cls, a, b, primed=False) -> "SymmetricSpinor2":
        """Symmetrised outer product a_(A b_B).  Accepts (..., 2)."""
        a = np.asarray(a, dtype=complex)
        b = np.asarray(b, dtype=complex)
        return cls(
            np.stack(
                [
                    a[..., 0] * b[..., 0],
                    0.5 * (a[..., 0] * b[..., 1] + a[..., 1] * b[..., 0]),
                    a[..., 1] * b[..., 1],
                ],
                axis=-1,
            ),
            primed=primed,
        )

    def as_matrix(self) -> np.ndarray:
        c = self.components
        m = np.empty(c.shape[:-1] + (2, 2), dtype=complex)
        m[..., 0, 0] = c[..., 0]
        m[..., 0, 1] = c[..., 1]
        m[..., 1, 0] = c[..., 1]
        m[..., 1, 1] = c[..., 2]
        return m

    def invariant(self) -> complex:
        """phi_{AB} phi^{AB} = 2 (phi00 phi11 - phi01^2)."""
        c = self.components
        return 2.0 * (c[..., 0] * c[..., 2] - c[..., 1] ** 2)


def _phase_normalize(v: np.ndarray) -> np.ndarray:
    """Scale so the larger-magnitude component is real positive, unit modulus."""
    i = int(np.argmax(np.abs(v)))
    return v / v[i]


def factor_symmetric(phi: SymmetricSpinor2, repeated_tol: float = 1e-12):
    """Principal factorisation phi_{AB} = o_(A iota_B).

    The two principal directions are the roots of the quadratic
    phi00 - 2 zeta phi01 + zeta^2 phi11 in the component ratio zeta; a
    vanishing leading coefficient is treated as a root at infinity with
    factor (1, 0).  Directions are phase-normalised so their larger-magnitude
    component is real positive, then a residual complex scale is split evenly
    between the two factors (principal square root) so that the symmetrised
    product reconstructs phi exactly.  Roots closer than
    repeated_tol * coefficient scale are collapsed to a repeated direction.
    """
    c = phi.components
    scale = float(np.max(np.abs(c)))
    if scale == 0.0:
        raise FactorizationError("zero spinor has no principal directions")
    A, B, C = c[2], -2.0 * c[1], c[0]  # A zeta^2 + B zeta + C
    roots = []
    if abs(A) <= repeated_tol * scale:
        roots.append(None)  # infinity -> direction (1, 0)
        if abs(B) <= repeated_tol * scale:
            roots.append(None)
        else:
            roots.append(-C / B)
    else:
        disc = B * B - 4.0 * A * C
        if abs(disc) <= (repeated_tol * scale) ** 2:
            roots = [(-B / (2.0 * A))] * 2
        else:
            sq = np.sqrt(disc + 0j)
            if (np.conj(B) * sq).real > 0:
                sq = -sq
            q = (-B + sq) / 2.0
            roots = [q / A, C / q if abs(q) > 0 else -B / (2.0 * A)]

    dirs = []
    for r in roots:
        d = np.array([1.0, 0.0], dtype=complex) if r is None else np.array([r, 1.0], dtype=complex)
        dirs.append(_phase_normalize(d))
    # deterministic ordering of the two directions
    dirs.sort(key=lambda d: (round(d[0].real, 9), round(d[0].imag, 9), round(d[1].real, 9)))
    o_hat, i_hat = dirs

    probe = SymmetricSpinor2.from_pair(o_hat, i_hat, primed=phi.primed).components
    j = int(np.argmax(np.abs(probe)))
    if abs(probe[j]) <= 1e-15 * scale:
        raise FactorizationError("zero spinor has no principal directions")
    s = np.sqrt(c[j] / probe[j] + 0j)
    o = Spinor2(s * o_hat, "primed-lower" if phi.primed else "unprimed-lower")
    iota = Spinor2(s * i_hat, o.index_kind)
    return o, iota


# ---------------------------------------------------------------------------
# two-forms

_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


@dataclass(frozen=True)
class TwoForm:
    """Complex 2-form; six components ordered (tx, ty, tz, xy, xz, yz)."""

    components: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "components", np.asarray(self.components, dtype=complex))
        if self.components.shape[-1] != 6:
            raise ValueError("TwoForm stores six components")

    def as_matrix(self) -> np.ndarray:
        """Antisymmetric matrix F_{mu nu} (lower indices)."""
        c = self.components
        m = np.zeros(c.shape[:-1] + (4, 4), dtype=complex)
        for k, (i, j) in enumerate(_PAIRS):
            m[..., i, j] = c[..., k]
            m[..., j, i] = -c[..., k]
        return m

    @classmethod
    def from_matrix(cls, m) -> "TwoForm":
        m = np.asarray(m, dtype=complex)
        return cls(np.stack([m[..., i, j] for i, j in _PAIRS], axis=-1))

    def contraction(self, other: "TwoForm") -> complex:
        """F_{ab} H^{ab}, indices raised with the metric."""
        f = self.as_matrix()
        h = other.as_matrix()
        g = np.array([1.0, -1.0, -1.0, -1.0])
        return np.einsum("...ab,...ab,a,b->...", f, h, g, g)


def two_form_from_vectors(v1, v2) -> TwoForm:
    """(v1 wedge v2) lowered: F_{mu nu} = v1_mu v2_nu - v1_nu v2_mu."""
    g = np.array([1.0, -1.0, -1.0, -1.0])
    a = np.asarray(v1) * g
    b = np.asarray(v2) * g
    return TwoForm.from_matrix(np.einsum("...a,...b->...ab", a, b) - np.einsum("...a,...b->...ab", b, a))


def _spinor_blocks(F: TwoForm):
    """F_{AA'BB'} from coordinate components, then the two symmetric blocks."""
    m = F.as_matrix()
    fs = np.einsum("...mn,mAa,nBb->...AaBb", m, COVEC_DYAD, COVEC_DYAD)
    alpha = 0.5 * np.einsum("...AaBb,ab->...AB", fs, _EPS)
    beta = 0.5 * np.einsum("...AaBb,AB->...ab", fs, _EPS)
    return alpha, beta


def decompose_two_form(F: TwoForm):
    """F_{AA'BB'} = alpha_{AB} eps_{A'B'} + eps_{AB} beta_{A'B'}.

    Returns (alpha, beta) as SymmetricSpinor2 (unprimed, primed).  For a real
    two-form beta is the componentwise conjugate of alpha.
    """
    alpha, beta = _spinor_blocks(F)
    a = SymmetricSpinor2(np.stack([alpha[..., 0, 0], alpha[..., 0, 1], alpha[..., 1, 1]], axis=-1))
    b = SymmetricSpinor2(np.stack([beta[..., 0, 0], beta[..., 0, 1], beta[..., 1, 1]], axis=-1), primed=True)
    return a, b


def recompose_two_form(alpha: SymmetricSpinor2, beta: SymmetricSpinor2) -> TwoForm:
    """Inverse of decompose_two_form."""
    am = alpha.as_matrix()
    bm = beta.as_matrix()
    fs = np.einsum("...AB,ab->...AaBb", am, _EPS) + np.einsum("AB,...ab->...AaBb", _EPS, bm)
    m = np.einsum("...AaBb,mAa,nBb->...mn", fs, VEC_DYAD, VEC_DYAD)
    return TwoForm.from_matrix(m)


def hodge_star(F: TwoForm) -> TwoForm:
    """Spinor-route Hodge star: alpha block -> -i alpha, beta block -> +i beta."""
    alpha, beta = decompose_two_form(F)
    return recompose_two_form(
        SymmetricSpinor2(-1j * alpha.components),
        SymmetricSpinor2(1j * beta.components, primed=True),
    )


def _levi_civita() -> np.ndarray:
    e = np.zeros((4, 4, 4, 4))
    from itertools import permutations

    def sign(p):
        s = 1
        p = list(p)
        for i in range(4):
            for j in range(i + 1, 4):
                if p[i] > p[j]:
                    s = -s
        return s

    for p in permutations(range(4)):
        e[p] = sign(p)
    return e


_LEVI = _levi_civita()  # epsilon_{txyz} = +1
_G_DIAG = np.array([1.0, -1.0, -1.0, -1.0])
# epsilon_{mu nu}^{rho sigma}
_LEVI_UPUP = np.einsum("mnab,a,b->mnab", _LEVI, _G_DIAG, _G_DIAG)


def hodge_star_tensor(F: TwoForm) -> TwoForm:
    """Component route: (*F)_{mn} = (1/2) epsilon_{mn}^{rs} F_{rs}."""
    m = F.as_matrix()
    return TwoForm.from_matrix(0.5 * np.einsum("mnrs,...rs->...mn", _LEVI_UPUP, m))
