"""Twistors for Minkowski space: incidence, the null quadric, the signature
(2,2) chart, and reconstruction of null geodesics and alpha-planes.

Component order is Z = (omega^0, omega^1, pi_0', pi_1'); see conventions.txt
for the chart map L4 and the distinguished chart point.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spinor import EPSILON, SQRT2, Event, Spinor2, matrix_to_vector, vector_to_matrix

__all__ = [
    "Twistor", "ChartPoint", "NullGeodesic",
    "CHART_MAP", "CHART_MAP_INV",
    "incident_twistor", "quadric_sigma", "chart_coords", "chart_raw",
    "geodesic_from_twistor", "alpha_plane", "twistor_from_chart",
    "ChartError", "GeodesicError",
]

_EPS = EPSILON.lower


class ChartError(ValueError):
    pass


class GeodesicError(ValueError):
    pass


@dataclass(frozen=True)
class Twistor:
    """Z = (omega, pi) with omega unprimed-upper and pi primed-lower."""

    omega: Spinor2
    pi: Spinor2

    def __post_init__(self):
        if self.omega.index_kind != "unprimed-upper":
            raise ValueError("omega must be unprimed-upper")
        if self.pi.index_kind != "primed-lower":
            raise ValueError("pi must be primed-lower")

    @classmethod
    def from_components(cls, z) -> "Twistor":
        z = np.asarray(z, dtype=complex)
        return cls(Spinor2(z[:2], "unprimed-upper"), Spinor2(z[2:], "primed-lower"))

    @property
    def components(self) -> np.ndarray:
        return np.concatenate([self.omega.components, self.pi.components])

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.components))


@dataclass(frozen=True)
class ChartPoint:
    """Affine chart coordinates (u, w, z) with v normalised to 1."""

    u: complex
    w: complex
    z: complex

    def rho(self) -> float:
        return 1.0 + abs(self.z) ** 2 - abs(self.u) ** 2 - abs(self.w) ** 2


@dataclass(frozen=True)
class NullGeodesic:
    """base + r * direction; direction is null, future-pointing, t-component 1."""

    base: Event
    direction: np.ndarray

    def point(self, r: float) -> np.ndarray:
        return self.base.coords + r * np.asarray(self.direction)


# chart map L4: (omega0, omega1, pi0', pi1') -> (u, w, z, v)
CHART_MAP = np.array(
    [
        [1j, 0, -1j, 0],
        [0, 1, 0, -1],
        [0, 1, 0, 1],
        [1, 0, 1, 0],
    ],
    dtype=complex,
) / SQRT2

CHART_MAP_INV = np.linalg.inv(CHART_MAP)


def incident_twistor(x: Event, pi: Spinor2) -> Twistor:
    """The twistor through the event x with primed direction spinor pi:
    omega^A = i x^{AA'} pi_A'."""
    if pi.index_kind != "primed-lower":
        raise ValueError("pi must be primed-lower")
    if np.linalg.norm(pi.components) == 0.0:
        raise ValueError("pi must be nonzero")
    omega = 1j * (x.matrix @ pi.components)
    return Twistor(Spinor2(omega, "unprimed-upper"), pi)


def incident_components(xs, pis) -> np.ndarray:
    """Batched incidence: xs (..., 4) real, pis (..., 2) complex -> (..., 4)."""
    m = vector_to_matrix(xs)
    omega = 1j * np.einsum("...ab,...b->...a", m, np.asarray(pis, dtype=complex))
    return np.concatenate([omega, np.broadcast_to(pis, omega.shape)], axis=-1)


def quadric_sigma(Z) -> float:
    """Sigma(Z) = omega^A conj(pi)_A + conj(omega)^{A'} pi_A'.

    Real-valued; zero exactly on twistors incident with real events.
    Homogeneous of degree 2 under Z -> cZ (scales by |c|^2).
    Accepts a Twistor or a component array (..., 4).
    """
    z = Z.components if isinstance(Z, Twistor) else np.asarray(Z, dtype=complex)
    pairing = z[..., 0] * np.conj(z[..., 2]) + z[..., 1] * np.conj(z[..., 3])
    return 2.0 * pairing.real


def chart_raw(Z) -> np.ndarray:
    """Pre-division chart coordinates (u, w, z, v) = L4 @ Z.  Accepts (..., 4)."""
    z = Z.components if isinstance(Z, Twistor) else np.asarray(Z, dtype=complex)
    return np.einsum("ij,...j->...i", CHART_MAP, z)


def chart_coords(Z) -> ChartPoint:
    """Affine chart point (u, w, z); errors where the chart does not cover."""
    z = Z.components if isinstance(Z, Twistor) else np.asarray(Z, dtype=complex)
    raw = chart_raw(z)
    norm = np.linalg.norm(z)
    if abs(raw[3]) < 1e-12 * norm:
        raise ChartError("chart undefined here")
    return ChartPoint(complex(raw[0] / raw[3]), complex(raw[1] / raw[3]), complex(raw[2] / raw[3]))


def twistor_from_chart(u: complex, w: complex, z: complex, v: complex = 1.0) -> Twistor:
    """Inverse chart map; (u, w, z) with v defaulting to the affine slice."""
    comp = CHART_MAP_INV @ np.array([u, w, z, v], dtype=complex)
    return Twistor.from_components(comp)


def _pairing_ia(z: np.ndarray) -> complex:
    """omega^A conj(pi)_A; equals i*a with a real exactly when Sigma(Z) = 0."""
    return z[0] * np.conj(z[2]) + z[1] * np.conj(z[3])


def geodesic_from_twistor(Z) -> NullGeodesic:
    """The real null geodesic of a null twistor.

    Writes omega^A conj(pi)_A = i a; the point of the geodesic closest to the
    origin is x0^{AA'} = omega^A conj(omega)^{A'} / a and the tangent is the
    dyad of pi raised and conjugated.  Errors: 'twistor not null' when
    Sigma(Z) is not ~0, 'geodesic through infinity' when a ~ 0.
    """
    z = Z.components if isinstance(Z, Twistor) else np.asarray(Z, dtype=complex)
    norm2 = float(np.linalg.norm(z)) ** 2
    if norm2 == 0.0 or abs(quadric_sigma(z)) > 1e-10 * norm2:
        raise GeodesicError("twistor not null")
    a = _pairing_ia(z).imag
    if abs(a) <= 1e-10 * norm2:
        raise GeodesicError("geodesic through infinity")
    omega = z[:2]
    x0 = np.outer(omega, np.conj(omega)) / a
    coords, is_real = matrix_to_vector(x0)
    base = Event(np.real(coords))
    pi_up = _EPS @ z[2:]                       # pi^{A'}
    direction_m = np.outer(np.conj(pi_up), pi_up)  # pi^A pi^{A'}, Hermitian
    d, _ = matrix_to_vector(direction_m)
    d = np.real(d)
    if d[0] <= 0:
        raise GeodesicError("twistor not null")
    return NullGeodesic(base, d / d[0])


def alpha_plane(Z, lam: Spinor2) -> np.ndarray:
    """A point of the alpha-plane of Z: x0 + lam^A pi^{A'} (complex coords).

    lam is unprimed-upper; sweeping lam sweeps the totally null 2-plane of
    complexified events incident with Z.
    """
    if lam.index_kind != "unprimed-upper":
        raise ValueError("lam must be unprimed-upper")
    z = Z.components if isinstance(Z, Twistor) else np.asarray(Z, dtype=complex)
    pi = z[2:]
    n2 = float(np.linalg.norm(pi)) ** 2
    if n2 == 0.0:
        raise GeodesicError("geodesic through infinity")
    x0 = -1j * np.outer(z[:2], np.conj(pi)) / n2   # particular solution of incidence
    pi_up = _EPS @ pi
    m = x0 + np.outer(lam.components, pi_up)
    coords, _ = matrix_to_vector(m)
    return coords
