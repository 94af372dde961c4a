"""Forward-mode dual numbers over the four real coordinates.

A Jet carries a complex value and its four partial derivatives with respect
to (t, x, y, z).  Values may be python/numpy scalars or numpy arrays of any
common shape, so the same arithmetic serves scalar evaluation and vectorised
grid sweeps.  Conjugation is a legal operation because differentiation is
with respect to real variables.

Jet2 adds a dense 4x4 Hessian and is used where second derivatives are
needed (the Levi matrix of the graph hypersurface).
"""
from __future__ import annotations

import numpy as np

__all__ = [
    "Jet", "jet_variables", "jet_constant",
    "jexp", "jlog", "jsqrt", "jconj", "jreal", "jimag", "jabs2",
    "Jet2", "jet2_variables",
    "j2exp", "j2log", "j2conj", "j2abs2",
]


def _zip4(f, a, b):
    return (f(a[0], b[0]), f(a[1], b[1]), f(a[2], b[2]), f(a[3], b[3]))


def _map4(f, a):
    return (f(a[0]), f(a[1]), f(a[2]), f(a[3]))


class Jet:
    """value + gradient over 4 real variables; closed under +,-,*,/,**."""

    __slots__ = ("v", "g")

    def __init__(self, v, g=(0.0, 0.0, 0.0, 0.0)):
        self.v = v
        self.g = tuple(g)

    def __repr__(self):
        return f"Jet({self.v!r}, grad={self.g!r})"

    def __add__(self, o):
        if isinstance(o, Jet):
            return Jet(self.v + o.v, _zip4(lambda a, b: a + b, self.g, o.g))
        return Jet(self.v + o, self.g)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.v, _map4(lambda a: -a, self.g))

    def __sub__(self, o):
        return self + (-o if isinstance(o, Jet) else -o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, Jet):
            sv, ov = self.v, o.v
            return Jet(sv * ov, _zip4(lambda a, b: a * ov + sv * b, self.g, o.g))
        return Jet(self.v * o, _map4(lambda a: a * o, self.g))

    __rmul__ = __mul__

    def recip(self):
        inv = 1.0 / self.v
        m = -inv * inv
        return Jet(inv, _map4(lambda a: a * m, self.g))

    def __truediv__(self, o):
        if isinstance(o, Jet):
            return self * o.recip()
        return self * (1.0 / o)

    def __rtruediv__(self, o):
        return self.recip() * o

    def __pow__(self, n):
        if isinstance(n, int):
            if n == 0:
                return Jet(self.v ** 0)
            if n < 0:
                return self.recip() ** (-n)
            out = self
            for _ in range(n - 1):
                out = out * self
            return out
        # fractional powers use the principal branch
        return jexp(jlog(self) * n)


def jet_constant(c) -> Jet:
    return Jet(c)


def jet_variables(coords):
    """Four coordinate Jets seeded with unit gradients: t, x, y, z."""
    t, x, y, z = coords[0], coords[1], coords[2], coords[3]
    return (
        Jet(t, (1.0, 0.0, 0.0, 0.0)),
        Jet(x, (0.0, 1.0, 0.0, 0.0)),
        Jet(y, (0.0, 0.0, 1.0, 0.0)),
        Jet(z, (0.0, 0.0, 0.0, 1.0)),
    )


def _chain(j: Jet, val, deriv) -> Jet:
    return Jet(val, _map4(lambda a: a * deriv, j.g))


def jexp(j: Jet) -> Jet:
    val = np.exp(j.v)
    return _chain(j, val, val)


def jlog(j: Jet) -> Jet:
    # principal branch
    return _chain(j, np.log(j.v), 1.0 / j.v)


def jsqrt(j: Jet) -> Jet:
    val = np.sqrt(j.v + 0j)
    return _chain(j, val, 0.5 / val)


def jconj(j: Jet) -> Jet:
    return Jet(np.conj(j.v), _map4(np.conj, j.g))


def jreal(j: Jet) -> Jet:
    return Jet(np.real(j.v), _map4(np.real, j.g))


def jimag(j: Jet) -> Jet:
    return Jet(np.imag(j.v), _map4(np.imag, j.g))


def jabs2(j: Jet) -> Jet:
    """|j|^2 = j * conj(j); real-valued, still differentiable."""
    return jreal(j * jconj(j))


# ---------------------------------------------------------------------------
# second order


class Jet2:
    """Scalar second-order jet: value, gradient (4,), Hessian (4, 4)."""

    __slots__ = ("v", "g", "h")

    def __init__(self, v, g=None, h=None):
        self.v = complex(v)
        self.g = np.zeros(4, dtype=complex) if g is None else np.asarray(g, dtype=complex)
        self.h = np.zeros((4, 4), dtype=complex) if h is None else np.asarray(h, dtype=complex)

    def __repr__(self):
        return f"Jet2({self.v!r})"

    def _lift(self, o):
        return o if isinstance(o, Jet2) else Jet2(o)

    def __add__(self, o):
        o = self._lift(o)
        return Jet2(self.v + o.v, self.g + o.g, self.h + o.h)

    __radd__ = __add__

    def __neg__(self):
        return Jet2(-self.v, -self.g, -self.h)

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = self._lift(o)
        cross = np.outer(self.g, o.g)
        return Jet2(
            self.v * o.v,
            self.v * o.g + o.v * self.g,
            self.v * o.h + o.v * self.h + cross + cross.T,
        )

    __rmul__ = __mul__

    def recip(self):
        inv = 1.0 / self.v
        g = -self.g * inv * inv
        outer = np.outer(self.g, self.g)
        h = (2.0 * inv ** 3) * outer - inv * inv * self.h
        return Jet2(inv, g, h)

    def __truediv__(self, o):
        o = self._lift(o)
        return self * o.recip()

    def __rtruediv__(self, o):
        return self.recip() * o


def jet2_variables(values):
    """Jet2 variables for an n<=4 tuple of real coordinates."""
    out = []
    for k, val in enumerate(values):
        g = np.zeros(4, dtype=complex)
        g[k] = 1.0
        out.append(Jet2(val, g))
    return tuple(out)


def _chain2(j: Jet2, f0, f1, f2) -> Jet2:
    """Compose a holomorphic scalar function with derivatives f1, f2 at j.v."""
    return Jet2(f0, f1 * j.g, f1 * j.h + f2 * np.outer(j.g, j.g))


def j2exp(j: Jet2) -> Jet2:
    val = np.exp(j.v)
    return _chain2(j, val, val, val)


def j2log(j: Jet2) -> Jet2:
    inv = 1.0 / j.v
    return _chain2(j, np.log(j.v), inv, -inv * inv)


def j2conj(j: Jet2) -> Jet2:
    return Jet2(np.conj(j.v), np.conj(j.g), np.conj(j.h))


def j2abs2(j: Jet2) -> Jet2:
    p = j * j2conj(j)
    return Jet2(p.v.real, p.g.real + 0j, p.h.real + 0j)
