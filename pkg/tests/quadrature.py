"""Quadrature oracle for the integral transforms (test-only)."""
import numpy as np
from scipy.integrate import quad


def _cquad(fn, **kw):
    re = quad(lambda s: fn(s).real, 0, 1, epsabs=1e-14, epsrel=1e-13, limit=200, **kw)[0]
    im = quad(lambda s: fn(s).imag, 0, 1, epsabs=1e-14, epsrel=1e-13, limit=200, **kw)[0]
    return re + 1j * im


def bernardi_quad(h, g, z, gamma):
    """``(gamma+1) int_0^1 s^(gamma-1) u(sz) ds`` applied to ``h`` and ``g`` separately."""
    def part(p):
        # u(sz)/s is a polynomial; the s^gamma factor goes into the weight
        body = lambda s: np.polyval(p[::-1][:-1], s * z) * z
        if gamma < 0:
            return (gamma + 1) * _cquad(body, weight="alg", wvar=(gamma, 0))
        return (gamma + 1) * _cquad(lambda s: s**gamma * body(s))
    return part(h) + np.conj(part(g))


def diffq_quad(h, g, z, delta):
    """``int_0^1 (u(sz) - u(delta s z)) / ((1 - delta) s) ds`` for ``h`` and ``g``."""
    def part(p):
        q = p[::-1][:-1]  # u(w)/w
        body = lambda s: (np.polyval(q, s * z) * z - np.polyval(q, delta * s * z) * delta * z) / (1 - delta)
        return _cquad(body)
    return part(h) + np.conj(part(g))
