"""Integral transforms acting as diagonal coefficient multipliers.

``L_gamma`` (Bernardi type) multiplies the ``n``-th coefficient of both
``h`` and ``g`` by ``(gamma + 1) / (gamma + n)``; ``G_delta`` (difference
quotient) multiplies it by ``(1 - delta^n) / ((1 - delta) n)``.  Both are
``hat*`` products with a fixed TH series, which is what :func:`as_hat_kernel`
materializes.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .series import Convention, HarmonicSeries

__all__ = ["MultiplierSequence", "bernardi", "difference_quotient", "apply", "L_gamma", "G_delta", "as_hat_kernel"]


@dataclass(frozen=True)
class MultiplierSequence:
    label: str
    m: Callable[[int], float]

    def __call__(self, n: int) -> float:
        return self.m(n)

    def values(self, order: int) -> np.ndarray:
        """Multipliers for ``n = 1..order``."""
        return np.array([self.m(n) for n in range(1, order + 1)], dtype=float)


def bernardi(gamma: float) -> MultiplierSequence:
    if not gamma > -1:
        raise ValueError(f"gamma must be > -1, got {gamma}")
    return MultiplierSequence(f"L[gamma={gamma}]", lambda n: (gamma + 1) / (gamma + n))


def difference_quotient(delta: float) -> MultiplierSequence:
    if not -1 <= delta < 1:
        raise ValueError(f"delta must lie in [-1, 1), got {delta}")

    def m(n):
        power = 1.0
        for _ in range(n):
            power *= delta
        return (1 - power) / ((1 - delta) * n)

    return MultiplierSequence(f"G[delta={delta}]", m)


def apply(f: HarmonicSeries, t: MultiplierSequence) -> HarmonicSeries:
    """Multiply the ``n``-th analytic and co-analytic coefficients by ``t(n)``."""
    m = t.values(f.order)
    if np.any(m < 0) and f.is_th:
        raise ValueError("negative multipliers would leave the TH convention")
    return HarmonicSeries(f.order, f.analytic * m[1:], f.coanalytic * m, f.convention)


def L_gamma(f: HarmonicSeries, gamma: float) -> HarmonicSeries:
    return apply(f, bernardi(gamma))


def G_delta(f: HarmonicSeries, delta: float) -> HarmonicSeries:
    return apply(f, difference_quotient(delta))


def as_hat_kernel(t: MultiplierSequence, order: int) -> HarmonicSeries:
    """TH series ``z - sum t(n) z^n + sum t(n) conj(z)^n`` so that ``f hat* K = apply(f, t)``."""
    if order < 1:
        raise ValueError("order must be >= 1")
    m = t.values(order)
    return HarmonicSeries(order, m[1:], m, Convention.TH)
