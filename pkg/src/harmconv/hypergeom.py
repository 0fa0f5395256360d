"""Gaussian hypergeometric machinery and the hypergeometric membership criteria.

Every criterion is an infinite positive series whose terms are a kernel weight
times a hypergeometric term ``t_k = (a)_k (b)_k / ((c)_k k!)``.  At ``z = 1``
such series converge only algebraically (``t_k ~ k^(a+b-c-1)``), so plain
partial sums are useless near ``c - a - b = 0``.  :func:`sum_terms` sums a
head directly, estimates the full sum with a Levin u-transform carried out in
extended precision, and bounds the remainder from the local decay exponent of
the terms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import mpmath as mp
import numpy as np

from .kernels import KernelPair, default_horizon, require_valid
from .series import Convention, HarmonicSeries

__all__ = [
    "HyperParams",
    "DivergenceError",
    "SeriesSum",
    "CriterionReport",
    "pochhammer",
    "hyper_term",
    "F_partial",
    "gauss_sum",
    "hyp_sum_at_one",
    "abel_limit",
    "sum_terms",
    "build_phi_pair",
    "build_psi_pair",
    "phi_harmonic",
    "phi_th",
    "psi_harmonic",
    "psi_th",
    "criterion_phi",
    "criterion_psi",
    "product_condition_phi",
    "product_condition_psi",
    "tu_phi_condition",
]

_DPS = 60


class DivergenceError(ValueError):
    """Raised when a criterion series does not converge."""


@dataclass(frozen=True)
class HyperParams:
    a: float
    b: float
    c: float

    def __post_init__(self):
        for name in ("a", "b", "c"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)}")

    @property
    def excess(self) -> float:
        """``c - a - b``; Gauss summation needs it positive."""
        return self.c - self.a - self.b

    def as_tuple(self):
        return (self.a, self.b, self.c)


def _params(p) -> HyperParams:
    return p if isinstance(p, HyperParams) else HyperParams(*p)


def pochhammer(theta: float, n: int) -> float:
    """Rising factorial ``theta (theta+1) ... (theta+n-1)``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    out = 1.0
    for k in range(n):
        out *= theta + k
    return out


def hyper_term(p: HyperParams, k: int) -> float:
    """``(a)_k (b)_k / ((c)_k (1)_k)`` by running product of the term ratio."""
    t = 1.0
    for m in range(k):
        t *= (p.a + m) * (p.b + m) / ((p.c + m) * (m + 1))
    return t


def _hyper_terms(p: HyperParams, count: int) -> np.ndarray:
    """``t_0 .. t_{count-1}`` as a float array."""
    m = np.arange(count - 1, dtype=float)
    ratios = (p.a + m) * (p.b + m) / ((p.c + m) * (m + 1))
    return np.concatenate(([1.0], np.cumprod(ratios)))


def F_partial(p, z, N: int):
    """``sum_{n=0}^{N} t_n z^n``."""
    p = _params(p)
    t = _hyper_terms(p, N + 1)
    if np.ndim(z) == 0:
        z = complex(z)
        if abs(z) >= 1:
            raise ValueError("|z| must be < 1")
        powers = z ** np.arange(N + 1)
        return complex(np.sum(t * powers))
    z = np.asarray(z, dtype=complex)
    return np.polynomial.polynomial.polyval(z, t)


def gauss_sum(p) -> float:
    """``F(a,b,c;1) = Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b))``."""
    p = _params(p)
    s = p.excess
    if not s > 0:
        raise ValueError(f"c - a - b = {s} <= 0: the series diverges at z = 1")
    lg = math.lgamma
    return math.exp(lg(p.c) + lg(s) - lg(p.c - p.a) - lg(p.c - p.b))


# -- summation engine ---------------------------------------------------------


@dataclass(frozen=True)
class SeriesSum:
    value: float  # estimate of the full sum
    partial: float  # exact sum of the terms with index <= terms_used
    tail_bound: float  # bound on the remainder after terms_used
    terms_used: int
    error_estimate: float  # uncertainty of ``value``


class _Base:
    """``t_{n-shift}(p) / n^div`` for ``n >= start``, evaluated in mpmath."""

    def __init__(self, p: HyperParams, shift: int, div: int):
        self.a, self.b, self.c = (mp.mpf(x) for x in p.as_tuple())
        self.shift = shift
        self.div = div

    def at(self, n: int):
        k = n - self.shift
        t = mp.mpf(1)
        for m in range(k):
            t *= (self.a + m) * (self.b + m) / ((self.c + m) * (m + 1))
        return t / mp.mpf(n) ** self.div

    def ratio(self, n):
        """``base(n+1) / base(n)``."""
        k = n - self.shift
        r = (self.a + k) * (self.b + k) / ((self.c + k) * (k + 1))
        if self.div:
            r *= (mp.mpf(n) / (n + 1)) ** self.div
        return r


def _levin_u(partials, terms, beta):
    """Levin u-transform of all supplied partial sums (mpmath numbers)."""
    k = len(partials) - 1
    num = mp.mpf(0)
    den = mp.mpf(0)
    for jj in range(k + 1):
        w = mp.binomial(k, jj) * ((beta + jj) / (beta + k)) ** (k - 1) / ((beta + jj) * terms[jj])
        if jj % 2:
            w = -w
        num += w * partials[jj]
        den += w
    return num / den


def sum_terms(
    base: _Base,
    weight: Callable,
    start: int,
    *,
    head: Optional[int] = None,
    min_head: int = 64,
    max_levin: int = 60,
) -> SeriesSum:
    """Sum ``weight(n) * base(n)`` over ``n >= start``.

    ``head`` fixes the index up to which the partial sum (and hence
    ``terms_used``) runs; by default it is ``max(start + min_head, ...)``.
    """
    with mp.workdps(_DPS):

        def ratio(n):
            w0 = weight(mp.mpf(n))
            if w0 == 0:
                return mp.mpf(0)
            return weight(mp.mpf(n + 1)) / w0 * base.ratio(n)

        def local_exponent(n):
            r = ratio(n)
            if r <= 0:
                return mp.inf
            return -mp.log(r) / mp.log1p(mp.mpf(1) / n)

        if ratio(10**5) >= 1 or local_exponent(10**12) <= 1 + mp.mpf("1e-6"):
            raise DivergenceError("criterion series diverges (terms decay no faster than 1/n)")

        last = head if head is not None else start + min_head - 1
        n_terms = max(last, start + max_levin) - start + 1
        terms = []
        t = base.at(start)
        for idx in range(n_terms):
            n = start + idx
            terms.append(weight(mp.mpf(n)) * t)
            t = t * base.ratio(n)
        partials = []
        acc = mp.mpf(0)
        for x in terms:
            acc += x
            partials.append(acc)
        partial = partials[last - start] if last >= start else mp.mpf(0)

        if all(x == 0 for x in terms[-8:]):
            # weight vanishes identically on the tail (finite support)
            total, err = partials[-1], mp.mpf(0)
        else:
            beta = mp.mpf(start + 1)
            estimates = []
            for k in range(8, max_levin + 1, 2):
                try:
                    estimates.append(_levin_u(partials[: k + 1], terms[: k + 1], beta))
                except ZeroDivisionError:
                    break
            if len(estimates) >= 2:
                diffs = [abs(estimates[i] - estimates[i - 1]) for i in range(1, len(estimates))]
                best = int(np.argmin([float(d) for d in diffs])) + 1
                total, err = estimates[best], diffs[best - 1]
            else:
                total, err = partials[-1], mp.inf

        # remainder bound from the smallest sampled local decay exponent
        n_last = max(last, start)
        t_last = terms[n_last - start]
        if t_last == 0:
            bound = mp.mpf(0)
        else:
            samples = [n_last * 10**e for e in range(0, 13)]
            rho = min(local_exponent(m) for m in samples)
            bound = t_last * n_last / (rho - 1) if rho > 1 else mp.inf
        tail_est = total - partial
        bound = max(bound, tail_est + err)

        return SeriesSum(
            value=float(total),
            partial=float(partial),
            tail_bound=float(bound),
            terms_used=int(last),
            error_estimate=float(max(err, abs(total) * mp.mpf(2) ** -52)),
        )


def hyp_sum_at_one(p, head: Optional[int] = None) -> SeriesSum:
    """``F(a,b,c;1)`` summed from its terms alone (no gamma functions)."""
    p = _params(p)
    if not p.excess > 0:
        raise DivergenceError(f"c - a - b = {p.excess} <= 0")
    return sum_terms(_Base(p, shift=0, div=0), lambda n: 1, 0, head=head)


def abel_limit(p, eps: float = 1e-6, chunk: int = 1 << 20) -> float:
    """``F(a,b,c; 1 - eps)`` by direct summation, a diagnostic for ``F(a,b,c;1)``.

    The gap to ``F(a,b,c;1)`` scales like ``eps^min(1, c-a-b)``.
    """
    p = _params(p)
    x = 1.0 - eps
    n_max = int(math.ceil(45.0 / eps)) + 1000
    total = 0.0
    t0, n0 = 1.0, 0
    while n0 < n_max:
        m = np.arange(n0, n0 + chunk, dtype=float)
        ratios = (p.a + m) * (p.b + m) / ((p.c + m) * (m + 1)) * x
        block = t0 * np.concatenate(([1.0], np.cumprod(ratios[:-1])))
        total += float(block.sum())
        t0 = float(block[-1] * ratios[-1])
        n0 += chunk
        if t0 < 1e-18 * total:
            break
    return total


# -- series built from hypergeometric functions ------------------------------


def build_phi_pair(p1, p2, order: int):
    """Coefficient arrays (index = power) of ``phi1 = z F(p1; z)`` and ``phi2 = F(p2; z) - 1``."""
    p1, p2 = _params(p1), _params(p2)
    t1 = _hyper_terms(p1, order)
    t2 = _hyper_terms(p2, order + 1)
    phi1 = np.zeros(order + 1)
    phi1[1:] = t1
    phi2 = t2.copy()
    phi2[0] = 0.0
    return phi1, phi2


def build_psi_pair(p1, p2, order: int):
    """Coefficient arrays of ``psi1 = int_0^z F(p1; t) dt`` and ``psi2 = int_0^z (F(p2; t) - 1) dt``."""
    p1, p2 = _params(p1), _params(p2)
    n = np.arange(1, order + 1, dtype=float)
    psi1 = np.zeros(order + 1)
    psi1[1:] = _hyper_terms(p1, order) / n
    psi2 = np.zeros(order + 1)
    psi2[2:] = _hyper_terms(p2, order)[1:] / n[1:]
    return psi1, psi2


def phi_harmonic(p1, p2, order: int) -> HarmonicSeries:
    phi1, phi2 = build_phi_pair(p1, p2, order)
    return HarmonicSeries(order, phi1[2:], phi2[1:], Convention.GENERAL)


def phi_th(p1, p2, order: int) -> HarmonicSeries:
    """``2z - phi1(z) + conj(phi2(z))`` as a TH series."""
    phi1, phi2 = build_phi_pair(p1, p2, order)
    return HarmonicSeries(order, phi1[2:], phi2[1:], Convention.TH)


def psi_harmonic(p1, p2, order: int) -> HarmonicSeries:
    psi1, psi2 = build_psi_pair(p1, p2, order)
    return HarmonicSeries(order, psi1[2:], psi2[1:], Convention.GENERAL)


def psi_th(p1, p2, order: int) -> HarmonicSeries:
    """``2z - psi1(z) + conj(psi2(z))`` as a TH series."""
    psi1, psi2 = build_psi_pair(p1, p2, order)
    return HarmonicSeries(order, psi1[2:], psi2[1:], Convention.TH)


# -- criteria -------------------------------------------------------------------


@dataclass(frozen=True)
class CriterionReport:
    lhs: float
    tail_bound: float
    threshold: float
    verdict: bool
    terms_used: int
    partial: float = float("nan")
    error_estimate: float = 0.0

    def to_dict(self) -> dict:
        return {
            "lhs": self.lhs,
            "tail_bound": self.tail_bound,
            "threshold": self.threshold,
            "verdict": self.verdict,
            "terms_used": self.terms_used,
            "partial": self.partial,
            "error_estimate": self.error_estimate,
        }


def _combine(parts, threshold=1.0) -> CriterionReport:
    lhs = sum(s.value for s in parts)
    return CriterionReport(
        lhs=lhs,
        tail_bound=sum(s.tail_bound for s in parts),
        threshold=threshold,
        verdict=lhs <= threshold + 1e-12,
        terms_used=max(s.terms_used for s in parts),
        partial=sum(s.partial for s in parts),
        error_estimate=sum(s.error_estimate for s in parts),
    )


def _criterion(k: KernelPair, analytic: _Base, coanalytic: Optional[_Base], b_start: int, max_terms):
    require_valid(k, default_horizon(max_terms or 64))
    parts = [sum_terms(analytic, k.weight_A, 2, head=max_terms)]
    if coanalytic is not None:
        parts.append(sum_terms(coanalytic, k.weight_B, b_start, head=max_terms))
    return _combine(parts)


def criterion_phi(p1, p2, k: KernelPair, max_terms: Optional[int] = None) -> CriterionReport:
    """Coefficient condition for ``phi1 + conj(phi2)`` (sufficient) and for
    ``2z - phi1 + conj(phi2)`` (exact).  ``p2=None`` drops the co-analytic part.
    """
    p1 = _params(p1)
    co = _Base(_params(p2), shift=0, div=0) if p2 is not None else None
    return _criterion(k, _Base(p1, shift=1, div=0), co, 1, max_terms)


def criterion_psi(p1, p2, k: KernelPair, max_terms: Optional[int] = None) -> CriterionReport:
    """Same for ``psi1 + conj(psi2)``; both sums start at ``n = 2``."""
    p1 = _params(p1)
    co = _Base(_params(p2), shift=1, div=1) if p2 is not None else None
    return _criterion(k, _Base(p1, shift=1, div=1), co, 2, max_terms)


def _closed_pair(p1, p2):
    p1, p2 = _params(p1), _params(p2)
    for p in (p1, p2):
        if not p.excess > 0:
            raise ValueError(f"need c > a + b, got {p.as_tuple()}")
    return gauss_sum(p1) + gauss_sum(p2)


def product_condition_phi(p1, p2):
    """``F(p1;1) + F(p2;1) <= 3`` keeps ``f hat* (2z - phi1 + conj(phi2))`` in the class."""
    total = _closed_pair(p1, p2)
    return total, total <= 3 + 1e-12


def product_condition_psi(p1, p2):
    """``F(p1;1) + F(p2;1) <= 4`` for the integrated pair."""
    total = _closed_pair(p1, p2)
    return total, total <= 4 + 1e-12


def tu_phi_condition(p1, p2, alpha: float):
    """``2z - phi1 + conj(phi2)`` lies in ``TU_H(alpha)`` iff the sum is ``<= 3 - alpha``."""
    if not 0 <= alpha < 1:
        raise ValueError("alpha must lie in [0, 1)")
    total = _closed_pair(p1, p2)
    return total, total <= 3 - alpha + 1e-12
