"""Coefficient criteria for ``TH(Phi_i, Psi_j; alpha)`` and their consequences.

For a TH series ``f = z - sum A_n z^n + sum B_n conj(z)^n`` the class is
governed by the linear functional

    lhs(f) = sum_{n>=2} sigma_n A_n / (1 - alpha) + sum_{n>=1} Gamma_n B_n / (1 - alpha)

and most results here (bounds, extreme points, closure laws) are read off
from it.
"""
from __future__ import annotations

import enum
from dataclasses import asdict, dataclass, field
from typing import List, Sequence

import numpy as np

from .kernels import KernelName, KernelPair, require_valid
from .series import Convention, HarmonicSeries, hat_product

__all__ = [
    "MEMBERSHIP_TOL",
    "Term",
    "MembershipReport",
    "GrowthBounds",
    "ExtremeDecomposition",
    "condition_lhs",
    "sufficient_condition",
    "coefficient_bounds",
    "growth_and_covering",
    "extreme_point",
    "decompose",
    "reconstruct",
    "convex_combination",
    "hat_product_membership",
    "weighted_coefficient_sum",
    "remark22_starlike_certificate",
    "tu_inclusion_order",
    "convex_to_starlike_order",
    "lemma32_orders",
    "class_radii",
    "random_member",
]

MEMBERSHIP_TOL = 1e-12


@dataclass(frozen=True)
class Term:
    part: str  # "A" or "B"
    n: int
    weight: float
    coefficient: float
    product: float


@dataclass(frozen=True)
class MembershipReport:
    lhs: float
    margin: float
    verdict: bool
    terms: List[Term] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "lhs": self.lhs,
            "margin": self.margin,
            "verdict": self.verdict,
            "terms": [asdict(t) for t in self.terms],
        }


def _report(terms: List[Term]) -> MembershipReport:
    lhs = float(sum(t.product for t in terms))
    return MembershipReport(lhs, 1.0 - lhs, lhs <= 1.0 + MEMBERSHIP_TOL, terms)


def _terms(f: HarmonicSeries, k: KernelPair, magnitudes) -> List[Term]:
    terms = []
    for n in range(2, f.order + 1):
        c = magnitudes(f.analytic[n - 2])
        if c != 0:
            w = k.weight_A(n)
            terms.append(Term("A", n, w, c, w * c))
    for n in range(1, f.order + 1):
        c = magnitudes(f.coanalytic[n - 1])
        if c != 0:
            w = k.weight_B(n)
            terms.append(Term("B", n, w, c, w * c))
    return terms


def condition_lhs(f: HarmonicSeries, k: KernelPair, *, check_kernel: bool = True) -> MembershipReport:
    """Exact membership test for TH series."""
    if not f.is_th:
        raise ValueError("condition_lhs needs a TH series; use sufficient_condition for general ones")
    if check_kernel:
        require_valid(k, max(f.order, 2))
    return _report(_terms(f, k, float))


def sufficient_condition(f: HarmonicSeries, k: KernelPair, *, check_kernel: bool = True) -> MembershipReport:
    """Same sum over ``|A_n|, |B_n|``; ``verdict`` certifies membership in ``H(Phi, Psi; alpha)``."""
    if check_kernel:
        require_valid(k, max(f.order, 2))
    return _report(_terms(f, k, lambda c: float(abs(c))))


def coefficient_bounds(k: KernelPair, n: int):
    """Sharp bounds ``(A_n, B_n) <= ((1-alpha)/sigma_n, (1-alpha)/Gamma_n)``.

    ``A_bound`` is ``None`` for ``n = 1``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    a = (1 - k.alpha) / k.sigma(n) if n >= 2 else None
    return a, (1 - k.alpha) / k.gamma(n)


@dataclass(frozen=True)
class GrowthBounds:
    """``d1 r - d2 r^2 <= |f(z)| <= c1 r + c2 r^2`` with ``r = |z|``."""

    eta: float
    upper_coeffs: tuple
    lower_coeffs: tuple
    covering_radius: float

    def upper(self, r):
        c1, c2 = self.upper_coeffs
        return c1 * np.asarray(r) + c2 * np.asarray(r) ** 2

    def lower(self, r):
        d1, d2 = self.lower_coeffs
        return d1 * np.asarray(r) - d2 * np.asarray(r) ** 2

    def to_dict(self) -> dict:
        return {
            "eta": self.eta,
            "upper_coeffs": list(self.upper_coeffs),
            "lower_coeffs": list(self.lower_coeffs),
            "covering_radius": self.covering_radius,
        }


def growth_and_covering(k: KernelPair, B1: float = 0.0, horizon: int = 200) -> GrowthBounds:
    """Growth bounds and covering radius for members with ``f_zbar(0) = B1``.

    Requires ``sigma_n`` and ``Gamma_n`` non-decreasing, which is checked up to
    ``horizon``.
    """
    s = [k.sigma(n) for n in range(2, horizon + 1)]
    g = [k.gamma(n) for n in range(1, horizon + 1)]
    if np.any(np.diff(s) < 0):
        raise ValueError("sigma_n is not non-decreasing")
    if np.any(np.diff(g) < 0):
        raise ValueError("Gamma_n is not non-decreasing")
    a = k.alpha
    g1 = g[0]
    if B1 < 0 or B1 > (1 - a) / g1 + MEMBERSHIP_TOL:
        raise ValueError(f"B1 must lie in [0, {(1 - a) / g1}]")
    eta = min(s[0], g[1])
    c2 = max(((1 - a) / eta) * (1 - g1 * B1 / (1 - a)), 0.0)
    cover = (eta - 1 + a + (g1 - eta) * B1) / eta
    return GrowthBounds(
        eta=eta,
        upper_coeffs=(1 + B1, c2),
        lower_coeffs=(1 - B1, c2),
        covering_radius=float(min(max(cover, 0.0), 1.0)),
    )


class Part(str, enum.Enum):
    H = "H"
    G = "G"


def extreme_point(k: KernelPair, kind: str, n: int) -> HarmonicSeries:
    """``h_1 = z``, ``h_n = z - (1-a)/sigma_n z^n`` or ``g_n = z + (1-a)/Gamma_n conj(z)^n``."""
    kind = Part(str(kind).upper())
    if n < 1:
        raise ValueError("n must be >= 1")
    if kind is Part.H:
        if n == 1:
            return HarmonicSeries.identity(1, Convention.TH)
        return HarmonicSeries.th(A={n: (1 - k.alpha) / k.sigma(n)}, order=n)
    return HarmonicSeries.th(B={n: (1 - k.alpha) / k.gamma(n)}, order=n)


@dataclass(frozen=True)
class ExtremeDecomposition:
    """Weights with ``f = sum X_n h_n + Y_n g_n``; ``X[0]`` is ``X_1``."""

    X: np.ndarray
    Y: np.ndarray

    @property
    def total(self) -> float:
        return float(self.X.sum() + self.Y.sum())


def decompose(f: HarmonicSeries, k: KernelPair) -> ExtremeDecomposition:
    report = condition_lhs(f, k)
    if not report.verdict:
        raise ValueError(f"not a member (lhs = {report.lhs})")
    wa, wb = k.weights(f.order)
    X = np.zeros(f.order)
    X[1:] = wa * f.analytic
    Y = wb * f.coanalytic
    X[0] = 1.0 - X[1:].sum() - Y.sum()
    return ExtremeDecomposition(X, Y)


def reconstruct(d: ExtremeDecomposition, k: KernelPair) -> HarmonicSeries:
    """Coefficients of ``sum X_n h_n + Y_n g_n`` (``X_n, Y_n`` as given)."""
    order = len(d.Y)
    A = [d.X[n - 1] * (1 - k.alpha) / k.sigma(n) for n in range(2, order + 1)]
    B = [d.Y[n - 1] * (1 - k.alpha) / k.gamma(n) for n in range(1, order + 1)]
    return HarmonicSeries(order, A, B, Convention.TH)


def convex_combination(fs: Sequence[HarmonicSeries], ts: Sequence[float]) -> HarmonicSeries:
    if len(fs) != len(ts) or not fs:
        raise ValueError("need one weight per function")
    ts = np.asarray(ts, dtype=float)
    if np.any(ts < 0):
        raise ValueError("weights must be nonnegative")
    if abs(ts.sum() - 1.0) > 1e-12:
        raise ValueError(f"weights sum to {ts.sum()}, not 1")
    if not all(f.is_th for f in fs):
        raise ValueError("convex_combination expects TH series")
    order = max(f.order for f in fs)
    padded = [f.pad(order) for f in fs]
    A = sum(t * f.analytic for t, f in zip(ts, padded))
    B = sum(t * f.coanalytic for t, f in zip(ts, padded))
    return HarmonicSeries(order, A, B, Convention.TH)


def hat_product_membership(f: HarmonicSeries, F: HarmonicSeries, k: KernelPair) -> MembershipReport:
    """Audit report for ``f hat* F`` where ``f`` is a member and ``F`` has coefficients <= 1."""
    if not F.is_th:
        raise ValueError("F must be a TH series")
    if np.any(F.analytic > 1) or np.any(F.coanalytic > 1):
        raise ValueError("every coefficient of F must be <= 1")
    base = condition_lhs(f, k)
    if not base.verdict:
        raise ValueError(f"f is not a member (lhs = {base.lhs})")
    return condition_lhs(hat_product(f, F), k)


def weighted_coefficient_sum(f: HarmonicSeries, power: int = 1) -> float:
    """``sum n^power (|A_n| + |B_n|)`` over the support of ``f``."""
    n_a = np.arange(2, f.order + 1, dtype=float)
    n_b = np.arange(1, f.order + 1, dtype=float)
    return float(np.sum(n_a**power * np.abs(f.analytic)) + np.sum(n_b**power * np.abs(f.coanalytic)))


def remark22_starlike_certificate(f: HarmonicSeries, k: KernelPair) -> bool:
    """True when ``p_n >= n``, ``q_n >= n`` on the support and the sufficient
    condition holds, which forces ``sum n(|A_n| + |B_n|) <= 1`` (univalent,
    sense-preserving, starlike image).
    """
    for part, n in f.support():
        if (part == "A" and k.p(n) < n) or (part == "B" and k.q(n) < n):
            return False
    if not sufficient_condition(f, k).verdict:
        return False
    total = weighted_coefficient_sum(f, 1)
    assert total <= 1.0 + 1e-12, f"chain broken: sum n|coeff| = {total}"
    return True


def tu_inclusion_order(source, alpha: float) -> float:
    """Order ``beta`` with ``TK0(alpha)`` resp. ``TS*0(alpha)`` inside ``TU0(beta)``."""
    if not 0 <= alpha < 1:
        raise ValueError("alpha must lie in [0, 1)")
    source = KernelName.parse(source)
    if source is KernelName.CONVEX:
        return (3 - alpha) / (2 * (2 - alpha))
    if source is KernelName.STARLIKE:
        return 1 / (2 - alpha)
    raise ValueError("source must be convex or starlike")


def convex_to_starlike_order(alpha: float) -> float:
    """Starlikeness order ``2/(5 - 3 alpha)`` of ``TK0(alpha)``; sharp only at 0."""
    return 2 / (5 - 3 * alpha)


def lemma32_orders(lam: float):
    """``(1 - lam, 1 - lam/2, 2(1 - lam)/(2 + lam))`` for ``0 < lam <= 1``."""
    if not 0 < lam <= 1:
        raise ValueError("lambda must lie in (0, 1]")
    return 1 - lam, 1 - lam / 2, 2 * (1 - lam) / (2 + lam)


def class_radii(alpha: float):
    """Radii of univalence, starlikeness and convexity of ``TU0(alpha)``."""
    if not 0 <= alpha < 1:
        raise ValueError("alpha must lie in [0, 1)")
    r_u = min(1.0, 1 / (2 * (1 - alpha)))
    return r_u, r_u, min(1.0, 1 / (4 * (1 - alpha)))


def random_member(
    k: KernelPair,
    rng: np.random.Generator,
    lhs_range=(0.0, 1.0),
    *,
    max_index: int = 8,
    max_support: int = 4,
    b1_zero: bool = False,
) -> HarmonicSeries:
    """Random TH series whose condition lhs is uniform on ``lhs_range``.

    A support of 1..``max_support`` indices is drawn from ``A_2..A_M`` and
    ``B_1..B_M`` (``B_2..`` when ``b1_zero``), positive shares are drawn and
    scaled to the target lhs, then divided by the condition weights.
    """
    slots = [("A", n) for n in range(2, max_index + 1)]
    slots += [("B", n) for n in range(2 if b1_zero else 1, max_index + 1)]
    size = int(rng.integers(1, max_support + 1))
    picks = rng.choice(len(slots), size=size, replace=False)
    shares = rng.random(size) + 1e-3
    target = rng.uniform(*lhs_range)
    shares *= target / shares.sum()
    A, B = {}, {}
    for idx, s in zip(picks, shares):
        part, n = slots[idx]
        if part == "A":
            A[n] = s / k.weight_A(n)
        else:
            B[n] = s / k.weight_B(n)
    return HarmonicSeries.th(A, B, order=max_index)
