"""Kernel pairs ``(Phi_i, Psi_j)`` that define a class ``TH(Phi_i, Psi_j; alpha)``.

A kernel pair is carried entirely by four real coefficient generators::

    Phi_i(z) = z + sum p_n z^n + (-1)^i sum q_n conj(z)^n
    Psi_j(z) = z + sum u_n z^n + (-1)^j sum v_n conj(z)^n

The coefficient condition only ever sees the combinations
``sigma_n = p_n - alpha u_n`` and ``Gamma_n = q_n - (-1)^(j-i) alpha v_n``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Callable, Mapping, Optional, Sequence

import numpy as np

from .series import Convention, HarmonicSeries

__all__ = [
    "Poly",
    "Table",
    "KernelPair",
    "KernelName",
    "KernelValidation",
    "sigma",
    "gamma_coeff",
    "named_kernel",
    "materialize",
    "validate",
    "default_horizon",
    "kernel_to_json",
    "kernel_from_json",
]

Generator = Callable[[int], float]


@dataclass(frozen=True)
class Poly:
    """``n -> sum_k coeffs[k] n^k``."""

    coeffs: tuple

    def __init__(self, coeffs: Sequence[float]):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in coeffs))

    def __call__(self, n):
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * n + c
        return acc

    @property
    def degree(self) -> int:
        nz = [k for k, c in enumerate(self.coeffs) if c != 0]
        return nz[-1] if nz else 0

    def to_json(self):
        return {"kind": "poly", "coeffs": list(self.coeffs)}


@dataclass(frozen=True)
class Table:
    """Finite table of values for ``n = start, start+1, ...``.

    Beyond the table the last value is repeated only when ``extend`` is set;
    otherwise lookups raise ``ValueError``.
    """

    values: tuple
    start: int = 1
    extend: bool = False

    def __init__(self, values: Sequence[float], start: int = 1, extend: bool = False):
        if not values:
            raise ValueError("empty table")
        object.__setattr__(self, "values", tuple(float(v) for v in values))
        object.__setattr__(self, "start", int(start))
        object.__setattr__(self, "extend", bool(extend))

    def __call__(self, n):
        idx = int(n) - self.start
        if idx < 0:
            raise ValueError(f"table starts at n={self.start}, asked for n={n}")
        if idx >= len(self.values):
            if not self.extend:
                raise ValueError(f"table undefined beyond n={self.start + len(self.values) - 1}")
            return self.values[-1]
        return self.values[idx]

    def to_json(self):
        return {"kind": "table", "values": list(self.values), "start": self.start, "extend": self.extend}


class KernelName(str, enum.Enum):
    STARLIKE = "starlike"
    CONVEX = "convex"
    U = "U"

    @classmethod
    def parse(cls, value) -> "KernelName":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        for member in cls:
            if member.value.lower() == key:
                return member
        raise ValueError(f"unknown kernel name {value!r} (expected starlike, convex or U)")


@dataclass(frozen=True)
class KernelPair:
    p: Generator
    q: Generator
    u: Generator
    v: Generator
    i: int = 0
    j: int = 0
    alpha: float = 0.0
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        if self.i not in (0, 1) or self.j not in (0, 1):
            raise ValueError("sign indices i, j must be 0 or 1")
        if not (0.0 <= self.alpha < 1.0):
            raise ValueError(f"alpha must lie in [0, 1), got {self.alpha}")
        object.__setattr__(self, "alpha", float(self.alpha))

    @property
    def parity(self) -> int:
        """``(-1)^(j-i)`` as an integer."""
        return 1 if self.i == self.j else -1

    def sigma(self, n: int) -> float:
        return self.p(n) - self.alpha * self.u(n)

    def gamma(self, n: int) -> float:
        return self.q(n) - self.parity * self.alpha * self.v(n)

    def weight_A(self, n: int) -> float:
        return self.sigma(n) / (1.0 - self.alpha)

    def weight_B(self, n: int) -> float:
        return self.gamma(n) / (1.0 - self.alpha)

    def weights(self, order: int):
        """Condition weights for ``A_2..A_N`` and ``B_1..B_N`` as arrays."""
        wa = np.array([self.weight_A(n) for n in range(2, order + 1)], dtype=float)
        wb = np.array([self.weight_B(n) for n in range(1, order + 1)], dtype=float)
        return wa, wb

    def with_alpha(self, alpha: float) -> "KernelPair":
        return replace(self, alpha=alpha)

    def __repr__(self):
        label = self.name or "custom"
        return f"KernelPair({label}, i={self.i}, j={self.j}, alpha={self.alpha})"


def sigma(k: KernelPair, n: int) -> float:
    if n < 2:
        raise ValueError("sigma_n is defined for n >= 2")
    return k.sigma(n)


def gamma_coeff(k: KernelPair, n: int) -> float:
    if n < 1:
        raise ValueError("Gamma_n is defined for n >= 1")
    return k.gamma(n)


_ONE = Poly([1.0])
_ZERO = Poly([0.0])
_N = Poly([0.0, 1.0])
_N2 = Poly([0.0, 0.0, 1.0])


def named_kernel(name, alpha: float = 0.0) -> KernelPair:
    """Kernel pairs of the fully starlike, fully convex and ``Re f/z`` classes."""
    name = KernelName.parse(name)
    if name is KernelName.STARLIKE:
        return KernelPair(_N, _N, _ONE, _ONE, i=1, j=0, alpha=alpha, name="starlike")
    if name is KernelName.CONVEX:
        return KernelPair(_N2, _N2, _N, _N, i=0, j=1, alpha=alpha, name="convex")
    return KernelPair(_ONE, _ONE, _ZERO, _ZERO, i=0, j=0, alpha=alpha, name="U")


def materialize(k: KernelPair, which: str, order: int) -> HarmonicSeries:
    """``Phi_i`` (``which="phi"``) or ``Psi_j`` (``"psi"``) truncated at ``order``."""
    which = which.lower()
    if which == "phi":
        a, b, s = k.p, k.q, (-1) ** k.i
    elif which == "psi":
        a, b, s = k.u, k.v, (-1) ** k.j
    else:
        raise ValueError("which must be 'phi' or 'psi'")
    A = [a(n) for n in range(2, order + 1)]
    B = [s * b(n) for n in range(1, order + 1)]
    return HarmonicSeries(order, A, B, Convention.GENERAL)


@dataclass(frozen=True)
class KernelValidation:
    valid: bool
    horizon: int
    first_violation: Optional[int] = None
    reason: str = ""

    def __bool__(self):
        return self.valid


def default_horizon(order: int) -> int:
    return max(2 * order, 64)


def validate(k: KernelPair, horizon: int = 64) -> KernelValidation:
    """Check ``p_n > u_n >= 0`` and ``q_n >= v_n >= 0`` up to ``horizon``.

    Co-analytic dominance is strict for ``n >= 2``; at ``n = 1`` equality is
    accepted because the starlike and convex kernels have ``q_1 = v_1 = 1``.
    The weights ``sigma_n`` and ``Gamma_n`` must also be positive.
    """
    if horizon < 2:
        raise ValueError("horizon must be >= 2")
    for n in range(1, horizon + 1):
        try:
            q, v = k.q(n), k.v(n)
            if n >= 2:
                p, u = k.p(n), k.u(n)
        except ValueError as exc:
            return KernelValidation(False, horizon, n, str(exc))
        if n >= 2:
            if not u >= 0:
                return KernelValidation(False, horizon, n, f"u_{n} = {u} < 0")
            if not p > u:
                return KernelValidation(False, horizon, n, f"p_{n} = {p} not > u_{n} = {u}")
            if not k.sigma(n) > 0:
                return KernelValidation(False, horizon, n, f"sigma_{n} <= 0")
        if not v >= 0:
            return KernelValidation(False, horizon, n, f"v_{n} = {v} < 0")
        if not (q > v or (n == 1 and q == v and q > 0)):
            return KernelValidation(False, horizon, n, f"q_{n} = {q} not > v_{n} = {v}")
        if not k.gamma(n) > 0:
            return KernelValidation(False, horizon, n, f"Gamma_{n} <= 0")
    return KernelValidation(True, horizon)


def require_valid(k: KernelPair, horizon: int) -> None:
    report = validate(k, horizon)
    if not report.valid:
        raise ValueError(f"invalid kernel at n={report.first_violation}: {report.reason}")


def _gen_to_json(g):
    if hasattr(g, "to_json"):
        return g.to_json()
    raise TypeError(f"generator {g!r} is not serializable (use Poly or Table)")


def _gen_from_json(doc, start: int):
    kind = doc.get("kind")
    if kind == "poly":
        return Poly(doc["coeffs"])
    if kind == "table":
        return Table(doc["values"], start=doc.get("start", start), extend=doc.get("extend", False))
    raise ValueError(f"unknown generator kind {kind!r}")


def kernel_to_json(k: KernelPair) -> dict:
    return {
        "alpha": k.alpha,
        "i": k.i,
        "j": k.j,
        "p": _gen_to_json(k.p),
        "q": _gen_to_json(k.q),
        "u": _gen_to_json(k.u),
        "v": _gen_to_json(k.v),
    }


def kernel_from_json(doc: Mapping) -> KernelPair:
    try:
        return KernelPair(
            p=_gen_from_json(doc["p"], 2),
            q=_gen_from_json(doc["q"], 1),
            u=_gen_from_json(doc["u"], 2),
            v=_gen_from_json(doc["v"], 1),
            i=int(doc.get("i", 0)),
            j=int(doc.get("j", 0)),
            alpha=float(doc.get("alpha", 0.0)),
            name=doc.get("name"),
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed kernel document: {exc}") from exc
