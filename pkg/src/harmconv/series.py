"""Truncated harmonic power series ``f = h + conj(g)`` on the unit disk.

Two sign conventions are supported:

``GENERAL``
    ``f(z) = z + sum_{n>=2} A_n z^n + conj(sum_{n>=1} B_n z^n)`` with complex
    ``A_n, B_n``.

``TH``
    ``f(z) = z - sum_{n>=2} A_n z^n + sum_{n>=1} B_n conj(z)^n`` with real,
    nonnegative ``A_n, B_n``.  Only the magnitudes are stored; the minus
    sign on the analytic part is implicit.

In both conventions ``g(z) = sum B_n z^n`` is the co-analytic part, so the
``B`` vectors mean the same thing.  Only the analytic coefficients flip sign
when a TH series is lifted to GENERAL form.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

import numpy as np
from numpy.polynomial import polynomial as P

__all__ = [
    "Convention",
    "DiskPoint",
    "HarmonicSeries",
    "evaluate",
    "wirtinger_derivatives",
    "harmonic_convolution",
    "hat_product",
    "series_to_json",
    "series_from_json",
]


class Convention(str, enum.Enum):
    GENERAL = "general"
    TH = "TH"

    @classmethod
    def parse(cls, value: Union[str, "Convention"]) -> "Convention":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        if key == "th":
            return cls.TH
        if key == "general":
            return cls.GENERAL
        raise ValueError(f"unknown convention {value!r}")


@dataclass(frozen=True)
class DiskPoint:
    """A point ``r e^{i theta}`` of the open unit disk."""

    r: float
    theta: float

    def __post_init__(self):
        if not (0.0 <= self.r < 1.0):
            raise ValueError(f"radius must lie in [0, 1), got {self.r}")

    @property
    def z(self) -> complex:
        return complex(self.r * np.cos(self.theta), self.r * np.sin(self.theta))

    @classmethod
    def from_complex(cls, z: complex) -> "DiskPoint":
        return cls(abs(z), float(np.angle(z)) % (2 * np.pi))


def _as_coeff_array(values, length, start, dtype):
    if values is None:
        return np.zeros(length, dtype=dtype)
    if isinstance(values, Mapping):
        out = np.zeros(length, dtype=dtype)
        for n, c in values.items():
            idx = int(n) - start
            if not 0 <= idx < length:
                raise ValueError(f"index {n} outside {start}..{start + length - 1}")
            out[idx] = c
        return out
    arr = np.asarray(values, dtype=dtype).reshape(-1)
    if arr.size != length:
        raise ValueError(f"expected {length} coefficients, got {arr.size}")
    return arr.copy()


@dataclass(frozen=True, eq=False)
class HarmonicSeries:
    """Truncated harmonic function, normalized by ``f(0) = 0, f_z(0) = 1``.

    ``analytic`` holds ``A_2..A_N`` and ``coanalytic`` holds ``B_1..B_N``
    where ``N = order``.  Use :meth:`th` or :meth:`general` to build from
    index-to-coefficient mappings.
    """

    order: int
    analytic: np.ndarray
    coanalytic: np.ndarray
    convention: Convention = Convention.GENERAL

    def __post_init__(self):
        order = int(self.order)
        if order < 1:
            raise ValueError("order must be >= 1")
        conv = Convention.parse(self.convention)
        dtype = float if conv is Convention.TH else complex
        a = _as_coeff_array(self.analytic, order - 1, 2, dtype)
        b = _as_coeff_array(self.coanalytic, order, 1, dtype)
        if conv is Convention.TH and (np.any(a < 0) or np.any(b < 0)):
            raise ValueError("TH series need nonnegative coefficients")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise ValueError("coefficients must be finite")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "convention", conv)
        object.__setattr__(self, "analytic", a)
        object.__setattr__(self, "coanalytic", b)

    # -- constructors -------------------------------------------------------
    @classmethod
    def th(cls, A=None, B=None, order: int | None = None) -> "HarmonicSeries":
        """``z - sum A_n z^n + sum B_n conj(z)^n`` from ``{n: value}`` maps."""
        return cls._from_maps(A, B, order, Convention.TH)

    @classmethod
    def general(cls, A=None, B=None, order: int | None = None) -> "HarmonicSeries":
        """``z + sum A_n z^n + conj(sum B_n z^n)`` from ``{n: value}`` maps."""
        return cls._from_maps(A, B, order, Convention.GENERAL)

    @classmethod
    def identity(cls, order: int = 1, convention=Convention.GENERAL) -> "HarmonicSeries":
        return cls(order, None, None, convention)

    @classmethod
    def _from_maps(cls, A, B, order, convention):
        A = dict(A or {})
        B = dict(B or {})
        if order is None:
            order = max([1, *A.keys(), *B.keys()])
        return cls(order, A, B, convention)

    # -- coefficient views --------------------------------------------------
    @property
    def is_th(self) -> bool:
        return self.convention is Convention.TH

    def h_coeffs(self) -> np.ndarray:
        """Signed Taylor coefficients of ``h``, index = power (0..N)."""
        c = np.zeros(self.order + 1, dtype=complex)
        c[1] = 1.0
        c[2:] = -self.analytic if self.is_th else self.analytic
        return c

    def g_coeffs(self) -> np.ndarray:
        """Taylor coefficients of ``g``, index = power (0..N)."""
        c = np.zeros(self.order + 1, dtype=complex)
        c[1:] = self.coanalytic
        return c

    def A(self, n: int):
        return self.analytic[n - 2] if 2 <= n <= self.order else 0.0

    def B(self, n: int):
        return self.coanalytic[n - 1] if 1 <= n <= self.order else 0.0

    def to_general(self) -> "HarmonicSeries":
        if not self.is_th:
            return self
        return HarmonicSeries(self.order, -self.analytic, self.coanalytic, Convention.GENERAL)

    def truncate(self, order: int) -> "HarmonicSeries":
        if order > self.order:
            return self.pad(order)
        return HarmonicSeries(order, self.analytic[: order - 1], self.coanalytic[:order], self.convention)

    def pad(self, order: int) -> "HarmonicSeries":
        if order <= self.order:
            return self.truncate(order)
        a = np.zeros(order - 1, dtype=self.analytic.dtype)
        b = np.zeros(order, dtype=self.coanalytic.dtype)
        a[: self.order - 1] = self.analytic
        b[: self.order] = self.coanalytic
        return HarmonicSeries(order, a, b, self.convention)

    def support(self):
        """Indices carrying nonzero coefficients, as ``(part, n)`` pairs."""
        out = [("A", n) for n in range(2, self.order + 1) if self.analytic[n - 2] != 0]
        out += [("B", n) for n in range(1, self.order + 1) if self.coanalytic[n - 1] != 0]
        return out

    def __call__(self, z):
        return evaluate(self, z)

    def __eq__(self, other):
        if not isinstance(other, HarmonicSeries):
            return NotImplemented
        return (
            self.order == other.order
            and self.convention is other.convention
            and np.array_equal(self.analytic, other.analytic)
            and np.array_equal(self.coanalytic, other.coanalytic)
        )

    def allclose(self, other: "HarmonicSeries", atol: float = 1e-12) -> bool:
        n = max(self.order, other.order)
        x, y = self.to_general().pad(n), other.to_general().pad(n)
        return bool(
            np.allclose(x.analytic, y.analytic, rtol=0, atol=atol)
            and np.allclose(x.coanalytic, y.coanalytic, rtol=0, atol=atol)
        )

    def __repr__(self):
        terms = ["z"]
        for n in range(2, self.order + 1):
            c = self.analytic[n - 2]
            if c != 0:
                terms.append(f"{'-' if self.is_th else '+'} {c!r} z^{n}")
        for n in range(1, self.order + 1):
            c = self.coanalytic[n - 1]
            if c != 0:
                terms.append(f"+ {c!r} zbar^{n}" if self.is_th else f"+ conj({c!r} z^{n})")
        return f"HarmonicSeries[{self.convention.value}, N={self.order}]({' '.join(terms)})"


def _point(z):
    if isinstance(z, DiskPoint):
        return z.z
    return np.asarray(z, dtype=complex) if np.ndim(z) else complex(z)


def evaluate(f: HarmonicSeries, z):
    """``h(z) + conj(g(z))`` at a :class:`DiskPoint`, complex scalar or array."""
    w = _point(z)
    return P.polyval(w, f.h_coeffs()) + np.conj(P.polyval(w, f.g_coeffs()))


def wirtinger_derivatives(f: HarmonicSeries, z):
    """Return ``(h'(z), g'(z))``; ``f_z = h'`` and ``f_zbar = conj(g')``."""
    w = _point(z)
    return P.polyval(w, P.polyder(f.h_coeffs())), P.polyval(w, P.polyder(f.g_coeffs()))


def _sym_mul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Elementwise product that is bitwise symmetric in its operands."""
    if not (np.iscomplexobj(x) or np.iscomplexobj(y)):
        return x * y
    re = x.real * y.real - x.imag * y.imag
    im = x.real * y.imag + x.imag * y.real
    return re + 1j * im


def harmonic_convolution(f: HarmonicSeries, F: HarmonicSeries) -> HarmonicSeries:
    """Hadamard product ``h*H + conj(g*G)``; TH operands are lifted first.

    The result is GENERAL with order ``min(f.order, F.order)``.
    """
    n = min(f.order, F.order)
    x, y = f.to_general().truncate(n), F.to_general().truncate(n)
    return HarmonicSeries(n, _sym_mul(x.analytic, y.analytic), _sym_mul(x.coanalytic, y.coanalytic))


def hat_product(f: HarmonicSeries, F: HarmonicSeries) -> HarmonicSeries:
    """``z - sum A_n A'_n z^n + sum B_n B'_n conj(z)^n`` for TH operands."""
    if not (f.is_th and F.is_th):
        raise ValueError("the hat product is defined for TH-convention series only")
    n = min(f.order, F.order)
    x, y = f.truncate(n), F.truncate(n)
    return HarmonicSeries(n, x.analytic * y.analytic, x.coanalytic * y.coanalytic, Convention.TH)


def series_to_json(f: HarmonicSeries) -> dict:
    if f.is_th:
        enc = lambda arr: [float(c) for c in arr]
    else:
        enc = lambda arr: [[float(c.real), float(c.imag)] for c in arr]
    return {
        "order": f.order,
        "convention": f.convention.value,
        "analytic": enc(f.analytic),
        "coanalytic": enc(f.coanalytic),
    }


def _decode(values: Sequence, convention: Convention):
    out = []
    for v in values:
        if isinstance(v, (list, tuple)):
            if len(v) != 2:
                raise ValueError(f"complex coefficient must be [re, im], got {v!r}")
            c = complex(float(v[0]), float(v[1]))
        else:
            c = float(v)
        if convention is Convention.TH:
            if isinstance(c, complex):
                if c.imag != 0:
                    raise ValueError("TH coefficients must be real")
                c = c.real
        out.append(c)
    return out


def series_from_json(doc: Mapping) -> HarmonicSeries:
    try:
        order = int(doc["order"])
        conv = Convention.parse(doc.get("convention", "general"))
        a = _decode(doc.get("analytic", [0.0] * (order - 1)), conv)
        b = _decode(doc.get("coanalytic", [0.0] * order), conv)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed series document: {exc}") from exc
    return HarmonicSeries(order, a, b, conv)
