"""Disk-sampling ground truth for the coefficient criteria.

Nothing in here looks at coefficient inequalities.  Functions are evaluated
pointwise on polar grids and the defining inequality
``Re (f*Phi)(z) / (f*Psi)(z) > alpha``, the Jacobian, and the angular
derivatives behind full starlikeness and full convexity are minimized over
the samples.
"""
from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np

from .kernels import KernelPair, materialize
from .series import DiskPoint, HarmonicSeries, evaluate, harmonic_convolution, wirtinger_derivatives

__all__ = [
    "GridSpec",
    "OracleReport",
    "check_defining_inequality",
    "ratio_function",
    "sense_preserving_check",
    "starlike_derivative",
    "convex_derivative",
    "arg_derivative_fd",
    "Property",
    "radius_search",
    "halfplane_map",
    "halfplane_closed_form",
    "halfplane_tail_bound",
    "Figure1Result",
    "figure1_scan",
    "samples_to_csv",
    "samples_to_json",
]

DEGENERATE = 1e-12
FD_STEP = 1e-5


@dataclass(frozen=True)
class GridSpec:
    """Polar grid: ``n_radii`` Chebyshev-spaced radii up to ``r_max``, times
    ``n_angles`` equispaced angles, plus ``refine_rounds`` zoom passes around
    the running worst point and a dense scan of the positive real axis.
    """

    n_radii: int = 64
    r_max: float = 0.999
    n_angles: int = 720
    refine_rounds: int = 3
    real_axis_points: int = 2000

    def __post_init__(self):
        if not 0 < self.r_max <= 1 - 1e-6:
            raise ValueError("r_max must lie in (0, 1 - 1e-6]")
        if self.n_radii < 8 or self.n_angles < 8:
            raise ValueError("grid counts must be >= 8")

    def radii(self) -> np.ndarray:
        k = np.arange(1, self.n_radii + 1)
        return self.r_max * np.sin(0.5 * np.pi * k / self.n_radii)

    def angles(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.n_angles) / self.n_angles

    def points(self) -> np.ndarray:
        r, t = np.meshgrid(self.radii(), self.angles(), indexing="ij")
        return (r * np.exp(1j * t)).ravel()

    def axis_points(self) -> np.ndarray:
        if self.real_axis_points <= 0:
            return np.zeros(0, dtype=complex)
        k = np.arange(1, self.real_axis_points + 1)
        return (self.r_max * np.sin(0.5 * np.pi * k / self.real_axis_points)).astype(complex)

    def to_dict(self) -> dict:
        return {
            "n_radii": self.n_radii,
            "r_max": self.r_max,
            "n_angles": self.n_angles,
            "refine_rounds": self.refine_rounds,
            "real_axis_points": self.real_axis_points,
        }


@dataclass
class _Min:
    value: float = np.inf
    point: Optional[complex] = None
    skipped: int = 0
    evaluated: int = 0

    def update(self, z: np.ndarray, vals: np.ndarray):
        ok = np.isfinite(vals)
        self.skipped += int(np.count_nonzero(~ok))
        self.evaluated += int(vals.size)
        if np.any(ok):
            idx = int(np.nanargmin(np.where(ok, vals, np.nan)))
            if vals[idx] < self.value:
                self.value, self.point = float(vals[idx]), complex(z[idx])

    @property
    def disk_point(self) -> Optional[DiskPoint]:
        return None if self.point is None else DiskPoint.from_complex(self.point)


def _scan(fn: Callable[[np.ndarray], np.ndarray], grid: GridSpec, axis: bool = True) -> _Min:
    best = _Min()
    z = grid.points()
    best.update(z, fn(z))
    if axis:
        za = grid.axis_points()
        if za.size:
            best.update(za, fn(za))
    if best.point is None:
        return best
    dr = grid.r_max / grid.n_radii
    dt = 2 * np.pi / grid.n_angles
    for _ in range(grid.refine_rounds):
        r0, t0 = abs(best.point), np.angle(best.point)
        rr = np.clip(r0 + dr * np.linspace(-1, 1, 17), 1e-6, grid.r_max)
        tt = t0 + dt * np.linspace(-1, 1, 17)
        R, T = np.meshgrid(rr, tt, indexing="ij")
        zz = (R * np.exp(1j * T)).ravel()
        best.update(zz, fn(zz))
        dr, dt = dr / 2, dt / 2
    return best


def _jacobian(f: HarmonicSeries, z):
    hp, gp = wirtinger_derivatives(f, z)
    return np.abs(hp) ** 2 - np.abs(gp) ** 2


def _angular(f: HarmonicSeries, z):
    """``z h'(z) - conj(z g'(z))``, i.e. ``-i d/dtheta f(r e^{i theta})``."""
    hp, gp = wirtinger_derivatives(f, z)
    return z * hp - np.conj(z * gp)


def _nan_where(mask, vals):
    return np.where(mask, np.nan, vals)


def _as_z(z):
    if isinstance(z, DiskPoint):
        return z.z
    return np.asarray(z, dtype=complex) if np.ndim(z) else complex(z)


def starlike_derivative(f: HarmonicSeries, z):
    """``d/dtheta arg f(r e^{i theta}) = Re[(z h' - conj(z g')) / f]``.

    Array input returns ``nan`` where ``|f(z)| < 1e-12``; scalar input raises.
    """
    w = _as_z(z)
    fz = evaluate(f, w)
    if np.ndim(w) == 0:
        if abs(fz) < DEGENERATE:
            raise ValueError("f vanishes at z")
        return float((_angular(f, w) / fz).real)
    small = np.abs(fz) < DEGENERATE
    with np.errstate(divide="ignore", invalid="ignore"):
        return _nan_where(small, (_angular(f, w) / np.where(small, 1.0, fz)).real)


def arg_derivative_fd(fn: Callable, z, step: float = FD_STEP):
    """Central difference in ``theta`` of ``arg fn(r e^{i theta})``, unwrapped
    to the nearest branch."""
    w = _as_z(z)
    rot = np.exp(1j * step)
    return np.angle(fn(w * rot) / fn(w / rot)) / (2 * step)


def convex_derivative(f: HarmonicSeries, z, step: float = FD_STEP):
    """``d/dtheta arg(d/dtheta f(r e^{i theta}))`` by central differences."""
    w = _as_z(z)
    ang = lambda x: _angular(f, x)
    if np.ndim(w) == 0:
        if abs(ang(w)) < DEGENERATE:
            raise ValueError("angular derivative vanishes at z")
        return float(arg_derivative_fd(ang, w, step))
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = arg_derivative_fd(ang, w, step)
    return _nan_where(np.abs(ang(w)) < DEGENERATE, vals)


@dataclass
class OracleReport:
    min_re_ratio: float
    worst_point: Optional[DiskPoint]
    min_jacobian: float = np.nan
    jacobian_point: Optional[DiskPoint] = None
    min_starlike_derivative: float = np.nan
    starlike_point: Optional[DiskPoint] = None
    min_convex_derivative: float = np.nan
    convex_point: Optional[DiskPoint] = None
    skipped: int = 0
    evaluated: int = 0
    grid: GridSpec = field(default_factory=GridSpec)

    def to_dict(self) -> dict:
        def pt(p):
            return None if p is None else {"r": p.r, "theta": p.theta}

        return {
            "min_re_ratio": self.min_re_ratio,
            "worst_point": pt(self.worst_point),
            "min_jacobian": self.min_jacobian,
            "jacobian_point": pt(self.jacobian_point),
            "min_starlike_derivative": self.min_starlike_derivative,
            "starlike_point": pt(self.starlike_point),
            "min_convex_derivative": self.min_convex_derivative,
            "convex_point": pt(self.convex_point),
            "skipped": self.skipped,
            "evaluated": self.evaluated,
            "grid": self.grid.to_dict(),
        }


def ratio_function(f: HarmonicSeries, k: KernelPair) -> Callable[[np.ndarray], np.ndarray]:
    """``z -> Re((f*Phi)(z) / (f*Psi)(z)) - alpha`` (``nan`` where the denominator vanishes)."""
    C = harmonic_convolution(f, materialize(k, "phi", f.order))
    D = harmonic_convolution(f, materialize(k, "psi", f.order))

    def fn(z):
        c, d = evaluate(C, z), evaluate(D, z)
        small = np.abs(d) < DEGENERATE
        with np.errstate(divide="ignore", invalid="ignore"):
            return _nan_where(small, (c / np.where(small, 1.0, d)).real - k.alpha)

    return fn


def check_defining_inequality(
    f: HarmonicSeries, k: KernelPair, grid: Optional[GridSpec] = None, geometry: bool = True
) -> OracleReport:
    """Minimize ``Re(C/D) - alpha`` (and, with ``geometry``, the Jacobian and
    both angular derivatives) over ``grid``."""
    grid = grid or GridSpec()
    ratio = _scan(ratio_function(f, k), grid)
    if ratio.point is None:
        raise ValueError("denominator vanishes at every grid point")
    report = OracleReport(
        min_re_ratio=ratio.value,
        worst_point=ratio.disk_point,
        skipped=ratio.skipped,
        evaluated=ratio.evaluated,
        grid=grid,
    )
    if geometry:
        jac = _scan(lambda z: _jacobian(f, z), grid)
        star = _scan(lambda z: starlike_derivative(f, z), grid)
        conv = _scan(lambda z: convex_derivative(f, z), grid)
        report.min_jacobian, report.jacobian_point = jac.value, jac.disk_point
        report.min_starlike_derivative, report.starlike_point = star.value, star.disk_point
        report.min_convex_derivative, report.convex_point = conv.value, conv.disk_point
    return report


def sense_preserving_check(f: HarmonicSeries, grid: Optional[GridSpec] = None) -> Tuple[float, DiskPoint]:
    """Minimum of ``|h'|^2 - |g'|^2`` over the grid and where it occurs."""
    best = _scan(lambda z: _jacobian(f, z), grid or GridSpec())
    return best.value, best.disk_point


class Property(str, enum.Enum):
    JACOBIAN = "jacobian"
    STARLIKE = "starlike"
    CONVEX = "convex"


def _circle_min(f: HarmonicSeries, prop: Property, r: float, n_angles: int) -> float:
    z = r * np.exp(2j * np.pi * np.arange(n_angles) / n_angles)
    if prop is Property.JACOBIAN:
        vals = _jacobian(f, z)
    elif prop is Property.STARLIKE:
        vals = starlike_derivative(f, z)
    else:
        vals = convex_derivative(f, z)
    return float(np.nanmin(vals))


def radius_search(
    f: HarmonicSeries,
    prop,
    tol: float = 1e-6,
    order: float = 0.0,
    n_angles: int = 720,
    r_min: float = 1e-3,
    r_max: float = 1 - 1e-6,
) -> float:
    """Largest ``r`` with ``min_theta stat(r e^{i theta}) > order``, by bisection.

    ``stat`` is the Jacobian, the starlike or the convex angular derivative.
    Returns ``r_max`` when the property still holds there.
    """
    prop = prop if isinstance(prop, Property) else Property(str(prop).lower())
    holds = lambda r: _circle_min(f, prop, r, n_angles) > order
    if not holds(r_min):
        raise ValueError(f"property {prop.value} already fails at r = {r_min}")
    if holds(r_max):
        return r_max
    lo, hi = r_min, r_max
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if holds(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# -- the harmonic half-plane map --------------------------------------------------


def halfplane_map(order: int) -> HarmonicSeries:
    """Taylor truncation of ``L = (z - z^2/2)/(1-z)^2 + conj(-z^2/2/(1-z)^2)``."""
    if order < 2:
        raise ValueError("order must be >= 2")
    n = np.arange(2, order + 1)
    A = (n + 1) / 2
    B = -(np.arange(1, order + 1) - 1) / 2
    return HarmonicSeries(order, A.astype(complex), B.astype(complex))


def halfplane_closed_form(z):
    z = _as_z(z)
    h = (z - z * z / 2) / (1 - z) ** 2
    g = -(z * z / 2) / (1 - z) ** 2
    return h + np.conj(g)


def halfplane_tail_bound(order: int, r: float) -> float:
    """``sum_{n > order} n r^n``, which dominates the truncation error at ``|z| = r``."""
    m = order + 1
    return float(r**m * (m - (m - 1) * r) / (1 - r) ** 2)


@dataclass
class Figure1Result:
    min_re: float
    worst_point: DiskPoint
    samples: np.ndarray  # structured: r, theta, re, im, stat
    order: int
    order_used: int
    grid: GridSpec


def figure1_scan(order: int = 60, grid: Optional[GridSpec] = None, tol: float = 1e-10) -> Figure1Result:
    """Sample ``L(z)/z`` on ``grid`` from the truncated series.

    ``order`` is a floor: it is raised until the truncation error on the grid
    is below ``tol``, because ``L`` has coefficients of size ``~n``.
    """
    grid = grid or GridSpec(r_max=0.98, refine_rounds=0, real_axis_points=0)
    used = max(order, 2)
    while halfplane_tail_bound(used, grid.r_max) > tol:
        used = int(used * 1.25) + 1
    L = halfplane_map(used)
    r, t = np.meshgrid(grid.radii(), grid.angles(), indexing="ij")
    z = (r * np.exp(1j * t)).ravel()
    w = evaluate(L, z) / z
    samples = np.zeros(z.size, dtype=[("r", float), ("theta", float), ("re", float), ("im", float), ("stat", float)])
    samples["r"], samples["theta"] = r.ravel(), t.ravel()
    samples["re"], samples["im"] = w.real, w.imag
    samples["stat"] = w.real
    idx = int(np.argmin(w.real))
    return Figure1Result(
        min_re=float(w.real[idx]),
        worst_point=DiskPoint(float(samples["r"][idx]), float(samples["theta"][idx])),
        samples=samples,
        order=order,
        order_used=used,
        grid=grid,
    )


def samples_to_csv(samples: np.ndarray) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["r", "theta", "re", "im", "stat"])
    for row in samples:
        writer.writerow([repr(float(x)) for x in row])
    return buf.getvalue()


def samples_to_json(result: Figure1Result) -> dict:
    s = result.samples
    return {
        "grid": result.grid.to_dict(),
        "order": result.order,
        "order_used": result.order_used,
        "min_re": result.min_re,
        "worst_point": {"r": result.worst_point.r, "theta": result.worst_point.theta},
        "n_samples": int(s.size),
        "columns": ["r", "theta", "re", "im", "stat"],
        "samples": {name: s[name].tolist() for name in s.dtype.names},
    }
