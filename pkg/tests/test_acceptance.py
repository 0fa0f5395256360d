"""Acceptance criteria 1-10.

Each test records one PASS/FAIL line; the lines are printed at the end of the
pytest run (see conftest.py) and by ``python3 tests/test_acceptance.py``.
"""
import time

import numpy as np
import pytest

from harmconv import hypergeom as hg
from harmconv import membership as mb
from harmconv import oracle as orc
from harmconv import transforms as tf
from harmconv.kernels import named_kernel
from harmconv.series import HarmonicSeries, hat_product

from quadrature import bernardi_quad, diffq_quad

pytestmark = pytest.mark.acceptance

NAMED = ["starlike", "convex", "U"]
ALPHAS = [0.0, 0.25, 0.5, 0.75]
RESULTS = {}


def record(number, ok, detail):
    RESULTS[number] = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(RESULTS[number])
    assert ok, RESULTS[number]


def test_criterion_01_characterization():
    rng = np.random.default_rng(1)
    t0 = time.perf_counter()
    counts, examples = {}, {}
    for name in NAMED:
        bad = 0
        for idx in range(500):
            k = named_kernel(name, ALPHAS[int(rng.integers(len(ALPHAS)))])
            member = idx < 250
            f = mb.random_member(k, rng, (0.0, 1.0) if member else (1.05, 2.0))
            lhs = mb.condition_lhs(f, k).lhs
            assert (lhs <= 1) if member else (1.05 <= lhs <= 2)
            m = orc.check_defining_inequality(f, k, geometry=False).min_re_ratio
            agree = m > -1e-9 if member else m < 0
            if not agree:
                bad += 1
                examples.setdefault(name, (round(lhs, 4), round(m, 4)))
        counts[name] = bad
    elapsed = time.perf_counter() - t0
    detail = ", ".join(f"{n} {counts[n]}/500 disagree" for n in NAMED)
    if examples:
        detail += "; first (lhs, min_re_ratio) per class: " + str(examples)
    record(1, sum(counts.values()) == 0 and elapsed < 60, f"{detail}; {elapsed:.1f}s")


def test_criterion_02_sharpness():
    worst = 0.0
    for name in NAMED:
        for alpha in ALPHAS:
            k = named_kernel(name, alpha)
            for n in range(1, 51):
                if n >= 2:
                    worst = max(worst, abs(mb.condition_lhs(mb.extreme_point(k, "H", n), k).lhs - 1))
                worst = max(worst, abs(mb.condition_lhs(mb.extreme_point(k, "G", n), k).lhs - 1))
    record(2, worst <= 1e-12, f"max |lhs - 1| = {worst:.2e} over 3 kernels x 4 alphas x n <= 50")


def test_criterion_03_gauss():
    rng = np.random.default_rng(3)
    worst = 0.0
    for _ in range(100):
        a, b = rng.uniform(0.05, 4.0, 2)
        p = (a, b, a + b + rng.uniform(0.3, 5.0))
        worst = max(worst, abs(hg.hyp_sum_at_one(p).value / hg.gauss_sum(p) - 1))
    exact = abs(hg.gauss_sum((1, 1, 3)) - 2)
    record(3, worst <= 1e-8 and exact <= 1e-12,
           f"max rel err {worst:.2e} over 100 draws; |F(1,1,3;1) - 2| = {exact:.1e}")


def test_criterion_04_tu_product():
    rng = np.random.default_rng(4)
    worst = -np.inf
    for _ in range(200):
        a, b = rng.uniform(0, 1, 2)
        f = mb.random_member(named_kernel("U", a), rng)
        F = mb.random_member(named_kernel("U", b), rng)
        target = named_kernel("U", 1 - (1 - a) * (1 - b))
        worst = max(worst, mb.condition_lhs(hat_product(f, F), target).lhs)
    edge = 0.0
    for a, b in [(0.0, 0.0), (0.25, 0.5), (0.7, 0.1), (0.9, 0.9)]:
        g2a = mb.extreme_point(named_kernel("U", a), "G", 2)
        g2b = mb.extreme_point(named_kernel("U", b), "G", 2)
        lhs = mb.condition_lhs(hat_product(g2a, g2b), named_kernel("U", 1 - (1 - a) * (1 - b))).lhs
        edge = max(edge, abs(lhs - 1))
    record(4, worst <= 1 + 1e-12 and edge <= 1e-12,
           f"max lhs {worst:.6f} over 200 pairs; boundary |lhs - 1| = {edge:.1e}")


def test_criterion_05_transforms():
    rng = np.random.default_rng(5)
    worst = -np.inf
    for idx in range(500):
        k = named_kernel(NAMED[idx % 3], float(rng.uniform(0, 0.95)))
        f = mb.random_member(k, rng)
        lhs = mb.condition_lhs(f, k).lhs
        g = float(rng.uniform(-1, 10))
        while g <= -1:
            g = float(rng.uniform(-1, 10))
        d = float(rng.uniform(-1, 1))
        worst = max(worst, mb.condition_lhs(tf.L_gamma(f, g), k).lhs - lhs,
                    mb.condition_lhs(tf.G_delta(f, d), k).lhs - lhs)
    quad_err = 0.0
    for _ in range(20):
        order = int(rng.integers(2, 7))
        f = HarmonicSeries.general(
            {n: complex(*rng.normal(size=2)) for n in range(2, order + 1)},
            {n: complex(*rng.normal(size=2)) for n in range(1, order + 1)},
        )
        z = 0.95 * np.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random())
        g, d = float(rng.uniform(-0.99, 10)), float(rng.uniform(-1, 0.99))
        quad_err = max(quad_err,
                       abs(bernardi_quad(f.h_coeffs(), f.g_coeffs(), z, g) - tf.L_gamma(f, g)(z)),
                       abs(diffq_quad(f.h_coeffs(), f.g_coeffs(), z, d) - tf.G_delta(f, d)(z)))
    record(5, worst <= 1e-12 and quad_err <= 1e-9,
           f"max lhs increase {worst:.1e} over 500 members; quadrature gap {quad_err:.1e}")


def test_criterion_06_radii():
    t0 = time.perf_counter()
    worst = 0.0
    for alpha in (0.0, 0.25, 0.5):
        f = HarmonicSeries.th(B={2: 1 - alpha})
        for prop, want in (("jacobian", 1 / (2 * (1 - alpha))), ("starlike", 1 / (2 * (1 - alpha))),
                           ("convex", 1 / (4 * (1 - alpha)))):
            worst = max(worst, abs(orc.radius_search(f, prop) - want))
    elapsed = time.perf_counter() - t0
    record(6, worst <= 1e-3 and elapsed < 30, f"max |r - expected| = {worst:.1e}; {elapsed:.1f}s")


def test_criterion_07_inclusions():
    rng = np.random.default_rng(7)
    failures = 0
    for name in ("convex", "starlike"):
        for _ in range(200):
            alpha = float(rng.uniform(0, 1))
            f = mb.random_member(named_kernel(name, alpha), rng, b1_zero=True)
            tu = named_kernel("U", mb.tu_inclusion_order(name, alpha))
            failures += not mb.condition_lhs(f, tu).verdict
    edge = 0.0
    for alpha in ALPHAS:
        for name, coeff in (("convex", (1 - alpha) / (2 * (2 - alpha))), ("starlike", (1 - alpha) / (2 - alpha))):
            tu = named_kernel("U", mb.tu_inclusion_order(name, alpha))
            edge = max(edge, abs(mb.condition_lhs(HarmonicSeries.th({2: coeff}), tu).lhs - 1))
    record(7, failures == 0 and edge <= 1e-12, f"{failures}/400 members fail; sharp |lhs - 1| = {edge:.1e}")


def test_criterion_08_figure1():
    res = orc.figure1_scan(60)
    z = res.samples["r"] * np.exp(1j * res.samples["theta"])
    gap = float(np.max(np.abs(res.samples["re"] + 1j * res.samples["im"] - orc.halfplane_closed_form(z) / z)))
    ok = res.min_re < 0 and res.samples.size >= 10**4 and gap <= 1e-6 and res.samples["r"].max() <= 0.98
    record(8, ok, f"min Re L(z)/z = {res.min_re:.4f} at r = {res.worst_point.r:.3f}; {res.samples.size} samples; "
                  f"closed-form gap {gap:.1e} (order floor 60, truncated at {res.order_used}; "
                  f"order-60 tail bound at r = 0.98 is {orc.halfplane_tail_bound(60, 0.98):.0f})")


def test_criterion_09_hypergeometric_consistency():
    rng = np.random.default_rng(9)
    degree = {"starlike": 1, "convex": 2, "U": 0}
    mismatches = 0
    for idx in range(50):
        name = NAMED[idx % 3]
        k = named_kernel(name, float(rng.uniform(0, 0.9)))
        params = []
        for _ in range(2):
            a, b = rng.uniform(0.1, 2.0, 2)
            params.append((a, b, a + b + degree[name] + rng.uniform(0.3, 3.0)))
        rep = hg.criterion_phi(*params, k, max_terms=200)
        cond = mb.condition_lhs(hg.phi_th(*params, 200), k)
        within = 0 <= rep.lhs - cond.lhs <= rep.tail_bound
        consistent = cond.verdict if rep.verdict else cond.lhs + rep.tail_bound > 1
        mismatches += not (within and consistent)
    s3, ok3 = hg.product_condition_phi((1, 1, 4), (1, 1, 4))
    s4, ok4 = hg.product_condition_psi((1, 1, 3), (1, 1, 3))
    boundary = ok3 and ok4 and abs(s3 - 3) <= 1e-12 and abs(s4 - 4) <= 1e-12
    record(9, mismatches == 0 and boundary,
           f"{mismatches}/50 draws outside the tail bound; boundary sums {s3:.15f}, {s4:.15f}")


def test_criterion_10_starlike_order_sharpness():
    t = np.linspace(0, 2 * np.pi, 4096, endpoint=False)
    worst = 0.0
    for lam in (0.25, 0.5, 1.0):
        f = HarmonicSeries.th(B={2: lam / 2})
        m = float(np.min(orc.starlike_derivative(f, 0.999 * np.exp(1j * t))))
        worst = max(worst, abs(m - 2 * (1 - lam) / (2 + lam)))
    record(10, worst <= 5e-3, f"max |min - 2(1-lam)/(2+lam)| = {worst:.1e}")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
