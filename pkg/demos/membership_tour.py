"""Coefficient condition, extreme points and the disk oracle for the three named kernels.

Run: python3 demos/membership_tour.py
"""
import numpy as np

from harmconv import membership as mb
from harmconv import oracle as orc
from harmconv.kernels import named_kernel
from harmconv.series import HarmonicSeries

alpha = 0.25
rng = np.random.default_rng(0)

# %% a member and its decomposition into extreme points
k = named_kernel("starlike", alpha)
f = mb.random_member(k, rng, (0.6, 0.9))
rep = mb.condition_lhs(f, k)
d = mb.decompose(f, k)
print(f"starlike({alpha}): lhs = {rep.lhs:.4f}, weights sum to {d.total:.12f}")
print("reconstruction gap:", np.max(np.abs(mb.reconstruct(d, k).to_general().coanalytic - f.to_general().coanalytic)))

# %% the oracle agrees for members of every class
for name in ("starlike", "convex", "U"):
    k = named_kernel(name, alpha)
    g = mb.random_member(k, rng)
    m = orc.check_defining_inequality(g, k, geometry=False).min_re_ratio
    print(f"{name:>8}: lhs {mb.condition_lhs(g, k).lhs:.3f}  min Re ratio - alpha = {m:+.4f}")

# %% non-members: the starlike kernel always shows a violation, U need not
bad = HarmonicSeries.th({2: 0.6}, {2: 0.6})
for name in ("starlike", "U"):
    k = named_kernel(name, 0.0)
    m = orc.check_defining_inequality(bad, k, geometry=False).min_re_ratio
    print(f"{name:>8}: lhs {mb.condition_lhs(bad, k).lhs:.2f}  oracle min {m:+.4f}")

# %% coefficient bounds and growth
k = named_kernel("convex", alpha)
for n in (2, 3, 4):
    print(f"n = {n}: (A_n, B_n) <= {mb.coefficient_bounds(k, n)}")
gb = mb.growth_and_covering(k, B1=0.1)
print("growth at r = 0.5:", float(gb.lower(0.5)), "<= |f| <=", float(gb.upper(0.5)))
print("covering radius:", gb.covering_radius)
