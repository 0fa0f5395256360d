"""Gauss sums and the hypergeometric membership criteria.

Run: python3 demos/hypergeometric_criteria.py
"""
import numpy as np

from harmconv import hypergeom as hg
from harmconv import membership as mb
from harmconv.kernels import named_kernel

# %% closed form against the accelerated partial sum
for p in [(1, 1, 3), (0.5, 0.7, 2.5), (2.0, 1.5, 3.8)]:
    s = hg.hyp_sum_at_one(p)
    print(f"F{p}(1): gauss {hg.gauss_sum(p):.15f}  series {s.value:.15f}  terms {s.terms_used}")

# %% criterion values and their agreement with an order-200 truncation
p1, p2 = (1, 1, 5), (0.5, 0.5, 4)
for name in ("starlike", "convex", "U"):
    k = named_kernel(name, 0.1)
    rep = hg.criterion_phi(p1, p2, k)
    trunc = mb.condition_lhs(hg.phi_th(p1, p2, 200), k).lhs
    print(f"{name:>8}: lhs {rep.lhs:.10f} (tail <= {rep.tail_bound:.1e})  order-200 {trunc:.10f}  member {rep.verdict}")

# %% product thresholds sit exactly on their boundary pairs
print("phi product at (1,1,4):", hg.product_condition_phi((1, 1, 4), (1, 1, 4)))
print("psi product at (1,1,3):", hg.product_condition_psi((1, 1, 3), (1, 1, 3)))

# %% lhs falls as c grows
cs = np.linspace(4.5, 8, 8)
print("starlike lhs vs c:", np.round([hg.criterion_phi((1, 1, c), None, named_kernel("starlike")).lhs for c in cs], 4))
