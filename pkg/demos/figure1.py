"""Half-plane map: Re(L(z)/z) turns negative near the boundary.

Run: python3 demos/figure1.py [out.png]
Writes a PNG when matplotlib is available, otherwise prints the summary only.
"""
import sys

import numpy as np

from harmconv import oracle as orc

res = orc.figure1_scan(60)
s = res.samples
print(f"min Re L(z)/z = {res.min_re:.4f} at r = {res.worst_point.r:.3f}, theta = {res.worst_point.theta:.3f}")
print(f"{s.size} samples, truncation order {res.order_used}")
for r in (0.5, 0.8, 0.9, 0.95, 0.98):
    near = np.isclose(s["r"], s["r"][np.argmin(np.abs(s["r"] - r))])
    print(f"r ~ {r:.2f}: min Re {s['stat'][near].min():+.4f}")

if len(sys.argv) > 1:
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        sys.exit("matplotlib not installed")
    z = s["r"] * np.exp(1j * s["theta"])
    fig, ax = plt.subplots(figsize=(5, 5))
    sc = ax.scatter(z.real, z.imag, c=s["stat"], s=2, cmap="coolwarm", vmin=-0.3, vmax=0.3)
    ax.set_aspect("equal")
    fig.colorbar(sc, label="Re L(z)/z")
    fig.savefig(sys.argv[1], dpi=150)
    print("wrote", sys.argv[1])
