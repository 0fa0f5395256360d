"""Radii of univalence, starlikeness and convexity for the extremal U-class map.

Run: python3 demos/radii.py
"""
from harmconv import membership as mb
from harmconv import oracle as orc
from harmconv.series import HarmonicSeries

print(" alpha   jacobian  starlike  convex   expected")
for alpha in (0.0, 0.25, 0.5):
    f = HarmonicSeries.th(B={2: 1 - alpha})
    found = [orc.radius_search(f, p) for p in ("jacobian", "starlike", "convex")]
    print(f" {alpha:5.2f}   " + "  ".join(f"{r:.5f}" for r in found), "  ", mb.class_radii(alpha))

# the starlikeness order of z + (lam/2) conj(z)^2 is approached at the boundary
for lam in (0.25, 0.5, 1.0):
    f = HarmonicSeries.th(B={2: lam / 2})
    print(f"lam = {lam}: circle min at r = 0.999 is "
          f"{orc._circle_min(f, orc.Property.STARLIKE, 0.999, 4096):.4f}, limit {mb.lemma32_orders(lam)[2]:.4f}")
