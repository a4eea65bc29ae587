"""
Curvature change from ordered motion
====================================

If a fraction ``xi`` of a perfect fluid's particles turns from isotropic to
directed motion, its Ricci scalar changes by ``xi * 32 G p0 / c^4``.
"""

# %%
from eiwe import CurvatureInput, delta_ricci, xi

p0 = 101325.0  # Pa
for r in (0.3, 0.6, 1.0, 2.0):
    dR = delta_ricci(CurvatureInput(xi(r), p0))
    print(f"r = {r:.1f}, xi = {xi(r):.4f}: delta R = {dR:.4e} 1/m^2")
