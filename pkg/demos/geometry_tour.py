"""
Distances, horospheres and Koranyi regions in the bidisk
========================================================

Walks toward the vertex (1, 1) and prints how the boundary limsup, the
horosphere value and the Koranyi value behave along a few directions.
"""

import numpy as np

from polydisk import regions as RG
from polydisk.boundary import decompose
from polydisk.hyperbolic import kobayashi_distance, polydisk_automorphism

x = decompose([1, 1])
print(x)

# distance is the max of the coordinate Poincare distances
z, w = np.array([0.5, 0.25j]), np.array([-0.3 + 0.1j, 0.7])
print(f"k(z, w) = {kobayashi_distance(z, w):.15f}")
c = np.array([0.3, -0.6j])
print("after an automorphism:",
      f"{kobayashi_distance(polydisk_automorphism(c, z), polydisk_automorphism(c, w)):.15f}")

# three ways of approaching (1, 1): radial, tilted and tangential
print(f"\n{'eps':>10} {'radial K':>12} {'tilted K':>12} {'tangent K':>12}")
for k in (4, 8, 16, 24, 32):
    e = 2.0**-k
    rows = []
    for d in ([e, e], [e, 3 * e], [e, np.sqrt(e)]):
        d = np.array(d, dtype=complex)
        rows.append(RG.koranyi_value(x, x.coords - d, d))
    print(f"{e:10.3g} " + " ".join(f"{r:12.6g}" for r in rows))

# the closed-form boundary limsup and a few of its sublevel sets
zz = np.array([0.3 + 0.2j, 0.5j])
print(f"\nboundary limsup at {zz}: {RG.boundary_limsup(x, zz):.12f}")
for R in (0.5, 1.0, 2.0):
    print(f"in E(x, {R}):", RG.Horosphere(x, R).contains(zz))

report = RG.check_sandwich(x, 3.0, n=2000)
print("\nsandwich check at M = 3:", report["violations"], "violations over",
      report["balls_in_koranyi"]["checked"] + report["koranyi_in_stolz_product"]["checked"],
      "points")
