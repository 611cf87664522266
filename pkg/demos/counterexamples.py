"""
Where the boundary theory stops
===============================

Maps whose limits depend on how the boundary point is approached, and a
map into the bidisk with one Julia component and one without a limit.
"""

import numpy as np

from polydisk import curves as C
from polydisk import limits as L
from polydisk.boundary import decompose
from polydisk.functions import gallery

x = decompose([1, 1])

f = gallery("remark-2.1")
print("square-root quotient")
print("  limit along special restricted curves:", L.restricted_K_limit(f, x).value)
for lam in (0.25, 0.5, 0.75):
    est = L.limit_along_curve(L.value_obs(f), C.remark_2_1_sigma(lam))
    print(f"  along the tangential curve with lambda = {lam}: {est.value:.12f}")
print("  K-limit verdict:", L.K_limit(f, x).verdict)

f = gallery("remark-2.3", a=0.5)
print("\nexponent quotient (a = 0.5)")
print("  K-limit:", L.K_limit(f, x).value)
est = L.limit_along_curve(L.value_obs(f), C.remark_2_3_sigma(0.25, 0.5))
print(f"  along a peculiar tangential curve: {est.value:.10f}")
print("  restricted E-limit verdict:", L.restricted_E_limit(f, x).verdict)

F = gallery("section-5-pair")
rep = L.polydisk_target_julia(F, x)
print("\npair map into the bidisk")
for c in rep["components"]:
    print("  component", c["component"], {k: c[k] for k in ("julia", "radial_limit")})
hm = L.horosphere_map_check(F, x, x, 1.0, 1.0, witnesses=[[0.5, 1 - np.exp(-np.pi)]])
print("  points of E(x, 1) sent outside E(x, 1):", hm["violations"], "of", hm["checked"])
print("  witness:", hm["witness"])
