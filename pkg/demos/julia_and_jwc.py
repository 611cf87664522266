"""
Julia coefficients and boundary derivatives
===========================================

For a few maps into the disk: the Julia coefficient at a vertex, the
horosphere inclusion it implies, and the restricted limits of the
incremental ratios and partial derivatives.
"""

from polydisk import limits as L
from polydisk.boundary import decompose
from polydisk.functions import gallery

x = decompose([1, 1])

for name, params in [("remark-4.2", {"a": 0.8, "b": 0.4}), ("herglotz-pair", {}),
                     ("monomial", {"p": 2, "q": 3})]:
    f = gallery(name, **params)
    jr = L.julia_coefficient(f, x)
    inc = L.julia_inclusion_check(f, x, jr, n=500)
    print(f"\n{name} {params}")
    print(f"  alpha = {jr.alpha:.12g}, tau = {jr.tau}")
    print("  inclusion violations:", [r["violations"] for r in inc])

    r = L.jwc_suite(f, x, jr)
    print(f"  incremental ratio limit   {r.part_i.value:.10g}")
    print(f"  derivative along x        {r.part_iii['x'].value:.10g}")
    for j, est in r.part_v.items():
        print(f"  d f / d z_{j + 1} -> {est.value:.10g}   (b = {r.b[j]:.10g})")
    print(f"  sum rule residual {r.sum_rule_residual:.2e}, findings: {r.findings or 'none'}")

# internal coordinates: the derivative in that direction vanishes
r = L.jwc_suite(gallery("coordinate-1"), decompose([1, 0.3]))
print("\ncoordinate-1 at (1, 0.3): internal derivative ->", r.part_iv[1].value)
