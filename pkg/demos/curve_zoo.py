"""
Classifying curves that end at a boundary point
===============================================

Prints the special / restricted / peculiar verdicts for every gallery
curve together with the last few values of the deciding quantities.
"""

from polydisk import curves as C

header = f"{'curve':28} {'special':>9} {'restricted':>10} {'peculiar':>9} {'Koranyi':>8}"
print(header)
print("-" * len(header))
for name in C.curve_names():
    cl = C.classify_curve(C.curve_gallery(name))
    print(f"{name:28} {cl.special:>9} {cl.restricted:>10} {cl.peculiar:>9} "
          f"{cl.koranyi_eventually:>8}")

# a restricted curve that is not special: its Koranyi value keeps growing
c = C.remark_1_6()
for k in (10, 20, 30, 40):
    print(f"eps = 2^-{k}: Koranyi value {C.koranyi_along(c, [2.0**-k])[0]:.4g}")

# the two special criteria on seeded random curves
agree = sum(
    s["kobayashi_verdict"] == s["ratio_verdict"]
    for s in (C.is_special(cur, strict=False) for cur in C.random_curves(50, seed=0))
)
print(f"\nspecial criteria agree on {agree}/50 random curves")
