"""The acceptance scenarios, shared by the test suite and ``polydisk paper-suite``.

Each ``check_*`` function returns a ``CheckResult`` whose ``details`` hold
the measured quantities next to the tolerance they were held to.
"""

from dataclasses import dataclass, field

import numpy as np

from . import curves as C
from . import limits as L
from . import regions as RG
from .boundary import decompose, retraction
from .functions import gallery, gallery_names
from .hyperbolic import (
    kobayashi_distance,
    poincare_distance_stable,
    polydisk_automorphism,
)
from .sampling import sample_disk, sample_koranyi, sample_polydisk


@dataclass
class CheckResult:
    name: str
    passed: bool
    assertions: int
    details: dict = field(default_factory=dict)

    def line(self):
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name} ({self.assertions} assertions)"

    def to_dict(self):
        return L._jsonable({"name": self.name, "passed": self.passed,
                            "assertions": self.assertions, "details": self.details})


class _Tally:
    def __init__(self):
        self.n = 0
        self.failed = []

    def check(self, label, ok):
        self.n += 1
        if not ok:
            self.failed.append(label)
        return ok


# 1 -------------------------------------------------------------------------


def check_metric(n_configs=1000, rmax=0.99, center_rmax=0.9, seed=0):
    """Metric axioms and automorphism invariance in the bidisk and tridisk.

    Points have sup-norm at most ``rmax`` and automorphism centers at most
    ``center_rmax``; images then stay far enough from the torus for double
    precision to resolve distances to 1e-12.
    """
    t = _Tally()
    details = {"tolerance": 1e-12, "rmax": rmax, "center_rmax": center_rmax}
    for n in (2, 3):
        a = sample_polydisk(n_configs, n, seed + 1, rmax)
        b = sample_polydisk(n_configs, n, seed + 2, rmax)[::-1]
        c = sample_polydisk(n_configs, n, seed + 3, rmax)[::-1] * np.exp(0.7j)
        z = sample_polydisk(n_configs, n, seed + 4, center_rmax) * np.exp(-1.3j)
        kab = kobayashi_distance(a, b)
        worst = {
            "identity": float(np.max(np.abs(kobayashi_distance(a, a)))),
            "symmetry": float(np.max(np.abs(kab - kobayashi_distance(b, a)))),
            "triangle": float(max(0.0, np.max(
                kab - kobayashi_distance(a, c) - kobayashi_distance(c, b)))),
            "invariance": float(np.max(np.abs(kobayashi_distance(
                polydisk_automorphism(z, a), polydisk_automorphism(z, b)) - kab))),
            "projection": float(max(0.0, np.max(
                np.max(poincare_distance_stable(a, b), axis=-1) - kab))),
        }
        worst["positivity"] = float(max(0.0, -np.min(kab)))
        for k, v in worst.items():
            t.check(f"{k} n={n}", v <= 1e-12)
        details[f"n={n}"] = worst
        # informational: unrestricted samples reach float conditioning limits
        fa = sample_polydisk(n_configs, n, seed + 5)
        fb = sample_polydisk(n_configs, n, seed + 6)
        fz = sample_polydisk(n_configs, n, seed + 7)
        details[f"n={n}"]["invariance_full_disk"] = float(np.max(np.abs(
            kobayashi_distance(polydisk_automorphism(fz, fa), polydisk_automorphism(fz, fb))
            - kobayashi_distance(fa, fb))))
    details["failed"] = t.failed
    return CheckResult("1 metric axioms and automorphism invariance", not t.failed,
                       t.n, details)


# 2 -------------------------------------------------------------------------


def gallery_curves():
    out = [C.curve_gallery(name) for name in C.curve_names()]
    out += [C.radial([1, 0.3]), C.radial([1j, -1, 0.5]),
            C.remark_2_1_sigma(0.75), C.remark_2_3_sigma(0.25, 0.75),
            C.remark_4_5_sigma([1, 0.5j, 0.2], [0, 1, 1j], 1.0)]
    return out


def check_special_equivalence(n_random=50, seed=0):
    t = _Tally()
    rows = []
    curves = gallery_curves() + C.random_curves(n_random, seed)
    for cur in curves:
        sp = C.is_special(cur, strict=False)
        agree = sp["kobayashi_verdict"] == sp["ratio_verdict"]
        t.check(cur.label, agree)
        exp = cur.expected.get("special")
        if exp is not None:
            t.check(f"{cur.label} expected", sp["ratio_verdict"] == exp)
        rows.append({"curve": cur.label, "kobayashi": sp["kobayashi_verdict"],
                     "ratio": sp["ratio_verdict"]})
    verdicts = [r["ratio"] for r in rows]
    details = {"curves": len(rows), "disagreements": [r for r in rows
                                                     if r["kobayashi"] != r["ratio"]],
               "counts": {v: verdicts.count(v) for v in ("yes", "no", "undecided")},
               "failed": t.failed}
    return CheckResult("2 special-curve criteria agree", not t.failed, t.n, details)


# 3 -------------------------------------------------------------------------


def check_boundary_limsup(n_pairs=100, seed=0):
    rng = np.random.default_rng(seed)
    t = _Tally()
    worst = 0.0
    eps = 2.0 ** -np.arange(10, 51, dtype=float)
    for i in range(n_pairs):
        x = C.random_boundary_point(rng, n=2 + i % 2)
        z = sample_polydisk(1, x.n, seed + 10 + i)[0] * rng.uniform(0.2, 1.0)
        closed = float(RG.boundary_limsup(x, z))
        seq = RG.radial_limsup_term(x, z, eps)
        est = L.estimate_limit(seq, tol=1e-10)
        err = abs(est.value - closed) if est.converged else np.inf
        worst = max(worst, err)
        t.check(f"pair {i}", err <= 1e-8)
    return CheckResult("3 boundary limsup closed form vs radial limit", not t.failed,
                       t.n, {"max_error": worst, "tolerance": 1e-8, "failed": t.failed})


# 4 -------------------------------------------------------------------------

REGION_POINTS = ([1, 1], [1, 0.3], [1j, -0.5, np.exp(2j)])


def check_region_inclusions(n=10_000, amplitudes=(1.5, 3.0, 10.0), seed=0):
    t = _Tally()
    details = {}
    # half uniform, half approaching 1 along rays inside the disk
    m = n - n // 2
    r = 2.0 ** -np.linspace(1, 40, m)
    ang = np.arccos(r / 2) * np.linspace(-0.999, 0.999, m)[::-1]
    zeta = np.concatenate([sample_disk(n // 2, seed), 1.0 - r * np.exp(1j * ang)])
    for M in amplitudes:
        for xi, xc in enumerate(REGION_POINTS):
            x = decompose(xc)
            key = f"M={M} x={xi}"
            sw = RG.check_sandwich(x, M, n, seed=seed + xi)
            t.check(f"sandwich {key}", sw["violations"] == 0
                    and sw["balls_in_koranyi"]["checked"] >= n
                    and sw["koranyi_in_stolz_product"]["checked"] >= n)
            tr = RG.geodesic_trace_check(x, M, M, zeta)
            t.check(f"trace {key}", tr["violations"] == 0 and tr["checked"] >= n)
            incl = {}
            for R in (1.0, M):
                r = RG.remark_2_3_inclusion(x, M, R, n, seed=seed + 7 + xi)
                incl[f"R={R}"] = r
                t.check(f"ball complement {key} R={R}", r["violations"] == 0)
            details[key] = {
                "sandwich": {k: sw[k] for k in ("balls_in_koranyi",
                                                "koranyi_in_stolz_product",
                                                "internal_witnesses")},
                "trace": tr, "ball_complement": incl}
        br = RG.bidisk_ratio_bounds(M, n, seed=seed)
        t.check(f"bidisk ratios M={M}", br["violations"] == 0)
        details[f"bidisk M={M}"] = br
    details["failed"] = t.failed
    return CheckResult("4 sandwich, geodesic trace and ball-complement inclusions",
                       not t.failed, t.n, details)


# 5 -------------------------------------------------------------------------

M_GRID = (1.05, 1.2, 1.5, 2.0, 3.0, 5.0, 10.0)


def check_restricted_koranyi(n_random=50, seed=0):
    t = _Tally()
    rows = []
    curves = (gallery_curves() + C.random_curves(n_random, seed + 1)
              + [C.swinging_curve([1, 1], M, omega=0.7, phase=0.3,
                                  schedule=C.FAMILY_SCHEDULE)
                 for M in (1.5, 4.0, 10.0)]
              + [C.swinging_curve([1, 0.3j, -1], 3.0, omega=1.3, internal_seed=5,
                                  schedule=C.FAMILY_SCHEDULE)])
    for cur in curves:
        st = C.project(cur).stolz()
        sx, _ = C.project_curve(cur)
        kx = C.koranyi_along(sx)
        rel = float(np.max(np.abs(kx - st**2) / st**2))
        t.check(f"{cur.label} projection identity", rel <= 1e-9)
        kz = C.koranyi_along(cur)
        row = {"curve": cur.label, "projection_identity": rel}
        for M in M_GRID:
            m_restr = C.eventually_inside(st, M)
            t.check(f"{cur.label} (i) M={M}", m_restr == C.eventually_inside(kx, M**2))
            if C.eventually_inside(kz, M**2):
                t.check(f"{cur.label} (ii) M={M}", m_restr)
        sp = C.is_special(cur, strict=False)["verdict"]
        rs = C.is_restricted(cur)
        if sp == "yes" and rs["verdict"] == "yes":
            for M in [rs["amplitude"] * 1.0001] + [m for m in M_GRID if m > rs["amplitude"]]:
                if C.eventually_inside(st, M):
                    ok = C.eventually_inside(kz, (1.1 * M) ** 2)
                    t.check(f"{cur.label} (iii) M={M:.4g}", ok)
            row["iii_amplitude"] = rs["amplitude"]
        rows.append(row)
    # pointwise form of (ii): the retraction does not increase the Koranyi value
    for xi, xc in enumerate(REGION_POINTS):
        x = decompose(xc)
        z, d = sample_koranyi(x, 3.0, 5000, seed=seed + xi)
        q = (d @ np.conj(x.silov_part)) / x.degree
        kp = RG.koranyi_value(x, retraction(x, z), q[:, None] * x.coords)
        t.check(f"retraction pointwise x={xi}",
                bool(np.all(kp <= RG.koranyi_value(x, z, d) * (1 + 1e-9))))
    return CheckResult("5 restricted curves versus Koranyi regions", not t.failed, t.n,
                       {"curves": len(rows), "rows": rows, "failed": t.failed})


# 6 -------------------------------------------------------------------------


def check_counterexamples():
    t = _Tally()
    d = {}
    x11 = decompose([1, 1])
    # curve that is special but not tangent to the diagonal
    c = C.remark_1_1()
    ratio = C.full_norm_ratio(c)
    d["remark-1.1"] = {"special": C.is_special(c)["verdict"],
                       "full_norm_ratio_max_error": float(np.max(np.abs(ratio - 1)))}
    t.check("1.1 special", d["remark-1.1"]["special"] == "yes")
    t.check("1.1 ratio identically 1", d["remark-1.1"]["full_norm_ratio_max_error"] <= 1e-12)
    # restricted, not special, leaves every Koranyi region
    c = C.remark_1_6()
    cl = C.classify_curve(c)
    kor30 = float(C.koranyi_along(c, [2.0**-30])[0])
    d["remark-1.6"] = {"special": cl.special, "restricted": cl.restricted,
                       "m_restricted_at": cl.m_restricted_at,
                       "koranyi_eventually": cl.koranyi_eventually,
                       "koranyi_at_2^-30": kor30}
    st = C.project(c).stolz()
    t.check("1.6 restricted for all M", cl.restricted == "yes" and all(
        C.eventually_inside(st, M) for M in (1.001, 1.01, 1.5, 10.0)))
    t.check("1.6 not special", cl.special == "no")
    t.check("1.6 Koranyi value diverges", kor30 >= 1e3 and cl.koranyi_eventually == "no")
    # square-root quotient
    f = gallery("remark-2.1")
    rk = L.restricted_K_limit(f, x11)
    t.check("2.1 restricted K-limit 0", rk.converged and abs(rk.value) <= 1e-6
            and rk.diagnostics["spread"] <= 1e-6)
    s = C.remark_2_1_sigma(0.75)
    z, dd = s.evaluate()
    vals = f(z, (1 - x11.coords) + dd)
    dev = float(np.max(np.abs(vals - 1 / 3)))
    t.check("2.1 constant 1/3 along sigma", dev <= 1e-10)
    kl = L.K_limit(f, x11)
    t.check("2.1 no K-limit", kl.verdict == "no_limit")
    d["remark-2.1"] = {"restricted_K_limit": rk.to_dict(tail=False),
                       "sigma_0.75_max_deviation_from_1/3": dev,
                       "K_limit": kl.verdict}
    # exponent quotient
    f = gallery("remark-2.3", a=0.5)
    kl = L.K_limit(f, x11)
    t.check("2.3 K-limit 1", kl.converged and abs(kl.value - 1) <= 1e-4)
    s = C.remark_2_3_sigma(0.25, 0.5)
    est = L.limit_along_curve(L.value_obs(f), s, tol=1e-6)
    t.check("2.3 sigma peculiar", C.is_peculiar(s)["verdict"] == "yes")
    t.check("2.3 limit 1/3 along sigma", est.converged and abs(est.value - 1 / 3) <= 1e-6)
    re = L.restricted_E_limit(f, x11)
    t.check("2.3 no restricted E-limit", re.verdict == "no_limit")
    d["remark-2.3"] = {"K_limit": kl.to_dict(tail=False),
                       "sigma_0.25_limit": L._cplx(est.value),
                       "restricted_E_limit": re.verdict,
                       "disagreement": re.diagnostics.get("disagreement")}
    d["failed"] = t.failed
    return CheckResult("6 counterexamples", not t.failed, t.n, d)


# 7 -------------------------------------------------------------------------


def check_julia(n=500, seed=0):
    t = _Tally()
    d = {}
    cases = [("coordinate-1", {}, [1, 0.3], 1.0), ("remark-4.2", {"a": 0.8, "b": 0.4},
                                                    [1, 1], 0.8)]
    for name, params, xc, alpha in cases:
        f = gallery(name, **params)
        x = decompose(xc)
        rep = L.julia_coefficient(f, x)
        t.check(f"{name} alpha", abs(rep.alpha - alpha) <= 1e-9)
        t.check(f"{name} tau", rep.tau is not None and abs(rep.tau - 1) <= 1e-12)
        t.check(f"{name} positivity", rep.diagnostics["positivity_holds"])
        gap_err = abs(rep.diagnostics["gap_limit"] - 0.5 * np.log(rep.alpha))
        t.check(f"{name} Kobayashi gap", gap_err <= 1e-10)
        inc = L.julia_inclusion_check(f, x, rep, (0.5, 1.0, 2.0), n, seed)
        t.check(f"{name} inclusion", all(r["violations"] == 0 and r["checked"] == n
                                         for r in inc))
        others = L.random_curve_liminf_check(
            f, x, rep, [C.swinging_curve(x, 3.0, omega=0.9),
                        C.perturbed_curve(x, 1.7, 0.5, 0.4),
                        C.perturbed_curve(x, 0.7, 0.5, 0.4)])
        t.check(f"{name} other curves not below alpha", all(o["ok"] for o in others))
        d[name] = {"alpha": rep.alpha, "tau": L._cplx(rep.tau),
                   "positivity_bound": rep.diagnostics["positivity_bound"],
                   "min_ratio": rep.diagnostics["min_ratio"], "gap_error": gap_err,
                   "inclusion": inc, "other_curves": others}
    inf = L.julia_coefficient(gallery("constant", c=0.5), decompose([1, 1]))
    t.check("constant not Julia", inf.alpha == np.inf)
    d["constant"] = {"alpha": "inf" if inf.alpha == np.inf else inf.alpha}
    d["failed"] = t.failed
    return CheckResult("7 Julia coefficients, boundary values and horosphere inclusion",
                       not t.failed, t.n, d)


# 8 -------------------------------------------------------------------------


def check_jwc():
    t = _Tally()
    f = gallery("remark-4.2", a=0.8, b=0.4)
    x = decompose([1, 1])
    r = L.jwc_suite(f, x)
    tol = 1e-6

    def near(est, target):
        return est.converged and abs(est.value - target) <= tol

    t.check("i", near(r.part_i, 0.8))
    t.check("ii[1]", near(r.part_ii[0], 0.8))
    t.check("ii[2]", near(r.part_ii[1], 0.8))
    t.check("iii x", near(r.part_iii["x"], 0.8))
    t.check("iii x_check", near(r.part_iii["x_check"], 0.8))
    t.check("v[1]", near(r.part_v[0], 0.6))
    t.check("v[2]", near(r.part_v[1], 0.2))
    t.check("b sum", abs(sum(r.b.values()) - 0.8) <= tol)
    t.check("sum rule", r.sum_rule_residual <= tol)
    t.check("no findings", not r.findings)
    f1 = gallery("coordinate-1")
    x1 = decompose([1, 0.3])
    r1 = L.jwc_suite(f1, x1)
    t.check("coordinate iv", r1.part_iv[1].converged and abs(r1.part_iv[1].value) <= 1e-8)
    t.check("coordinate i", near(r1.part_i, 1.0))
    t.check("coordinate iii", near(r1.part_iii["x"], 1.0))
    t.check("coordinate v", near(r1.part_v[0], 1.0))
    t.check("coordinate all directions", all(
        v == "converged" for v in r1.extra["all_directions"]))
    d = {"remark-4.2": {
        "i": L._cplx(r.part_i.value), "ii": {j + 1: L._cplx(e.value) for j, e in r.part_ii.items()},
        "iii": {k: L._cplx(e.value) for k, e in r.part_iii.items()},
        "v": {j + 1: L._cplx(e.value) for j, e in r.part_v.items()},
        "sum_rule_residual": r.sum_rule_residual, "findings": r.findings},
        "coordinate-1": {"iv": L._cplx(r1.part_iv[1].value), "findings": r1.findings},
        "failed": t.failed}
    return CheckResult("8 Julia-Wolff-Caratheodory limits", not t.failed, t.n, d)


# 9 -------------------------------------------------------------------------

ENVELOPE_C = 100.0


def check_bounds(n=10_000, amplitudes=(1.5, 3.0, 10.0), seed=0):
    t = _Tally()
    d = {}
    f = gallery("remark-4.2", a=0.8, b=0.4)
    x = decompose([1, 1])
    jr = L.julia_coefficient(f, x)
    for M in amplitudes:
        b = L.lemma_bound_checks(f, x, M, jr, n=n, seed=seed)
        for k in ("ratio_bound", "geodesic_disk", "metric_bound"):
            t.check(f"{k} M={M}", b[k]["violations"] == 0 and b[k]["checked"] >= n)
        d[f"M={M}"] = b
    worst = 0.0
    per = {}
    for name, params, xc in (("remark-4.2", {"a": 0.8, "b": 0.4}, [1, 1]),
                             ("coordinate-1", {}, [1, 0.3]),
                             ("herglotz-pair", {}, [1, 1]),
                             ("monomial", {"p": 2, "q": 3}, [1, 1])):
        g = gallery(name, **params)
        xx = decompose(xc)
        rep = L.julia_coefficient(g, xx)
        e = max(L.derivative_envelope(g, xx, M, rep, n=2000, seed=seed) for M in amplitudes)
        per[name] = e
        worst = max(worst, e)
    t.check("derivative envelope", worst <= ENVELOPE_C)
    d["derivative_envelope"] = {"C": ENVELOPE_C, "observed_max": worst, "per_map": per}
    d["failed"] = t.failed
    return CheckResult("9 incremental-ratio, geodesic-disk and metric bounds", not t.failed,
                       t.n, d)


# 10 ------------------------------------------------------------------------


def check_polydisk_target():
    t = _Tally()
    F = gallery("section-5-pair")
    x = decompose([1, 1])
    rep = L.polydisk_target_julia(F, x)
    c1, c2 = rep["components"]
    t.check("component 1 Julia", c1["julia"] is True and abs(c1["alpha"] - 1) <= 1e-9)
    t.check("component 2 no radial limit", c2["radial_limit"] == "no_limit")
    g = L.limit_along_curve(L.value_obs(gallery("section-5-g")), C.radial([1]))
    t.check("g has no radial limit", g.verdict == "no_limit")
    witness = [[0.5, 1 - np.exp(-np.pi)]]
    hm = L.horosphere_map_check(F, x, x, 1.0, 1.0, witnesses=witness)
    t.check("horosphere not mapped into horosphere", hm["violations"] > 0)
    return CheckResult("10 maps into the bidisk", not t.failed, t.n,
                       {"components": rep, "horosphere": hm, "failed": t.failed})


# 11 ------------------------------------------------------------------------


def gallery_instances():
    out = []
    for name in gallery_names():
        if name == "coordinate-3":
            out.append(gallery(name, n=3))
        elif name == "remark-2.3":
            out += [gallery(name, a=0.5), gallery(name, a=0.25)]
        else:
            out.append(gallery(name))
    return out


def finite_difference_error(f, n_points=1000, seed=0, h=1e-6, rmax=0.9):
    """Max relative gap between dual derivatives and central differences
    along ``v`` and ``i v``."""
    rng = np.random.default_rng(seed)
    z = sample_polydisk(n_points, f.arity, seed, rmax)
    v = rng.normal(size=z.shape) + 1j * rng.normal(size=z.shape)
    worst = 0.0
    for u in (v, 1j * v):
        exact = f.derivative(z, u)
        fd = (f.evaluate(z + h * u) - f.evaluate(z - h * u)) / (2 * h)
        err = np.abs(exact - fd) / np.maximum(np.abs(exact), 1e-8)
        worst = max(worst, float(np.max(err)))
    return worst


def check_derivatives(n_points=1000, seed=0):
    t = _Tally()
    d = {}
    for f in gallery_instances():
        e = finite_difference_error(f, n_points, seed)
        key = f"{f.label}{f.params if f.params else ''}"
        d[key] = e
        t.check(key, e <= 1e-6)
    d["failed"] = t.failed
    return CheckResult("11 dual derivatives versus central differences", not t.failed,
                       t.n, d)


CHECKS = (
    check_metric,
    check_special_equivalence,
    check_boundary_limsup,
    check_region_inclusions,
    check_restricted_koranyi,
    check_counterexamples,
    check_julia,
    check_jwc,
    check_bounds,
    check_polydisk_target,
    check_derivatives,
)


def run_all(checks=CHECKS):
    return [c() for c in checks]
