"""Limits along curves and regions, Julia coefficients and the
Julia-Wolff-Carathéodory checks.

Quantities are evaluated through "observables" ``obs(z, w, delta)`` where
``w = 1 - z`` and ``delta = x - z`` come straight from a curve or sampler,
so incremental ratios stay accurate at ``eps = 2**-80``.
"""

from dataclasses import dataclass, field

import numpy as np

from .boundary import _as_boundary, decompose, one_minus_left_inverse
from .curves import (
    ConsistencyError,
    dyadic_schedule,
    is_restricted,
    is_special,
    peculiar_family,
    radial,
    special_restricted_family,
)
from .hyperbolic import kobayashi_metric, one_minus_abs_sq
from .regions import (
    classify,
    coordinate_one_minus_sq,
    horocycle_value,
    horosphere_value,
    koranyi_value,
)
from .sampling import sample_horosphere, sample_koranyi

LIMIT_TOL = 1e-6
BOUND_SLACK = 1e-9
AITKEN_MIN_DEN = 1e-13
ALPHA_INFINITE = 1e12
SNAP_TOL = 1e-12


class PreconditionError(ValueError):
    """The input does not satisfy the hypothesis of the check requested."""


# -- sequence limits --------------------------------------------------------


@dataclass
class LimitEstimate:
    verdict: str  # converged | diverged_to_infinity | no_limit | undecided
    value: complex = None
    tail: np.ndarray = None
    accelerated: complex = None
    tolerance: float = LIMIT_TOL
    diagnostics: dict = field(default_factory=dict)

    @property
    def converged(self):
        return self.verdict == "converged"

    def to_dict(self, tail=True):
        out = {
            "verdict": self.verdict,
            "value": _cplx(self.value),
            "accelerated": _cplx(self.accelerated),
            "tolerance": self.tolerance,
            "diagnostics": _jsonable(self.diagnostics),
        }
        if tail and self.tail is not None:
            out["tail"] = [_cplx(t) for t in np.asarray(self.tail)[-8:]]
        return out


def _cplx(z):
    if z is None:
        return None
    z = complex(z)
    return [z.real, z.imag]


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (complex, np.complexfloating)):
        return _cplx(obj)
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    return obj


def aitken(v, passes=3):
    """Iterated Aitken delta-squared; stops at the first pass whose
    denominators fall below ``AITKEN_MIN_DEN`` in modulus."""
    v = np.asarray(v, dtype=complex)
    out = None
    for _ in range(passes):
        if v.size < 3:
            break
        d1 = v[1:-1] - v[:-2]
        d2 = v[2:] - 2 * v[1:-1] + v[:-2]
        if np.any(np.abs(d2) < AITKEN_MIN_DEN):
            break
        v = v[:-2] - d1**2 / d2
        out = v
    return out


def growth_rates(a):
    """Log2 growth per step over both quarters of the second half."""
    half = np.asarray(a, float)[len(a) // 2:]
    m = half.size // 2
    if m < 1 or np.any(half <= 0):
        return 0.0, 0.0
    return (np.log2(half[m] / half[0]) / m,
            np.log2(half[-1] / half[m]) / (half.size - 1 - m))


def is_diverging(a, window=5):
    """Monotone growth over the second half with ``|v| >= 1e12``, or with
    ``|v| >= 1e4`` and power-law rate at least 0.25 per step."""
    a = np.asarray(a, float)
    half = a[len(a) // 2:]
    if half.size < 2 or not np.all(np.diff(half) > 0):
        return False
    if half[-1] >= ALPHA_INFINITE:
        return True
    return half[-1] >= 1e4 and min(growth_rates(a)) >= 0.25


def estimate_limit(values, tol=LIMIT_TOL, window=5):
    """Classify the limit of a sampled sequence (ordered toward the boundary).

    converged: the last ``window`` values, raw or after iterated Aitken
    acceleration (attempted only when successive steps contract), vary by
    at most ``tol``. diverged_to_infinity: see ``is_diverging``.
    no_limit: the window varies by at least ``10 tol`` and the step sizes
    do not decay. Anything else is undecided.
    """
    v = np.asarray(values, dtype=complex)
    diag = {"window": window}
    if v.size < window + 2:
        return LimitEstimate("undecided", tail=v, tolerance=tol,
                             diagnostics={"reason": "sequence too short"})
    tail = v[-window:]
    if not np.all(np.isfinite(tail)):
        verdict = "diverged_to_infinity" if np.any(np.isinf(tail)) else "undecided"
        return LimitEstimate(verdict, tail=v, tolerance=tol,
                             diagnostics={"reason": "non-finite values"})
    if is_diverging(np.abs(v), window):
        return LimitEstimate("diverged_to_infinity", tail=v, tolerance=tol,
                             diagnostics={"growth_rates": growth_rates(np.abs(v))})
    osc = float(np.max(np.abs(tail - tail[-1])))
    diag["oscillation"] = osc
    if osc <= tol:
        return LimitEstimate("converged", complex(tail[-1]), v, None, tol, diag)
    steps = np.abs(np.diff(v[-(window + 1):]))
    contracting = bool(np.all(steps[1:] <= 0.95 * steps[:-1]))
    diag["contracting"] = contracting
    if contracting:
        acc = aitken(v)
        if acc is not None and acc.size >= window:
            at = acc[-window:]
            aosc = float(np.max(np.abs(at - at[-1])))
            diag["accelerated_oscillation"] = aosc
            if aosc <= tol:
                return LimitEstimate("converged", complex(at[-1]), v, complex(at[-1]),
                                     tol, diag)
    half = max(2, (window + 1) // 2)
    decay = float(np.mean(steps[-half:]) / max(np.mean(steps[:half]), 1e-300))
    diag["step_decay"] = decay
    if osc >= 10 * tol and decay >= 0.95:
        return LimitEstimate("no_limit", None, v, None, tol, diag)
    return LimitEstimate("undecided", None, v, None, tol, diag)


def family_limit(estimates, labels, tol=LIMIT_TOL):
    """Common limit of a family of per-curve estimates."""
    members = {lab: e for lab, e in zip(labels, estimates)}
    diag = {"members": {lab: e.to_dict(tail=False) for lab, e in members.items()}}
    bad = [lab for lab, e in members.items() if e.verdict == "no_limit"]
    if bad:
        diag["no_limit_members"] = bad
        return LimitEstimate("no_limit", tolerance=tol, diagnostics=diag)
    conv = [(lab, e.value) for lab, e in members.items() if e.converged]
    for i in range(len(conv)):
        for j in range(i + 1, len(conv)):
            if abs(conv[i][1] - conv[j][1]) > tol:
                diag["disagreement"] = {conv[i][0]: _cplx(conv[i][1]),
                                        conv[j][0]: _cplx(conv[j][1])}
                return LimitEstimate("no_limit", tolerance=tol, diagnostics=diag)
    if len(conv) == len(members):
        vals = np.array([c[1] for c in conv])
        ref = conv[0][1]
        diag["spread"] = float(np.max(np.abs(vals - ref)))
        return LimitEstimate("converged", complex(ref), vals, None, tol, diag)
    if any(e.verdict == "diverged_to_infinity" for e in members.values()):
        return LimitEstimate("diverged_to_infinity", tolerance=tol, diagnostics=diag)
    return LimitEstimate("undecided", tolerance=tol, diagnostics=diag)


# -- observables ------------------------------------------------------------


def _ws(x, d):
    """``w = 1 - z`` from ``delta``: exact on coordinates with ``x_j = 1``."""
    return (1.0 - x.coords) + d


def tau_minus_f(f, tau, z, w):
    """``tau - f`` using the map's defect when ``tau`` is its anchor."""
    if f.anchor is not None and abs(f.anchor[0] - tau) <= SNAP_TOL:
        d = f.defect_values(z, w)[..., 0]
        return d + (tau - f.anchor[0])
    return tau - f(z, w)


def value_obs(f):
    return lambda x, z, w, d: f(z, w)


def ratio_p_obs(f, tau):
    """``(tau - f)/(1 - p_tilde)``."""
    return lambda x, z, w, d: tau_minus_f(f, tau, z, w) / one_minus_left_inverse(x, d)


def ratio_coordinate_obs(f, tau, j):
    """``(tau - f)/(x_j - z_j)`` (0-based ``j``)."""
    return lambda x, z, w, d: tau_minus_f(f, tau, z, w) / d[..., j]


def derivative_obs(f, v):
    v = np.asarray(v, dtype=complex)
    return lambda x, z, w, d: f.derivative(z, v, w)[..., 0]


def limit_along_curve(obs, curve, tol=LIMIT_TOL):
    """Limit of ``obs`` along the curve's schedule; evaluation failures
    give an undecided estimate."""
    x = curve.target
    try:
        z, d = curve.evaluate()
        with np.errstate(all="ignore"):
            vals = obs(x, z, _ws(x, d), d)
    except (ValueError, ZeroDivisionError, FloatingPointError) as exc:
        return LimitEstimate("undecided", tolerance=tol,
                             diagnostics={"error": f"{type(exc).__name__}: {exc}"})
    est = estimate_limit(vals, tol)
    est.diagnostics["curve"] = curve.label
    return est


def _as_obs(f_or_obs):
    if callable(f_or_obs) and not hasattr(f_or_obs, "arity"):
        return f_or_obs
    return value_obs(f_or_obs)


def limit_over_family(f_or_obs, family, tol=LIMIT_TOL):
    obs = _as_obs(f_or_obs)
    ests = [limit_along_curve(obs, c, tol) for c in family]
    return family_limit(ests, [f"{i}:{c.label}" for i, c in enumerate(family)], tol)


def restricted_K_limit(f_or_obs, x, family=None, tol=LIMIT_TOL, seed=0):
    """Common limit along a deterministic family of special restricted curves."""
    x = _as_boundary(x)
    family = family or special_restricted_family(x, seed=seed)
    return limit_over_family(f_or_obs, family, tol)


def restricted_E_limit(f_or_obs, x, family=None, tol=LIMIT_TOL):
    """Common limit along radial and tangential peculiar curves."""
    x = _as_boundary(x)
    family = family or peculiar_family(x)
    return limit_over_family(f_or_obs, family, tol)


def K_limit(f_or_obs, x, amplitudes=(1.5, 3.0, 10.0), shells=None, per_shell=200,
            tol=1e-4, seed=0):
    """Cluster values over Korányi regions intersected with shrinking shells.

    Shell ``k`` holds points whose Silov deltas have scale in
    ``[2**-(k+1), 2**-k]`` and whose internal coordinates are within the
    same scale of ``x``. Converged when the final spread is at most ``tol``
    and spreads shrink; no_limit when the spread does not shrink.
    """
    x = _as_boundary(x)
    obs = _as_obs(f_or_obs)
    shells = list(range(4, 121, 4)) if shells is None else list(shells)
    spreads, centers = [], []
    for k in shells:
        vals = []
        for i, M in enumerate(amplitudes):
            z, d = sample_koranyi(x, M, per_shell, seed=seed + 1000 * k + i, kmin=k,
                                  kmax=k + 1, internal="shell", bulk_fraction=0.0)
            with np.errstate(all="ignore"):
                vals.append(obs(x, z, _ws(x, d), d))
        vals = np.concatenate(vals)
        c = complex(np.median(vals.real) + 1j * np.median(vals.imag))
        centers.append(c)
        spreads.append(float(np.max(np.abs(vals - c))))
    spreads = np.array(spreads)
    diag = {"shells": shells, "spreads": spreads, "centers": np.array(centers),
            "amplitudes": list(amplitudes)}
    third = max(1, len(shells) // 3)
    shrinking = spreads[-1] < 0.5 * spreads[:third].max() if spreads[0] > 0 else True
    diag["shrinking"] = bool(shrinking)
    if spreads[-1] <= tol and shrinking:
        return LimitEstimate("converged", centers[-1], np.array(centers), None, tol, diag)
    if not shrinking:
        return LimitEstimate("no_limit", None, np.array(centers), None, tol, diag)
    return LimitEstimate("undecided", None, np.array(centers), None, tol, diag)


def K_boundedness(f_or_obs, x, M, n=10_000, seed=0, kmax=40.0):
    """Empirical sup of ``|obs|`` over sampled H(x, M)."""
    x = _as_boundary(x)
    obs = _as_obs(f_or_obs)
    z, d = sample_koranyi(x, M, n, seed=seed, kmax=kmax)
    vals = np.abs(obs(x, z, _ws(x, d), d))
    return {"amplitude": M, "sup": float(np.max(vals)), "samples": int(vals.size),
            "finite": bool(np.all(np.isfinite(vals)))}


# -- Julia coefficient ------------------------------------------------------


@dataclass
class JuliaReport:
    alpha: float
    tau: complex
    julia: bool
    radial_ratio: np.ndarray
    envelope: LimitEstimate
    tau_estimate: LimitEstimate
    diagnostics: dict = field(default_factory=dict)
    inclusion_findings: list = field(default_factory=list)

    def to_dict(self):
        return {
            "alpha": self.alpha if np.isfinite(self.alpha) else "inf",
            "tau": _cplx(self.tau),
            "julia": self.julia,
            "envelope": self.envelope.to_dict(),
            "tau_estimate": self.tau_estimate.to_dict(),
            "diagnostics": _jsonable(self.diagnostics),
            "inclusion_findings": _jsonable(self.inclusion_findings),
        }


def one_minus_abs_f(f, z, w, anchor=None):
    """``1 - |f|`` (scalar ``f``), through the defect where it is small.

    The defect form avoids cancellation only when ``f`` is near its anchor;
    elsewhere the plain ``1 - |f|`` is used.
    """
    if f.anchor is not None:
        c = f.anchor[0]
        dfc = f.defect_values(z, w)[..., 0]
        fv = c - dfc
        om = (2 * np.real(np.conj(c) * dfc) - np.abs(dfc) ** 2) / (1 + np.abs(fv))
        return np.where(np.abs(dfc) <= 0.5, om, 1.0 - np.abs(fv)), fv
    fv = f(z, w)
    return 1.0 - np.abs(fv), fv


def lower_envelope(r):
    """``L_k = min_{j >= k} r_j``: nondecreasing, limit equals the liminf."""
    return np.minimum.accumulate(np.asarray(r, float)[::-1])[::-1]


def julia_coefficient(f, x, schedule=None, tol=1e-9):
    """Radial Julia coefficient ``alpha`` and boundary value ``tau``.

    ``alpha`` is the limit of the lower envelope of
    ``(1 - |f(t x)|)/(1 - t)`` on ``eps = 1 - t = 2**-k``; it is infinite
    when the ratio grows without bound. ``tau`` is the radial limit of
    ``f``; when the limit of the defect is below ``1e-12`` it is snapped
    to the map's anchor.
    """
    x = _as_boundary(x)
    if f.codomain != 1:
        raise ValueError("julia_coefficient needs a scalar map")
    eps = dyadic_schedule() if schedule is None else np.asarray(schedule, float)
    cur = radial(x, eps)
    z, d = cur.evaluate()
    w = _ws(x, d)
    om, fv = one_minus_abs_f(f, z, w)
    ratio = om / eps
    env = lower_envelope(ratio)
    env_est = estimate_limit(env, tol)
    f0 = complex(f(np.zeros(x.n)))
    pos_bound = (1 - abs(f0)) / (2 * (1 + abs(f0)))
    diag = {
        "eps": eps,
        "positivity_bound": pos_bound,
        "positivity_holds": bool(np.all(ratio >= pos_bound * (1 - 1e-12))),
        "min_ratio": float(np.min(ratio)),
    }
    # Kobayashi gap k(0, tx) - omega(0, f(tx)) along the same samples
    with np.errstate(divide="ignore"):
        gap = 0.5 * np.log(ratio * (2.0 - eps) / (1.0 + np.abs(fv)))
    diag["kobayashi_gap"] = gap
    if env_est.verdict == "diverged_to_infinity" or (
        env_est.verdict != "converged" and env[-1] > ALPHA_INFINITE
    ):
        alpha = np.inf
    elif env_est.converged:
        alpha = float(env_est.value.real)
    else:
        alpha = np.nan
    if f.anchor is not None:
        dest = estimate_limit(f.defect_values(z, w)[..., 0], tol)
        if dest.converged and abs(dest.value) <= SNAP_TOL:
            tau_est = LimitEstimate("converged", complex(f.anchor[0]), fv, None, tol,
                                    {"snapped_to_anchor": True})
        else:
            tau_est = estimate_limit(fv, tol)
    else:
        tau_est = estimate_limit(fv, tol)
    tau = tau_est.value if tau_est.converged else None
    julia = bool(np.isfinite(alpha))
    if julia:
        if alpha <= 0:
            raise ConsistencyError(f"non-positive Julia coefficient {alpha}")
        if tau is None or abs(abs(tau) - 1) > 1e-6:
            raise ConsistencyError(
                "finite Julia coefficient but no unimodular radial limit "
                f"(tau estimate: {tau_est.verdict})")
        tau = tau / abs(tau)
        gap_lim = estimate_limit(lower_envelope(gap), tol)
        diag["gap_limit"] = gap_lim.value.real if gap_lim.converged else None
        diag["half_log_alpha"] = 0.5 * np.log(alpha)
    return JuliaReport(alpha, tau, julia, ratio, env_est, tau_est, diag)


def julia_inclusion_check(f, x, report, radii=(0.5, 1.0, 2.0), n=500, seed=0,
                          slack=BOUND_SLACK):
    """Sampled check of f(E(x, R)) <= E(tau, alpha R) for each radius."""
    x = _as_boundary(x)
    if not report.julia:
        raise PreconditionError("map is not Julia at this point")
    tau, alpha = report.tau, report.alpha
    findings = []
    for i, R in enumerate(radii):
        z, d = sample_horosphere(x, R, n, seed=seed + i)
        dd = tau_minus_f(f, tau, z, _ws(x, d))
        hv = horocycle_value(tau, tau - dd, dd)
        bad = ~(hv < alpha * R * (1 + slack))
        findings.append({"R": R, "checked": int(hv.size), "violations": int(bad.sum()),
                         "max_ratio": float(np.max(hv / (alpha * R)))})
    report.inclusion_findings = findings
    return findings


def random_curve_liminf_check(f, x, report, curves, slack=1e-6):
    """``(1 - |f|)/(1 - ||z||)`` along other x-curves never settles below alpha."""
    from .regions import one_minus_sup_norm

    x = _as_boundary(x)
    out = []
    for c in curves:
        z, d = c.evaluate()
        om, _ = one_minus_abs_f(f, z, _ws(x, d))
        r = om / one_minus_sup_norm(x, z, d)
        env = lower_envelope(r)
        out.append({"curve": c.label, "tail_min": float(env[-1]),
                    "ok": bool(env[-1] >= report.alpha - slack)})
    return out


# -- JWC --------------------------------------------------------------------


@dataclass
class JwcReport:
    alpha: float
    tau: complex
    part_i: LimitEstimate
    part_ii: dict
    part_iii: dict
    part_iv: dict
    part_v: dict
    b: dict
    sum_rule_residual: float
    b_sum_residual: float
    findings: list
    extra: dict = field(default_factory=dict)

    def to_dict(self):
        return _jsonable({
            "alpha": self.alpha,
            "tau": self.tau,
            "part_i": self.part_i,
            "part_ii": self.part_ii,
            "part_iii": self.part_iii,
            "part_iv": self.part_iv,
            "part_v": self.part_v,
            "b": self.b,
            "sum_rule_residual": self.sum_rule_residual,
            "b_sum_residual": self.b_sum_residual,
            "findings": self.findings,
            "extra": self.extra,
        })


def _target_check(name, est, target, tol, findings):
    if not est.converged:
        findings.append({"part": name, "problem": f"limit {est.verdict}",
                         "target": _cplx(target)})
        return
    err = abs(est.value - target)
    if err > tol:
        findings.append({"part": name, "problem": "target mismatch",
                         "value": _cplx(est.value), "target": _cplx(target),
                         "error": err})


def jwc_suite(f, x, julia=None, tol=LIMIT_TOL, family=None, seed=0):
    """Restricted K-limits of the quantities in parts (i)-(v).

    Targets come from the Julia report. Internal coordinates get no
    incremental ratio (it is not defined where ``z_j = x_j``).
    """
    x = _as_boundary(x)
    julia = julia or julia_coefficient(f, x)
    if not julia.julia:
        raise PreconditionError("map is not Julia at this point")
    alpha, tau = julia.alpha, julia.tau
    family = family or special_restricted_family(x, seed=seed)
    findings = []

    def rk(obs):
        return restricted_K_limit(obs, x, family, tol)

    p1 = rk(ratio_p_obs(f, tau))
    _target_check("i", p1, alpha * tau, tol, findings)
    p2 = {}
    for j in range(x.n):
        if j in x.silov_indices:
            p2[j] = rk(ratio_coordinate_obs(f, tau, j))
            _target_check(f"ii[{j + 1}]", p2[j], alpha * tau * np.conj(x.coords[j]),
                          tol, findings)
        else:
            p2[j] = LimitEstimate("no_limit", tolerance=tol, diagnostics={
                "reason": "internal coordinate: the ratio is not defined where z_j = x_j"})
    dx = rk(derivative_obs(f, x.coords))
    dxc = rk(derivative_obs(f, x.silov_part))
    _target_check("iii[x]", dx, alpha * tau, tol, findings)
    _target_check("iii[x_check]", dxc, alpha * tau, tol, findings)
    if dx.converged and dxc.converged and abs(dx.value - dxc.value) > tol:
        findings.append({"part": "iii", "problem": "d/dx and d/dx_check differ"})
    p3 = {"x": dx, "x_check": dxc}
    p4, p5, b = {}, {}, {}
    lims = np.zeros(x.n, dtype=complex)
    for j in range(x.n):
        e = np.zeros(x.n, dtype=complex)
        e[j] = 1.0
        est = rk(derivative_obs(f, e))
        if est.converged:
            lims[j] = est.value
        else:
            lims[j] = np.nan
        if j in x.silov_indices:
            p5[j] = est
            if est.converged:
                bj = est.value * x.coords[j] / tau
                b[j] = float(bj.real)
                if abs(bj.imag) > tol:
                    findings.append({"part": f"v[{j + 1}]", "problem": "not of the form b tau conj(x_j)",
                                     "b": _cplx(bj)})
                if bj.real < -1e-9:
                    findings.append({"part": f"v[{j + 1}]", "problem": "negative b", "b": bj.real})
            else:
                findings.append({"part": f"v[{j + 1}]", "problem": f"limit {est.verdict}"})
        else:
            p4[j] = est
            _target_check(f"iv[{j + 1}]", est, 0.0, tol, findings)
    residual = float(abs(np.sum(x.coords * lims) - alpha * tau))
    if not residual <= tol:
        findings.append({"part": "sum-rule", "problem": "residual", "residual": residual})
    bsum = float(abs(sum(b.values()) - alpha)) if len(b) == x.degree else float("nan")
    if not bsum <= tol:
        findings.append({"part": "b-sum", "problem": "residual", "residual": bsum})
    extra = {"derivative_limits": lims}
    herg = f.meta.get("herglotz")
    if herg:
        inv = sum(m / sum(k) for k, m in herg.items())
        extra["herglotz_inverse_alpha"] = {"series": inv, "one_over_alpha": 1 / alpha,
                                           "residual": abs(inv - 1 / alpha)}
        pred = np.array([alpha**2 * tau * np.conj(x.coords[j])
                         * sum(m * k[j] / sum(k) ** 2 for k, m in herg.items())
                         for j in range(x.n)])
        extra["herglotz_derivatives"] = {"predicted": pred,
                                         "residual": float(np.nanmax(np.abs(pred - lims)))}
    if x.degree == 1:
        rng = np.random.default_rng(seed)
        vs = rng.normal(size=(3, x.n)) + 1j * rng.normal(size=(3, x.n))
        extra["all_directions"] = [rk(derivative_obs(f, v)).verdict for v in vs]
    return JwcReport(alpha, tau, p1, p2, p3, p4, p5, b, residual, bsum, findings, extra)


# -- Lindelof ---------------------------------------------------------------


def lindelof_check(f_or_obs, x, pilot, family=None, k_bounded_amplitudes=None,
                   tol=LIMIT_TOL, seed=0):
    """Check that a limit along a special pilot curve propagates to the
    special restricted family.

    With ``k_bounded_amplitudes`` the K-bounded variant is used: the
    pilot must also be restricted and the observable bounded on the
    sampled Korányi regions.
    """
    x = _as_boundary(x)
    obs = _as_obs(f_or_obs)
    sp = is_special(pilot, strict=False)
    if sp["verdict"] != "yes":
        raise PreconditionError(f"pilot curve {pilot.label} is not special")
    out = {"pilot": pilot.label, "mode": "special"}
    if k_bounded_amplitudes is not None:
        rs = is_restricted(pilot)
        if rs["verdict"] != "yes":
            raise PreconditionError(f"pilot curve {pilot.label} is not restricted")
        kb = [K_boundedness(obs, x, M, n=2000, seed=seed) for M in k_bounded_amplitudes]
        if not all(k["finite"] for k in kb):
            raise PreconditionError("observable is not K-bounded on the samples")
        out.update(mode="k-bounded", k_bounded=kb)
    pl = limit_along_curve(obs, pilot, tol)
    out["pilot_limit"] = pl.to_dict()
    findings = []
    if pl.converged:
        fam = restricted_K_limit(obs, x, family, tol, seed)
        out["family_limit"] = fam.to_dict(tail=False)
        if not fam.converged:
            findings.append({"problem": f"family limit {fam.verdict}"})
        elif abs(fam.value - pl.value) > tol:
            findings.append({"problem": "family disagrees with pilot",
                             "pilot": _cplx(pl.value), "family": _cplx(fam.value)})
    out["findings"] = findings
    return out


# -- bound checks -----------------------------------------------------------


def geodesic_disk_samples(x, M, r, n_geodesics=200, per_geodesic=50, seed=0):
    """Points ``psi(zeta)``, ``|zeta| < r``, on complex geodesics
    ``psi(zeta) = gamma_{z0}^{-1}(zeta y)`` through sampled ``z0`` in H(x, M).

    Each ``y`` has one unimodular coordinate. Returns ``(z, delta)``.
    """
    x = _as_boundary(x)
    rng = np.random.default_rng(seed)
    z0, d0 = sample_koranyi(x, M, n_geodesics, seed=seed)
    y = rng.uniform(0, 1, (n_geodesics, x.n)) * np.exp(
        2j * np.pi * rng.uniform(size=(n_geodesics, x.n)))
    lead = rng.integers(0, x.n, n_geodesics)
    y[np.arange(n_geodesics), lead] /= np.abs(y[np.arange(n_geodesics), lead])
    rad = r * np.sqrt(rng.uniform(size=(n_geodesics, per_geodesic)))
    rad = np.where(rng.uniform(size=rad.shape) < 0.3, r * (1 - 1e-9), rad)
    zeta = rad * np.exp(2j * np.pi * rng.uniform(size=rad.shape))
    u = zeta[:, :, None] * y[:, None, :]
    Z0 = z0[:, None, :]
    D0 = d0[:, None, :]
    z = (u + Z0) / (1 + np.conj(Z0) * u)
    xc = x.coords
    d = (D0 - u * xc * np.conj(D0)) / (1 + np.conj(Z0) * u)
    d = np.where(x.silov_mask, d, xc - z)
    z = np.where(x.silov_mask, xc - d, z)
    return z.reshape(-1, x.n), d.reshape(-1, x.n)


def lemma_bound_checks(f, x, M, julia=None, n=10_000, M1=None, seed=0,
                       slack=BOUND_SLACK):
    """Sampled incremental-ratio, geodesic-disk and metric bounds on H(x, M)."""
    x = _as_boundary(x)
    out = {"M": M}
    z, d = sample_koranyi(x, M, n, seed=seed)
    w = _ws(x, d)
    if f is not None:
        julia = julia or julia_coefficient(f, x)
        bound = 2 * julia.alpha * M**2
        tmf = tau_minus_f(f, julia.tau, z, w)
        r1 = np.abs(tmf / one_minus_left_inverse(x, d))
        worst = r1
        for j in x.silov_indices:
            worst = np.maximum(worst, np.abs(tmf / d[:, j]))
        bad = ~(worst <= bound * (1 + slack))
        out["ratio_bound"] = {"bound": bound, "checked": int(worst.size),
                              "violations": int(bad.sum()), "sup": float(worst.max())}
    M1 = 2 * M if M1 is None else M1
    r = (M1 - M) / (M1 + M)
    n_geo = max(1, n // 50)
    gz, gd = geodesic_disk_samples(x, M, r, n_geo, 50, seed=seed + 1)
    kv = koranyi_value(x, gz, gd)
    inside = classify(kv, M1**2 * (1 + slack))[0]
    out["geodesic_disk"] = {"M1": M1, "r": r, "checked": int(kv.size),
                            "violations": int((~inside).sum()),
                            "max_value_over_bound": float(np.max(kv) / M1**2)}
    rng = np.random.default_rng(seed + 2)
    v = rng.normal(size=z.shape) + 1j * rng.normal(size=z.shape)
    v[rng.uniform(size=z.shape) < 0.3] = 0.0
    v[np.all(v == 0, axis=1), 0] = 1.0
    oms = coordinate_one_minus_sq(x, z, d)
    kap = np.max(np.abs(v) / oms, axis=1)
    lhs = np.abs(one_minus_left_inverse(x, d)) * kap
    rhs = 2 * M**3 * np.max(np.abs(v), axis=1)
    bad = ~(lhs <= rhs * (1 + slack))
    out["metric_bound"] = {"checked": int(lhs.size), "violations": int(bad.sum()),
                           "max_ratio": float(np.max(lhs / rhs))}
    out["violations"] = sum(
        out[k]["violations"] for k in ("ratio_bound", "geodesic_disk", "metric_bound")
        if k in out)
    return out


def derivative_envelope(f, x, M, julia=None, n=10_000, seed=0):
    """Largest observed ``|df/dv| / (alpha M^6 ||v||)`` over sampled
    ``z`` in H(x, M) and random ``v``: an empirical lower bound for the
    universal constant of the derivative bound."""
    x = _as_boundary(x)
    julia = julia or julia_coefficient(f, x)
    z, d = sample_koranyi(x, M, n, seed=seed)
    rng = np.random.default_rng(seed + 3)
    worst = 0.0
    for _ in range(4):
        v = rng.normal(size=x.n) + 1j * rng.normal(size=x.n)
        dv = np.abs(f.derivative(z, v, _ws(x, d))[..., 0])
        worst = max(worst, float(np.max(dv)) / (julia.alpha * M**6 * np.max(np.abs(v))))
    for j in range(x.n):
        e = np.zeros(x.n)
        e[j] = 1.0
        dv = np.abs(f.derivative(z, e, _ws(x, d))[..., 0])
        worst = max(worst, float(np.max(dv)) / (julia.alpha * M**6))
    return worst


# -- maps into a polydisk ---------------------------------------------------


def polydisk_target_julia(F, x):
    """Run the scalar Julia analysis on every component of ``F``."""
    x = _as_boundary(x)
    comps = []
    for i in range(F.codomain):
        fi = F.component(i)
        try:
            rep = julia_coefficient(fi, x)
            entry = {"component": i + 1, "julia": rep.julia,
                     "alpha": rep.alpha, "tau": rep.tau,
                     "radial_limit": rep.tau_estimate.verdict}
        except ConsistencyError as exc:
            entry = {"component": i + 1, "julia": None, "error": str(exc)}
        if not entry.get("julia"):
            est = limit_along_curve(value_obs(fi), radial(x))
            entry["radial_limit"] = est.verdict
            entry["radial_tail_modulus"] = float(np.abs(est.tail[-1]))
        comps.append(entry)
    return {"components": comps,
            "julia_components": [c["component"] for c in comps if c.get("julia")]}


def horosphere_map_check(F, x, y, R, R_target, n=2000, seed=0, witnesses=()):
    """Sampled check of ``F(E(x, R)) <= E(y, R_target)`` for a map into a
    polydisk; returns the violations found (with one witness)."""
    x = _as_boundary(x)
    y = _as_boundary(y)
    z, d = sample_horosphere(x, R, n, seed=seed)
    if len(witnesses):
        wz = np.atleast_2d(np.asarray(witnesses, dtype=complex))
        z = np.concatenate([z, wz])
        d = np.concatenate([d, x.coords - wz])
    ok_src = classify(horosphere_value(x, z, d), R)[0]
    z, d = z[ok_src], d[ok_src]
    fz = F.evaluate(z, _ws(x, d))
    hv = horosphere_value(y, fz, y.coords - fz)
    bad = ~classify(hv, R_target)[0]
    out = {"R": R, "R_target": R_target, "checked": int(hv.size),
           "violations": int(bad.sum()), "included": bool(not bad.any())}
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        out["witness"] = {"z": z[i], "f(z)": fz[i], "value": float(hv[i])}
    return _jsonable(out)
