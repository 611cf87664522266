"""x-curves parametrized by ``eps = 1 - t`` and their classification.

A curve returns both ``z = sigma(t)`` and ``delta = x - z``; all deciding
quantities are computed from ``delta`` so that schedules can reach
``eps = 2**-80`` without ``1 - (1 - eps)`` cancellation.
"""

import os
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .boundary import BoundaryPoint, _as_boundary, decompose, one_minus_left_inverse
from .regions import classify, horosphere_value, koranyi_value

TOL_CONV = 1e-4
WINDOW = 5
DIVERGENCE_CAP = 1e4
DECAY_RATE = 0.05


class ConsistencyError(RuntimeError):
    """Two computations that must agree did not."""


def default_depth():
    return int(os.environ.get("POLYDISK_SCHEDULE_DEPTH", "40"))


def dyadic_schedule(kmax=None, kmin=1):
    """``eps_k = 2**-k`` for ``k = kmin..kmax``."""
    if kmax is None:
        kmax = default_depth()
    return 2.0 ** -np.arange(kmin, kmax + 1, dtype=float)


@dataclass(frozen=True, eq=False)
class XCurve:
    target: BoundaryPoint
    func: Callable
    label: str
    schedule: np.ndarray = field(default_factory=dyadic_schedule)
    expected: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)

    def evaluate(self, eps=None):
        """Return ``(z, delta)`` with shape ``(len(eps), n)``."""
        eps = self.schedule if eps is None else np.atleast_1d(np.asarray(eps, float))
        z, delta = self.func(eps)
        return np.asarray(z, dtype=complex), np.asarray(delta, dtype=complex)

    def one_minus(self, eps=None):
        """``w = 1 - z`` from ``delta``; exact where ``x_j = 1``."""
        z, d = self.evaluate(eps)
        return (1.0 - self.target.coords) + d

    def with_schedule(self, schedule):
        return XCurve(self.target, self.func, self.label,
                      np.asarray(schedule, float), self.expected, self.params)

    def validate(self, eps=None):
        """Raise if some scheduled point leaves the polydisk."""
        z, d = self.evaluate(eps)
        x = self.target
        mask = x.silov_mask
        oms = 2 * np.real(np.conj(x.coords[mask]) * d[:, mask]) - np.abs(d[:, mask]) ** 2
        if np.any(oms <= 0) or np.any(np.abs(z[:, ~mask]) >= 1):
            raise ValueError(f"curve {self.label} leaves the polydisk")
        return self


def _curve(x, func, label, schedule=None, expected=None, params=None):
    x = _as_boundary(x)
    return XCurve(
        x, func, label,
        dyadic_schedule() if schedule is None else np.asarray(schedule, float),
        expected or {}, params or {},
    ).validate()


# -- projection -------------------------------------------------------------


@dataclass(frozen=True)
class Projection:
    """``sigma_tilde`` values and ``q = 1 - sigma_tilde`` along a schedule."""

    eps: np.ndarray
    tilde: np.ndarray
    q: np.ndarray

    def one_minus_abs_sq(self):
        return 2.0 * np.real(self.q) - np.abs(self.q) ** 2

    def one_minus_abs(self):
        return self.one_minus_abs_sq() / (1.0 + np.abs(self.tilde))

    def stolz(self):
        """``|1 - sigma_tilde| / (1 - |sigma_tilde|)``."""
        return np.abs(self.q) / self.one_minus_abs()


def project(curve, eps=None):
    eps = curve.schedule if eps is None else np.asarray(eps, float)
    z, d = curve.evaluate(eps)
    q = one_minus_left_inverse(curve.target, d)
    return Projection(eps, 1.0 - q, q)


def project_curve(curve):
    """Return ``(sigma_x, sigma_tilde)``: the projected x-curve and a
    function ``eps -> (tilde, 1 - tilde)``."""
    x = curve.target

    def tilde(eps):
        z, d = curve.evaluate(eps)
        q = one_minus_left_inverse(x, d)
        return 1.0 - q, q

    def proj(eps):
        _, q = tilde(eps)
        return (1.0 - q)[:, None] * x.coords, q[:, None] * x.coords

    sx = XCurve(x, proj, f"{curve.label}-projected", curve.schedule, {}, {})
    return sx, tilde


# -- deciding quantities ----------------------------------------------------


def special_quantities(curve, eps=None):
    """Both special criteria along the schedule.

    ``kobayashi``: ``k(sigma, sigma_x)``; ``ratio``:
    ``max_{Silov j} |sigma_j - (sigma_x)_j| / (1 - ||sigma_x||)``.
    """
    x = curve.target
    eps = curve.schedule if eps is None else np.asarray(eps, float)
    z, d = curve.evaluate(eps)
    q = one_minus_left_inverse(x, d)[:, None]
    tilde = 1.0 - q
    mask = x.silov_mask
    xs = x.coords[mask]
    ds = d[:, mask]
    diff = xs * q - ds  # sigma_j - (sigma_x)_j on Silov coordinates
    den = q + xs * np.conj(ds) - xs * np.conj(ds) * q  # 1 - conj(sigma_j) (sigma_x)_j
    m = np.abs(diff) / np.abs(den)
    per = [np.arctanh(np.minimum(m, 1.0))]
    if (~mask).any():
        a = z[:, ~mask]
        b = tilde * x.coords[~mask]
        per.append(np.arctanh(np.abs((b - a) / (1.0 - np.conj(a) * b))))
    kob = np.max(np.concatenate(per, axis=1), axis=1)
    pr = Projection(eps, tilde[:, 0], q[:, 0])
    ratio = np.max(np.abs(diff), axis=1) / pr.one_minus_abs()
    return {"eps": eps, "kobayashi": kob, "ratio": ratio}


def full_norm_ratio(curve, eps=None):
    """``||sigma - sigma_x|| / (1 - ||sigma_x||)`` over all coordinates."""
    x = curve.target
    eps = curve.schedule if eps is None else np.asarray(eps, float)
    z, d = curve.evaluate(eps)
    q = one_minus_left_inverse(x, d)[:, None]
    # sigma - sigma_x = x q - delta on every coordinate
    num = np.max(np.abs(x.coords * q - d), axis=1)
    pr = Projection(eps, 1.0 - q[:, 0], q[:, 0])
    return num / pr.one_minus_abs()


def koranyi_along(curve, eps=None):
    z, d = curve.evaluate(eps)
    return koranyi_value(curve.target, z, d)


def horosphere_along(curve, eps=None):
    z, d = curve.evaluate(eps)
    return horosphere_value(curve.target, z, d)


# -- verdicts ---------------------------------------------------------------


def vanishing_verdict(values, tol=TOL_CONV, window=WINDOW):
    """Decide whether a nonnegative sequence tends to 0.

    ``yes``: the upper envelope of the last ``window`` values is below
    ``tol`` and not growing (values below ``tol * 1e-8`` count as zero), or
    the envelope decays like ``eps**DECAY_RATE`` or faster. ``no``: the
    window stays at or above ``10 tol`` or the sequence diverges.
    Otherwise ``undecided``.
    """
    v = np.asarray(values, dtype=float)
    tail = v[-window:]
    if not np.all(np.isfinite(tail)):
        return "no" if np.any(np.isinf(tail)) else "undecided"
    floor = tol * 1e-8
    # upper envelope sup_{j >= k} v_j, so oscillating tails are judged by their peaks
    env = np.maximum(np.maximum.accumulate(v[::-1])[::-1], floor)
    earlier = v[-2 * window:-window]
    if env[-window] < tol and (earlier.size == 0 or tail.max() <= max(earlier.max(), floor)):
        return "yes"
    # scale-free evidence: the envelope decays at a power-law rate of at
    # least DECAY_RATE per schedule step in both quarters of the second half
    half = env[len(env) // 2:]
    if half.size >= 4 and half[-1] > floor:
        m = half.size // 2
        r1 = np.log2(half[0] / half[m]) / m
        r2 = np.log2(half[m] / half[-1]) / (half.size - 1 - m)
        if min(r1, r2) >= DECAY_RATE:
            return "yes"
    if tail.min() >= 10 * tol or bounded_verdict(v, window) == "no":
        return "no"
    return "undecided"


def bounded_verdict(values, window=WINDOW, cap=DIVERGENCE_CAP):
    """Decide whether a positive sequence stays bounded.

    ``no``: some value is infinite, or the window increases and ends above
    ``cap``, or the whole second half increases with a power-law rate of
    at least 0.1 per schedule step in both of its quarters. ``yes``: the
    window maximum exceeds the maximum of the earlier tail by at most 1%.
    Otherwise ``undecided``.
    """
    v = np.asarray(values, dtype=float)
    if np.any(np.isinf(v)):
        return "no"
    tail = v[-window:]
    if not np.all(np.isfinite(tail)):
        return "undecided"
    if np.all(np.diff(tail) > 0) and tail[-1] > cap:
        return "no"
    half = v[len(v) // 2:]
    if half.size >= 4 and np.all(half > 0) and np.all(np.diff(half) > 0):
        m = half.size // 2
        r1 = np.log2(half[m] / half[0]) / m
        r2 = np.log2(half[-1] / half[m]) / (half.size - 1 - m)
        if min(r1, r2) >= 0.1:
            return "no"
    earlier = v[len(v) // 2: -window]
    if earlier.size and tail.max() <= 1.01 * earlier.max() + 1e-12:
        return "yes"
    return "undecided"


def is_special(curve, strict=True):
    """Special verdict from both criteria; they must agree when ``strict``."""
    qs = special_quantities(curve)
    vk = vanishing_verdict(qs["kobayashi"])
    vr = vanishing_verdict(qs["ratio"])
    if strict and vk != vr:
        raise ConsistencyError(
            f"special criteria disagree on {curve.label}: kobayashi={vk}, ratio={vr}"
        )
    return {"verdict": vr, "kobayashi_verdict": vk, "ratio_verdict": vr,
            "kobayashi": qs["kobayashi"], "ratio": qs["ratio"]}


def is_restricted(curve):
    """Restricted verdict with the tail sup of the Stolz quotient of sigma_tilde."""
    st = project(curve).stolz()
    verdict = bounded_verdict(st)
    amp = float(np.max(st[len(st) // 2:])) if verdict == "yes" else float("inf")
    return {"verdict": verdict, "amplitude": amp, "stolz": st}


def is_peculiar(curve):
    h = horosphere_along(curve)
    return {"verdict": vanishing_verdict(h), "horosphere": h}


def koranyi_eventually(curve):
    """Whether the curve eventually stays in some H(x, M), with the tail
    sup of ``sqrt(koranyi_value)`` as amplitude estimate."""
    k = np.sqrt(koranyi_along(curve))
    verdict = bounded_verdict(k)
    amp = float(np.max(k[len(k) // 2:])) if verdict == "yes" else float("inf")
    return {"verdict": verdict, "amplitude": amp, "koranyi": k ** 2}


def eventually_inside(values, bound, window=WINDOW):
    """Whether the last ``window`` values are strictly below ``bound``."""
    return bool(np.all(classify(np.asarray(values)[-window:], bound)[0]))


@dataclass
class CurveClassification:
    special: str
    restricted: str
    m_restricted_at: float
    peculiar: str
    koranyi_eventually: str
    diagnostics: dict

    def to_dict(self):
        return {
            "special": self.special,
            "restricted": self.restricted,
            "m_restricted_at": self.m_restricted_at,
            "peculiar": self.peculiar,
            "koranyi_eventually": self.koranyi_eventually,
            "diagnostics": {k: np.asarray(v).tolist() for k, v in self.diagnostics.items()},
        }


def classify_curve(curve, strict=True):
    sp = is_special(curve, strict=strict)
    rs = is_restricted(curve)
    pc = is_peculiar(curve)
    ke = koranyi_eventually(curve)
    return CurveClassification(
        special=sp["verdict"],
        restricted=rs["verdict"],
        m_restricted_at=rs["amplitude"],
        peculiar=pc["verdict"],
        koranyi_eventually=ke["verdict"],
        diagnostics={
            "eps": curve.schedule,
            "special_kobayashi": sp["kobayashi"],
            "special_ratio": sp["ratio"],
            "stolz": rs["stolz"],
            "horosphere": pc["horosphere"],
            "koranyi": ke["koranyi"],
        },
    )


# -- gallery ----------------------------------------------------------------


def radial(x, schedule=None):
    x = _as_boundary(x)
    return _curve(
        x,
        lambda e: ((1.0 - e)[:, None] * x.coords, e[:, None] * x.coords),
        "radial",
        schedule,
        {"special": "yes", "restricted": "yes", "peculiar": "yes",
         "koranyi_eventually": "yes"},
    )


def remark_1_1(schedule=None):
    """``(1/2 (1 + t), 1/2 (1 - t))`` at ``x = (1, 0)``: special, yet
    ``||sigma - sigma_x|| / (1 - ||sigma_x||)`` is identically 1."""

    def f(e):
        h = 0.5 * e
        return np.stack([1.0 - h, h], axis=1), np.stack([h, -h], axis=1)

    return _curve(decompose([1.0, 0.0]), f, "remark-1.1", schedule,
                  {"special": "yes", "full_norm_ratio": 1.0})


def remark_1_6(schedule=None):
    """``(t + i sqrt(1-t), t - i sqrt(1-t))`` at (1, 1): restricted for every
    amplitude, not special, never inside a Korányi region."""

    def f(e):
        r = 1j * np.sqrt(e)
        d = np.stack([e - r, e + r], axis=1)
        return 1.0 - d, d

    return _curve(decompose([1.0, 1.0]), f, "remark-1.6", schedule,
                  {"special": "no", "restricted": "yes", "koranyi_eventually": "no"})


def remark_2_1_sigma(lam=0.5, schedule=None):
    """``(t, t + lam (1 - t))`` at (1, 1)."""
    if not 0 < lam < 1:
        raise ValueError("lambda must lie in (0, 1)")

    def f(e):
        d = np.stack([e, (1.0 - lam) * e], axis=1).astype(complex)
        return 1.0 - d, d

    return _curve(decompose([1.0, 1.0]), f, "remark-2.1-sigma-lambda", schedule,
                  {"special": "no", "restricted": "yes", "koranyi_eventually": "yes"},
                  {"lam": lam})


def remark_2_3_sigma(lam=0.25, a=0.5, schedule=None):
    """``(t, t - lam (1 - t)^a)`` at (1, 1); peculiar for ``0 < a < 1``."""
    if not 0 < lam < 1:
        raise ValueError("lambda must lie in (0, 1)")
    if not 0 < a < 1:
        raise ValueError("exponent a must lie in (0, 1)")

    def f(e):
        d = np.stack([e, e + lam * e**a], axis=1).astype(complex)
        return 1.0 - d, d

    return _curve(decompose([1.0, 1.0]), f, "remark-2.3-sigma-lambda", schedule,
                  {"peculiar": "yes", "restricted": "yes", "koranyi_eventually": "no"},
                  {"lam": lam, "a": a})


def remark_4_5_sigma(x, v, theta=0.0, schedule=None):
    """``t x + r_t e^{i theta} v`` with ``r_t = (1 - t)/||v||`` for ``v``
    without Silov components; special and restricted."""
    x = _as_boundary(x)
    v = np.asarray(v, dtype=complex)
    if v.shape != (x.n,) or np.any(v[list(x.silov_indices)] != 0) or not np.any(v):
        raise ValueError("v must be nonzero with no Silov components")
    unit = np.exp(1j * theta) * v / np.max(np.abs(v))

    def f(e):
        d = e[:, None] * (x.coords - unit)
        return x.coords - d, d

    return _curve(x, f, "remark-4.5-sigma-theta", schedule,
                  {"special": "yes", "restricted": "yes"}, {"theta": theta})


def tangential_zeta(schedule=None):
    """``(zeta, zeta)`` with ``zeta = t + i sqrt(1 - t)`` at (1, 1): not restricted."""

    def f(e):
        d = (e - 1j * np.sqrt(e))[:, None] * np.ones(2)
        return 1.0 - d, d

    return _curve(decompose([1.0, 1.0]), f, "tangential-zeta", schedule,
                  {"restricted": "no"})


def horocycle_hugging(c=1.0, schedule=None):
    """First coordinate on the circle bounding E(1, 1), second equal to t.

    The deciding horosphere quantity is identically 1, so not peculiar.
    """

    def f(e):
        phi = c * np.sqrt(e)
        d1 = -1j * np.exp(0.5j * phi) * np.sin(0.5 * phi)
        d = np.stack([d1, e.astype(complex)], axis=1)
        return 1.0 - d, d

    return _curve(decompose([1.0, 1.0]), f, "horocycle-hugging", schedule,
                  {"peculiar": "no"}, {"c": c})


_GALLERY = {
    "radial": (lambda point=(1.0, 1.0): radial(point), {"point": "boundary point"}),
    "remark-1.1": (remark_1_1, {}),
    "remark-1.6": (remark_1_6, {}),
    "remark-2.1-sigma-lambda": (remark_2_1_sigma, {"lam": "in (0, 1)"}),
    "remark-2.3-sigma-lambda": (remark_2_3_sigma, {"lam": "in (0, 1)", "a": "in (0, 1)"}),
    "remark-4.5-sigma-theta": (
        lambda point=(1.0, 0.3), v=(0.0, 1.0), theta=0.0: remark_4_5_sigma(point, v, theta),
        {"point": "boundary point", "v": "direction, no Silov components", "theta": "angle"},
    ),
    "tangential-zeta": (tangential_zeta, {}),
    "horocycle-hugging": (horocycle_hugging, {"c": "angular speed > 0"}),
}


def curve_names():
    return sorted(_GALLERY)


def curve_schema(name):
    return dict(_GALLERY[name][1])


def curve_gallery(name, **params):
    try:
        factory, schema = _GALLERY[name]
    except KeyError:
        raise KeyError(f"unknown curve {name!r}") from None
    extra = set(params) - set(schema)
    if extra:
        raise TypeError(f"{name} does not take parameters {sorted(extra)}")
    return factory(**params)


# -- generated families -----------------------------------------------------


def _internal_wobble(x, e, rng, amp=0.5):
    """Internal coordinates ``x_j + amp (1-|x_j|) sqrt(eps) e^{i(w log eps + p)}``."""
    out = {}
    for j in x.internal_indices:
        w, p = rng.uniform(0.5, 2.0), rng.uniform(0, 2 * np.pi)
        out[j] = (w, p)

    def apply(eps, z, d):
        for j, (w, p) in out.items():
            pert = amp * (1 - abs(x.coords[j])) * np.sqrt(eps) * np.exp(
                1j * (w * np.log(eps) + p))
            z[:, j] = x.coords[j] + pert
            d[:, j] = -pert
        return z, d

    return apply


def perturbed_curve(x, p, c, theta, a=1.0, internal_seed=0, schedule=None, label=None):
    """Silov deltas ``x_j (a eps + c_j eps^p e^{i theta_j})``; internal
    coordinates wobble around ``x_j`` at rate ``sqrt(eps)``."""
    x = _as_boundary(x)
    c = np.broadcast_to(np.asarray(c, float), (x.degree,))
    theta = np.broadcast_to(np.asarray(theta, float), (x.degree,))
    idx = list(x.silov_indices)
    wob = _internal_wobble(x, None, np.random.default_rng(internal_seed))

    def f(e):
        d = np.zeros((e.size, x.n), dtype=complex)
        z = np.zeros((e.size, x.n), dtype=complex)
        s = a * e[:, None] + c * e[:, None] ** p * np.exp(1j * theta)
        d[:, idx] = x.coords[idx] * s
        z[:, idx] = x.coords[idx] - d[:, idx]
        return wob(e, z, d)

    return _curve(x, f, label or f"perturbed-p{p:.3g}", schedule, {},
                  {"p": p, "c": c.tolist(), "theta": theta.tolist(), "a": a})


def random_boundary_point(rng, n=None):
    """A boundary point of the bidisk or tridisk with at least one Silov coordinate."""
    n = n or int(rng.integers(2, 4))
    d = int(rng.integers(1, n + 1))
    x = np.empty(n, dtype=complex)
    x[:d] = np.exp(1j * rng.uniform(-np.pi, np.pi, d))
    x[d:] = rng.uniform(0, 0.9, n - d) * np.exp(1j * rng.uniform(-np.pi, np.pi, n - d))
    return decompose(rng.permutation(x))


def random_curves(count=50, seed=0, schedule=None):
    """Radial curves plus Silov perturbations with decay rate ``p`` drawn
    from ``[0.5, 1]`` (not special when the degree exceeds 1) or
    ``[1.5, 2.5]`` (special)."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        x = random_boundary_point(rng)
        fast = rng.random() < 0.5
        p = rng.uniform(1.5, 2.5) if fast else rng.uniform(0.5, 1.0)
        c = rng.uniform(0.2, 1.0, x.degree)
        # alternate signs so Silov perturbations never coincide
        theta = rng.uniform(np.pi / 6, np.pi / 3, x.degree) * (-1) ** np.arange(x.degree)
        try:
            cur = perturbed_curve(x, p, c, theta, a=rng.uniform(0.5, 2.0),
                                  internal_seed=int(rng.integers(2**31)),
                                  schedule=schedule, label=f"random-{len(out)}")
        except ValueError:
            continue
        out.append(cur)
    return out


def swinging_curve(x, M, s_frac=0.9, omega=1.0, phase=0.0, c=0.5, theta=0.0,
                   internal_seed=0, schedule=None):
    """Special restricted curve whose projection swings inside H(1, M).

    ``1 - sigma_tilde = eps rho`` with ``rho = 1 + i b sin(omega log eps + phase)``,
    ``|b| = s_frac sqrt(M^2 - 1)``; Silov coordinates get an extra
    ``c eps^1.5`` perturbation and internal ones a ``sqrt(eps)`` wobble.
    """
    x = _as_boundary(x)
    b = s_frac * np.sqrt(M**2 - 1.0)
    idx = list(x.silov_indices)
    wob = _internal_wobble(x, None, np.random.default_rng(internal_seed))
    signs = (-1.0) ** np.arange(x.degree)

    def f(e):
        rho = 1.0 + 1j * b * np.sin(omega * np.log(e) + phase)
        s = (e * rho)[:, None] + c * e[:, None] ** 1.5 * np.exp(1j * (theta + signs))
        d = np.zeros((e.size, x.n), dtype=complex)
        z = np.zeros((e.size, x.n), dtype=complex)
        d[:, idx] = x.coords[idx] * s
        z[:, idx] = x.coords[idx] - d[:, idx]
        return wob(e, z, d)

    return _curve(x, f, f"swinging-M{M:g}", schedule,
                  {"special": "yes", "restricted": "yes"},
                  {"M": M, "omega": omega, "phase": phase})


FAMILY_SCHEDULE = dyadic_schedule(80, 8)


def special_restricted_family(x, amplitudes=(1.5, 4.0, 10.0), per_amplitude=2, seed=0,
                              schedule=None):
    """Radial curve plus deterministic swinging curves at each amplitude."""
    x = _as_boundary(x)
    schedule = FAMILY_SCHEDULE if schedule is None else schedule
    rng = np.random.default_rng(seed)
    fam = [radial(x, schedule)]
    for M in amplitudes:
        for _ in range(per_amplitude):
            fam.append(swinging_curve(
                x, M, omega=rng.uniform(0.5, 2.0), phase=rng.uniform(0, 2 * np.pi),
                c=rng.uniform(0.2, 0.5), theta=rng.uniform(-np.pi / 3, np.pi / 3),
                internal_seed=int(rng.integers(2**31)), schedule=schedule))
    return fam


def tangential_peculiar(x, lam, a, schedule=None):
    """First Silov coordinate radial, the other Silov ones pushed out by
    ``lam eps^a`` (tangential but peculiar); internal coordinates radial."""
    x = _as_boundary(x)
    idx = list(x.silov_indices)
    if len(idx) < 2:
        raise ValueError("needs at least two Silov coordinates")

    def f(e):
        d = e[:, None] * x.coords.astype(complex)
        extra = lam * e**a
        for j in idx[1:]:
            d[:, j] = x.coords[j] * (e + extra)
        return x.coords - d, d

    return _curve(x, f, f"tangential-peculiar-{lam:g}-{a:g}", schedule,
                  {"peculiar": "yes"}, {"lam": lam, "a": a})


def peculiar_family(x, exponents=(0.5, 0.75), lams=(0.25, 0.75), schedule=None):
    x = _as_boundary(x)
    schedule = FAMILY_SCHEDULE if schedule is None else schedule
    fam = [radial(x, schedule)]
    if x.degree >= 2:
        for a in exponents:
            for lam in lams:
                fam.append(tangential_peculiar(x, lam, a, schedule))
    return fam
