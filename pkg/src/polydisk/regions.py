"""Horocycles, Stolz regions, horospheres and Koranyi regions.

All membership tests take ``z`` with coordinates on the last axis and an
optional ``delta = x - z``. Passing ``delta`` is what lets points within
``1e-30`` of the vertex be classified correctly; when it is omitted it is
recomputed as ``x - z``.

Inequalities are strict. A value within ``BOUNDARY_TOL`` (relative) of
its bound is flagged as boundary and counted as outside.
"""

from dataclasses import dataclass

import numpy as np

from .boundary import BoundaryPoint, _as_boundary, decompose, geodesic
from .hyperbolic import (
    kobayashi_distance,
    one_minus_abs_sq,
    poincare_distance_stable,
)

BOUNDARY_TOL = 1e-12


def classify(value, bound, tol=BOUNDARY_TOL):
    """Return ``(inside, on_boundary)`` boolean arrays for ``value < bound``."""
    value = np.asarray(value, dtype=float)
    on_boundary = np.abs(value - bound) <= tol * np.maximum(1.0, abs(bound))
    return (value < bound) & ~on_boundary, on_boundary


def _delta(x, z, delta):
    if delta is None:
        return x.coords - np.asarray(z, dtype=complex)
    return np.asarray(delta, dtype=complex)


def coordinate_one_minus_sq(x, z, delta=None):
    """``1 - |z_j|^2`` per coordinate, using ``delta`` on Silov coordinates."""
    x = _as_boundary(x)
    z = np.asarray(z, dtype=complex)
    delta = _delta(x, z, delta)
    out = one_minus_abs_sq(z)
    mask = x.silov_mask
    out = np.array(out, dtype=float, copy=True)
    out[..., mask] = one_minus_abs_sq(None, delta[..., mask], x.coords[mask])
    return out


def one_minus_sup_norm(x, z, delta=None):
    """``1 - ||z||`` (sup-norm), accurate near the vertex ``x``."""
    oms = coordinate_one_minus_sq(x, z, delta)
    return np.min(oms / (1.0 + np.abs(z)), axis=-1)


def horosphere_value(x, z, delta=None):
    """``max over Silov j of |x_j - z_j|^2 / (1 - |z_j|^2)``."""
    x = _as_boundary(x)
    z = np.asarray(z, dtype=complex)
    delta = _delta(x, z, delta)
    mask = x.silov_mask
    oms = coordinate_one_minus_sq(x, z, delta)
    return np.max(np.abs(delta[..., mask]) ** 2 / oms[..., mask], axis=-1)


def koranyi_value(x, z, delta=None):
    """``(1 + ||z||)/(1 - ||z||) * horosphere_value``; compare with ``M^2``."""
    x = _as_boundary(x)
    z = np.asarray(z, dtype=complex)
    delta = _delta(x, z, delta)
    oms = coordinate_one_minus_sq(x, z, delta)
    r = np.abs(z)
    one_minus_norm = np.min(oms / (1.0 + r), axis=-1)
    norm = np.max(r, axis=-1)
    mask = x.silov_mask
    horo = np.max(np.abs(delta[..., mask]) ** 2 / oms[..., mask], axis=-1)
    return (1.0 + norm) / one_minus_norm * horo


def boundary_limsup(x, z, delta=None):
    """Normalized distance of ``z`` from the boundary point ``x``.

    Closed form ``0.5 log max_{Silov j} |x_j - z_j|^2/(1 - |z_j|^2)``.
    """
    return 0.5 * np.log(horosphere_value(x, z, delta))


def radial_limsup_term(x, z, eps):
    """``k(z, phi_x(1 - eps)) - omega(0, 1 - eps)`` for one interior ``z``.

    Evaluated without cancellation so ``eps`` can go down to ~1e-15; the
    sequence converges to ``boundary_limsup(x, z)`` as ``eps -> 0``.
    """
    x = _as_boundary(x)
    z = np.asarray(z, dtype=complex)
    eps = np.asarray(eps, dtype=float)[..., None]
    s = 1.0 - eps
    b = s * x.coords
    omb = np.where(
        x.silov_mask, eps * (2.0 - eps), 1.0 - (s * np.abs(x.coords)) ** 2
    )
    k = np.max(poincare_distance_stable(z, b, one_minus_abs_sq(z), omb), axis=-1)
    eps = eps[..., 0]
    return k - 0.5 * np.log((2.0 - eps) / eps)


# -- one-dimensional regions ------------------------------------------------


def horocycle_value(tau, zeta, delta=None):
    tau = complex(tau)
    zeta = np.asarray(zeta, dtype=complex)
    if delta is None:
        delta = tau - zeta
    return np.abs(delta) ** 2 / one_minus_abs_sq(zeta, delta, tau)


def stolz_value(tau, zeta, delta=None):
    """``|tau - zeta| / (1 - |zeta|)``."""
    tau = complex(tau)
    zeta = np.asarray(zeta, dtype=complex)
    if delta is None:
        delta = tau - zeta
    return np.abs(delta) * (1.0 + np.abs(zeta)) / one_minus_abs_sq(zeta, delta, tau)


def _unimodular(tau, tol=1e-12):
    tau = complex(tau)
    if abs(abs(tau) - 1.0) > tol:
        raise ValueError(f"|tau| = {abs(tau)!r} is not 1")
    return tau


@dataclass(frozen=True)
class Horocycle:
    center: complex
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", _unimodular(self.center))
        if not self.radius > 0:
            raise ValueError("horocycle radius must be positive")

    def value(self, zeta, delta=None):
        return horocycle_value(self.center, zeta, delta)

    def contains(self, zeta, delta=None):
        return classify(self.value(zeta, delta), self.radius)[0]

    def euclidean_circle(self):
        """(center, radius) of the boundary circle in the plane."""
        R = self.radius
        return self.center / (1.0 + R), R / (1.0 + R)


@dataclass(frozen=True)
class StolzRegion:
    vertex: complex
    amplitude: float

    def __post_init__(self):
        object.__setattr__(self, "vertex", _unimodular(self.vertex))
        if not self.amplitude > 1:
            raise ValueError("Stolz amplitude must exceed 1")

    def value(self, zeta, delta=None):
        return stolz_value(self.vertex, zeta, delta)

    def contains(self, zeta, delta=None):
        return classify(self.value(zeta, delta), self.amplitude)[0]


@dataclass(frozen=True)
class Horosphere:
    center: BoundaryPoint
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", _as_boundary(self.center))
        if not self.radius > 0:
            raise ValueError("horosphere radius must be positive")

    def value(self, z, delta=None):
        return horosphere_value(self.center, z, delta)

    def contains(self, z, delta=None):
        return classify(self.value(z, delta), self.radius)[0]


@dataclass(frozen=True)
class KoranyiRegion:
    vertex: BoundaryPoint
    amplitude: float

    def __post_init__(self):
        object.__setattr__(self, "vertex", _as_boundary(self.vertex))
        if not self.amplitude > 1:
            raise ValueError("Koranyi amplitude must exceed 1")

    def value(self, z, delta=None):
        return koranyi_value(self.vertex, z, delta)

    def contains(self, z, delta=None):
        return classify(self.value(z, delta), self.amplitude**2)[0]


def horocycle_contains(E, zeta, delta=None):
    return E.contains(zeta, delta)


def horosphere_contains(E, z, delta=None):
    return E.contains(z, delta)


def koranyi_contains(H, z, delta=None):
    return H.contains(z, delta)


def stolz_contains(H, zeta, delta=None):
    return H.contains(zeta, delta)


# -- inclusion checks -------------------------------------------------------


def _findings(name, ok, values=None, limit=5):
    ok = np.asarray(ok, dtype=bool)
    bad = np.flatnonzero(~ok)
    out = {"check": name, "checked": int(ok.size), "violations": int(bad.size)}
    if values is not None and bad.size:
        out["worst"] = float(np.max(np.asarray(values)[bad]))
    return out


def check_sandwich(x, M, n=10_000, seed=0, eps_centers=None, slack=1e-9):
    """Sample both inclusions of union-of-balls <= H(x,M) <= product of Stolz.

    Ball centers are ``phi_x(1 - eps)`` for the given ``eps_centers``
    (default: t in {0, 0.5, 0.9, 0.99} plus dyadic points down to 2^-30).
    Also records Remark-1.3 style witnesses ``t x_check + v`` showing the
    internal coordinates of ``H(x, M)`` sweep the whole disk.
    """
    from .sampling import sample_kobayashi_ball, sample_koranyi

    x = _as_boundary(x)
    if eps_centers is None:
        eps_centers = [1.0, 0.5, 0.1, 0.01] + [2.0**-k for k in (10, 20, 30)]
    radius = 0.5 * np.log(M)
    per = -(-n // len(eps_centers))
    ball_vals = []
    for i, e in enumerate(eps_centers):
        z, d = sample_kobayashi_ball(x, e, radius, per, seed=seed + i)
        ball_vals.append(koranyi_value(x, z, d))
    ball_vals = np.concatenate(ball_vals)
    first = _findings(
        "balls_in_koranyi", ball_vals < M**2 * (1 + slack), ball_vals / M**2
    )

    z, d = sample_koranyi(x, M, n, seed=seed + 100)
    stolz_ok = np.ones(len(z), dtype=bool)
    worst = np.zeros(len(z))
    for j in x.silov_indices:
        sv = stolz_value(x.coords[j], z[:, j], d[:, j])
        stolz_ok &= sv < M * (1 + slack)
        worst = np.maximum(worst, sv / M)
    second = _findings("koranyi_in_stolz_product", stolz_ok, worst)

    # internal coordinates are unconstrained
    rng = np.random.default_rng(seed + 200)
    internal = list(x.internal_indices)
    witnesses = {"checked": 0, "violations": 0, "max_internal_modulus": 0.0}
    if internal:
        for t in 1.0 - np.logspace(-1, -8, 50):
            v = np.zeros(x.n, dtype=complex)
            ang = rng.uniform(0, 2 * np.pi, len(internal))
            v[internal] = t * np.exp(1j * ang)
            zz = t * x.silov_part + v
            dd = x.coords - zz
            val = koranyi_value(x, zz, dd)
            witnesses["checked"] += 1
            witnesses["violations"] += int(not classify(val, M**2)[0])
            witnesses["max_internal_modulus"] = max(
                witnesses["max_internal_modulus"], float(t)
            )
    return {
        "vertex": x.to_dict(),
        "amplitude": M,
        "balls_in_koranyi": first,
        "koranyi_in_stolz_product": second,
        "internal_witnesses": witnesses,
        "violations": first["violations"]
        + second["violations"]
        + witnesses["violations"],
    }


def geodesic_trace_check(x, R, M, zetas):
    """Compare memberships of ``zeta`` in E(1,R)/H(1,M) with those of
    ``phi_x(zeta)`` in E(x,R)/H(x,M).
    """
    x = _as_boundary(x)
    zetas = np.asarray(zetas, dtype=complex)
    z = geodesic(x, zetas)
    d = (1.0 - zetas)[..., None] * x.coords
    e_disk = Horocycle(1.0, R).contains(zetas)
    e_poly = Horosphere(x, R).contains(z, d)
    h_disk = StolzRegion(1.0, M).contains(zetas)
    h_poly = KoranyiRegion(x, M).contains(z, d)
    disagree_e = int(np.sum(e_disk != e_poly))
    disagree_h = int(np.sum(h_disk != h_poly))
    return {
        "checked": int(zetas.size),
        "horosphere_disagreements": disagree_e,
        "koranyi_disagreements": disagree_h,
        "violations": disagree_e + disagree_h,
        "inside_horocycle": int(np.sum(e_disk)),
        "inside_stolz": int(np.sum(h_disk)),
    }


def remark_2_3_inclusion(x, M, R, n=10_000, seed=0):
    """Points of H(x,M) outside the Kobayashi ball B(0, r) with
    ``r = 0.5 log(M^2/R)`` must lie in E(x,R)."""
    from .sampling import sample_koranyi

    x = _as_boundary(x)
    r = 0.5 * np.log(M**2 / R)
    z, d = sample_koranyi(x, M, n, seed=seed)
    oms = coordinate_one_minus_sq(x, z, d)
    k0 = np.max(0.5 * np.log((1.0 + np.abs(z)) ** 2 / oms), axis=-1)
    far = k0 >= r
    horo = horosphere_value(x, z[far], d[far])
    ok = horo < R * (1 + 1e-9)
    out = _findings("outside_ball_in_horosphere", ok, horo / R)
    out["outside_ball"] = int(far.sum())
    out["r"] = float(r)
    return out


def bidisk_ratio_bounds(M, n=10_000, seed=0):
    """For z in H((1,1), M): both ``(1-|z2|)/(1-|z1|)`` and
    ``|1-z2|/|1-z1|`` lie in ``[1/(2M^2), 2M^2]``."""
    from .sampling import sample_koranyi

    x = decompose([1.0, 1.0])
    z, d = sample_koranyi(x, M, n, seed=seed)
    oms = coordinate_one_minus_sq(x, z, d)
    omr = oms / (1.0 + np.abs(z))
    ratio_mod = omr[:, 1] / omr[:, 0]
    ratio_abs = np.abs(d[:, 1]) / np.abs(d[:, 0])
    lo, hi = 1.0 / (2 * M**2), 2 * M**2
    slack = 1e-9
    ok = (
        (ratio_mod >= lo * (1 - slack))
        & (ratio_mod <= hi * (1 + slack))
        & (ratio_abs >= lo * (1 - slack))
        & (ratio_abs <= hi * (1 + slack))
    )
    out = _findings("bidisk_ratio_bounds", ok)
    out["range_modulus_ratio"] = [float(ratio_mod.min()), float(ratio_mod.max())]
    out["range_abs_ratio"] = [float(ratio_abs.min()), float(ratio_abs.max())]
    out["bounds"] = [lo, hi]
    return out


def kobayashi_distance_to_geodesic_point(x, z, eps):
    """``k(z, phi_x(1 - eps))`` (plain evaluation; for moderate eps)."""
    x = _as_boundary(x)
    return kobayashi_distance(z, (1.0 - eps) * x.coords)
