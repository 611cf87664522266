"""Poincare and Kobayashi distances/metrics on the disk and the polydisk.

Points of the polydisk are complex arrays whose last axis holds the
coordinates, so every function here broadcasts over leading sample axes.
"""

import numpy as np

#: default strictness margin: accepted points have sup-norm <= 1 - MARGIN
MARGIN = 1e-15


class DimensionError(ValueError):
    pass


def as_point(z, margin=MARGIN):
    """Validate and return ``z`` as a complex array of polydisk points.

    Raises ``ValueError`` if some sup-norm exceeds ``1 - margin``.
    """
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if z.shape[-1] < 1:
        raise DimensionError("a polydisk point needs at least one coordinate")
    if np.any(np.abs(z) > 1.0 - margin):
        raise ValueError("point is not strictly inside the polydisk")
    return z


def as_disk_point(a, margin=MARGIN):
    a = np.asarray(a, dtype=complex)
    if np.any(np.abs(a) > 1.0 - margin):
        raise ValueError("point is not strictly inside the unit disk")
    return a


def _same_dim(*arrays):
    n = {np.shape(a)[-1] for a in arrays}
    if len(n) != 1:
        raise DimensionError(f"dimension mismatch: {sorted(n)}")


def sup_norm(z):
    return np.max(np.abs(z), axis=-1)


def one_minus_abs_sq(z, delta=None, anchor=None):
    """Return ``1 - |z|^2`` without cancellation near the unit circle.

    With ``delta = anchor - z`` for a unimodular ``anchor`` the identity
    ``1 - |z|^2 = 2 Re(conj(anchor) delta) - |delta|^2`` is used, which
    keeps full relative accuracy when ``z`` is within ``1e-12`` of the
    circle. Without it, ``(1 - |z|)(1 + |z|)`` is returned.
    """
    if delta is None:
        r = np.abs(z)
        return (1.0 - r) * (1.0 + r)
    delta = np.asarray(delta, dtype=complex)
    anchor = np.asarray(anchor, dtype=complex)
    return 2.0 * np.real(np.conj(anchor) * delta) - np.abs(delta) ** 2


def mobius(a, b):
    """Disk automorphism sending ``a`` to 0, evaluated at ``b``."""
    return (b - a) / (1.0 - np.conj(a) * b)


def pseudo_hyperbolic(a, b):
    """``|(b - a)/(1 - conj(a) b)|``; the Poincare distance is its atanh."""
    return np.abs(mobius(a, b))


def poincare_distance(a, b):
    """``atanh |(b - a)/(1 - conj(a) b)|``, evaluated as in
    ``poincare_distance_stable`` (exactly symmetric, exactly 0 at a = b)."""
    a = as_disk_point(a)
    b = as_disk_point(b)
    return poincare_distance_stable(a, b)


def polydisk_automorphism(z, w):
    """Apply the automorphism ``gamma_z`` (sending ``z`` to the origin) to ``w``."""
    z = as_point(z)
    w = as_point(w)
    _same_dim(z, w)
    return mobius(z, w)


def kobayashi_distance(z, w):
    """Kobayashi distance of the polydisk: max of coordinate Poincare distances."""
    z = as_point(z)
    w = as_point(w)
    _same_dim(z, w)
    return np.max(poincare_distance_stable(z, w), axis=-1)


def distance_from_origin(z, one_minus_sq=None):
    """``k(0, z)``; pass ``one_minus_sq = 1 - |z_j|^2`` for near-boundary points."""
    if one_minus_sq is None:
        one_minus_sq = one_minus_abs_sq(z)
    z = np.asarray(z)
    r = np.abs(z)
    # atanh(r) = 0.5 log((1 + r)^2 / (1 - r^2)), per coordinate
    per = 0.5 * np.log((1.0 + r) ** 2 / one_minus_sq)
    return np.max(per, axis=-1)


def kobayashi_metric(z, v):
    """Infinitesimal Kobayashi metric ``max_j |v_j| / (1 - |z_j|^2)``."""
    z = as_point(z)
    v = np.atleast_1d(np.asarray(v, dtype=complex))
    _same_dim(z, v)
    return np.max(np.abs(v) / one_minus_abs_sq(z), axis=-1)


def kobayashi_ball_point(center, u):
    """Map ``u`` (a point of the polydisk at the origin) into the Kobayashi
    ball around ``center`` by the inverse automorphism.

    ``k(center, result) = atanh(max |u_j|)``.
    """
    return (u + center) / (1.0 + np.conj(center) * u)


def poincare_distance_stable(a, b, oma=None, omb=None):
    """Poincare distance using ``1 - m^2 = (1-|a|^2)(1-|b|^2)/|1 - conj(a) b|^2``.

    ``oma``/``omb`` are accurate values of ``1 - |a|^2``, ``1 - |b|^2``;
    with them the result stays accurate when ``m`` is within 1e-12 of 1.
    """
    if oma is None:
        oma = one_minus_abs_sq(a)
    if omb is None:
        omb = one_minus_abs_sq(b)
    den = np.abs(1.0 - np.conj(a) * b) ** 2
    m = np.abs(b - a) / np.sqrt(den)
    # log of (1 + m)/(1 - m) with 1 - m^2 = oma omb / den
    out = 0.5 * np.log((1.0 + m) ** 2 * den / (oma * omb))
    return np.where(m == 0.0, 0.0, out)
