"""Silov decomposition of boundary points and the canonical projection device.

For ``x`` on the boundary of the polydisk, ``geodesic`` is the complex
geodesic ``zeta -> zeta x``, ``left_inverse`` is its holomorphic left
inverse ``(1/d_x) (z, x_check)`` and ``retraction`` their composition.
"""

from dataclasses import dataclass, field

import numpy as np

from .hyperbolic import DimensionError

#: default Silov-membership tolerance on |x_j|
SILOV_TOL = 1e-9
#: tolerance for "v_j = 0" in has_no_silov_components
ZERO_TOL = 1e-15


@dataclass(frozen=True, eq=False)
class BoundaryPoint:
    """A boundary point with its Silov decomposition.

    Silov coordinates are stored normalized to modulus exactly 1 (up to
    rounding of ``x / |x|``); ``adjustments`` records how far each input
    coordinate was moved.
    """

    coords: np.ndarray
    silov_indices: tuple
    degree: int
    silov_part: np.ndarray
    internal_part: np.ndarray
    adjustments: dict = field(default_factory=dict)

    @property
    def n(self):
        return self.coords.shape[0]

    @property
    def silov_mask(self):
        mask = np.zeros(self.n, dtype=bool)
        mask[list(self.silov_indices)] = True
        return mask

    @property
    def internal_indices(self):
        return tuple(j for j in range(self.n) if j not in self.silov_indices)

    def one_minus(self):
        """``1 - x_j``, exactly zero on coordinates equal to 1."""
        return 1.0 - self.coords

    def to_dict(self):
        return {
            "coords": [[float(c.real), float(c.imag)] for c in self.coords],
            "silov_indices": list(self.silov_indices),
            "degree": self.degree,
            "adjustments": {str(k): v for k, v in self.adjustments.items()},
        }

    def __repr__(self):
        cs = ", ".join(f"{c:.6g}" for c in self.coords)
        return f"BoundaryPoint(({cs}), silov={list(self.silov_indices)})"


def decompose(x, tol=SILOV_TOL):
    """Classify the coordinates of ``x`` into Silov and internal ones.

    ``x`` must have sup-norm within ``tol`` of 1. Coordinates with
    ``|x_j| >= 1 - tol`` are Silov and get normalized to modulus 1.
    """
    x = np.atleast_1d(np.asarray(x, dtype=complex)).copy()
    if x.ndim != 1 or x.size < 1:
        raise DimensionError("boundary point must be a non-empty vector")
    r = np.abs(x)
    if abs(r.max() - 1.0) > tol:
        raise ValueError(f"sup-norm {r.max():.17g} is not within {tol:g} of 1")
    silov = tuple(int(j) for j in np.flatnonzero(r >= 1.0 - tol))
    adjustments = {}
    for j in silov:
        if r[j] != 1.0:
            unit = x[j] / r[j]
            # keep exact real/imaginary unit values exact
            if unit.imag == 0.0:
                unit = complex(np.sign(unit.real), 0.0)
            elif unit.real == 0.0:
                unit = complex(0.0, np.sign(unit.imag))
            adjustments[j] = float(abs(unit - x[j]))
            x[j] = unit
    check = np.zeros_like(x)
    check[list(silov)] = x[list(silov)]
    return BoundaryPoint(
        coords=x,
        silov_indices=silov,
        degree=len(silov),
        silov_part=check,
        internal_part=x - check,
        adjustments=adjustments,
    )


def _as_boundary(x):
    return x if isinstance(x, BoundaryPoint) else decompose(x)


def _check_dim(x, z):
    if np.shape(z)[-1] != x.n:
        raise DimensionError(f"expected {x.n} coordinates, got {np.shape(z)[-1]}")


def geodesic(x, zeta):
    """``phi_x(zeta) = zeta x``; broadcasts over an array of ``zeta``."""
    x = _as_boundary(x)
    zeta = np.asarray(zeta, dtype=complex)
    if np.any(np.abs(zeta) >= 1.0):
        raise ValueError("zeta must lie in the unit disk")
    return zeta[..., None] * x.coords


def left_inverse(x, z):
    """``(1/d_x) sum_{Silov j} z_j conj(x_j)``."""
    x = _as_boundary(x)
    z = np.asarray(z, dtype=complex)
    _check_dim(x, z)
    return (z @ np.conj(x.silov_part)) / x.degree


def one_minus_left_inverse(x, delta):
    """``1 - left_inverse(x, z)`` computed from ``delta = x - z``.

    Exact in the sense that no ``1 - (1 - small)`` cancellation occurs.
    """
    x = _as_boundary(x)
    delta = np.asarray(delta, dtype=complex)
    _check_dim(x, delta)
    return (delta @ np.conj(x.silov_part)) / x.degree


def retraction(x, z):
    """Holomorphic retraction onto the image of the geodesic."""
    x = _as_boundary(x)
    return left_inverse(x, z)[..., None] * x.coords


def has_no_silov_components(x, v, tol=ZERO_TOL):
    x = _as_boundary(x)
    v = np.asarray(v, dtype=complex)
    _check_dim(x, v)
    return bool(np.all(np.abs(v[..., list(x.silov_indices)]) <= tol))
