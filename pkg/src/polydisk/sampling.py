"""Samplers for horospheres, Korányi regions and Kobayashi balls.

Every sampler returns ``(z, delta)`` with ``delta = x - z`` computed
directly, so points can sit far closer to the vertex than ``1e-16``.
Near-vertex samples use a log-uniform scale ``s = 2**-k``. Uniform
variates come from scrambled Halton sequences.
"""

import numpy as np
from scipy.stats import qmc

from .boundary import _as_boundary
from .regions import classify, horosphere_value, koranyi_value

_STRICT = 1.0 - 1e-12


def _uniforms(n, d, seed):
    return qmc.Halton(d=d, scramble=True, seed=seed).random(n)


def _unit_disk(u, v, rmax=1.0):
    """Uniform points of the disk of radius ``rmax`` from two uniform columns."""
    return rmax * _STRICT * np.sqrt(u) * np.exp(2j * np.pi * v)


def _internal(x, n, seed, cap=None):
    """Uniform points of the unit disk in every internal coordinate.

    ``cap`` optionally bounds their modulus row-wise.
    """
    out = np.zeros((n, x.n), dtype=complex)
    idx = list(x.internal_indices)
    if not idx:
        return out
    U = _uniforms(n, 2 * len(idx), seed)
    for m, j in enumerate(idx):
        out[:, j] = _unit_disk(U[:, 2 * m], U[:, 2 * m + 1])
    if cap is not None:
        out[:, idx] *= np.asarray(cap)[:, None]
    return out


def _assemble(x, silov_delta, internal_z):
    """Build ``(z, delta)`` from Silov deltas and internal coordinates."""
    z = np.array(internal_z, dtype=complex, copy=True)
    delta = x.coords - z
    mask = x.silov_mask
    delta[:, mask] = silov_delta[:, mask]
    z[:, mask] = x.coords[mask] - silov_delta[:, mask]
    return z, delta


def sample_horosphere(x, R, n, seed=0, kmax=40, near_fraction=0.5):
    """``n`` points of E(x, R); about ``near_fraction`` of them near ``x``."""
    x = _as_boundary(x)
    out_z, out_d = [], []
    got, batch, rnd = 0, max(64, 2 * n), 0
    while got < n:
        U = _uniforms(batch, 3 * x.n + 1, seed + 7919 * rnd)
        rnd += 1
        near = U[:, -1] < near_fraction
        one_minus_w = np.empty((batch, x.n), dtype=complex)
        for j in range(x.n):
            a, b, c = U[:, 3 * j], U[:, 3 * j + 1], U[:, 3 * j + 2]
            w = _unit_disk(a, b)
            # near the vertex: 1 - w = s * rho with rho in D(1, 1)
            s = 2.0 ** (-kmax * c)
            rho = 1.0 + _unit_disk(a, b)
            one_minus_w[:, j] = np.where(near, s * rho, 1.0 - w)
        sd = x.coords * (R / (1.0 + R)) * one_minus_w
        z, d = _assemble(x, sd, _internal(x, batch, seed + 7919 * rnd + 1))
        ok = classify(horosphere_value(x, z, d), R)[0]
        out_z.append(z[ok])
        out_d.append(d[ok])
        got += int(ok.sum())
    return np.concatenate(out_z)[:n], np.concatenate(out_d)[:n]


def sample_koranyi(x, M, n, seed=0, kmin=0.0, kmax=40.0, internal="disk",
                   bulk_fraction=0.1):
    """``n`` points of H(x, M) densified toward ``x``.

    Silov deltas are ``x_j s rho_j`` with ``s = 2**-k``, ``k`` uniform in
    ``[kmin, kmax]`` and ``rho_j`` a random point of a sector about 1.
    ``internal='disk'`` draws internal coordinates uniformly with modulus
    at most the largest Silov modulus; ``internal='shell'`` puts them at
    ``x_j + s u_j`` so the whole point shrinks onto ``x`` with ``s``.
    A ``bulk_fraction`` of uniform polydisk points (kept if inside) covers
    the region away from the vertex.
    """
    x = _as_boundary(x)
    if not M > 1:
        raise ValueError("Koranyi amplitude must exceed 1")
    bmax = np.sqrt(M**2 - 1.0)
    out_z, out_d = [], []
    got, batch, rnd = 0, max(64, 4 * n), 0
    while got < n:
        d_u = 5 * x.n + 4
        U = _uniforms(batch, d_u, seed + 7919 * rnd)
        rnd += 1
        k = kmin + (kmax - kmin) * U[:, 0]
        s = 2.0 ** (-k)
        # common direction rho0 = 1 + i b inside the admissible cone
        b = bmax * (2.0 * U[:, 1] - 1.0)
        spread = U[:, 2]
        rho = np.empty((batch, x.n), dtype=complex)
        for j in range(x.n):
            eta = (2.0 * U[:, 3 + 3 * j] - 1.0) + 1j * (2.0 * U[:, 4 + 3 * j] - 1.0)
            rho[:, j] = (1.0 + 1j * b) * (1.0 + spread * eta)
        sd = x.coords * s[:, None] * rho
        if internal == "shell":
            iz = np.zeros((batch, x.n), dtype=complex)
            base = 3 + 3 * x.n
            for j in x.internal_indices:
                u = _unit_disk(U[:, base + 2 * j], U[:, base + 2 * j + 1])
                iz[:, j] = x.coords[j] + s * u
        elif internal == "disk":
            zs = np.abs(x.coords - sd)
            zs = np.where(x.silov_mask, zs, 0.0).max(axis=1)
            iz = _internal(x, batch, seed + 7919 * rnd + 1, cap=zs)
        else:
            raise ValueError(f"unknown internal mode {internal!r}")
        z, d = _assemble(x, sd, iz)
        bulk = U[:, -1] < bulk_fraction
        if bulk.any():
            V = _uniforms(int(bulk.sum()), 2 * x.n, seed + 7919 * rnd + 2)
            zb = np.stack(
                [_unit_disk(V[:, 2 * j], V[:, 2 * j + 1]) for j in range(x.n)], axis=1
            )
            z[bulk] = zb
            d[bulk] = x.coords - zb
        inside = np.all(np.abs(z[:, ~x.silov_mask]) < 1.0, axis=1)
        oms_ok = np.all(
            np.where(x.silov_mask,
                     2 * np.real(np.conj(x.coords) * d) - np.abs(d) ** 2, 1.0) > 0,
            axis=1,
        )
        ok = inside & oms_ok
        ok[ok] = classify(koranyi_value(x, z[ok], d[ok]), M**2)[0]
        out_z.append(z[ok])
        out_d.append(d[ok])
        got += int(ok.sum())
    return np.concatenate(out_z)[:n], np.concatenate(out_d)[:n]


def sample_kobayashi_ball(x, eps, radius, n, seed=0):
    """``n`` points of the Kobayashi ball of the given radius around
    ``phi_x(1 - eps)``; Silov deltas are computed in closed form."""
    x = _as_boundary(x)
    U = _uniforms(n, 2 * x.n, seed)
    u = np.stack(
        [_unit_disk(U[:, 2 * j], U[:, 2 * j + 1], np.tanh(radius)) for j in range(x.n)],
        axis=1,
    )
    t = 1.0 - eps
    c = t * x.coords
    z = (u + c) / (1.0 + np.conj(c) * u)
    delta = x.coords - z
    mask = x.silov_mask
    xs = x.coords[mask]
    delta[:, mask] = eps * (xs - u[:, mask]) / (1.0 + t * np.conj(xs) * u[:, mask])
    z[:, mask] = xs - delta[:, mask]
    return z, delta


def sample_disk(n, seed=0, rmax=1.0):
    """Uniform points of the disk of radius ``rmax``."""
    U = _uniforms(n, 2, seed)
    return _unit_disk(U[:, 0], U[:, 1], rmax)


def sample_polydisk(n, dim, seed=0, rmax=1.0):
    U = _uniforms(n, 2 * dim, seed)
    return np.stack(
        [_unit_disk(U[:, 2 * j], U[:, 2 * j + 1], rmax) for j in range(dim)], axis=1
    )
