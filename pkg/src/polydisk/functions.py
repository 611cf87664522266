"""Holomorphic maps of the polydisk with exact first derivatives.

A ``HoloMap`` wraps a function ``func(z, w)`` of per-coordinate lists,
where ``w[j] = 1 - z[j]`` is passed separately so that maps with branch
points at ``z_j = 1`` can be evaluated without cancellation near the
boundary. Entries may be arrays or ``ComplexDual`` numbers; feeding duals
``(z, v)`` and ``(w, -v)`` yields the derivative along ``v``.

Maps whose values approach a unimodular ``anchor`` near the boundary also
carry ``defect(z, w) = anchor - f``, evaluated without cancellation.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import dual
from .dual import ComplexDual


class SectorViolationError(ValueError):
    """Raised when a quotient construction leaves its admissible sector."""


class UnknownNameError(KeyError):
    pass


@dataclass(frozen=True, eq=False)
class HoloMap:
    label: str
    arity: int
    codomain: int
    func: Callable
    defect: Optional[Callable] = None
    anchor: Optional[tuple] = None
    meta: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)

    def _split(self, z, w=None):
        z = np.asarray(z, dtype=complex)
        if z.shape[-1] != self.arity:
            raise ValueError(f"{self.label} expects {self.arity} coordinates")
        if w is None:
            w = 1.0 - z
        w = np.asarray(w, dtype=complex)
        return [z[..., j] for j in range(self.arity)], [
            w[..., j] for j in range(self.arity)
        ]

    @staticmethod
    def _stack(outs):
        return np.stack([np.asarray(dual.value(o)) for o in outs], axis=-1)

    def evaluate(self, z, w=None):
        """Values with shape ``(..., codomain)``."""
        zs, ws = self._split(z, w)
        outs = self.func(zs, ws)
        return np.broadcast_to(self._stack(outs), np.shape(z)[:-1] + (self.codomain,))

    def __call__(self, z, w=None):
        out = self.evaluate(z, w)
        return out[..., 0] if self.codomain == 1 else out

    def defect_values(self, z, w=None):
        """``anchor - f``, shape ``(..., codomain)``; needs an anchor."""
        if self.anchor is None:
            raise ValueError(f"{self.label} has no anchor")
        if self.defect is None:
            return np.asarray(self.anchor) - self.evaluate(z, w)
        zs, ws = self._split(z, w)
        out = self._stack(self.defect(zs, ws))
        return np.broadcast_to(out, np.shape(z)[:-1] + (self.codomain,))

    def derivative(self, z, v, w=None):
        """Derivative along ``v`` at ``z``, shape ``(..., codomain)``."""
        zs, ws = self._split(z, w)
        v = np.broadcast_to(np.asarray(v, dtype=complex), np.shape(z))
        zd = [ComplexDual(zs[j], v[..., j]) for j in range(self.arity)]
        wd = [ComplexDual(ws[j], -v[..., j]) for j in range(self.arity)]
        outs = self.func(zd, wd)
        d = np.stack([np.asarray(dual.deriv(o)) for o in outs], axis=-1)
        return np.broadcast_to(d, np.shape(z)[:-1] + (self.codomain,))

    def component(self, i):
        """The scalar map ``f_i``."""
        anchor = None if self.anchor is None else (self.anchor[i],)
        defect = None
        if self.defect is not None:
            defect = lambda z, w: [self.defect(z, w)[i]]  # noqa: E731
        return HoloMap(
            label=f"{self.label}[{i + 1}]",
            arity=self.arity,
            codomain=1,
            func=lambda z, w: [self.func(z, w)[i]],
            defect=defect,
            anchor=anchor,
            meta=self.meta.get("components", {}).get(i, {}),
            params=self.params,
        )


def directional_derivative(f, z, v, w=None):
    """``df_z(v)``; scalar maps return an array without the codomain axis."""
    d = f.derivative(z, v, w)
    return d[..., 0] if f.codomain == 1 else d


def partial_derivatives(f, z, w=None):
    """All ``df/dz_j``, shape ``(..., codomain, arity)``."""
    cols = []
    for j in range(f.arity):
        e = np.zeros(f.arity, dtype=complex)
        e[j] = 1.0
        cols.append(f.derivative(z, e, w))
    return np.stack(cols, axis=-1)


# -- building blocks --------------------------------------------------------


def _zero_like(a):
    return 0.0 * dual.value(a) if not isinstance(a, ComplexDual) else a * 0.0


def coordinate(j, n=2):
    """``z_j`` (``j`` is 1-based); 1-Julia wherever ``x_j = 1``."""
    if not 1 <= j <= n:
        raise ValueError(f"coordinate index {j} outside 1..{n}")
    i = j - 1
    return HoloMap(
        label=f"coordinate-{j}",
        arity=n,
        codomain=1,
        func=lambda z, w: [z[i]],
        defect=lambda z, w: [w[i]],
        anchor=(1.0,),
        meta={"alpha": 1.0, "tau": 1.0, "herglotz": {_unit(n, i): 1.0}},
        params={"j": j, "n": n},
    )


def _unit(n, i):
    return tuple(int(k == i) for k in range(n))


def one_minus_power(j, c, n=2):
    """``(1 - z_j)^c`` with the principal branch."""
    i = j - 1
    return HoloMap(
        label=f"one-minus-power-{j}",
        arity=n,
        codomain=1,
        func=lambda z, w: [dual.power(w[i], c)],
        params={"j": j, "c": c, "n": n},
    )


def _check_sector(name, a):
    a = dual.value(a)
    if not np.all(np.real(a) > np.abs(np.imag(a))):
        raise SectorViolationError(f"{name} leaves the sector Re > |Im|")


def lemma18_quotient(a1, a2, label=None, meta=None, params=None):
    """``(a1 - a2)/(a1 + a2)`` for scalar maps valued in ``Re > |Im|``.

    Every evaluation checks the sector condition and ``|f| < 1`` and
    raises ``SectorViolationError`` otherwise. The anchor is 1 with
    defect ``2 a2/(a1 + a2)``.
    """
    if a1.arity != a2.arity or a1.codomain != 1 or a2.codomain != 1:
        raise ValueError("quotient needs two scalar maps on the same polydisk")

    def parts(z, w):
        u = a1.func(z, w)[0]
        v = a2.func(z, w)[0]
        _check_sector("first map", u)
        _check_sector("second map", v)
        return u, v

    def func(z, w):
        u, v = parts(z, w)
        f = (u - v) / (u + v)
        if not np.all(np.abs(dual.value(f)) < 1.0):
            raise SectorViolationError("quotient left the unit disk")
        return [f]

    def defect(z, w):
        u, v = parts(z, w)
        return [2.0 * v / (u + v)]

    return HoloMap(
        label=label or f"quotient({a1.label},{a2.label})",
        arity=a1.arity,
        codomain=1,
        func=func,
        defect=defect,
        anchor=(1.0,),
        meta=meta or {},
        params=params or {},
    )


def remark_2_1():
    """Quotient of square roots of ``1 - z_1`` and ``1 - z_2``.

    Restricted K-limit 0 at (1, 1) but no K-limit there.
    """
    return lemma18_quotient(
        one_minus_power(1, 0.5),
        one_minus_power(2, 0.5),
        label="remark-2.1",
        meta={"restricted_K_limit": 0.0, "K_limit": None, "point": (1, 1)},
    )


def remark_2_3(a=0.5):
    """Quotient of ``(1 - z_1)^(a/2)`` and ``(1 - z_2)^(1/2)``, ``0 < a < 1``.

    The exponent is called ``a`` to keep it apart from Julia coefficients.
    K-limit 1 at (1, 1), no restricted E-limit.
    """
    if not 0 < a < 1:
        raise ValueError("exponent a must lie in (0, 1)")
    return lemma18_quotient(
        one_minus_power(1, a / 2),
        one_minus_power(2, 0.5),
        label="remark-2.3",
        meta={"K_limit": 1.0, "restricted_E_limit": None, "point": (1, 1)},
        params={"a": a},
    )


def remark_4_2(a=0.8, b=0.4):
    """``1 + (a+b)/2 (z_1 - 1) + (a-b)/2 (z_2 - 1)`` with ``0 < b < a < 1``.

    ``a``-Julia at (1, 1); partial derivatives ``(a +- b)/2`` differ from
    the Julia coefficient while the derivative along ``x`` equals it.
    """
    if not 0 < b < a < 1:
        raise ValueError("need 0 < b < a < 1")
    c1, c2 = 0.5 * (a + b), 0.5 * (a - b)
    return HoloMap(
        label="remark-4.2",
        arity=2,
        codomain=1,
        func=lambda z, w: [1.0 - c1 * w[0] - c2 * w[1]],
        defect=lambda z, w: [c1 * w[0] + c2 * w[1]],
        anchor=(1.0,),
        meta={"alpha": a, "tau": 1.0, "partials": (c1, c2), "point": (1, 1)},
        params={"a": a, "b": b},
    )


def section_5_g():
    """``exp(-pi/2 - i log(1 - zeta))``: constant modulus on (0, 1), no radial limit."""
    return HoloMap(
        label="section-5-g",
        arity=1,
        codomain=1,
        func=lambda z, w: [dual.exp(-np.pi / 2 - 1j * dual.log(w[0]))],
        meta={"radial_limit": None, "point": (1,)},
    )


def section_5_pair():
    """``(z_1, g(z_2)/2)``: first component Julia at (1, 1), second without limit."""
    g = section_5_g().func

    def func(z, w):
        return [z[0], 0.5 * g([z[1]], [w[1]])[0]]

    return HoloMap(
        label="section-5-pair",
        arity=2,
        codomain=2,
        func=func,
        meta={
            "point": (1, 1),
            "components": {
                0: {"alpha": 1.0, "tau": 1.0},
                1: {"radial_limit": None},
            },
        },
    )


def monomial(p=1, q=1):
    """``z_1^p z_2^q`` for coprime ``p, q >= 0``: Julia coefficient ``p + q``
    at (1, 1) with a single Herglotz mass at ``(p, q)``."""
    from math import gcd

    p, q = int(p), int(q)
    if p < 0 or q < 0 or p + q == 0 or gcd(p, q) != 1:
        raise ValueError("need coprime non-negative exponents, not both zero")

    def func(z, w):
        out = 1.0
        for zj, e in ((z[0], p), (z[1], q)):
            for _ in range(e):
                out = zj * out
        return [out]

    def defect(z, w):
        # 1 - (1 - w1)^p (1 - w2)^q expanded without cancellation
        out = 0.0
        acc = 1.0
        for zj, wj, e in ((z[0], w[0], p), (z[1], w[1], q)):
            for _ in range(e):
                out = out + acc * wj
                acc = acc * zj
        return [out]

    return HoloMap(
        label="monomial",
        arity=2,
        codomain=1,
        func=func,
        defect=defect,
        anchor=(1.0,),
        meta={"alpha": float(p + q), "tau": 1.0, "herglotz": {(p, q): 1.0},
              "point": (1, 1)},
        params={"p": p, "q": q},
    )


def herglotz_pair(b1=0.5, b2=0.25):
    """``(H - 1)/(H + 1)`` with ``H = sum_j b_j (1 + z_j)/(1 - z_j)``.

    Julia coefficient ``1/(b1 + b2)`` at (1, 1) and Herglotz masses
    ``b1, b2`` at the unit multi-indices.
    """
    if not (b1 > 0 and b2 > 0):
        raise ValueError("masses must be positive")

    def H(w):
        return b1 * (2.0 - w[0]) / w[0] + b2 * (2.0 - w[1]) / w[1]

    alpha = 1.0 / (b1 + b2)
    return HoloMap(
        label="herglotz-pair",
        arity=2,
        codomain=1,
        func=lambda z, w: [1.0 - 2.0 / (H(w) + 1.0)],
        defect=lambda z, w: [2.0 / (H(w) + 1.0)],
        anchor=(1.0,),
        meta={"alpha": alpha, "tau": 1.0, "herglotz": {(1, 0): b1, (0, 1): b2},
              "point": (1, 1)},
        params={"b1": b1, "b2": b2},
    )


def constant(c=0.5, n=2):
    c = complex(c)
    if not abs(c) < 1:
        raise ValueError("constant must lie in the unit disk")
    return HoloMap(
        label="constant",
        arity=n,
        codomain=1,
        func=lambda z, w: [c + _zero_like(z[0])],
        meta={"alpha": np.inf, "value": c},
        params={"c": c, "n": n},
    )


_GALLERY = {
    "coordinate-1": (lambda n=2: coordinate(1, int(n)), {"n": "dimension, >= 1"}),
    "coordinate-2": (lambda n=2: coordinate(2, int(n)), {"n": "dimension, >= 2"}),
    "coordinate-3": (lambda n=3: coordinate(3, int(n)), {"n": "dimension, >= 3"}),
    "remark-2.1": (remark_2_1, {}),
    "remark-2.3": (remark_2_3, {"a": "exponent in (0, 1)"}),
    "remark-4.2": (remark_4_2, {"a": "Julia coefficient", "b": "0 < b < a < 1"}),
    "section-5-g": (section_5_g, {}),
    "section-5-pair": (section_5_pair, {}),
    "monomial": (monomial, {"p": "exponent", "q": "exponent, coprime to p"}),
    "herglotz-pair": (herglotz_pair, {"b1": "mass > 0", "b2": "mass > 0"}),
    "constant": (constant, {"c": "value in the disk", "n": "dimension"}),
}


def gallery_names():
    return sorted(_GALLERY)


def gallery_schema(name):
    return dict(_GALLERY[name][1])


def gallery(name, **params):
    """Build a gallery map by name; unknown parameters raise ``TypeError``."""
    try:
        factory, schema = _GALLERY[name]
    except KeyError:
        raise UnknownNameError(f"unknown function {name!r}") from None
    extra = set(params) - set(schema)
    if extra:
        raise TypeError(f"{name} does not take parameters {sorted(extra)}")
    return factory(**params)
