"""Complex dual numbers ``a + b d`` with ``d**2 = 0`` for exact first derivatives.

Values and derivative parts are numpy arrays, so a single evaluation
differentiates a whole batch of points along one direction.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class ComplexDual:
    value: np.ndarray
    deriv: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "value", np.asarray(self.value, dtype=complex))
        object.__setattr__(self, "deriv", np.asarray(self.deriv, dtype=complex))

    @staticmethod
    def lift(a):
        if isinstance(a, ComplexDual):
            return a
        a = np.asarray(a, dtype=complex)
        return ComplexDual(a, np.zeros_like(a))

    def __add__(self, other):
        o = ComplexDual.lift(other)
        return ComplexDual(self.value + o.value, self.deriv + o.deriv)

    __radd__ = __add__

    def __neg__(self):
        return ComplexDual(-self.value, -self.deriv)

    def __sub__(self, other):
        o = ComplexDual.lift(other)
        return ComplexDual(self.value - o.value, self.deriv - o.deriv)

    def __rsub__(self, other):
        return ComplexDual.lift(other) - self

    def __mul__(self, other):
        o = ComplexDual.lift(other)
        return ComplexDual(
            self.value * o.value, self.value * o.deriv + self.deriv * o.value
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = ComplexDual.lift(other)
        q = self.value / o.value
        return ComplexDual(q, (self.deriv - q * o.deriv) / o.value)

    def __rtruediv__(self, other):
        return ComplexDual.lift(other) / self

    def __pow__(self, c):
        if isinstance(c, ComplexDual):
            raise TypeError("only constant exponents are supported")
        return power(self, c)

    def __repr__(self):
        return f"ComplexDual({self.value!r}, {self.deriv!r})"


# the helpers below accept plain arrays or duals


def exp(a):
    if isinstance(a, ComplexDual):
        e = np.exp(a.value)
        return ComplexDual(e, e * a.deriv)
    return np.exp(a)


def log(a):
    """Principal logarithm."""
    if isinstance(a, ComplexDual):
        return ComplexDual(np.log(a.value), a.deriv / a.value)
    return np.log(np.asarray(a, dtype=complex))


def sqrt(a):
    """Principal square root."""
    if isinstance(a, ComplexDual):
        r = np.sqrt(a.value)
        return ComplexDual(r, a.deriv / (2.0 * r))
    return np.sqrt(np.asarray(a, dtype=complex))


def power(a, c):
    """Principal power ``a**c`` for a constant exponent ``c``."""
    if isinstance(a, ComplexDual):
        p = np.power(a.value, c)
        return ComplexDual(p, c * p / a.value * a.deriv)
    return np.power(np.asarray(a, dtype=complex), c)


def value(a):
    return a.value if isinstance(a, ComplexDual) else np.asarray(a)


def deriv(a):
    if isinstance(a, ComplexDual):
        return a.deriv
    return np.zeros_like(np.asarray(a, dtype=complex))
