import numpy as np
import pytest
from hypothesis import given, strategies as st

from polydisk import dual
from polydisk.dual import ComplexDual

from conftest import disk_points

duals = st.builds(lambda a, b: ComplexDual(a, b), disk_points(2.0), disk_points(2.0))


def close(p, q, tol=1e-12):
    return (abs(complex(p.value) - complex(q.value)) <= tol
            and abs(complex(p.deriv) - complex(q.deriv)) <= tol)


@given(duals, duals, duals)
def test_ring_axioms(a, b, c):
    assert close(a + b, b + a)
    assert close(a * b, b * a)
    assert close((a + b) + c, a + (b + c))
    assert close((a * b) * c, a * (b * c))
    assert close(a * (b + c), a * b + a * c)
    assert close(a - a, ComplexDual(0, 0))


@given(duals, duals)
def test_division_inverts_multiplication(a, b):
    if abs(complex(b.value)) < 0.1:
        return
    assert close((a / b) * b, a, 1e-10)
    assert close(1 / (1 / b), b, 1e-10)


def test_epsilon_squares_to_zero():
    e = ComplexDual(0, 1)
    assert close(e * e, ComplexDual(0, 0))


@pytest.mark.parametrize("fn, df", [
    (dual.exp, np.exp),
    (dual.log, lambda a: 1 / a),
    (dual.sqrt, lambda a: 0.5 / np.sqrt(a)),
    (lambda a: dual.power(a, 0.3), lambda a: 0.3 * a ** -0.7),
    (lambda a: a ** 3, lambda a: 3 * a ** 2),
])
def test_elementary_derivatives(fn, df):
    a = np.array([0.4 + 0.3j, 2 - 1j, -0.5 + 0.1j])
    out = fn(ComplexDual(a, np.ones_like(a)))
    assert np.allclose(out.deriv, df(a), rtol=1e-13)
    assert np.allclose(out.value, fn(a), rtol=1e-15)


def test_chain_rule_matches_composite():
    a = np.array([0.2 + 0.1j])
    v = 0.7 - 0.2j
    out = dual.exp(-1j * dual.log(1 - ComplexDual(a, v)))
    exact = np.exp(-1j * np.log(1 - a)) * (1j / (1 - a)) * v
    assert np.allclose(out.deriv, exact, rtol=1e-14)


def test_plain_inputs_pass_through():
    assert dual.deriv(3.0) == 0
    assert dual.value(ComplexDual(2, 5)) == 2
    with pytest.raises(TypeError):
        ComplexDual(1, 1) ** ComplexDual(1, 1)
