import numpy as np
import pytest
from hypothesis import given, strategies as st

from polydisk.boundary import (
    decompose,
    geodesic,
    has_no_silov_components,
    left_inverse,
    one_minus_left_inverse,
    retraction,
)
from polydisk.hyperbolic import DimensionError

from conftest import disk_points, polydisk_points, unimodular


def test_decompose_classifies_coordinates():
    x = decompose([1, 0.3, -1j])
    assert x.silov_indices == (0, 2)
    assert x.degree == 2
    assert x.internal_indices == (1,)
    assert np.allclose(x.silov_part, [1, 0, -1j])
    assert np.allclose(x.internal_part, [0, 0.3, 0])


def test_decompose_normalizes_within_tolerance():
    x = decompose([1 - 1e-11, 0.5])
    assert x.coords[0] == 1.0
    assert x.adjustments[0] == pytest.approx(1e-11, rel=1e-3)
    # outside tolerance the coordinate is internal and the point is rejected
    with pytest.raises(ValueError):
        decompose([1 - 1e-6, 0.5])
    with pytest.raises(ValueError):
        decompose([0.5, 0.5])
    assert decompose([1 - 1e-6, 0.5], tol=1e-5).degree == 1


def test_decompose_rejects_bad_shapes():
    with pytest.raises(DimensionError):
        decompose(np.ones((2, 2)))


def test_left_inverse_and_geodesic():
    x = decompose([1j, -1, 0.4])
    zeta = 0.3 - 0.2j
    z = geodesic(x, zeta)
    assert left_inverse(x, z) == pytest.approx(zeta)
    with pytest.raises(ValueError):
        geodesic(x, 1.0)


def test_one_minus_left_inverse_no_cancellation():
    x = decompose([1, 1])
    d = np.array([1e-17, 3e-17])
    assert one_minus_left_inverse(x, d) == pytest.approx(2e-17, rel=1e-14)


def test_has_no_silov_components():
    x = decompose([1, 0.2])
    assert has_no_silov_components(x, [0, 1])
    assert not has_no_silov_components(x, [1e-3, 1])


@given(st.lists(unimodular(), min_size=1, max_size=3),
       st.lists(disk_points(0.9), min_size=0, max_size=2), polydisk_points(5, 0.99),
       st.permutations(range(5)))
def test_retraction_idempotent(silov, internal, zall, perm):
    coords = np.array(silov + internal, dtype=complex)
    perm = [p for p in perm if p < len(coords)]
    x = decompose(coords[perm])
    z = zall[: x.n]
    r = retraction(x, z)
    assert np.allclose(retraction(x, r), r, atol=1e-14)
    # the retraction stays in the polydisk and lands on the geodesic
    assert np.max(np.abs(r)) < 1
    assert np.allclose(r, geodesic(x, left_inverse(x, z)))


@given(st.lists(unimodular(), min_size=2, max_size=3), polydisk_points(3, 0.99))
def test_one_minus_consistent(silov, zall):
    x = decompose(silov)
    z = zall[: x.n]
    assert one_minus_left_inverse(x, x.coords - z) == pytest.approx(
        1 - left_inverse(x, z), abs=1e-14)
