import numpy as np
import pytest
from hypothesis import given, strategies as st

from polydisk.hyperbolic import (
    DimensionError,
    as_point,
    distance_from_origin,
    kobayashi_ball_point,
    kobayashi_distance,
    kobayashi_metric,
    mobius,
    one_minus_abs_sq,
    poincare_distance,
    poincare_distance_stable,
    polydisk_automorphism,
    pseudo_hyperbolic,
    sup_norm,
)

from conftest import disk_points, polydisk_points, unimodular

# oracle values computed with 50-digit mpmath from atanh of the pseudo-hyperbolic distance
K_BIDISK = 0.93340297318529063834
K_TRIDISK = 2.0345133771189049608


def test_known_distances():
    assert poincare_distance(0, 0.5) == pytest.approx(0.5 * np.log(3), abs=1e-15)
    z, w = np.array([0.5, 0.25j]), np.array([-0.3 + 0.1j, 0.7])
    assert kobayashi_distance(z, w) == pytest.approx(K_BIDISK, abs=1e-14)
    z = np.array([0.9j, -0.2, 0.3 + 0.3j])
    w = np.array([0.1, 0.95, -0.5j])
    assert kobayashi_distance(z, w) == pytest.approx(K_TRIDISK, abs=1e-13)


def test_metric_value():
    # max |v_j| / (1 - |z_j|^2)
    assert kobayashi_metric([0.5, 0.25j], [1, 2j]) == pytest.approx(32 / 15, rel=1e-14)


def test_distance_from_origin_matches():
    z = np.array([0.3, -0.8j, 0.1 + 0.1j])
    assert distance_from_origin(z) == pytest.approx(kobayashi_distance(np.zeros(3), z))


def test_stable_formula_with_one_minus():
    a, b = 0.999999 + 0j, -0.5j
    oma = one_minus_abs_sq(np.array([a]))[0]
    assert poincare_distance_stable(a, b, oma) == pytest.approx(poincare_distance(a, b))


def test_one_minus_abs_sq_from_delta():
    x = np.array([1.0, 1j])
    d = np.array([1e-12, 2e-12j])
    exact = 2 * np.real(np.conj(x) * d) - np.abs(d) ** 2
    assert np.allclose(one_minus_abs_sq(x - d, d, x), exact, rtol=1e-12, atol=0)


def test_validation():
    with pytest.raises(ValueError):
        as_point([0.5, 1.0])
    with pytest.raises(DimensionError):
        kobayashi_distance([0.1, 0.2], [0.1, 0.2, 0.3])


@given(disk_points(0.99), disk_points(0.99))
def test_pseudo_hyperbolic_range(a, b):
    p = pseudo_hyperbolic(a, b)
    assert 0 <= p < 1
    assert abs(mobius(a, a)) == 0


@given(polydisk_points(3), polydisk_points(3))
def test_symmetry_and_identity(z, w):
    assert kobayashi_distance(z, w) == pytest.approx(kobayashi_distance(w, z), abs=1e-13)
    assert kobayashi_distance(z, z) == 0.0


@given(polydisk_points(2), polydisk_points(2), polydisk_points(2))
def test_triangle(a, b, c):
    assert kobayashi_distance(a, b) <= (
        kobayashi_distance(a, c) + kobayashi_distance(c, b) + 1e-12)


@given(polydisk_points(2), polydisk_points(2), polydisk_points(2, 0.9))
def test_automorphism_invariance(z, w, a):
    d = kobayashi_distance(z, w)
    assert kobayashi_distance(polydisk_automorphism(a, z),
                              polydisk_automorphism(a, w)) == pytest.approx(d, abs=1e-11)


@given(polydisk_points(3), polydisk_points(3), st.lists(unimodular(), min_size=3, max_size=3),
       st.permutations(range(3)))
def test_rotation_and_permutation_invariance(z, w, rot, perm):
    rot = np.array(rot)
    d = kobayashi_distance(z, w)
    assert kobayashi_distance(rot * z, rot * w) == pytest.approx(d, abs=1e-12)
    assert kobayashi_distance(z[list(perm)], w[list(perm)]) == pytest.approx(d, abs=1e-15)


@given(polydisk_points(2, 0.9), polydisk_points(2, 0.9))
def test_distance_dominates_coordinates(z, w):
    assert np.all(poincare_distance(z, w) <= kobayashi_distance(z, w) + 1e-15)


@given(polydisk_points(2, 0.9), st.lists(disk_points(1.0), min_size=2, max_size=2))
def test_metric_is_infinitesimal_distance(z, v):
    v = np.array(v)
    if sup_norm(v) < 1e-3:
        return
    t = 1e-7
    fd = kobayashi_distance(z, z + t * v) / t
    assert fd == pytest.approx(kobayashi_metric(z, v), rel=1e-5)


@given(polydisk_points(2, 0.9), st.floats(0.01, 3.0),
       st.lists(disk_points(1.0), min_size=2, max_size=2))
def test_ball_point_distance(center, r, u):
    u = np.array(u)
    if sup_norm(u) < 1e-6:
        return
    u = u / sup_norm(u) * np.tanh(r)
    p = kobayashi_ball_point(center, u)
    assert kobayashi_distance(center, p) == pytest.approx(r, rel=1e-9)
