import numpy as np
import pytest
from hypothesis import given, strategies as st

from polydisk import regions as RG
from polydisk.boundary import decompose
from polydisk.hyperbolic import kobayashi_distance

from conftest import polydisk_points, unimodular

# radial limits computed at eps = 1e-30 with 50-digit mpmath
LIMSUP_BIDISK = -0.24780810255123092464   # x = (1, i), z = (0.3+0.2i, 0.5i)
LIMSUP_TRIDISK = 0.4565555394783876599    # x = (-1, 0.4, i), z = (0.1-0.6i, 0.9, 0.2+0.7i)


def test_boundary_limsup_oracle():
    assert RG.boundary_limsup([1, 1j], [0.3 + 0.2j, 0.5j]) == pytest.approx(
        LIMSUP_BIDISK, abs=1e-14)
    z = [0.1 - 0.6j, 0.9, 0.2 + 0.7j]
    assert RG.boundary_limsup([-1, 0.4, 1j], z) == pytest.approx(LIMSUP_TRIDISK, abs=1e-14)


def test_radial_term_converges_to_closed_form():
    x = decompose([1, 1j])
    z = np.array([0.3 + 0.2j, 0.5j])
    eps = 2.0 ** -np.arange(10, 51)
    seq = RG.radial_limsup_term(x, z, eps)
    assert abs(seq[-1] - LIMSUP_BIDISK) < 1e-12
    # at moderate eps it agrees with the plain distance formula
    e = 0.01
    plain = kobayashi_distance(z, (1 - e) * x.coords) - np.arctanh(1 - e)
    assert RG.radial_limsup_term(x, z, [e])[0] == pytest.approx(plain, abs=1e-13)


@given(st.floats(-np.pi, np.pi), st.floats(0.05, 20.0), st.floats(-np.pi, np.pi))
def test_horocycle_is_tangent_disk(theta, R, t):
    tau = np.exp(1j * theta)
    center, radius = RG.Horocycle(tau, R).euclidean_circle()
    assert radius == pytest.approx(R / (1 + R))
    assert center == pytest.approx(tau / (1 + R))
    # tau - zeta for zeta = center + radius e^{it}, without cancellation
    delta = 2j * radius * np.sin((theta - t) / 2) * np.exp(0.5j * (theta + t))
    # rounding delta perturbs the exact value by ~1e-16 / |delta| relative
    if abs(delta) < 1e-3:
        return
    zeta = tau - delta
    assert RG.horocycle_value(tau, zeta, delta) == pytest.approx(R, rel=1e-12, abs=1e-12)


def test_stolz_at_least_one():
    zeta = np.linspace(-0.99, 0.99, 101) * np.exp(0.3j)
    assert np.all(RG.stolz_value(1.0, zeta) >= 1 - 1e-15)
    # on the radius the Stolz value is exactly 1
    assert np.allclose(RG.stolz_value(1.0, np.linspace(0, 0.999, 50)), 1.0)


def test_classify_boundary_flag():
    inside, edge = RG.classify(np.array([0.5, 1.0, 1.0 + 1e-13, 1.5]), 1.0)
    assert inside.tolist() == [True, False, False, False]
    assert edge.tolist() == [False, True, True, False]


def test_region_validation():
    with pytest.raises(ValueError):
        RG.Horocycle(1.0, -1.0)
    with pytest.raises(ValueError):
        RG.StolzRegion(1.0, 1.0)
    with pytest.raises(ValueError):
        RG.Horocycle(0.9, 1.0)
    with pytest.raises(ValueError):
        RG.KoranyiRegion([1, 1], 0.5)


def test_membership_examples():
    x = [1, 1]
    E = RG.Horosphere(x, 1.0)
    H = RG.KoranyiRegion(x, 2.0)
    assert E.contains([0.5, 0.5]) and H.contains([0.5, 0.5])
    assert not E.contains([0.5, -0.5])
    assert RG.horosphere_contains(E, [0.9, 0.9])
    assert RG.koranyi_contains(H, [0.9, 0.9])
    assert not RG.koranyi_contains(H, [0.9, 0.0])


@given(st.lists(unimodular(), min_size=1, max_size=3), polydisk_points(3, 0.999))
def test_koranyi_dominates_horosphere(silov, zall):
    x = decompose(silov)
    z = zall[: x.n]
    h = RG.horosphere_value(x, z)
    k = RG.koranyi_value(x, z)
    assert k >= h * (1 - 1e-12)
    assert h > 0


@given(st.lists(unimodular(), min_size=2, max_size=3), polydisk_points(3, 0.999),
       st.floats(0.1, 10), st.floats(1.01, 10))
def test_regions_nested_in_parameter(silov, zall, R, M):
    x = decompose(silov)
    z = zall[: x.n]
    if RG.Horosphere(x, R).contains(z):
        assert RG.Horosphere(x, 2 * R).contains(z)
    if RG.KoranyiRegion(x, M).contains(z):
        assert RG.KoranyiRegion(x, 2 * M).contains(z)


@given(st.lists(unimodular(), min_size=2, max_size=2), st.floats(0.01, 0.99),
       st.floats(0.0, 2 * np.pi))
def test_geodesic_trace(silov, r, t):
    x = decompose(silov)
    zeta = 1 - r * np.exp(1j * t) * np.cos(t) if abs(np.cos(t)) > 0.01 else 0.5
    zeta = complex(zeta)
    if abs(zeta) >= 1:
        return
    z = zeta * x.coords
    d = (1 - zeta) * x.coords
    # the horosphere value of phi_x(zeta) is the horocycle value of zeta
    assert RG.horosphere_value(x, z, d) == pytest.approx(RG.horocycle_value(1.0, zeta), rel=1e-12)
    assert RG.koranyi_value(x, z, d) == pytest.approx(RG.stolz_value(1.0, zeta) ** 2, rel=1e-12)


def test_sandwich_small():
    r = RG.check_sandwich([1, 0.3], 3.0, n=700, seed=4)
    assert r["violations"] == 0
    assert r["internal_witnesses"]["max_internal_modulus"] > 0.99


def test_bidisk_ratio_bounds_small():
    r = RG.bidisk_ratio_bounds(3.0, n=1000)
    assert r["violations"] == 0
    lo, hi = r["bounds"]
    assert lo <= r["range_abs_ratio"][0] and r["range_abs_ratio"][1] <= hi
