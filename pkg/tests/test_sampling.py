import numpy as np
import pytest

from polydisk import regions as RG
from polydisk.boundary import decompose
from polydisk.hyperbolic import kobayashi_distance
from polydisk.sampling import (
    sample_disk,
    sample_horosphere,
    sample_kobayashi_ball,
    sample_koranyi,
    sample_polydisk,
)

POINTS = [[1, 1], [1, 0.3], [1j, -0.5, -1]]


@pytest.mark.parametrize("xc", POINTS)
def test_horosphere_samples_inside(xc):
    x = decompose(xc)
    z, d = sample_horosphere(x, 0.7, 400, seed=1)
    assert z.shape == (400, x.n)
    assert np.allclose(x.coords - z, d, atol=1e-15)
    assert np.all(RG.horosphere_value(x, z, d) < 0.7)
    # some of them are very close to the vertex
    assert np.min(np.abs(d[:, list(x.silov_indices)])) < 1e-8


@pytest.mark.parametrize("xc", POINTS)
@pytest.mark.parametrize("internal", ["disk", "shell"])
def test_koranyi_samples_inside(xc, internal):
    x = decompose(xc)
    z, d = sample_koranyi(x, 2.5, 400, seed=3, internal=internal)
    assert np.all(RG.koranyi_value(x, z, d) < 2.5**2)
    oms = RG.coordinate_one_minus_sq(x, z, d)
    assert np.all(oms > 0)


def test_koranyi_rejects_small_amplitude():
    with pytest.raises(ValueError):
        sample_koranyi([1, 1], 1.0, 10)


def test_samplers_deterministic():
    a = sample_koranyi([1, 0.3], 3.0, 50, seed=11)
    b = sample_koranyi([1, 0.3], 3.0, 50, seed=11)
    assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])
    assert not np.array_equal(a[0], sample_koranyi([1, 0.3], 3.0, 50, seed=12)[0])
    assert np.array_equal(sample_disk(20, 5), sample_disk(20, 5))


def test_kobayashi_ball_radius():
    x = decompose([1, 0.4j])
    eps, rad = 0.01, 0.8
    z, d = sample_kobayashi_ball(x, eps, rad, 300, seed=2)
    dist = kobayashi_distance(z, (1 - eps) * x.coords)
    assert np.all(dist < rad + 1e-12)
    assert np.allclose(x.coords - z, d, atol=1e-15)


def test_polydisk_samples():
    z = sample_polydisk(500, 3, seed=0, rmax=0.5)
    assert z.shape == (500, 3)
    assert np.max(np.abs(z)) <= 0.5
    assert np.max(np.abs(sample_disk(500))) < 1
