import numpy as np
import pytest

from polydisk import curves as C
from polydisk import limits as L
from polydisk.boundary import decompose
from polydisk.functions import gallery

K = np.arange(1, 41)


def test_estimate_limit_converges():
    est = L.estimate_limit(0.25 + 2.0**-K)
    assert est.converged and est.value == pytest.approx(0.25, abs=1e-9)


def test_estimate_limit_accelerates_slow_sequences():
    # 1/k converges too slowly for the raw window but Aitken handles it
    v = 1.0 + 1.0 / (K + 3.0) ** 1
    est = L.estimate_limit(1.0 + 0.9**K, tol=1e-6)
    assert est.converged and est.accelerated is not None
    assert est.value == pytest.approx(1.0, abs=1e-6)
    assert not L.estimate_limit(v, tol=1e-6).verdict == "diverged_to_infinity"


def test_estimate_limit_no_limit_and_divergence():
    assert L.estimate_limit(1 + 0.5 * (-1.0) ** K).verdict == "no_limit"
    assert L.estimate_limit(np.exp(1j * np.log(2.0**K))).verdict == "no_limit"
    assert L.estimate_limit(2.0**K).verdict == "diverged_to_infinity"
    assert L.estimate_limit([1.0, 2.0]).verdict == "undecided"
    assert L.estimate_limit(np.append(np.ones(10), np.inf)).verdict == "diverged_to_infinity"


def test_aitken_exact_on_geometric():
    v = 3.0 + 0.5**K[:10]
    acc = L.aitken(v, passes=1)
    assert np.allclose(acc, 3.0, atol=1e-12)


def test_lower_envelope():
    r = np.array([3.0, 1.0, 2.0, 1.5, 4.0])
    assert L.lower_envelope(r).tolist() == [1.0, 1.0, 1.5, 1.5, 4.0]


def test_julia_coordinate_and_affine():
    rep = L.julia_coefficient(gallery("coordinate-1"), decompose([1, 0.3]))
    assert rep.julia and rep.alpha == pytest.approx(1.0, abs=1e-12)
    assert rep.tau == 1
    rep = L.julia_coefficient(gallery("remark-4.2", a=0.8, b=0.4), decompose([1, 1]))
    assert rep.alpha == pytest.approx(0.8, abs=1e-12)
    assert rep.diagnostics["gap_limit"] == pytest.approx(0.5 * np.log(0.8), abs=1e-10)


def test_julia_monomial_and_herglotz():
    assert L.julia_coefficient(gallery("monomial", p=2, q=3), decompose([1, 1])).alpha == \
        pytest.approx(5.0, abs=1e-9)
    assert L.julia_coefficient(gallery("herglotz-pair"), decompose([1, 1])).alpha == \
        pytest.approx(4 / 3, abs=1e-9)


def test_julia_infinite_for_constant():
    rep = L.julia_coefficient(gallery("constant", c=0.5), decompose([1, 1]))
    assert not rep.julia and rep.alpha == np.inf
    with pytest.raises(L.PreconditionError):
        L.julia_inclusion_check(gallery("constant"), decompose([1, 1]), rep)


def test_julia_rejects_vector_maps():
    with pytest.raises(ValueError):
        L.julia_coefficient(gallery("section-5-pair"), decompose([1, 1]))


def test_julia_rotated_point():
    # z_1 is Julia at any point with x_1 unimodular, with tau = x_1
    x = decompose([1j, 0.5])
    rep = L.julia_coefficient(gallery("coordinate-1"), x)
    assert rep.alpha == pytest.approx(1.0, abs=1e-9)
    assert rep.tau == pytest.approx(1j, abs=1e-9)


def test_jwc_herglotz_identities():
    r = L.jwc_suite(gallery("herglotz-pair"), decompose([1, 1]))
    assert not r.findings
    assert r.extra["herglotz_inverse_alpha"]["residual"] < 1e-12
    assert r.extra["herglotz_derivatives"]["residual"] < 1e-6
    assert r.b == pytest.approx({0: 8 / 9, 1: 4 / 9}, abs=1e-6)


def test_jwc_monomial():
    r = L.jwc_suite(gallery("monomial", p=2, q=3), decompose([1, 1]))
    assert not r.findings
    assert r.b == pytest.approx({0: 2.0, 1: 3.0}, abs=1e-6)


def test_restricted_limits_of_counterexamples():
    x = decompose([1, 1])
    assert L.restricted_K_limit(gallery("remark-2.1"), x).value == pytest.approx(0, abs=1e-9)
    assert L.restricted_E_limit(gallery("remark-4.2"), x).value == pytest.approx(1, abs=1e-9)
    assert L.restricted_E_limit(gallery("remark-2.3", a=0.5), x).verdict == "no_limit"
    assert L.K_limit(gallery("coordinate-1"), x).value == pytest.approx(1, abs=1e-4)


def test_k_boundedness_reports():
    r = L.K_boundedness(gallery("remark-2.1"), decompose([1, 1]), 3.0, n=500)
    assert r["finite"] and r["sup"] <= 1.0


def test_lindelof_preconditions():
    f = gallery("remark-2.1")
    x = decompose([1, 1])
    out = L.lindelof_check(f, x, C.radial(x))
    assert out["findings"] == []
    with pytest.raises(L.PreconditionError, match="not special"):
        L.lindelof_check(f, x, C.remark_2_1_sigma(0.75))
    with pytest.raises(L.PreconditionError, match="not restricted"):
        L.lindelof_check(f, x, C.tangential_zeta(), k_bounded_amplitudes=[2.0])
    out = L.lindelof_check(f, x, C.radial(x), k_bounded_amplitudes=[1.5, 3.0])
    assert out["mode"] == "k-bounded" and out["findings"] == []


def test_lemma_bounds_small():
    f = gallery("remark-4.2", a=0.8, b=0.4)
    r = L.lemma_bound_checks(f, decompose([1, 1]), 3.0, n=1000)
    assert r["violations"] == 0
    assert r["ratio_bound"]["sup"] <= 2 * 0.8 * 9


def test_geodesic_disk_samples_shape():
    z, d = L.geodesic_disk_samples(decompose([1, 0.5]), 2.0, 0.3, 10, 5)
    assert z.shape == d.shape == (50, 2)


def test_polydisk_target():
    rep = L.polydisk_target_julia(gallery("section-5-pair"), decompose([1, 1]))
    assert rep["julia_components"] == [1]
    assert rep["components"][1]["radial_limit"] == "no_limit"
