import numpy as np
import pytest
from hypothesis import given, strategies as st

from polydisk import curves as C
from polydisk.boundary import decompose

EXPECTED = {
    "radial": dict(special="yes", restricted="yes", peculiar="yes", koranyi_eventually="yes"),
    "remark-1.1": dict(special="yes"),
    "remark-1.6": dict(special="no", restricted="yes", koranyi_eventually="no"),
    "remark-2.1-sigma-lambda": dict(peculiar="yes", koranyi_eventually="yes"),
    "remark-2.3-sigma-lambda": dict(peculiar="yes", restricted="yes", koranyi_eventually="no"),
    "tangential-zeta": dict(special="yes", restricted="no"),
    "horocycle-hugging": dict(peculiar="no"),
}


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_gallery_classification(name):
    cl = C.classify_curve(C.curve_gallery(name)).to_dict()
    for k, v in EXPECTED[name].items():
        assert cl[k] == v, (name, k)


def test_gallery_expected_metadata_consistent():
    for name in C.curve_names():
        cur = C.curve_gallery(name)
        cl = C.classify_curve(cur).to_dict()
        for k, v in cur.expected.items():
            if k in cl:
                assert cl[k] == v, (name, k)


def test_remark_1_6_koranyi_blows_up():
    v = C.koranyi_along(C.remark_1_6(), [2.0**-10, 2.0**-20, 2.0**-30])
    assert np.all(np.diff(v) > 0)
    assert v[-1] > 1e9


def test_remark_1_1_ratio_identically_one():
    assert np.max(np.abs(C.full_norm_ratio(C.remark_1_1()) - 1)) <= 1e-12


def test_radial_projection_is_exact():
    cur = C.radial([1j, -1, 0.4])
    p = C.project(cur)
    assert np.allclose(p.q, cur.schedule, rtol=1e-15)
    assert np.allclose(p.stolz(), 1.0)


def test_schedule_depth_from_environment(monkeypatch):
    monkeypatch.setenv("POLYDISK_SCHEDULE_DEPTH", "25")
    assert C.dyadic_schedule()[-1] == 2.0**-25
    assert C.radial([1, 1]).schedule.size == 25


def test_verdict_helpers():
    k = np.arange(1, 41)
    assert C.vanishing_verdict(2.0**-k) == "yes"
    assert C.vanishing_verdict(np.full(40, 0.3)) == "no"
    assert C.bounded_verdict(np.full(40, 2.0)) == "yes"
    assert C.bounded_verdict(2.0 ** (0.25 * k)) == "no"      # slow power growth
    assert C.bounded_verdict(np.append(np.ones(39), np.inf)) == "no"
    assert C.eventually_inside(np.full(10, 1.5), 2.0)
    assert not C.eventually_inside(np.append(np.ones(9), 3.0), 2.0)


def test_strict_special_raises_on_disagreement(monkeypatch):
    cur = C.radial([1, 1])
    sched = cur.schedule
    monkeypatch.setattr(C, "special_quantities", lambda c, eps=None: {
        "eps": sched, "kobayashi": sched, "ratio": np.ones_like(sched)})
    with pytest.raises(C.ConsistencyError):
        C.is_special(cur)
    assert C.is_special(cur, strict=False)["kobayashi_verdict"] == "yes"


def test_curve_leaving_polydisk_rejected():
    with pytest.raises(ValueError):
        C.perturbed_curve([1, 1], 0.5, 5.0, 0.0, a=0.0, schedule=[0.5, 0.25])


def test_unknown_curve():
    with pytest.raises(KeyError):
        C.curve_gallery("nope")
    with pytest.raises(TypeError):
        C.curve_gallery("remark-1.6", lam=1)


def test_random_curves_consistent():
    for cur in C.random_curves(20, seed=9):
        C.is_special(cur, strict=True)   # raises on disagreement


@given(st.floats(1.2, 2.5), st.floats(0.2, 1.0), st.floats(-1.0, 1.0), st.floats(0.5, 2.0))
def test_fast_perturbations_are_special(p, c, theta, a):
    x = decompose([1, 1j])
    cur = C.perturbed_curve(x, p, c, [theta, -theta], a=a, schedule=C.dyadic_schedule(60, 8))
    sp = C.is_special(cur)
    assert sp["verdict"] in ("yes", "undecided")
    if p >= 1.5:
        assert sp["verdict"] == "yes"


@given(st.floats(1.2, 10.0), st.floats(0.3, 2.0), st.floats(0, 6.28))
def test_projection_identity(M, omega, phase):
    cur = C.swinging_curve([1, 0.5j, -1], M, omega=omega, phase=phase,
                           schedule=C.FAMILY_SCHEDULE)
    st_ = C.project(cur).stolz()
    sx, _ = C.project_curve(cur)
    assert np.allclose(C.koranyi_along(sx), st_**2, rtol=1e-9)
    assert np.all(st_ >= 1 - 1e-12)
    # the swing stays strictly inside H(1, M) once the eps^1.5 term is negligible
    assert np.all(st_[-20:] < M)


@pytest.mark.parametrize("seed", range(1, 6))
def test_special_criteria_agree_across_seeds(seed):
    for cur in C.random_curves(50, seed):
        sp = C.is_special(cur, strict=False)
        assert sp["kobayashi_verdict"] == sp["ratio_verdict"], cur.label


@given(st.floats(0.3, 3.0), st.integers(0, 2**31 - 1))
def test_special_criteria_agree_on_wide_rates(p, seed):
    rng = np.random.default_rng(seed)
    x = C.random_boundary_point(rng)
    try:
        cur = C.perturbed_curve(x, p, rng.uniform(0.1, 1, x.degree),
                                rng.uniform(-1, 1, x.degree), a=rng.uniform(0.5, 2),
                                internal_seed=seed, schedule=C.dyadic_schedule(60, 8))
    except ValueError:
        return
    sp = C.is_special(cur, strict=False)
    assert sp["kobayashi_verdict"] == sp["ratio_verdict"]
