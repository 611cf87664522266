"""The eleven acceptance criteria at their stated sizes and tolerances.

Each test prints one PASS/FAIL line (shown in the terminal summary as
well). Run directly with ``python3 tests/test_acceptance.py`` for just
the lines.
"""

import pytest

from polydisk import suite

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = []


def _run(check, **kw):
    result = check(**kw)
    line = result.line()
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert result.assertions > 0
    assert result.passed, result.details.get("failed")
    return result


def test_criterion_01_metric():
    r = _run(suite.check_metric, n_configs=1000)
    for n in (2, 3):
        assert max(r.details[f"n={n}"][k] for k in
                   ("identity", "symmetry", "triangle", "invariance", "projection")) <= 1e-12


def test_criterion_02_special_equivalence():
    r = _run(suite.check_special_equivalence, n_random=50)
    assert r.details["disagreements"] == []


def test_criterion_03_boundary_limsup():
    r = _run(suite.check_boundary_limsup, n_pairs=100)
    assert r.details["max_error"] <= 1e-8


def test_criterion_04_region_inclusions():
    _run(suite.check_region_inclusions, n=10_000, amplitudes=(1.5, 3.0, 10.0))


def test_criterion_05_restricted_koranyi():
    _run(suite.check_restricted_koranyi, n_random=50)


def test_criterion_06_counterexamples():
    r = _run(suite.check_counterexamples)
    assert r.details["remark-1.6"]["koranyi_at_2^-30"] >= 1e3


def test_criterion_07_julia():
    r = _run(suite.check_julia, n=500)
    assert r.details["remark-4.2"]["alpha"] == pytest.approx(0.8, abs=1e-9)


def test_criterion_08_jwc():
    _run(suite.check_jwc)


def test_criterion_09_bounds():
    r = _run(suite.check_bounds, n=10_000)
    assert r.details["derivative_envelope"]["observed_max"] <= suite.ENVELOPE_C


def test_criterion_10_polydisk_target():
    _run(suite.check_polydisk_target)


def test_criterion_11_derivatives():
    _run(suite.check_derivatives, n_points=1000)


if __name__ == "__main__":
    for r in suite.run_all():
        print(r.line())
