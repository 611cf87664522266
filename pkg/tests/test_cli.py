import io
import json
import subprocess
import sys

import pytest

from polydisk.cli import UsageError, parse_complex, parse_params, parse_point, run


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), stdout=buf)
    text = buf.getvalue()
    return code, (json.loads(text) if text else None), text


@pytest.mark.parametrize("s, z", [
    ("0.5", 0.5), ("-2i", -2j), ("0.5+0.25i", 0.5 + 0.25j), ("1e-3-2j", 1e-3 - 2j),
    ("i", 1j), ("-i", -1j),
])
def test_parse_complex(s, z):
    assert parse_complex(s) == z


def test_parse_rejects_garbage():
    for s in ("", "abc", "nan", "1+"):
        with pytest.raises(UsageError):
            parse_complex(s)
    with pytest.raises(UsageError):
        parse_params("a")


def test_parse_point_and_params():
    assert parse_point("1,0.3i").tolist() == [1, 0.3j]
    assert parse_params("a=0.8,b=0.4") == {"a": 0.8, "b": 0.4}
    assert parse_params("p=2,q=3") == {"p": 2, "q": 3}


def test_jwc_example():
    code, doc, _ = call("jwc", "--function", "remark-4.2", "--params", "a=0.8,b=0.4",
                        "--point", "1,1")
    assert code == 0
    v = doc["verdicts"]
    assert v["alpha"] == pytest.approx(0.8, abs=1e-9)
    assert v["tau"] == [1.0, 0.0]
    assert v["part_v"]["1"][0] == pytest.approx(0.6, abs=1e-6)
    assert set(doc) == {"scenario", "verdicts", "diagnostics", "versions"}
    assert doc["scenario"]["tolerances"]["limit"] == 1e-6
    assert doc["scenario"]["schedule"]["kmax"] == 40
    assert doc["scenario"]["point"]["silov_indices"] == [0, 1]


def test_curve_example():
    code, doc, _ = call("curve", "--name", "remark-1.6", "--point", "1,1")
    assert code == 0
    assert doc["verdicts"]["restricted"] == "yes"
    assert doc["verdicts"]["special"] == "no"


def test_reports_are_deterministic():
    a = call("julia", "--function", "remark-2.3", "--params", "a=0.5", "--point", "1,1")[2]
    b = call("julia", "--function", "remark-2.3", "--params", "a=0.5", "--point", "1,1")[2]
    assert a == b


def test_usage_errors_exit_2(capsys):
    assert call("julia", "--function", "nope", "--point", "1,1")[0] == 2
    assert call("julia", "--function", "coordinate-1", "--point", "0.5,0.5")[0] == 2
    assert call("jwc", "--function", "coordinate-1", "--point", "1,1,1")[0] == 2
    assert call("curve", "--name", "remark-1.6", "--point", "1,-1")[0] == 2
    assert call("dist", "--z", "1.5,0", "--w", "0,0")[0] == 2
    assert call("bogus")[0] == 2
    assert call("paper-suite", "--only", "metric")[0] == 2
    assert call("paper-suite", "--only", "12")[0] == 2
    assert call("lindelof", "--function", "remark-2.1", "--point", "1,1",
                "--pilot", "remark-2.1-sigma-lambda")[0] == 2


def test_failure_exit_3(monkeypatch):
    from polydisk import limits as L

    def broken(*a, **k):
        return [{"R": 1.0, "checked": 10, "violations": 2, "max_ratio": 1.5}]

    monkeypatch.setattr(L, "julia_inclusion_check", broken)
    code, doc, _ = call("julia", "--function", "coordinate-1", "--point", "1,0.3")
    assert code == 3
    assert doc["verdicts"]["inclusion_violations"] == 2


def test_region_checks_pass():
    code, doc, _ = call("region", "--point", "1,1", "--z", "0.5,0.5", "--check", "sandwich",
                        "--check", "trace", "--check", "ball", "--samples", "500", "--M", "3")
    assert code == 0 and doc["verdicts"]["violations"] == 0
    assert doc["verdicts"]["in_horosphere"] and doc["verdicts"]["in_koranyi"]


def test_undecided_exit_4():
    # ten dyadic steps are too few to see the ratio of g grow past the divergence cap
    code, doc, _ = call("julia", "--function", "section-5-g", "--point", "1", "--depth", "10")
    assert code == 4
    code, doc, _ = call("curve", "--name", "remark-2.1-sigma-lambda", "--params", "lam=0.999",
                        "--depth", "10")
    assert code == 4
    assert "undecided" in doc["verdicts"].values()


def test_dist_and_gallery():
    code, doc, _ = call("dist", "--z", "0.5,0.25i", "--w", "0,0", "--v", "1,0")
    assert code == 0
    assert doc["diagnostics"]["kobayashi"] == pytest.approx(0.5493061443340549)
    assert doc["diagnostics"]["kobayashi_metric"] == pytest.approx(4 / 3)
    code, doc, _ = call("gallery", "list")
    assert "remark-4.2" in doc["diagnostics"]["functions"]
    assert "remark-1.6" in doc["diagnostics"]["curves"]


def test_bounds_and_lindelof():
    code, doc, _ = call("bounds", "--function", "remark-4.2", "--params", "a=0.8,b=0.4",
                        "--point", "1,1", "--M", "3", "--samples", "1000")
    assert code == 0 and doc["verdicts"]["violations"] == 0
    code, doc, _ = call("lindelof", "--function", "remark-2.1", "--point", "1,1")
    assert code == 0 and doc["verdicts"]["findings"] == 0


def test_csv_and_output(tmp_path):
    out, tails = tmp_path / "r.json", tmp_path / "t.csv"
    code = run(["julia", "--function", "coordinate-1", "--point", "1,0.3",
                "--output", str(out), "--csv", str(tails)])
    assert code == 0
    assert json.loads(out.read_text())["verdicts"]["alpha"] == pytest.approx(1.0)
    lines = tails.read_text().splitlines()
    assert lines[0] == "series,eps,re,im" and len(lines) == 41


def test_depth_flag_and_env(monkeypatch):
    doc = call("curve", "--name", "radial", "--point", "1,1", "--depth", "20")[1]
    assert doc["scenario"]["schedule"]["kmax"] == 20
    monkeypatch.setenv("POLYDISK_SCHEDULE_DEPTH", "30")
    doc = call("curve", "--name", "radial", "--point", "1,1")[1]
    assert doc["scenario"]["schedule"]["kmax"] == 30


def test_paper_suite_subset():
    code, doc, _ = call("paper-suite", "--only", "1,3")
    assert code == 0
    assert doc["verdicts"]["all_passed"] is True
    assert doc["verdicts"]["assertions"] > 0


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "polydisk", "gallery", "list"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and "herglotz-pair" in p.stdout
