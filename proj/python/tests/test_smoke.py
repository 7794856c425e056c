import os
import pathlib
import sys

import pytest

import monoxp

SPECS = pathlib.Path(
    os.environ.get("MONOXP_SPECS_DIR", pathlib.Path(__file__).resolve().parents[2] / "specs")
)


def test_grade_running_example():
    grade = monoxp.GradeClassifier()
    v = [10, 10, 5, 0]
    assert grade.predict(v) == "A"
    assert monoxp.find_axp(grade, v).features == [1, 2]
    assert monoxp.find_cxp(grade, v).features == [2]
    report = monoxp.enumerate(grade, v)
    assert report.complete
    assert report.axps == [[1, 2]]
    assert report.cxps == [[1], [2]]
    assert report.sat_calls == 4
    assert monoxp.check_duality(report.axps, report.cxps)


def test_majority_matches_brute_force():
    space = monoxp.FeatureSpace([monoxp.FeatureDomain.boolean()] * 3, ["a", "b", "c"])
    maj = monoxp.LinearThresholdClassifier(space, monoxp.ClassOrder(["0", "1"]), [1, 1, 1], [2])
    report = monoxp.enumerate(maj, [1, 1, 1])
    axps, cxps = monoxp.brute_force(maj, [1, 1, 1])
    assert report.axps == axps == [[1, 2], [1, 3], [2, 3]]
    assert report.cxps == cxps
    assert report.sat_calls == 7
    assert monoxp.find_axp(maj, [1, 1, 1], order=[3, 2, 1]).features == [1, 2]


def test_callable_oracle_and_verify():
    space = monoxp.FeatureSpace([monoxp.FeatureDomain.integer(0, 3)] * 2)
    classes = monoxp.ClassOrder(["low", "high"])
    oracle = monoxp.CallableOracle(space, classes, lambda x: "high" if x[0] + x[1] >= 4 else "low")
    v = [2, 2]
    assert monoxp.verify_axp(oracle, v, [1, 2])
    assert not monoxp.verify_axp(oracle, v, [1])
    assert monoxp.verify_cxp(oracle, v, [1])
    check = monoxp.check_explanation(oracle, v, "axp", [1, 2])
    assert check == {"holds": True, "minimal": True, "redundant": []}


def test_errors_are_typed():
    grade = monoxp.GradeClassifier()
    with pytest.raises(monoxp.InputError):
        grade.classify([1, 2, 3])
    space = monoxp.FeatureSpace([monoxp.FeatureDomain.boolean()])
    flat = monoxp.LinearThresholdClassifier(space, monoxp.ClassOrder(["only"]), [1], [])
    with pytest.raises(monoxp.NoCxpExists):
        monoxp.find_cxp(flat, [1])
    with pytest.raises(monoxp.SeedBreaksInvariant):
        monoxp.find_axp(grade, [10, 10, 5, 0], seed=[2])
    with pytest.raises(monoxp.SpecError):
        monoxp.AppendixCnfClassifier(2, [[1, 2], [1, -2]])
    assert issubclass(monoxp.OracleError, monoxp.MonoxpError)


def test_appendix_counting():
    kappa = monoxp.AppendixCnfClassifier(2, [[1, 2], [-1, -2]])
    report = monoxp.enumerate(kappa, [1, 1, 1, 1])
    assert report.axps == [[1, 3], [1, 4], [2, 3], [2, 4]]


def test_spec_files_and_external_process(tmp_path):
    spec = monoxp.load_spec(SPECS / "grade.json")
    assert spec.kind == "grade"
    oracle = spec.make_oracle()
    assert monoxp.find_axp(oracle, [10, 10, 5, 0]).features == [1, 2]

    model = tmp_path / "model.py"
    model.write_text(
        "import sys\n"
        "for line in sys.stdin:\n"
        "    x = [float(t) for t in line.split(',')]\n"
        "    print('1' if sum(x) >= 2 else '0', flush=True)\n"
    )
    space = monoxp.FeatureSpace([monoxp.FeatureDomain.boolean()] * 3)
    ext = monoxp.ExternalProcessOracle(space, monoxp.ClassOrder(["0", "1"]), [sys.executable, str(model)])
    assert ext.predict([1, 0, 1]) == "1"
    assert monoxp.enumerate(ext, [1, 1, 0]).axps == [[1, 2]]


def test_probe_finds_nothing_on_monotone_model():
    assert monoxp.probe_monotonicity(monoxp.GradeClassifier(), trials=200, seed=1) == []
