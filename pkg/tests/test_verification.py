import json

import pytest

from ponderation import verification as ver


@pytest.mark.parametrize("name", [s for s in ver.SUITES if s != "open_problem_report"])
def test_asserting_suites_pass(name):
    rep = ver.run_suite(name, seed=1)
    assert rep.asserting and rep.cases > 0
    assert rep.passed, [f.case for f in rep.failures][:5]
    assert rep.source


def test_ring_axioms_case_count():
    assert ver.run_suite("ring_axioms", seed=1).cases >= 500


def test_hyperbolic_family_shape():
    rep = ver.run_suite("hyperbolic_family", seed=1)
    assert rep.cases == 5 and rep.passed


def test_open_problem_report_asserts_nothing():
    rep = ver.run_suite("open_problem_report", seed=1)
    assert rep.passed is None and not rep.failures
    ratios = [row["ratio_to_identity"].real for row in rep.data["theta_diagonal_action"]]
    assert ratios[:4] == pytest.approx([1, 2, 6, 20], rel=1e-9)


def test_reports_are_deterministic():
    a = ver.run_suite("star_homomorphism", seed=7).to_json()
    b = ver.run_suite("star_homomorphism", seed=7).to_json()
    a.pop("wall_time"), b.pop("wall_time")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_failures_are_recorded():
    rep = ver.SuiteReport("x", 0, "src")
    rep.close(1e-12, "case", 1.0, 1.1)
    assert rep.passed is False and rep.failures[0].case == "case"
    json.dumps(rep.to_json())


def test_unknown_suite():
    with pytest.raises(ValueError):
        ver.run_suite("nope")


def test_parallel_run_matches_sequential():
    names = ["ideal_classification", "socle_noninjective", "special_function_sanity"]
    seq = ver.run_all(5, names=names)
    par = ver.run_all(5, names=names, workers=2)
    assert [r.name for r in par] == names
    strip = [{k: v for k, v in r.to_json().items() if k != "wall_time"} for r in seq]
    assert strip == [{k: v for k, v in r.to_json().items() if k != "wall_time"} for r in par]
