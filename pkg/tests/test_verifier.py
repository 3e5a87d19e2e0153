import json

import pytest

from weylcheck import verifier as V
from weylcheck.models import build_model
from weylcheck.opdsl import bundled_suite_path, load_suite, parse_suite
from weylcheck.opdsl import StateCheck

E8, E10 = build_model("E8"), build_model("E10")


def _rel(model, text):
    return parse_suite(f"MODEL {model}\nREL r | {text} | test relation\n").relations[0]


def test_relation_pass():
    res = V.run_relation(E8, _rel("E8", "[L1, R] = 8*L1^2"))
    assert res.status == "pass" and res.residual_text == ""
    res = V.run_relation(E10, _rel("E10", "[A+, B-] = s"))
    assert res.status == "pass"


def test_relation_perturbed_fails_with_residual():
    res = V.run_relation(E8, _rel("E8", "[L1, R] = 7*L1^2"))
    assert res.status == "fail"
    assert res.residual_text == str(E8["L1"] * E8["L1"])


def test_report_never_fails():
    rel = parse_suite("MODEL E8\nREL c | R^2 = 0 | closure | report\n").relations[0]
    res = V.run_relation(E8, rel)
    assert res.status == "report" and res.residual_text


def test_suite_with_one_perturbation():
    text = "MODEL E8\nREL a | [A-, A+] = 0 | x\nREL b | [A+, B-] = 2*s | x\nREL c | [L1, A+] = 0 | x\n"
    report = V.run_suite(parse_suite(text))
    assert report.summary == {"pass": 2, "fail": 1, "report": 0, "total": 3}
    assert [r.name for r in report.results] == ["a", "b", "c"]
    assert not report.ok


def test_empty_suite_reports_zero_checks():
    report = V.run_suite(parse_suite("MODEL E8\n"))
    assert report.summary["total"] == 0 and report.ok


@pytest.mark.parametrize("model", ["E8", "E10"])
def test_bundled_suites_pass(model):
    report = V.run_suite(load_suite(bundled_suite_path(model)))
    assert report.summary["fail"] == 0, report.to_text(timing=False)
    assert report.summary["pass"] > 40


def test_json_report_shape():
    report = V.run_suite(parse_suite("MODEL E10\nREL a | [A-, A+] = 0 | x\nREL b | R^2 = 0 | y | report\n"))
    doc = json.loads(V.report_json(report, timing=False))
    assert set(doc["summary"]) == {"pass", "fail", "report", "total", "wall_ms"}
    first, second = doc["results"]
    assert first == {"name": "a", "status": "pass", "citation": "x", "elapsed_ms": 0}
    assert second["status"] == "report" and second["residual_text"]
    assert V.report_json(report, timing=False) == V.report_json(V.run_suite(parse_suite("MODEL E10\nREL a | [A-, A+] = 0 | x\nREL b | R^2 = 0 | y | report\n")), timing=False)


def test_state_check_examples():
    # L1 psibar_1 = s psi_1
    res = V.run_state_check(E8, StateCheck("l1", "l1_power", {"n": "1"}, "x"))
    assert res.status == "pass" and res.cases == 1
    res = V.run_state_check(E10, StateCheck("l1", "l1_power", {"n": "2"}, "x"))
    assert res.status == "pass"
    res = V.run_state_check(E10, StateCheck("empty", "r_product", {"n": "0"}, "x"))
    assert res.status == "pass" and res.cases == 1


def test_state_check_unknown_kind():
    with pytest.raises(V.UnknownCheckKind):
        V.run_state_check(E8, StateCheck("x", "nope", {}, "x"))


def test_stated_p_table():
    assert [V.stated_p(n) for n in range(1, 11)] == [1, 3, 3, 5, 4, 7, 6, 9, 8, 11]


@pytest.mark.parametrize("n,p", [(1, 1), (2, 3), (3, 3), (4, 5), (5, 4)])
def test_r_shift_minimal(n, p):
    f = V.find_minimal_annihilator(E8, "R", n)
    assert f.minimal == p and f.confirmed and f.matched_stated


def test_r_shift_cap():
    with pytest.raises(V.CapExceeded):
        V.find_minimal_annihilator(E8, "R", 4, cap=3)
    with pytest.raises(ValueError):
        V.find_minimal_annihilator(E8, "R", 0)


def test_h_family_e10_n2():
    f = V.find_minimal_annihilator(E10, "H", 2)
    assert f.factors == [4, 6, 8, 10]
    assert f.predicted_factors == [4, 6, 8, 10]
    assert f.confirmed and f.matched_stated


def test_h_family_e8_odd_has_no_prediction():
    f = V.find_minimal_annihilator(E8, "H", 3)
    assert f.predicted is None and not f.matched_stated and f.confirmed


def test_l1_family():
    f = V.find_minimal_annihilator(E10, "L1", 3)
    assert f.minimal == 3 and f.coefficient == "6*s^3" and f.matched_stated
