"""
Tests for the theta-agm command line
"""
import json

import pytest

from app.main import EXIT_DOMAIN, EXIT_FAILED, EXIT_OK, EXIT_USAGE, run

def _json(capsys):
    return json.loads(capsys.readouterr().out)

def test_constants(capsys):
    assert run(["constants", "--format", "json"]) == EXIT_OK
    values = {v["name"]: v["re"] for v in _json(capsys)["values"]}
    assert values["pi_over_gamma34_4"] == pytest.approx(1.3932039296856768, rel=1e-14)
    assert values["kappa"] == pytest.approx(1.2454e-3, rel=1e-3)

def test_agm_km(capsys):
    assert run(["agm", "km", "1", "0.8", "0.6", "0.4", "--format", "json"]) == EXIT_OK
    trace = _json(capsys)
    assert trace["kind"] == "km"
    assert 0.4 < trace["limit"] < 1.0
    assert trace["iterations"] == len(trace["states"]) - 1

def test_agm_trace_csv(tmp_path, capsys):
    path = tmp_path / "trace.csv"
    assert run(["agm", "gauss", "1", "0.5", "--csv", str(path)]) == EXIT_OK
    assert path.read_text().splitlines()[0] == "n,a,b"
    assert "limit =" in capsys.readouterr().out

def test_agm_wrong_arity():
    assert run(["agm", "km", "1", "0.8"]) == EXIT_USAGE

def test_agm_not_a_number():
    assert run(["agm", "gauss", "1", "abc"]) == EXIT_USAGE

def test_fd_reduces_to_f21(capsys, hypergeom_service):
    assert run(["fd", "0.25", "0.75", "1", "0.3", "--format", "json"]) == EXIT_OK
    value = _json(capsys)["values"][0]
    assert value["re"] == pytest.approx(hypergeom_service.gauss_2f1(0.25, 0.75, 1.0, 0.3), rel=1e-13)

def test_fd_bad_count():
    assert run(["fd", "0.25", "0.75", "1"]) == EXIT_USAGE

def test_period_unordered_is_domain_error():
    assert run(["period", "0.8", "0.5", "0.2"]) == EXIT_DOMAIN

def test_period_csv_output(tmp_path):
    path = tmp_path / "period.csv"
    assert run(["period", "0.2", "0.5", "0.8", "--format", "csv", "--output", str(path)]) == EXIT_OK
    lines = path.read_text().splitlines()
    assert lines[0] == "name,re,im"
    assert lines[1].startswith("v1,")

def test_verify_km(capsys):
    assert run(["verify", "km", "--format", "json"]) == EXIT_OK
    result = _json(capsys)
    assert result["pass"] is True
    assert result["suites"][0]["suite"] == "km"

def test_verify_negative_control(capsys):
    assert run(["verify", "thomae", "--perturb", "0", "0.05"]) == EXIT_FAILED
    assert capsys.readouterr().out.startswith("FAIL")

def test_verify_bad_perturb_index():
    assert run(["verify", "thomae", "--perturb", "5", "0.05"]) == EXIT_USAGE

def test_unknown_command():
    assert run(["frobnicate"]) == EXIT_USAGE

def test_bad_tolerance():
    assert run(["constants", "--tol", "-1"]) == EXIT_DOMAIN
