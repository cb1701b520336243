import json

import pytest

from rdpc import DomainError
from rdpc.verify import SUITE_NAMES, run_suites


def test_suite_roster_is_stable():
    assert SUITE_NAMES == (
        "entropy",
        "mgl",
        "convexity",
        "oracle-rdc-binary",
        "oracle-rdc-gaussian",
        "oracle-rpc-gaussian",
        "rpc-binary-gap-probe",
        "restoration",
        "rpc-given-d",
    )


def test_unknown_suite_is_rejected():
    with pytest.raises(DomainError):
        run_suites(["entropy", "nope"])


def test_entropy_suite_report_shape():
    report = run_suites(["entropy"], seed=0)
    assert report.all_passed
    payload = report.to_dict()
    assert payload["seed"] == 0
    assert payload["all_passed"] is True
    assert [s["name"] for s in payload["suites"]] == ["entropy"]
    suite = payload["suites"][0]
    assert suite["passed"] is True
    assert set(suite["measured"]) == set(suite["tolerances"])
    json.dumps(payload)  # must be serializable without massaging


def test_gap_probe_reports_premium_without_failing():
    report = run_suites(["rpc-binary-gap-probe"], seed=0)
    assert report.all_passed
    assert len(report.gap_probes) == 1
    probe = report.gap_probes[0]
    assert probe.gap == pytest.approx(probe.oracle - probe.closed_form, abs=1e-15)
    assert 4e-3 < probe.gap < 7e-3


def test_seed_changes_draws_not_verdicts():
    first = run_suites(["entropy"], seed=0).to_dict()
    other = run_suites(["entropy"], seed=5).to_dict()
    assert first["all_passed"] and other["all_passed"]
    assert first != other
