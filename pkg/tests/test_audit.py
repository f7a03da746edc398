import pytest

from ccdim.audit import AuditReport, Check, run_audit, sample_points
from ccdim.generators import ell_grid, path, random_median


def test_segment_all_pass():
    report = run_audit(path(1), "all", 100, 7)
    assert report.passed
    assert {c.status for c in report.checks} <= {"pass", "info"}


def test_ell_colouring_suite():
    report = run_audit(ell_grid(), "colouring")
    by_name = {c.name: c for c in report.checks}
    assert by_name["control_bound"].status == "pass"
    assert by_name["control_bound"].detail == "control 2 <= 6"
    assert by_name["properties"].status == "pass"


def test_random_geometry_suite():
    X = random_median((4, 4, 3), 10, 0)
    report = run_audit(X, "geometry", 1000, 42)
    status = {c.name: c.status for c in report.checks}
    for name in ("contractive", "range_and_idempotence", "norm_preservation"):
        assert status[name] == "pass"
    assert status["actual_order_independence"] == "info"


def test_single_thread(monkeypatch):
    monkeypatch.setenv("CCDIM_THREADS", "1")
    assert run_audit(ell_grid(), "core", 20, 1).passed


def test_failures_are_reported():
    report = AuditReport("x", 0, 0, [Check("s", "n", "fail", "broken", (1, 2))])
    assert not report.passed
    assert "FAIL  s.n" in report.to_text() and report.to_json()["passed"] is False


def test_bad_arguments():
    with pytest.raises(ValueError):
        run_audit(path(1), "nope")
    with pytest.raises(ValueError):
        run_audit(path(1), "core", -1)


def test_sample_points_seeded():
    X = ell_grid()
    assert sample_points(X, 10, 3) == sample_points(X, 10, 3)
    assert sample_points(X, 10, 3) != sample_points(X, 10, 4)
