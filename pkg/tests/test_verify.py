import pytest

from treehopf.verify import IDENTITIES, VerifyReport, run_all, run_identity

EXPECTED_FAILURES = {"involution-sum"}


@pytest.mark.parametrize("name", sorted(set(IDENTITIES) - EXPECTED_FAILURES))
def test_identity_holds_at_default_degree(name):
    report = run_identity(name, 6)
    assert report.checked > 0
    assert report.ok, report.failures[:3]


def test_involution_identity_reports_its_counterexample():
    report = run_identity("involution-sum", 6)
    assert report.failed == 1
    assert report.failures == [{"input": ["5"], "lhs": "450", "rhs": "426"}]
    assert run_identity("involution-sum", 5).ok


def test_run_all_is_sorted_and_complete():
    reports = run_all(3)
    assert [r.identity for r in reports] == sorted(IDENTITIES)
    assert all(r.ok for r in reports)


def test_unknown_identity():
    with pytest.raises(KeyError):
        run_identity("nope", 3)


def test_report_json_hides_timing_unless_asked():
    r = VerifyReport("x", 2, checked=1, wall_time=0.5)
    assert "wall_time" not in r.to_json()
    assert r.to_json(timing=True)["wall_time"] == 0.5
