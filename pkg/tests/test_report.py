import pytest

from dissect.burnside.report import SCHEMA_VERSION, Bounds, Report


@pytest.mark.parametrize("value, expected", [("2,2", Bounds()), ("0,1", Bounds(0, 1)), (" 3, 4", Bounds(3, 4))])
def test_bounds_parse(value: str, expected: Bounds) -> None:
    assert Bounds.parse(value) == expected


@pytest.mark.parametrize("value", ["2", "2,2,2", "a,1", "-1,2", "2,0"])
def test_bounds_parse_invalid(value: str) -> None:
    with pytest.raises(ValueError):
        Bounds.parse(value)


def test_report() -> None:
    report = Report("phi")
    assert report.ok
    assert report.record("identity", True)
    assert not report.record("identity", False, {"object": "x"})
    assert report.checks == {"identity": {"passed": 1, "failed": 1}}
    assert report.failures == [{"check": "identity", "object": "x"}]
    assert not report.ok

    other = Report("signed")
    other.record("identity", True)
    other.record("cardinality", True)
    report.merge(other)
    assert report.checks["identity"] == {"passed": 2, "failed": 1}
    assert report.checks["cardinality"] == {"passed": 1, "failed": 0}

    record = report.to_json()
    assert record["schema"] == SCHEMA_VERSION
    assert record["kind"] == "phi"
    assert record["ok"] is False
    assert "kind" not in report.outcome()
