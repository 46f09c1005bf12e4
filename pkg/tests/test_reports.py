import io
import json
from fractions import Fraction

import pytest

from src.combinatorics.partitions import Partition
from src.utils.reports import IdentityReport, display_report, dumps, export_report, to_jsonable


def test_to_jsonable_keeps_rationals_exact():
    assert to_jsonable({"x": Fraction(3, 8), "shape": Partition.of(2, 1), 3: [Fraction(1)]}) == {
        "x": "3/8",
        "shape": [2, 1],
        "3": ["1"],
    }


def test_report_records_failures():
    report = IdentityReport("demo")
    assert report.record({"k": 1}, Fraction(1, 2), Fraction(1, 2))
    assert not report.record({"k": 2}, Fraction(1), Fraction(2))
    assert report.instances_checked == 2
    assert not report.passed
    assert report.summary_line() == "FAIL demo: 2 instances checked, 1 failed"


def test_display_report():
    report = IdentityReport("demo")
    report.record({"lambda": Partition.of(1)}, Fraction(1), Fraction(2))
    stream = io.StringIO()
    display_report(report, stream)
    text = stream.getvalue()
    assert text.startswith("FAIL demo")
    assert "lambda=[1]" in text


def test_export_report(tmp_path):
    report = IdentityReport("demo")
    report.record({}, Fraction(1), Fraction(1))
    target = tmp_path / "out" / "report.json"
    assert export_report(report, str(target))
    assert json.loads(target.read_text(encoding="utf-8")) == json.loads(dumps(report))
    assert json.loads(dumps(report)) == {"name": "demo", "passed": True, "checked": 1, "failures": []}


def test_failures_are_flat_entries():
    report = IdentityReport("intertwining")
    report.record({"lambda": Partition.of(2), "ztilde": "1|2"}, Fraction(1, 2), Fraction(1, 3))
    assert json.loads(dumps(report))["failures"] == [{"lambda": [2], "ztilde": "1|2", "lhs": "1/2", "rhs": "1/3"}]


def test_reserved_input_names_raise():
    report = IdentityReport("demo")
    with pytest.raises(ValueError):
        report.record({"lhs": 1}, Fraction(1), Fraction(1))
    assert report.instances_checked == 0


def test_counts_are_reported_and_absorbed():
    combined = IdentityReport("combined", counts={"words": 4})
    combined.absorb(IdentityReport("part", instances_checked=3, counts={"words": 16}))
    payload = json.loads(dumps(combined))
    assert payload["words"] == 20
    assert payload["checked"] == 3
