"""Tests for the corpus report exporter."""

import json

import pytest

from src.utils.result_exporter import export_report, summarize


def case(test_set, name, passed=True):
    return {"set": test_set, "case": name, "passed": passed, "detail": "", "duration_s": 0.0123456789}


class TestExportReport:
    def test_summary(self):
        results = [case("solver", "a"), case("solver", "b", False), case("soundness", "c")]
        assert summarize(results) == {
            "solver": {"total": 2, "passed": 1, "failed": 1},
            "soundness": {"total": 1, "passed": 1, "failed": 0},
        }

    def test_writes_valid_report(self, tmp_path):
        out = tmp_path / "nested" / "report.json"
        report = export_report([case("reduction", "single")], str(out), seed=7)
        written = json.loads(out.read_text())
        assert written == report
        assert written["seed"] == 7
        assert written["results"][0]["duration_s"] == 0.012346

    def test_rejects_unknown_set(self, tmp_path):
        with pytest.raises(ValueError, match="Validation error"):
            export_report([case("energy", "x")], str(tmp_path / "r.json"), seed=0)

    def test_missing_schema(self, tmp_path):
        with pytest.raises(ValueError, match="Schema file not found"):
            export_report([], str(tmp_path / "r.json"), seed=0, schema_path=str(tmp_path / "none.json"))
