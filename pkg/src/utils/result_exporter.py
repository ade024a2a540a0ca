"""Corpus report assembly and export."""

import json
from collections import defaultdict
from pathlib import Path
from typing import Dict, List, Optional

import jsonschema

DEFAULT_SCHEMA = Path(__file__).resolve().parent.parent / "data" / "report_schema.json"


def summarize(results: List[Dict]) -> Dict[str, Dict[str, int]]:
    """Pass and fail counts per test set."""
    summary: Dict[str, Dict[str, int]] = defaultdict(lambda: {"total": 0, "passed": 0, "failed": 0})
    for result in results:
        counts = summary[result["set"]]
        counts["total"] += 1
        counts["passed" if result["passed"] else "failed"] += 1
    return dict(summary)


def export_report(
    results: List[Dict],
    output_file: str,
    seed: int,
    schema_path: Optional[str] = None,
) -> Dict:
    """
    Summarize corpus results and export them as a JSON report.

    Args:
        results: One dictionary per case with set, case, passed, detail and duration_s.
        output_file: Path to the output JSON file.
        seed: Base seed the corpus was generated and run with.
        schema_path: JSON schema to validate against; the bundled one by default.

    Returns:
        Dict: The report that was written.

    Raises:
        ValueError: If the report does not conform to the schema.
        IOError: If the output file cannot be written.
    """
    report = {
        "seed": seed,
        "summary": summarize(results),
        "results": [{**r, "duration_s": round(r["duration_s"], 6)} for r in results],
    }
    validate_report_schema(report, schema_path or str(DEFAULT_SCHEMA))

    output_path = Path(output_file)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    try:
        with open(output_path, "w") as f:
            json.dump(report, f, indent=2)
    except OSError as e:
        raise IOError(f"Failed to write report to {output_file}: {e}")
    return report


def validate_report_schema(report: Dict, schema_path: str) -> bool:
    """
    Validate a report against a JSON schema.

    Raises:
        ValueError: If validation fails or the schema is missing.
    """
    try:
        with open(schema_path, "r") as f:
            schema = json.load(f)
        jsonschema.validate(instance=report, schema=schema)
        return True
    except jsonschema.ValidationError as e:
        raise ValueError(f"Validation error: {e.message}")
    except FileNotFoundError:
        raise ValueError(f"Schema file not found: {schema_path}")
