"""
Identity Reports
Collects instance-by-instance comparisons of exact identities and turns
them into JSON or a short console summary.
"""

import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, TextIO

# --- CONFIGURATION ---
MAX_PRINTED_FAILURES = 5
RESERVED_KEYS = ("lhs", "rhs", "identity")


def to_jsonable(value: Any) -> Any:
    """Exact rationals become "p/q" strings; domain objects use their to_json()."""
    if isinstance(value, Fraction):
        return str(value)
    if hasattr(value, "to_json"):
        return value.to_json()
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return value


def dumps(payload: Any) -> str:
    return json.dumps(to_jsonable(payload), indent=2, ensure_ascii=False)


@dataclass
class IdentityReport:
    """
    Instances checked for one identity; an empty failure list means it held everywhere.

    Each failure is one flat entry: the instance's inputs (e.g. "lambda",
    "ztilde") next to "lhs" and "rhs". `counts` holds named tallies such as
    the number of words swept, reported beside "checked".
    """

    name: str
    instances_checked: int = 0
    failures: List[Dict[str, Any]] = field(default_factory=list)
    counts: Dict[str, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, inputs: Dict[str, Any], lhs: Fraction, rhs: Fraction) -> bool:
        clash = [key for key in RESERVED_KEYS if key in inputs]
        if clash:
            raise ValueError(f"Input names {clash} are reserved in failure entries")
        self.instances_checked += 1
        if lhs == rhs:
            return True
        self.failures.append({**inputs, "lhs": lhs, "rhs": rhs})
        return False

    def absorb(self, other: "IdentityReport") -> "IdentityReport":
        """Fold another report in, tagging its failures with the other identity's name."""
        self.instances_checked += other.instances_checked
        for failure in other.failures:
            self.failures.append({**failure, "identity": other.name})
        for key, value in other.counts.items():
            self.counts[key] = self.counts.get(key, 0) + value
        return self

    def to_json(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.instances_checked,
            **self.counts,
            "failures": to_jsonable(self.failures),
        }

    def summary_line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{status} {self.name}: {self.instances_checked} instances checked"
        if not self.passed:
            line += f", {len(self.failures)} failed"
        return line


def display_report(report: IdentityReport, stream: TextIO = sys.stdout) -> None:
    """Print the one-line verdict and the first few counterexamples."""
    print(report.summary_line(), file=stream)
    for failure in report.failures[:MAX_PRINTED_FAILURES]:
        inputs = ", ".join(f"{k}={to_jsonable(v)}" for k, v in failure.items() if k not in RESERVED_KEYS)
        print(f"  ✗ {inputs}", file=stream)
        print(f"    lhs = {failure['lhs']}", file=stream)
        print(f"    rhs = {failure['rhs']}", file=stream)


def export_report(report: IdentityReport, output_file: str) -> bool:
    """
    Write a report as JSON.

    Returns:
        bool: True if successful
    """
    try:
        path = Path(output_file)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            f.write(dumps(report))
        print(f"✓ Report exported to '{output_file}'", file=sys.stderr)
        return True
    except OSError as e:
        print(f"Error exporting report: {e}", file=sys.stderr)
        return False
