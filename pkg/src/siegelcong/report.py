"""Verification report record and its renderers."""

from __future__ import annotations

import csv
import enum
import io
import json
from dataclasses import dataclass, field
from typing import Any, Optional

ARTIFACT_VERSION = "0.1.0"
DEFAULT_VIOLATION_CAP = 100


class Status(enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    INAPPLICABLE = "INAPPLICABLE"


def _jsonable(value: Any) -> Any:
    from fractions import Fraction

    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [_jsonable(v) for v in items]
    return value


def index_string(index) -> str:
    if isinstance(index, int):
        return str(index)
    if isinstance(index, str):
        return index
    return ",".join(str(x) for x in index)


@dataclass
class CongruenceReport:
    check: str
    params: dict
    status: Status = Status.PASS
    violations: list = field(default_factory=list)
    violation_count: int = 0
    certificate: Optional[dict] = None
    elapsed_ms: int = 0
    artifact_version: str = ARTIFACT_VERSION
    notes: list = field(default_factory=list)

    def add_violations(self, label: str, indices, cap: int = DEFAULT_VIOLATION_CAP) -> None:
        indices = list(indices)
        self.violation_count += len(indices)
        room = max(cap - len(self.violations), 0)
        self.violations.extend(f"{label}:{index_string(i)}" for i in indices[:room])

    def settle(self, certificates_hold: bool = True) -> "CongruenceReport":
        if self.status is not Status.INAPPLICABLE:
            ok = self.violation_count == 0 and certificates_hold
            self.status = Status.PASS if ok else Status.FAIL
        return self

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "params": _jsonable(self.params),
            "status": self.status.value,
            "violations": list(self.violations),
            "violation_count": self.violation_count,
            "certificate": _jsonable(self.certificate),
            "elapsed_ms": self.elapsed_ms,
            "artifact_version": self.artifact_version,
        }


def to_json(report: CongruenceReport) -> str:
    return json.dumps(report.to_dict(), sort_keys=False)


def to_text(report: CongruenceReport) -> str:
    lines = [f"[{report.status.value}] {report.check} {json.dumps(_jsonable(report.params), sort_keys=True)}"
             f" ({report.elapsed_ms} ms)"]
    if report.violation_count:
        shown = ", ".join(report.violations[:10])
        lines.append(f"  violations: {report.violation_count} (first: {shown})")
    for note in report.notes:
        lines.append(f"  {note}")
    cert = report.certificate or {}
    for name, trace in cert.items():
        if not isinstance(trace, dict) or "claim" not in trace:
            continue
        lines.append(f"  certificate {trace['claim']}: {trace['verdict']}"
                     + (f" (fails: {trace['failing_hypothesis']})" if trace.get("failing_hypothesis") else ""))
        for fac in trace.get("factors", [])[:12]:
            lines.append(f"    ord_p({fac['expression']}) = {fac['valuation']}  expected {fac['expected']}"
                         f"  {'ok' if fac['holds'] else 'FAILED'}")
        for check, ok in trace.get("checks", {}).items():
            lines.append(f"    {check}: {'ok' if ok else 'FAILED'}")
    return "\n".join(lines)


def to_csv(reports) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["check", "status", "violation_count", "violation", "elapsed_ms"])
    for r in reports:
        if r.violations:
            for v in r.violations:
                writer.writerow([r.check, r.status.value, r.violation_count, v, r.elapsed_ms])
        else:
            writer.writerow([r.check, r.status.value, r.violation_count, "", r.elapsed_ms])
    return buf.getvalue()
