"""Check records and machine-readable reports for the verification suites."""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field


@dataclass
class CheckRecord:
    check_id: str
    anchor: str          # short label of the identity/inequality verified
    lhs: float
    rhs: float
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tol

    def row(self, suite: str) -> dict:
        return {
            "suite": suite,
            "check_id": self.check_id,
            "anchor": self.anchor,
            "lhs": repr(float(self.lhs)),
            "rhs": repr(float(self.rhs)),
            "residual": repr(float(self.residual)),
            "tol": repr(float(self.tol)),
            "pass": self.passed,
        }


@dataclass
class Report:
    suite: str
    seed: int
    checks: list[CheckRecord] = field(default_factory=list)
    runtime_seconds: float = 0.0

    @property
    def n_passed(self) -> int:
        return sum(1 for c in self.checks if c.passed)

    @property
    def all_passed(self) -> bool:
        return self.n_passed == len(self.checks)

    def summary(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "total": len(self.checks),
            "passed": self.n_passed,
            "failed": len(self.checks) - self.n_passed,
        }

    def to_json(self, include_meta: bool = True) -> str:
        """Canonical serialization: sorted checks, fixed float repr.  The
        meta block (wall time) is the only volatile part and can be left
        out for byte-stable comparisons."""
        payload = {
            "summary": self.summary(),
            "checks": [c.row(self.suite) for c in sorted(self.checks, key=lambda c: c.check_id)],
        }
        if include_meta:
            payload["meta"] = {"runtime_seconds": round(self.runtime_seconds, 3)}
        return json.dumps(payload, indent=2, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(
            buf,
            fieldnames=["suite", "check_id", "anchor", "lhs", "rhs", "residual", "tol", "pass"],
        )
        writer.writeheader()
        for c in sorted(self.checks, key=lambda c: c.check_id):
            writer.writerow(c.row(self.suite))
        return buf.getvalue()

    @staticmethod
    def merge(reports: list["Report"]) -> dict:
        merged = {
            "suites": [json.loads(r.to_json(include_meta=False)) for r in reports],
            "total": sum(len(r.checks) for r in reports),
            "passed": sum(r.n_passed for r in reports),
        }
        merged["failed"] = merged["total"] - merged["passed"]
        return merged


class Stopwatch:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        return False
