from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from typing import Any, Optional

__all__ = ["Bounds", "Report", "SCHEMA_VERSION"]

log = logging.getLogger(__name__)
log.setLevel(os.getenv("DISSECT_LOG_REPORT", "CRITICAL"))

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class Bounds:
    """Limits of a verification sweep: source list length and internal vertices per tree."""

    inputs: int = 2
    vertices: int = 2

    @classmethod
    def parse(cls, value: str) -> Bounds:
        try:
            inputs, vertices = (int(part) for part in value.split(","))
        except ValueError:
            raise ValueError(f"Bounds must look like INPUTS,VERTICES, got {value!r}")
        if inputs < 0 or vertices < 1:
            raise ValueError(f"Bounds out of range: {value!r}")
        return cls(inputs, vertices)


@dataclass
class Report:
    """Pass and failure counts per named check, with every failing instance kept verbatim."""

    kind: str
    checks: dict[str, dict[str, int]] = field(default_factory=dict)
    failures: list[dict[str, Any]] = field(default_factory=list)

    def record(self, check: str, passed: bool, instance: Optional[dict] = None) -> bool:
        counts = self.checks.setdefault(check, {"passed": 0, "failed": 0})
        if passed:
            counts["passed"] += 1
        else:
            counts["failed"] += 1
            failure = {"check": check}
            if instance:
                failure.update(instance)
            self.failures.append(failure)
            log.info("Check %s failed: %s", check, instance)
        return passed

    def merge(self, other: Report) -> None:
        for check, counts in other.checks.items():
            mine = self.checks.setdefault(check, {"passed": 0, "failed": 0})
            mine["passed"] += counts["passed"]
            mine["failed"] += counts["failed"]
        self.failures.extend(other.failures)

    @property
    def ok(self) -> bool:
        return not self.failures

    def outcome(self) -> dict:
        """The report without its kind, for comparing sweeps of different kinds."""
        return {"ok": self.ok, "checks": self.checks, "failures": self.failures}

    def to_json(self) -> dict:
        return {"schema": SCHEMA_VERSION, "kind": self.kind, **self.outcome()}
