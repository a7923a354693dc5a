"""Pass/fail records shared by the verification routines."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List


@dataclass
class Check:
    name: str
    passed: bool
    detail: Any = None
    seconds: float = 0.0

    def as_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "detail": self.detail, "seconds": round(self.seconds, 3)}


@dataclass
class Report:
    title: str
    checks: List[Check] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: Any = None, seconds: float = 0.0) -> Check:
        c = Check(name, bool(passed), detail, seconds)
        self.checks.append(c)
        return c

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.detail, c.seconds))
        self.notes.extend(other.notes)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def as_dict(self) -> Dict[str, Any]:
        return {
            "title": self.title,
            "passed": self.passed,
            "checks": [c.as_dict() for c in self.checks],
            "notes": list(self.notes),
        }
