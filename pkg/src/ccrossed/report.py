"""Validation reports and the exception types shared across the package."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable


class StructureError(ValueError):
    """Malformed input: a table is not total, an id is unknown, an endpoint is wrong."""


class ConstructionError(ValueError):
    """A construction's precondition does not hold for the given input."""


class SearchNotAttempted(RuntimeError):
    """Raised when a brute-force search is asked to run above its size cap."""


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witness: tuple | None = None
    note: str = ""

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {"name": self.name, "passed": self.passed}
        if self.witness is not None:
            d["witness"] = list(self.witness)
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class ValidationReport:
    """Ordered list of named checks; passes iff every check passes."""

    subject: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.passed

    def add(self, name: str, witness: tuple | None = None, *, passed: bool | None = None,
            note: str = "") -> Check:
        """Append a check. By default it passes iff no witness is given."""
        if passed is None:
            passed = witness is None
        check = Check(name, passed, witness, note)
        self.checks.append(check)
        return check

    def check_all(self, name: str, cases: Iterable[tuple[bool, tuple]], note: str = "") -> Check:
        """Record ``name`` as failing at the first case whose flag is false."""
        for ok, witness in cases:
            if not ok:
                return self.add(name, tuple(witness), note=note)
        return self.add(name, None, note=note)

    def merge(self, other: "ValidationReport", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.witness, c.note))

    def get(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict[str, Any]:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }

    def format(self) -> str:
        lines = [f"{self.subject}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            line = f"  [{mark}] {c.name}"
            if c.witness is not None:
                line += f"  witness={c.witness!r}"
            if c.note:
                line += f"  ({c.note})"
            lines.append(line)
        return "\n".join(lines)

    def __str__(self) -> str:
        return self.format()
