"""Value types of the verification app."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from hamsys import settings


@dataclass(frozen=True)
class Check:
    """One measured quantity against its tolerance; it passes when ``value <= tolerance``."""

    name: str
    value: float
    tolerance: float

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))
        object.__setattr__(self, "tolerance", float(self.tolerance))

    @property
    def passed(self) -> bool:
        return bool(self.value <= self.tolerance)

    def to_dict(self) -> dict:
        return {"name": self.name, "value": self.value, "tolerance": self.tolerance, "passed": self.passed}

    def as_line(self, digits: int = settings.HUMAN_DIGITS) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag:<5} {self.name:<28} {self.value:>{digits + 8}.{digits}g} {self.tolerance:>{digits + 8}.{digits}g}"


@dataclass(frozen=True)
class VerificationReport:
    """A named list of checks; the report passes when every check does.

    ``summary`` carries plain numbers about the subject (levels, their spread)
    that are reported but not judged.
    """

    subject: str
    checks: tuple[Check, ...]
    summary: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "checks", tuple(self.checks))

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> list[str]:
        return [check.name for check in self.checks if not check.passed]

    def __getitem__(self, name: str) -> Check:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "checks": [check.to_dict() for check in self.checks],
            "summary": dict(self.summary),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def as_table(self, digits: int = settings.HUMAN_DIGITS) -> str:
        width = digits + 8
        lines = [f"{self.subject}", f"{'':<5} {'check':<28} {'value':>{width}} {'tolerance':>{width}}"]
        lines += [check.as_line(digits) for check in self.checks]
        lines += [f"  {key} = {value:.{digits}g}" for key, value in sorted(self.summary.items())]
        lines.append("overall: " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines)
