"""Verification reports and their line-oriented text form."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple


@dataclass
class VerificationReport:
    passed: bool
    checked: int
    counterexample: Optional[Tuple[Any, Any, str]] = None
    mode: str = "exhaustive"
    seed: Optional[int] = None
    trials: Optional[int] = None
    notes: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.passed and self.counterexample is not None:
            raise ValueError("a passing report cannot carry a counterexample")

    def __bool__(self) -> bool:
        return self.passed

    @property
    def mode_label(self) -> str:
        if self.mode == "sampled":
            return f"sampled(seed={self.seed},trials={self.trials})"
        return self.mode

    def to_lines(self, fmt=str) -> List[str]:
        lines = [
            f"RESULT {'pass' if self.passed else 'fail'}",
            f"CHECKED {self.checked}",
            f"MODE {self.mode_label}",
        ]
        if self.counterexample is not None:
            x, y, reason = self.counterexample
            lines.append(f"COUNTEREXAMPLE {fmt(x)} {fmt(y)} {reason}")
        for key, value in self.notes.items():
            lines.append(f"NOTE {key}={value}")
        return lines

    def to_text(self, fmt=str) -> str:
        return "\n".join(self.to_lines(fmt)) + "\n"


def merge(reports: List[VerificationReport]) -> VerificationReport:
    """Combine partial reports; the earliest failure (in input order) wins."""
    checked = sum(r.checked for r in reports)
    first = next((r for r in reports if not r.passed), None)
    base = reports[0]
    return VerificationReport(
        passed=first is None,
        checked=checked,
        counterexample=None if first is None else first.counterexample,
        mode=base.mode,
        seed=base.seed,
        trials=base.trials,
    )
