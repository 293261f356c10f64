"""Pass/fail reports for the check harnesses."""

from __future__ import annotations

from dataclasses import dataclass, field

MAX_WITNESSES = 50


@dataclass
class Report:
    """Counts checks and keeps the first few failure witnesses."""
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    n_failed: int = 0

    @property
    def ok(self) -> bool:
        return self.n_failed == 0

    def check(self, cond: bool, witness) -> bool:
        self.checked += 1
        if not cond:
            self.n_failed += 1
            if len(self.failures) < MAX_WITNESSES:
                self.failures.append(witness)
        return cond

    def merge(self, other: "Report") -> "Report":
        self.checked += other.checked
        self.n_failed += other.n_failed
        room = MAX_WITNESSES - len(self.failures)
        self.failures.extend(other.failures[:max(room, 0)])
        return self

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: {self.checked} checked, {self.n_failed} failed"
