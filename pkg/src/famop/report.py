"""Uniform pass/fail reports for exhaustive law checks."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class LawReport:
    """Outcome of checking a family of laws.

    ``witnesses`` holds one ``(law_id, args)`` entry per violation found;
    ``passed`` is true exactly when it is empty.  ``details`` carries
    check-specific counters (instances scanned, case partitions, ...).
    """

    kind: str
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.witnesses

    def add(self, law_id: str, args) -> None:
        self.witnesses.append((law_id, tuple(args)))

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "passed": self.passed,
            "witnesses": [{"law": law, "args": list(args)} for law, args in self.witnesses],
        }
        out.update(self.details)
        return out

    def __bool__(self) -> bool:
        return self.passed
