from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    obj: str
    ok: bool
    residue: str | None = None

    def line(self) -> str:
        if self.ok:
            return f"OK {self.obj}"
        return f"FAIL {self.obj} residue={self.residue}"


@dataclass
class Report:
    """Outcome of a verification sweep: one Check per object examined."""

    title: str
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add(self, obj: str, ok: bool, residue=None) -> bool:
        self.checks.append(Check(obj, ok, None if residue is None else str(residue)))
        return ok

    def extend(self, other: Report) -> None:
        self.checks.extend(other.checks)
        self.notes.extend(other.notes)

    @property
    def passed(self) -> int:
        return sum(c.ok for c in self.checks)

    @property
    def failed(self) -> int:
        return len(self.checks) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    @property
    def first_failure(self) -> Check | None:
        for c in self.checks:
            if not c.ok:
                return c
        return None

    def summary(self) -> str:
        return f"{self.title}: {len(self.checks)} checks, {self.passed} passed, {self.failed} failed"

    def lines(self, failures_only: bool = False) -> list[str]:
        out = [f"== {self.title} =="]
        out += [f"# {n}" for n in self.notes]
        out += [c.line() for c in self.checks if not (failures_only and c.ok)]
        out.append(self.summary())
        return out

    def __str__(self) -> str:
        return "\n".join(self.lines())
