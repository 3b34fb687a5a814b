"""Pass/fail reports produced by the verifiers."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    passed: bool
    counterexample: tuple | None = None
    note: str = ""

    def to_dict(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "counterexample": list(self.counterexample) if self.counterexample is not None else None,
            "note": self.note,
        }


@dataclass
class VerificationReport:
    """Ordered collection of named checks, each with its first counterexample."""

    subject: str
    checks: list = field(default_factory=list)

    def add(self, name, counterexample=None, note=""):
        self.checks.append(Check(name, counterexample is None, counterexample, note))

    def extend(self, other):
        self.checks.extend(other.checks)
        return self

    @property
    def ok(self):
        return all(c.passed for c in self.checks)

    def __bool__(self):
        return self.ok

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name):
        return any(c.name == name for c in self.checks)

    @property
    def failures(self):
        return [c for c in self.checks if not c.passed]

    def to_dict(self):
        return {"subject": self.subject, "ok": self.ok, "checks": [c.to_dict() for c in self.checks]}

    def __str__(self):
        width = max((len(c.name) for c in self.checks), default=4)
        lines = [f"{self.subject}: {'PASS' if self.ok else 'FAIL'}"]
        for c in self.checks:
            line = f"  {c.name:<{width}}  {'pass' if c.passed else 'FAIL'}"
            if c.counterexample is not None:
                line += f"  counterexample={tuple(c.counterexample)}"
            if c.note:
                line += f"  ({c.note})"
            lines.append(line)
        return "\n".join(lines)
