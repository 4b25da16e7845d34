"""Structured pass/fail reports shared by all verifiers."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    ok: bool
    witness: str = ""

    def line(self) -> str:
        mark = "✓" if self.ok else "✗"
        if self.witness:
            return "%s %s: %s" % (mark, self.name, self.witness)
        return "%s %s" % (mark, self.name)


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, name: str, ok: bool, witness: str = "") -> None:
        self.checks.append(Check(name, bool(ok), witness))

    def add_witnessed(self, name: str, failures: list, verbose: bool = False) -> None:
        """Record a check from a list of failing-witness strings.

        Only the first witness is kept unless verbose is set.
        """
        if not failures:
            self.checks.append(Check(name, True))
        elif verbose:
            self.checks.append(Check(name, False, "; ".join(failures)))
        else:
            extra = "" if len(failures) == 1 else " (+%d more)" % (len(failures) - 1)
            self.checks.append(Check(name, False, failures[0] + extra))

    def note(self, text: str) -> None:
        self.notes.append(text)

    def merge(self, sub: "Report", prefix: str = "") -> None:
        for c in sub.checks:
            name = prefix + c.name if prefix else c.name
            self.checks.append(Check(name, c.ok, c.witness))
        for n in sub.notes:
            self.notes.append(prefix + n if prefix else n)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.ok]

    def render(self) -> str:
        bar = "=" * 72
        lines = [bar, self.title, bar]
        for c in self.checks:
            lines.append(c.line())
        for n in self.notes:
            lines.append("note: %s" % n)
        lines.append("RESULT: %s (%d/%d checks)" % ("PASS" if self.ok else "FAIL", sum(1 for c in self.checks if c.ok), len(self.checks)))
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "ok": self.ok,
            "checks": [{"name": c.name, "ok": c.ok, "witness": c.witness} for c in self.checks],
            "notes": list(self.notes),
        }
