"""Line-oriented pass/fail reports shared by the verification routines."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    title: str
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    def expect(self, name: str, cond: bool, detail: str = "") -> bool:
        self.checks.append((name, bool(cond), detail))
        return bool(cond)

    def note(self, name: str, detail: str = "") -> None:
        self.checks.append((name, True, detail))

    def merge(self, other: "Report") -> None:
        for name, ok, detail in other.checks:
            self.checks.append((f"{other.title}.{name}", ok, detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def lines(self) -> list[str]:
        out = []
        for name, ok, detail in self.checks:
            status = "pass" if ok else "FAIL"
            line = f"  [{status}] {name}"
            if detail:
                line += f": {detail}"
            out.append(line)
        return out

    def __str__(self) -> str:
        head = f"{self.title}: {'pass' if self.ok else 'FAIL'}"
        return "\n".join([head] + self.lines())
