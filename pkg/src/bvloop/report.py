from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field


@dataclass
class Check:
    id: str
    status: str
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass
class VerificationReport:
    """Named list of pass/fail checks; the report fails iff any check fails."""

    suite: str
    space: str
    checks: list[Check] = field(default_factory=list)
    parameters: dict = field(default_factory=dict)

    def add(self, check_id: str, ok: bool, detail: str = "") -> Check:
        check = Check(check_id, "pass" if ok else "fail", detail)
        self.checks.append(check)
        return check

    def extend(self, other: VerificationReport, prefix: str | None = None) -> VerificationReport:
        for c in other.checks:
            cid = f"{prefix}.{c.id}" if prefix else c.id
            self.checks.append(Check(cid, c.status, c.detail))
        for k, v in other.parameters.items():
            self.parameters.setdefault(k, v)
        return self

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["status"] = self.status
        return d

    @classmethod
    def from_dict(cls, d: dict) -> VerificationReport:
        return cls(d["suite"], d["space"], [Check(**c) for c in d["checks"]], dict(d.get("parameters", {})))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> VerificationReport:
        return cls.from_dict(json.loads(text))

    def render(self) -> str:
        lines = [f"[{self.status.upper()}] suite={self.suite} space={self.space}"]
        for c in self.checks:
            lines.append(f"  {c.status:4}  {c.id}: {c.detail}" if c.detail else f"  {c.status:4}  {c.id}")
        return "\n".join(lines)
