"""Validation reports: ordered lists of findings with stable locations."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Finding:
    """One violated law instance. `where` is a stable location path,
    `message` says what failed, `data` holds the evaluated evidence
    (already serialized to JSON-safe values)."""

    where: str
    message: str
    data: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {"where": self.where, "message": self.message}
        if self.data:
            out["data"] = self.data
        return out


class ValidationReport:
    """Accumulates findings in sweep order; empty means every check passed."""

    def __init__(self, findings=None):
        self.findings: list[Finding] = list(findings or [])

    @property
    def ok(self) -> bool:
        return not self.findings

    def __bool__(self) -> bool:  # truthy when clean, like a predicate
        return self.ok

    def __len__(self) -> int:
        return len(self.findings)

    def __iter__(self):
        return iter(self.findings)

    def add(self, where: str, message: str, **data) -> None:
        self.findings.append(Finding(where, message, dict(data)))

    def extend(self, other: "ValidationReport", prefix: str = "") -> None:
        for f in other.findings:
            where = f"{prefix}{f.where}" if prefix else f.where
            self.findings.append(Finding(where, f.message, f.data))

    def to_list(self) -> list[dict]:
        return [f.to_dict() for f in self.findings]

    def summary(self) -> str:
        if self.ok:
            return "ok"
        head = "; ".join(f"{f.where}: {f.message}" for f in self.findings[:3])
        more = len(self.findings) - 3
        return head + (f" (+{more} more)" if more > 0 else "")

    def __repr__(self):
        return f"ValidationReport({len(self.findings)} findings)"
