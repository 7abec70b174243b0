"""Machine-readable certificate reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

REPORT_VERSION = 1


def _jsonable(value):
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return int(value)
        return str(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in value]
        if isinstance(value, (set, frozenset)):
            items = sorted(items, key=repr)
        return items
    if isinstance(value, (bool, int, float, str)) or value is None:
        return value
    return repr(value)


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str          # "pass" | "fail" | "skip" | "info"
    citation: str        # which structural claim this certifies
    witness: object
    millis: float

    def to_dict(self, timings=True):
        out = {
            "name": self.name,
            "status": self.status,
            "citation": self.citation,
            "witness": _jsonable(self.witness),
        }
        out["millis"] = self.millis if timings else 0.0
        return out


@dataclass
class CertificateReport:
    config: dict
    checks: list = field(default_factory=list)

    def add(self, result):
        self.checks.append(result)

    def merge(self, other):
        self.checks.extend(other.checks)

    def passed(self):
        return all(c.status != "fail" for c in self.checks)

    def to_dict(self, timings=True):
        return {
            "version": REPORT_VERSION,
            "config": _jsonable(self.config),
            "checks": [c.to_dict(timings=timings) for c in self.checks],
        }

    def to_json(self, timings=True):
        return json.dumps(self.to_dict(timings=timings), indent=2,
                          sort_keys=True) + "\n"

    def text_lines(self):
        lines = []
        width = max((len(c.name) for c in self.checks), default=0)
        for c in self.checks:
            lines.append(f"{c.name.ljust(width)}  {c.status.upper():4}  "
                         f"[{c.citation}]  {c.millis:.1f} ms")
        verdict = "OK" if self.passed() else "FAILED"
        lines.append(f"overall: {verdict} ({len(self.checks)} checks)")
        return lines
