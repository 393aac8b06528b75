"""Deterministic pass/fail reports shared by all checks."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class Instance:
    key: str
    ok: bool
    witness: str = ""


@dataclass
class Report:
    check: str
    window: dict = field(default_factory=dict)
    instances: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def record(self, key, ok: bool, witness: str = "") -> bool:
        self.instances.append(Instance(str(key), bool(ok), "" if ok else str(witness)))
        return ok

    @property
    def passed(self) -> bool:
        return all(inst.ok for inst in self.instances)

    @property
    def failures(self):
        return [inst for inst in self.instances if not inst.ok]

    def merge(self, other: "Report") -> "Report":
        self.instances.extend(other.instances)
        self.notes.extend(other.notes)
        return self

    def _sorted(self):
        return sorted(self.instances, key=lambda inst: inst.key)

    def lines(self):
        window = " ".join("%s=%s" % (k, self.window[k]) for k in sorted(self.window))
        out = ["# %s [%s]" % (self.check, window)]
        for note in self.notes:
            out.append("#   %s" % note)
        for inst in self._sorted():
            line = "%s %s" % ("PASS" if inst.ok else "FAIL", inst.key)
            if not inst.ok and inst.witness:
                line += " :: residual " + inst.witness
            out.append(line)
        out.append("%s %s (%d instances, %d failed)" % (
            "OK" if self.passed else "FAILED", self.check, len(self.instances), len(self.failures)))
        return out

    def text(self) -> str:
        return "\n".join(self.lines())

    def as_dict(self) -> dict:
        return {
            "check": self.check,
            "window": {k: self.window[k] for k in sorted(self.window)},
            "notes": list(self.notes),
            "passed": self.passed,
            "instances": [
                {"key": i.key, "ok": i.ok, "witness": i.witness} for i in self._sorted()
            ],
        }

    def json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)
