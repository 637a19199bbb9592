"""Verification reports: an ordered list of named check outcomes."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional

PASS = "pass"
FAIL = "fail"
CERTIFICATE = "certificate"
WITNESS = "witness"

OK_STATUSES = frozenset({PASS, CERTIFICATE})


@dataclass
class Check:
    check: str
    parameters: Dict[str, Any]
    status: str
    witness: Optional[Dict[str, Any]] = None

    @property
    def ok(self) -> bool:
        return self.status in OK_STATUSES

    def to_json(self) -> dict:
        out = {"check": self.check, "parameters": self.parameters, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class VerificationReport:
    checks: List[Check] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def add(self, check: str, ok: bool, witness: Optional[dict] = None, **parameters) -> Check:
        c = Check(check, parameters, PASS if ok else FAIL, None if ok else witness)
        self.checks.append(c)
        return c

    def record(self, check: str, status: str, witness: Optional[dict] = None, **parameters) -> Check:
        c = Check(check, parameters, status, witness)
        self.checks.append(c)
        return c

    def extend(self, other: "VerificationReport") -> "VerificationReport":
        self.checks.extend(other.checks)
        self.notes.extend(other.notes)
        return self

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.ok]

    def named(self, prefix: str) -> List[Check]:
        return [c for c in self.checks if c.check.startswith(prefix)]

    def summary(self) -> Dict[str, Dict[str, int]]:
        """Per check name, how many instances ended in each status."""
        out: Dict[str, Dict[str, int]] = {}
        for c in self.checks:
            bucket = out.setdefault(c.check, {})
            bucket[c.status] = bucket.get(c.status, 0) + 1
        return out

    def to_json(self, *, verbose: bool = False) -> dict:
        """Passing instances are folded into the summary unless ``verbose``."""
        shown: Iterable[Check] = self.checks if verbose else [c for c in self.checks if c.status != PASS]
        return {
            "ok": self.ok,
            "summary": self.summary(),
            "checks": [c.to_json() for c in shown],
            "notes": list(self.notes),
        }


def digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def dumps(obj: Any) -> str:
    """Byte-stable JSON text."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"
