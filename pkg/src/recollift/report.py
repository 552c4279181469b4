"""Check records, reports and their JSON / markdown rendering."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from . import __version__
from .algebra import Algebra
from .modules import Module


@dataclass
class CheckRecord:
    name: str
    passed: bool
    samples: int = 0
    mode: str = "exact"
    scope: str = ""
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "mode": self.mode,
            "scope": self.scope,
            "samples": self.samples,
            "pass": self.passed,
            "witnesses": self.witnesses,
            "details": self.details,
        }


def module_to_json(m: Module) -> dict:
    return {"algebra": m.algebra.name, "dim": m.dim, "name": m.name, "action": m.action.tolist()}


def module_from_json(d: dict, a: Algebra) -> Module:
    dim = int(d["dim"])
    action = np.asarray(d["action"], dtype=np.int64).reshape(a.dim, dim, dim)
    return Module(a, action, d.get("name", "")).check()


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def digest(obj: Any) -> str:
    return hashlib.sha256(canonical_json(obj).encode("utf-8")).hexdigest()


@dataclass
class Report:
    command: str
    input: dict
    checks: list = field(default_factory=list)
    info: dict = field(default_factory=dict)
    error: Optional[str] = None

    @property
    def verdict(self) -> str:
        if self.error is not None:
            return "error"
        if not self.checks:
            return "no-checks"
        return "pass" if all(c.passed for c in self.checks) else "fail"

    @property
    def exit_code(self) -> int:
        return {"pass": 0, "fail": 1}.get(self.verdict, 2)

    def add(self, rec: CheckRecord) -> CheckRecord:
        self.checks.append(rec)
        return rec

    def as_dict(self) -> dict:
        out = {
            "version": __version__,
            "command": self.command,
            "input": self.input,
            "input_digest": digest(self.input),
            "verdict": self.verdict,
            "checks": [c.as_dict() for c in self.checks],
            "info": self.info,
        }
        if self.error is not None:
            out["error"] = self.error
        return out

    def to_json(self) -> str:
        return json.dumps(_plain(self.as_dict()), sort_keys=True, indent=2) + "\n"

    def to_markdown(self) -> str:
        d = _plain(self.as_dict())
        lines = [f"# {d['command']}", "", f"- version: {d['version']}", f"- input digest: `{d['input_digest']}`"]
        lines.append(f"- verdict: **{d['verdict']}**")
        if "error" in d:
            lines.append(f"- error: {d['error']}")
        lines.append("")
        if d["info"]:
            lines += ["## Results", ""]
            for k in sorted(d["info"]):
                lines.append(f"- {k}: `{canonical_json(d['info'][k])}`")
            lines.append("")
        if d["checks"]:
            lines += ["## Checks", "", "| check | mode | samples | result | scope |", "|---|---|---|---|---|"]
            for c in d["checks"]:
                res = "pass" if c["pass"] else "FAIL"
                lines.append(f"| {c['name']} | {c['mode']} | {c['samples']} | {res} | {c['scope']} |")
            lines.append("")
            for c in d["checks"]:
                if c["witnesses"]:
                    lines += [f"### Witnesses for {c['name']}", ""]
                    for w in c["witnesses"]:
                        summary = {k: v for k, v in w.items() if k != "modules"}
                        lines.append(f"- `{canonical_json(summary)}`")
                    lines.append("")
        return "\n".join(lines)

    def emit(self, fmt: str = "json") -> str:
        return self.to_json() if fmt == "json" else self.to_markdown()


def _plain(obj):
    """Convert numpy scalars and arrays into JSON-native values."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj
