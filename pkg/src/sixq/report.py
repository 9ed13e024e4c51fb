"""Structured reports: checks plus payload, serialized as JSON with floats at
17 significant digits."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np


@dataclass
class Check:
    name: str
    passed: bool
    value: float
    tolerance: float
    detail: str = ""

    def to_dict(self) -> dict:
        d = {"name": self.name, "passed": self.passed, "value": self.value, "tolerance": self.tolerance}
        if self.detail:
            d["detail"] = self.detail
        return d


@dataclass
class Report:
    command: str
    config: dict
    checks: list[Check] = field(default_factory=list)
    data: dict = field(default_factory=dict)
    discrepancies: list[dict] = field(default_factory=list)
    timestamp: str | None = None

    def check(self, name: str, value: float, tolerance: float, passed: bool | None = None, detail: str = "") -> Check:
        """Record a check; by default it passes when ``value <= tolerance``."""
        value = float(value)
        ok = value <= tolerance if passed is None else bool(passed)
        c = Check(name, ok, value, float(tolerance), detail)
        self.checks.append(c)
        return c

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        d = {
            "command": self.command,
            "config": self.config,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "discrepancies": self.discrepancies,
            "data": self.data,
        }
        if self.timestamp is not None:
            d["timestamp"] = self.timestamp
        return d

    def quiet_lines(self) -> str:
        return "".join(f"{'PASS' if c.passed else 'FAIL'} {c.name}\n" for c in self.checks)


def _encode(obj, indent: int, level: int) -> str:
    pad = "\n" + " " * (indent * (level + 1))
    end = "\n" + " " * (indent * level)
    if isinstance(obj, (bool, np.bool_)) or obj is None:
        return json.dumps(bool(obj) if obj is not None else None)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return "null"
        return format(x, ".17g")
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{" + pad + ("," + pad).join(items) + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        if all(isinstance(x, (int, float, np.number, bool)) for x in obj):
            return "[" + ", ".join(_encode(x, indent, level + 1) for x in obj) + "]"
        return "[" + pad + ("," + pad).join(_encode(x, indent, level + 1) for x in obj) + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    """JSON text; every float is written with 17 significant digits."""
    return _encode(obj, indent, 0) + "\n"


def complex_matrix(m) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]
