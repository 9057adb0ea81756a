"""Verification reports and JSON conversion of exact values."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


def jsonable(value: Any) -> Any:
    """Convert exact values into JSON-friendly data.

    Rationals become "num/den" strings, tuples become lists and objects with a
    ``to_json`` method are asked to convert themselves.
    """
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    if isinstance(value, (int, float, str)):
        return value
    if hasattr(value, "to_json"):
        return value.to_json()
    if isinstance(value, dict):
        return {_key(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return str(value)


def _key(k: Any) -> str:
    if isinstance(k, str):
        return k
    return json.dumps(jsonable(k), separators=(",", ":"))


@dataclass
class Check:
    input: Any
    expected: Any
    got: Any
    passed: bool

    def to_json(self) -> dict[str, Any]:
        return {
            "input": jsonable(self.input),
            "expected": jsonable(self.expected),
            "got": jsonable(self.got),
            "pass": self.passed,
        }


@dataclass
class Report:
    theorem: str
    parameters: dict[str, Any] = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)

    def add(self, input: Any, expected: Any, got: Any, passed: bool | None = None) -> bool:
        if passed is None:
            passed = expected == got
        self.checks.append(Check(input, expected, got, bool(passed)))
        return bool(passed)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.ok

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def first_failure(self) -> Check | None:
        bad = self.failures
        return bad[0] if bad else None

    def extend(self, other: "Report") -> None:
        self.checks.extend(other.checks)

    def to_json(self) -> dict[str, Any]:
        return {
            "theorem": self.theorem,
            "parameters": jsonable(self.parameters),
            "pass": self.ok,
            "checks": [c.to_json() for c in self.checks],
        }

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.theorem}: {len(self.checks) - len(self.failures)}/{len(self.checks)} checks"
