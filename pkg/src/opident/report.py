"""Structured result record for every check the engine runs.

A report carries the check id, its parameters, one of four outcomes, and an
optional rendered witness.  ``ZERO``/``NONZERO`` describe what an identity
evaluation produced; ``PASS``/``FAIL`` describe composite checks.  The
``ok`` flag separates what happened from what was asserted: True/False for
asserted checks, None for purely informational rows (the JSON rendering
keeps only the schema-stable fields and omits ``ok``).
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass

ZERO = "ZERO"
NONZERO = "NONZERO"
PASS = "PASS"
FAIL = "FAIL"


@dataclass
class VerificationReport:
    check_id: str
    params: dict
    outcome: str
    witness: str | None = None
    wall_time_ms: float = 0.0
    ok: bool | None = None

    def __post_init__(self):
        if self.outcome not in (ZERO, NONZERO, PASS, FAIL):
            raise ValueError(f"unknown outcome {self.outcome!r}")
        if (self.witness is not None) != (self.outcome in (NONZERO, FAIL)):
            raise ValueError(
                "witness must be present exactly when the outcome is NONZERO or FAIL"
            )

    def to_dict(self) -> dict:
        out = {
            "check_id": self.check_id,
            "params": self.params,
            "outcome": self.outcome,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        out["wall_time_ms"] = self.wall_time_ms
        return out


def reports_to_json(reports) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2)


def all_asserted_ok(reports) -> bool:
    return all(r.ok is not False for r in reports)


class Stopwatch:
    """Context manager measuring wall time in milliseconds; ``ms`` may be
    read while still inside the block."""

    def __enter__(self):
        self._t0 = time.perf_counter()
        self._ms = None
        return self

    def __exit__(self, *exc):
        self._ms = (time.perf_counter() - self._t0) * 1000.0
        return False

    @property
    def ms(self) -> float:
        if self._ms is not None:
            return self._ms
        return (time.perf_counter() - self._t0) * 1000.0
