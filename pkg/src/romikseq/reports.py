"""Structured verdicts returned by every verifier and scanner.

All three report types serialise to one JSON layout::

    {kind, check_id, params, status, claimed: {start, period},
     observed: {start, period}, witness, details, elapsed_ms}

Sequence values inside ``witness``/``details`` are decimal strings; indices and
small parameters stay JSON numbers.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any


class Status(str, Enum):
    VERIFIED = "verified"  # verified to the horizon, never "proved"
    CONSISTENT = "consistent"  # conjecture scan found no counterexample
    DOCUMENTED_EXCEPTION = "documented-exception"
    COUNTEREXAMPLE = "counterexample"
    INCONCLUSIVE = "inconclusive"


_SAFE_INT = 2**53  # larger integers would lose digits in most JSON readers


def _jsonable(x: Any) -> Any:
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, Enum):
        return x.value
    if isinstance(x, int):
        return x if abs(x) < _SAFE_INT else str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return str(x)


@dataclass
class CheckReport:
    check_id: str
    params: dict
    status: Status
    witness: dict | None = None
    claimed: dict = field(default_factory=dict)
    observed: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    elapsed_ms: int | None = None

    kind = "check"

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "check_id": self.check_id,
            "params": _jsonable(self.params),
            "status": self.status.value,
            "claimed": _jsonable(self.claimed),
            "observed": _jsonable(self.observed),
            "witness": _jsonable(self.witness),
            "details": _jsonable(self.details),
            "elapsed_ms": self.elapsed_ms,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CheckReport":
        return cls(
            check_id=d["check_id"],
            params=d["params"],
            status=Status(d["status"]),
            witness=d.get("witness"),
            claimed=d.get("claimed", {}),
            observed=d.get("observed", {}),
            details=d.get("details", {}),
            elapsed_ms=d.get("elapsed_ms"),
        )

    @property
    def ok(self) -> bool:
        return self.status in (Status.VERIFIED, Status.CONSISTENT, Status.DOCUMENTED_EXCEPTION)


@dataclass
class PeriodReport(CheckReport):
    """Periodicity verdict; ``claimed`` holds start/period, ``observed`` the minimal ones."""

    kind = "period"

    @property
    def modulus(self) -> int:
        return int(self.params["modulus"])

    @property
    def horizon(self) -> int:
        return int(self.params["horizon"])

    @property
    def start(self) -> int | None:
        return self.claimed.get("start")

    @property
    def period(self) -> int | None:
        return self.claimed.get("period")


@dataclass
class VanishReport(CheckReport):
    kind = "vanish"

    @property
    def claimed_start(self) -> int | None:
        return self.claimed.get("start")

    @property
    def observed_start(self) -> int | None:
        return self.observed.get("start")

    @property
    def horizon(self) -> int:
        return int(self.params["horizon"])


_KINDS = {cls.kind: cls for cls in (CheckReport, PeriodReport, VanishReport)}


def report_from_dict(d: dict) -> CheckReport:
    return _KINDS[d.get("kind", "check")].from_dict(d)


def _param_key(v: Any) -> tuple:
    if isinstance(v, int) and not isinstance(v, bool):
        return (0, v, "")
    return (1, 0, json.dumps(_jsonable(v), sort_keys=True))


def canonical_key(report: CheckReport) -> tuple:
    """Sort by check id, then parameters by name, integers numerically."""
    return (report.check_id, tuple((k, _param_key(v)) for k, v in sorted(report.params.items())))


def dumps_reports(reports: list[CheckReport]) -> str:
    """Canonically ordered, byte-stable JSON for a list of reports."""
    ordered = sorted(reports, key=canonical_key)
    return json.dumps([r.to_dict() for r in ordered], indent=2, sort_keys=True) + "\n"


def loads_reports(text: str) -> list[CheckReport]:
    return [report_from_dict(d) for d in json.loads(text)]
