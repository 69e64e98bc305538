"""DeficitReport: one evaluated inequality and its serialization."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
VACUOUS = "vacuous"
BOUND_ONLY = "bound_only"
HYPOTHESIS_NOT_MET = "hypothesis_not_met"

CSV_FIELDS = ("body_id", "n", "k", "alpha", "lhs", "rhs", "margin", "status")


def pass_tolerance(lhs: float) -> float:
    return 1e-10 * max(1.0, abs(lhs))


def classify(lhs: float, rhs: float, alpha: float | None, *, tol: float | None = None) -> str:
    """pass/fail/vacuous for a claimed inequality ``lhs >= rhs``."""
    if alpha is not None and alpha == 0.0 and abs(lhs) <= 1e-8 and abs(rhs) <= 1e-12:
        return VACUOUS
    tol = pass_tolerance(lhs) if tol is None else tol
    return PASS if lhs - rhs >= -tol else FAIL


@dataclass
class DeficitReport:
    name: str
    lhs: float
    rhs: float
    status: str
    n: int | None = None
    k: int | None = None
    alpha: float | None = None
    body_id: str | None = None
    constants: dict[str, float] = field(default_factory=dict)
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def margin(self) -> float:
        return self.lhs - self.rhs

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def row(self) -> dict[str, Any]:
        return {
            "body_id": self.body_id,
            "n": self.n,
            "k": self.k,
            "alpha": self.alpha,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "status": self.status,
        }

    def to_json(self) -> dict[str, Any]:
        out = {"name": self.name, **self.row(), "constants": dict(self.constants)}
        return {k: _json_number(v) for k, v in out.items()}


def fmt(x) -> str:
    """17 significant digits (binary64 round trip) for floats, str otherwise."""
    if isinstance(x, float):
        return format(x, ".17g")
    if x is None:
        return ""
    return str(x)


def _json_number(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    if isinstance(v, dict):
        return {k: _json_number(x) for k, x in v.items()}
    return v
