import math
from enum import Enum
from typing import Any, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class Verdict(str, Enum):
    PASS = "Pass"
    FAIL = "Fail"
    INCONCLUSIVE = "Inconclusive"


class Check(BaseModel):
    """One gate of a suite: the observed value, the gate it was held to and the outcome."""
    model_config = ConfigDict(populate_by_name=True)

    name: str
    value: Optional[float] = None
    gate: str
    passed: bool = Field(alias="pass")
    derivation: str = ""


class VerificationReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    suite: str
    params: dict[str, Any] = Field(default_factory=dict)
    metrics: dict[str, Any] = Field(default_factory=dict)
    verdict: Verdict
    checks: list[Check] = Field(default_factory=list)
    reports: Optional[list["VerificationReport"]] = None

    @classmethod
    def from_checks(cls, suite: str, params: dict, metrics: dict, checks: list[Check]) -> "VerificationReport":
        verdict = Verdict.PASS if checks and all(c.passed for c in checks) else Verdict.FAIL
        return cls(suite=suite, params=params, metrics=metrics, verdict=verdict, checks=checks)

    @classmethod
    def inconclusive(cls, suite: str, params: dict, reason: str) -> "VerificationReport":
        return cls(suite=suite, params=params, metrics={"reason": reason}, verdict=Verdict.INCONCLUSIVE)

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, exclude_none=True, indent=2)


class PhiKind(str, Enum):
    POWER = "power"
    NLOGPOW = "nlogpow"
    CONSTANT = "constant"
    CUSTOM = "custom"


class PhiFunction(BaseModel):
    """
    Threshold function for exceedance counts.

    power:a is n^a, nlogpow:alpha is n (log max(n, 3))^alpha, constant:c
    is c, and custom:v1,v2,... gives phi(n) = v_n with the last value
    repeated past the table.
    """
    model_config = ConfigDict(frozen=True)

    kind: PhiKind
    param: float = 1.0
    table: tuple[float, ...] = ()

    @model_validator(mode="after")
    def _strictly_positive(self) -> "PhiFunction":
        if self.kind == PhiKind.CONSTANT and self.param <= 0:
            raise ValueError(f"constant phi must be positive, got {self.param}")
        if self.kind == PhiKind.CUSTOM:
            if not self.table:
                raise ValueError("custom phi needs at least one value")
            if any(v <= 0 for v in self.table):
                raise ValueError("custom phi values must be positive")
        return self

    @classmethod
    def parse(cls, text: str) -> "PhiFunction":
        kind_text, _, rest = text.strip().partition(":")
        try:
            kind = PhiKind(kind_text.strip().lower())
        except ValueError:
            raise ValueError(f"Unknown phi kind {kind_text!r}, expected one of "
                             f"{', '.join(k.value for k in PhiKind)}")
        try:
            if kind == PhiKind.CUSTOM:
                return cls(kind=kind, table=tuple(float(v) for v in rest.split(",")))
            return cls(kind=kind, param=float(rest) if rest.strip() else 1.0)
        except ValueError as e:
            raise ValueError(f"Invalid phi {text!r}: {e}")

    def describe(self) -> str:
        if self.kind == PhiKind.CUSTOM:
            return "custom:" + ",".join(repr(v) for v in self.table)
        return f"{self.kind.value}:{self.param:g}"

    def log_values(self, n: np.ndarray) -> np.ndarray:
        """log phi(n) for 1-based n."""
        n = np.asarray(n, dtype=np.float64)
        if self.kind == PhiKind.POWER:
            return self.param * np.log(n)
        if self.kind == PhiKind.NLOGPOW:
            return np.log(n) + self.param * np.log(np.log(np.maximum(n, 3.0)))
        if self.kind == PhiKind.CONSTANT:
            return np.full(n.shape, math.log(self.param))
        table = np.log(np.asarray(self.table, dtype=np.float64))
        index = np.minimum(n.astype(np.int64), len(table)) - 1
        return table[index]

    def __call__(self, n: np.ndarray) -> np.ndarray:
        return np.exp(self.log_values(n))

    def series_diverges(self) -> bool:
        """Whether the sum of 1/phi(n) over n >= 1 is infinite."""
        if self.kind in (PhiKind.POWER, PhiKind.NLOGPOW):
            return self.param <= 1
        return True
