from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, model_validator

from sengel.numerics.rational import Rational


class StopReason(str, Enum):
    TERMINATED = "terminated"
    MAX_DIGITS = "max_digits"
    PRECISION_EXHAUSTED = "precision_exhausted"


class SignedEngelExpansion(BaseModel):
    """
    Digits d_1..d_n with step signs s_1..s_{n-1} and cumulative signs
    eps_1..eps_n, eps_1 = 1 and eps_{k+1} = eps_k * s_k.
    """
    model_config = ConfigDict(frozen=True)

    digits: list[int]
    step_signs: list[int]
    cum_signs: list[int]
    terminated: bool
    certified_prefix_len: int
    stop_reason: StopReason

    @model_validator(mode="after")
    def _check_structure(self) -> "SignedEngelExpansion":
        n = len(self.digits)
        if len(self.cum_signs) != n or len(self.step_signs) != max(n - 1, 0):
            raise ValueError(
                f"Length mismatch: {n} digits, {len(self.step_signs)} step signs, {len(self.cum_signs)} cumulative signs")
        if n == 0:
            return self
        if self.cum_signs[0] != 1:
            raise ValueError("First cumulative sign must be +1")
        if self.digits[0] < 2:
            raise ValueError(f"First digit must be >= 2, got {self.digits[0]}")
        for k, s in enumerate(self.step_signs):
            if s not in (1, -1):
                raise ValueError(f"Step sign must be +1 or -1, got {s}")
            if self.cum_signs[k + 1] != self.cum_signs[k] * s:
                raise ValueError(f"Cumulative sign {k + 2} does not match step sign {k + 1}")
            gap = 2 if s == -1 else 0
            if self.digits[k + 1] < self.digits[k] + gap:
                raise ValueError(
                    f"Digit {k + 2} = {self.digits[k + 1]} too small after {self.digits[k]} with step sign {s}")
        for k, d in enumerate(self.digits[:-1]):
            if d % 2 != 0:
                raise ValueError(f"Odd digit {d} at position {k + 1} before the last digit")
        if not self.terminated and self.digits[-1] % 2 != 0:
            raise ValueError("An odd digit must end a terminated expansion")
        return self

    @classmethod
    def from_digits(cls, digits: list[int], cum_signs: list[int]) -> "SignedEngelExpansion":
        """Assemble a finite expansion from digits and cumulative signs."""
        step_signs = [cum_signs[k + 1] * cum_signs[k] for k in range(len(cum_signs) - 1)]
        terminated = bool(digits) and digits[-1] % 2 != 0
        return cls(
            digits=list(digits),
            step_signs=step_signs,
            cum_signs=list(cum_signs),
            terminated=terminated,
            certified_prefix_len=len(digits),
            stop_reason=StopReason.TERMINATED if terminated else StopReason.MAX_DIGITS,
        )

    def __len__(self) -> int:
        return len(self.digits)


class DerivedSequences(BaseModel):
    model_config = ConfigDict(frozen=True)

    gaps: list[int]
    ratios: list[Rational]
    running_max: list[Rational]
    y_values: Optional[list[Rational]] = None
    Y_values: list[int]
    U_values: list[int]
