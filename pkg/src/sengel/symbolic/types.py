from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict

from sengel.errors import Malformed, ParseError
from sengel.expansion.types import SignedEngelExpansion


class Variant(str, Enum):
    SIGMA_N = "sigma_n"
    SIGMA_N_PRIME = "sigma_n_prime"


class SymbolSequence(BaseModel):
    """
    (sigma_1, delta_2, sigma_2, ..., delta_n, sigma_n) with delta_1 = +1
    implied. The deltas are cumulative signs, the same convention as
    SignedEngelExpansion.cum_signs.
    """
    model_config = ConfigDict(frozen=True)

    sigmas: list[int]
    deltas: list[int]

    @classmethod
    def of(cls, sigmas: list[int], deltas: list[int]) -> "SymbolSequence":
        seq = cls(sigmas=list(sigmas), deltas=list(deltas))
        seq.check_well_formed()
        return seq

    @classmethod
    def from_expansion(cls, e: SignedEngelExpansion, n: Optional[int] = None) -> "SymbolSequence":
        n = len(e.digits) if n is None else n
        return cls.of(e.digits[:n], e.cum_signs[1:n])

    def check_well_formed(self) -> None:
        if not self.sigmas:
            raise Malformed("A symbol sequence needs at least one digit")
        if len(self.deltas) != len(self.sigmas) - 1:
            raise Malformed(f"{len(self.sigmas)} digits need {len(self.sigmas) - 1} signs, got {len(self.deltas)}")
        if any(s < 1 for s in self.sigmas):
            raise Malformed(f"Digits must be positive: {self.sigmas}")
        if any(d not in (1, -1) for d in self.deltas):
            raise Malformed(f"Signs must be +1 or -1: {self.deltas}")

    def __len__(self) -> int:
        return len(self.sigmas)

    def delta_notation(self) -> list[int]:
        """All deltas including the implied delta_1 = +1."""
        return [1] + list(self.deltas)

    def step_signs(self) -> list[int]:
        cum = self.delta_notation()
        return [cum[i] * cum[i + 1] for i in range(len(cum) - 1)]

    def prefix(self, n: int) -> "SymbolSequence":
        return SymbolSequence(sigmas=self.sigmas[:n], deltas=self.deltas[:n - 1])

    def __str__(self) -> str:
        return format_symbols(self)


class Admissibility(BaseModel):
    valid: bool
    reason: Optional[str] = None


def parse_symbols(text: str) -> SymbolSequence:
    """
    Parse the interleaved text form, e.g. "2 +1 2 -1 6".

    Raises:
        ParseError: if a token is not an integer
        Malformed: if the tokens do not alternate digit/sign
    """
    tokens = text.replace(",", " ").split()
    values = []
    for token in tokens:
        try:
            values.append(int(token))
        except ValueError:
            raise ParseError(f"Not an integer token {token!r} in {text!r}")
    if len(values) % 2 == 0:
        raise Malformed(f"Expected an odd number of tokens, got {len(values)} in {text!r}")
    return SymbolSequence.of(values[0::2], values[1::2])


def format_symbols(seq: SymbolSequence) -> str:
    parts = [str(seq.sigmas[0])]
    for delta, sigma in zip(seq.deltas, seq.sigmas[1:]):
        parts.append("+1" if delta == 1 else "-1")
        parts.append(str(sigma))
    return " ".join(parts)
