from fractions import Fraction

from pydantic import BaseModel, ConfigDict, field_serializer, field_validator

from sengel.numerics.rational import Rational
from sengel.symbolic.types import SymbolSequence, format_symbols, parse_symbols


class BasicInterval(BaseModel):
    """Open cylinder of all points whose expansion starts with `symbols`."""
    model_config = ConfigDict(frozen=True)

    symbols: SymbolSequence
    lower: Rational
    upper: Rational
    length: Rational

    @field_validator("symbols", mode="before")
    @classmethod
    def _parse_symbols(cls, v):
        return parse_symbols(v) if isinstance(v, str) else v

    @field_serializer("symbols")
    def _format_symbols(self, v: SymbolSequence) -> str:
        return format_symbols(v)

    def contains(self, x: Fraction) -> bool:
        return self.lower < x < self.upper
