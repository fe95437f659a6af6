from sengel.symbolic.types import Admissibility, SymbolSequence, Variant, format_symbols, parse_symbols
from sengel.symbolic.admissible import check_admissible, enumerate_admissible, is_admissible

__all__ = [
    "Admissibility",
    "SymbolSequence",
    "Variant",
    "format_symbols",
    "parse_symbols",
    "check_admissible",
    "enumerate_admissible",
    "is_admissible",
]
