from sengel.expansion.types import SignedEngelExpansion, DerivedSequences, StopReason
from sengel.expansion.signed_engel import (
    apply_T,
    digit_and_sign,
    digit_bounds,
    expand_rational,
    expand_certified,
    reconstruct,
    reconstruct_with_remainder,
    t_orbit,
)
from sengel.expansion.derived import derive_sequences
from sengel.expansion.classical import engel_digits, pierce_digits, engel_reconstruct, pierce_reconstruct

__all__ = [
    "SignedEngelExpansion",
    "DerivedSequences",
    "StopReason",
    "apply_T",
    "digit_and_sign",
    "digit_bounds",
    "expand_rational",
    "expand_certified",
    "reconstruct",
    "reconstruct_with_remainder",
    "t_orbit",
    "derive_sequences",
    "engel_digits",
    "pierce_digits",
    "engel_reconstruct",
    "pierce_reconstruct",
]
