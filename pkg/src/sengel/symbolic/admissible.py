from sengel.symbolic.types import Admissibility, SymbolSequence, Variant


def check_admissible(s: SymbolSequence, variant: Variant = Variant.SIGMA_N) -> Admissibility:
    """
    Membership in the admissible spaces.

    Valid iff 2 <= sigma_1 <= ... <= sigma_n, every digit but the last is
    even (the last too for SIGMA_N_PRIME) and a sign flip forces a jump of
    at least 2.

    Raises:
        Malformed: if s is not a well-formed sequence
    """
    s.check_well_formed()
    sigmas = s.sigmas
    if sigmas[0] < 2:
        return Admissibility(valid=False, reason=f"first digit {sigmas[0]} is below 2")

    for i, sigma in enumerate(sigmas[:-1]):
        if sigma % 2 != 0:
            return Admissibility(valid=False, reason=f"digit {i + 1} = {sigma} is odd and not last")
    if variant == Variant.SIGMA_N_PRIME and sigmas[-1] % 2 != 0:
        return Admissibility(valid=False, reason=f"last digit {sigmas[-1]} is odd")

    cum = s.delta_notation()
    for i in range(len(sigmas) - 1):
        if sigmas[i + 1] < sigmas[i]:
            return Admissibility(valid=False, reason=f"digit {i + 2} = {sigmas[i + 1]} decreases")
        if cum[i + 1] == -cum[i] and sigmas[i + 1] < sigmas[i] + 2:
            return Admissibility(
                valid=False,
                reason=f"sign flip at {i + 2} needs digit >= {sigmas[i] + 2}, got {sigmas[i + 1]}")
    return Admissibility(valid=True)


def is_admissible(s: SymbolSequence, variant: Variant = Variant.SIGMA_N) -> bool:
    return check_admissible(s, variant).valid


def enumerate_admissible(n: int, bound: int) -> list[SymbolSequence]:
    """
    Every SIGMA_N_PRIME sequence of length n with sigma_n <= bound, in
    lexicographic order (+1 sorts before -1).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if bound < 2:
        raise ValueError(f"bound must be >= 2, got {bound}")

    results: list[SymbolSequence] = []

    def extend(sigmas: list[int], deltas: list[int]) -> None:
        if len(sigmas) == n:
            results.append(SymbolSequence(sigmas=list(sigmas), deltas=list(deltas)))
            return
        last_delta = deltas[-1] if deltas else 1
        for delta in (1, -1):
            start = sigmas[-1] + (2 if delta != last_delta else 0)
            for sigma in range(start, bound + 1, 2):
                extend(sigmas + [sigma], deltas + [delta])

    for first in range(2, bound + 1, 2):
        extend([first], [])
    return results
