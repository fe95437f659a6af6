from fractions import Fraction

import pytest

from sengel.errors import Malformed, ParseError
from sengel.expansion import expand_certified, expand_rational
from sengel.numerics import ball_from_decimal
from sengel.symbolic import (
    SymbolSequence,
    Variant,
    check_admissible,
    enumerate_admissible,
    format_symbols,
    is_admissible,
    parse_symbols,
)


@pytest.mark.unit
def test_parse_and_format():
    seq = parse_symbols("2 +1 2 -1 6")
    assert seq.sigmas == [2, 2, 6]
    assert seq.deltas == [1, -1]
    assert format_symbols(seq) == "2 +1 2 -1 6"
    assert seq.delta_notation() == [1, 1, -1]
    assert seq.step_signs() == [1, -1]


@pytest.mark.unit
@pytest.mark.parametrize("text, error", [
    ("2 +1", Malformed),
    ("2 +2 4", Malformed),
    ("0", Malformed),
    ("2 x 4", ParseError),
    ("", Malformed),
])
def test_parse_rejects(text, error):
    with pytest.raises(error):
        parse_symbols(text)


@pytest.mark.unit
def test_check_admissible_examples():
    assert check_admissible(parse_symbols("2 +1 2"), Variant.SIGMA_N).valid
    flip = check_admissible(parse_symbols("2 -1 2"), Variant.SIGMA_N)
    assert not flip.valid
    assert "sign flip" in flip.reason
    assert check_admissible(parse_symbols("2 -1 4"), Variant.SIGMA_N).valid
    assert check_admissible(parse_symbols("2 +1 3"), Variant.SIGMA_N).valid
    assert not check_admissible(parse_symbols("2 +1 3"), Variant.SIGMA_N_PRIME).valid


@pytest.mark.unit
@pytest.mark.parametrize("text", ["1", "4 +1 2", "3 +1 4", "2 +1 4 -1 4"])
def test_check_admissible_invalid(text):
    assert not is_admissible(parse_symbols(text))


@pytest.mark.unit
def test_check_admissible_malformed():
    with pytest.raises(Malformed):
        check_admissible(SymbolSequence(sigmas=[2, 4], deltas=[]))


@pytest.mark.unit
def test_enumerate_examples():
    assert [format_symbols(s) for s in enumerate_admissible(1, 4)] == ["2", "4"]
    assert [format_symbols(s) for s in enumerate_admissible(2, 4)] == [
        "2 +1 2", "2 +1 4", "2 -1 4", "4 +1 4",
    ]
    assert [format_symbols(s) for s in enumerate_admissible(2, 2)] == ["2 +1 2"]


@pytest.mark.unit
def test_enumerate_is_complete_and_sorted():
    def key(seq):
        out = [seq.sigmas[0]]
        for d, s in zip(seq.deltas, seq.sigmas[1:]):
            out += [0 if d == 1 else 1, s]
        return out

    seqs = enumerate_admissible(3, 10)
    keys = [key(s) for s in seqs]
    assert keys == sorted(keys)
    assert len(set(map(tuple, keys))) == len(keys)

    brute = 0
    for a in range(2, 11, 2):
        for b in range(2, 11, 2):
            for c in range(2, 11, 2):
                for d2 in (1, -1):
                    for d3 in (1, -1):
                        seq = SymbolSequence.of([a, b, c], [d2, d3])
                        if is_admissible(seq, Variant.SIGMA_N_PRIME):
                            brute += 1
    assert brute == len(seqs)
    assert all(is_admissible(s, Variant.SIGMA_N_PRIME) for s in seqs)


@pytest.mark.unit
def test_expansions_are_admissible():
    for q in range(2, 151):
        for p in range(1, q):
            e = expand_rational(Fraction(p, q))
            assert is_admissible(SymbolSequence.from_expansion(e), Variant.SIGMA_N), (p, q)


@pytest.mark.unit
def test_certified_prefix_is_admissible_prime():
    e = expand_certified(ball_from_decimal("0.7071067811865475244008443621048490392848"))
    seq = SymbolSequence.from_expansion(e)
    assert is_admissible(seq, Variant.SIGMA_N_PRIME)
