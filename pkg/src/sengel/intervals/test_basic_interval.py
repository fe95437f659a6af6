import json
import random
from fractions import Fraction

import pytest

from sengel.errors import ExpansionTooShort, NotAdmissible, OddDigitAtN, OddFinalDigit
from sengel.expansion import expand_rational
from sengel.intervals import (
    BasicInterval,
    basic_interval,
    cylinder_measure,
    length_closed_form,
    locate,
    pairwise_disjoint,
)
from sengel.symbolic import enumerate_admissible, parse_symbols


@pytest.mark.unit
@pytest.mark.parametrize("text, lower, upper, length", [
    ("2", Fraction(1, 3), Fraction(1), Fraction(2, 3)),
    ("2 +1 4", Fraction(3, 5), Fraction(2, 3), Fraction(1, 15)),
    ("2 -1 4", Fraction(1, 3), Fraction(2, 5), Fraction(1, 15)),
    ("4", Fraction(1, 5), Fraction(1, 3), Fraction(2, 15)),
])
def test_basic_interval_examples(text, lower, upper, length):
    interval = basic_interval(parse_symbols(text))
    assert (interval.lower, interval.upper, interval.length) == (lower, upper, length)


@pytest.mark.unit
@pytest.mark.parametrize("text", ["2 +1 4", "2 -1 4", "2 +1 2 -1 6"])
def test_points_inside_share_the_prefix(text):
    seq = parse_symbols(text)
    interval = basic_interval(seq)
    n = len(seq)
    for j in range(1, 101):
        x = interval.lower + interval.length * Fraction(j, 101)
        e = expand_rational(x)
        assert e.digits[:n] == seq.sigmas
        assert e.cum_signs[:n] == seq.delta_notation()


@pytest.mark.unit
def test_basic_interval_errors():
    with pytest.raises(NotAdmissible):
        basic_interval(parse_symbols("2 -1 2"))
    with pytest.raises(OddFinalDigit):
        basic_interval(parse_symbols("2 +1 3"))


@pytest.mark.unit
def test_locate_examples():
    with pytest.raises(OddDigitAtN):
        locate(Fraction(2, 5), 2)
    interval = locate(Fraction(3, 8), 2)
    assert (interval.lower, interval.upper) == (Fraction(1, 3), Fraction(2, 5))
    assert interval.contains(Fraction(3, 8))
    with pytest.raises(ExpansionTooShort):
        locate(Fraction(3, 8), 3)
    first = locate(Fraction(7, 10), 1)
    assert (first.lower, first.upper) == (Fraction(1, 3), Fraction(1))


@pytest.mark.unit
def test_lengths_match_closed_form():
    for n in (1, 2, 3):
        for seq in enumerate_admissible(n, 20):
            interval = basic_interval(seq)
            assert interval.upper - interval.lower == length_closed_form(seq)
            assert 0 < interval.lower < interval.upper <= 1


@pytest.mark.unit
@pytest.mark.parametrize("n, bound", [(1, 20), (2, 20), (3, 12)])
def test_cylinders_are_disjoint(n, bound):
    seqs = enumerate_admissible(n, bound)
    assert pairwise_disjoint(basic_interval(s) for s in seqs)
    assert cylinder_measure(seqs) < 1


@pytest.mark.unit
@pytest.mark.parametrize("bound", [2, 4, 10, 20, 100])
def test_first_order_measure_telescopes(bound):
    assert cylinder_measure(enumerate_admissible(1, bound)) == 1 - Fraction(1, bound + 1)


@pytest.mark.unit
def test_pairwise_disjoint_detects_overlap():
    a = basic_interval(parse_symbols("2"))
    b = basic_interval(parse_symbols("2 +1 4"))
    assert not pairwise_disjoint([a, b])


@pytest.mark.unit
def test_membership_and_nesting_for_random_rationals():
    rng = random.Random(20240611)
    checked = 0
    for _ in range(1000):
        q = rng.randint(2, 10**9)
        x = Fraction(rng.randint(1, q - 1), q)
        e = expand_rational(x)
        previous = None
        for n, d in enumerate(e.digits, start=1):
            if d % 2 != 0:
                break
            interval = locate(x, n)
            assert interval.contains(x)
            if previous is not None:
                assert previous.lower <= interval.lower < interval.upper <= previous.upper
            previous = interval
            checked += 1
    assert checked >= 1000


@pytest.mark.unit
def test_json_round_trip():
    interval = basic_interval(parse_symbols("2 -1 4"))
    payload = json.loads(interval.model_dump_json())
    assert payload == {"symbols": "2 -1 4", "lower": "1/3", "upper": "2/5", "length": "1/15"}
    assert BasicInterval.model_validate_json(interval.model_dump_json()) == interval

    first = json.loads(basic_interval(parse_symbols("2")).model_dump_json())
    assert first["upper"] == "1"
