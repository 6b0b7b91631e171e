"""Base-p digit streams, truncations, carry horizons, and the
digit-wise multinomial test."""

import math
import random
from fractions import Fraction

import pytest

from fptcert.basep import (
    INFINITY,
    CarryHorizon,
    adds_without_carrying,
    carry_horizon,
    digit_at,
    digits,
    in_P_rho_0,
    in_P_rho_inf,
    is_prime,
    multinomial_nonzero_mod_p,
    truncation,
)
from fptcert.errors import InputError


def test_is_prime_small_and_pseudoprimes():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43}
    for n in range(-2, 45):
        assert is_prime(n) == (n in primes)
    assert not is_prime(561)  # Carmichael
    assert not is_prime(341)
    assert is_prime(2**31 - 1)
    assert not is_prime(2**32 + 1)


@pytest.mark.parametrize(
    "alpha,p,pre,per",
    [
        (Fraction(1, 3), 2, (), (0, 1)),
        (Fraction(1, 2), 2, (0,), (1,)),
        (Fraction(1), 2, (), (1,)),
        (Fraction(1, 3), 3, (0,), (2,)),
        (Fraction(1, 3), 5, (), (1, 3)),
        (Fraction(1, 4), 5, (), (1,)),
        (Fraction(1, 2), 5, (), (2,)),
        (Fraction(1, 5), 2, (), (0, 0, 1, 1)),
        (Fraction(1, 5), 5, (0,), (4,)),
        (Fraction(1, 4), 7, (), (1, 5)),
    ],
)
def test_digit_streams_frozen(alpha, p, pre, per):
    stream = digits(alpha, p)
    assert stream.preperiod == pre
    assert stream.period == per


def test_expansion_is_nonterminating():
    # terminating representations are replaced by the tail of maximal
    # digits: 1/2 in base 2 is 0.0111..., not 0.1000...
    stream = digits(Fraction(1, 2), 2)
    assert stream.digits_prefix(5) == [0, 1, 1, 1, 1]
    assert digits(Fraction(1), 3).digits_prefix(4) == [2, 2, 2, 2]


def test_stream_minimality():
    rng = random.Random(11)
    for _ in range(120):
        den = rng.randint(1, 60)
        num = rng.randint(1, den)
        p = rng.choice([2, 3, 5, 7, 11])
        stream = digits(Fraction(num, den), p)
        assert len(stream.period) >= 1
        # a shorter preperiod would merge its last digit into the cycle
        if stream.preperiod:
            assert stream.preperiod[-1] != stream.period[-1]


def test_digit_at_matches_stream():
    rng = random.Random(13)
    for _ in range(100):
        den = rng.randint(1, 40)
        num = rng.randint(1, den)
        alpha = Fraction(num, den)
        p = rng.choice([2, 3, 5, 7])
        stream = digits(alpha, p)
        for k in range(1, 12):
            assert digit_at(alpha, p, k) == stream.digit(k)


def test_digit_at_zero_and_bounds():
    assert digit_at(Fraction(0), 5, 3) == 0
    with pytest.raises(InputError):
        digit_at(Fraction(1, 2), 5, 0)
    with pytest.raises(InputError):
        digit_at(Fraction(3, 2), 5, 1)
    with pytest.raises(InputError):
        digits(Fraction(0), 5)


def test_truncation_identities():
    alpha = Fraction(5, 6)
    assert truncation(alpha, 7, 0) == 0
    assert truncation(Fraction(0), 7, 4) == 0
    assert truncation(alpha, 7, INFINITY) == alpha
    assert truncation(Fraction(1), 2, 3) == Fraction(7, 8)
    # the truncation collects exactly the digit prefix
    for e in range(1, 8):
        total = sum(
            Fraction(digit_at(alpha, 7, k), 7**k) for k in range(1, e + 1)
        )
        assert truncation(alpha, 7, e) == total
    with pytest.raises(InputError):
        truncation(alpha, 7, -1)


def test_truncation_monotone_with_small_remainder():
    rng = random.Random(17)
    for _ in range(60):
        den = rng.randint(1, 30)
        alpha = Fraction(rng.randint(1, den), den)
        p = rng.choice([2, 3, 5])
        last = Fraction(0)
        for e in range(1, 9):
            t = truncation(alpha, p, e)
            assert last <= t < alpha  # strict: expansion never terminates
            assert alpha - t <= Fraction(1, p**e)
            last = t


def test_infinity_ordering():
    assert INFINITY > 10**9
    assert INFINITY >= INFINITY
    assert not INFINITY < 10**9
    assert INFINITY == INFINITY
    assert INFINITY != 5
    assert hash(INFINITY) == hash(INFINITY)


def test_adds_without_carrying_frozen():
    third = Fraction(1, 3)
    assert not adds_without_carrying([third, third], 2)
    assert adds_without_carrying([third, third], 7)
    assert adds_without_carrying([third], 2)
    # (1/2, 1/3, 1/4): first digits in base 13 are 6, 4, 3 and already carry
    block = [Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)]
    assert not adds_without_carrying(block, 13)
    assert not adds_without_carrying(block, 7)  # level 2: 3 + 2 + 5


def test_adds_without_carrying_window_stability():
    rng = random.Random(19)
    for _ in range(80):
        k = rng.randint(1, 4)
        block = []
        for _ in range(k):
            den = rng.randint(1, 20)
            block.append(Fraction(rng.randint(0, den), den))
        p = rng.choice([2, 3, 5, 7, 11])
        assert adds_without_carrying(block, p) == adds_without_carrying(
            block, p, window_factor=2
        )


def test_carry_horizon_frozen():
    third = Fraction(1, 3)
    assert carry_horizon([third, third], 2) == CarryHorizon(1)
    assert carry_horizon([third], 2) == CarryHorizon(INFINITY)
    # 1/3 in base 3 is 0.0222...; the twos collide at level 2
    assert carry_horizon([third, third], 3) == CarryHorizon(1)
    block = [Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)]
    assert carry_horizon(block, 13) == CarryHorizon(0)
    assert carry_horizon(block, 7) == CarryHorizon(1)
    assert carry_horizon(block, 5) == CarryHorizon(1)
    assert carry_horizon([Fraction(1)], 5) == CarryHorizon(INFINITY)


def test_carry_horizon_ignores_zero_entries():
    block = [Fraction(0), Fraction(1, 2)]
    assert carry_horizon(block, 2) == carry_horizon([Fraction(1, 2)], 2)
    assert carry_horizon([Fraction(0)], 2) == CarryHorizon(INFINITY)


def test_carry_horizon_json_value():
    assert CarryHorizon(3).to_json_value() == 3
    assert CarryHorizon(INFINITY).to_json_value() == "inf"
    assert CarryHorizon(3).finite
    assert not CarryHorizon(INFINITY).finite


def test_multinomial_nonzero_frozen():
    assert multinomial_nonzero_mod_p(4, [2, 2], 7)  # C(4,2) = 6
    assert not multinomial_nonzero_mod_p(2, [1, 1], 2)  # C(2,1) = 2
    assert multinomial_nonzero_mod_p(0, [0, 0], 5)
    with pytest.raises(InputError):
        multinomial_nonzero_mod_p(3, [1, 1], 5)
    with pytest.raises(InputError):
        multinomial_nonzero_mod_p(0, [-1, 1], 5)


def _exact_multinomial(parts):
    value = 1
    running = 0
    for part in parts:
        running += part
        value *= math.comb(running, part)
    return value


def test_multinomial_matches_exact_arithmetic():
    rng = random.Random(23)
    for _ in range(300):
        p = rng.choice([2, 3, 5, 7])
        parts = [rng.randint(0, 40) for _ in range(rng.randint(2, 4))]
        expected = _exact_multinomial(parts) % p != 0
        assert multinomial_nonzero_mod_p(sum(parts), parts, p) == expected


def test_first_digit_criterion():
    blocks = [[Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)]] * 2
    for p in (5, 7, 11):
        assert not in_P_rho_0(blocks, p)
    assert in_P_rho_0(blocks, 13)
    with pytest.raises(InputError):
        in_P_rho_0([[Fraction(1, 2)]], 5)  # block sum must exceed 1


def test_carry_free_criterion():
    blocks = [[Fraction(1, 3), Fraction(1, 3)], [Fraction(1, 3)]]
    assert in_P_rho_inf(blocks, 7)
    assert not in_P_rho_inf(blocks, 2)
    curve = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(0), Fraction(1, 4)]]
    assert in_P_rho_inf(curve, 43)
