"""Nonterminating base-p expansions of rationals in (0, 1].

Every alpha in (0, 1] has a unique expansion alpha = sum d_k / p**k
whose digit tail is not eventually zero; rationals of the form a/p**e
get trailing digits p-1.  Digits are indexed from 1.  The convention
for truncations is <alpha>_0 = 0 and <0>_e = 0.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError


class _Infinity:
    """Order-compatible stand-in for an infinite carry horizon."""

    __slots__ = ()

    def __eq__(self, other):
        return isinstance(other, _Infinity)

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return isinstance(other, _Infinity)

    def __gt__(self, other):
        return not isinstance(other, _Infinity)

    def __ge__(self, other):
        return True

    def __hash__(self):
        return hash("fptcert-infinity")

    def __repr__(self):
        return "INFINITY"


INFINITY = _Infinity()


def is_prime(n):
    """Deterministic Miller-Rabin, exact for every n < 3.3e24."""
    if not isinstance(n, int) or n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n == q:
            return True
        if n % q == 0:
            return False
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _check_base(p):
    if not isinstance(p, int) or p < 2:
        raise InputError("base must be an integer >= 2, got %r" % (p,))


def _as_fraction(alpha):
    if isinstance(alpha, (Fraction, int)):
        return Fraction(alpha)
    raise InputError("expected an exact rational, got %r" % (alpha,))


@dataclass(frozen=True)
class DigitStream:
    """Eventually periodic digit sequence of a rational in (0, 1]."""

    base: int
    preperiod: tuple
    period: tuple
    value: Fraction

    def digit(self, k):
        """The k-th digit, k >= 1."""
        if k < 1:
            raise InputError("digit positions start at 1")
        if k <= len(self.preperiod):
            return self.preperiod[k - 1]
        return self.period[(k - len(self.preperiod) - 1) % len(self.period)]

    def digits_prefix(self, e):
        return [self.digit(k) for k in range(1, e + 1)]

    def to_json_dict(self):
        return {"preperiod": list(self.preperiod), "period": list(self.period)}


def digits(alpha, p):
    """DigitStream of alpha in (0, 1] in base p, with minimal preperiod.

    The expansion is the nonterminating one: digit k is
    ceil(p**k * alpha) - 1 - p * (ceil(p**(k-1) * alpha) - 1).
    """
    _check_base(p)
    alpha = _as_fraction(alpha)
    if not (0 < alpha <= 1):
        raise InputError("alpha must lie in (0, 1], got %s" % alpha)
    num, den = alpha.numerator, alpha.denominator
    # State r encodes the remaining value r/den in (0, 1]; the digit
    # emitted from state r is ceil(p*r/den) - 1, the next state p*r - d*den.
    seen = {}
    sequence = []
    r = num
    while r not in seen:
        seen[r] = len(sequence)
        d = -((-p * r) // den) - 1
        sequence.append(d)
        r = p * r - d * den
    start = seen[r]
    stream = DigitStream(
        base=p,
        preperiod=tuple(sequence[:start]),
        period=tuple(sequence[start:]),
        value=alpha,
    )
    return stream


def digit_at(alpha, p, k):
    """The k-th digit of the nonterminating expansion, via the closed
    ceiling formula; digit_at(0, p, k) is 0."""
    _check_base(p)
    alpha = _as_fraction(alpha)
    if not (0 <= alpha <= 1):
        raise InputError("alpha must lie in [0, 1], got %s" % alpha)
    if k < 1:
        raise InputError("digit positions start at 1")
    if alpha == 0:
        return 0
    return math.ceil(p**k * alpha) - 1 - p * (math.ceil(p ** (k - 1) * alpha) - 1)


def truncation(alpha, p, e):
    """The e-th truncation <alpha>_e of the nonterminating expansion.

    <alpha>_0 = 0, <0>_e = 0, <alpha>_INFINITY = alpha, and otherwise
    <alpha>_e = (ceil(p**e * alpha) - 1) / p**e.
    """
    _check_base(p)
    alpha = _as_fraction(alpha)
    if not (0 <= alpha <= 1):
        raise InputError("alpha must lie in [0, 1], got %s" % alpha)
    if isinstance(e, _Infinity):
        return alpha
    if not isinstance(e, int) or e < 0:
        raise InputError("truncation level must be a nonnegative integer or INFINITY")
    if e == 0 or alpha == 0:
        return Fraction(0)
    return Fraction(math.ceil(p**e * alpha) - 1, p**e)


@dataclass(frozen=True)
class CarryHorizon:
    """Largest level through which a block of digit streams adds
    without carrying; ``value`` is an int >= 0 or INFINITY."""

    value: object

    @property
    def finite(self):
        return not isinstance(self.value, _Infinity)

    def to_json_value(self):
        return self.value if self.finite else "inf"


def _streams_and_window(alphas, p, window_factor=1):
    streams = []
    for alpha in alphas:
        alpha = _as_fraction(alpha)
        if not (0 <= alpha <= 1):
            raise InputError("entries must lie in [0, 1], got %s" % alpha)
        if alpha > 0:
            streams.append(digits(alpha, p))
    if not streams:
        return [], 0
    longest = max(len(s.preperiod) for s in streams)
    period = math.lcm(*[len(s.period) for s in streams])
    return streams, longest + period * window_factor


def adds_without_carrying(alphas, p, window_factor=1):
    """True when at every digit position the digits of the given
    rationals sum to at most p - 1.

    The joint digit sequence is eventually periodic, so scanning one
    full window (max preperiod plus the lcm of the period lengths)
    decides every position.  ``window_factor`` scans that many extra
    periods; the answer must not depend on it.
    """
    _check_base(p)
    if window_factor < 1:
        raise InputError("window_factor must be at least 1")
    streams, window = _streams_and_window(alphas, p, window_factor)
    for k in range(1, window + 1):
        if sum(s.digit(k) for s in streams) > p - 1:
            return False
    return True


def carry_horizon(block, p, window_factor=1):
    """CarryHorizon of one block: the largest S such that the digit sums
    stay <= p - 1 at every level 1..S (level 0 never violates).  If no
    level violates, the horizon is INFINITY."""
    _check_base(p)
    if window_factor < 1:
        raise InputError("window_factor must be at least 1")
    streams, window = _streams_and_window(block, p, window_factor)
    for k in range(1, window + 1):
        if sum(s.digit(k) for s in streams) > p - 1:
            return CarryHorizon(k - 1)
    return CarryHorizon(INFINITY)


def multinomial_nonzero_mod_p(total, parts, p):
    """Whether the multinomial coefficient (total; parts) is nonzero
    mod p, decided digit-wise: by Lucas the coefficient is a unit
    exactly when adding the parts in base p produces no carry.  No
    factorials are computed."""
    _check_base(p)
    parts = [int(x) for x in parts]
    if any(x < 0 for x in parts) or total != sum(parts):
        raise InputError("parts must be nonnegative and sum to total")
    while any(parts):
        if sum(x % p for x in parts) > p - 1:
            return False
        parts = [x // p for x in parts]
    return True


def in_P_rho_0(blocks, p, window_factor=1):
    """First-digit criterion: every block's first digits sum to at
    least p.  Each block must have coordinate sum exceeding 1, which
    guarantees membership for all large p."""
    _check_base(p)
    del window_factor  # only the first digit matters; kept for symmetry
    results = []
    for block in blocks:
        entries = [_as_fraction(x) for x in block]
        if sum(entries) <= 1:
            raise InputError(
                "first-digit criterion needs each block sum > 1, got %s"
                % sum(entries)
            )
        results.append(sum(digit_at(x, p, 1) for x in entries) >= p)
    return all(results)


def in_P_rho_inf(blocks, p, window_factor=1):
    """Carry-free criterion: every block adds without carrying in
    base p."""
    return all(adds_without_carrying(block, p, window_factor) for block in blocks)
