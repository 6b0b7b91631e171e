"""Threshold certificates in prime characteristic.

For an ideal generated by polynomials f_1, ..., f_t whose splitting
polytope has a unique coordinate-sum maximizer rho, the base-p carry
horizons of the blocks of rho yield either the exact threshold
lim nu(p^e)/p^e or a certified lower bound, together with the upper
bound min(t, |rho|).  A brute-force Frobenius membership scan provides
the independent oracle nu, and a digit-truncation witness checks the
predicted coefficient of the escaping monomial.
"""

import math
from dataclasses import dataclass, replace
from fractions import Fraction

from .basep import (
    CarryHorizon,
    carry_horizon,
    in_P_rho_0,
    in_P_rho_inf,
    is_prime,
    truncation,
)
from .budgets import Budgets, Meter
from .errors import (
    FptcertError,
    InputError,
    NonUniqueMaximalPoint,
    RingMismatch,
)
from .geometry import exponent_matrix, maximal_point, newton_min_diagonal, reduce_generators
from .polyring import (
    QQ,
    IntegersMod,
    Polynomial,
    coefficient_of,
    in_frobenius_power,
    reduce_mod_p,
    support,
)

KIND_EXACT = "exact"
KIND_LOWER_BOUND = "lower_bound"

CASE_DIAGONAL_ABOVE_T = "diagonal_above_t"
CASE_DIAGONAL_AT_MOST_T = "diagonal_at_most_t"
CASE_INCONCLUSIVE = "inconclusive"


def _check_prime(p):
    if not is_prime(p):
        raise InputError("p must be a prime number, got %r" % (p,))
    if p > 2**31 - 1:
        raise InputError("p must fit in 31 bits")


def _to_fp_generators(generators, p):
    """Reduce rational generators mod p, or validate that generators
    already over GF(p) match the requested prime."""
    _check_prime(p)
    generators = tuple(generators)
    if not generators:
        raise InputError("at least one generator is required")
    out = []
    for i, g in enumerate(generators):
        if not isinstance(g, Polynomial):
            raise InputError("generator %d is not a polynomial" % i)
        if g.ring == QQ:
            reduced = reduce_mod_p(g, p)
            if reduced.is_zero():
                raise InputError("generator %d reduces to zero mod %d" % (i, p))
            out.append(reduced)
        elif isinstance(g.ring, IntegersMod):
            if g.ring.p != p:
                raise RingMismatch(
                    "generator %d lives over GF(%d), expected GF(%d)"
                    % (i, g.ring.p, p)
                )
            out.append(g)
        else:
            raise RingMismatch("unsupported coefficient ring %r" % (g.ring,))
    return tuple(out)


def _unique_rho(generators, p):
    """Shared pipeline: reduce mod p, build the exponent matrix, and
    demand a unique maximal point.  Returns (mapping, matrix, cert)."""
    fp_gens = _to_fp_generators(generators, p)
    mapping = reduce_generators(fp_gens)
    matrix = exponent_matrix(mapping)
    cert = maximal_point(matrix)
    if not cert.unique:
        free = cert.free_coordinates
        raise NonUniqueMaximalPoint(
            "the maximal face is not a point: %d coordinate(s) remain free, "
            "so the face has dimension between 1 and %d" % (len(free), len(free)),
            free_coordinates=free,
            coordinate_ranges=cert.coordinate_ranges,
        )
    return mapping, matrix, cert


@dataclass(frozen=True)
class FptCertificate:
    """Exact value or certified lower bound for the limiting ratio
    nu(p^e)/p^e, together with the upper bound min(t, |rho|)."""

    p: int
    kind: str
    value: Fraction
    upper_bound: Fraction
    rho_blocks: tuple
    horizons: tuple  # CarryHorizon per block
    finite_indices: tuple  # 0-based block indices with finite horizon
    truncations: tuple  # truncated blocks, aligned with finite_indices

    @property
    def t(self):
        return len(self.rho_blocks)

    @property
    def block_sums(self):
        return tuple(sum(block, Fraction(0)) for block in self.rho_blocks)

    def to_json_dict(self):
        return {
            "p": self.p,
            "kind": self.kind,
            "value": str(self.value),
            "upper_bound": str(self.upper_bound),
            "rho": [[str(x) for x in block] for block in self.rho_blocks],
            "S": [h.to_json_value() for h in self.horizons],
            "I": list(self.finite_indices),
        }


def fpt_bound(generators, p, budgets=None):
    """Certificate for the threshold of the ideal the generators span,
    over GF(p).  Rational generators are reduced mod p first.

    When every block of rho adds without carrying in base p the value
    is exact (it equals |rho|); otherwise the finite carry horizons
    S_i produce the certified lower bound
    sum_{i not in I} |rho_i| + sum_{i in I} (|<rho_i>_{S_i}| + p**-S_i).
    """
    del budgets  # the pipeline is polynomial-free; nothing to meter
    _, _, cert = _unique_rho(generators, p)
    rho_blocks = cert.blocks_of_rho
    horizons = tuple(carry_horizon(block, p) for block in rho_blocks)
    finite_indices = tuple(i for i, h in enumerate(horizons) if h.finite)
    t = len(rho_blocks)
    if finite_indices:
        kind = KIND_LOWER_BOUND
        value = Fraction(0)
        for i, block in enumerate(rho_blocks):
            if i in finite_indices:
                s = horizons[i].value
                value += sum(truncation(a, p, s) for a in block)
                value += Fraction(1, p**s)
            else:
                value += sum(block, Fraction(0))
    else:
        kind = KIND_EXACT
        value = cert.M
    truncations = tuple(
        tuple(truncation(a, p, horizons[i].value) for a in rho_blocks[i])
        for i in finite_indices
    )
    return FptCertificate(
        p=p,
        kind=kind,
        value=value,
        upper_bound=min(Fraction(t), cert.M),
        rho_blocks=rho_blocks,
        horizons=horizons,
        finite_indices=finite_indices,
        truncations=truncations,
    )


def witness_floor(certificate, scan_level):
    """Per-level floor certified by the digit construction behind the
    bound: nu(p**E) >= p**E * witness_floor(cert, E) for E >= 1.

    Blocks still carry-free at level E contribute |<rho_i>_E|; a block
    with horizon S_i < E contributes |<rho_i>_{S_i}| plus the tail
    (p**(E - S_i) - 1) / p**E made of maximal digits past the horizon.
    """
    if not isinstance(scan_level, int) or scan_level < 1:
        raise InputError("scan level must be a positive integer")
    p = certificate.p
    total = Fraction(0)
    for block, horizon in zip(certificate.rho_blocks, certificate.horizons):
        if horizon.finite and horizon.value < scan_level:
            s = horizon.value
            total += sum(truncation(a, p, s) for a in block)
            total += Fraction(p ** (scan_level - s) - 1, p**scan_level)
        else:
            total += sum(truncation(a, p, scan_level) for a in block)
    return total


def _compositions(total, parts):
    """Nonnegative integer vectors with the given sum, in colex order."""
    if parts == 1:
        yield (total,)
        return
    for last in range(total + 1):
        for rest in _compositions(total - last, parts - 1):
            yield rest + (last,)


class _PowerCache:
    """Lazily extended powers f**k of one polynomial, metered."""

    def __init__(self, poly, meter):
        self.poly = poly
        self.meter = meter
        self.cache = [Polynomial.one(poly.ring, poly.varcount)]

    def power(self, k):
        while len(self.cache) <= k:
            top = self.cache[-1]
            self.meter.charge_terms(len(top.terms) * len(self.poly.terms))
            self.cache.append(top * self.poly)
        return self.cache[k]


def nu(generators, e, budgets=None):
    """max{c : (f_1, ..., f_t)**c is not inside (x_1**q, ..., x_m**q)}
    for q = p**e, found by scanning c upward and testing every degree-c
    product of generators.  Generators must be nonzero members of the
    maximal ideal over GF(p).

    A partial product already inside the Frobenius power can never
    escape, so those branches are abandoned early; the escaping product
    found at level c is retried with one extra factor at level c + 1
    before the full scan.
    """
    generators = tuple(generators)
    if not generators:
        raise InputError("at least one generator is required")
    ring = generators[0].ring
    if not isinstance(ring, IntegersMod):
        raise RingMismatch("nu expects generators over GF(p)")
    _check_prime(ring.p)
    for i, g in enumerate(generators):
        if g.ring != ring or g.varcount != generators[0].varcount:
            raise RingMismatch("generator %d lives in a different ring" % i)
        if g.is_zero():
            raise InputError("generator %d is zero" % i)
        if (0,) * g.varcount in g.terms:
            raise InputError("generator %d is not in the maximal ideal" % i)
    if not isinstance(e, int) or e < 1:
        raise InputError("e must be a positive integer")

    meter = Meter(budgets if budgets is not None else Budgets.from_env())
    m = generators[0].varcount
    t = len(generators)
    one = Polynomial.one(ring, m)
    powers = [_PowerCache(g, meter) for g in generators]

    def escapes(composition):
        product = one
        for i, k in enumerate(composition):
            if k == 0:
                continue
            factor = powers[i].power(k)
            meter.charge_terms(len(product.terms) * len(factor.terms))
            product = product * factor
            if in_frobenius_power(product, e):
                return False
        return not in_frobenius_power(product, e)

    limit = m * (ring.p**e - 1) + 1
    witness = None
    for c in range(1, limit + 1):
        found = None
        if witness is not None:
            for i in range(t):
                candidate = witness[:i] + (witness[i] + 1,) + witness[i + 1:]
                meter.charge_multisets()
                if escapes(candidate):
                    found = candidate
                    break
        if found is None:
            for composition in _compositions(c, t):
                meter.charge_multisets()
                if escapes(composition):
                    found = composition
                    break
        if found is None:
            return c - 1
        witness = found
    raise FptcertError("internal: containment level %d not reached" % limit)


def fpt_estimate(generators, p, e_max, budgets=None):
    """Rows (e, nu(p**e), nu(p**e)/p**e) for e = 1..e_max."""
    if not isinstance(e_max, int) or e_max < 1:
        raise InputError("e_max must be a positive integer")
    fp_gens = _to_fp_generators(generators, p)
    rows = []
    for e in range(1, e_max + 1):
        value = nu(fp_gens, e, budgets)
        rows.append((e, value, Fraction(value, p**e)))
    return rows


def _pow_metered(poly, n, meter):
    result = Polynomial.one(poly.ring, poly.varcount)
    base = poly
    while n:
        if n & 1:
            meter.charge_terms(len(result.terms) * len(base.terms))
            result = result * base
        n >>= 1
        if n:
            meter.charge_terms(len(base.terms) ** 2)
            base = base * base
    return result


@dataclass(frozen=True)
class WitnessReport:
    """Comparison of the predicted and the expanded coefficient of the
    escaping monomial x**(p**e E <rho>_e) in prod f_i**(p**e |<rho_i>_e|)."""

    p: int
    e: int
    exponents: tuple  # Q_i = p**e |<rho_i>_e| per block
    target: tuple  # exponent vector of the escaping monomial
    expected: int
    actual: int
    match: bool
    per_block: tuple  # (Q_i, parts, multinomial mod p, coefficient power mod p)

    def to_json_dict(self):
        return {
            "p": self.p,
            "e": self.e,
            "match": self.match,
            "expected": self.expected,
            "actual": self.actual,
            "exponents": list(self.exponents),
            "target": list(self.target),
            "blocks": [
                {
                    "Q": q,
                    "parts": list(parts),
                    "multinomial_mod_p": multi,
                    "coefficient_power_mod_p": cpow,
                }
                for q, parts, multi, cpow in self.per_block
            ],
        }


def coefficient_witness(generators, p, e, budgets=None):
    """Expand g = prod f_i**(p**e |<rho_i>_e|) over GF(p) and compare
    the coefficient of x**(p**e E <rho>_e) with the digit prediction:
    the product over blocks of the multinomial (Q_i; p**e <rho_i>_e)
    times the matching powers of the retained coefficients."""
    if not isinstance(e, int) or e < 1:
        raise InputError("e must be a positive integer")
    mapping, matrix, cert = _unique_rho(generators, p)
    meter = Meter(budgets if budgets is not None else Budgets.from_env())
    rho_blocks = cert.blocks_of_rho
    truncated = [
        [truncation(a, p, e) for a in block] for block in rho_blocks
    ]
    q_scale = p**e
    exponents = []
    parts_per_block = []
    for block in truncated:
        parts = [int(q_scale * a) for a in block]
        parts_per_block.append(parts)
        exponents.append(sum(parts))

    product = Polynomial.one(mapping.original_generators[0].ring, matrix.varcount)
    for g, q_i in zip(mapping.original_generators, exponents):
        factor = _pow_metered(g, q_i, meter)
        meter.charge_terms(len(product.terms) * len(factor.terms))
        product = product * factor

    flat_parts = [x for parts in parts_per_block for x in parts]
    target = tuple(
        sum(col[i] * k for col, k in zip(matrix.columns, flat_parts))
        for i in range(matrix.varcount)
    )
    actual = coefficient_of(product, target)

    expected = 1
    per_block = []
    for i, parts in enumerate(parts_per_block):
        multi = 1
        running = 0
        for part in parts:
            running += part
            multi = multi * math.comb(running, part) % p
        cpow = 1
        for coeff, part in zip(mapping.coeff_columns[i], parts):
            cpow = cpow * pow(coeff, part, p) % p
        per_block.append((exponents[i], tuple(parts), multi, cpow))
        expected = expected * multi % p
        expected = expected * cpow % p

    return WitnessReport(
        p=p,
        e=e,
        exponents=tuple(exponents),
        target=target,
        expected=expected,
        actual=actual,
        match=expected == actual,
        per_block=tuple(per_block),
    )


def monomial_fpt(supports):
    """Threshold of the monomial ideal spanned by the given exponent
    vectors: the largest tau with (1, ..., 1) in tau times the Newton
    polyhedron, i.e. the reciprocal of the diagonal entry point."""
    return Fraction(1) / newton_min_diagonal(supports)


@dataclass(frozen=True)
class LctVerdict:
    """Outcome of the characteristic-zero comparison: which side of t
    the diagonal threshold falls on, and what equality to expect for
    good primes."""

    case: str
    value: object  # Fraction, or None when inconclusive
    t: int
    rho_blocks: tuple
    block_sums: tuple
    prime_predicate: str
    checked_primes: tuple
    failed_hypothesis: object  # str or None

    @property
    def conclusive(self):
        return self.case != CASE_INCONCLUSIVE

    def with_checked(self, p, holds):
        return replace(self, checked_primes=self.checked_primes + ((p, holds),))

    def to_json_dict(self):
        return {
            "case": self.case,
            "value": None if self.value is None else str(self.value),
            "t": self.t,
            "rho": [[str(x) for x in block] for block in self.rho_blocks],
            "block_sums": [str(s) for s in self.block_sums],
            "prime_predicate": self.prime_predicate,
            "checked_primes": [[p, ok] for p, ok in self.checked_primes],
            "failed_hypothesis": self.failed_hypothesis,
        }


def lct_fpt_classifier(generators):
    """Classify rational generators by the block sums of rho.

    All block sums above 1: for good primes the positive-characteristic
    threshold equals the number of generators t.  All block sums at
    most 1: for good primes it equals |rho|, the common threshold of
    the term ideal (for rational rho the carry-free prime set is
    automatically infinite: it contains every p = 1 mod the lcm of the
    denominators).  Mixed sums: inconclusive.
    """
    generators = tuple(generators)
    for i, g in enumerate(generators):
        if not isinstance(g, Polynomial) or g.ring != QQ:
            raise RingMismatch(
                "classifier expects rational generators (generator %d)" % i
            )
    mapping = reduce_generators(generators)
    matrix = exponent_matrix(mapping)
    cert = maximal_point(matrix)
    if not cert.unique:
        free = cert.free_coordinates
        raise NonUniqueMaximalPoint(
            "the maximal face is not a point: %d coordinate(s) remain free"
            % len(free),
            free_coordinates=free,
            coordinate_ranges=cert.coordinate_ranges,
        )
    union_support = set()
    for g in generators:
        union_support |= set(support(g))
    dual = monomial_fpt(union_support)
    if dual != cert.M:
        raise FptcertError(
            "internal: polytope maximum %s disagrees with the Newton "
            "polyhedron dual %s" % (cert.M, dual)
        )
    rho_blocks = cert.blocks_of_rho
    sums = tuple(sum(block, Fraction(0)) for block in rho_blocks)
    t = len(generators)
    newton_clause = (
        "p preserves the Newton polyhedron (sufficient check: after "
        "clearing denominators no generator coefficient is divisible by p)"
    )
    if all(s > 1 for s in sums):
        return LctVerdict(
            case=CASE_DIAGONAL_ABOVE_T,
            value=Fraction(t),
            t=t,
            rho_blocks=rho_blocks,
            block_sums=sums,
            prime_predicate=(
                "the first base-p digits of every block sum to at least p, and "
                + newton_clause
            ),
            checked_primes=(),
            failed_hypothesis=None,
        )
    if all(s <= 1 for s in sums):
        return LctVerdict(
            case=CASE_DIAGONAL_AT_MOST_T,
            value=cert.M,
            t=t,
            rho_blocks=rho_blocks,
            block_sums=sums,
            prime_predicate=(
                "every block adds without carrying in base p, and "
                + newton_clause
            ),
            checked_primes=(),
            failed_hypothesis=None,
        )
    return LctVerdict(
        case=CASE_INCONCLUSIVE,
        value=None,
        t=t,
        rho_blocks=rho_blocks,
        block_sums=sums,
        prime_predicate="",
        checked_primes=(),
        failed_hypothesis=(
            "mixed block coordinate sums (%s): some exceed 1 and some do not"
            % ", ".join(str(s) for s in sums)
        ),
    )


def newton_polyhedron_preserved(generators, p):
    """Sufficient check for the reduction mod p keeping the Newton
    polyhedron: after scaling each generator by the lcm of its
    coefficient denominators, no coefficient is divisible by p."""
    _check_prime(p)
    for g in generators:
        if g.ring != QQ:
            raise RingMismatch("the check applies to rational generators")
        if g.is_zero():
            return False
        scale = math.lcm(*[c.denominator for c in g.terms.values()])
        if scale % p == 0:
            return False
        for c in g.terms.values():
            if int(c * scale) % p == 0:
                return False
    return True


@dataclass(frozen=True)
class PrimeCheck:
    """Verification of a classifier verdict at one concrete prime.

    ``holds`` certifies that the mod-p threshold equals the verdict
    value at this p.  ``big_enough_caveat`` stays True because the
    identification with the characteristic-zero threshold rests on an
    asymptotic comparison with no effective bound; it is reported
    separately and never folded into ``holds``.
    """

    p: int
    case: str
    target_value: Fraction
    newton_preserved: bool
    predicate_member: bool
    certificate_kind: object  # str or None when not computed
    certificate_value: object  # Fraction or None
    holds: bool
    big_enough_caveat: bool

    def __bool__(self):
        return self.holds

    def to_json_dict(self):
        return {
            "p": self.p,
            "case": self.case,
            "target_value": str(self.target_value),
            "newton_preserved": self.newton_preserved,
            "predicate_member": self.predicate_member,
            "certificate_kind": self.certificate_kind,
            "certificate_value": (
                None if self.certificate_value is None else str(self.certificate_value)
            ),
            "holds": self.holds,
            "big_enough_caveat": self.big_enough_caveat,
        }


def verify_prime(generators, p, verdict):
    """Check a conclusive verdict at one prime.

    The sufficient Newton polyhedron check must pass, and the mod-p
    certificate must pin the verdict value: in the above-t case the
    bound must reach t (the upper bound min(t, |rho|) is then also t);
    in the at-most-t case the certificate must be exact with value
    |rho|.  Predicate membership is evaluated and reported but the
    decision rests on the certificate.
    """
    _check_prime(p)
    if not isinstance(verdict, LctVerdict):
        raise InputError("verify_prime needs the verdict of the classifier")
    if not verdict.conclusive:
        raise InputError("the verdict is inconclusive; nothing to verify")
    generators = tuple(generators)
    preserved = newton_polyhedron_preserved(generators, p)
    if verdict.case == CASE_DIAGONAL_ABOVE_T:
        predicate_member = in_P_rho_0(verdict.rho_blocks, p)
    else:
        predicate_member = in_P_rho_inf(verdict.rho_blocks, p)
    certificate_kind = None
    certificate_value = None
    holds = False
    if preserved:
        certificate = fpt_bound(generators, p)
        certificate_kind = certificate.kind
        certificate_value = certificate.value
        if verdict.case == CASE_DIAGONAL_ABOVE_T:
            holds = certificate.value == verdict.value
        else:
            holds = (
                certificate.kind == KIND_EXACT
                and certificate.value == verdict.value
            )
    return PrimeCheck(
        p=p,
        case=verdict.case,
        target_value=verdict.value,
        newton_preserved=preserved,
        predicate_member=predicate_member,
        certificate_kind=certificate_kind,
        certificate_value=certificate_value,
        holds=holds,
        big_enough_caveat=True,
    )
