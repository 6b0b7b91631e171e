"""Volume-type invariants for tuples of ideals in prime characteristic.

For ideals a_1, ..., a_t inside the maximal ideal, the escape set
V(p^e) collects the exponent tuples (n_1, ..., n_t) with
a_1**n_1 ... a_t**n_t not inside (x_1**q, ..., x_m**q), q = p**e.  Its
normalized count Card V(p^e) / p**(e t) converges; the limit admits a
certified lower bound built from the same digit data as the threshold
certificate, and a brute-force counter provides the oracle.
"""

from dataclasses import dataclass
from fractions import Fraction

from .basep import carry_horizon, truncation
from .budgets import Budgets, Meter
from .errors import FptcertError, InputError, RingMismatch
from .geometry import exponent_matrix, maximal_point, reduce_generators, vertices
from .polyring import IntegersMod, Polynomial, in_frobenius_power
from .thresholds import _check_prime, _to_fp_generators, _unique_rho


@dataclass(frozen=True)
class FVolumeCertificate:
    """Certified lower bound for the limiting normalized count, with
    optional brute-force counts at small e for comparison."""

    p: int
    bound: Fraction
    rho_blocks: tuple
    horizons: tuple
    finite_indices: tuple
    counts: tuple  # rows (e, card, normalized) or empty

    def to_json_dict(self):
        return {
            "p": self.p,
            "bound": str(self.bound),
            "counts": [[e, card, str(ratio)] for e, card, ratio in self.counts],
        }


def fvolume_lower_bound(generators, p, budgets=None):
    """Lower bound for the volume of the tuple of principal ideals
    (f_1), ..., (f_t): the product over blocks of |rho_i| when the
    block adds without carrying, and |<rho_i>_{S_i}| + p**-S_i at a
    finite carry horizon S_i."""
    del budgets
    _, _, cert = _unique_rho(generators, p)
    rho_blocks = cert.blocks_of_rho
    horizons = tuple(carry_horizon(block, p) for block in rho_blocks)
    finite_indices = tuple(i for i, h in enumerate(horizons) if h.finite)
    bound = Fraction(1)
    for i, block in enumerate(rho_blocks):
        if i in finite_indices:
            s = horizons[i].value
            bound *= sum(truncation(a, p, s) for a in block) + Fraction(1, p**s)
        else:
            bound *= sum(block, Fraction(0))
    return FVolumeCertificate(
        p=p,
        bound=bound,
        rho_blocks=rho_blocks,
        horizons=horizons,
        finite_indices=finite_indices,
        counts=(),
    )


def _to_fp_ideals(ideals, p):
    ideals = [tuple(gens) for gens in ideals]
    if not ideals:
        raise InputError("at least one ideal is required")
    out = []
    for i, gens in enumerate(ideals):
        if not gens:
            raise InputError("ideal %d has no generators" % i)
        out.append(_to_fp_generators(gens, p))
    varcount = out[0][0].varcount
    for gens in out:
        for g in gens:
            if g.varcount != varcount:
                raise RingMismatch("ideals live in different polynomial rings")
    return tuple(out)


def _ideal_ring_prime(ideals):
    ring = None
    for gens in ideals:
        for g in gens:
            if not isinstance(g, Polynomial):
                raise InputError("ideal generators must be polynomials")
            if ring is None:
                ring = g.ring
    if ring is None:
        raise InputError("at least one generator is required")
    if not isinstance(ring, IntegersMod):
        raise RingMismatch("counting needs generators over GF(p)")
    return ring.p


class _IdealPowers:
    """Products of n generators (repetition allowed) of one ideal,
    extended level by level; the level-n products generate a_i**n."""

    def __init__(self, gens, meter):
        self.gens = gens
        self.meter = meter
        one = Polynomial.one(gens[0].ring, gens[0].varcount)
        # entries (last index used, product); nondecreasing index
        # extension enumerates each multiset exactly once
        self.levels = [[(0, one)]]

    def products(self, n):
        while len(self.levels) <= n:
            nxt = []
            for last, poly in self.levels[-1]:
                for j in range(last, len(self.gens)):
                    self.meter.charge_multisets()
                    self.meter.charge_terms(
                        len(poly.terms) * len(self.gens[j].terms)
                    )
                    nxt.append((j, poly * self.gens[j]))
            self.levels.append(nxt)
        return self.levels[n]


def fvolume_points(ideals, e, budgets=None):
    """The escape set V(p^e) itself, sorted: all (n_1, ..., n_t) with
    a_1**n_1 ... a_t**n_t not inside the e-th Frobenius power of the
    maximal ideal.  Found by breadth-first search from the origin;
    membership is tested on the products of the per-ideal power
    generators, and the search asserts that the set is downward closed,
    which the containment order forces.
    """
    p = _ideal_ring_prime(ideals)
    _check_prime(p)
    fp_ideals = []
    for i, gens in enumerate(ideals):
        gens = tuple(gens)
        for g in gens:
            if not isinstance(g.ring, IntegersMod) or g.ring.p != p:
                raise RingMismatch("ideal %d mixes coefficient rings" % i)
            if g.is_zero():
                raise InputError("ideal %d has a zero generator" % i)
            if (0,) * g.varcount in g.terms:
                raise InputError("ideal %d is not inside the maximal ideal" % i)
        fp_ideals.append(gens)
    varcount = fp_ideals[0][0].varcount
    for gens in fp_ideals:
        for g in gens:
            if g.varcount != varcount:
                raise RingMismatch("ideals live in different polynomial rings")
    if not isinstance(e, int) or e < 1:
        raise InputError("e must be a positive integer")

    meter = Meter(budgets if budgets is not None else Budgets.from_env())
    t = len(fp_ideals)
    powers = [_IdealPowers(gens, meter) for gens in fp_ideals]

    def member(point):
        factor_lists = [powers[i].products(n) for i, n in enumerate(point)]
        return _any_product_escapes(factor_lists, e, meter)

    status = {}
    queue = [(0,) * t]
    head = 0
    members = []
    while head < len(queue):
        point = queue[head]
        head += 1
        if point in status:
            continue
        escaped = member(point)
        status[point] = escaped
        if not escaped:
            continue
        for i in range(t):
            if point[i] == 0:
                continue
            parent = point[:i] + (point[i] - 1,) + point[i + 1:]
            if status.get(parent) is not True:
                raise FptcertError(
                    "internal: escape set not downward closed at %r" % (point,)
                )
        members.append(point)
        for i in range(t):
            queue.append(point[:i] + (point[i] + 1,) + point[i + 1:])
    return sorted(members)


def fvolume_count(ideals, e, budgets=None):
    """Card V(p^e); see fvolume_points."""
    return len(fvolume_points(ideals, e, budgets))


def _any_product_escapes(factor_lists, e, meter):
    def recurse(i, acc):
        if in_frobenius_power(acc, e):
            return False
        if i == len(factor_lists):
            return True
        for _, poly in factor_lists[i]:
            meter.charge_multisets()
            meter.charge_terms(len(acc.terms) * len(poly.terms))
            if recurse(i + 1, acc * poly):
                return True
        return False

    first = factor_lists[0][0][1]
    one = Polynomial.one(first.ring, first.varcount)
    return recurse(0, one)


def volume_witness_floor(certificate, scan_level):
    """Per-level floor certified by the digit construction behind the
    bound: Card V(p**E) >= p**(E t) * volume_witness_floor(cert, E).

    Per block the factor is |<rho_i>_E| while still carry-free at E,
    and |<rho_i>_{S_i}| + (p**(E - S_i) - 1) / p**E past a finite
    horizon; the box below the witness tuple lies inside V(p**E) by
    downward closure.
    """
    if not isinstance(scan_level, int) or scan_level < 1:
        raise InputError("scan level must be a positive integer")
    p = certificate.p
    product = Fraction(1)
    for block, horizon in zip(certificate.rho_blocks, certificate.horizons):
        if horizon.finite and horizon.value < scan_level:
            s = horizon.value
            factor = sum(truncation(a, p, s) for a in block)
            factor += Fraction(p ** (scan_level - s) - 1, p**scan_level)
        else:
            factor = sum(truncation(a, p, scan_level) for a in block)
        product *= factor
    return product


def fvolume_estimate(ideals, p, e_max, budgets=None):
    """Rows (e, Card V(p^e), Card V(p^e) / p**(e t)) for e = 1..e_max.
    Rational generators are reduced mod p first."""
    if not isinstance(e_max, int) or e_max < 1:
        raise InputError("e_max must be a positive integer")
    fp_ideals = _to_fp_ideals(ideals, p)
    t = len(fp_ideals)
    rows = []
    for e in range(1, e_max + 1):
        card = fvolume_count(fp_ideals, e, budgets)
        rows.append((e, card, Fraction(card, p ** (e * t))))
    return rows


def term_ideal_volume_bound(generators, budgets=None):
    """Candidate bound for the volume of the tuple of term ideals
    spanned by the blocks: the best product of block sums over the
    polytope vertices together with the maximal point.  The true value
    maximizes the product over the whole polytope, so this is a lower
    bound certified only at the evaluated points.

    Returns (bound, witness point).
    """
    generators = tuple(generators)
    mapping = reduce_generators(generators)
    matrix = exponent_matrix(mapping)
    candidates = set(vertices(matrix, budgets))
    cert = maximal_point(matrix)
    if cert.unique:
        candidates.add(cert.rho)
    best = None
    witness = None
    for point in sorted(candidates):
        value = Fraction(1)
        for block in matrix.split(point):
            value *= sum(block, Fraction(0))
        if best is None or value > best:
            best = value
            witness = point
    return best, witness
