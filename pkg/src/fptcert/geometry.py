"""Splitting polytopes, exponent matrices, and Newton polyhedron duality.

The reduced support list of generators (f_1, ..., f_t) drops from each
f_i every monomial that already appeared in an earlier generator,
regardless of coefficients.  The surviving exponent vectors, in block
order, are the columns of the exponent matrix E, and the splitting
polytope is {gamma >= 0 : E gamma <= 1}.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .budgets import Budgets, Meter
from .errors import (
    DimensionTooLarge,
    EmptyBlock,
    InputError,
    NotDiagonal,
    NotInMaximalIdeal,
    RingMismatch,
)
from .polyring import Polynomial, grlex_key
from .simplex import LpInfeasible, solve_lp

__all__ = [
    "ReducedMapping",
    "ExponentMatrix",
    "MaximalPointCert",
    "reduce_generators",
    "exponent_matrix",
    "lp_maximize",
    "maximal_point",
    "vertices",
    "newton_min_diagonal",
    "diagonal_position",
    "diagonal_face_columns",
]


@dataclass(frozen=True)
class ReducedMapping:
    """Deduplicated support lists of a generator sequence."""

    varcount: int
    blocks: tuple  # tuple of tuples of exponent tuples, grlex-sorted
    coeff_columns: tuple  # original coefficients, aligned with blocks
    original_generators: tuple

    @property
    def block_sizes(self):
        return tuple(len(block) for block in self.blocks)


@dataclass(frozen=True)
class ExponentMatrix:
    """Columns are exponent vectors grouped into blocks."""

    varcount: int
    columns: tuple  # tuple of exponent tuples, concatenated block order
    block_sizes: tuple

    @property
    def width(self):
        return len(self.columns)

    @property
    def block_boundaries(self):
        """Start offsets of each block plus the final end offset."""
        bounds = [0]
        for size in self.block_sizes:
            bounds.append(bounds[-1] + size)
        return tuple(bounds)

    @property
    def rows(self):
        """Row-major m x N integer entries."""
        return tuple(
            tuple(col[i] for col in self.columns) for i in range(self.varcount)
        )

    def split(self, vector):
        """Cut a length-N vector into per-block tuples."""
        if len(vector) != self.width:
            raise InputError("vector length %d does not match width %d"
                             % (len(vector), self.width))
        bounds = self.block_boundaries
        return tuple(
            tuple(vector[bounds[i]:bounds[i + 1]])
            for i in range(len(self.block_sizes))
        )


def reduce_generators(generators):
    """Build the ReducedMapping of a generator sequence.

    Every generator must be a nonzero polynomial without constant term,
    over one common ring.  Raises EmptyBlock when a generator's support
    is exhausted by earlier generators, NotInMaximalIdeal on a constant
    term.
    """
    generators = tuple(generators)
    if not generators:
        raise InputError("at least one generator is required")
    first = generators[0]
    for i, g in enumerate(generators):
        if not isinstance(g, Polynomial):
            raise InputError("generator %d is not a polynomial" % i)
        if g.ring != first.ring or g.varcount != first.varcount:
            raise RingMismatch("generator %d lives in a different ring" % i)
        if g.is_zero():
            raise InputError("generator %d is zero" % i)
        if (0,) * g.varcount in g.terms:
            raise NotInMaximalIdeal("generator %d has a constant term" % i)

    seen = set()
    blocks = []
    coeff_columns = []
    for i, g in enumerate(generators):
        fresh = set(g.terms) - seen
        if not fresh:
            raise EmptyBlock(
                "generator %d contributes no new monomials" % i
            )
        ordered = tuple(sorted(fresh, key=grlex_key))
        blocks.append(ordered)
        coeff_columns.append(tuple(g.terms[mon] for mon in ordered))
        seen |= set(g.terms)
    return ReducedMapping(
        varcount=first.varcount,
        blocks=tuple(blocks),
        coeff_columns=tuple(coeff_columns),
        original_generators=generators,
    )


def exponent_matrix(mapping):
    """ExponentMatrix of a ReducedMapping; columns keep block order and
    the grlex order inside each block."""
    columns = tuple(itertools.chain.from_iterable(mapping.blocks))
    for col in columns:
        if not any(col):
            raise NotInMaximalIdeal("zero column: a support vector is constant")
    return ExponentMatrix(
        varcount=mapping.varcount,
        columns=columns,
        block_sizes=mapping.block_sizes,
    )


def lp_maximize(objective, matrix):
    """Maximize objective.gamma over the splitting polytope of
    ``matrix``.  Returns (value, gamma) at a vertex."""
    if len(objective) != matrix.width:
        raise InputError("objective length does not match the matrix width")
    rows = [list(r) for r in matrix.rows]
    value, gamma = solve_lp(list(objective), rows, [Fraction(1)] * matrix.varcount)
    return value, tuple(gamma)


@dataclass(frozen=True)
class MaximalPointCert:
    """Outcome of maximizing the coordinate sum over the polytope."""

    M: Fraction
    rho: tuple  # None when the maximal face is not a single point
    unique: bool
    block_sizes: tuple
    coordinate_ranges: tuple  # (low, high) per coordinate on the face

    @property
    def blocks_of_rho(self):
        if self.rho is None:
            return None
        bounds = [0]
        for size in self.block_sizes:
            bounds.append(bounds[-1] + size)
        return tuple(
            tuple(self.rho[bounds[i]:bounds[i + 1]])
            for i in range(len(self.block_sizes))
        )

    @property
    def free_coordinates(self):
        return tuple(
            j for j, (lo, hi) in enumerate(self.coordinate_ranges) if lo != hi
        )


def maximal_point(matrix):
    """Maximize |gamma| over the polytope and decide whether the optimal
    face is a single point, by minimizing and maximizing every
    coordinate over that face."""
    N = matrix.width
    base_rows = [list(r) for r in matrix.rows]
    base_rhs = [Fraction(1)] * matrix.varcount
    M, _ = solve_lp([Fraction(1)] * N, base_rows, base_rhs)

    face_rows = base_rows + [[Fraction(-1)] * N]
    face_rhs = base_rhs + [-M]
    ranges = []
    for j in range(N):
        obj = [Fraction(0)] * N
        obj[j] = Fraction(1)
        high, _ = solve_lp(obj, face_rows, face_rhs)
        obj[j] = Fraction(-1)
        negated_low, _ = solve_lp(obj, face_rows, face_rhs)
        ranges.append((-negated_low, high))
    unique = all(lo == hi for lo, hi in ranges)
    rho = tuple(hi for _, hi in ranges) if unique else None
    return MaximalPointCert(
        M=M,
        rho=rho,
        unique=unique,
        block_sizes=matrix.block_sizes,
        coordinate_ranges=tuple(ranges),
    )


def _solve_square(rows, rhs):
    """Solve a square rational system by Gauss-Jordan elimination;
    returns None when singular."""
    n = len(rows)
    aug = [[Fraction(v) for v in rows[i]] + [Fraction(rhs[i])] for i in range(n)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot_row is None:
            return None
        aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


def vertices(matrix, budgets=None):
    """All vertices of the splitting polytope, sorted lexicographically.

    Every vertex satisfies N linearly independent tight constraints
    drawn from the m matrix rows and the N sign conditions.  The cap on
    N comes from the dimension budget; the number of candidate bases is
    charged against the multiset budget.
    """
    budgets = budgets if budgets is not None else Budgets.from_env()
    N = matrix.width
    m = matrix.varcount
    if N > budgets.max_dimension:
        raise DimensionTooLarge(
            "polytope dimension %d exceeds the cap %d" % (N, budgets.max_dimension)
        )
    meter = Meter(budgets)
    rows = [list(r) for r in matrix.rows]
    constraints = [(rows[i], Fraction(1)) for i in range(m)]
    for j in range(N):
        unit = [Fraction(0)] * N
        unit[j] = Fraction(-1)
        constraints.append((unit, Fraction(0)))

    found = {}
    for combo in itertools.combinations(range(len(constraints)), N):
        meter.charge_multisets()
        system = [constraints[k][0] for k in combo]
        rhs = [constraints[k][1] for k in combo]
        point = _solve_square(system, rhs)
        if point is None:
            continue
        if any(v < 0 for v in point):
            continue
        if any(
            sum(c * v for c, v in zip(rows[i], point)) > 1 for i in range(m)
        ):
            continue
        found[tuple(point)] = True
    return sorted(found)


def _dedupe_supports(supports):
    cleaned = set()
    for vector in supports:
        vector = tuple(int(v) for v in vector)
        if any(v < 0 for v in vector):
            raise InputError("support vectors must be nonnegative")
        if not any(vector):
            raise NotInMaximalIdeal("support contains the zero vector")
        cleaned.add(vector)
    if not cleaned:
        raise InputError("at least one support vector is required")
    lengths = {len(v) for v in cleaned}
    if len(lengths) != 1:
        raise InputError("support vectors have mixed lengths")
    return sorted(cleaned)


def _diagonal_system(points, scale):
    """Constraint rows for {lambda >= 0 : sum lambda = 1,
    sum lambda_a a = scale * 1} written as inequality pairs."""
    m = len(points[0])
    k = len(points)
    rows = []
    rhs = []
    for i in range(m):
        coords = [Fraction(a[i]) for a in points]
        rows.append(coords)
        rhs.append(Fraction(scale))
        rows.append([-c for c in coords])
        rhs.append(-Fraction(scale))
    rows.append([Fraction(1)] * k)
    rhs.append(Fraction(1))
    rows.append([Fraction(-1)] * k)
    rhs.append(Fraction(-1))
    return rows, rhs


def newton_min_diagonal(supports):
    """The smallest s with (s, ..., s) inside the Newton polyhedron of
    the support set: minimize s over convex combinations dominated by
    the diagonal."""
    points = _dedupe_supports(supports)
    k = len(points)
    m = len(points[0])
    # Variables: lambda_1..lambda_k, s.  Maximize -s subject to
    # sum lambda_a a_i - s <= 0 per coordinate and sum lambda = 1.
    rows = []
    rhs = []
    for i in range(m):
        rows.append([Fraction(a[i]) for a in points] + [Fraction(-1)])
        rhs.append(Fraction(0))
    rows.append([Fraction(1)] * k + [Fraction(0)])
    rhs.append(Fraction(1))
    rows.append([Fraction(-1)] * k + [Fraction(0)])
    rhs.append(Fraction(-1))
    objective = [Fraction(0)] * k + [Fraction(-1)]
    value, _ = solve_lp(objective, rows, rhs)
    s_star = -value
    if s_star <= 0:
        raise InputError("support vectors must be nonzero")
    return s_star


def diagonal_position(supports):
    """Whether the diagonal ray meets a compact face of the Newton
    polyhedron: the point s* (1, ..., 1) must be a convex combination
    of the support vectors themselves, with no recession part."""
    points = _dedupe_supports(supports)
    s_star = newton_min_diagonal(points)
    rows, rhs = _diagonal_system(points, s_star)
    try:
        solve_lp([Fraction(0)] * len(points), rows, rhs)
    except LpInfeasible:
        return False
    return True


def diagonal_face_columns(matrix):
    """Indices (0-based) of the columns lying on the face cut out by
    the diagonal ray.  Column j belongs to the face exactly when some
    convex combination hitting s* (1, ..., 1) gives it positive weight.
    Raises NotDiagonal when the ray meets no compact face."""
    columns = list(matrix.columns)
    if len(set(columns)) != len(columns):
        raise InputError("exponent matrix columns must be distinct")
    points = _dedupe_supports(columns)
    s_star = newton_min_diagonal(points)
    rows, rhs = _diagonal_system(points, s_star)
    k = len(points)
    weights = {}
    try:
        for idx, point in enumerate(points):
            objective = [Fraction(0)] * k
            objective[idx] = Fraction(1)
            best, _ = solve_lp(objective, rows, rhs)
            weights[point] = best
    except LpInfeasible:
        raise NotDiagonal(
            "the diagonal ray misses every compact face of the Newton polyhedron"
        )
    return tuple(
        j for j, col in enumerate(columns) if weights[col] > 0
    )
