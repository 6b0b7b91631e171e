"""Sparse multivariate polynomials over the rationals and over prime fields.

A polynomial is a term map: exponent tuple -> nonzero coefficient.  Two
coefficient rings are supported, the rationals (Fraction coefficients)
and the integers mod a prime p (int coefficients in [1, p-1] once
normalized; zero terms are dropped).
"""

from fractions import Fraction

from .errors import (
    DenominatorDivisibleByP,
    InputError,
    ParseError,
    RingMismatch,
)


class Rationals:
    """Coefficient ring tag for exact rational arithmetic."""

    __slots__ = ()

    def coerce(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        raise InputError("rational coefficient expected, got %r" % (value,))

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Rationals")

    def __repr__(self):
        return "QQ"


class IntegersMod:
    """Coefficient ring tag for Z/pZ.  ``p`` must be prime for the
    rational coercion (modular inverses) to be meaningful."""

    __slots__ = ("p",)

    def __init__(self, p):
        if not isinstance(p, int) or p < 2:
            raise InputError("modulus must be an integer >= 2, got %r" % (p,))
        self.p = p

    def coerce(self, value):
        if isinstance(value, Fraction):
            num, den = value.numerator, value.denominator
            if den % self.p == 0:
                raise DenominatorDivisibleByP(
                    "denominator of %s is divisible by %d" % (value, self.p)
                )
            return num * pow(den, -1, self.p) % self.p
        if isinstance(value, int):
            return value % self.p
        raise InputError("mod-%d coefficient expected, got %r" % (self.p, value))

    def add(self, a, b):
        return (a + b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def __eq__(self, other):
        return isinstance(other, IntegersMod) and other.p == self.p

    def __hash__(self):
        return hash(("IntegersMod", self.p))

    def __repr__(self):
        return "GF(%d)" % self.p


QQ = Rationals()


def grlex_key(monomial):
    """Sort key: ascending total degree, ties broken by descending
    lexicographic order on the exponent tuple."""
    return (sum(monomial), tuple(-e for e in monomial))


class Polynomial:
    """Immutable-by-convention sparse polynomial."""

    __slots__ = ("ring", "varcount", "terms")

    def __init__(self, ring, varcount, terms):
        if varcount < 0:
            raise InputError("varcount must be nonnegative")
        clean = {}
        for monomial, coeff in terms.items():
            monomial = tuple(monomial)
            if len(monomial) != varcount:
                raise InputError(
                    "monomial %r has %d entries, expected %d"
                    % (monomial, len(monomial), varcount)
                )
            if any(not isinstance(e, int) or e < 0 for e in monomial):
                raise InputError("exponents must be nonnegative integers")
            c = ring.coerce(coeff)
            if c != ring.zero:
                clean[monomial] = c
        self.ring = ring
        self.varcount = varcount
        self.terms = clean

    @classmethod
    def zero(cls, ring, varcount):
        return cls(ring, varcount, {})

    @classmethod
    def one(cls, ring, varcount):
        return cls(ring, varcount, {(0,) * varcount: ring.one})

    @classmethod
    def monomial(cls, ring, exponents, coeff=None):
        exponents = tuple(exponents)
        return cls(ring, len(exponents), {exponents: ring.one if coeff is None else coeff})

    def is_zero(self):
        return not self.terms

    def _check_compatible(self, other):
        if not isinstance(other, Polynomial):
            raise RingMismatch("expected a polynomial, got %r" % (other,))
        if self.ring != other.ring:
            raise RingMismatch(
                "coefficient rings differ: %r vs %r" % (self.ring, other.ring)
            )
        if self.varcount != other.varcount:
            raise RingMismatch(
                "variable counts differ: %d vs %d" % (self.varcount, other.varcount)
            )

    def __add__(self, other):
        self._check_compatible(other)
        ring = self.ring
        terms = dict(self.terms)
        for mon, c in other.terms.items():
            if mon in terms:
                s = ring.add(terms[mon], c)
                if s == ring.zero:
                    del terms[mon]
                else:
                    terms[mon] = s
            else:
                terms[mon] = c
        out = Polynomial.zero(ring, self.varcount)
        out.terms = terms
        return out

    def __neg__(self):
        ring = self.ring
        out = Polynomial.zero(ring, self.varcount)
        out.terms = {mon: ring.neg(c) for mon, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check_compatible(other)
        ring = self.ring
        zero = ring.zero
        terms = {}
        for mon1, c1 in self.terms.items():
            for mon2, c2 in other.terms.items():
                mon = tuple(a + b for a, b in zip(mon1, mon2))
                c = ring.mul(c1, c2)
                if mon in terms:
                    s = ring.add(terms[mon], c)
                    if s == zero:
                        del terms[mon]
                    else:
                        terms[mon] = s
                elif c != zero:
                    terms[mon] = c
        out = Polynomial.zero(ring, self.varcount)
        out.terms = terms
        return out

    def __pow__(self, n):
        return poly_pow(self, n)

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.varcount == other.varcount
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, self.varcount, frozenset(self.terms.items())))

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(mon) for mon in self.terms)

    def __repr__(self):
        return "Polynomial(%r, %s)" % (self.ring, format_polynomial(self))


def poly_mul(a, b):
    """Product of two polynomials over the same ring."""
    return a * b


def poly_pow(a, n):
    """a**n for an integer n >= 0; a**0 is the constant 1."""
    if not isinstance(n, int) or n < 0:
        raise InputError("exponent must be a nonnegative integer, got %r" % (n,))
    result = Polynomial.one(a.ring, a.varcount)
    base = a
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result


def reduce_mod_p(a, p):
    """Image of a rational-coefficient polynomial in GF(p)[x].

    Terms whose coefficients reduce to zero are dropped.  Raises
    DenominatorDivisibleByP when some denominator is divisible by p.
    """
    if a.ring != QQ:
        raise RingMismatch("reduce_mod_p expects rational coefficients")
    ring = IntegersMod(p)
    terms = {}
    for mon, c in a.terms.items():
        r = ring.coerce(c)
        if r:
            terms[mon] = r
    out = Polynomial.zero(ring, a.varcount)
    out.terms = terms
    return out


def support(a):
    """The set of exponent tuples with nonzero coefficient."""
    return frozenset(a.terms)


def coefficient_of(a, monomial):
    """Coefficient of the given exponent tuple (ring zero if absent)."""
    monomial = tuple(monomial)
    if len(monomial) != a.varcount:
        raise InputError(
            "monomial %r has %d entries, expected %d"
            % (monomial, len(monomial), a.varcount)
        )
    return a.terms.get(monomial, a.ring.zero)


def in_frobenius_power(a, e):
    """True when every term of ``a`` lies in (x_1**q, ..., x_m**q) for
    q = p**e, i.e. each monomial has some exponent >= q.  The zero
    polynomial is contained in every ideal."""
    if not isinstance(a.ring, IntegersMod):
        raise RingMismatch("Frobenius powers are tested over GF(p)")
    if not isinstance(e, int) or e < 1:
        raise InputError("e must be a positive integer, got %r" % (e,))
    q = a.ring.p**e
    return all(any(exp >= q for exp in mon) for mon in a.terms)


# --- parsing -------------------------------------------------------------
#
# poly   := ['-'] term (('+' | '-') term)*
# term   := coeff ('*'? factor)* | factor ('*' factor)*
# factor := VAR ('^' UINT)?
# coeff  := UINT | UINT '/' UINT
#
# Whitespace is insignificant.  No parentheses.

_IDENT_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
_IDENT_CONT = _IDENT_START | set("0123456789")


class _Scanner:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        if self.pos >= len(self.text):
            return ""
        return self.text[self.pos]

    def take_uint(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected an unsigned integer", start)
        return int(self.text[start : self.pos])

    def take_name(self):
        self.skip_ws()
        start = self.pos
        if self.pos >= len(self.text) or self.text[self.pos] not in _IDENT_START:
            raise ParseError("expected a variable name", start)
        while self.pos < len(self.text) and self.text[self.pos] in _IDENT_CONT:
            self.pos += 1
        return self.text[start : self.pos], start


def _parse_factor(scanner, index, exponents):
    name, start = scanner.take_name()
    if name not in index:
        raise ParseError("unknown variable '%s'" % name, start)
    power = 1
    if scanner.peek() == "^":
        scanner.pos += 1
        ch = scanner.peek()
        if ch == "-":
            raise ParseError("negative exponent", scanner.pos)
        power = scanner.take_uint()
    exponents[index[name]] += power


def _parse_term(scanner, index, varcount):
    coeff = Fraction(1)
    exponents = [0] * varcount
    saw_anything = False
    ch = scanner.peek()
    if ch.isdigit():
        num = scanner.take_uint()
        if scanner.peek() == "/":
            scanner.pos += 1
            at = scanner.pos
            den = scanner.take_uint()
            if den == 0:
                raise ParseError("zero denominator", at)
            coeff = Fraction(num, den)
        else:
            coeff = Fraction(num)
        saw_anything = True
    while True:
        ch = scanner.peek()
        if ch == "*":
            scanner.pos += 1
            _parse_factor(scanner, index, exponents)
            saw_anything = True
        elif ch in _IDENT_START:
            _parse_factor(scanner, index, exponents)
            saw_anything = True
        else:
            break
    if not saw_anything:
        raise ParseError("expected a term", scanner.pos)
    return coeff, tuple(exponents)


def parse_polynomial(text, variables):
    """Parse ``text`` into a Polynomial over the rationals.

    ``variables`` fixes both the variable names and their order (that
    is, the interpretation of exponent tuples).
    """
    variables = tuple(variables)
    if not variables:
        raise InputError("at least one variable is required")
    if len(set(variables)) != len(variables):
        raise InputError("duplicate variable name in %r" % (variables,))
    for name in variables:
        if not name or name[0] not in _IDENT_START or any(
            c not in _IDENT_CONT for c in name
        ):
            raise InputError("invalid variable name %r" % name)
    index = {name: i for i, name in enumerate(variables)}
    m = len(variables)

    scanner = _Scanner(text)
    if scanner.peek() == "":
        raise ParseError("empty polynomial", scanner.pos)
    terms = {}

    def accumulate(sign):
        coeff, mon = _parse_term(scanner, index, m)
        coeff = sign * coeff
        prev = terms.get(mon)
        total = coeff if prev is None else prev + coeff
        if total == 0:
            terms.pop(mon, None)
        else:
            terms[mon] = total

    sign = Fraction(1)
    if scanner.peek() == "-":
        scanner.pos += 1
        sign = Fraction(-1)
    elif scanner.peek() == "+":
        raise ParseError("a polynomial cannot start with '+'", scanner.pos)
    accumulate(sign)
    while True:
        ch = scanner.peek()
        if ch == "":
            break
        if ch == "+":
            scanner.pos += 1
            accumulate(Fraction(1))
        elif ch == "-":
            scanner.pos += 1
            accumulate(Fraction(-1))
        else:
            raise ParseError("unexpected character %r" % ch, scanner.pos)
    return Polynomial(QQ, m, terms)


def format_polynomial(a, variables=None):
    """Deterministic text form.

    Terms are ordered by ascending total degree with descending
    lexicographic tie-break, matching the column order used for
    exponent matrices.  ``parse_polynomial`` accepts the output.
    """
    if variables is None:
        variables = tuple("x%d" % (i + 1) for i in range(a.varcount))
    else:
        variables = tuple(variables)
        if len(variables) != a.varcount:
            raise InputError(
                "%d variable names supplied for %d variables"
                % (len(variables), a.varcount)
            )
    if not a.terms:
        return "0"

    def render(mon, coeff):
        factors = []
        for name, exp in zip(variables, mon):
            if exp == 1:
                factors.append(name)
            elif exp > 1:
                factors.append("%s^%d" % (name, exp))
        body = "*".join(factors)
        if not body:
            return str(coeff)
        if coeff == 1:
            return body
        return "%s*%s" % (coeff, body)

    pieces = []
    for mon in sorted(a.terms, key=grlex_key):
        coeff = a.terms[mon]
        negative = isinstance(coeff, Fraction) and coeff < 0
        text = render(mon, -coeff if negative else coeff)
        if not pieces:
            pieces.append("-" + text if negative else text)
        else:
            pieces.append(("- " if negative else "+ ") + text)
    return " ".join(pieces)
