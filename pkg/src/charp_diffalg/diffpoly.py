"""Differential polynomials over F_p in derivative variables ``theta y_i``.

Monomials are tuples of ``(DerivativeVariable, exponent)`` pairs sorted by
the variable order; a polynomial is a dict ``monomial -> residue`` with no
zero entries. Derivations act by the Leibniz rule with
``d_t(theta y_i) = (theta + e_t) y_i``.

Text grammar (whitespace insignificant, integers reduced mod p)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' NAT)?
    atom   := INT | VAR | DOP '(' VAR ')' | '(' expr ')'
    VAR    := 'y' NAT
    DOP    := 'D[' NAT (',' NAT)* ']'      (exactly m entries)
"""

from typing import NamedTuple

from .errors import (IndexOutOfRange, ParseError, PrecisionExhausted,
                     ShapeMismatch, UnknownVariable)
from .field import FieldElement, PrimeField
from .hurwitz import TruncatedHurwitzSeries, unit_index


class DerivativeVariable(NamedTuple):
    var: int
    theta: tuple

    @property
    def order(self):
        return sum(self.theta)

    def sort_key(self):
        return (self.var, sum(self.theta), self.theta)

    def shifted(self, t):
        return DerivativeVariable(self.var, tuple(
            x + 1 if s == t - 1 else x for s, x in enumerate(self.theta)))

    def format(self):
        if any(self.theta):
            return f"D[{','.join(str(x) for x in self.theta)}](y{self.var})"
        return f"y{self.var}"


def monomial_key(mono):
    return (sum(e for _, e in mono), tuple((v.sort_key(), e) for v, e in mono))


def _mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items(), key=lambda ve: ve[0].sort_key()))


def _mono_from(exps):
    return tuple(sorted(((v, e) for v, e in exps.items() if e), key=lambda ve: ve[0].sort_key()))


class DiffPolynomial:
    """An element of F_p{y_1..y_n} with ``m`` commuting derivations."""

    __slots__ = ("field", "n", "m", "terms")

    def __init__(self, field, n, m, terms=None):
        if isinstance(field, int):
            field = PrimeField(field)
        self.field = field
        self.n = n
        self.m = m
        p = field.p
        clean = {}
        for mono, c in (terms or {}).items():
            for v, e in mono:
                if not 1 <= v.var <= n or len(v.theta) != m or e <= 0:
                    raise ShapeMismatch(f"bad factor {v}^{e} for n={n}, m={m}")
            mono = _mono_from(dict(mono))
            c = (clean.get(mono, 0) + int(c)) % p
            if c:
                clean[mono] = c
            else:
                clean.pop(mono, None)
        self.terms = clean

    @classmethod
    def _raw(cls, field, n, m, terms):
        obj = object.__new__(cls)
        obj.field = field
        obj.n = n
        obj.m = m
        obj.terms = terms
        return obj

    @classmethod
    def constant(cls, field, n, m, c):
        return cls(field, n, m, {(): c})

    @classmethod
    def variable(cls, field, n, m, i, theta=None, c=1):
        theta = tuple(theta) if theta is not None else (0,) * m
        return cls(field, n, m, {((DerivativeVariable(i, theta), 1),): c})

    @classmethod
    def from_dvar(cls, field, n, m, v):
        return cls(field, n, m, {((v, 1),): 1})

    @property
    def p(self):
        return self.field.p

    @property
    def order(self):
        """Largest ``ord(theta)`` among the factors; 0 for constants."""
        return max((v.order for mono in self.terms for v, _ in mono), default=0)

    @property
    def degree(self):
        return max((sum(e for _, e in mono) for mono in self.terms), default=0)

    def variables(self):
        return sorted({v for mono in self.terms for v, _ in mono}, key=DerivativeVariable.sort_key)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: monomial_key(mc[0]))

    def is_zero(self):
        return not self.terms

    def coefficient(self, mono):
        return FieldElement(self.terms.get(mono, 0), self.field)

    # arithmetic -------------------------------------------------------

    def _check(self, other):
        if other.field is not self.field:
            raise ShapeMismatch(f"polynomials over F_{self.p} and F_{other.p}")
        if other.n != self.n or other.m != self.m:
            raise ShapeMismatch(
                f"polynomials over (F_{self.p}, n={self.n}, m={self.m}) "
                f"and (F_{other.p}, n={other.n}, m={other.m})")

    def _lift(self, other):
        if isinstance(other, DiffPolynomial):
            self._check(other)
            return other
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ShapeMismatch("scalar from a different field")
            other = other.value
        if isinstance(other, int):
            return DiffPolynomial.constant(self.field, self.n, self.m, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        p = self.p
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = (out.get(mono, 0) + c) % p
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return DiffPolynomial._raw(self.field, self.n, self.m, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return DiffPolynomial._raw(self.field, self.n, self.m,
                                   {mono: p - c for mono, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        p = self.p
        out = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                mono = _mono_mul(ma, mb)
                out[mono] = (out.get(mono, 0) + ca * cb) % p
        return DiffPolynomial._raw(self.field, self.n, self.m,
                                   {mono: c for mono, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if exponent < 0:
            raise ValueError("negative powers are not supported")
        result = DiffPolynomial.constant(self.field, self.n, self.m, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, DiffPolynomial):
            return (self.field is other.field and self.n == other.n
                    and self.m == other.m and self.terms == other.terms)
        if isinstance(other, (int, FieldElement)):
            return self == self._lift(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.n, self.m, frozenset(self.terms.items())))

    # derivations ------------------------------------------------------

    def derive(self, t):
        """Leibniz extension of ``d_t`` (1-based direction)."""
        unit_index(self.m, t)
        p = self.p
        out = {}
        for mono, c in self.terms.items():
            exps = dict(mono)
            for v, e in mono:
                coeff = c * e % p
                if not coeff:
                    continue
                new = dict(exps)
                if e == 1:
                    del new[v]
                else:
                    new[v] = e - 1
                w = v.shifted(t)
                new[w] = new.get(w, 0) + 1
                key = _mono_from(new)
                out[key] = (out.get(key, 0) + coeff) % p
        return DiffPolynomial._raw(self.field, self.n, self.m,
                                   {mono: c for mono, c in out.items() if c})

    def apply_theta(self, theta):
        """Apply the derivative operator ``theta``, direction 1 first."""
        if len(theta) != self.m:
            raise ShapeMismatch(f"operator {theta} has length {len(theta)}, expected {self.m}")
        result = self
        for t, times in enumerate(theta, start=1):
            for _ in range(times):
                result = result.derive(t)
        return result

    # evaluation -------------------------------------------------------

    def eval(self, point):
        """Evaluate at a tuple of ``n`` series; precision drops by ``order``."""
        point = tuple(getattr(point, "coords", point))
        if len(point) != self.n:
            raise ShapeMismatch(f"point has {len(point)} coordinates, expected {self.n}")
        for a in point:
            if a.field is not self.field or a.m != self.m:
                raise ShapeMismatch("point coordinates must share the polynomial's field and m")
        base = min((a.precision for a in point), default=None)
        if base is None:
            raise ShapeMismatch("cannot evaluate at a point with no coordinates")
        prec = base - self.order
        if prec < 0:
            raise PrecisionExhausted(
                f"order {self.order} exceeds point precision {base}")
        cache = {}

        def value(v):
            if v not in cache:
                cache[v] = point[v.var - 1].apply_theta(v.theta).truncate(prec)
            return cache[v]

        total = TruncatedHurwitzSeries.zero(self.field, self.m, prec)
        for mono, c in self.terms.items():
            term = TruncatedHurwitzSeries.constant(self.field, self.m, prec, c)
            for v, e in mono:
                term = term * (value(v) ** e)
            total = total + term
        return total

    # text -------------------------------------------------------------

    def format(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            factors = "*".join(v.format() + (f"^{e}" if e > 1 else "") for v, e in mono)
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append(factors)
            else:
                parts.append(f"{c}*{factors}")
        return " + ".join(parts)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"DiffPolynomial(p={self.p}, n={self.n}, m={self.m}, {self.format()!r})"


def dp_add(f, g):
    return f + g


def dp_mul(f, g):
    return f * g


def dp_derive(f, t):
    return f.derive(t)


def dp_apply_theta(f, theta):
    return f.apply_theta(theta)


def dp_eval(f, point):
    return f.eval(point)


def dp_format(f):
    return f.format()


# parsing ------------------------------------------------------------------

class _Parser:
    def __init__(self, text, field, n, m, line):
        self.text = text
        self.field = field
        self.n = n
        self.m = m
        self.line = line
        self.pos = 0

    def error(self, message, pos=None, cls=ParseError):
        pos = self.pos if pos is None else pos
        raise cls(message, self.line, pos + 1)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            found = self.peek() or "end of input"
            self.error(f"expected {ch!r}, found {found!r}")
        self.pos += 1

    def nat(self):
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected a natural number")
        return int(self.text[start:self.pos])

    def const(self, c):
        return DiffPolynomial.constant(self.field, self.n, self.m, c)

    def parse(self):
        result = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return result

    def expr(self):
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        result = self.term()
        if sign < 0:
            result = -result
        while self.peek() in ("+", "-"):
            op = self.peek()
            self.pos += 1
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self):
        result = self.factor()
        while self.peek() == "*":
            self.pos += 1
            result = result * self.factor()
        return result

    def factor(self):
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            base = base ** self.nat()
        return base

    def var(self):
        if self.peek() != "y":
            self.error("expected a variable 'y<k>'")
        start = self.pos
        self.pos += 1
        if self.pos >= len(self.text) or not self.text[self.pos].isdigit():
            self.error("expected a variable index after 'y'")
        i = self.nat()
        if not 1 <= i <= self.n:
            self.error(f"unknown variable y{i} (n={self.n})", start, UnknownVariable)
        return i

    def atom(self):
        ch = self.peek()
        if ch.isdigit():
            return self.const(self.nat())
        if ch == "y":
            return DiffPolynomial.variable(self.field, self.n, self.m, self.var())
        if ch == "D":
            start = self.pos
            self.pos += 1
            if self.pos >= len(self.text) or self.text[self.pos] != "[":
                self.error("expected '[' after 'D'")
            self.pos += 1
            theta = [self.nat()]
            while self.peek() == ",":
                self.pos += 1
                theta.append(self.nat())
            self.expect("]")
            if len(theta) != self.m:
                self.error(f"derivative operator needs exactly {self.m} entries, got {len(theta)}",
                           start, IndexOutOfRange)
            self.expect("(")
            i = self.var()
            self.expect(")")
            return DiffPolynomial.variable(self.field, self.n, self.m, i, tuple(theta))
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            self.expect(")")
            return inner
        self.error(f"unexpected {ch!r}" if ch else "unexpected end of input")


def dp_parse(text, field, n, m, line=1):
    """Parse ``text`` into a polynomial over ``field`` with ``n`` variables."""
    if isinstance(field, int):
        field = PrimeField(field)
    return _Parser(text, field, n, m, line).parse()


parse_polynomial = dp_parse
