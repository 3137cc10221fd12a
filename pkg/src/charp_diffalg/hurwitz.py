"""Truncated Hurwitz series over F_p with ``m`` commuting shift derivations.

A series is a sparse table ``multi-index -> residue`` kept on the
downward-closed window ``ord(k) <= N``. The window is an ideal for the
Hurwitz product, so sums and products are exact at the smaller of the two
precisions, while each derivation consumes one unit of precision.
"""

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .errors import ParseError, PrecisionExhausted, ShapeMismatch
from .field import FieldElement, PrimeField, multiindex_binomial_residue


def order(k):
    return sum(k)


def index_key(k):
    """Canonical index order: total order first, then lexicographic."""
    return (sum(k), k)


@lru_cache(maxsize=None)
def multi_indices(m, N):
    """All multi-indices of length ``m`` and total order ``<= N``, sorted."""
    if N < 0:
        return ()
    out = [k for k in product(range(N + 1), repeat=m) if sum(k) <= N]
    return tuple(sorted(out, key=index_key))


def unit_index(m, t):
    """The multi-index ``e_t`` for a 1-based derivation index ``t``."""
    if not 1 <= t <= m:
        raise ShapeMismatch(f"derivation index {t} outside 1..{m}")
    return tuple(1 if s == t - 1 else 0 for s in range(m))


def format_index(k):
    return "[" + ",".join(str(x) for x in k) + "]"


@dataclass(frozen=True)
class Comparison:
    """Outcome of a precision-aware comparison."""

    equal: bool
    precision: int

    def __bool__(self):
        return self.equal


class TruncatedHurwitzSeries:
    """An element of H F_p known on the indices of total order ``<= precision``."""

    __slots__ = ("field", "m", "precision", "_coeffs")

    def __init__(self, field, m, precision, coeffs=None):
        if isinstance(field, int):
            field = PrimeField(field)
        if m < 0 or precision < 0:
            raise ValueError("m and precision must be non-negative")
        self.field = field
        self.m = m
        self.precision = precision
        p = field.p
        clean = {}
        for k, v in (coeffs or {}).items():
            k = tuple(k)
            if len(k) != m:
                raise ShapeMismatch(f"index {k} has length {len(k)}, expected {m}")
            if any(x < 0 for x in k):
                raise ValueError(f"negative index {k}")
            if sum(k) > precision:
                continue
            v = int(v) % p
            if v:
                clean[k] = v
        self._coeffs = clean

    @classmethod
    def _raw(cls, field, m, precision, coeffs):
        obj = object.__new__(cls)
        obj.field = field
        obj.m = m
        obj.precision = precision
        obj._coeffs = coeffs
        return obj

    @classmethod
    def zero(cls, field, m, precision):
        return cls(field, m, precision)

    @classmethod
    def constant(cls, field, m, precision, c):
        return cls(field, m, precision, {(0,) * m: int(c)})

    @classmethod
    def one(cls, field, m, precision):
        return cls.constant(field, m, precision, 1)

    @classmethod
    def delta(cls, field, m, precision, k, c=1):
        """The series with a single coefficient ``c`` at index ``k``."""
        return cls(field, m, precision, {tuple(k): c})

    @property
    def p(self):
        return self.field.p

    def items(self):
        """Nonzero ``(index, residue)`` pairs in canonical index order."""
        return sorted(self._coeffs.items(), key=lambda kv: index_key(kv[0]))

    def coeff(self, k):
        k = tuple(k)
        if sum(k) > self.precision:
            raise PrecisionExhausted(f"index {k} beyond precision {self.precision}")
        return FieldElement(self._coeffs.get(k, 0), self.field)

    def __getitem__(self, k):
        return self.coeff(k)

    def dense(self):
        """Coefficient residues over :func:`multi_indices` (zeros included)."""
        return tuple(self._coeffs.get(k, 0) for k in multi_indices(self.m, self.precision))

    def sort_key(self):
        return (self.p, self.m, self.precision, self.dense())

    def is_zero(self):
        return not self._coeffs

    def truncate(self, precision):
        if precision > self.precision:
            raise PrecisionExhausted(f"cannot raise precision {self.precision} to {precision}")
        return TruncatedHurwitzSeries._raw(
            self.field, self.m, precision,
            {k: v for k, v in self._coeffs.items() if sum(k) <= precision})

    # arithmetic -------------------------------------------------------

    def _check(self, other):
        if other.field is not self.field:
            raise ShapeMismatch(f"series over F_{self.p} and F_{other.p}")
        if other.m != self.m:
            raise ShapeMismatch(
                f"series over (F_{self.p}, m={self.m}) and (F_{other.p}, m={other.m})")

    def _lift(self, other):
        if isinstance(other, TruncatedHurwitzSeries):
            self._check(other)
            return other
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ShapeMismatch("scalar from a different field")
            other = other.value
        if isinstance(other, int):
            return TruncatedHurwitzSeries.constant(self.field, self.m, self.precision, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        N = min(self.precision, other.precision)
        p = self.p
        out = {k: v for k, v in self._coeffs.items() if sum(k) <= N}
        for k, v in other._coeffs.items():
            if sum(k) <= N:
                s = (out.get(k, 0) + v) % p
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return TruncatedHurwitzSeries._raw(self.field, self.m, N, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return TruncatedHurwitzSeries._raw(
            self.field, self.m, self.precision, {k: p - v for k, v in self._coeffs.items()})

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
        N = min(self.precision, other.precision)
        p = self.p
        out = {}
        for i, a in self._coeffs.items():
            oi = sum(i)
            if oi > N:
                continue
            for j, b in other._coeffs.items():
                if oi + sum(j) > N:
                    continue
                k = tuple(x + y for x, y in zip(i, j))
                c = multiindex_binomial_residue(k, i, p)
                if c:
                    out[k] = (out.get(k, 0) + c * a * b) % p
        return TruncatedHurwitzSeries._raw(
            self.field, self.m, N, {k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if exponent < 0:
            raise ValueError("negative powers are not supported")
        result = TruncatedHurwitzSeries.one(self.field, self.m, self.precision)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def derive(self, t):
        """Shift derivation along the 1-based direction ``t``."""
        e = unit_index(self.m, t)
        if self.precision == 0:
            raise PrecisionExhausted("cannot differentiate a series of precision 0")
        s = t - 1
        out = {}
        for k, v in self._coeffs.items():
            if k[s]:
                out[tuple(x - y for x, y in zip(k, e))] = v
        return TruncatedHurwitzSeries._raw(self.field, self.m, self.precision - 1, out)

    def apply_theta(self, theta):
        """Apply the derivative operator with exponent multi-index ``theta``."""
        result = self
        for t, times in enumerate(theta, start=1):
            for _ in range(times):
                result = result.derive(t)
        return result

    def pi(self):
        """The free term: coefficient at the zero multi-index."""
        return FieldElement(self._coeffs.get((0,) * self.m, 0), self.field)

    def pth_power(self):
        return self ** self.p

    # comparison -------------------------------------------------------

    def compare(self, other):
        """Agreement on the shared window; reports the precision used."""
        self._check(other)
        N = min(self.precision, other.precision)
        a = {k: v for k, v in self._coeffs.items() if sum(k) <= N}
        b = {k: v for k, v in other._coeffs.items() if sum(k) <= N}
        return Comparison(a == b, N)

    def __eq__(self, other):
        if isinstance(other, TruncatedHurwitzSeries):
            if other.field is not self.field or other.m != self.m:
                return False
            return self.compare(other).equal
        if isinstance(other, (int, FieldElement)):
            return self == self._lift(other)
        return NotImplemented

    __hash__ = None

    def identical(self, other):
        """Strict equality, precision included."""
        return (self.field is other.field and self.m == other.m
                and self.precision == other.precision and self._coeffs == other._coeffs)

    # text -------------------------------------------------------------

    def format_terms(self):
        if not self._coeffs:
            return "0"
        return " ".join(f"{format_index(k)}={v}" for k, v in self.items())

    def format(self):
        head = f"p={self.p} m={self.m} N={self.precision} :"
        if not self._coeffs:
            return head
        return head + " " + " ".join(f"{format_index(k)}={v}" for k, v in self.items())

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"TruncatedHurwitzSeries({self.format()!r})"


def hw_add(f, g):
    return f + g


def hw_mul(f, g):
    return f * g


def hw_derive(f, t):
    return f.derive(t)


def hw_pi(f):
    return f.pi()


def hw_pth_power(f):
    return f.pth_power()


_HEADER = re.compile(r"\s*p\s*=\s*(\d+)\s+m\s*=\s*(\d+)\s+N\s*=\s*(\d+)\s*:")
_TERM = re.compile(r"\s*\[\s*(\d+(?:\s*,\s*\d+)*)?\s*\]\s*=\s*(-?\d+)")


def parse_series(text, line=1):
    """Parse ``p=2 m=1 N=3 : [0]=1 [1]=1`` into a series."""
    match = _HEADER.match(text)
    if not match:
        raise ParseError("expected header 'p=<prime> m=<m> N=<precision> :'", line, 1)
    p, m, N = (int(g) for g in match.groups())
    try:
        field = PrimeField(p)
    except ValueError as exc:
        raise ParseError(str(exc), line, match.start(1) + 1) from None
    pos = match.end()
    coeffs = {}
    while pos < len(text):
        if not text[pos:].strip():
            break
        term = _TERM.match(text, pos)
        if not term:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise ParseError("expected a term '[i,...]=c'", line, col)
        idx = tuple(int(x) for x in term.group(1).split(",")) if term.group(1) else ()
        if len(idx) != m:
            raise ParseError(f"index {idx} must have {m} entries", line, term.start(1) + 1)
        if sum(idx) > N:
            raise ParseError(f"index {idx} exceeds precision {N}", line, term.start(1) + 1)
        if idx in coeffs:
            raise ParseError(f"duplicate index {idx}", line, term.start(1) + 1)
        coeffs[idx] = int(term.group(2))
        pos = term.end()
    return TruncatedHurwitzSeries(field, m, N, coeffs)


def format_series(f):
    return f.format()
