"""Prime fields F_p and binomial coefficients reduced modulo p."""

from functools import lru_cache

from .errors import DivisionByZero, LengthMismatch, MixedField

MAX_PRIME = 2 ** 31


def is_prime(n):
    """Deterministic Miller-Rabin, exact for every n < 3,215,031,751."""
    if n < 2:
        return False
    for small in (2, 3, 5, 7):
        if n % small == 0:
            return n == small
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """The field of residues modulo a prime ``p`` (``2 <= p < 2**31``).

    Instances are interned, so ``PrimeField(5) is PrimeField(5)``.
    """

    _instances = {}

    def __new__(cls, p):
        p = int(p)
        field = cls._instances.get(p)
        if field is None:
            if not 2 <= p < MAX_PRIME or not is_prime(p):
                raise ValueError(f"{p} is not a prime in [2, 2**31)")
            field = super().__new__(cls)
            field.p = p
            cls._instances[p] = field
        return field

    def __getnewargs__(self):
        return (self.p,)

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __call__(self, value):
        return FieldElement(value, self)

    def __iter__(self):
        for v in range(self.p):
            yield FieldElement(v, self)

    @property
    def zero(self):
        return FieldElement(0, self)

    @property
    def one(self):
        return FieldElement(1, self)

    def inv(self, value):
        """Inverse of an integer residue, returned as an integer."""
        value %= self.p
        if value == 0:
            raise DivisionByZero(f"0 has no inverse mod {self.p}")
        return pow(value, self.p - 2, self.p)


class FieldElement:
    """An element of a :class:`PrimeField`, stored as its canonical residue."""

    __slots__ = ("value", "field")

    def __init__(self, value, field):
        if isinstance(field, int):
            field = PrimeField(field)
        self.field = field
        self.value = int(value) % field.p

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise MixedField(f"cannot combine elements of F_{self.field.p} and F_{other.field.p}")
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FieldElement(self.value + v, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FieldElement(self.value - v, self.field)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FieldElement(v - self.value, self.field)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FieldElement(self.value * v, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value, self.field)

    def inv(self):
        return FieldElement(self.field.inv(self.value), self.field)

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FieldElement(self.value * self.field.inv(v), self.field)

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FieldElement(v * self.field.inv(self.value), self.field)

    def __pow__(self, exponent):
        if exponent < 0:
            return self.inv() ** (-exponent)
        return FieldElement(pow(self.value, exponent, self.field.p), self.field)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field is other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"F{self.field.p}({self.value})"

    def __str__(self):
        return str(self.value)


def arith(a, b, op):
    """Dispatch ``op`` in {add, sub, mul, div, pow, inv} on field elements.

    For ``pow`` the second operand is an integer exponent; for ``inv`` it is
    ignored.
    """
    if op == "inv":
        return a.inv()
    if op == "pow":
        return a ** int(b)
    if isinstance(b, FieldElement) and b.field is not a.field:
        raise MixedField(f"cannot combine elements of F_{a.field.p} and F_{b.field.p}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


@lru_cache(maxsize=None)
def _small_binomial(n, k, p):
    # n < p here, so every factor below is invertible mod p
    if k < 0 or k > n:
        return 0
    k = min(k, n - k)
    num = den = 1
    for i in range(k):
        num = num * (n - i) % p
        den = den * (i + 1) % p
    return num * pow(den, p - 2, p) % p


def binomial_residue(n, k, p):
    """C(n, k) mod p as an integer, by Lucas' theorem on base-p digits."""
    if k < 0 or k > n:
        return 0
    result = 1
    while k:
        n, n_digit = divmod(n, p)
        k, k_digit = divmod(k, p)
        if k_digit > n_digit:
            return 0
        result = result * _small_binomial(n_digit, k_digit, p) % p
    return result


def binomial_mod_p(n, k, p):
    return FieldElement(binomial_residue(n, k, p), PrimeField(p))


@lru_cache(maxsize=None)
def multiindex_binomial_residue(k, i, p):
    """Product over coordinates of C(k_t, i_t) mod p, as an integer."""
    if len(k) != len(i):
        raise LengthMismatch(f"multi-indices of lengths {len(k)} and {len(i)}")
    result = 1
    for kt, it in zip(k, i):
        result = result * binomial_residue(kt, it, p) % p
        if not result:
            return 0
    return result


def multiindex_binomial(k, i, p):
    return FieldElement(multiindex_binomial_residue(tuple(k), tuple(i), p), PrimeField(p))
