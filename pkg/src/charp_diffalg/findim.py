"""Finite-dimensional commutative differential F_p-algebras and their ideals.

An algebra is given by structure constants on a basis ``e_0..e_{d-1}``
(``mul_table[i][j]`` is the vector of ``e_i e_j``), a unit vector, and ``m``
derivations (``derivations[t-1][i]`` is the vector of ``d_t e_i``). Elements
are tuples of residues. Ideals are subspaces in reduced row-echelon form.

Everything that quantifies over elements (nilpotents, zero-divisors) is done
by exhaustive enumeration under an explicit bound.
"""

from dataclasses import dataclass
from itertools import product
from typing import Optional

from . import bounds, linalg
from .errors import (CrossCheckFailed, EnumerationTooLarge, NotDifferential,
                     NotProper, ShapeMismatch)
from .field import PrimeField
from .report import Report, format_rows


class FinDimDiffAlgebra:
    def __init__(self, field, basis_names, unit, mul_table, derivations):
        if isinstance(field, int):
            field = PrimeField(field)
        self.field = field
        p = field.p
        d = len(basis_names)
        self.basis_names = tuple(str(b) for b in basis_names)
        if len(set(self.basis_names)) != d:
            raise ShapeMismatch("basis names must be distinct")

        def vec(v, what):
            v = tuple(int(x) % p for x in v)
            if len(v) != d:
                raise ShapeMismatch(f"{what} has length {len(v)}, expected {d}")
            return v

        self.unit = vec(unit, "unit")
        if len(mul_table) != d or any(len(row) != d for row in mul_table):
            raise ShapeMismatch(f"multiplication table must be {d}x{d}")
        self.mul_table = tuple(tuple(vec(v, f"product e{i}*e{j}") for j, v in enumerate(row))
                               for i, row in enumerate(mul_table))
        derivs = []
        for t, D in enumerate(derivations, start=1):
            if len(D) != d:
                raise ShapeMismatch(f"derivation {t} must have {d} rows")
            derivs.append(tuple(vec(v, f"D{t} e{i}") for i, v in enumerate(D)))
        self.derivations = tuple(derivs)
        self._cache = {}

    @property
    def p(self):
        return self.field.p

    @property
    def dim(self):
        return len(self.basis_names)

    @property
    def m(self):
        return len(self.derivations)

    def __repr__(self):
        return f"FinDimDiffAlgebra(p={self.p}, dim={self.dim}, m={self.m}, basis={self.basis_names})"

    def __eq__(self, other):
        if not isinstance(other, FinDimDiffAlgebra):
            return NotImplemented
        return (self.field is other.field and self.unit == other.unit
                and self.mul_table == other.mul_table and self.derivations == other.derivations)

    def __hash__(self):
        return hash((self.p, self.unit, self.mul_table, self.derivations))

    def same_tables(self, other):
        """Equality of structure constants, ignoring basis names."""
        return self == other

    # element arithmetic ----------------------------------------------

    def zero(self):
        return (0,) * self.dim

    def basis_vector(self, i):
        return tuple(1 if j == i else 0 for j in range(self.dim))

    def basis(self):
        return [self.basis_vector(i) for i in range(self.dim)]

    def add(self, x, y):
        p = self.p
        return tuple((a + b) % p for a, b in zip(x, y))

    def sub(self, x, y):
        p = self.p
        return tuple((a - b) % p for a, b in zip(x, y))

    def scale(self, c, x):
        p = self.p
        return tuple(c * a % p for a in x)

    def _check_vec(self, x):
        if len(x) != self.dim:
            raise ShapeMismatch(f"vector of length {len(x)} in an algebra of dimension {self.dim}")

    def mul(self, x, y):
        self._check_vec(x)
        self._check_vec(y)
        p = self.p
        out = [0] * self.dim
        table = self.mul_table
        for i, a in enumerate(x):
            if not a:
                continue
            row = table[i]
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(row[j]):
                    if c:
                        out[k] += ab * c
        return tuple(v % p for v in out)

    def derive(self, x, t):
        """Apply derivation ``t`` (1-based)."""
        self._check_vec(x)
        if not 1 <= t <= self.m:
            raise ShapeMismatch(f"derivation index {t} outside 1..{self.m}")
        p = self.p
        out = [0] * self.dim
        for i, a in enumerate(x):
            if a:
                for k, c in enumerate(self.derivations[t - 1][i]):
                    if c:
                        out[k] += a * c
        return tuple(v % p for v in out)

    def apply_theta(self, x, theta):
        for t, times in enumerate(theta, start=1):
            for _ in range(times):
                x = self.derive(x, t)
        return x

    def power(self, x, k):
        result = self.unit
        base = x
        while k:
            if k & 1:
                result = self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result

    def mult_matrix(self, x):
        """Matrix of ``y -> x*y``; column ``j`` is ``x*e_j``."""
        cols = [self.mul(x, e) for e in self.basis()]
        return [tuple(col[i] for col in cols) for i in range(self.dim)]

    def check_enumerable(self, bound=None, dim=None):
        bound = bounds.enumeration_bound(bound)
        d = self.dim if dim is None else dim
        if self.p ** d > bound:
            raise EnumerationTooLarge(f"{self.p}^{d} elements exceed the enumeration bound {bound}")

    def elements(self, bound=None):
        self.check_enumerable(bound)
        return product(range(self.p), repeat=self.dim)

    def format_element(self, x):
        terms = []
        for c, name in zip(x, self.basis_names):
            if c:
                terms.append(name if c == 1 else f"{c}*{name}")
        return "+".join(terms) if terms else "0"


def elem_mul(A, x, y):
    return A.mul(x, y)


def elem_derive(A, x, t):
    return A.derive(x, t)


# validation ----------------------------------------------------------

def validate(A):
    """Check every algebra axiom on basis elements; failures carry witnesses."""
    report = Report("validate")
    d, basis = A.dim, A.basis()
    bad = [i for i in range(d) if A.mul(A.unit, basis[i]) != basis[i]]
    report.check("AXIOM", "unit", not bad, bad and f"e{bad[0]}")
    bad = [(i, j) for i in range(d) for j in range(i + 1, d)
           if A.mul_table[i][j] != A.mul_table[j][i]]
    report.check("AXIOM", "commutative", not bad, bad and "e{}*e{}".format(*bad[0]))
    bad = next(((i, j, k) for i in range(d) for j in range(d) for k in range(d)
                if A.mul(A.mul(basis[i], basis[j]), basis[k])
                != A.mul(basis[i], A.mul(basis[j], basis[k]))), None)
    report.check("AXIOM", "associative", bad is None, bad and "(e{}*e{})*e{}".format(*bad))
    for t in range(1, A.m + 1):
        du = A.derive(A.unit, t)
        report.check("AXIOM", f"D{t}_unit", not any(du), f"D{t}(1)={du}")
        bad = next(((i, j) for i in range(d) for j in range(i, d)
                    if A.derive(A.mul(basis[i], basis[j]), t)
                    != A.add(A.mul(A.derive(basis[i], t), basis[j]),
                             A.mul(basis[i], A.derive(basis[j], t)))), None)
        report.check("AXIOM", f"D{t}_leibniz", bad is None, bad and "e{},e{}".format(*bad))
    for s in range(1, A.m + 1):
        for t in range(s + 1, A.m + 1):
            bad = [i for i in range(d)
                   if A.derive(A.derive(basis[i], s), t) != A.derive(A.derive(basis[i], t), s)]
            report.check("AXIOM", f"D{s}D{t}_commute", not bad, bad and f"e{bad[0]}")
    return report


def is_valid(A):
    return validate(A).ok


# ideals ---------------------------------------------------------------

class SubspaceIdeal:
    """A subspace of an algebra, stored as an rref basis.

    The name reflects its use; whether the subspace actually absorbs
    multiplication or derivations is recorded in :attr:`is_ideal` and
    :attr:`is_differential`.
    """

    def __init__(self, algebra, rows=()):
        self.algebra = algebra
        self.basis, self.pivots = linalg.rref(list(rows), algebra.p, algebra.dim)
        self._flags = {}

    @classmethod
    def zero(cls, A):
        return cls(A, ())

    @classmethod
    def whole(cls, A):
        return cls(A, A.basis())

    @property
    def dim(self):
        return len(self.basis)

    def is_zero(self):
        return not self.basis

    def is_whole(self):
        return self.dim == self.algebra.dim

    def is_proper(self):
        return not self.is_whole()

    def contains(self, x):
        return linalg.in_span(x, self.basis, self.pivots, self.algebra.p)

    __contains__ = contains

    def reduce(self, x):
        return linalg.reduce_vector(x, self.basis, self.pivots, self.algebra.p)

    def issubset(self, other):
        return all(other.contains(b) for b in self.basis)

    __le__ = issubset

    def __lt__(self, other):
        return self.dim < other.dim and self.issubset(other)

    def __add__(self, other):
        return SubspaceIdeal(self.algebra, self.basis + other.basis)

    def __and__(self, other):
        A = self.algebra
        rows, _ = linalg.intersect(self.basis, other.basis, A.dim, A.p)
        return SubspaceIdeal(A, rows)

    def __mul__(self, other):
        """Ideal product: span of all pairwise products of basis elements."""
        A = self.algebra
        return SubspaceIdeal(A, [A.mul(a, b) for a in self.basis for b in other.basis])

    def __eq__(self, other):
        if not isinstance(other, SubspaceIdeal):
            return NotImplemented
        return self.algebra is other.algebra and self.basis == other.basis

    def __hash__(self):
        return hash(self.basis)

    def key(self):
        return (self.dim, self.basis)

    @property
    def is_ideal(self):
        if "ideal" not in self._flags:
            A = self.algebra
            self._flags["ideal"] = all(self.contains(A.mul(b, e))
                                       for b in self.basis for e in A.basis())
        return self._flags["ideal"]

    @property
    def is_differential(self):
        if "differential" not in self._flags:
            A = self.algebra
            self._flags["differential"] = all(self.contains(A.derive(b, t))
                                              for b in self.basis for t in range(1, A.m + 1))
        return self._flags["differential"]

    def elements(self):
        return linalg.span_elements(self.basis, self.algebra.dim, self.algebra.p)

    def format(self):
        return format_rows(self.basis)

    def __repr__(self):
        return f"SubspaceIdeal(dim={self.dim}, basis={self.format()})"


def span(A, vectors):
    return SubspaceIdeal(A, vectors)


def _close(A, S, differential):
    rows = list(S.basis if isinstance(S, SubspaceIdeal) else S)
    current = SubspaceIdeal(A, rows)
    while True:
        gens = list(current.basis)
        for b in current.basis:
            gens.extend(A.mul(b, e) for e in A.basis())
            if differential:
                gens.extend(A.derive(b, t) for t in range(1, A.m + 1))
        nxt = SubspaceIdeal(A, gens)
        if nxt.dim == current.dim:
            return current
        current = nxt


def ideal_closure(A, S):
    """Smallest ideal containing the span of ``S``."""
    return _close(A, S, differential=False)


def differential_closure(A, S):
    """Smallest differential ideal containing the span of ``S``."""
    return _close(A, S, differential=True)


# nilpotents ----------------------------------------------------------

def is_nilpotent(A, x):
    return not any(A.power(x, max(A.dim, 1)))


def derivative_span(A, x):
    """Iterated derivatives of ``x`` (including ``x``) spanning all of them."""
    found = [tuple(x)]
    current = SubspaceIdeal(A, found)
    frontier = [tuple(x)]
    while frontier:
        nxt = []
        for y in frontier:
            for t in range(1, A.m + 1):
                z = A.derive(y, t)
                if not current.contains(z):
                    found.append(z)
                    current = SubspaceIdeal(A, found)
                    nxt.append(z)
        frontier = nxt
    return found


def is_diff_nilpotent(A, x):
    # nilpotents form an ideal, so a spanning set of derivatives suffices
    return all(is_nilpotent(A, y) for y in derivative_span(A, x))


def nilradical(A, bound=None):
    """Span of all nilpotent elements, by exhaustive enumeration."""
    if "nilradical" not in A._cache:
        A.check_enumerable(bound)
        nil = [x for x in product(range(A.p), repeat=A.dim) if is_nilpotent(A, x)]
        A._cache["nilradical"] = SubspaceIdeal(A, nil)
    else:
        A.check_enumerable(bound)
    return A._cache["nilradical"]


# quotients -----------------------------------------------------------

class QuotientMap:
    """Projection of ``A`` onto ``A/a`` with a complement-coordinate basis."""

    def __init__(self, A, a, keep_derivations):
        self.source = A
        self.ideal = a
        self.complement = [c for c in range(A.dim) if c not in a.pivots]
        names = [A.basis_names[c] for c in self.complement]
        lifted = [A.basis_vector(c) for c in self.complement]
        table = [[self.project(A.mul(x, y)) for y in lifted] for x in lifted]
        derivs = []
        if keep_derivations:
            derivs = [[self.project(A.derive(x, t)) for x in lifted]
                      for t in range(1, A.m + 1)]
        self.target = FinDimDiffAlgebra(A.field, names, self.project(A.unit), table, derivs)

    def project(self, x):
        r = self.ideal.reduce(x)
        return tuple(r[c] for c in self.complement)

    def lift(self, y):
        v = [0] * self.source.dim
        for c, a in zip(self.complement, y):
            v[c] = a
        return tuple(v)

    def preimage(self, sub):
        """Preimage in ``A`` of a subspace of the quotient."""
        return SubspaceIdeal(self.source, list(self.ideal.basis) + [self.lift(y) for y in sub.basis])


def quotient_map(A, a, keep_derivations=None):
    if keep_derivations is None:
        keep_derivations = a.is_differential
    if keep_derivations and not a.is_differential:
        raise NotDifferential("derivations only descend along a differential ideal")
    return QuotientMap(A, a, keep_derivations)


def quotient(A, a):
    """The differential algebra ``A/a`` for a proper differential ideal ``a``."""
    if not a.is_proper():
        raise NotProper("quotient by the whole algebra is the zero ring")
    if not a.is_ideal or not a.is_differential:
        raise NotDifferential("quotient requires a differential ideal")
    return QuotientMap(A, a, True).target


def radical_r(A, a, bound=None):
    """Ordinary radical of the ideal ``a``: preimage of the nilradical of ``A/a``."""
    if a.is_whole():
        return a
    A.check_enumerable(bound, A.dim - a.dim)
    qm = quotient_map(A, a, keep_derivations=False)
    return qm.preimage(nilradical(qm.target, bound))


def pi_map(A, t):
    """Largest differential ideal contained in the ideal ``t``."""
    p = A.p
    current = t
    while True:
        cols = [[current.reduce(A.derive(b, s)) for b in current.basis]
                for s in range(1, A.m + 1)]
        # rows of the constraint system: one per (derivation, coordinate)
        matrix = [[col[i][k] for i in range(current.dim)]
                  for col in cols for k in range(A.dim)]
        coeffs = linalg.nullspace(matrix, current.dim, p) if matrix else \
            [tuple(1 if i == j else 0 for i in range(current.dim)) for j in range(current.dim)]
        vecs = []
        for c in coeffs:
            v = A.zero()
            for a, b in zip(c, current.basis):
                if a:
                    v = A.add(v, A.scale(a, b))
            vecs.append(v)
        nxt = SubspaceIdeal(A, vecs)
        if nxt == current:
            break
        current = nxt
    if t.is_ideal and not (current.is_ideal and current.is_differential):
        raise CrossCheckFailed("largest differential subspace of an ideal is not a differential ideal")
    return current


def quasiradical_rad(A, a, bound=None, cross_check=True):
    """Least quasiradical ideal over the differential ideal ``a``.

    Computed as the differential nilpotents of ``A/a`` pulled back to ``A``,
    and compared with ``pi_map(radical_r(a))``.
    """
    if not a.is_differential:
        raise NotDifferential("the quasiradical is defined for differential ideals")
    if a.is_whole():
        return a
    A.check_enumerable(bound, A.dim - a.dim)
    qm = quotient_map(A, a, keep_derivations=True)
    R = qm.target
    dn = [y for y in product(range(A.p), repeat=R.dim) if is_diff_nilpotent(R, y)]
    result = qm.preimage(SubspaceIdeal(R, dn))
    if cross_check:
        other = pi_map(A, radical_r(A, a, bound))
        if other != result:
            raise CrossCheckFailed(
                f"rad({a.format()}) = {result.format()} but pi(r(a)) = {other.format()}")
    return result


# classification ------------------------------------------------------

@dataclass(frozen=True)
class IdealClassification:
    is_ideal: bool
    is_differential: bool
    is_radical: bool
    is_primary: bool
    is_prime: bool
    is_maximal: bool
    # None means "not applicable": the ideal is not differential
    is_quasiradical: Optional[bool]
    is_quasiprime: Optional[bool]
    is_quasimaximal: Optional[bool]


def _ring_scan(R):
    """Zero-divisor/nilpotent/unit structure of a finite ring ``R`` (dim > 0)."""
    r = R.dim
    zero = R.zero()
    zero_divisors_nilpotent = True
    nonzero_zero_divisor = False
    all_units = True
    for y in product(range(R.p), repeat=r):
        M = R.mult_matrix(y)
        is_zd = linalg.rank(M, R.p) < r
        if is_zd:
            if y != zero:
                nonzero_zero_divisor = True
            if any(R.power(y, r)):
                zero_divisors_nilpotent = False
        if y != zero and linalg.solve(M, R.unit, r, R.p) is None:
            all_units = False
    return zero_divisors_nilpotent, not nonzero_zero_divisor, all_units


def classify_ideal(A, q, bound=None):
    if not q.is_ideal:
        raise ValueError("classify_ideal expects an ideal")
    proper = q.is_proper()
    if proper:
        A.check_enumerable(bound, A.dim - q.dim)
        R = quotient_map(A, q, keep_derivations=False).target
        primary, prime, maximal = _ring_scan(R)
    else:
        primary = prime = maximal = False
    radical = radical_r(A, q, bound) == q
    if q.is_differential:
        quasiradical = quasiradical_rad(A, q, bound) == q
        quasiprime = quasiradical and primary
        quasimaximal = proper and not any(
            q < J and J.is_proper() for J in enumerate_differential_ideals(A, bound))
    else:
        quasiradical = quasiprime = quasimaximal = None
    return IdealClassification(True, q.is_differential, radical, primary, prime, maximal,
                               quasiradical, quasiprime, quasimaximal)


# enumeration -----------------------------------------------------------

def _join_closure(A, generators):
    found = {}
    zero = SubspaceIdeal.zero(A)
    found[zero.basis] = zero
    gens = {}
    for g in generators:
        gens.setdefault(g.basis, g)
    for g in gens.values():
        found.setdefault(g.basis, g)
    queue = list(found.values())
    while queue:
        ideal = queue.pop()
        for g in gens.values():
            if g.issubset(ideal):
                continue
            joined = ideal + g
            if joined.basis not in found:
                found[joined.basis] = joined
                queue.append(joined)
    return sorted(found.values(), key=SubspaceIdeal.key)


def enumerate_ideals(A, bound=None):
    """All ring ideals, as joins of principal ideals; sorted by (dim, basis)."""
    A.check_enumerable(bound)
    if "ideals" not in A._cache:
        principal = [ideal_closure(A, [x]) for x in product(range(A.p), repeat=A.dim)]
        A._cache["ideals"] = _join_closure(A, principal)
    return list(A._cache["ideals"])


def enumerate_differential_ideals(A, bound=None):
    """All derivation-stable ideals, sorted by (dim, basis)."""
    A.check_enumerable(bound)
    if "dideals" not in A._cache:
        principal = [differential_closure(A, [x]) for x in product(range(A.p), repeat=A.dim)]
        A._cache["dideals"] = _join_closure(A, principal)
    return list(A._cache["dideals"])


def maximal_ideals(A, bound=None):
    ideals = [I for I in enumerate_ideals(A, bound) if I.is_proper()]
    return [I for I in ideals if not any(I < J for J in ideals)]


def is_simple(A, bound=None):
    """True iff the only differential ideals are 0 and the whole algebra."""
    if A.dim == 0:
        return False
    return len(enumerate_differential_ideals(A, bound)) == 2


@dataclass
class QuasifieldInfo:
    simple: bool
    frobenius_kernel: Optional[SubspaceIdeal]  # {x : x^p = 0} when it is a subspace
    maximal_ideals: list
    law_holds: bool

    @property
    def maximal_ideal(self):
        return self.maximal_ideals[0] if len(self.maximal_ideals) == 1 else None


def frobenius_kernel(A, bound=None):
    """The set ``{x : x^p = 0}`` as a subspace, or ``None`` if it is not one."""
    A.check_enumerable(bound)
    zeros = {x for x in product(range(A.p), repeat=A.dim) if not any(A.power(x, A.p))}
    sub = SubspaceIdeal(A, list(zeros))
    if A.p ** sub.dim != len(zeros):
        return None
    return sub


def quasifield_info(A, bound=None):
    simple = is_simple(A, bound)
    kernel = frobenius_kernel(A, bound)
    maxes = maximal_ideals(A, bound)
    law = simple and kernel is not None and len(maxes) == 1 and maxes[0] == kernel
    return QuasifieldInfo(simple, kernel, maxes, law)
