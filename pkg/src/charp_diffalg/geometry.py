"""Desk-scale quasivariety geometry over truncated Hurwitz points.

Points of Q^n are tuples of truncated series; zero sets are found by
exhaustive enumeration (with a recurrence fast path for explicit linear
first-order systems), vanishing ideals by null spaces of evaluation
matrices on bounded polynomial spaces.
"""

from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product
from math import comb

from . import bounds, linalg
from .diffpoly import DerivativeVariable, DiffPolynomial
from .errors import (CrossCheckFailed, DimensionTooLarge, NotDerivativeClosed,
                     PrecisionExhausted, SearchSpaceTooLarge, ShapeMismatch)
from .field import PrimeField
from .hurwitz import TruncatedHurwitzSeries, format_index, multi_indices
from .report import Report

CROSS_CHECK_BOUND = 2 ** 16


@dataclass(frozen=True)
class HurwitzPoint:
    coords: tuple

    def __post_init__(self):
        coords = tuple(self.coords)
        object.__setattr__(self, "coords", coords)
        if coords:
            a = coords[0]
            for c in coords[1:]:
                if c.field is not a.field or c.m != a.m or c.precision != a.precision:
                    raise ShapeMismatch("point coordinates must share field, m and precision")

    @classmethod
    def from_tables(cls, field, m, precision, tables):
        """Build from dense coefficient tuples over ``multi_indices(m, precision)``."""
        idx = multi_indices(m, precision)
        return cls(tuple(TruncatedHurwitzSeries(field, m, precision, dict(zip(idx, t)))
                         for t in tables))

    @classmethod
    def zero(cls, field, n, m, precision):
        return cls(tuple(TruncatedHurwitzSeries.zero(field, m, precision) for _ in range(n)))

    @property
    def n(self):
        return len(self.coords)

    @property
    def precision(self):
        return self.coords[0].precision

    @property
    def field(self):
        return self.coords[0].field

    @property
    def m(self):
        return self.coords[0].m

    def key(self):
        return tuple(c.dense() for c in self.coords)

    def __eq__(self, other):
        return isinstance(other, HurwitzPoint) and self.key() == other.key() \
            and self.precision == other.precision

    def __hash__(self):
        return hash((self.precision, self.key()))

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def format(self):
        parts = []
        for c in self.coords:
            idx = multi_indices(c.m, c.precision)
            parts.append(" ".join(f"{format_index(k)}={v}" for k, v in zip(idx, c.dense())))
        return "( " + " ; ".join(parts) + " )"


@dataclass
class SolutionSet:
    system: list
    precision: int
    points: list
    search_domain: dict
    method: str = "enumeration"

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def _shape(system, field=None, n=None, m=None):
    for f in system:
        field = field or f.field
        n = f.n if n is None else n
        m = f.m if m is None else m
        if f.field is not field or f.n != n or f.m != m:
            raise ShapeMismatch("system polynomials must share field, n and m")
    if field is None or n is None or m is None:
        raise ShapeMismatch("field, n and m are required for an empty system")
    return field, n, m


def is_solution(system, point):
    return all(f.eval(point).is_zero() for f in system)


def _linear_recurrence(system, field, n, m, N):
    """Equations ``c*D[1](y_i) + (affine form in y_1..y_n)`` with distinct ``i``.

    Returns ``{i: (c, {j: coeff}, const)}`` or ``None`` when not of that shape.
    """
    if m != 1:
        return None
    eqs = {}
    for f in system:
        lead = None
        linear = {}
        const = 0
        for mono, c in f.terms.items():
            if not mono:
                const = c
                continue
            if len(mono) != 1 or mono[0][1] != 1:
                return None
            v = mono[0][0]
            if v.order == 1:
                if lead is not None:
                    return None
                lead = (v.var, c)
            elif v.order == 0:
                linear[v.var] = c
            else:
                return None
        if lead is None or lead[0] in eqs:
            return None
        eqs[lead[0]] = (lead[1], linear, const)
    return eqs


def _solve_by_recurrence(eqs, field, n, N):
    p = field.p
    free_vars = [i for i in range(1, n + 1) if i not in eqs]
    eq_vars = sorted(eqs)
    nfree = len(eq_vars) + len(free_vars) * (N + 1)
    tables = []
    for params in product(range(p), repeat=nfree):
        a = {}
        it = iter(params)
        for i in eq_vars:
            a[i] = [next(it)] + [0] * N
        for i in free_vars:
            a[i] = [next(it) for _ in range(N + 1)]
        for k in range(N):
            for i in eq_vars:
                c, linear, const = eqs[i]
                s = sum(l * a[j][k] for j, l in linear.items())
                if k == 0:
                    s += const
                a[i][k + 1] = (-s) * field.inv(c) % p
        tables.append(tuple(tuple(a[i]) for i in range(1, n + 1)))
    return tables, p ** nfree


def solve_system(system, N, bound=None, field=None, n=None, m=None, use_fast_path=True):
    """All truncated points of precision ``N`` on which every polynomial vanishes."""
    system = list(system)
    field, n, m = _shape(system, field, n, m)
    if isinstance(field, int):
        field = PrimeField(field)
    for f in system:
        if f.order > N:
            raise PrecisionExhausted(f"polynomial of order {f.order} at precision {N}")
    bound = bounds.search_bound(bound)
    idx = multi_indices(m, N)
    space = field.p ** (n * len(idx))
    domain = {"p": field.p, "m": m, "n": n, "N": N, "size": space}

    eqs = _linear_recurrence(system, field, n, m, N) if use_fast_path and system else None
    if eqs is not None:
        tables, count = _solve_by_recurrence_checked(eqs, field, n, N, bound)
        points = sorted((HurwitzPoint.from_tables(field, m, N, t) for t in tables),
                        key=HurwitzPoint.key)
        if space <= min(bound, CROSS_CHECK_BOUND):
            brute = _enumerate(system, field, n, m, N)
            if [q.key() for q in brute] != [q.key() for q in points]:
                raise CrossCheckFailed("recurrence solutions differ from exhaustive enumeration")
        if not all(is_solution(system, q) for q in points):
            raise CrossCheckFailed("recurrence produced a non-solution")
        return SolutionSet(system, N, points, domain, "recurrence")

    if space > bound:
        raise SearchSpaceTooLarge(f"search space {field.p}^{n * len(idx)} exceeds bound {bound}")
    return SolutionSet(system, N, _enumerate(system, field, n, m, N), domain, "enumeration")


def _solve_by_recurrence_checked(eqs, field, n, N, bound):
    nfree = len(eqs) + (n - len(eqs)) * (N + 1)
    if field.p ** nfree > bound:
        raise SearchSpaceTooLarge(f"{field.p}^{nfree} solutions exceed bound {bound}")
    return _solve_by_recurrence(eqs, field, n, N)


def _enumerate(system, field, n, m, N):
    idx = multi_indices(m, N)
    points = []
    for flat in product(range(field.p), repeat=n * len(idx)):
        tables = [flat[i * len(idx):(i + 1) * len(idx)] for i in range(n)]
        point = HurwitzPoint.from_tables(field, m, N, tables)
        if is_solution(system, point):
            points.append(point)
    points.sort(key=HurwitzPoint.key)
    return points


# vanishing ideals ------------------------------------------------------

def derivative_variables(n, m, r):
    return [DerivativeVariable(i, theta) for i in range(1, n + 1) for theta in multi_indices(m, r)]


def bounded_monomials(n, m, r, e):
    """Monomials of order <= r and degree <= e, constant first."""
    dvars = derivative_variables(n, m, r)
    monos = []
    for deg in range(e + 1):
        for combo in combinations_with_replacement(dvars, deg):
            exps = {}
            for v in combo:
                exps[v] = exps.get(v, 0) + 1
            monos.append(tuple(sorted(exps.items(), key=lambda ve: ve[0].sort_key())))
    return monos


class BoundedSpace:
    """A subspace of the polynomials with order <= r and degree <= e."""

    def __init__(self, field, n, m, r, e, vectors, monomials=None):
        self.field = field
        self.n, self.m, self.r, self.e = n, m, r, e
        self.monomials = monomials if monomials is not None else bounded_monomials(n, m, r, e)
        self.position = {mono: i for i, mono in enumerate(self.monomials)}
        self.rows, self.pivots = linalg.rref(list(vectors), field.p, len(self.monomials))
        self.basis = [self.polynomial(v) for v in self.rows]

    def polynomial(self, v):
        return DiffPolynomial(self.field, self.n, self.m,
                              {mono: c for mono, c in zip(self.monomials, v) if c})

    def vector(self, f):
        """Coordinates of ``f``; ``None`` if it leaves the bounded monomials."""
        v = [0] * len(self.monomials)
        for mono, c in f.terms.items():
            if mono not in self.position:
                return None
            v[self.position[mono]] = c
        return tuple(v)

    def within_bounds(self, f):
        return self.vector(f) is not None

    def contains(self, f):
        v = self.vector(f)
        if v is None:
            raise ShapeMismatch(f"{f} is outside order <= {self.r}, degree <= {self.e}")
        return linalg.in_span(v, self.rows, self.pivots, self.field.p)

    __contains__ = contains

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)


def vanishing_ideal(X, r, e, field=None, n=None, m=None, bound=None):
    """Polynomials of order <= r and degree <= e vanishing on every point of ``X``.

    Vanishing is tested at the uniform precision ``min precision - r``.
    """
    X = list(X)
    if X:
        field, n, m = X[0].field, X[0].n, X[0].m
    elif field is None or n is None or m is None:
        raise ShapeMismatch("field, n and m are required for an empty point set")
    if isinstance(field, int):
        field = PrimeField(field)
    limit = bounds.dimension_bound(bound)
    count = sum(comb(n * len(multi_indices(m, r)) + k - 1, k) for k in range(e + 1))
    if count > limit:
        raise DimensionTooLarge(f"{count} monomials exceed the bound {limit}")
    monos = bounded_monomials(n, m, r, e)
    if not X:
        return BoundedSpace(field, n, m, r, e, [tuple(int(i == j) for j in range(len(monos)))
                                                for i in range(len(monos))], monos)
    prec = min(x.precision for x in X) - r
    if prec < 0:
        raise PrecisionExhausted(f"points of precision {prec + r} cannot test order {r}")
    idx = multi_indices(m, prec)
    matrix = []
    for x in X:
        values = {v: x[v.var - 1].apply_theta(v.theta).truncate(prec)
                  for v in derivative_variables(n, m, r)}
        one = TruncatedHurwitzSeries.one(field, m, prec)
        cols = []
        for mono in monos:
            s = one
            for v, k in mono:
                s = s * (values[v] ** k)
            cols.append(s.dense())
        for j in range(len(idx)):
            matrix.append([col[j] for col in cols])
    return BoundedSpace(field, n, m, r, e, linalg.nullspace(matrix, len(monos), field.p), monos)


def point_ideal(a, r, e, bound=None):
    return vanishing_ideal([a], r, e, bound=bound)


@dataclass
class InclusionCertificate:
    solutions: SolutionSet
    ideal: BoundedSpace
    checked: list = field(default_factory=list)  # polynomials certified
    failures: list = field(default_factory=list)
    skipped: int = 0
    report: Report = None

    @property
    def certified(self):
        return not self.failures


def check_nss_inclusion(generators, N, r, e, bound=None, field=None, n=None, m=None):
    """Certify that the differential ideal generated by ``generators`` vanishes on its zeros.

    Members tested: every generator, every derivative ``theta g`` and every
    product ``mono * g`` that stays within order ``r`` and degree ``e``.
    Only the inclusion is checked; equality is reported as unverified.
    """
    generators = list(generators)
    field, n, m = _shape(generators, field, n, m)
    V = solve_system(generators, N, bound=bound, field=field, n=n, m=m)
    I = vanishing_ideal(V.points, r, e, field=field, n=n, m=m)
    cert = InclusionCertificate(V, I)
    candidates = []
    monos = bounded_monomials(n, m, r, e)
    for g in generators:
        if g.order > r:
            cert.skipped += 1
            continue
        for theta in multi_indices(m, r - g.order):
            dg = g.apply_theta(theta)
            for mono in monos:
                prod = DiffPolynomial(field, n, m, {mono: 1}) * dg
                candidates.append(prod)
    seen = set()
    for f in candidates:
        if f in seen:
            continue
        seen.add(f)
        if not I.within_bounds(f):
            cert.skipped += 1
            continue
        if I.contains(f):
            cert.checked.append(f)
        else:
            cert.failures.append(f)
    report = Report("nss")
    report.note("SOLUTIONS", len(V))
    report.note("VANISHING_DIM", len(I), f"r={r}", f"e={e}", f"N={N}")
    report.note("MEMBERS_CHECKED", len(cert.checked))
    report.note("MEMBERS_SKIPPED", cert.skipped)
    report.check("NSS", "inclusion", cert.certified,
                 cert.failures[0].format() if cert.failures else None)
    report.note("NSS", "equality", "UNVERIFIED")
    cert.report = report
    return cert


# regular maps ------------------------------------------------------------

@dataclass(frozen=True)
class RegularMap:
    """A map Q^n -> Q^k given by ``k`` differential polynomials in ``n`` variables."""

    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise ShapeMismatch("a regular map needs at least one component")
        _shape(comps)

    @property
    def source_dim(self):
        return self.components[0].n

    @property
    def target_dim(self):
        return len(self.components)

    @property
    def field(self):
        return self.components[0].field

    @property
    def m(self):
        return self.components[0].m

    @property
    def order(self):
        return max(f.order for f in self.components)


def apply_map(phi, x):
    if x.n != phi.source_dim:
        raise ShapeMismatch(f"point in Q^{x.n}, map defined on Q^{phi.source_dim}")
    prec = x.precision - phi.order
    if prec < 0:
        raise PrecisionExhausted(f"map of order {phi.order} at precision {x.precision}")
    return HurwitzPoint(tuple(f.eval(x).truncate(prec) for f in phi.components))


def pullback(phi, g):
    """Substitute ``theta y_j -> theta(phi_j)`` into ``g``."""
    if g.n != phi.target_dim or g.m != phi.m or g.field is not phi.field:
        raise ShapeMismatch("polynomial does not live on the target of the map")
    cache = {}

    def image(v):
        if v not in cache:
            cache[v] = phi.components[v.var - 1].apply_theta(v.theta)
        return cache[v]

    n = phi.source_dim
    total = DiffPolynomial(phi.field, n, phi.m)
    for mono, c in g.terms.items():
        term = DiffPolynomial.constant(phi.field, n, phi.m, c)
        for v, k in mono:
            term = term * (image(v) ** k)
        total = total + term
    return total


def compose(phi, psi):
    """The map ``phi o psi`` (apply ``psi`` first)."""
    return RegularMap(tuple(pullback(psi, f) for f in phi.components))


def identity_map(field, n, m):
    return RegularMap(tuple(DiffPolynomial.variable(field, n, m, i) for i in range(1, n + 1)))


# dimension ---------------------------------------------------------------

def derivative_closure_vars(generators, m, t_max):
    """All derivatives of ``generators`` with order <= t_max."""
    out = set()
    for v in generators:
        for theta in multi_indices(m, t_max - v.order):
            out.add(DerivativeVariable(v.var, tuple(a + b for a, b in zip(v.theta, theta))))
    return out


def _check_closed(killed, m, t_max):
    for v in killed:
        if v.order < t_max:
            for t in range(1, m + 1):
                if v.shifted(t) not in killed:
                    raise NotDerivativeClosed(f"{v.format()} killed but not {v.shifted(t).format()}")


def dimension_profile(killed, n, m, t_max):
    """``omega(t)`` = surviving derivative variables of order <= t, for t = 0..t_max.

    ``killed`` lists the derivative variables (order <= t_max) in the ideal;
    it must be closed under every derivation inside that window.
    """
    killed = {DerivativeVariable(v.var, tuple(v.theta)) for v in killed if v.order <= t_max}
    _check_closed(killed, m, t_max)
    return [sum(1 for v in derivative_variables(n, m, t) if v not in killed)
            for t in range(t_max + 1)]


def generator_profile(generators, killed, n, m, t_max):
    """Profile of the filtration generated by other (linear) differential generators.

    ``omega'(t)`` is the Krull dimension of the algebra generated by
    ``theta z_j`` (ord theta <= t) in the quotient by the killed variables; for
    linear generators this is the rank of their images.
    """
    killed = {DerivativeVariable(v.var, tuple(v.theta)) for v in killed}
    field = generators[0].field
    for z in generators:
        if z.degree > 1 or () in z.terms:
            raise ValueError("generator_profile needs homogeneous linear generators")
    top = max(z.order for z in generators) + t_max
    _check_closed({v for v in killed if v.order <= top}, m, top)
    dvars = [v for v in derivative_variables(n, m, top) if v not in killed]
    pos = {v: i for i, v in enumerate(dvars)}
    profile = []
    for t in range(t_max + 1):
        rows = []
        for z in generators:
            for theta in multi_indices(m, t):
                row = [0] * len(dvars)
                for mono, c in z.apply_theta(theta).terms.items():
                    v = mono[0][0]
                    if v in pos:
                        row[pos[v]] = c
                rows.append(row)
        profile.append(linalg.rank(rows, field.p) if dvars else 0)
    return profile


def profiles_equivalent(w1, w2, c):
    """``w1(t) <= w2(t + c)`` and ``w2(t) <= w1(t + c)`` wherever both are defined."""
    span = min(len(w1), len(w2)) - c
    return all(w1[t] <= w2[t + c] and w2[t] <= w1[t + c] for t in range(max(span, 0)))
