"""The Taylor homomorphism from a finite differential algebra into H F_p.

For a ring map ``phi: B -> F_p`` the coefficient of ``Phi(b)`` at the
multi-index ``k`` is ``phi(d^k b)``.
"""

from dataclasses import dataclass
from itertools import product

from . import linalg
from .errors import NotQuasifield, NotRingMap, ResidueNotPrimeField, ShapeMismatch
from .findim import SubspaceIdeal, frobenius_kernel, is_simple
from .hurwitz import TruncatedHurwitzSeries, multi_indices
from .report import Report


class RingMapToField:
    """A unital ring homomorphism ``B -> F_p`` given by the images of basis elements."""

    def __init__(self, source, values):
        self.source = source
        p = source.p
        self.values = tuple(int(v) % p for v in values)
        if len(self.values) != source.dim:
            raise ShapeMismatch(f"{len(self.values)} images for a basis of size {source.dim}")
        if self(source.unit) != 1:
            raise NotRingMap("the unit must map to 1")
        for i, j in product(range(source.dim), repeat=2):
            prod = self(source.mul(source.basis_vector(i), source.basis_vector(j)))
            if prod != self.values[i] * self.values[j] % p:
                raise NotRingMap(f"not multiplicative on e{i}, e{j}")

    def __call__(self, x):
        return sum(a * v for a, v in zip(x, self.values)) % self.source.p

    def __eq__(self, other):
        return isinstance(other, RingMapToField) and other.source is self.source \
            and other.values == self.values

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return f"RingMapToField({self.values})"


def ring_maps_to_field(B):
    """Every unital ring map ``B -> F_p``, in lexicographic order of values."""
    out = []
    for values in product(range(B.p), repeat=B.dim):
        try:
            out.append(RingMapToField(B, values))
        except NotRingMap:
            pass
    return out


def residue_map(Q, bound=None):
    """Quotient map of a quasifield onto its residue field F_p."""
    if not is_simple(Q, bound):
        raise NotQuasifield("the algebra has a nontrivial differential ideal")
    m = frobenius_kernel(Q, bound)
    if m is None:
        raise NotQuasifield("{x : x^p = 0} is not a subspace")
    if Q.dim - m.dim != 1:
        raise ResidueNotPrimeField(f"residue field has dimension {Q.dim - m.dim} over F_{Q.p}")
    # unique c with e_i - c*1 in m
    values = []
    for e in Q.basis():
        for c in range(Q.p):
            if m.contains(Q.sub(e, Q.scale(c, Q.unit))):
                values.append(c)
                break
    return RingMapToField(Q, values)


@dataclass
class TaylorTable:
    """Coefficients ``phi(d^k e_i)`` for every basis element and ``ord k <= N``."""

    source: object
    phi: RingMapToField
    precision: int
    indices: tuple
    rows: tuple  # rows[i][j] = coefficient of Phi(e_i) at indices[j]

    def image(self, x):
        p = self.source.p
        coeffs = {}
        for j, k in enumerate(self.indices):
            c = sum(a * row[j] for a, row in zip(x, self.rows)) % p
            if c:
                coeffs[k] = c
        return TruncatedHurwitzSeries(self.source.field, self.source.m, self.precision, coeffs)

    __call__ = image

    def kernel(self):
        """Elements mapped to 0 at this precision (null space of the table)."""
        B = self.source
        cols = [[row[j] for row in self.rows] for j in range(len(self.indices))]
        return SubspaceIdeal(B, linalg.nullspace(cols, B.dim, B.p))


def _iterated_derivatives(B, N):
    """``{k: [d^k e_i for i]}`` for every multi-index of order <= N."""
    table = {(0,) * B.m: B.basis()}
    for k in multi_indices(B.m, N):
        if k in table:
            continue
        t = next(s for s in range(B.m) if k[s])
        prev = tuple(x - (s == t) for s, x in enumerate(k))
        table[k] = [B.derive(v, t + 1) for v in table[prev]]
    return table


def taylor_hom(B, phi, N):
    if phi.source is not B:
        raise ShapeMismatch("ring map is defined on a different algebra")
    idx = multi_indices(B.m, N)
    derivs = _iterated_derivatives(B, N)
    rows = tuple(tuple(phi(derivs[k][i]) for k in idx) for i in range(B.dim))
    return TaylorTable(B, phi, N, idx, rows)


def taylor_kernel(B, phi):
    """Stable kernel: intersection over all k of ker(phi o d^k)."""
    N = 0
    prev = taylor_hom(B, phi, 0).kernel()
    while True:
        N += 1
        cur = taylor_hom(B, phi, N).kernel()
        if cur == prev:
            return cur
        prev = cur


def check_universal(B, phi, N, report=None):
    """Verify the four clauses characterizing Phi at precision ``N``."""
    report = report or Report("universal")
    Phi = taylor_hom(B, phi, N)
    basis = B.basis()
    images = [Phi(e) for e in basis]

    bad = [i for i, s in enumerate(images) if s.pi().value != phi(basis[i])]
    report.check("UNIVERSAL", "pi_commutes", not bad, bad and f"e{bad[0]}")

    bad = next(((i, j) for i, j in product(range(B.dim), repeat=2)
                if not Phi(B.mul(basis[i], basis[j])) == images[i] * images[j]), None)
    report.check("UNIVERSAL", "multiplicative", bad is None, bad and "e{},e{}".format(*bad))
    bad = next(((i, j) for i, j in product(range(B.dim), repeat=2)
                if not Phi(B.add(basis[i], basis[j])) == images[i] + images[j]), None)
    report.check("UNIVERSAL", "additive", bad is None, bad and "e{},e{}".format(*bad))
    unital = Phi(B.unit) == TruncatedHurwitzSeries.one(B.field, B.m, N)
    report.check("UNIVERSAL", "unital", unital)

    bad = None
    if N >= 1:
        for t in range(1, B.m + 1):
            for i, s in enumerate(images):
                lhs = Phi(B.derive(basis[i], t))
                rhs = s.derive(t)
                cmp = lhs.compare(rhs)
                if not cmp.equal or cmp.precision != N - 1:
                    bad = f"D{t}e{i}"
                    break
            if bad:
                break
    report.check("UNIVERSAL", "differential", bad is None, bad)

    # any Psi satisfying the clauses has Psi(b)(k) = pi(d^k Psi(b)) = phi(d^k b):
    # read coefficients back through series shifts and compare with the algebra side
    bad = None
    for i, s in enumerate(images):
        for k in Phi.indices:
            via_series = s.apply_theta(k).pi().value
            via_algebra = phi(B.apply_theta(basis[i], k))
            if via_series != via_algebra:
                bad = f"e{i}@{list(k)}"
                break
        if bad:
            break
    report.check("UNIVERSAL", "uniqueness_formula", bad is None, bad)
    report.note("UNIVERSAL", "PASS" if report.ok else "FAIL")
    return report


def is_injective(B, phi):
    return taylor_kernel(B, phi).is_zero()
