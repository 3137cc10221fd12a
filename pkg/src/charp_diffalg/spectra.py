"""Spectra and quasispectra of finite differential algebras.

A finite spectrum is represented by its points (prime, resp. quasiprime
ideals) and their containment order; a closed set is ``V(E)``, the points
containing ``E``. Every identity is checked exhaustively over the
enumerated ideals of the algebra.
"""

from dataclasses import dataclass, field
from itertools import product

from .errors import CrossCheckFailed
from .findim import (SubspaceIdeal, classify_ideal, differential_closure,
                     enumerate_differential_ideals, enumerate_ideals,
                     ideal_closure, nilradical, pi_map, quasiradical_rad,
                     quotient_map, radical_r)
from . import linalg
from .report import Report

KINDS = ("spec", "max", "qspec", "qmax")


class IdealLattice:
    """Points of a (quasi)spectrum with their containment matrix."""

    def __init__(self, algebra, kind, points, bound=None):
        if kind not in KINDS:
            raise ValueError(f"lattice kind must be one of {KINDS}")
        self.algebra = algebra
        self.kind = kind
        self.bound = bound
        self.points = sorted(points, key=SubspaceIdeal.key)
        self.containment = [[a.issubset(b) for b in self.points] for a in self.points]

    @property
    def quasi(self):
        return self.kind in ("qspec", "qmax")

    def __len__(self):
        return len(self.points)

    def index(self, ideal):
        return self.points.index(ideal)

    def all_points(self):
        return frozenset(range(len(self.points)))

    def closure_of(self, E):
        """The ideal whose points are ``V(E)``: generated, then made (quasi)radical."""
        A = self.algebra
        vectors = E.basis if isinstance(E, SubspaceIdeal) else list(E)
        if self.quasi:
            gen = differential_closure(A, vectors)
            return gen, quasiradical_rad(A, gen, self.bound)
        gen = ideal_closure(A, vectors)
        return gen, radical_r(A, gen, self.bound)

    def dump(self, report=None):
        report = report or Report()
        for i, pt in enumerate(self.points):
            report.note("POINT", i, f"dim={pt.dim}", f"basis={pt.format()}")
        for i, j in product(range(len(self)), repeat=2):
            if i != j and self.containment[i][j]:
                report.note("LE", i, j)
        return report


def _points_containing(L, vectors):
    return frozenset(i for i, pt in enumerate(L.points) if all(pt.contains(v) for v in vectors))


def build_spec(A, bound=None):
    points = [I for I in enumerate_ideals(A, bound)
              if I.is_proper() and classify_ideal(A, I, bound).is_prime]
    return IdealLattice(A, "spec", points, bound)


def build_max(A, bound=None):
    points = [I for I in enumerate_ideals(A, bound)
              if I.is_proper() and classify_ideal(A, I, bound).is_maximal]
    return IdealLattice(A, "max", points, bound)


def build_qspec(A, bound=None):
    points = [I for I in enumerate_differential_ideals(A, bound)
              if I.is_proper() and classify_ideal(A, I, bound).is_quasiprime]
    return IdealLattice(A, "qspec", points, bound)


def build_qmax(A, bound=None):
    points = [I for I in enumerate_differential_ideals(A, bound)
              if I.is_proper() and classify_ideal(A, I, bound).is_quasimaximal]
    return IdealLattice(A, "qmax", points, bound)


def closed_set_V(L, E):
    """Indices of points containing ``E`` (vectors or an ideal).

    Also computes V of the generated (differential) ideal and of its
    (quasi)radical, and raises :class:`CrossCheckFailed` unless all agree.
    """
    vectors = E.basis if isinstance(E, SubspaceIdeal) else [tuple(v) for v in E]
    direct = _points_containing(L, vectors)
    gen, rad = L.closure_of(vectors)
    via_gen = _points_containing(L, gen.basis)
    via_rad = _points_containing(L, rad.basis)
    if not direct == via_gen == via_rad:
        raise CrossCheckFailed(
            f"V(E)={sorted(direct)} V(a)={sorted(via_gen)} V(rad a)={sorted(via_rad)}")
    return direct


def _family(L):
    A = L.algebra
    if L.quasi:
        return enumerate_differential_ideals(A, L.bound)
    return enumerate_ideals(A, L.bound)


def verify_topology_axioms(L, report=None):
    """Exhaustive check of the closed-set axioms for ``V`` on ``L``."""
    A = L.algebra
    report = report or Report("topology")
    V = lambda vecs: _points_containing(L, vecs)  # noqa: E731
    family = _family(L)
    everything = L.all_points()

    # (1) V(E) = V(a) = V(rad a), for single elements and for each ideal of the family
    witness = None
    for x in product(range(A.p), repeat=A.dim):
        gen, rad = L.closure_of([x])
        if not V([x]) == V(gen.basis) == V(rad.basis):
            witness = f"x={x}"
            break
    if witness is None:
        for a in family:
            gen, rad = L.closure_of(a.basis)
            if not V(a.basis) == V(gen.basis) == V(rad.basis):
                witness = f"a={a.format()}"
                break
    report.check("AXIOM", "V1_generated_radical", witness is None, witness)

    # (2) V(0) = X, V(1) = empty
    ok = V([A.zero()]) == everything and V([A.unit]) == frozenset()
    report.check("AXIOM", "V2_zero_unit", ok)

    # (3) V(E u F) = V(E) n V(F)
    witness = None
    for a, b in product(family, repeat=2):
        if V(a.basis + b.basis) != V(a.basis) & V(b.basis):
            witness = f"{a.format()};{b.format()}"
            break
    report.check("AXIOM", "V3_union", witness is None, witness)

    # (4) V(a n b) = V(ab) = V(a) u V(b)
    witness = None
    for a, b in product(family, repeat=2):
        union = V(a.basis) | V(b.basis)
        if not V((a & b).basis) == V((a * b).basis) == union:
            witness = f"{a.format()};{b.format()}"
            break
    report.check("AXIOM", "V4_intersection", witness is None, witness)
    return report


def radical_ideals(A, bound=None):
    return [I for I in enumerate_ideals(A, bound) if radical_r(A, I, bound) == I]


def quasiradical_ideals(A, bound=None):
    return [I for I in enumerate_differential_ideals(A, bound)
            if quasiradical_rad(A, I, bound) == I]


def _bijection(report, name, source, target, forward, backward):
    src, tgt = list(source), set(target)
    images = [forward(s) for s in src]
    ok = all(img in tgt for img in images)
    ok = ok and len(set(images)) == len(src) == len(tgt)
    ok = ok and all(backward(img) == s for s, img in zip(src, images))
    ok = ok and all(forward(backward(t)) == t for t in tgt)
    witness = None
    if not ok:
        witness = next((s.format() for s, img in zip(src, images)
                        if img not in tgt or backward(img) != s), "cardinality")
    report.check("HOMEO", name, ok, witness)
    # order preservation both ways certifies a homeomorphism of finite posets
    order_ok = all((a.issubset(b)) == (forward(a).issubset(forward(b)))
                   for a, b in product(src, repeat=2))
    report.check("HOMEO", name + "_order", order_ok)
    return ok and order_ok


def check_homeomorphism(A, bound=None, report=None):
    """pi and r as inverse order-isomorphisms Rad<->QRad, Spec<->QSpec, Max<->QMax."""
    report = report or Report("homeomorphism")
    pi = lambda t: pi_map(A, t)  # noqa: E731
    r = lambda u: radical_r(A, u, bound)  # noqa: E731
    _bijection(report, "rad_qrad", radical_ideals(A, bound), quasiradical_ideals(A, bound), pi, r)
    _bijection(report, "spec_qspec", build_spec(A, bound).points, build_qspec(A, bound).points,
               pi, r)
    _bijection(report, "max_qmax", build_max(A, bound).points, build_qmax(A, bound).points, pi, r)
    return report


def derivative_words(A, f):
    """Derivatives ``theta f`` by increasing order until the generated ideals stabilize."""
    words = [((0,) * A.m, tuple(f))]
    level = [((0,) * A.m, tuple(f))]
    current = ideal_closure(A, [f])
    while level:
        nxt = []
        seen = {w for w, _ in words}
        for theta, x in level:
            for t in range(1, A.m + 1):
                w = tuple(a + (s == t - 1) for s, a in enumerate(theta))
                if w not in seen:
                    seen.add(w)
                    nxt.append((w, A.derive(x, t)))
        grown = ideal_closure(A, current.basis + tuple(x for _, x in nxt))
        words.extend(nxt)
        if grown.dim == current.dim:
            break
        current = grown
        level = nxt
    return words


@dataclass
class GoodOpenDecomposition:
    f: tuple
    principal_open: frozenset
    union: frozenset
    pieces: list = field(default_factory=list)  # (theta, points of Y_{(theta f)^p})

    @property
    def equal(self):
        return self.principal_open == self.union


def good_open_decomposition(L, f):
    """``Y_f = Y \\ V([f])`` against the union of good opens ``Y_{(theta f)^p}``."""
    A = L.algebra
    f = tuple(f)
    everything = L.all_points()
    Yf = everything - _points_containing(L, differential_closure(A, [f]).basis)
    pieces = []
    union = frozenset()
    for theta, x in derivative_words(A, f):
        piece = everything - _points_containing(L, [A.power(x, A.p)])
        pieces.append((theta, piece))
        union |= piece
    result = GoodOpenDecomposition(f, Yf, union, pieces)
    if not result.equal:
        raise CrossCheckFailed(f"Y_f={sorted(Yf)} but union of good opens={sorted(union)}")
    return result


def closure_points(L, points):
    """Smallest closed set containing ``points``: V of their intersection."""
    A = L.algebra
    if not points:
        return frozenset()
    meet = SubspaceIdeal.whole(A)
    for i in points:
        meet = meet & L.points[i]
    return _points_containing(L, meet.basis)


def good_open_points(L, f):
    A = L.algebra
    return L.all_points() - _points_containing(L, [A.power(tuple(f), A.p)])


def is_zero_divisor_reduced(A, f, bound=None):
    """Is the image of ``f`` a zero-divisor of ``A / nilradical``?"""
    nil = nilradical(A, bound)
    if nil.is_whole():
        return False
    qm = quotient_map(A, nil, keep_derivations=False)
    R = qm.target
    return linalg.rank(R.mult_matrix(qm.project(f)), A.p) < R.dim


def is_dense_good_open(A, f, lattice=None, bound=None):
    """Density of ``X_{f^p}`` in the quasispectrum, cross-checked with zero-divisors."""
    L = lattice if lattice is not None else build_qspec(A, bound)
    dense = closure_points(L, good_open_points(L, f)) == L.all_points()
    if len(L) and dense == is_zero_divisor_reduced(A, f, bound):
        raise CrossCheckFailed(f"density of X_(f^p) for f={f} disagrees with the zero-divisor test")
    return dense


def lattice_report(L, report=None):
    report = report or Report()
    label = L.kind.upper()
    report.note(label, len(L), "point" if len(L) == 1 else "points")
    L.dump(report)
    return report

