"""Small named differential algebras used by the tests and the CLI suite."""

from itertools import product

from .field import PrimeField, multiindex_binomial_residue
from .findim import FinDimDiffAlgebra


def prime_field(p, m=1):
    """F_p as a one-dimensional algebra with ``m`` zero derivations."""
    return FinDimDiffAlgebra(p, ["1"], [1], [[[1]]], [[[0]] for _ in range(m)])


def dual_numbers(p, shift=False):
    """F_p[eps]/(eps^2); with ``shift`` the derivation sends eps to 1.

    The shifted version satisfies Leibniz only for p = 2 (it is B2).
    """
    table = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
    D = [[0, 0], [1, 0]] if shift else [[0, 0], [0, 0]]
    return FinDimDiffAlgebra(p, ["1", "eps"], [1, 0], table, [D])


def b2():
    return dual_numbers(2, shift=True)


def hurwitz_truncation(p, length, m=1, box=False):
    """Span of the divided powers delta_k in H F_p with shift derivations.

    Indices run over ``ord(k) < length`` (or every coordinate ``< length``
    with ``box=True``); products landing outside the window are dropped.
    The result is a genuine differential algebra exactly when the window is
    closed under the product, e.g. ``m = 1`` and ``length`` a power of p.
    """
    field = PrimeField(p)
    if box:
        idx = sorted(product(range(length), repeat=m), key=lambda k: (sum(k), k))
    else:
        idx = sorted((k for k in product(range(length), repeat=m) if sum(k) < length),
                     key=lambda k: (sum(k), k))
    pos = {k: i for i, k in enumerate(idx)}
    d = len(idx)

    def e(k, c=1):
        v = [0] * d
        if k in pos:
            v[pos[k]] = c % p
        return v

    table = [[e(tuple(a + b for a, b in zip(i, j)),
                multiindex_binomial_residue(tuple(a + b for a, b in zip(i, j)), i, p))
              for j in idx] for i in idx]
    derivs = []
    for t in range(m):
        D = []
        for k in idx:
            if k[t]:
                D.append(e(tuple(x - (s == t) for s, x in enumerate(k))))
            else:
                D.append([0] * d)
        derivs.append(D)

    def name(k):
        if not any(k):
            return "1"
        return "d" + "_".join(str(x) for x in k)

    return FinDimDiffAlgebra(field, [name(k) for k in idx], e((0,) * m), table, derivs)


def direct_product(A, B, names=None):
    """Componentwise product algebra; basis is A's basis then B's."""
    if A.field is not B.field or A.m != B.m:
        raise ValueError("factors must share field and number of derivations")
    da, db = A.dim, B.dim
    d = da + db

    def left(v):
        return list(v) + [0] * db

    def right(v):
        return [0] * da + list(v)

    table = [[left(A.mul_table[i][j]) if j < da else [0] * d for j in range(d)] for i in range(da)]
    table += [[[0] * d if j < da else right(B.mul_table[i][j - da]) for j in range(d)]
              for i in range(db)]
    derivs = [[left(A.derivations[t][i]) for i in range(da)]
              + [right(B.derivations[t][i]) for i in range(db)] for t in range(A.m)]
    if names is None:
        names = [f"{n}.1" for n in A.basis_names] + [f"{n}.2" for n in B.basis_names]
    unit = [a + b for a, b in zip(left(A.unit), right(B.unit))]
    return FinDimDiffAlgebra(A.field, names, unit, table, derivs)


# name -> constructor, in a fixed order
FIXTURES = {
    "F2": lambda: prime_field(2),
    "F3": lambda: prime_field(3),
    "B2": b2,
    "dual2_zero": lambda: dual_numbers(2),
    "dual3_zero": lambda: dual_numbers(3),
    "B2xB2": lambda: direct_product(b2(), b2()),
    "B2xF2": lambda: direct_product(b2(), prime_field(2)),
    "F2xF2": lambda: direct_product(prime_field(2), prime_field(2)),
    "HF2_3": lambda: hurwitz_truncation(2, 3),
    "HF2_4": lambda: hurwitz_truncation(2, 4),
    "HF3_3": lambda: hurwitz_truncation(3, 3),
    "HF3_4": lambda: hurwitz_truncation(3, 4),
    "HF2_box2_m2": lambda: hurwitz_truncation(2, 2, m=2, box=True),
}

HURWITZ_TRUNCATIONS = ("HF2_3", "HF2_4", "HF3_3", "HF3_4", "HF2_box2_m2")


def fixture(name):
    return FIXTURES[name]()


def all_fixtures():
    return {name: make() for name, make in FIXTURES.items()}
