"""Exact linear algebra over F_p on tuples of integer residues.

Vectors are tuples of ints in ``[0, p)``. A subspace is carried around as its
reduced row-echelon basis together with the pivot columns, which is also its
canonical (hashable) form.
"""

from itertools import product


def rref(rows, p, ncols=None):
    """Reduced row-echelon form of ``rows``; returns ``(basis, pivots)``.

    Zero rows are dropped, so ``len(basis)`` is the rank.
    """
    mat = [[x % p for x in row] for row in rows]
    if ncols is None:
        ncols = len(mat[0]) if mat else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(mat):
            break
        pivot_row = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        inv = pow(mat[r][c], p - 2, p)
        if inv != 1:
            mat[r] = [x * inv % p for x in mat[r]]
        lead = mat[r]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [(x - f * y) % p for x, y in zip(mat[i], lead)]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in mat[:r]), tuple(pivots)


def rank(rows, p):
    return len(rref(rows, p)[0])


def reduce_vector(v, basis, pivots, p):
    """Remainder of ``v`` after eliminating the pivot columns of an rref basis."""
    v = list(v)
    for row, c in zip(basis, pivots):
        f = v[c] % p
        if f:
            v = [(x - f * y) % p for x, y in zip(v, row)]
    return tuple(x % p for x in v)


def in_span(v, basis, pivots, p):
    return not any(reduce_vector(v, basis, pivots, p))


def nullspace(matrix, ncols, p):
    """Basis of ``{v : matrix @ v = 0}`` in F_p^ncols, in a canonical order."""
    basis, pivots = rref(matrix, p, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for row, pc in zip(basis, pivots):
            v[pc] = (-row[fc]) % p
        out.append(tuple(v))
    return out


def intersect(basis_a, basis_b, n, p):
    """Rref basis of the intersection of two row spaces in F_p^n."""
    if not basis_a or not basis_b:
        return (), ()
    # sum_i a_i A_i - sum_j b_j B_j = 0  ->  vectors sum_i a_i A_i
    cols = list(basis_a) + [tuple((-x) % p for x in row) for row in basis_b]
    mat = [[cols[k][c] for k in range(len(cols))] for c in range(n)]
    vecs = []
    for coeffs in nullspace(mat, len(cols), p):
        vec = [0] * n
        for a, row in zip(coeffs[: len(basis_a)], basis_a):
            if a:
                vec = [(x + a * y) % p for x, y in zip(vec, row)]
        vecs.append(vec)
    return rref(vecs, p, n)


def solve(matrix, rhs, ncols, p):
    """One solution ``v`` of ``matrix @ v = rhs``, or ``None`` if inconsistent."""
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    basis, pivots = rref(aug, p, ncols + 1)
    if ncols in pivots:
        return None
    v = [0] * ncols
    for row, c in zip(basis, pivots):
        v[c] = row[ncols]
    return tuple(v)


def mat_vec(matrix, v, p):
    return tuple(sum(a * b for a, b in zip(row, v)) % p for row in matrix)


def all_vectors(n, p):
    """Every vector of F_p^n in lexicographic order."""
    return product(range(p), repeat=n)


def span_elements(basis, n, p):
    """Every element of the row space of ``basis`` inside F_p^n."""
    for coeffs in product(range(p), repeat=len(basis)):
        v = [0] * n
        for a, row in zip(coeffs, basis):
            if a:
                v = [(x + a * y) % p for x, y in zip(v, row)]
        yield tuple(v)
