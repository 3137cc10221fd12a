from itertools import product

from hypothesis import given, strategies as st

from charp_diffalg import linalg


def matrices(p, rows, cols):
    return st.lists(st.lists(st.integers(0, p - 1), min_size=cols, max_size=cols),
                    min_size=rows, max_size=rows)


def brute_kernel(M, n, p):
    return {v for v in product(range(p), repeat=n) if not any(linalg.mat_vec(M, v, p))}


@given(matrices(3, 3, 4))
def test_nullspace_spans_brute_force_kernel(M):
    basis = linalg.nullspace(M, 4, 3)
    assert set(linalg.span_elements(basis, 4, 3)) == brute_kernel(M, 4, 3)


@given(matrices(2, 4, 4), st.lists(st.integers(0, 1), min_size=4, max_size=4))
def test_solve_is_correct_or_reports_inconsistency(M, rhs):
    v = linalg.solve(M, rhs, 4, 2)
    solutions = [w for w in product(range(2), repeat=4) if list(linalg.mat_vec(M, w, 2)) == rhs]
    if v is None:
        assert not solutions
    else:
        assert list(linalg.mat_vec(M, v, 2)) == rhs


@given(matrices(3, 2, 3), matrices(3, 2, 3))
def test_intersection(A, B):
    basis, _ = linalg.intersect(linalg.rref(A, 3, 3)[0], linalg.rref(B, 3, 3)[0], 3, 3)
    left = set(linalg.span_elements(linalg.rref(A, 3, 3)[0], 3, 3))
    right = set(linalg.span_elements(linalg.rref(B, 3, 3)[0], 3, 3))
    assert set(linalg.span_elements(basis, 3, 3)) == left & right


@given(matrices(5, 3, 3))
def test_rref_rank_and_membership(M):
    basis, pivots = linalg.rref(M, 5, 3)
    assert len(basis) == linalg.rank(M, 5)
    for row in M:
        assert linalg.in_span(row, basis, pivots, 5)
