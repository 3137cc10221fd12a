from itertools import product

import pytest
from hypothesis import given, strategies as st

from charp_diffalg.errors import ParseError, PrecisionExhausted, ShapeMismatch
from charp_diffalg.field import PrimeField
from charp_diffalg.hurwitz import (TruncatedHurwitzSeries as H, hw_add, hw_derive, hw_mul, hw_pi,
                                   hw_pth_power, multi_indices, parse_series, unit_index)
from oracles import dense_mul, dense_power, indices

F2, F3, F5 = PrimeField(2), PrimeField(3), PrimeField(5)


def d(field, k, N=4, m=1, c=1):
    return H.delta(field, m, N, k if isinstance(k, tuple) else (k,), c)


@st.composite
def series(draw, p, m, N):
    coeffs = {k: draw(st.integers(0, p - 1)) for k in indices(m, N)}
    return H(PrimeField(p), m, N, coeffs)


def as_dict(f):
    return dict(f.items())


def test_multi_indices_are_graded():
    idx = multi_indices(2, 2)
    assert idx == ((0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0))
    assert len(multi_indices(3, 4)) == 35  # C(4+3, 3)


def test_unit_index():
    assert unit_index(3, 2) == (0, 1, 0)
    with pytest.raises(ShapeMismatch):
        unit_index(2, 3)


def test_sparse_canonical_form():
    f = H(F2, 1, 3, {(0,): 1, (1,): 2, (2,): 0})
    assert dict(f.items()) == {(0,): 1}
    # entries beyond the precision are unknown, hence dropped
    assert H(F2, 1, 2, {(3,): 1}).is_zero()
    with pytest.raises(ShapeMismatch):
        H(F2, 1, 2, {(0, 1): 1})


def test_add_examples():
    f = H(F2, 1, 3, {(0,): 1, (1,): 1})
    assert hw_add(f, H.zero(F2, 1, 3)).identical(f)
    assert hw_add(f, d(F2, 1, N=3)).identical(H.one(F2, 1, 3))
    g = H(F5, 1, 4, {(0,): 2, (3,): 4})
    s = g + (-H(F5, 1, 2, {(0,): 2}))
    assert s.precision == 2 and s.is_zero()


def test_mul_examples():
    one_plus = H(F2, 1, 3, {(0,): 1, (1,): 1})
    assert hw_mul(one_plus, d(F2, 1, N=3)).identical(d(F2, 1, N=3))
    assert hw_mul(d(F2, 1), d(F2, 1)).is_zero()
    f = H(F3, 2, 3, {(0, 1): 2, (1, 1): 1})
    assert (f * H.one(F3, 2, 3)).identical(f)


def test_mul_precision_is_minimum():
    assert (H.one(F3, 1, 5) * H.one(F3, 1, 2)).precision == 2


def test_mixed_fields_rejected():
    with pytest.raises(ShapeMismatch):
        H.one(F2, 1, 2) + H.one(F3, 1, 2)
    with pytest.raises(ShapeMismatch):
        H.one(F2, 1, 2) * H.one(F2, 2, 2)


@pytest.mark.parametrize("p,m,N", [(2, 1, 6), (3, 1, 5), (5, 2, 3), (2, 2, 4), (3, 3, 2)])
def test_mul_matches_convolution_oracle(p, m, N):
    F = PrimeField(p)
    idx = indices(m, N)
    # every pair of basis series, then some dense ones
    for i, j in product(idx, repeat=2):
        got = as_dict(d(F, i, N, m) * d(F, j, N, m))
        assert got == dense_mul({i: 1}, {j: 1}, p, m, N)
    for seed in range(5):
        f = {k: (seed * 7 + sum(k) * 3 + k[0]) % p for k in idx}
        g = {k: (seed + 5 * k[-1] + 1) % p for k in idx}
        got = as_dict(H(F, m, N, f) * H(F, m, N, g))
        assert got == dense_mul(f, g, p, m, N)


def test_delta_product_rule_frozen():
    # delta_a * delta_b = C(a+b, a) delta_{a+b}; values frozen from factorials
    assert as_dict(d(F3, 1, N=6) * d(F3, 2, N=6)) == {}  # C(3,1)=3
    assert as_dict(d(F5, 2, N=6) * d(F5, 2, N=6)) == {(4,): 1}  # C(4,2)=6
    assert as_dict(d(F5, 1, N=6) * d(F5, 2, N=6)) == {(3,): 3}  # C(3,1)=3


def test_derive_examples():
    assert hw_derive(d(F2, 2), 1).identical(H.delta(F2, 1, 3, (1,)))
    assert hw_derive(H.constant(F3, 1, 4, 2), 1).is_zero()
    with pytest.raises(PrecisionExhausted):
        H.one(F2, 1, 0).derive(1)
    with pytest.raises(ShapeMismatch):
        H.one(F2, 1, 3).derive(2)


@given(series(2, 2, 4))
def test_derivations_commute(f):
    assert f.derive(1).derive(2).identical(f.derive(2).derive(1))


def test_pi_examples():
    assert hw_pi(H(F2, 1, 3, {(0,): 1, (1,): 1})) == F2(1)
    assert hw_pi(d(F2, 1)) == F2(0)


@given(series(5, 1, 4), series(5, 1, 4))
def test_pi_is_multiplicative(f, g):
    assert hw_pi(f * g) == hw_pi(f) * hw_pi(g)


def test_pth_power_examples():
    assert hw_pth_power(H(F2, 1, 4, {(1,): 1, (2,): 1})).is_zero()
    assert hw_pth_power(d(F3, 1, N=5)).is_zero()
    assert hw_pth_power(H.one(F5, 2, 3)).identical(H.one(F5, 2, 3))


def test_pth_power_matches_oracle():
    f = {(0,): 2, (1,): 1, (3,): 4}
    got = as_dict(hw_pth_power(H(F5, 1, 6, f)))
    assert got == dense_power(f, 5, 5, 1, 6)


@given(series(3, 2, 3))
def test_frobenius_is_additive(f):
    g = H(F3, 2, 3, {(1, 0): 1, (0, 0): 2})
    assert (f + g).pth_power() == f.pth_power() + g.pth_power()


def test_equality_is_precision_aware():
    f = H(F2, 1, 5, {(0,): 1, (4,): 1})
    g = H(F2, 1, 2, {(0,): 1})
    assert f == g
    cmp = f.compare(g)
    assert cmp.equal and cmp.precision == 2
    assert not f.identical(g)
    assert f != H(F2, 1, 5, {(0,): 1})


def test_format_and_parse_round_trip():
    f = H(F3, 2, 2, {(0, 0): 1, (1, 1): 2})
    text = f.format()
    assert text == "p=3 m=2 N=2 : [0,0]=1 [1,1]=2"
    assert parse_series(text).identical(f)
    assert H.zero(F2, 1, 3).format() == "p=2 m=1 N=3 :"
    assert parse_series("p=2 m=1 N=3 :").is_zero()
    assert parse_series("p=2 m=1 N=3 : [1]=3").format() == "p=2 m=1 N=3 : [1]=1"


@given(series(5, 2, 3))
def test_parse_inverts_format(f):
    assert parse_series(f.format()).identical(f)


@pytest.mark.parametrize("bad,col", [
    ("p=4 m=1 N=3 : [0]=1", 3),
    ("p=2 m=1 N=3 : [0,1]=1", 16),
    ("p=2 m=1 N=3 : [5]=1", 16),
    ("p=2 m=1 N=3 : [0]=1 junk", 21),
    ("m=1 N=3", 1),
])
def test_parse_errors_have_columns(bad, col):
    with pytest.raises(ParseError) as exc:
        parse_series(bad)
    assert exc.value.column == col
