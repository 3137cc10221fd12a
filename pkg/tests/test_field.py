from itertools import product

import pytest
from hypothesis import given, strategies as st

from charp_diffalg.errors import DivisionByZero, LengthMismatch, MixedField
from charp_diffalg.field import (FieldElement, PrimeField, binomial_mod_p, binomial_residue,
                                 is_prime, multiindex_binomial)
from oracles import binom, multi_binom

PRIMES = [2, 3, 5, 7, 11, 13, 65521, 2147483647]


def test_primality_against_trial_division():
    def slow(n):
        return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))
    assert [n for n in range(200) if is_prime(n)] == [n for n in range(200) if slow(n)]
    assert is_prime(2147483647)
    assert not is_prime(2147483649)


@pytest.mark.parametrize("bad", [0, 1, 4, 9, 2 ** 31 + 11])
def test_rejects_non_primes(bad):
    with pytest.raises(ValueError):
        PrimeField(bad)


def test_field_interned():
    assert PrimeField(5) is PrimeField(5)


def test_small_examples():
    F5 = PrimeField(5)
    assert F5(3) + F5(4) == F5(2)
    assert F5(2).inv() == F5(3)
    F2 = PrimeField(2)
    assert F2(1) + F2(1) == F2(0)
    assert F5(-1) == F5(4)


def test_mixed_fields_rejected():
    with pytest.raises(MixedField):
        PrimeField(3)(1) + PrimeField(5)(1)


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        PrimeField(7)(0).inv()
    with pytest.raises(ZeroDivisionError):
        PrimeField(7)(3) / PrimeField(7)(0)


@given(st.sampled_from(PRIMES), st.integers(), st.integers(), st.integers())
def test_field_axioms(p, a, b, c):
    F = PrimeField(p)
    x, y, z = F(a), F(b), F(c)
    assert x + y == y + x and x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == F.zero and x * F.one == x
    if x != F.zero:
        assert x * x.inv() == F.one
        assert x ** (p - 1) == F.one


def test_binomial_examples():
    assert binomial_mod_p(5, 2, 2) == PrimeField(2)(0)
    assert binomial_mod_p(5, 2, 3) == PrimeField(3)(1)
    assert all(binomial_residue(n, 0, 7) == 1 for n in range(30))


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_lucas_against_factorials(p):
    for n, k in product(range(60), repeat=2):
        assert binomial_residue(n, k, p) == binom(n, k) % p


@given(st.integers(0, 5000), st.integers(0, 5000), st.sampled_from([2, 3, 5, 13]))
def test_lucas_large_arguments(n, k, p):
    from math import comb
    assert binomial_residue(n, k, p) == (comb(n, k) % p if k <= n else 0)


def test_multiindex_examples():
    assert multiindex_binomial((2, 1), (1, 0), 2) == PrimeField(2)(0)
    assert multiindex_binomial((2, 2), (1, 1), 3) == PrimeField(3)(1)
    assert multiindex_binomial((4, 0, 3), (4, 0, 3), 5) == PrimeField(5)(1)


def test_multiindex_against_factorials():
    for k in product(range(5), repeat=2):
        for i in product(range(6), repeat=2):
            assert multiindex_binomial(k, i, 3).value == multi_binom(k, i) % 3


def test_multiindex_length_mismatch():
    with pytest.raises(LengthMismatch):
        multiindex_binomial((1, 2), (1,), 2)


def test_element_is_hashable_and_int_like():
    F = PrimeField(7)
    assert len({F(1), F(8), F(2)}) == 2
    assert int(F(10)) == 3
    assert isinstance(F(3), FieldElement)
