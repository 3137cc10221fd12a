import random

import pytest

from charp_diffalg.diffpoly import DerivativeVariable as DV, DiffPolynomial, dp_parse
from charp_diffalg.errors import (DimensionTooLarge, NotDerivativeClosed, PrecisionExhausted,
                                  SearchSpaceTooLarge, ShapeMismatch)
from charp_diffalg.field import PrimeField
from charp_diffalg.geometry import (HurwitzPoint, RegularMap, apply_map, check_nss_inclusion,
                                    compose, derivative_closure_vars, dimension_profile,
                                    generator_profile, identity_map, is_solution, point_ideal,
                                    profiles_equivalent, pullback, solve_system,
                                    vanishing_ideal)
from charp_diffalg.hurwitz import TruncatedHurwitzSeries as H

F2, F3 = PrimeField(2), PrimeField(3)


def P(text, field=F2, n=1, m=1):
    return dp_parse(text, field, n, m)


def point(field, N, *tables):
    return HurwitzPoint.from_tables(field, 1, N, tables)


def keys(S):
    return [q.key() for q in S]


def test_exponential_system():
    S = solve_system([P("D[1](y1) - y1")], 3)
    assert keys(S) == [((0, 0, 0, 0),), ((1, 1, 1, 1),)]
    assert S.method == "recurrence" and S.precision == 3


def test_unit_slope_system():
    S = solve_system([P("D[1](y1) - 1")], 3)
    assert keys(S) == [((0, 1, 0, 0),), ((1, 1, 0, 0),)]


def test_unit_has_no_zeros():
    assert len(solve_system([P("1")], 3)) == 0


@pytest.mark.parametrize("texts,field,n,N", [
    (["D[1](y1) - y1"], F2, 1, 3),
    (["D[1](y1) - 1"], F2, 1, 3),
    (["D[1](y1) - 2*y1"], F3, 1, 3),
    (["D[1](y1) - y2", "D[1](y2) - y1"], F2, 2, 3),
    (["D[1](y1) - y2 + 1"], F2, 2, 3),
    (["D[1](y1) - y1 - y2", "2*D[1](y2) + y1 + 1"], F3, 2, 2),
])
def test_fast_path_agrees_with_enumeration(texts, field, n, N):
    E = [P(t, field, n) for t in texts]
    fast = solve_system(E, N, field=field, n=n, m=1)
    slow = solve_system(E, N, field=field, n=n, m=1, use_fast_path=False)
    assert fast.method == "recurrence" and slow.method == "enumeration"
    assert keys(fast) == keys(slow)


def test_solutions_are_complete_and_sorted():
    E = [P("y1^2 - y1")]
    S = solve_system(E, 3, use_fast_path=False)
    assert keys(S) == sorted(keys(S))
    assert all(is_solution(E, q) for q in S)
    assert keys(solve_system(E, 3, bound=2 ** 30)) == keys(S)


def test_monotone_in_the_system():
    small = solve_system([P("y1*D[1](y1)")], 3)
    big = solve_system([P("y1*D[1](y1)"), P("y1^2 - y1")], 3)
    assert set(keys(big)) <= set(keys(small))


def test_search_bounds():
    with pytest.raises(SearchSpaceTooLarge):
        solve_system([P("y1")], 30)
    with pytest.raises(SearchSpaceTooLarge):
        solve_system([P("y1")], 3, bound=8)
    with pytest.raises(PrecisionExhausted):
        solve_system([P("D[4](y1)")], 3)


def test_empty_system_requires_shape():
    with pytest.raises(ShapeMismatch):
        solve_system([], 2)
    assert len(solve_system([], 1, field=F2, n=1, m=1)) == 4


def test_vanishing_ideal_examples():
    zero = HurwitzPoint.zero(F2, 1, 1, 2)
    assert [f.format() for f in vanishing_ideal([zero], 0, 1)] == ["y1"]
    V = solve_system([P("D[1](y1) - y1")], 3).points
    assert P("D[1](y1) - y1") in vanishing_ideal(V, 1, 1)
    everything = solve_system([], 2, field=F2, n=1, m=1).points
    assert len(vanishing_ideal(everything, 0, 1)) == 0


def test_galois_one_sided_laws():
    E = [P("y1*D[1](y1) + y1")]
    V = solve_system(E, 3).points
    I = vanishing_ideal(V, 1, 2)
    assert all(g in I for g in E)
    again = solve_system(list(I), 3)
    assert set(keys(V)) <= set(keys(again))


def test_vanishing_ideal_is_antitone():
    pts = solve_system([], 2, field=F2, n=1, m=1).points
    small, big = vanishing_ideal(pts[:3], 1, 2), vanishing_ideal(pts[:6], 1, 2)
    assert all(f in small for f in big)


def test_vanishing_ideal_bounds():
    zero = HurwitzPoint.zero(F2, 3, 1, 6)
    with pytest.raises(DimensionTooLarge):
        vanishing_ideal([zero], 4, 6)
    with pytest.raises(PrecisionExhausted):
        vanishing_ideal([HurwitzPoint.zero(F2, 1, 1, 1)], 2, 1)


def test_point_ideals():
    zero = HurwitzPoint.zero(F2, 2, 1, 3)
    assert [f.format() for f in point_ideal(zero, 0, 1)] == ["y1", "y2"]
    # known to precision 1 with r = 1, only the free terms a0 = a1 = 1 are tested
    coarse = point(F2, 1, (1, 1))
    I = point_ideal(coarse, 1, 1)
    assert P("y1 - 1") in I and P("D[1](y1) - 1") in I
    ones = point(F2, 3, (1, 1, 1, 1))
    I = point_ideal(ones, 1, 1)
    assert P("D[1](y1) - y1") in I and P("y1 - 1") not in I
    other = point(F2, 3, (1, 1, 0, 1))
    assert set(f.format() for f in point_ideal(other, 2, 1)) != \
        set(f.format() for f in point_ideal(ones, 2, 1))


@pytest.mark.parametrize("texts", [["D[1](y1) - y1"], ["0"], ["y1"]])
def test_nss_inclusion(texts):
    cert = check_nss_inclusion([P(t) for t in texts], 3, 1, 2)
    assert cert.certified
    assert ("NSS", "inclusion", "PASS") in cert.report.lines
    assert ("NSS", "equality", "UNVERIFIED") in cert.report.lines


def test_nss_point_of_coordinate_ideal():
    cert = check_nss_inclusion([P("y1")], 3, 1, 1)
    assert [q.key() for q in cert.solutions] == [((0, 0, 0, 0),)]
    assert P("D[1](y1)") in cert.ideal


def test_regular_map_examples():
    phi = RegularMap((P("y1^2"),))
    assert pullback(phi, P("D[1](y1)")).is_zero()
    g = P("y1*D[1](y2) + 1", F3, 2)
    assert pullback(identity_map(F3, 2, 1), g) == g
    with pytest.raises(ShapeMismatch):
        pullback(phi, P("y1", F2, 2))


def random_poly(rng, field, n, pieces=3):
    terms = ["y1", "y2", "D[1](y1)", "D[1](y2)", "y1*y2", "y1^2", "1"]
    text = " + ".join(f"{rng.randrange(field.p)}*{rng.choice(terms)}" for _ in range(pieces))
    return P(text, field, n)


def random_point(rng, field, n, N):
    return HurwitzPoint.from_tables(field, 1, N, [[rng.randrange(field.p) for _ in range(N + 1)]
                                                  for _ in range(n)])


def test_pullback_compatible_with_evaluation():
    rng = random.Random(7)
    for _ in range(25):
        phi = RegularMap((random_poly(rng, F3, 2), random_poly(rng, F3, 2)))
        g = random_poly(rng, F3, 2)
        x = random_point(rng, F3, 2, 5)
        lhs = pullback(phi, g).eval(x)
        rhs = g.eval(apply_map(phi, x))
        assert lhs == rhs


def test_pullback_functorial():
    rng = random.Random(11)
    for _ in range(15):
        phi = RegularMap((random_poly(rng, F3, 2), random_poly(rng, F3, 2)))
        psi = RegularMap((random_poly(rng, F3, 2), random_poly(rng, F3, 2)))
        g = random_poly(rng, F3, 2)
        assert pullback(compose(phi, psi), g) == pullback(psi, pullback(phi, g))


def test_apply_map_precision():
    phi = RegularMap((P("D[1](y1)"),))
    with pytest.raises(PrecisionExhausted):
        apply_map(phi, HurwitzPoint.zero(F2, 1, 1, 0))
    assert apply_map(phi, point(F2, 2, (0, 1, 1))).precision == 1


def test_dimension_profiles():
    assert dimension_profile([], 1, 1, 8) == [t + 1 for t in range(9)]
    assert dimension_profile(derivative_closure_vars([DV(1, (0,))], 1, 8), 1, 1, 8) == [0] * 9
    killed = derivative_closure_vars([DV(2, (0,))], 1, 8)
    assert dimension_profile(killed, 2, 1, 8) == [t + 1 for t in range(9)]
    # m = 2: C(t+2, 2) survivors
    assert dimension_profile([], 1, 2, 3) == [1, 3, 6, 10]
    with pytest.raises(NotDerivativeClosed):
        dimension_profile([DV(1, (0,))], 1, 1, 3)


def test_generator_change_equivalence():
    z = [P("y1", F2, 2), P("y2 + D[1](y1)", F2, 2)]
    w = dimension_profile([], 2, 1, 9)
    w2 = generator_profile(z, [], 2, 1, 9)
    assert profiles_equivalent(w, w2, 1)
    assert not profiles_equivalent([1, 2, 3, 4], [1, 5, 6, 7], 1)


def test_point_shape_checks():
    with pytest.raises(ShapeMismatch):
        HurwitzPoint((H.zero(F2, 1, 2), H.zero(F2, 1, 3)))
    assert DiffPolynomial.variable(F2, 1, 1, 1).eval(HurwitzPoint.zero(F2, 1, 1, 2)).is_zero()
