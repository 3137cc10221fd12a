import pytest

from charp_diffalg.errors import CrossCheckFailed
from charp_diffalg.findim import SubspaceIdeal as S
from charp_diffalg.fixtures import FIXTURES, b2, direct_product, fixture, prime_field
from charp_diffalg.spectra import (build_max, build_qmax, build_qspec, build_spec,
                                   check_homeomorphism, closed_set_V, closure_points,
                                   good_open_decomposition, good_open_points,
                                   is_dense_good_open, is_zero_divisor_reduced, lattice_report,
                                   verify_topology_axioms)

B2 = b2()
BB = direct_product(b2(), b2())
I1 = S(BB, [(1, 0, 0, 0), (0, 1, 0, 0)])
I2 = S(BB, [(0, 0, 1, 0), (0, 0, 0, 1)])
VALID = [n for n in FIXTURES if n not in ("HF2_3", "HF3_4")]


def test_b2_spectra():
    assert build_spec(B2).points == [S(B2, [(0, 1)])]
    assert build_qspec(B2).points == [S.zero(B2)]
    assert len(build_max(B2)) == len(build_qmax(B2)) == 1


def test_product_spectra():
    assert len(build_spec(BB)) == 2
    assert build_qspec(BB).points == sorted([I1, I2], key=S.key)


def test_field_spectra():
    F = prime_field(2)
    assert build_spec(F).points == build_qspec(F).points == [S.zero(F)]


def test_closed_sets():
    L = build_qspec(BB)
    assert closed_set_V(L, [BB.zero()]) == L.all_points()
    assert closed_set_V(L, [BB.unit]) == frozenset()
    assert closed_set_V(L, [(0, 1, 0, 0)]) == frozenset({L.index(I1)})
    assert closed_set_V(L, I1 & I2) == L.all_points()


def test_union_of_families():
    L = build_qspec(BB)
    E1, E2 = [(0, 1, 0, 0)], [(0, 0, 0, 1)]
    assert closed_set_V(L, E1 + E2) == closed_set_V(L, E1) & closed_set_V(L, E2)


@pytest.mark.parametrize("name", VALID)
@pytest.mark.parametrize("build", [build_spec, build_qspec])
def test_topology_axioms(name, build):
    report = verify_topology_axioms(build(fixture(name)))
    assert report.ok, report.failed_lines()
    assert len(report.lines) == 4


@pytest.mark.parametrize("name", VALID)
def test_homeomorphism(name):
    report = check_homeomorphism(fixture(name))
    assert report.ok, report.failed_lines()
    assert [line[1] for line in report.lines] == [
        "rad_qrad", "rad_qrad_order", "spec_qspec", "spec_qspec_order", "max_qmax",
        "max_qmax_order"]


def test_b2_correspondence():
    from charp_diffalg.findim import pi_map, radical_r
    assert pi_map(B2, S(B2, [(0, 1)])).is_zero()
    assert radical_r(B2, S.zero(B2)) == S(B2, [(0, 1)])


def test_good_open_examples():
    L = build_qspec(B2)
    dec = good_open_decomposition(L, (0, 1))
    assert dec.principal_open == L.all_points() == dec.union
    assert dict(dec.pieces)[(0,)] == frozenset()
    assert dict(dec.pieces)[(1,)] == L.all_points()
    assert good_open_decomposition(L, (1, 0)).union == L.all_points()
    assert good_open_decomposition(L, (0, 0)).union == frozenset()


@pytest.mark.parametrize("name", [n for n in VALID if fixture(n).p ** fixture(n).dim <= 256])
def test_good_open_and_density_exhaustive(name):
    A = fixture(name)
    L = build_qspec(A)
    for f in A.elements():
        good_open_decomposition(L, f)
        is_dense_good_open(A, f, L)


def test_density_examples():
    L = build_qspec(BB)
    f = (1, 0, 0, 1)  # (1, eps)
    assert is_zero_divisor_reduced(BB, f)
    assert not is_dense_good_open(BB, f, L)
    assert good_open_points(L, f) == frozenset({L.index(I2)})
    assert is_dense_good_open(BB, BB.unit, L)
    assert not is_dense_good_open(B2, (0, 1))
    assert closure_points(L, []) == frozenset()


def test_density_cross_check_detects_disagreement(monkeypatch):
    import charp_diffalg.spectra as spectra
    monkeypatch.setattr(spectra, "is_zero_divisor_reduced", lambda A, f, bound=None: True)
    with pytest.raises(CrossCheckFailed):
        spectra.is_dense_good_open(BB, BB.unit)


def test_lattice_dump():
    lines = lattice_report(build_qspec(BB)).lines
    assert lines[0] == ("QSPEC", "2", "points")
    assert lines[1][0] == "POINT" and lines[1][2] == "dim=2"
    assert not any(line[0] == "LE" for line in lines)
    lines = lattice_report(build_spec(fixture("dual2_zero"))).lines
    assert lines[0] == ("SPEC", "1", "point")
