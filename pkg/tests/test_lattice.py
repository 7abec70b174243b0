from fractions import Fraction

import pytest

from torquot.lattice import (CapacityError, Cone, Lattice, LatticeError,
                             decomposes, dual_cone, faces, hilbert_basis,
                             is_regular, pair, quotient_lattice)


def std(rank):
    return Lattice.standard(rank)


def test_lattice_membership():
    # Z^2 + Z.(1,2)/3
    lat = Lattice.from_generators([[1, 0], [0, 1],
                                   [Fraction(1, 3), Fraction(2, 3)]])
    assert lat.contains_reference([Fraction(1, 3), Fraction(2, 3)])
    assert lat.contains_reference([1, 1])
    assert not lat.contains_reference([Fraction(1, 3), Fraction(1, 3)])
    p = lat.from_reference([Fraction(1, 3), Fraction(2, 3)])
    assert p.is_primitive()
    assert tuple(p.reference()) == (Fraction(1, 3), Fraction(2, 3))


def test_dual_pairing_is_integral():
    lat = Lattice.from_generators([[1, 0], [0, 1],
                                   [Fraction(1, 3), Fraction(2, 3)]])
    dual = lat.dual()
    for mc in [(1, 0), (0, 1), (2, -1)]:
        for nc in [(1, 0), (0, 1), (1, 1)]:
            v = pair(dual.point(mc), lat.point(nc))
            assert Fraction(v).denominator == 1


def test_cone_contains_and_faces():
    lat = std(2)
    cone = Cone(lat, (lat.point([1, 0]), lat.point([1, 2])))
    assert cone.contains(lat.point([2, 1]))
    assert not cone.contains(lat.point([-1, 0]))
    assert len(faces(cone)) == 4  # cone, two rays, zero face


def test_cone_rejects_dependent_generators():
    lat = std(2)
    with pytest.raises(CapacityError):
        Cone(lat, (lat.point([1, 0]), lat.point([0, 1]), lat.point([1, 1])))
    with pytest.raises(LatticeError):
        Cone(lat, (lat.point([2, 4]),))  # not primitive


def test_dual_cone_biduality():
    lat = std(3)
    cone = Cone(lat, (lat.point([1, 0, 0]), lat.point([1, 2, 0]),
                      lat.point([1, 1, 3])))
    dd = dual_cone(dual_cone(cone))
    assert dd.ray_set() == cone.ray_set()


def test_is_regular():
    lat = std(2)
    assert is_regular(Cone(lat, (lat.point([1, 0]), lat.point([1, 1]))))
    assert not is_regular(Cone(lat, (lat.point([1, 0]), lat.point([1, 2]))))
    # lower-dimensional: gcd of maximal minors
    lat3 = std(3)
    assert is_regular(Cone(lat3, (lat3.point([1, 0, 0]), lat3.point([0, 1, 1]))))
    assert not is_regular(Cone(lat3, (lat3.point([1, 0, 1]),
                                      lat3.point([1, 0, -1]))))


def test_quotient_lattice():
    lat = std(3)
    quot, proj = quotient_lattice(lat, lat.point([1, 2, 3]))
    assert quot.rank == 2
    assert proj(lat.point([1, 2, 3])).is_zero()
    assert proj(lat.point([2, 4, 6])).is_zero()
    a, b = lat.point([1, 0, 0]), lat.point([0, 1, 0])
    assert proj(a + b).coords == (proj(a) + proj(b)).coords


def test_hilbert_basis_quadratic_cone():
    # cone <(1,0),(1,2)>: monoid needs the interior point (1,1)
    lat = std(2)
    cone = Cone(lat, (lat.point([1, 0]), lat.point([1, 2])))
    hb = hilbert_basis(cone)
    got = {p.coords for p in hb.elements}
    assert got == {(1, 0), (1, 2), (1, 1)}


def test_hilbert_basis_regular_cone():
    lat = std(3)
    cone = Cone(lat, (lat.point([1, 0, 0]), lat.point([0, 1, 0]),
                      lat.point([0, 0, 1])))
    hb = hilbert_basis(cone)
    assert {p.coords for p in hb.elements} == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}


def test_hilbert_basis_generates_samples():
    lat = std(2)
    cone = Cone(lat, (lat.point([1, 0]), lat.point([2, 5])))
    hb = hilbert_basis(cone)
    for coords in [(3, 5), (4, 2), (2, 5), (5, 0), (3, 3)]:
        p = lat.point(coords)
        if cone.contains(p):
            assert decomposes(p, list(hb.elements))


def test_hilbert_basis_minimality():
    lat = std(2)
    cone = Cone(lat, (lat.point([1, 0]), lat.point([3, 7])))
    hb = hilbert_basis(cone)
    elems = list(hb.elements)
    for e in elems:
        others = [o for o in elems if o.coords != e.coords]
        assert not decomposes(e, others)
