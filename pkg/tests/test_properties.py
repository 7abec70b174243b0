"""Randomized property suites (hypothesis)."""

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from torquot import exact
from torquot.cohomvec import CohomologyVector
from torquot.lattice import (CapacityError, Cone, Lattice, decomposes,
                             dual_cone, hilbert_basis)
from torquot.lp import cone_feasible, standard_feasible
from torquot.sheaves import bott_forms, bott_line, les_solve

scipy_linprog = pytest.importorskip("scipy.optimize").linprog

COMMON = dict(deadline=None,
              suppress_health_check=[HealthCheck.too_slow])


def _full_rank(rows):
    return exact.mat_rank(rows) == len(rows)


cone_matrices = st.integers(min_value=2, max_value=3).flatmap(
    lambda d: st.lists(
        st.lists(st.integers(min_value=-4, max_value=4), min_size=d, max_size=d),
        min_size=d, max_size=d))


class TestConeProperties:
    @settings(max_examples=60, **COMMON)
    @given(cone_matrices)
    def test_biduality(self, rows):
        if not _full_rank(rows):
            return
        lat = Lattice.standard(len(rows))
        try:
            cone = Cone(lat, tuple(lat.point(exact.make_primitive(r))
                                   for r in rows))
        except CapacityError:
            return
        dd = dual_cone(dual_cone(cone))
        assert dd.ray_set() == cone.ray_set()

    @settings(max_examples=40, **COMMON)
    @given(st.integers(min_value=1, max_value=9),
           st.integers(min_value=0, max_value=8))
    def test_hilbert_basis_minimal_and_generates(self, q, shift):
        lat = Lattice.standard(2)
        g2 = exact.make_primitive((shift, q))
        if g2 == (1, 0):
            return
        cone = Cone(lat, (lat.point([1, 0]), lat.point(g2)))
        hb = hilbert_basis(cone)
        elems = list(hb.elements)
        for e in elems:
            others = [o for o in elems if o.coords != e.coords]
            assert not decomposes(e, others)
        # decompose a grid of small cone points
        for x in range(0, 4):
            for y in range(0, 4):
                pt = lat.point([x, y])
                if cone.contains(pt):
                    assert decomposes(pt, elems)


class TestSimplexAgainstScipy:
    @settings(max_examples=80, **COMMON)
    @given(st.lists(
        st.lists(st.integers(min_value=-5, max_value=5), min_size=3, max_size=3),
        min_size=1, max_size=4),
        st.lists(st.integers(min_value=-5, max_value=5), min_size=4, max_size=4))
    def test_equality_feasibility_matches(self, rows, rhs):
        rhs = rhs[:len(rows)]
        ours = standard_feasible(rows, rhs)
        res = scipy_linprog(c=[0, 0, 0], A_eq=rows, b_eq=rhs,
                            bounds=[(0, None)] * 3, method="highs")
        assert ours == res.success

    @settings(max_examples=60, **COMMON)
    @given(st.lists(
        st.lists(st.integers(min_value=-4, max_value=4), min_size=3, max_size=3),
        min_size=1, max_size=4))
    def test_cone_feasibility_matches(self, rows):
        ineqs = [(r, 1) for r in rows]
        ours = cone_feasible(ineqs, n=3, free=True)
        res = scipy_linprog(c=[0, 0, 0], A_ub=[[-x for x in r] for r in rows],
                            b_ub=[-1] * len(rows), bounds=[(None, None)] * 3,
                            method="highs")
        assert ours == res.success


class TestBottProperties:
    @settings(max_examples=100, **COMMON)
    @given(st.integers(min_value=1, max_value=4),
           st.integers(min_value=-20, max_value=20))
    def test_line_serre(self, m, d):
        assert bott_line(m, d) == tuple(reversed(bott_line(m, -d - m - 1)))

    @settings(max_examples=100, **COMMON)
    @given(st.integers(min_value=2, max_value=4),
           st.integers(min_value=0, max_value=4),
           st.integers(min_value=-10, max_value=10))
    def test_forms_serre(self, m, p, d):
        if p > m:
            return
        assert bott_forms(m, p, d) == tuple(reversed(bott_forms(m, m - p, -d)))

    @settings(max_examples=100, **COMMON)
    @given(st.integers(min_value=1, max_value=3),
           st.integers(min_value=-8, max_value=8))
    def test_euler_sequence_chi_additive(self, m, d):
        sub = CohomologyVector.exact(bott_line(m, d))
        mid = CohomologyVector.exact(bott_line(m, d + 1)).scaled(m + 1)
        t = les_solve(a=sub, b=mid)
        if t.is_exact:
            assert t.euler() == mid.euler() - sub.euler()
