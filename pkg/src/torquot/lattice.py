"""Exact lattices, polyhedral cones and Hilbert bases.

A Lattice is a full-rank sublattice of Q^rank given by an integral basis
(rows of `basis`, in reference coordinates). Points store integer
coordinates with respect to that basis, so all downstream arithmetic is
integer arithmetic; only conversions touch Fractions.

All cones handled here are simplicial and pointed: generators are required
to be linearly independent. That covers every cone in scope and keeps
containment tests a single triangular solve.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from math import lcm

from . import exact

RANK_CAP = 8


class LatticeError(ValueError):
    pass


class CapacityError(LatticeError):
    """Input is outside the supported desk-scale range."""


def _frac_rows(rows):
    return tuple(tuple(Fraction(x) for x in r) for r in rows)


@dataclass(frozen=True)
class Lattice:
    basis: tuple  # rows = integral basis vectors, reference coordinates

    @property
    def rank(self):
        return len(self.basis)

    @staticmethod
    def standard(rank):
        return Lattice(_frac_rows(exact.identity(rank)))

    @staticmethod
    def from_generators(rows):
        """Lattice generated by rational row vectors (must have full rank)."""
        rows = _frac_rows(rows)
        denom = 1
        for r in rows:
            for x in r:
                denom = lcm(denom, x.denominator)
        scaled = [[int(x * denom) for x in r] for r in rows]
        hnf = exact.hnf_row_basis(scaled)
        if len(hnf) != len(rows[0]):
            raise LatticeError("generators do not span a full-rank lattice")
        return Lattice(_frac_rows([[Fraction(x, denom) for x in r] for r in hnf]))

    @cached_property
    def _basis_inv(self):
        return _frac_rows(exact.mat_inverse(self.basis))

    def dual(self):
        """Dual lattice; its reference space is the dual of this one's."""
        return Lattice(tuple(zip(*self._basis_inv)))

    def point(self, coords):
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.rank:
            raise LatticeError("coordinate length does not match lattice rank")
        return LatticePoint(self, coords)

    def zero(self):
        return self.point((0,) * self.rank)

    def coords_of(self, reference):
        """Rational basis coordinates of a reference-coordinate vector."""
        return tuple(exact.vec_mat([Fraction(x) for x in reference], self._basis_inv))

    def contains_reference(self, reference):
        return all(c.denominator == 1 for c in self.coords_of(reference))

    def from_reference(self, reference):
        coords = self.coords_of(reference)
        if any(c.denominator != 1 for c in coords):
            raise LatticeError(f"{reference} is not a lattice point")
        return self.point(int(c) for c in coords)


@dataclass(frozen=True)
class LatticePoint:
    lattice: Lattice
    coords: tuple

    def reference(self):
        return tuple(exact.vec_mat(self.coords, self.lattice.basis))

    def is_primitive(self):
        return exact.vec_gcd(self.coords) == 1

    def is_zero(self):
        return not any(self.coords)

    def primitive(self):
        return self.lattice.point(exact.make_primitive(self.coords))

    def __add__(self, other):
        if other.lattice != self.lattice:
            raise LatticeError("points live in different lattices")
        return self.lattice.point(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self.lattice.point(-a for a in self.coords)

    def __rmul__(self, k):
        return self.lattice.point(k * a for a in self.coords)


def pair(m, x):
    """Canonical pairing, computed in reference coordinates.

    For M = N.dual() this is the integer dot product of coordinate vectors;
    going through reference coordinates also covers mixed constructions.
    """
    return exact.dot(m.reference(), x.reference())


@dataclass(frozen=True)
class Cone:
    lattice: Lattice
    generators: tuple

    def __post_init__(self):
        if not self.generators:
            raise LatticeError("cone needs at least one generator")
        gens = tuple(self.generators)
        for g in gens:
            if g.lattice != self.lattice:
                raise LatticeError("generator lattice mismatch")
            if g.is_zero():
                raise LatticeError("zero vector is not a valid generator")
            if not g.is_primitive():
                raise LatticeError("generators must be primitive")
        if exact.mat_rank([g.coords for g in gens]) != len(gens):
            raise CapacityError("non-simplicial cone (dependent generators)")
        object.__setattr__(self, "generators", gens)

    @property
    def dim(self):
        return len(self.generators)

    @property
    def is_pointed(self):
        return True  # simplicial cones are pointed by construction

    @property
    def is_full_dim(self):
        return self.dim == self.lattice.rank

    def generator_matrix(self):
        return [list(g.coords) for g in self.generators]

    def coords_in_cone(self, point):
        """Barycentric coordinates of `point` w.r.t. the generators (full-dim)."""
        if not self.is_full_dim:
            raise CapacityError("barycentric coordinates need a full-dim cone")
        ginv = exact.mat_inverse(self.generator_matrix())
        return tuple(exact.vec_mat([Fraction(c) for c in point.coords], ginv))

    def contains(self, point):
        if self.is_full_dim:
            return all(t >= 0 for t in self.coords_in_cone(point))
        sol = _nonneg_combination(self.generator_matrix(), point.coords)
        return sol is not None

    def ray_set(self):
        return frozenset(g.coords for g in self.generators)


def _nonneg_combination(gen_rows, target):
    """Rational t >= 0 with sum t_i g_i = target, or None (independent rows)."""
    sol = exact.solve_linear(list(zip(*gen_rows)), target)
    if sol is None or any(t < 0 for t in sol):
        return None
    return sol


def dual_cone(cone):
    """Dual of a pointed full-dimensional simplicial cone, in the dual lattice."""
    if not cone.is_full_dim:
        raise LatticeError("dual cone needs a full-dimensional pointed cone")
    dual = cone.lattice.dual()
    ginv = exact.mat_inverse(cone.generator_matrix())
    # dual basis functionals are the columns of G^{-1}
    gens = [dual.point(exact.clear_denominators(col)) for col in zip(*ginv)]
    return Cone(dual, tuple(gens))


def is_regular(cone):
    """Do the primitive generators extend to a lattice basis?

    Equivalent to all elementary divisors of the generator matrix being 1,
    i.e. the gcd of the maximal minors is 1.
    """
    rows = cone.generator_matrix()
    k = len(rows)
    if k == cone.lattice.rank:
        return abs(exact.mat_det(rows)) == 1
    g = 0
    for cols in combinations(range(cone.lattice.rank), k):
        minor = exact.mat_det([[row[c] for c in cols] for row in rows])
        g = exact.vec_gcd((g, int(minor)))
        if g == 1:
            return True
    return g == 1


def faces(cone):
    """All faces of a simplicial cone: one per generator subset, zero cone last.

    The zero-dimensional face is reported as None (a Cone cannot be empty).
    """
    out = []
    for k in range(len(cone.generators), 0, -1):
        for subset in combinations(cone.generators, k):
            out.append(Cone(cone.lattice, subset))
    out.append(None)
    return out


def quotient_lattice(lattice, v):
    """Quotient N / Zv for a primitive v; returns (lattice, projection)."""
    if v.lattice != lattice:
        raise LatticeError("point does not belong to the lattice")
    if v.is_zero() or not v.is_primitive():
        raise LatticeError("quotient by a non-primitive vector would have torsion")
    u = exact.complete_to_unimodular(list(v.coords))
    quot = Lattice.standard(lattice.rank - 1)

    def projection(point):
        if point.lattice != lattice:
            raise LatticeError("point does not belong to the lattice")
        image = exact.mat_vec(u, list(point.coords))
        return quot.point(image[1:])

    return quot, projection


@dataclass(frozen=True)
class HilbertBasis:
    monoid_cone: Cone
    elements: frozenset

    def __len__(self):
        return len(self.elements)


def hilbert_basis(cone):
    """Minimal generating set of the monoid of lattice points of `cone`.

    Candidates are the primitive ray generators plus the lattice points of
    the half-open fundamental parallelepiped; reduction removes every
    candidate that splits as a sum of two nonzero monoid elements.
    """
    if not cone.is_full_dim:
        raise CapacityError("hilbert_basis needs a full-dimensional cone")
    if cone.lattice.rank > RANK_CAP:
        raise CapacityError(f"rank {cone.lattice.rank} exceeds the desk-scale cap {RANK_CAP}")
    gens = cone.generator_matrix()
    candidates = {tuple(g) for g in gens}
    for p in exact.parallelepiped_points(gens):
        if any(p):
            candidates.add(p)
    ginv = exact.mat_inverse(gens)
    # scale barycentric coords to integers so dominance checks are int-only
    denom = 1
    tcoords = {}
    for c in candidates:
        t = exact.vec_mat(list(c), ginv)
        for x in t:
            denom = lcm(denom, x.denominator)
        tcoords[c] = t
    scaled = {c: tuple(int(x * denom) for x in t) for c, t in tcoords.items()}

    items = sorted(candidates)
    if len(items) > 300:
        import numpy as np

        t = np.array([scaled[c] for c in items], dtype=np.int64)
        basis = []
        for idx, c in enumerate(items):
            dominated = np.all(t <= t[idx], axis=1)
            dominated[idx] = False
            if not dominated.any():
                basis.append(c)
    else:
        basis = []
        for c in items:
            tc = scaled[c]
            reducible = False
            for other in items:
                if other == c:
                    continue
                to = scaled[other]
                if all(a <= b for a, b in zip(to, tc)):
                    reducible = True
                    break
            if not reducible:
                basis.append(c)
    elements = frozenset(cone.lattice.point(c) for c in basis)
    return HilbertBasis(cone, elements)


def decomposes(point, basis_points, _memo=None):
    """Bounded search: is `point` a nonnegative integer combination of basis?"""
    if _memo is None:
        _memo = {}
    key = point.coords
    if key in _memo:
        return _memo[key]
    if point.is_zero():
        return True
    _memo[key] = False
    for b in basis_points:
        diff = point - b
        rest = _point_in_positive_span(diff, basis_points)
        if rest and decomposes(diff, basis_points, _memo):
            _memo[key] = True
            break
    return _memo[key]


def _point_in_positive_span(point, basis_points):
    # quick pruning filter: the difference must stay in the rational cone hull
    from .lp import cone_feasible

    rows = [list(b.coords) for b in basis_points]
    cols = list(zip(*rows))
    return cone_feasible([], eqs=[(list(col), val) for col, val in
                                  zip(cols, point.coords)], n=len(rows))
