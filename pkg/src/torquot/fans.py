"""Fans, normalized blow-ups of monomial ideals, divisors and toric certificates.

All maximal cones are required to be full-dimensional, simplicial and
pointed; that holds for every fan in scope (blow-up fans of the model,
their stars, projective bundles, products of projective spaces) and keeps
the pairwise gluing check a small exact LP.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations

from . import exact
from .lattice import (CapacityError, Cone, Lattice, LatticeError, pair,
                      quotient_lattice)
from .lp import cone_feasible, standard_feasible


class FanError(LatticeError):
    pass


@dataclass(frozen=True)
class Fan:
    lattice: Lattice
    rays: tuple        # LatticePoints, primitive, pairwise distinct
    max_cones: tuple   # sorted tuples of ray indices

    def __post_init__(self):
        rays = tuple(self.rays)
        cones = tuple(tuple(sorted(c)) for c in self.max_cones)
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "max_cones", cones)
        self._validate()

    @property
    def rank(self):
        return self.lattice.rank

    def cone(self, idxs):
        return Cone(self.lattice, tuple(self.rays[i] for i in idxs))

    @cached_property
    def _gen_inverses(self):
        return [exact.mat_inverse([list(self.rays[i].coords) for i in c])
                for c in self.max_cones]

    def _validate(self):
        if not self.rays:
            raise FanError("fan needs at least one ray")
        seen = set()
        for r in self.rays:
            if r.lattice != self.lattice:
                raise FanError("ray lattice mismatch")
            if r.is_zero() or not r.is_primitive():
                raise FanError("rays must be primitive and nonzero")
            if r.coords in seen:
                raise FanError(f"duplicate ray {r.coords}")
            seen.add(r.coords)
        if not self.max_cones:
            raise FanError("fan needs at least one maximal cone")
        if len(set(self.max_cones)) != len(self.max_cones):
            raise FanError("duplicate maximal cone")
        used = set()
        for c in self.max_cones:
            if len(set(c)) != len(c):
                raise FanError("repeated ray index in a cone")
            if any(i < 0 or i >= len(self.rays) for i in c):
                raise FanError("ray index out of range")
            if len(c) != self.rank:
                raise CapacityError("maximal cones must be full-dimensional")
            self.cone(c)  # raises if generators are dependent
            used.update(c)
        if used != set(range(len(self.rays))):
            raise FanError("unused ray")
        self._check_pairwise_intersections()

    def _check_pairwise_intersections(self):
        for ia, ib in combinations(range(len(self.max_cones)), 2):
            if not self._pair_ok(ia, ib):
                raise FanError(
                    f"cones {self.max_cones[ia]} and {self.max_cones[ib]} "
                    "do not intersect in a common face")

    def _pair_ok(self, ia, ib):
        ca, cb = self.max_cones[ia], self.max_cones[ib]
        common = set(ca) & set(cb)
        if self._separation_certificate(ia, ib, common):
            return True
        if self._separation_certificate(ib, ia, common):
            return True
        return not self._improper_intersection(ia, ib, common)

    def _separation_certificate(self, ia, ib, common):
        """Cheap sufficient check: a functional >= 0 on cone ia, zero exactly
        on the common rays, strictly negative on the rest of cone ib."""
        ca, cb = self.max_cones[ia], self.max_cones[ib]
        inv = self._gen_inverses[ia]
        d = self.rank
        m = [Fraction(0)] * d
        for pos, idx in enumerate(ca):
            if idx not in common:
                for k in range(d):
                    m[k] += inv[k][pos]
        for idx in cb:
            val = exact.dot(m, self.rays[idx].coords)
            if idx in common:
                if val != 0:
                    return False
            elif val >= 0:
                return False
        return True

    def _improper_intersection(self, ia, ib, common):
        """Exact decision: does the intersection leave the common-ray cone?"""
        ca, cb = self.max_cones[ia], self.max_cones[ib]
        ga = [list(self.rays[i].coords) for i in ca]
        binv = self._gen_inverses[ib]
        # s = t . (Ga Gb^{-1}); constraint rows over t are columns of that product
        prod = exact.mat_mul(ga, binv)
        cols = list(zip(*prod))
        for pos, idx in enumerate(ca):
            if idx in common:
                continue
            ineqs = [(list(col), 0) for col in cols]
            ineqs += [([Fraction(int(j == k)) for j in range(len(ca))], 0)
                      for k in range(len(ca))]
            eqs = [([Fraction(int(j == pos)) for j in range(len(ca))], 1)]
            if cone_feasible(ineqs, eqs=eqs, n=len(ca), free=True):
                return True
        return False


def is_smooth(fan):
    from .lattice import is_regular

    return all(is_regular(fan.cone(c)) for c in fan.max_cones)


def _facet_counts(fan):
    counts = Counter()
    for c in fan.max_cones:
        for drop in c:
            counts[frozenset(i for i in c if i != drop)] += 1
    return counts


def is_complete(fan):
    """Pure full-dimensional simplicial fan is complete iff every facet of a
    maximal cone is shared by exactly two maximal cones."""
    return all(v == 2 for v in _facet_counts(fan).values())


def support_equals_cone(fan, ambient):
    """Does the fan subdivide exactly the (full-dim, simplicial) cone?"""
    if not ambient.is_full_dim:
        raise FanError("ambient cone must be full-dimensional")
    for r in fan.rays:
        if not ambient.contains(r):
            return False
    ginv = exact.mat_inverse(ambient.generator_matrix())
    facet_normals = list(zip(*ginv))  # functionals dual to the generators
    for facet, count in _facet_counts(fan).items():
        if count == 1:
            on_boundary = any(
                all(exact.dot(u, fan.rays[i].coords) == 0 for i in facet)
                for u in facet_normals)
            if not on_boundary:
                return False
        elif count != 2:
            return False
    # exact volume cover test against a truncating functional
    h = [sum(col) for col in zip(*facet_normals)]
    vol = Fraction(0)
    for c in fan.max_cones:
        g = [list(fan.rays[i].coords) for i in c]
        heights = [exact.dot(h, row) for row in g]
        if any(x <= 0 for x in heights):
            return False
        prod = Fraction(1)
        for x in heights:
            prod *= x
        vol += abs(exact.mat_det(g)) / prod
    g = ambient.generator_matrix()
    heights = [exact.dot(h, row) for row in g]
    prod = Fraction(1)
    for x in heights:
        prod *= x
    return vol == abs(exact.mat_det(g)) / prod


# ---------------------------------------------------------------------------
# monomial ideals and the normalized blow-up


@dataclass(frozen=True)
class MonomialIdeal:
    ambient_dual_cone: Cone
    generators: frozenset  # LatticePoints in M ∩ σ∨

    def __post_init__(self):
        gens = frozenset(self.generators)
        if not gens:
            raise FanError("monomial ideal needs at least one generator")
        for g in gens:
            if not self.ambient_dual_cone.contains(g):
                raise FanError("ideal generator outside the dual cone")
        object.__setattr__(self, "generators", gens)


def _quick_prune(rows):
    """Drop constraint rows implied componentwise by another row plus t >= 0."""
    normalized = []
    seen = set()
    for r in rows:
        p = exact.clear_denominators(r) if any(r) else None
        if p is None or p in seen:
            continue
        seen.add(p)
        normalized.append(p)
    kept = []
    for r in normalized:
        redundant = False
        for other in normalized:
            if other is r:
                continue
            if all(a >= b for a, b in zip(r, other)) and r != other:
                redundant = True
                break
        if not redundant:
            kept.append(r)
    return kept


def _lp_prune(rows, d):
    """Remove rows redundant for the full-dim region {rows . t >= 0}, t free.

    By Farkas, a constraint is implied by the others iff it is a
    nonnegative combination of them, which is a small equality-feasibility
    problem (d equations instead of an LP over the region)."""
    kept = list(rows)
    i = 0
    while i < len(kept):
        others = kept[:i] + kept[i + 1:]
        r = kept[i]
        eqs = [(list(col), val) for col, val in zip(zip(*others), r)]
        if standard_feasible([e[0] for e in eqs], [e[1] for e in eqs]):
            kept.pop(i)  # r is implied by the rest
        else:
            i += 1
    return kept


def normal_fan_blowup(ideal, ambient):
    """Fan of the normalized blow-up of a monomial ideal on U_ambient.

    Maximal cones are the normal cones of the Newton polyhedron
    conv(generators) + dual(ambient) at its vertices.
    """
    if not ambient.is_full_dim:
        raise FanError("ambient cone must be full-dimensional and pointed")
    gens = sorted(ideal.generators, key=lambda g: g.coords)
    if any(g.is_zero() for g in gens):
        raise FanError("unit ideal (zero exponent vector) has no blow-up")
    d = ambient.lattice.rank
    gmat = ambient.generator_matrix()
    pvec = {}
    for u in gens:
        vals = []
        for g in ambient.generators:
            v = pair(u, g)
            if Fraction(v).denominator != 1:
                raise FanError("ideal generator pairs non-integrally with the cone")
            vals.append(int(v))
        pvec[u] = vals

    # vertices of the Newton polyhedron = generators with full-dim normal cone
    vertices = []
    for u in gens:
        rows = [[p - q for p, q in zip(pvec[v], pvec[u])] for v in gens if v != u]
        ineqs = [(row, 1 - sum(row)) for row in rows]  # t = 1 + t', t' >= 0
        if not rows or cone_feasible(ineqs, n=d):
            vertices.append(u)

    ray_index = {}
    rays = []
    cones = []
    for u in vertices:
        rows = [[p - q for p, q in zip(pvec[v], pvec[u])] for v in gens if v != u]
        ident = [[int(i == j) for j in range(d)] for i in range(d)]
        kept = _quick_prune([tuple(r) for r in rows] + [tuple(r) for r in ident])
        if len(kept) > d:
            kept = _lp_prune(kept, d)
        if len(kept) != d:
            raise CapacityError("non-simplicial chart in the normal fan")
        cinv = exact.mat_inverse(kept)
        cone_ray_ids = []
        for col in zip(*cinv):
            xcoords = exact.vec_mat(list(col), gmat)
            prim = exact.clear_denominators(xcoords)
            if prim not in ray_index:
                ray_index[prim] = len(rays)
                rays.append(ambient.lattice.point(prim))
            cone_ray_ids.append(ray_index[prim])
        cones.append(tuple(sorted(cone_ray_ids)))

    # canonical ordering for reproducibility
    order = sorted(range(len(rays)), key=lambda i: rays[i].coords)
    remap = {old: new for new, old in enumerate(order)}
    rays = [rays[i] for i in order]
    cones = sorted(tuple(sorted(remap[i] for i in c)) for c in cones)
    fan = Fan(ambient.lattice, tuple(rays), tuple(cones))
    if not support_equals_cone(fan, ambient):
        raise FanError("normal fan does not cover the ambient cone")
    return fan


# ---------------------------------------------------------------------------
# stars, orders, discrepancies


def _star(fan, ray_index):
    ray = fan.rays[ray_index]
    quot, proj = quotient_lattice(fan.lattice, ray)
    ray_map = {}
    new_rays = []
    new_cones = []
    for c in fan.max_cones:
        if ray_index not in c:
            continue
        idxs = []
        for i in c:
            if i == ray_index:
                continue
            img = proj(fan.rays[i])
            if img.is_zero():
                raise FanError("degenerate star: ray collapses in the quotient")
            prim = img.primitive()
            key = prim.coords
            if key not in ray_map:
                ray_map[key] = len(new_rays)
                new_rays.append(prim)
            idxs.append(ray_map[key])
        new_cones.append(tuple(sorted(idxs)))
    if not new_cones:
        raise FanError("ray is not part of any maximal cone")
    index_map = {}
    for i, r in enumerate(fan.rays):
        if i == ray_index:
            continue
        img = proj(r)
        if not img.is_zero() and img.primitive().coords in ray_map:
            index_map[i] = ray_map[img.primitive().coords]
    star = Fan(quot, tuple(new_rays), tuple(sorted(set(new_cones))))
    return star, index_map


def star_fan(fan, ray_index):
    """Fan of the closed torus-invariant divisor V(ray) in N / Z.ray."""
    return _star(fan, ray_index)[0]


def star_fan_of_cone(fan, ray_indices):
    """Star of a higher-dimensional cone, by iterated rank-one quotients."""
    current = fan
    pending = list(ray_indices)
    while pending:
        idx = pending.pop(0)
        current, index_map = _star(current, idx)
        pending = [index_map[i] for i in pending]
    return current


def vanishing_order(ideal, ray):
    """Order of the ideal pullback along the prime divisor of `ray`."""
    vals = []
    for u in ideal.generators:
        v = pair(u, ray)
        if Fraction(v).denominator != 1:
            raise FanError("non-integral pairing: ray is not in the dual lattice's N")
        vals.append(int(v))
    return min(vals)


def discrepancy(fan, ray):
    """Discrepancy of an exceptional ray over the invariant-orthant chart.

    Computed as <(1,...,1), ray> - 1 in reference coordinates, which is the
    toric formula when the original cone rays are the reference unit vectors.
    """
    if not any(fan.cone(c).contains(ray) for c in fan.max_cones):
        raise FanError("ray outside the fan support")
    total = sum(ray.reference())
    if total.denominator != 1:
        raise FanError("non-integral canonical pairing")
    return int(total) - 1


# ---------------------------------------------------------------------------
# SNC certificate


@dataclass(frozen=True)
class SNCReport:
    component_count: int
    components_smooth: tuple
    components_complete: tuple
    intersection_dims: tuple      # ((i, j, dim or None), ...)
    intersection_connected: tuple  # ((i, j, bool or None), ...)
    reducedness_orders: tuple     # ((ray_index, order), ...)


def snc_certificate(fan, exceptional_rays, ideal):
    """Check the exceptional divisor is reduced simple normal crossing.

    Components are the stars of the exceptional rays; the pairwise
    intersection is inspected through the cones containing both rays, with
    connectivity taken from the adjacency graph of those maximal cones.
    """
    if not is_smooth(fan):
        raise FanError("SNC certificate needs a smooth fan")
    smooth_flags = []
    complete_flags = []
    for idx in exceptional_rays:
        star = star_fan(fan, idx)
        smooth_flags.append(is_smooth(star))
        complete_flags.append(is_complete(star))
    dims = []
    connected = []
    for a, b in combinations(exceptional_rays, 2):
        cones = [c for c in fan.max_cones if a in c and b in c]
        if not cones:
            dims.append((a, b, None))
            connected.append((a, b, None))
            continue
        dims.append((a, b, fan.rank - 2))
        adj = {i: set() for i in range(len(cones))}
        for i, j in combinations(range(len(cones)), 2):
            if len(set(cones[i]) & set(cones[j])) == fan.rank - 1:
                adj[i].add(j)
                adj[j].add(i)
        seen = {0}
        stack = [0]
        while stack:
            cur = stack.pop()
            for nxt in adj[cur]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        connected.append((a, b, len(seen) == len(cones)))
    orders = tuple((idx, vanishing_order(ideal, fan.rays[idx]))
                   for idx in exceptional_rays)
    return SNCReport(
        component_count=len(exceptional_rays),
        components_smooth=tuple(smooth_flags),
        components_complete=tuple(complete_flags),
        intersection_dims=tuple(dims),
        intersection_connected=tuple(connected),
        reducedness_orders=orders,
    )


# ---------------------------------------------------------------------------
# divisors and curve degrees


@dataclass(frozen=True)
class TDivisor:
    fan: Fan
    coefficients: tuple

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coefficients)
        if len(coeffs) != len(self.fan.rays):
            raise FanError("one coefficient per ray required")
        object.__setattr__(self, "coefficients", coeffs)

    def __add__(self, other):
        if other.fan is not self.fan and other.fan != self.fan:
            raise FanError("divisors live on different fans")
        return TDivisor(self.fan, tuple(a + b for a, b in
                                        zip(self.coefficients, other.coefficients)))

    def scaled(self, k):
        return TDivisor(self.fan, tuple(k * c for c in self.coefficients))


def canonical_divisor(fan):
    return TDivisor(fan, (-1,) * len(fan.rays))


def curve_degree(fan, wall, divisor):
    """Degree of O(divisor) on the invariant curve of a compact wall."""
    wall = tuple(sorted(wall))
    if len(wall) != fan.rank - 1:
        raise FanError("wall must have codimension one")
    owners = [c for c in fan.max_cones if set(wall) <= set(c)]
    if len(owners) != 2:
        raise FanError("wall is not interior (curve would be non-compact)")
    (u1,) = set(owners[0]) - set(wall)
    (u2,) = set(owners[1]) - set(wall)
    target = [-(x + y) for x, y in zip(fan.rays[u1].coords, fan.rays[u2].coords)]
    cols = [fan.rays[i].coords for i in wall]
    sol = exact.solve_linear(list(zip(*cols)), target)
    if sol is None:
        raise FanError("wall rays do not span the relation hyperplane")
    a = divisor.coefficients
    deg = Fraction(a[u1] + a[u2]) + sum(c * a[i] for c, i in zip(sol, wall))
    if deg.denominator != 1:
        raise FanError("non-integral curve degree (fan not smooth along wall)")
    return int(deg)


# ---------------------------------------------------------------------------
# standard constructions


def projective_space_fan(m):
    lat = Lattice.standard(m)
    rays = [lat.point([int(i == j) for j in range(m)]) for i in range(m)]
    rays.append(lat.point([-1] * m))
    cones = [tuple(sorted(set(range(m + 1)) - {drop})) for drop in range(m + 1)]
    return Fan(lat, tuple(rays), tuple(cones))


def product_fan(a, b):
    ra, rb = a.rank, b.rank
    lat = Lattice.standard(ra + rb)
    rays = [lat.point(tuple(r.coords) + (0,) * rb) for r in a.rays]
    rays += [lat.point((0,) * ra + tuple(r.coords)) for r in b.rays]
    cones = []
    for ca in a.max_cones:
        for cb in b.max_cones:
            cones.append(tuple(sorted(list(ca) + [len(a.rays) + i for i in cb])))
    return Fan(lat, tuple(rays), tuple(cones))


def projbundle_fan(a, n):
    """Fan of the split bundle P(O(a) + O^n) over P^(n-1).

    Ray order: base rays first (n-1 unit vectors, then the twisted ray),
    fiber rays next (n unit vectors, then the distinguished O(a) ray).
    The twists O_F(1) and p*O(1) are the ray divisors at indices n and 0.
    """
    if a < 0:
        raise FanError("twist must be nonnegative")
    if not 2 <= n <= 4:
        raise CapacityError("projbundle_fan supports 2 <= n <= 4")
    m = n - 1
    d = 2 * n - 1
    lat = Lattice.standard(d)
    rays = []
    for j in range(m):
        rays.append(lat.point([int(k == j) for k in range(d)]))
    rays.append(lat.point([-1] * m + [-a] * n))   # twisted base ray
    for i in range(n):
        rays.append(lat.point([int(k == m + i) for k in range(d)]))
    rays.append(lat.point([0] * m + [-1] * n))    # distinguished fiber ray
    base_ids = list(range(n))
    fiber_ids = list(range(n, 2 * n + 1))
    cones = []
    for bdrop in base_ids:
        for fdrop in fiber_ids:
            cone = [i for i in base_ids if i != bdrop]
            cone += [i for i in fiber_ids if i != fdrop]
            cones.append(tuple(sorted(cone)))
    return Fan(lat, tuple(rays), tuple(sorted(cones)))


def line_twist_divisor(fan, n, t, l):
    """Divisor t.O_F(1) + l.p*O(1) on a projbundle_fan(a, n)."""
    coeffs = [0] * len(fan.rays)
    coeffs[n] = t
    coeffs[0] = l
    return TDivisor(fan, tuple(coeffs))


# ---------------------------------------------------------------------------
# plain-text interchange format


def fan_to_text(fan):
    lines = [f"rank {fan.rank}"]
    for i, r in enumerate(fan.rays):
        lines.append(f"ray {i}: " + " ".join(str(c) for c in r.coords))
    for c in fan.max_cones:
        lines.append("cone: " + " ".join(str(i) for i in c))
    return "\n".join(lines) + "\n"


def fan_from_text(text):
    rank = None
    rays = []
    cones = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("rank"):
            rank = int(line.split()[1])
        elif line.startswith("ray"):
            _, rest = line.split(":", 1)
            rays.append(tuple(int(x) for x in rest.split()))
        elif line.startswith("cone:"):
            cones.append(tuple(int(x) for x in line.split(":", 1)[1].split()))
        else:
            raise FanError(f"unrecognized line in fan file: {line!r}")
    if rank is None:
        raise FanError("fan file is missing the rank header")
    lat = Lattice.standard(rank)
    return Fan(lat, tuple(lat.point(r) for r in rays), tuple(cones))


def fan_equal_coords(a, b):
    return ([r.coords for r in a.rays] == [r.coords for r in b.rays]
            and sorted(a.max_cones) == sorted(b.max_cones))


def fans_match_up_to_relabeling(a, b):
    """Equality after matching rays by coordinates (no lattice automorphism)."""
    index_b = {r.coords: i for i, r in enumerate(b.rays)}
    if len(a.rays) != len(b.rays):
        return False
    perm = []
    for r in a.rays:
        if r.coords not in index_b:
            return False
        perm.append(index_b[r.coords])
    cones_a = {tuple(sorted(perm[i] for i in c)) for c in a.max_cones}
    return cones_a == set(b.max_cones)
