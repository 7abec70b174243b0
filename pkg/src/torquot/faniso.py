"""Fan isomorphism testing up to a lattice automorphism.

Searches for a bijection of rays compatible with the maximal-cone structure
and realized by a single GL(Z) map on the ambient lattice. Combinatorial
invariants prune the candidate bijections; each surviving assignment of a
spanning set of rays determines the linear map, which is then verified on
everything else.
"""

from __future__ import annotations

from . import exact
from .lattice import CapacityError

CANDIDATE_CAP = 10 ** 6


def _ray_invariants(fan):
    """Hashable per-ray invariant: cone membership count + co-occurrence profile."""
    membership = [0] * len(fan.rays)
    cooc = [dict() for _ in fan.rays]
    for c in fan.max_cones:
        for i in c:
            membership[i] += 1
            for j in c:
                if j != i:
                    cooc[i][j] = cooc[i].get(j, 0) + 1
    out = []
    for i in range(len(fan.rays)):
        profile = tuple(sorted(cooc[i].values()))
        out.append((membership[i], profile))
    return out


def _independent_prefix(fan):
    """Indices of rank many linearly independent rays, greedy order."""
    chosen = []
    for i in range(len(fan.rays)):
        trial = chosen + [i]
        if exact.mat_rank([list(fan.rays[j].coords) for j in trial]) == len(trial):
            chosen.append(i)
        if len(chosen) == fan.rank:
            return chosen
    raise CapacityError("fan rays do not span the lattice")


def fan_isomorphic(a, b):
    """Is there a lattice automorphism carrying fan a onto fan b?

    Returns the integer matrix of the map on coordinates (rows act on ray
    coordinate row-vectors from the right), or None.
    """
    if a.rank != b.rank or len(a.rays) != len(b.rays):
        return None
    if len(a.max_cones) != len(b.max_cones):
        return None
    inv_a = _ray_invariants(a)
    inv_b = _ray_invariants(b)
    if sorted(inv_a) != sorted(inv_b):
        return None
    candidates = [[j for j in range(len(b.rays)) if inv_b[j] == inv_a[i]]
                  for i in range(len(a.rays))]

    cones_b = set(b.max_cones)
    cones_with = [[set(c) for c in a.max_cones if i in c]
                  for i in range(len(a.rays))]
    spanning = _independent_prefix(a)
    span_pos = {idx: k for k, idx in enumerate(spanning)}
    order = spanning + [i for i in range(len(a.rays)) if i not in span_pos]

    assignment = {}
    used = set()
    nodes = [0]

    def extend(pos):
        if pos == len(order):
            return _verify(a, b, assignment, cones_b)
        i = order[pos]
        for j in candidates[i]:
            if j in used:
                continue
            nodes[0] += 1
            if nodes[0] > CANDIDATE_CAP:
                raise CapacityError("isomorphism search exceeds the node cap")
            assignment[i] = j
            used.add(j)
            if _partial_ok(assignment, cones_with[i], cones_b):
                result = extend(pos + 1)
                if result is not None:
                    return result
            del assignment[i]
            used.discard(j)
        return None

    return extend(0)


def _partial_ok(assignment, cones_touching_i, cones_b):
    """Every fully-assigned cone through the new ray must map onto a b-cone."""
    for cone in cones_touching_i:
        if all(k in assignment for k in cone):
            image = tuple(sorted(assignment[k] for k in cone))
            if image not in cones_b:
                return False
    return True


def _verify(a, b, assignment, cones_b):
    spanning = _independent_prefix(a)
    ra = [list(a.rays[i].coords) for i in spanning]
    rb = [list(b.rays[assignment[i]].coords) for i in spanning]
    try:
        m = exact.mat_mul(exact.mat_inverse(ra), rb)
    except ValueError:
        return None
    ints = []
    for row in m:
        out = []
        for x in row:
            if x.denominator != 1:
                return None
            out.append(int(x))
        ints.append(out)
    det = exact.mat_det(ints)
    if abs(det) != 1:
        return None
    for i, r in enumerate(a.rays):
        if tuple(exact.vec_mat(list(r.coords), ints)) != b.rays[assignment[i]].coords:
            return None
    images = {tuple(sorted(assignment[k] for k in c)) for c in a.max_cones}
    if images != cones_b:
        return None
    return ints
