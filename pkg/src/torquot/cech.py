"""Line bundle cohomology on complete simplicial toric varieties.

For each character m the degree-m part of H^i(O(D)) is the reduced
cohomology H~^{i-1} of the simplicial subcomplex induced on the rays with
<m, v> < -a_v. The relevant degrees are confined to a box: outside the
hull of the vertices of the hyperplane arrangement {<m, v> = -a_v} the
negativity pattern of m is constant along rays of the character lattice,
and any pattern realized arbitrarily far out contributes zero (its induced
subcomplex is a star or the full complex, both acyclic). The box is the
integer hull of those arrangement vertices padded by one.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import numpy as np

from . import exact
from .cohomvec import CohomologyVector
from .fans import FanError, is_complete, is_smooth
from .lattice import CapacityError

RANK_LIMIT = 5
POINT_CAP = 4_000_000
_CHUNK = 500_000


def _degree_box(raymat, coeffs, d):
    lows = [None] * d
    highs = [None] * d
    for subset in combinations(range(len(raymat)), d):
        rows = [raymat[i] for i in subset]
        if exact.mat_det(rows) == 0:
            continue
        rhs = [-coeffs[i] for i in subset]
        m = exact.solve_linear(rows, rhs)
        for k, x in enumerate(m):
            lo = x.numerator // x.denominator  # floor
            hi = -((-x.numerator) // x.denominator)  # ceil
            lows[k] = lo if lows[k] is None else min(lows[k], lo)
            highs[k] = hi if highs[k] is None else max(highs[k], hi)
    if lows[0] is None:
        raise FanError("degenerate ray arrangement")
    return ([x - 1 for x in lows], [x + 1 for x in highs])


def _reduced_betti(neg_indices, max_cones, d):
    """Reduced rational Betti numbers b~_{-1} .. b~_{d-1} of the induced
    subcomplex on the rays in neg_indices."""
    neg = set(neg_indices)
    faces = set()
    for c in max_cones:
        hit = tuple(sorted(set(c) & neg))
        for k in range(1, len(hit) + 1):
            for sub in combinations(hit, k):
                faces.add(sub)
    by_dim = {k: sorted(f for f in faces if len(f) == k + 1)
              for k in range(-1, d)}
    by_dim[-1] = [()]
    index = {k: {f: i for i, f in enumerate(fs)} for k, fs in by_dim.items()}

    def boundary_rank(k):
        # rank of d_k : C_k -> C_{k-1}
        if k - 1 not in by_dim or not by_dim.get(k):
            return 0
        rows = []
        for f in by_dim[k]:
            row = [0] * len(by_dim[k - 1])
            for pos in range(len(f)):
                sub = f[:pos] + f[pos + 1:]
                row[index[k - 1][sub]] = (-1) ** pos
            rows.append(row)
        return exact.mat_rank(rows)

    ranks = {k: boundary_rank(k) for k in range(0, d)}
    ranks[d] = 0
    betti = []
    for k in range(-1, d):
        betti.append(len(by_dim.get(k, [])) - ranks.get(k, 0)
                     - ranks.get(k + 1, 0))
    return betti


def line_bundle_cohomology(divisor):
    """H^*(X, O(D)) for a complete smooth fan of rank <= 5, exact dims."""
    fan = divisor.fan
    d = fan.rank
    if d > RANK_LIMIT:
        raise CapacityError(f"rank {d} exceeds the cohomology cap {RANK_LIMIT}")
    if not is_complete(fan):
        raise FanError("line_bundle_cohomology needs a complete fan")
    if not is_smooth(fan):
        raise FanError("line_bundle_cohomology needs a smooth fan")
    raymat = [list(r.coords) for r in fan.rays]
    coeffs = list(divisor.coefficients)
    lows, highs = _degree_box(raymat, coeffs, d)
    total = 1
    for lo, hi in zip(lows, highs):
        total *= hi - lo + 1
    if total > POINT_CAP:
        raise CapacityError("degree box too large for the desk-scale cap")

    axes = [np.arange(lo, hi + 1, dtype=np.int64) for lo, hi in zip(lows, highs)]
    grids = np.meshgrid(*axes, indexing="ij")
    points = np.stack([g.ravel() for g in grids], axis=1)
    rmat = np.array(raymat, dtype=np.int64).T
    avec = np.array(coeffs, dtype=np.int64)

    h = [0] * (d + 1)
    cache = {}
    for start in range(0, points.shape[0], _CHUNK):
        chunk = points[start:start + _CHUNK]
        pairing = chunk @ rmat
        neg = pairing < -avec
        packed = neg @ (1 << np.arange(len(fan.rays), dtype=np.int64))
        masks, counts = np.unique(packed, return_counts=True)
        for mask, count in zip(masks.tolist(), counts.tolist()):
            if mask not in cache:
                idxs = [i for i in range(len(fan.rays)) if mask >> i & 1]
                cache[mask] = _reduced_betti(idxs, fan.max_cones, d)
            betti = cache[mask]
            for i in range(d + 1):
                h[i] += count * betti[i]
    return CohomologyVector.exact(h)
