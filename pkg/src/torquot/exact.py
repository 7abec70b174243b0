"""Exact integer / rational matrix helpers.

Everything here works on plain tuples or lists of ints and Fractions.
Matrices are row-major lists of rows; "rows = basis vectors" throughout.
Sizes are tiny (rank <= 8), so plain Gaussian elimination over Fraction
is fast enough and keeps the code obviously exact.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import gcd


def vec_gcd(v):
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    return g


def make_primitive(v):
    """Divide an integer vector by the gcd of its entries (direction kept)."""
    g = vec_gcd(v)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(x // g for x in v)


def clear_denominators(v):
    """Scale a rational vector to a primitive integer vector, same direction."""
    from math import lcm

    denom = 1
    for x in v:
        denom = lcm(denom, Fraction(x).denominator)
    ints = [int(Fraction(x) * denom) for x in v]
    return make_primitive(ints)


def dot(a, b):
    return sum(x * y for x, y in zip(a, b, strict=True))


def mat_mul(a, b):
    bt = list(zip(*b))
    return [[dot(row, col) for col in bt] for row in a]


def mat_vec(a, v):
    return [dot(row, v) for row in a]


def vec_mat(v, a):
    return [dot(v, col) for col in zip(*a)]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_det(rows):
    """Determinant over Q by fraction Gaussian elimination."""
    n = len(rows)
    m = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def mat_inverse(rows):
    n = len(rows)
    m = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(rows)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return [r[n:] for r in m]


def mat_rank(rows):
    if not rows:
        return 0
    m = [[Fraction(x) for x in r] for r in rows]
    nrows, ncols = len(m), len(m[0])
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][c]
        m[rank] = [x * inv for x in m[rank]]
        for i in range(nrows):
            if i != rank and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank


def solve_linear(rows, rhs):
    """Solve (possibly overdetermined, consistent) A x = rhs over Q.

    Returns the solution vector, or None if the system is inconsistent.
    Requires the column space to have full column rank.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    m = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(rows, rhs, strict=True)]
    pivots = []
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][c]
        m[rank] = [x * inv for x in m[rank]]
        for i in range(nrows):
            if i != rank and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        pivots.append(c)
        rank += 1
    for i in range(rank, nrows):
        if m[i][ncols] != 0:
            return None
    if rank < ncols:
        raise ValueError("underdetermined system")
    sol = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        sol[c] = m[r][ncols]
    return sol


def hnf_row_basis(int_rows):
    """Row-style Hermite basis of the lattice spanned by integer rows.

    Returns echelon rows with positive pivots, entries above each pivot
    reduced into [0, pivot). The number of rows returned is the rank.
    """
    rows = [list(r) for r in int_rows]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    r = 0
    for c in range(ncols):
        # euclid out the column below row r
        for i in range(r + 1, nrows):
            while rows[i][c] != 0:
                if rows[r][c] == 0:
                    rows[r], rows[i] = rows[i], rows[r]
                    continue
                q = rows[r][c] // rows[i][c]
                rows[r] = [a - q * b for a, b in zip(rows[r], rows[i])]
                rows[r], rows[i] = rows[i], rows[r]
        if rows[r][c] == 0:
            piv = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
        if rows[r][c] < 0:
            rows[r] = [-a for a in rows[r]]
        for i in range(r):
            q = rows[i][c] // rows[r][c]
            if q:
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == nrows:
            break
    return [tuple(row) for row in rows[:r] if any(row)]


def parallelepiped_points(gens):
    """Lattice points in the half-open parallelepiped of integer rows `gens`.

    gens must be square and nonsingular; yields exactly |det| integer points
    {sum t_i g_i : 0 <= t_i < 1}, including the origin.
    """
    d = len(gens)
    hnf = hnf_row_basis(gens)
    if len(hnf) != d:
        raise ValueError("generators are not linearly independent")
    ginv = mat_inverse(gens)
    diag = [hnf[i][i] for i in range(d)]
    for digits in product(*[range(k) for k in diag]):
        t = vec_mat(digits, ginv)
        tf = [x - (x.numerator // x.denominator) for x in t]
        p = vec_mat(tf, gens)
        yield tuple(int(x) for x in p)


def complete_to_unimodular(v):
    """Unimodular integer matrix U with U @ v = (1, 0, ..., 0).

    v must be a primitive integer vector.
    """
    d = len(v)
    if vec_gcd(v) != 1:
        raise ValueError("vector is not primitive")
    u = identity(d)
    w = list(v)
    # euclid w down to e_1 while mirroring the row ops on u
    while True:
        nz = [i for i in range(d) if w[i] != 0]
        if nz == [0] and w[0] == 1:
            break
        if nz == [0] and w[0] == -1:
            w[0] = 1
            u[0] = [-a for a in u[0]]
            break
        i = min(nz, key=lambda k: abs(w[k]))
        for j in range(d):
            if j != i and w[j] != 0:
                q = w[j] // w[i]
                w[j] -= q * w[i]
                u[j] = [a - q * b for a, b in zip(u[j], u[i])]
        if all(w[j] == 0 for j in range(d) if j != i) and i != 0:
            w[0], w[i] = w[i], w[0]
            u[0], u[i] = u[i], u[0]
    return u
