"""Exact rational LP feasibility via phase-1 simplex with Bland's rule.

Only feasibility is needed by the cone machinery; problem sizes stay below
~70 variables and ~70 constraints, where Fraction arithmetic is cheap.
"""

from __future__ import annotations

from fractions import Fraction


def standard_feasible(a, b):
    """Does A x = b admit a solution with x >= 0?

    a: list of rows (rationals), b: right-hand sides. Solved by minimizing
    the sum of artificial variables; Bland's rule guarantees termination.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    rows = []
    rhs = []
    for row, beta in zip(a, b, strict=True):
        beta = Fraction(beta)
        row = [Fraction(x) for x in row]
        if beta < 0:
            row = [-x for x in row]
            beta = -beta
        rows.append(row)
        rhs.append(beta)
    # tableau columns: n structural + m artificial + rhs
    tab = [rows[i] + [Fraction(int(i == j)) for j in range(m)] + [rhs[i]]
           for i in range(m)]
    basis = [n + i for i in range(m)]
    # phase-1 objective row: reduced costs of minimizing sum of artificials
    obj = [Fraction(0)] * (n + m + 1)
    for i in range(m):
        for j in range(n + m + 1):
            obj[j] += tab[i][j]
    # artificial columns start with zero reduced cost
    for i in range(m):
        obj[n + i] = Fraction(0)

    total = n + m
    while True:
        enter = next((j for j in range(total) if obj[j] > 0), None)
        if enter is None:
            break
        # ratio test, Bland tie-break on basis index
        leave = None
        best = None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][total] / tab[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            # unbounded phase-1 objective cannot happen; defensive
            raise RuntimeError("phase-1 simplex unbounded")
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
        f = obj[enter]
        obj = [x - f * y for x, y in zip(obj, tab[leave])]
        basis[leave] = enter

    infeasibility = sum((tab[i][total] for i in range(m) if basis[i] >= n),
                        Fraction(0))
    return infeasibility == 0


def cone_feasible(ineqs, eqs=None, n=None, free=False):
    """Feasibility of {C x >= c, E x = e} with x >= 0 (or x free).

    ineqs: list of (row, lower_bound); eqs: list of (row, value).
    """
    eqs = eqs or []
    if n is None:
        src = ineqs or eqs
        n = len(src[0][0])
    a = []
    b = []
    nslack = len(ineqs)
    for k, (row, low) in enumerate(ineqs):
        full = list(row) + ([-x for x in row] if free else [])
        full += [Fraction(int(j == k)) * -1 for j in range(nslack)]
        a.append(full)
        b.append(low)
    for row, val in eqs:
        full = list(row) + ([-x for x in row] if free else [])
        full += [Fraction(0)] * nslack
        a.append(full)
        b.append(val)
    if not a:
        return True
    return standard_feasible(a, b)
