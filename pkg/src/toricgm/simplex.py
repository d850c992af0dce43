"""Exact phase-1 simplex over the rationals, specialized to facial-set
certificates.

A support F of a model matrix is facial when some vector c has c . a_i = 0
for columns i in F and c . a_i >= 1 elsewhere.  Feasibility is decided by
a textbook phase-1 simplex with rational pivoting and Bland's rule, which
terminates and never rounds; the certificate must be exact because the
limit-sequence construction exponentiates it.
"""

from fractions import Fraction


def _phase_one(rows, rhs):
    """Solve rows . x = rhs, x >= 0; return a solution list or None.

    Tableau simplex minimizing the sum of one artificial variable per row;
    Bland's rule (smallest eligible index) guarantees termination.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    # canonical tableau: [A | I | b] with artificial basis
    tab = []
    for i in range(nrows):
        row = [Fraction(x) for x in rows[i]]
        row += [Fraction(1) if j == i else Fraction(0) for j in range(nrows)]
        row.append(Fraction(rhs[i]))
        if row[-1] < 0:
            row = [-x for x in row]
        tab.append(row)
    width = ncols + nrows + 1
    basis = [ncols + i for i in range(nrows)]
    # objective row: minimize sum of artificials; reduced costs
    obj = [Fraction(0)] * width
    for i in range(nrows):
        for j in range(width):
            obj[j] -= tab[i][j]
    for i in range(nrows):
        obj[ncols + i] += Fraction(1)

    while True:
        entering = -1
        for j in range(ncols + nrows):
            if obj[j] < 0:
                entering = j
                break
        if entering < 0:
            break
        leaving = -1
        best = None
        for i in range(nrows):
            a = tab[i][entering]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best or \
                        (ratio == best and basis[i] < basis[leaving]):
                    best = ratio
                    leaving = i
        if leaving < 0:
            return None  # unbounded phase-1 cannot happen, defensive
        piv = tab[leaving][entering]
        tab[leaving] = [x / piv for x in tab[leaving]]
        for i in range(nrows):
            if i != leaving and tab[i][entering] != 0:
                f = tab[i][entering]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leaving])]
        f = obj[entering]
        if f != 0:
            obj = [x - f * y for x, y in zip(obj, tab[leaving])]
        basis[leaving] = entering

    total = sum(tab[i][-1] for i in range(nrows) if basis[i] >= ncols)
    if total != 0:
        return None
    solution = [Fraction(0)] * ncols
    for i in range(nrows):
        if basis[i] < ncols:
            solution[basis[i]] = tab[i][-1]
    return solution


def find_facial_certificate(A, F):
    """An exact certificate c for a facial support, or None.

    Free coordinates are split c = p - q; off-support constraints get
    surplus variables: A_F^T c = 0 and A_notF^T c - s = 1, everything
    nonnegative except c itself.
    """
    F = set(F)
    d = A.nrows
    m = A.ncols
    off = [j for j in range(m) if j not in F]
    nsurplus = len(off)
    rows = []
    rhs = []
    for j in range(m):
        col = A.column(j)
        row = [Fraction(x) for x in col] + [Fraction(-x) for x in col]
        row += [Fraction(0)] * nsurplus
        if j in F:
            rhs.append(Fraction(0))
        else:
            row[2 * d + off.index(j)] = Fraction(-1)
            rhs.append(Fraction(1))
        rows.append(row)
    solution = _phase_one(rows, rhs)
    if solution is None:
        return None
    c = tuple(solution[i] - solution[d + i] for i in range(d))
    for j in range(m):
        dot = sum(ci * ai for ci, ai in zip(c, A.column(j)))
        if j in F:
            assert dot == 0, "certificate fails an on-support column"
        else:
            assert dot >= 1, "certificate fails an off-support column"
    return c
