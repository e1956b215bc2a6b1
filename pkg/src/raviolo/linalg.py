"""Exact sparse-ish linear algebra over Q (fractions.Fraction).

Matrices are lists of rows, rows are lists of Fraction.  Everything here
is plain Gaussian elimination; sizes are desk scale, exactness is the
point.
"""

from fractions import Fraction


def rref(mat):
    """Row-reduce a copy of mat; returns (rows, pivot_columns)."""
    rows = [list(map(Fraction, r)) for r in mat]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(mat):
    return len(rref(mat)[1])


def kernel_basis(mat):
    """Basis of the right kernel {x : mat @ x = 0}."""
    if not mat:
        return []
    ncols = len(mat[0])
    rows, pivots = rref(mat)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(v)
    return basis


def solve(mat, rhs):
    """One solution x of mat @ x = rhs, or None if inconsistent."""
    if not mat:
        return None if any(v != 0 for v in rhs) else []
    ncols = len(mat[0])
    aug = [list(map(Fraction, r)) + [Fraction(v)] for r, v in zip(mat, rhs)]
    rows, pivots = rref(aug)
    if ncols in pivots:
        return None  # pivot in the augmented column
    x = [Fraction(0)] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = rows[i][ncols]
    return x


def column_space_coords(mat, vec):
    """Express vec in the column space of mat: returns coefficients or None."""
    return solve(mat, vec)


def in_span(vectors, vec):
    """Is vec in the span of the given vectors (all same length)?"""
    if not vectors:
        return all(v == 0 for v in vec)
    cols = list(zip(*vectors))  # matrix whose columns are the vectors
    mat = [list(r) for r in cols]
    return solve(mat, list(vec)) is not None
