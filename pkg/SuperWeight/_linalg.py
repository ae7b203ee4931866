'''
Exact rational linear algebra used by the character engine and the lab.

Matrices are numpy object arrays holding fractions.Fraction entries; the
row reduction itself is delegated to sympy, which works over the rationals
without rounding. Subspaces are stored as 2D arrays whose rows are a basis.
'''

import logging
from fractions import Fraction

import numpy as np
import sympy

LOGGER = logging.getLogger(__name__)


def frac(x):
    '''Convert ints, Fractions and sympy rationals to Fraction.'''
    if isinstance(x, Fraction):
        return x
    if isinstance(x, sympy.Basic):
        r = sympy.Rational(x)
        return Fraction(int(r.p), int(r.q))
    return Fraction(x)


def array(rows, ncols=None):
    '''Build an object array of Fractions; ``ncols`` fixes the shape of empty input.'''
    rows = [list(r) for r in rows]
    if not rows:
        return np.empty((0, ncols or 0), dtype=object)
    out = np.empty((len(rows), len(rows[0])), dtype=object)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            out[i, j] = frac(x)
    return out


def zeros(nrows, ncols):
    out = np.empty((nrows, ncols), dtype=object)
    out.fill(Fraction(0))
    return out


def identity(n):
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def _to_sympy(arr):
    return sympy.Matrix(arr.shape[0], arr.shape[1],
                        [sympy.Rational(frac(x).numerator, frac(x).denominator) for x in arr.flat])


def _from_sympy(mat):
    out = np.empty((mat.rows, mat.cols), dtype=object)
    for i in range(mat.rows):
        for j in range(mat.cols):
            out[i, j] = frac(mat[i, j])
    return out


def matmul(a, b):
    '''Exact product; tolerates zero-sized operands.'''
    out = zeros(a.shape[0], b.shape[1])
    if a.shape[1] == 0:
        return out
    prod = np.dot(a, b)
    for idx, x in np.ndenumerate(prod):
        out[idx] = frac(x)
    return out


def is_zero(arr):
    return all(x == 0 for x in arr.flat)


def rref(arr):
    '''Reduced row echelon form and pivot columns.'''
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        return arr.copy(), ()
    red, pivots = _to_sympy(arr).rref()
    return _from_sympy(red), tuple(pivots)


def rank(arr):
    return len(rref(arr)[1])


def row_basis(arr):
    '''Rows spanning the same space as the rows of ``arr``, in reduced echelon form.'''
    red, pivots = rref(arr)
    return red[:len(pivots), :].copy() if pivots else np.empty((0, arr.shape[1]), dtype=object)


def nullspace(arr, ncols=None):
    '''Basis (as rows) of {x : arr @ x = 0}.'''
    ncols = arr.shape[1] if ncols is None else ncols
    if ncols == 0:
        return np.empty((0, 0), dtype=object)
    if arr.shape[0] == 0:
        return identity(ncols)
    red, pivots = rref(arr)
    free = [j for j in range(ncols) if j not in pivots]
    out = zeros(len(free), ncols)
    for k, f in enumerate(free):
        out[k, f] = Fraction(1)
        for i, p in enumerate(pivots):
            out[k, p] = -red[i, f]
    return out


def solve(basis, v):
    '''Coefficients c with c @ basis = v, or None if v is not in the row span.'''
    v = np.asarray(v, dtype=object)
    if basis.shape[0] == 0:
        return [] if all(x == 0 for x in v) else None
    aug = np.concatenate([basis.T, v.reshape(-1, 1)], axis=1)
    red, pivots = rref(aug)
    ncoef = basis.shape[0]
    if ncoef in pivots:
        return None
    coef = [Fraction(0)] * ncoef
    for i, p in enumerate(pivots):
        coef[p] = red[i, ncoef]
    return coef


def span_contains(space, vectors):
    if vectors.shape[0] == 0:
        return True
    if space.shape[0] == 0:
        return is_zero(vectors)
    return rank(np.concatenate([space, vectors], axis=0)) == rank(space)


def same_span(u, v):
    return span_contains(u, v) and span_contains(v, u)


def span_sum(u, v):
    if u.shape[0] == 0:
        return row_basis(v)
    if v.shape[0] == 0:
        return row_basis(u)
    return row_basis(np.concatenate([u, v], axis=0))


def intersect(u, v):
    '''Row basis of span(u) ∩ span(v).'''
    n = u.shape[1] if u.shape[0] else v.shape[1]
    if u.shape[0] == 0 or v.shape[0] == 0:
        return np.empty((0, n), dtype=object)
    stacked = np.concatenate([u.T, -v.T], axis=1)
    kernel = nullspace(stacked)
    if kernel.shape[0] == 0:
        return np.empty((0, n), dtype=object)
    return row_basis(matmul(kernel[:, :u.shape[0]], u))


def preimage(matrix, target, ncols):
    '''Row basis of {x : matrix @ x ∈ span(target rows)}; ``matrix`` maps ncols-space to target space.'''
    if matrix.shape[0] == 0:
        return identity(ncols)
    k = target.shape[0]
    block = np.concatenate([matrix, -target.T], axis=1) if k else matrix
    kernel = nullspace(block, ncols + k)
    if kernel.shape[0] == 0:
        return np.empty((0, ncols), dtype=object)
    return row_basis(kernel[:, :ncols])


def image(matrix, space):
    '''Row basis of matrix applied to the rows of ``space``.'''
    if space.shape[0] == 0:
        return np.empty((0, matrix.shape[0]), dtype=object)
    return row_basis(matmul(matrix, space.T).T)


def complement(space, ncols):
    '''Standard basis vectors completing ``space`` to the whole ncols-space.'''
    current = space
    picked = []
    for j in range(ncols):
        e = zeros(1, ncols)
        e[0, j] = Fraction(1)
        if not span_contains(current, e):
            picked.append(j)
            current = span_sum(current, e)
    out = zeros(len(picked), ncols)
    for i, j in enumerate(picked):
        out[i, j] = Fraction(1)
    return out


def determinant(arr):
    return frac(_to_sympy(arr).det())


def inverse(arr):
    return _from_sympy(_to_sympy(arr).inv())
