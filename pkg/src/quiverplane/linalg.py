"""Exact linear algebra over the rationals.

Matrices are lists of rows, entries ``fractions.Fraction`` (plain ints are
accepted and coerced).  Rank computations clear denominators and run a
gcd-reduced integer elimination; a sound mod-p shortcut is available for
proving full rank on large matrices (a nonzero minor mod p is nonzero over Q,
so a full mod-p rank certifies full rank exactly).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import numpy as np

_FULLRANK_PRIME = 1048573  # < 2**20 so a*x - b*y stays well inside int64


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def zeros(r, c):
    return [[Fraction(0)] * c for _ in range(r)]


def identity(n):
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def mat_copy(a):
    return [list(row) for row in a]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, s):
    s = frac(s)
    return [[s * x for x in row] for row in a]


def mat_mul(a, b):
    if a and b and len(a[0]) != len(b):
        raise ValueError("shape mismatch in mat_mul")
    bt = list(zip(*b)) if b else []
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def mat_eq_zero(a):
    return all(x == 0 for row in a for x in row)


def _int_rows(rows):
    """Scale each row by the lcm of denominators; returns integer rows."""
    out = []
    for row in rows:
        lcm = 1
        for x in row:
            d = frac(x).denominator
            lcm = lcm // gcd(lcm, d) * d
        out.append([int(frac(x) * lcm) for x in row])
    return out


def _row_reduce_int(rows):
    """Forward elimination on integer rows, gcd-normalized.

    Returns (pivot_rows, pivot_cols); pivot_rows are in echelon order.
    """
    rows = [r[:] for r in rows if any(r)]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    echelon = []
    col = 0
    while rows and col < ncols:
        # pick the row with the smallest nonzero entry in this column
        best = None
        for i, r in enumerate(rows):
            v = r[col]
            if v:
                if best is None or abs(v) < abs(rows[best][col]):
                    best = i
                    if abs(v) == 1:
                        break
        if best is None:
            col += 1
            continue
        piv = rows.pop(best)
        g = 0
        for v in piv:
            g = gcd(g, v)
        if g > 1:
            piv = [v // g for v in piv]
        a = piv[col]
        nxt = []
        for r in rows:
            b = r[col]
            if b:
                r = [a * x - b * y for x, y in zip(r, piv)]
                g = 0
                for v in r:
                    g = gcd(g, v)
                if g > 1:
                    r = [v // g for v in r]
                if not any(r):
                    continue
            nxt.append(r)
        rows = nxt
        echelon.append(piv)
        pivots.append(col)
        col += 1
    return echelon, pivots


def rank(mat) -> int:
    """Exact rank over Q."""
    if not mat or not mat[0]:
        return 0
    _, pivots = _row_reduce_int(_int_rows(mat))
    return len(pivots)


def rank_modp(mat, p=_FULLRANK_PRIME) -> int:
    """Rank of the matrix mod p (a lower bound for the rank over Q)."""
    if not mat or not mat[0]:
        return 0
    rows = _int_rows(mat)
    a = np.array(rows, dtype=np.int64) % p
    r = 0
    nrows, ncols = a.shape
    for col in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, col])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, col]), p - 2, p)
        a[r] = (a[r] * inv) % p
        rest = np.nonzero(a[r + 1:, col])[0]
        if rest.size:
            idx = rest + r + 1
            a[idx] = (a[idx] - np.outer(a[idx, col], a[r])) % p
        r += 1
    return r


def is_full_rank(mat, full) -> bool:
    """Decide rank(mat) == full exactly.

    The mod-p rank is a lower bound, so reaching ``full`` there is a proof;
    otherwise fall back to exact elimination.
    """
    if not mat or not mat[0]:
        return full == 0
    if full > min(len(mat), len(mat[0])):
        return False
    if rank_modp(mat) == full:
        return True
    return rank(mat) == full


def rref(mat):
    """Reduced row echelon form over Q.  Returns (rows, pivot_columns).

    Runs a gcd-reduced integer echelon pass first and only produces
    fractions in the final normalization.
    """
    rows = [row for row in mat if any(frac(x) != 0 for x in row)]
    if not rows:
        return [], []
    echelon, pivots = _row_reduce_int(_int_rows(rows))
    for i in range(len(echelon) - 1, 0, -1):
        p = pivots[i]
        a = echelon[i][p]
        for k in range(i):
            b = echelon[k][p]
            if b:
                row = [a * x - b * y for x, y in zip(echelon[k], echelon[i])]
                g = 0
                for v in row:
                    g = gcd(g, v)
                if g > 1:
                    row = [v // g for v in row]
                echelon[k] = row
    out = []
    for row, p in zip(echelon, pivots):
        lead = row[p]
        out.append([Fraction(x, lead) for x in row])
    return out, pivots


def kernel_basis(mat, ncols=None):
    """Basis of the right kernel {x : mat @ x = 0}, as Fraction vectors."""
    if ncols is None:
        if not mat:
            raise ValueError("need ncols for an empty matrix")
        ncols = len(mat[0])
    if not mat:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    rows, pivots = rref(mat)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -rows[i][f]
        basis.append(v)
    return basis


def solve(mat, rhs):
    """One exact solution of mat @ x = rhs, or None if inconsistent."""
    if not mat:
        return [] if all(frac(b) == 0 for b in rhs) else None
    aug = [list(row) + [rhs[i]] for i, row in enumerate(mat)]
    rows, pivots = rref(aug)
    n = len(mat[0])
    for i, p in enumerate(pivots):
        if p == n:
            return None
    x = [Fraction(0)] * n
    for i, p in enumerate(pivots):
        x[p] = rows[i][n]
    return x


def inverse(mat):
    n = len(mat)
    aug = [list(row) + list(identity(n)[i]) for i, row in enumerate(mat)]
    rows, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in rows]


def det(mat):
    """Exact determinant (fraction-free elimination)."""
    n = len(mat)
    if n == 0:
        return Fraction(1)
    a = [[frac(x) for x in row] for row in mat]
    sign = 1
    d = Fraction(1)
    for col in range(n):
        piv = None
        for i in range(col, n):
            if a[i][col] != 0:
                piv = i
                break
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        d *= a[col][col]
        inv = 1 / a[col][col]
        for i in range(col + 1, n):
            if a[i][col] != 0:
                c = a[i][col] * inv
                a[i] = [x - c * y for x, y in zip(a[i], a[col])]
    return d * sign


class Subspace:
    """A subspace of Q^n in canonical (RREF) form.

    Vectors are length-n Fraction sequences; the canonical basis makes
    equality a plain comparison.
    """

    def __init__(self, ambient, vectors=()):
        self.ambient = ambient
        rows, pivots = rref([list(v) for v in vectors]) if vectors else ([], [])
        self.basis = tuple(tuple(x) for x in rows)
        self.pivots = tuple(pivots)

    @classmethod
    def full(cls, ambient):
        return cls(ambient, identity(ambient))

    @property
    def dim(self):
        return len(self.basis)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of Q^{self.ambient})"

    def reduce(self, vec):
        """Residual of vec after reduction by the basis; zero iff vec is in."""
        v = [frac(x) for x in vec]
        for row, p in zip(self.basis, self.pivots):
            if v[p] != 0:
                c = v[p]
                v = [x - c * y for x, y in zip(v, row)]
        return v

    def contains(self, vec):
        return all(x == 0 for x in self.reduce(vec))

    def contains_space(self, other):
        return all(self.contains(v) for v in other.basis)

    def add(self, vectors):
        return Subspace(self.ambient, list(self.basis) + [list(v) for v in vectors])

    def sum(self, other):
        return self.add(other.basis)

    def image(self, mat):
        """Image of this subspace under the matrix (mat has self.ambient columns)."""
        out = len(mat)
        return Subspace(out, [mat_vec(mat, v) for v in self.basis])

    def preimage(self, mat):
        """{x : mat @ x in self}; mat maps Q^m -> Q^ambient."""
        m = len(mat[0]) if mat else 0
        if len(mat) != self.ambient:
            raise ValueError("shape mismatch in preimage")
        cols = [[mat[i][j] for i in range(self.ambient)] for j in range(m)]
        resid = [self.reduce(c) for c in cols]
        return Subspace(m, kernel_basis(transpose(resid) if resid else [], m))

    def intersect(self, other):
        if self.ambient != other.ambient:
            raise ValueError("ambient mismatch")
        # x in self iff other-residual of x vanishes; restrict to self's basis
        if self.dim == 0 or other.dim == 0:
            return Subspace(self.ambient)
        resid = [other.reduce(v) for v in self.basis]
        coeffs = kernel_basis(transpose(resid), len(self.basis))
        vecs = []
        for c in coeffs:
            v = [Fraction(0)] * self.ambient
            for ci, row in zip(c, self.basis):
                if ci:
                    v = [x + ci * y for x, y in zip(v, row)]
            vecs.append(v)
        return Subspace(self.ambient, vecs)
