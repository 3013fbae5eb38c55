"""Closed-form degreewise engine for the deformed polynomial smash algebra
over a cyclic group.

Basis monomials are x^a y^b z^c e_r (right idempotent r in Z/n, degree
a+b+c); the left idempotent of such a monomial is r + a - b mod n, since x
carries weight +1 and y weight -1.  The only nontrivial rewriting is

    y x = x y + z^2 T,      T = sum_j tau_j e_j,

which gives closed forms with at most two terms for every generator
multiplication; everything downstream (Koszul complexes, monads) is built
from these sparse operators.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


def degree_dim(n, d):
    return n * (d + 1) * (d + 2) // 2 if d >= 0 else 0


def monomials(d):
    """Exponent triples (a, b, c) of total degree d, in a fixed order."""
    return [(a, b, d - a - b) for a in range(d, -1, -1) for b in range(d - a, -1, -1)]


class CyclicAlgebra:
    """A^tau over Z/n with exact rational structure constants.

    Keys are (a, b, c, r).  tau is indexed by the vertex set Z/n.
    """

    def __init__(self, n, tau):
        if n < 1:
            raise ValueError("cyclic order must be >= 1")
        self.n = n
        self.tau = tuple(Fraction(t) for t in tau)
        if len(self.tau) != n:
            raise ValueError("tau must have one entry per vertex")

    def left_vertex(self, key):
        a, b, c, r = key
        return (r + a - b) % self.n

    def degree_basis(self, d):
        return [(a, b, c, r) for r in range(self.n) for (a, b, c) in monomials(d)]

    def left_block_basis(self, i, d):
        """Basis of e_i A_d (monomials with left idempotent i)."""
        return [
            (a, b, c, (i - a + b) % self.n)
            for (a, b, c) in monomials(d)
        ]

    def block_basis(self, i, r, d):
        """Basis of e_i A_d e_r."""
        return [
            (a, b, c, r)
            for (a, b, c) in monomials(d)
            if (r + a - b) % self.n == i % self.n
        ]

    def pair_dim(self, i, j, d):
        return len(self.block_basis(i, j, d))

    # -- generator multiplication, sparse ---------------------------------

    def _tau_run(self, start, count):
        """tau_start + tau_(start+1) + ... (count terms, indices mod n)."""
        return sum((self.tau[(start + m) % self.n] for m in range(count)), Fraction(0))

    def lmul(self, g, key):
        """Left multiplication by a generator letter; list of (key, coeff)."""
        a, b, c, r = key
        if g == "x":
            return [((a + 1, b, c, r), Fraction(1))]
        if g == "z":
            return [((a, b, c + 1, r), Fraction(1))]
        if g == "y":
            out = [((a, b + 1, c, r), Fraction(1))]
            if a:
                coeff = self._tau_run(r - b, a)
                if coeff:
                    out.append(((a - 1, b, c + 2, r), coeff))
            return out
        raise ValueError(g)

    def rmul(self, g, key):
        """Right multiplication by a generator letter."""
        a, b, c, r = key
        if g == "x":
            out = [((a + 1, b, c, (r - 1) % self.n), Fraction(1))]
            if b:
                coeff = self._tau_run(r - b, b)
                if coeff:
                    out.append(((a, b - 1, c + 2, (r - 1) % self.n), coeff))
            return out
        if g == "y":
            return [((a, b + 1, c, (r + 1) % self.n), Fraction(1))]
        if g == "z":
            return [((a, b, c + 1, r), Fraction(1))]
        raise ValueError(g)

    def lmul_component(self, g, j, key):
        """Left multiplication by the vertex component g.e_j."""
        if self.left_vertex(key) != j % self.n:
            return []
        return self.lmul(g, key)

    def rmul_component(self, g, j, key):
        """Right multiplication by g.e_j (kills keys unless the result has
        right idempotent j)."""
        out = self.rmul(g, key)
        return [(k, c) for (k, c) in out if k[3] == j % self.n]

    def mul_monomial(self, key1, key2):
        """Product key1 * key2, as a list of (key, coeff)."""
        a, b, c, r = key1
        if self.left_vertex(key2) != r:
            return []
        terms = {key2: Fraction(1)}
        for g, count in (("z", c), ("y", b), ("x", a)):
            for _ in range(count):
                nxt = {}
                for k, co in terms.items():
                    for k2, co2 in self.lmul(g, k):
                        nxt[k2] = nxt.get(k2, Fraction(0)) + co * co2
                terms = nxt
        return [(k, co) for k, co in sorted(terms.items()) if co]

    def lmul_matrix(self, g, d):
        """Dense matrix of left multiplication by the letter g: A_d -> A_(d+1),
        in the degree_basis orderings."""
        dom = self.degree_basis(d)
        cod = {k: i for i, k in enumerate(self.degree_basis(d + 1))}
        m = [[Fraction(0)] * len(dom) for _ in range(len(cod))]
        for col, key in enumerate(dom):
            for k2, coeff in self.lmul(g, key):
                m[cod[k2]][col] += coeff
        return m

    def central_element_lmul(self, d):
        """Matrix of left multiplication by z^2 T on A_d (the commutator
        [L_y, L_x] must equal this; used by consistency checks)."""
        dom = self.degree_basis(d)
        cod = {k: i for i, k in enumerate(self.degree_basis(d + 2))}
        m = [[Fraction(0)] * len(dom) for _ in range(len(cod))]
        for col, (a, b, c, r) in enumerate(dom):
            coeff = self.tau[(r + a - b) % self.n]
            if coeff:
                m[cod[(a, b, c + 2, r)]][col] = coeff
        return m


def build_atau(n, tau, N):
    """The spec-facing constructor: engine plus a degreewise dimension report."""
    alg = CyclicAlgebra(n, tau)
    dims = [degree_dim(n, d) for d in range(N + 1)]
    return alg, dims
