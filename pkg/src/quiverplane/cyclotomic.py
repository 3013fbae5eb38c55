"""Exact scalars in cyclotomic fields.

A ``Cyclotomic`` holds rational coordinates in the power basis
1, z, ..., z^(phi(m)-1) of Q(zeta_m), reduced modulo the m-th cyclotomic
polynomial.  Enough arithmetic for character tables: add, multiply,
complex conjugation, rationality tests.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m):
    """Coefficients (low to high, monic) of the m-th cyclotomic polynomial."""
    # divide x^m - 1 by all Phi_d, d | m, d < m
    poly = [Fraction(-1)] + [Fraction(0)] * (m - 1) + [Fraction(1)]
    for d in range(1, m):
        if m % d:
            continue
        div = cyclotomic_polynomial(d)
        poly = _poly_div_exact(poly, div)
    return tuple(poly)


def _poly_div_exact(num, den):
    num = list(num)
    out = [Fraction(0)] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] / den[-1]
        out[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    assert all(x == 0 for x in num[: len(den) - 1])
    return out


@lru_cache(maxsize=None)
def _power_table(m):
    """Reductions of z^k, k < 2*deg, modulo Phi_m, as coefficient tuples."""
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    rows = []
    for k in range(2 * deg):
        if k < deg:
            row = [Fraction(0)] * deg
            row[k] = Fraction(1)
        else:
            # z^k = z * z^(k-1) reduced
            prev = rows[k - 1]
            row = [Fraction(0)] + list(prev[:-1])
            lead = prev[-1]
            if lead:
                for j in range(deg):
                    row[j] -= lead * phi[j]
        rows.append(tuple(row))
    return tuple(rows)


class Cyclotomic:
    __slots__ = ("m", "coeffs")

    def __init__(self, m, coeffs):
        self.m = m
        deg = len(cyclotomic_polynomial(m)) - 1
        c = [Fraction(x) for x in coeffs]
        if len(c) != deg:
            raise ValueError(f"expected {deg} coordinates for order {m}")
        self.coeffs = tuple(c)

    @classmethod
    def from_rational(cls, m, q):
        deg = len(cyclotomic_polynomial(m)) - 1
        if deg == 0:
            raise ValueError("order must be >= 1 with positive degree")
        return cls(m, [Fraction(q)] + [Fraction(0)] * (deg - 1))

    @classmethod
    def root_of_unity(cls, m, k, order=None):
        """zeta_order^k as an element of Q(zeta_m); order must divide m."""
        if order is None:
            order = m
        if m % order:
            raise ValueError("order must divide the field order")
        deg = len(cyclotomic_polynomial(m)) - 1
        e = (k * (m // order)) % m
        table = _power_table(m)
        if e < len(table):
            return cls(m, table[e])
        out = cls.from_rational(m, 1)
        step = cls(m, table[1])
        for _ in range(e):
            out = out * step
        return out

    def __add__(self, other):
        other = self._coerce(other)
        return Cyclotomic(self.m, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return Cyclotomic(self.m, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        deg = len(self.coeffs)
        prod = [Fraction(0)] * (2 * deg - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    prod[i + j] += a * b
        table = _power_table(self.m)
        out = [Fraction(0)] * deg
        for k, c in enumerate(prod):
            if c:
                row = table[k]
                for j in range(deg):
                    out[j] += c * row[j]
        return Cyclotomic(self.m, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            if other.m != self.m:
                raise ValueError("mixed cyclotomic orders")
            return other
        return Cyclotomic.from_rational(self.m, other)

    def conjugate(self):
        """Complex conjugate: zeta -> zeta^(m-1)."""
        deg = len(self.coeffs)
        table = _power_table(self.m)
        out = [Fraction(0)] * deg
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            e = (-k) % self.m
            row = _reduced_power(self.m, e)
            for j in range(deg):
                out[j] += c * row[j]
        return Cyclotomic(self.m, out)

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def rational_value(self):
        """The value as a Fraction, or None if irrational."""
        if any(c != 0 for c in self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.from_rational(self.m, other)
        return (
            isinstance(other, Cyclotomic)
            and self.m == other.m
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.m, self.coeffs))

    def __repr__(self):
        q = self.rational_value()
        if q is not None:
            return f"Cyc({q})"
        return f"Cyc(m={self.m}, {list(self.coeffs)})"


@lru_cache(maxsize=None)
def _reduced_power(m, e):
    """Coefficients of z^e mod Phi_m for any e >= 0."""
    table = _power_table(m)
    if e < len(table):
        return table[e]
    deg = len(cyclotomic_polynomial(m)) - 1
    out = [Fraction(0)] * deg
    out[0] = Fraction(1)
    cur = Cyclotomic(m, out)
    z = Cyclotomic(m, table[1])
    for _ in range(e):
        cur = cur * z
    return cur.coeffs


def sqrt5(m):
    """sqrt(5) in Q(zeta_m), m divisible by 5 (Gauss sum)."""
    z = lambda k: Cyclotomic.root_of_unity(m, k, order=5)
    return z(1) - z(2) - z(3) + z(4)


def sqrt2(m):
    """sqrt(2) in Q(zeta_m), m divisible by 8."""
    return Cyclotomic.root_of_unity(m, 1, order=8) + Cyclotomic.root_of_unity(m, 7, order=8)
