"""Finite subgroups of SL2(C): exact character tables and the representation ring.

Supported families: trivial, cyclic, binary dihedral (dicyclic), binary
tetrahedral/octahedral/icosahedral.  Cyclic tables are computed analytically;
the three exceptional tables and the dicyclic series are embedded data, and
every table is re-validated against the orthogonality relations when built.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .cyclotomic import Cyclotomic, sqrt2, sqrt5

FAMILIES = ("trivial", "cyclic", "binary_dihedral", "BT", "BO", "BI")


@dataclass(frozen=True)
class GroupDescriptor:
    family: str
    n: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.family == "cyclic" and self.n < 1:
            raise ValueError("cyclic order must be >= 1")
        if self.family == "binary_dihedral" and self.n < 2:
            raise ValueError("binary dihedral parameter must be >= 2")

    @property
    def order(self):
        return {
            "trivial": 1,
            "cyclic": self.n,
            "binary_dihedral": 4 * self.n,
            "BT": 24,
            "BO": 48,
            "BI": 120,
        }[self.family]

    @classmethod
    def parse(cls, text):
        """Parse strings like 'trivial', 'cyclic:4', 'BD:3', 'BI'."""
        t = text.strip()
        low = t.lower()
        if low == "trivial":
            return cls("trivial")
        if ":" in t:
            fam, _, num = t.partition(":")
            fam = fam.lower()
            n = int(num)
            if fam in ("cyclic", "c", "a"):
                return cls("trivial") if n == 1 else cls("cyclic", n)
            if fam in ("bd", "binary_dihedral", "dicyclic", "d"):
                return cls("binary_dihedral", n)
        up = t.upper()
        if up in ("BT", "BO", "BI"):
            return cls(up)
        raise ValueError(f"cannot parse group descriptor {text!r}")

    def __str__(self):
        if self.family in ("cyclic", "binary_dihedral"):
            return f"{self.family}:{self.n}"
        return self.family


class CharacterTable:
    """Conjugacy classes, exact irreducible characters, and the SL2 character.

    chars[i][c] is the value of the i-th irreducible on class c, as a
    Cyclotomic of order ``m`` (the group exponent).  chi_L is the character
    of the tautological 2-dimensional representation, stored as a row (it is
    reducible for cyclic groups, so an irreducible index would not exist).
    """

    def __init__(self, descriptor, class_sizes, class_orders, chars, chi_L, m):
        self.descriptor = descriptor
        self.order = descriptor.order
        self.class_sizes = tuple(class_sizes)
        self.class_orders = tuple(class_orders)
        self.chars = tuple(tuple(row) for row in chars)
        self.chi_L = tuple(chi_L)
        self.m = m
        self.dims = tuple(
            int(row[0].rational_value()) for row in self.chars
        )
        self.trivial_index = next(
            i for i, row in enumerate(self.chars) if all(v == 1 for v in row)
        )
        self._validate()

    @property
    def n_classes(self):
        return len(self.class_sizes)

    def _validate(self):
        n = self.n_classes
        if len(self.chars) != n:
            raise ValueError("character count must equal class count")
        if sum(self.class_sizes) != self.order:
            raise ValueError("class sizes do not sum to the group order")
        if sum(d * d for d in self.dims) != self.order:
            raise ValueError("sum of squared dimensions != group order")
        for i in range(n):
            for j in range(i, n):
                val = self.inner(self.chars[i], self.chars[j])
                if val != (1 if i == j else 0):
                    raise ValueError(f"orthogonality fails at ({i},{j}): {val}")
        if self.inner(self.chi_L, self.chi_L).rational_value() is None:
            raise ValueError("chi_L norm must be rational")
        if self.chi_L[0].rational_value() != 2:
            raise ValueError("chi_L(1) must be 2")
        for v in self.chi_L:
            if v.conjugate() != v:
                raise ValueError("chi_L must be real-valued (L is self-dual)")

    def inner(self, row_a, row_b):
        """(1/|G|) sum_c |c| a(c) conj(b(c)) as a Cyclotomic."""
        total = Cyclotomic.from_rational(self.m, 0)
        for size, a, b in zip(self.class_sizes, row_a, row_b):
            total = total + size * (a * b.conjugate())
        return Fraction(1, self.order) * total

    def inner_int(self, row_a, row_b):
        val = self.inner(row_a, row_b).rational_value()
        if val is None or val.denominator != 1 or val < 0:
            raise ValueError(f"inner product is not a nonnegative integer: {val}")
        return int(val)

    def dual_permutation(self):
        """Index map i -> i* with chi_{i*} = conj(chi_i)."""
        perm = []
        for row in self.chars:
            conj = tuple(v.conjugate() for v in row)
            perm.append(self.chars.index(conj))
        return perm

    def to_json(self):
        return {
            "group": str(self.descriptor),
            "order": self.order,
            "cyclotomic_order": self.m,
            "class_sizes": list(self.class_sizes),
            "class_orders": list(self.class_orders),
            "dims": list(self.dims),
            "trivial_index": self.trivial_index,
            "characters": [
                [[str(c) for c in v.coeffs] for v in row] for row in self.chars
            ],
            "chi_L": [[str(c) for c in v.coeffs] for v in self.chi_L],
        }

    def to_json_str(self):
        return json.dumps(self.to_json(), sort_keys=True, indent=1)


@dataclass(frozen=True)
class ClassVector:
    """An element of K(Gamma): integer coefficients over the irreducibles."""

    table: CharacterTable
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if len(self.coeffs) != self.table.n_classes:
            raise ValueError("coefficient length mismatch")

    def __add__(self, other):
        self._check(other)
        return ClassVector(self.table, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return ClassVector(self.table, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return ClassVector(self.table, [-a for a in self.coeffs])

    def __rmul__(self, k):
        if isinstance(k, int):
            return ClassVector(self.table, [k * a for a in self.coeffs])
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, int):
            return other * self
        return class_product(self, other)

    def _check(self, other):
        if other.table is not self.table and other.table.to_json() != self.table.to_json():
            raise ValueError("class vectors over different tables")

    def character_row(self):
        """The virtual character of this class, one Cyclotomic per class."""
        t = self.table
        row = []
        for c in range(t.n_classes):
            v = Cyclotomic.from_rational(t.m, 0)
            for i, k in enumerate(self.coeffs):
                if k:
                    v = v + k * t.chars[i][c]
            row.append(v)
        return row

    def dual(self):
        perm = self.table.dual_permutation()
        out = [0] * len(self.coeffs)
        for i, k in enumerate(self.coeffs):
            out[perm[i]] += k
        return ClassVector(self.table, out)


def unit_class(table, i):
    c = [0] * table.n_classes
    c[i] = 1
    return ClassVector(table, c)


def trivial_class(table):
    return unit_class(table, table.trivial_index)


def regular_class(table):
    return ClassVector(table, table.dims)


def tautological_class(table):
    """[L] as a class vector (decomposition of the SL2 character)."""
    coeffs = [table.inner_int(table.chi_L, row) for row in table.chars]
    return ClassVector(table, coeffs)


def dim_class(x: ClassVector) -> int:
    return sum(k * d for k, d in zip(x.coeffs, x.table.dims))


def class_product(a: ClassVector, b: ClassVector) -> ClassVector:
    """Tensor-product decomposition in K(Gamma), by character inner products."""
    a._check(b)
    t = a.table
    ra, rb = a.character_row(), b.character_row()
    prod = [x * y for x, y in zip(ra, rb)]
    coeffs = []
    for row in t.chars:
        v = t.inner(prod, row).rational_value()
        if v is None or v.denominator != 1:
            raise ValueError("tensor decomposition gave a non-integer")
        coeffs.append(int(v))
    return ClassVector(t, coeffs)


def tensor_multiplicity(table: CharacterTable, i: int, j: int) -> int:
    """Multiplicity of R_j inside R_i (x) L."""
    row = [table.chars[i][c] * table.chi_L[c] for c in range(table.n_classes)]
    return table.inner_int(row, table.chars[j])


def sym_power_class(table: CharacterTable, k: int) -> ClassVector:
    """[Sym^k L], using Sym^k = Sym^(k-1) * L - Sym^(k-2) (valid since det L = 1)."""
    if k < 0:
        return ClassVector(table, [0] * table.n_classes)
    prev, cur = None, trivial_class(table)
    L = tautological_class(table)
    for _ in range(k):
        prev, cur = cur, (class_product(cur, L) - prev if prev is not None else L)
    return cur


@lru_cache(maxsize=None)
def build_group(spec: GroupDescriptor) -> CharacterTable:
    if spec.family == "trivial":
        m = 1
        one = Cyclotomic.from_rational(1, 1)
        two = Cyclotomic.from_rational(1, 2)
        return CharacterTable(spec, [1], [1], [[one]], [two], 1)
    if spec.family == "cyclic":
        return _cyclic_table(spec)
    if spec.family == "binary_dihedral":
        return _binary_dihedral_table(spec)
    if spec.family == "BT":
        return _bt_table(spec)
    if spec.family == "BO":
        return _bo_table(spec)
    if spec.family == "BI":
        return _bi_table(spec)
    raise AssertionError


def _cyclic_table(spec):
    n = spec.n
    m = n
    z = lambda e: Cyclotomic.root_of_unity(m, e)
    chars = [[z(i * k) for k in range(n)] for i in range(n)]
    # generator acts on (x, y) by (zeta, zeta^-1)
    chi_L = [z(k) + z(-k) for k in range(n)]
    sizes = [1] * n
    orders = [n // gcd(n, k) if k else 1 for k in range(n)]
    return CharacterTable(spec, sizes, orders, chars, chi_L, m)


def _binary_dihedral_table(spec):
    n = spec.n
    m = lcm(2 * n, 4)
    z2n = lambda e: Cyclotomic.root_of_unity(m, e, order=2 * n)
    one = Cyclotomic.from_rational(m, 1)

    def rat(q):
        return Cyclotomic.from_rational(m, q)

    # classes: e, z = a^n, {a^k, a^-k} for k = 1..n-1, b-class, ab-class
    sizes = [1, 1] + [2] * (n - 1) + [n, n]
    orders = [1, 2] + [(2 * n) // gcd(2 * n, k) for k in range(1, n)] + [4, 4]
    chars = []
    if n % 2 == 0:
        # abelianization is C2 x C2
        for (va, vb) in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
            row = [rat(1), rat(va**n)] + [rat(va**k) for k in range(1, n)]
            row += [rat(vb), rat(va * vb)]
            chars.append(row)
    else:
        # abelianization is C4 generated by the image of b, with a = b^2
        i_unit = Cyclotomic.root_of_unity(m, 1, order=4)
        for s in range(4):
            vb = one
            for _ in range(s):
                vb = vb * i_unit
            va = rat((-1) ** s)
            row = [rat(1), rat((-1) ** (s * n))] + [rat((-1) ** (s * k)) for k in range(1, n)]
            row += [vb, va * vb]
            chars.append(row)
    for h in range(1, n):
        row = [rat(2), rat(2 * (-1) ** h)]
        row += [z2n(h * k) + z2n(-h * k) for k in range(1, n)]
        row += [rat(0), rat(0)]
        chars.append(row)
    chi_L = list(chars[4]) if n >= 2 else None  # rho_1 is the SL2 embedding
    return CharacterTable(spec, sizes, orders, chars, chi_L, m)


def _bt_table(spec):
    m = 12
    rat = lambda q: Cyclotomic.from_rational(m, q)
    w = Cyclotomic.root_of_unity(m, 1, order=3)
    w2 = w * w
    sizes = [1, 1, 6, 4, 4, 4, 4]
    orders = [1, 2, 4, 3, 3, 6, 6]
    one, mone = rat(1), rat(-1)
    chars = [
        [rat(1)] * 7,
        [one, one, one, w, w2, w, w2],
        [one, one, one, w2, w, w2, w],
        [rat(2), rat(-2), rat(0), mone, mone, one, one],
        [rat(2), rat(-2), rat(0), -w, -w2, w, w2],
        [rat(2), rat(-2), rat(0), -w2, -w, w2, w],
        [rat(3), rat(3), mone, rat(0), rat(0), rat(0), rat(0)],
    ]
    chi_L = list(chars[3])
    return CharacterTable(spec, sizes, orders, chars, chi_L, m)


def _bo_table(spec):
    m = 24
    rat = lambda q: Cyclotomic.from_rational(m, q)
    r2 = sqrt2(m)
    sizes = [1, 1, 6, 6, 6, 8, 8, 12]
    orders = [1, 2, 4, 8, 8, 6, 3, 4]
    z, o = rat(0), rat(1)
    chars = [
        [o] * 8,
        [o, o, o, -o, -o, o, o, -o],
        [rat(2), rat(-2), z, r2, -r2, o, -o, z],
        [rat(2), rat(-2), z, -r2, r2, o, -o, z],
        [rat(2), rat(2), rat(2), z, z, -o, -o, z],
        [rat(3), rat(3), -o, o, o, z, z, -o],
        [rat(3), rat(3), -o, -o, -o, z, z, o],
        [rat(4), rat(-4), z, z, z, -o, o, z],
    ]
    chi_L = list(chars[2])
    return CharacterTable(spec, sizes, orders, chars, chi_L, m)


def _bi_table(spec):
    m = 60
    rat = lambda q: Cyclotomic.from_rational(m, q)
    half = Fraction(1, 2)
    r5 = sqrt5(m)
    fp = half * (1 + r5)   # golden ratio
    fm = half * (1 - r5)
    sizes = [1, 1, 30, 20, 20, 12, 12, 12, 12]
    orders = [1, 2, 4, 3, 6, 5, 5, 10, 10]
    z, o = rat(0), rat(1)
    chars = [
        [o] * 9,
        [rat(2), rat(-2), z, -o, o, -fm, -fp, fm, fp],
        [rat(2), rat(-2), z, -o, o, -fp, -fm, fp, fm],
        [rat(3), rat(3), -o, z, z, fm, fp, fm, fp],
        [rat(3), rat(3), -o, z, z, fp, fm, fp, fm],
        [rat(4), rat(4), z, o, o, -o, -o, -o, -o],
        [rat(4), rat(-4), z, o, -o, -o, -o, o, o],
        [rat(5), rat(5), o, -o, -o, z, z, z, z],
        [rat(6), rat(-6), z, z, z, o, o, -o, -o],
    ]
    chi_L = list(chars[1])
    return CharacterTable(spec, sizes, orders, chars, chi_L, m)
