"""Quadratic presentations over a split semisimple base, and degreewise
quotient engines.

Words read left to right: (g1, g2) means the product g1*g2 and is composable
when rv(g1) == lv(g2).  A relation space is a list of vertex-homogeneous
vectors over the degree-2 word basis.  The engine computes monomial bases of
each graded piece by exact row reduction of sum_i T^i (x) R (x) T^j, together
with sparse left/right multiplication by generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .chartable import (
    CharacterTable,
    ClassVector,
    class_product,
    regular_class,
    sym_power_class,
    tautological_class,
    trivial_class,
    unit_class,
)
from .linalg import Subspace
from .mckay import McKayQuiver


@dataclass(frozen=True)
class Generator:
    name: str
    lv: int
    rv: int


@dataclass
class QuadraticPresentation:
    """Vertices 0..n_vertices-1, degree-1 generators, quadratic relations.

    relations: vectors over the composable-pair basis, as dicts
    {(g1_index, g2_index): coeff}; each must be vertex-homogeneous.
    """

    n_vertices: int
    generators: list
    relations: list

    def __post_init__(self):
        for rel in self.relations:
            pairs = list(rel)
            if not pairs:
                continue
            g1, g2 = pairs[0]
            lv = self.generators[g1].lv
            rv = self.generators[g2].rv
            for (a, b) in pairs:
                ga, gb = self.generators[a], self.generators[b]
                if ga.rv != gb.lv:
                    raise ValueError("relation contains a non-composable word")
                if ga.lv != lv or gb.rv != rv:
                    raise ValueError("relation is not vertex-homogeneous")

    def pair_basis(self):
        """All composable pairs (g1, g2), in lexicographic order."""
        out = []
        for i, g in enumerate(self.generators):
            for j, h in enumerate(self.generators):
                if g.rv == h.lv:
                    out.append((i, j))
        return out

    def relation_dim(self):
        basis = {p: k for k, p in enumerate(self.pair_basis())}
        rows = []
        for rel in self.relations:
            row = [Fraction(0)] * len(basis)
            for p, c in rel.items():
                row[basis[p]] += Fraction(c)
            rows.append(row)
        return Subspace(len(basis), rows).dim


def quadratic_dual(pres: QuadraticPresentation) -> QuadraticPresentation:
    """Presentation on the dual generators with the annihilator relations.

    The dual of g swaps lv and rv; the pairing of a dual pair (g1*, g2*)
    against a primal pair (h1, h2) is nonzero exactly when (h1, h2) is the
    reversed pair (g2, g1), which matches *(V (x) W) = *W (x) *V over the
    semisimple base.
    """
    dual_gens = [Generator(g.name + "'", g.rv, g.lv) for g in pres.generators]
    dual = QuadraticPresentation(pres.n_vertices, dual_gens, [])
    dual_pairs = dual.pair_basis()
    primal_index = {p: k for k, p in enumerate(pres.pair_basis())}
    # rows: primal relations evaluated against reversed dual pairs
    mat = []
    for rel in pres.relations:
        row = [Fraction(0)] * len(dual_pairs)
        for col, (i, j) in enumerate(dual_pairs):
            c = rel.get((j, i))
            if c:
                row[col] = Fraction(c)
        mat.append(row)
    from .linalg import kernel_basis

    ker = kernel_basis(mat, len(dual_pairs)) if mat else [
        [Fraction(int(i == j)) for j in range(len(dual_pairs))] for i in range(len(dual_pairs))
    ]
    relations = []
    for vec in ker:
        rel = {dual_pairs[k]: v for k, v in enumerate(vec) if v}
        relations.append(rel)
    dual.relations = _split_homogeneous(dual, relations)
    return dual


def _split_homogeneous(pres, relations):
    """Split relation vectors into their vertex-homogeneous components."""
    out = []
    for rel in relations:
        buckets = {}
        for (i, j), c in rel.items():
            key = (pres.generators[i].lv, pres.generators[j].rv)
            buckets.setdefault(key, {})[(i, j)] = c
        out.extend(buckets.values())
    return out


class GradedQuotient:
    """Degreewise quotient of the path/tensor algebra by quadratic relations.

    For each degree up to the cutoff: the composable word list, the relation
    subspace in canonical form, the surviving monomial basis (non-pivot
    words), and sparse generator multiplication on that basis.
    """

    def __init__(self, pres: QuadraticPresentation, cutoff: int, top_dim_only=False):
        self.pres = pres
        self.cutoff = cutoff
        self.top_dim_only = top_dim_only
        self._build()

    def _build(self):
        pres, cutoff = self.pres, self.cutoff
        gens = pres.generators
        # degree 0 is the semisimple base: one idempotent per vertex,
        # represented by a bare int
        self.words = {0: list(range(pres.n_vertices))}
        if cutoff >= 1:
            self.words[1] = [(i,) for i in range(len(gens))]
        for d in range(2, cutoff + 1):
            self.words[d] = [
                (g,) + w
                for g in range(len(gens))
                for w in self.words[d - 1]
                if gens[g].rv == gens[w[0]].lv
            ]
        self.word_index = {d: {w: k for k, w in enumerate(ws)} for d, ws in self.words.items()}
        # relation subspaces: S_d = P1 (x) S_(d-1) + R (x) T^(d-2)
        self.rel_space = {}
        self._top_dim = None
        for d in range(2, cutoff + 1):
            vecs = []
            widx = self.word_index[d]
            nwords = len(self.words[d])
            if d == 2:
                for rel in pres.relations:
                    row = [Fraction(0)] * nwords
                    for (i, j), c in rel.items():
                        row[widx[(i, j)]] += Fraction(c)
                    vecs.append(row)
            else:
                # prepend generators to a basis of S_(d-1)
                for srow in self.rel_space[d - 1].basis:
                    support = [
                        (self.words[d - 1][k], c) for k, c in enumerate(srow) if c
                    ]
                    for g in range(len(gens)):
                        row = None
                        for w, c in support:
                            if gens[g].rv == gens[w[0]].lv:
                                if row is None:
                                    row = [Fraction(0)] * nwords
                                row[widx[(g,) + w]] += c
                        if row is not None:
                            vecs.append(row)
                # relations tensored with words on the right
                for rel in pres.relations:
                    items = list(rel.items())
                    rvx = gens[items[0][0][1]].rv
                    for w in self.words[d - 2]:
                        if gens[w[0]].lv != rvx:
                            continue
                        row = [Fraction(0)] * nwords
                        for (i, j), c in items:
                            row[widx[(i, j) + w]] += Fraction(c)
                        vecs.append(row)
            if self.top_dim_only and d == cutoff:
                from .linalg import rank as _rank

                self._top_dim = nwords - (_rank(vecs) if vecs else 0)
                break
            self.rel_space[d] = Subspace(nwords, vecs)
        # monomial bases: non-pivot words
        self.basis, self.basis_index = {}, {}
        top = cutoff - 1 if (self.top_dim_only and cutoff >= 2) else cutoff
        for d in range(top + 1):
            if d <= 1:
                self.basis[d] = list(self.words[d])
            else:
                piv = set(self.rel_space[d].pivots)
                self.basis[d] = [w for k, w in enumerate(self.words[d]) if k not in piv]
            self.basis_index[d] = {w: k for k, w in enumerate(self.basis[d])}

    def dim(self, d):
        if self.top_dim_only and d == self.cutoff and self._top_dim is not None:
            return self._top_dim
        return len(self.basis[d])

    def pair_dim(self, i, j, d):
        count = 0
        for w in self.basis[d]:
            if self.word_vertices(w) == (i, j):
                count += 1
        return count

    def word_vertices(self, w):
        """(left vertex, right vertex) of a basis word."""
        if isinstance(w, int):
            return (w, w)
        gens = self.pres.generators
        return (gens[w[0]].lv, gens[w[-1]].rv)

    def normal_form(self, d, vec_by_word):
        """Reduce a word-coordinate dict to quotient-basis coordinates."""
        if d <= 1:
            out = [Fraction(0)] * self.dim(d)
            for w, c in vec_by_word.items():
                out[self.basis_index[d][w]] += Fraction(c)
            return out
        widx = self.word_index[d]
        row = [Fraction(0)] * len(self.words[d])
        for w, c in vec_by_word.items():
            row[widx[w]] += Fraction(c)
        resid = self.rel_space[d].reduce(row)
        out = [Fraction(0)] * self.dim(d)
        for k, w in enumerate(self.words[d]):
            c = resid[self.word_index[d][w]]
            if c:
                out[self.basis_index[d][w]] += c
        return out

    def lmul_basis_vector(self, g, d, w):
        """g * w as quotient-basis coordinates in degree d+1 (w a basis word
        of degree d); g is a generator index."""
        gens = self.pres.generators
        if d + 1 > self.cutoff:
            raise ValueError("beyond cutoff")
        if isinstance(w, int):
            out = [Fraction(0)] * self.dim(1)
            if gens[g].rv == w:
                out[self.basis_index[1][(g,)]] = Fraction(1)
            return out
        if gens[g].rv != gens[w[0]].lv:
            return [Fraction(0)] * self.dim(d + 1)
        return self.normal_form(d + 1, {(g,) + w: Fraction(1)})

    def rmul_basis_vector(self, g, d, w):
        gens = self.pres.generators
        if d + 1 > self.cutoff:
            raise ValueError("beyond cutoff")
        if isinstance(w, int):
            out = [Fraction(0)] * self.dim(1)
            if gens[g].lv == w:
                out[self.basis_index[1][(g,)]] = Fraction(1)
            return out
        if gens[w[-1]].rv != gens[g].lv:
            return [Fraction(0)] * self.dim(d + 1)
        return self.normal_form(d + 1, {w + (g,): Fraction(1)})

    def lmul_matrix(self, g, d):
        cols = [self.lmul_basis_vector(g, d, w) for w in self.basis[d]]
        return [list(row) for row in zip(*cols)] if cols else []

    def dims_table(self):
        return {d: self.dim(d) for d in range(self.cutoff + 1)}


# --- concrete presentations ----------------------------------------------------


def atau_presentation(n, tau) -> QuadraticPresentation:
    """The cyclic smash algebra as a quadratic presentation (vertex
    components of x, y, z); used as an independent cross-check of the
    closed-form engine and to build the Koszul dual."""
    tau = [Fraction(t) for t in tau]
    gens = []
    index = {}
    for j in range(n):
        for name, lv in (("x", (j + 1) % n), ("y", (j - 1) % n), ("z", j)):
            index[(name, j)] = len(gens)
            gens.append(Generator(f"{name}{j}", lv, j))
    rels = []
    for j in range(n):
        x_j, y_j, z_j = index[("x", j)], index[("y", j)], index[("z", j)]
        z_j1 = index[("z", (j + 1) % n)]
        z_jm1 = index[("z", (j - 1) % n)]
        x_jm1 = index[("x", (j - 1) % n)]
        y_j1 = index[("y", (j + 1) % n)]
        # z x = x z and z y = y z, component at right vertex j
        rels.append({(z_j1, x_j): Fraction(1), (x_j, z_j): Fraction(-1)})
        rels.append({(z_jm1, y_j): Fraction(1), (y_j, z_j): Fraction(-1)})
        # y x - x y = tau_j z^2 at right vertex j
        rel = {(y_j1, x_j): Fraction(1), (x_jm1, y_j): Fraction(-1)}
        if tau[j]:
            rel[(z_j, z_j)] = -tau[j]
        rels.append(rel)
    return QuadraticPresentation(n, gens, rels)


def preprojective_presentation(q: McKayQuiver, tau) -> QuadraticPresentation:
    """Graded preprojective presentation: arrows of the doubled quiver plus a
    degree-1 loop f_v at each vertex; relations f a = a f and, per vertex,
    sum over chosen arrows out minus reversed arrows in equals tau f^2."""
    n = q.n_vertices
    tau = [Fraction(t) for t in tau]
    gens = []
    arrow_gen = {}
    for a in q.arrows:
        arrow_gen[a.index] = len(gens)
        gens.append(Generator(f"a{a.index}", a.src, a.dst))
    f_gen = {}
    for v in range(n):
        f_gen[v] = len(gens)
        gens.append(Generator(f"f{v}", v, v))
    rels = []
    for a in q.arrows:
        g = arrow_gen[a.index]
        rels.append(
            {(f_gen[a.src], g): Fraction(1), (g, f_gen[a.dst]): Fraction(-1)}
        )
    for v in range(n):
        rel = {}
        for a in q.chosen_arrows:
            ga, gr = arrow_gen[a.index], arrow_gen[q.reverse(a).index]
            if a.src == v:
                rel[(ga, gr)] = rel.get((ga, gr), Fraction(0)) + 1
            if a.dst == v:
                rel[(gr, ga)] = rel.get((gr, ga), Fraction(0)) - 1
        if tau[v]:
            rel[(f_gen[v], f_gen[v])] = rel.get((f_gen[v], f_gen[v]), Fraction(0)) - tau[v]
        rels.append(rel)
    return QuadraticPresentation(n, gens, rels)


def build_preprojective(q: McKayQuiver, tau, N) -> GradedQuotient:
    return GradedQuotient(preprojective_presentation(q, tau), N)


def preprojective_dim_oracle(table: CharacterTable, i, j, k) -> int:
    """Multiplicity of R_i in R_j (x) Sym^k(L + triv), by characters.

    Conjecturally equal to dim e_i P^tau_k e_j through the Morita
    equivalence; used strictly as a cross-check."""
    acc = ClassVector(table, [0] * table.n_classes)
    for s in range(k + 1):
        acc = acc + sym_power_class(table, s)
    prod = class_product(unit_class(table, j), acc)
    return prod.coeffs[i]


def preprojective_k3_generator(q: McKayQuiver, tau, pres=None):
    """The degree-3 Koszul generator: tau f(x)f(x)f plus the six signed
    arrow words per chosen arrow; returns (presentation, word vector)."""
    pres = pres or preprojective_presentation(q, tau)
    tau = [Fraction(t) for t in tau]
    gens = pres.generators
    name_of = {g.name: k for k, g in enumerate(gens)}
    vec = {}

    def add(word, coeff):
        vec[word] = vec.get(word, Fraction(0)) + coeff

    for v in range(q.n_vertices):
        f = name_of[f"f{v}"]
        if tau[v]:
            add((f, f, f), tau[v])
    for a in q.chosen_arrows:
        ga = name_of[f"a{a.index}"]
        gr = name_of[f"a{q.reverse(a).index}"]
        fs, fd = name_of[f"f{a.src}"], name_of[f"f{a.dst}"]
        add((ga, fd, gr), Fraction(1))
        add((fs, ga, gr), Fraction(-1))
        add((gr, fs, ga), Fraction(-1))
        add((fd, gr, ga), Fraction(1))
        add((ga, gr, fs), Fraction(-1))
        add((gr, ga, fd), Fraction(1))
    return pres, {w: c for w, c in vec.items() if c}


def cohomology_of_twist(table: CharacterTable, i: int):
    """Classes of H^0, H^1, H^2 of the i-th twist of the structure sheaf:
    the regular representation times symmetric powers in degree >= 0, the
    dual picture in degree <= -3, nothing else."""
    zero = ClassVector(table, [0] * table.n_classes)
    reg = regular_class(table)
    if i >= 0:
        cls = zero
        for s in range(i + 1):
            cls = cls + sym_power_class(table, s)
        return class_product(reg, cls), zero, zero
    if i <= -3:
        m = -i - 3
        cls = zero
        for s in range(m + 1):
            cls = cls + sym_power_class(table, s)
        return zero, zero, class_product(reg, cls).dual()
    return zero, zero, zero


def deformed_preprojective_presentation(q: McKayQuiver, tau):
    """Presentation data of the filtered quotient (generators = arrows,
    inhomogeneous relations sum aa* - sum a*a = tau_i e_i); documentation
    and export only, no normal forms."""
    tau = [Fraction(t) for t in tau]
    arrows = [
        {"name": f"a{a.index}", "src": a.src, "dst": a.dst, "reverse": q.reverse(a).index}
        for a in q.arrows
    ]
    relations = []
    for v in range(q.n_vertices):
        lhs = []
        for a in q.chosen_arrows:
            if a.src == v:
                lhs.append({"word": [f"a{a.index}", f"a{q.reverse(a).index}"], "coeff": "1"})
            if a.dst == v:
                lhs.append({"word": [f"a{q.reverse(a).index}", f"a{a.index}"], "coeff": "-1"})
        relations.append({"vertex": v, "lhs": lhs, "rhs": str(tau[v])})
    return {"generators": arrows, "relations": relations}
