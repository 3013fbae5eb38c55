"""Equivariant ADHM triples (B, I, J) in quiver coordinates.

A QuiverData holds one rational matrix per arrow of the doubled quiver
(B_a maps the multiplicity space at src(a) to the one at dst(a)), framing
maps I_i: W_i -> V_i and J_i: V_i -> W_i, and the deformation parameter tau.

The moment map follows the letter convention fixed in mckay.Arrow: at each
vertex, x-letter arrows arriving contribute +B_a B_{rev a}, y-letter arrows
arriving contribute -B_a B_{rev a}, plus I_i J_i.  This is the unique sign
choice for which the monad composition identity b.a = (mu - tau) z^2 holds
verbatim.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction

from .linalg import (
    Subspace,
    det,
    inverse,
    kernel_basis,
    mat_mul,
    mat_sub,
    rank,
    zeros,
)
from .mckay import McKayQuiver


@dataclass(frozen=True)
class QuiverData:
    quiver: McKayQuiver
    v: tuple
    w: tuple
    B: tuple        # one matrix per arrow of the doubled quiver, arrow order
    I: tuple        # per vertex, v_i x w_i
    J: tuple        # per vertex, w_i x v_i
    tau: tuple      # per vertex, Fraction

    def __post_init__(self):
        q = self.quiver
        object.__setattr__(self, "v", tuple(int(x) for x in self.v))
        object.__setattr__(self, "w", tuple(int(x) for x in self.w))
        object.__setattr__(self, "tau", tuple(Fraction(t) for t in self.tau))
        object.__setattr__(
            self, "B", tuple(tuple(tuple(Fraction(x) for x in row) for row in m) for m in self.B)
        )
        object.__setattr__(
            self, "I", tuple(tuple(tuple(Fraction(x) for x in row) for row in m) for m in self.I)
        )
        object.__setattr__(
            self, "J", tuple(tuple(tuple(Fraction(x) for x in row) for row in m) for m in self.J)
        )
        n = q.n_vertices
        if not (len(self.v) == len(self.w) == len(self.tau) == n):
            raise ValueError("vector length mismatch with quiver")
        if len(self.B) != len(q.arrows):
            raise ValueError("need one matrix per doubled-quiver arrow")
        for a in q.arrows:
            _check_shape(self.B[a.index], self.v[a.dst], self.v[a.src], f"B[{a.index}]")
        for i in range(n):
            _check_shape(self.I[i], self.v[i], self.w[i], f"I[{i}]")
            _check_shape(self.J[i], self.w[i], self.v[i], f"J[{i}]")

    def b_mat(self, arrow):
        return [list(r) for r in self.B[arrow.index]]

    def i_mat(self, i):
        return [list(r) for r in self.I[i]]

    def j_mat(self, i):
        return [list(r) for r in self.J[i]]

    def to_json(self):
        q = self.quiver
        return {
            "group": str(q.table.descriptor),
            "v": list(self.v),
            "w": list(self.w),
            "tau": [str(t) for t in self.tau],
            "B": [
                {
                    "src": a.src,
                    "dst": a.dst,
                    "letter": a.letter,
                    "matrix": [[str(x) for x in row] for row in self.B[a.index]],
                }
                for a in q.arrows
            ],
            "I": [[[str(x) for x in row] for row in m] for m in self.I],
            "J": [[[str(x) for x in row] for row in m] for m in self.J],
        }

    @classmethod
    def from_json(cls, doc, quiver):
        B = [[[Fraction(x) for x in row] for row in entry["matrix"]] for entry in doc["B"]]
        return cls(
            quiver,
            tuple(doc["v"]),
            tuple(doc["w"]),
            tuple(B),
            tuple(tuple(tuple(Fraction(x) for x in row) for row in m) for m in doc["I"]),
            tuple(tuple(tuple(Fraction(x) for x in row) for row in m) for m in doc["J"]),
            tuple(Fraction(t) for t in doc["tau"]),
        )


def _check_shape(m, rows, cols, name):
    if len(m) != rows or any(len(r) != cols for r in m):
        raise ValueError(f"{name} must be {rows}x{cols}")


@dataclass(frozen=True)
class GaugeElement:
    g: tuple  # per-vertex invertible matrices

    def __post_init__(self):
        object.__setattr__(
            self, "g", tuple(tuple(tuple(Fraction(x) for x in row) for row in m) for m in self.g)
        )
        for i, m in enumerate(self.g):
            if det([list(r) for r in m]) == 0:
                raise ValueError(f"gauge block {i} is singular")


def moment_residual(d: QuiverData):
    """Per-vertex matrices mu_i(d) - tau_i * Id; all zero iff d solves the
    moment map equation."""
    q = d.quiver
    out = []
    for i in range(q.n_vertices):
        m = zeros(d.v[i], d.v[i])
        for a in q.arrows:
            if a.dst != i:
                continue
            prod = mat_mul(d.b_mat(a), d.b_mat(q.reverse(a)))
            sign = 1 if a.letter == "x" else -1
            for r in range(d.v[i]):
                for c in range(d.v[i]):
                    m[r][c] += sign * prod[r][c]
        if d.w[i]:
            ij = mat_mul(d.i_mat(i), d.j_mat(i))
            for r in range(d.v[i]):
                for c in range(d.v[i]):
                    m[r][c] += ij[r][c]
        for r in range(d.v[i]):
            m[r][r] -= d.tau[i]
        out.append(m)
    return out


def residual_is_zero(d: QuiverData) -> bool:
    return all(all(x == 0 for row in m for x in row) for m in moment_residual(d))


def is_stable(d: QuiverData):
    """Smallest B-closed subspace family containing im(I); stable iff full.

    Returns (verdict, certificate) where the certificate is the fixed-point
    family of subspaces.
    """
    q = d.quiver
    spaces = [Subspace(d.v[i]).add(_columns(d.i_mat(i))) for i in range(q.n_vertices)]
    for _ in range(sum(d.v) + 1):
        changed = False
        for a in q.arrows:
            img = spaces[a.src].image(d.b_mat(a)) if d.v[a.src] else Subspace(d.v[a.dst])
            new = spaces[a.dst].sum(img)
            if new.dim != spaces[a.dst].dim:
                spaces[a.dst] = new
                changed = True
        if not changed:
            break
    verdict = all(s.dim == d.v[i] for i, s in enumerate(spaces))
    return verdict, spaces


def is_costable(d: QuiverData):
    """Largest B-closed subspace family inside ker(J); costable iff zero."""
    q = d.quiver
    spaces = []
    for i in range(q.n_vertices):
        if d.w[i] == 0 or d.v[i] == 0:
            spaces.append(Subspace.full(d.v[i]))
        else:
            spaces.append(Subspace(d.v[i], kernel_basis(d.j_mat(i), d.v[i])))
    for _ in range(sum(d.v) + 1):
        changed = False
        for a in q.arrows:
            if d.v[a.src] == 0:
                continue
            if d.v[a.dst] == 0:
                continue  # the target space is 0; B_a is the zero map
            pre = spaces[a.dst].preimage(d.b_mat(a))
            new = spaces[a.src].intersect(pre)
            if new.dim != spaces[a.src].dim:
                spaces[a.src] = new
                changed = True
        if not changed:
            break
    verdict = all(s.dim == 0 for s in spaces)
    return verdict, spaces


def _columns(m):
    return [list(col) for col in zip(*m)] if m and m[0] else []


def act(g: GaugeElement, d: QuiverData) -> QuiverData:
    """Gauge action g(B,I,J) = (g B g^-1, g I, J g^-1)."""
    q = d.quiver
    gm = [[list(row) for row in blk] for blk in g.g]
    for i in range(q.n_vertices):
        _check_shape(gm[i], d.v[i], d.v[i], f"g[{i}]")
    ginv = [inverse(m) if m else [] for m in gm]
    B = [
        mat_mul(mat_mul(gm[a.dst], d.b_mat(a)), ginv[a.src])
        for a in q.arrows
    ]
    I = [mat_mul(gm[i], d.i_mat(i)) for i in range(q.n_vertices)]
    J = [mat_mul(d.j_mat(i), ginv[i]) for i in range(q.n_vertices)]
    return QuiverData(q, d.v, d.w, tuple(B), tuple(I), tuple(J), d.tau)


def transpose_dual(d: QuiverData) -> QuiverData:
    """The dual triple (B*, J*, I*): transpose every matrix and swap each
    arrow's matrix with its reverse's."""
    q = d.quiver

    def t(m):
        return [list(col) for col in zip(*m)] if m else []

    B = [None] * len(q.arrows)
    for a in q.arrows:
        B[a.index] = t(d.b_mat(q.reverse(a)))
    I = [t(d.j_mat(i)) for i in range(q.n_vertices)]
    J = [t(d.i_mat(i)) for i in range(q.n_vertices)]
    return QuiverData(q, d.v, d.w, tuple(B), tuple(I), tuple(J), d.tau)


# --- explicit solution families ----------------------------------------------


def cm_point(quiver: McKayQuiver, x, p, tau) -> QuiverData:
    """Calogero-Moser point over the trivial group: v = len(x), w = 1.

    B1 = diag(x) on the chosen loop arrow, B2 has diagonal p and off-diagonal
    entries tau/(x_j - x_i); I is the all-ones column and J = tau * ones row,
    which makes the moment residual exactly zero and [B1,B2] - tau*Id of
    rank one.
    """
    if quiver.table.descriptor.family != "trivial":
        raise ValueError("cm_point lives over the trivial group")
    x = [Fraction(q) for q in x]
    p = [Fraction(q) for q in p]
    tau = Fraction(tau)
    if tau == 0:
        raise ValueError("tau must be nonzero")
    k = len(x)
    if len(set(x)) != k:
        raise ValueError("x entries must be pairwise distinct")
    if len(p) != k:
        raise ValueError("p must have the same length as x")
    b1 = [[x[i] if i == j else Fraction(0) for j in range(k)] for i in range(k)]
    b2 = [
        [p[i] if i == j else tau / (x[j] - x[i]) for j in range(k)]
        for i in range(k)
    ]
    I = [[Fraction(1)] for _ in range(k)]
    J = [[tau for _ in range(k)]]
    return QuiverData(quiver, (k,), (1,), (tuple(map(tuple, b1)), tuple(map(tuple, b2))),
                      (tuple(map(tuple, I)),), (tuple(map(tuple, J)),), (tau,))


def cycle_point(quiver: McKayQuiver, tau) -> QuiverData:
    """Explicit moment-map solution on the affine A_{n-1} cycle with v = delta
    and w = e_0: the directed cycle of y-arrows is set to 1 and the x-arrows
    carry telescoping partial sums of tau; I_0 = 1 and J_0 = sum(tau)."""
    fam = quiver.table.descriptor.family
    n = quiver.n_vertices
    if fam != "cyclic" or n < 2:
        raise ValueError("cycle_point needs a cyclic group of order >= 2")
    tau = [Fraction(t) for t in tau]
    if len(tau) != n:
        raise ValueError("tau length mismatch")
    v = tuple(1 for _ in range(n))
    w = tuple(1 if i == 0 else 0 for i in range(n))
    total = sum(tau)
    # x-arrow out of vertex j goes to j-1 (mod n); solve X_{j+1} - X_j = tau_j - [j=0] J0
    X = [Fraction(0)] * n
    for j in range(0, n - 1):
        X[j + 1] = X[j] + tau[j] - (total if j == 0 else 0)
    B = [None] * len(quiver.arrows)
    for a in quiver.arrows:
        B[a.index] = ((Fraction(1),),) if a.letter == "y" else ((X[a.src],),)
    # I_i is v_i x w_i, J_i is w_i x v_i; only vertex 0 is framed
    I = tuple(
        tuple(tuple(Fraction(1) for _ in range(w[i])) for _ in range(v[i]))
        for i in range(n)
    )
    J = tuple(
        tuple(tuple(total for _ in range(v[i])) for _ in range(w[i]))
        for i in range(n)
    )
    return QuiverData(quiver, v, w, tuple(B), I, J, tuple(tau))


def random_data(quiver: McKayQuiver, v, w, tau, seed=0, max_num=3, denoms=(1, 1, 2, 3)) -> QuiverData:
    """Seeded random triple with small-denominator rational entries."""
    rng = random.Random(seed)

    def entry():
        return Fraction(rng.randint(-max_num, max_num), rng.choice(denoms))

    def matrix(r, c):
        return tuple(tuple(entry() for _ in range(c)) for _ in range(r))

    v, w = tuple(v), tuple(w)
    B = tuple(matrix(v[a.dst], v[a.src]) for a in quiver.arrows)
    I = tuple(matrix(v[i], w[i]) for i in range(quiver.n_vertices))
    J = tuple(matrix(w[i], v[i]) for i in range(quiver.n_vertices))
    return QuiverData(quiver, v, w, B, I, J, tuple(Fraction(t) for t in tau))


def random_gauge(d: QuiverData, seed=0) -> GaugeElement:
    """Seeded random gauge element (invertible blocks, small entries)."""
    rng = random.Random(seed)
    blocks = []
    for i in range(d.quiver.n_vertices):
        n = d.v[i]
        while True:
            m = [[Fraction(rng.randint(-2, 2), rng.choice((1, 1, 2))) for _ in range(n)] for _ in range(n)]
            for r in range(n):
                if m[r][r] == 0:
                    m[r][r] = Fraction(1)
            if n == 0 or det(m) != 0:
                break
        blocks.append(tuple(tuple(row) for row in m))
    return GaugeElement(tuple(blocks))


def expected_dim(quiver: McKayQuiver, v, w) -> int:
    """Free-quotient dimension count 2*sum_Q v.v + 2*sum v.w - 2*sum v^2."""
    arrows = quiver.chosen_arrows
    return (
        2 * sum(v[a.src] * v[a.dst] for a in arrows)
        + 2 * sum(vi * wi for vi, wi in zip(v, w))
        - 2 * sum(vi * vi for vi in v)
    )


def moment_jacobian_rank(d: QuiverData) -> int:
    """Exact rank of the derivative of the moment map at d."""
    q = d.quiver
    n = q.n_vertices
    # codomain coordinates: (vertex i, row r, col c) with r, c < v_i
    cod_offset, total_cod = [], 0
    for i in range(n):
        cod_offset.append(total_cod)
        total_cod += d.v[i] * d.v[i]
    cols = []

    def pack(per_vertex):
        col = [Fraction(0)] * total_cod
        for i, m in enumerate(per_vertex):
            off = cod_offset[i]
            for r in range(d.v[i]):
                for c in range(d.v[i]):
                    col[off + r * d.v[i] + c] = m[r][c]
        return col

    def mu_linearized(dB, dI, dJ):
        out = []
        for i in range(n):
            m = zeros(d.v[i], d.v[i])
            for a in q.arrows:
                if a.dst != i:
                    continue
                rev = q.reverse(a)
                term = mat_mul(dB[a.index], d.b_mat(rev))
                term2 = mat_mul(d.b_mat(a), dB[rev.index])
                s = 1 if a.letter == "x" else -1
                for r in range(d.v[i]):
                    for c in range(d.v[i]):
                        m[r][c] += s * (term[r][c] + term2[r][c])
            if d.w[i]:
                t1 = mat_mul(dI[i], d.j_mat(i))
                t2 = mat_mul(d.i_mat(i), dJ[i])
                for r in range(d.v[i]):
                    for c in range(d.v[i]):
                        m[r][c] += t1[r][c] + t2[r][c]
            out.append(m)
        return out

    zeroB = [zeros(d.v[a.dst], d.v[a.src]) for a in q.arrows]
    zeroI = [zeros(d.v[i], d.w[i]) for i in range(n)]
    zeroJ = [zeros(d.w[i], d.v[i]) for i in range(n)]
    for a in q.arrows:
        for r in range(d.v[a.dst]):
            for c in range(d.v[a.src]):
                dB = [m if k != a.index else _unit(d.v[a.dst], d.v[a.src], r, c) for k, m in enumerate(zeroB)]
                cols.append(pack(mu_linearized(dB, zeroI, zeroJ)))
    for i in range(n):
        for r in range(d.v[i]):
            for c in range(d.w[i]):
                dI = [m if k != i else _unit(d.v[i], d.w[i], r, c) for k, m in enumerate(zeroI)]
                cols.append(pack(mu_linearized(zeroB, dI, zeroJ)))
        for r in range(d.w[i]):
            for c in range(d.v[i]):
                dJ = [m if k != i else _unit(d.w[i], d.v[i], r, c) for k, m in enumerate(zeroJ)]
                cols.append(pack(mu_linearized(zeroB, zeroI, dJ)))
    if not cols:
        return 0
    return rank([list(col) for col in zip(*cols)])


def _unit(r, c, i, j):
    m = zeros(r, c)
    m[i][j] = Fraction(1)
    return m


def cm_commutator_certificate(d: QuiverData):
    """[B1, B2] - tau*Id and its rank (trivial group only)."""
    if d.quiver.table.descriptor.family != "trivial":
        raise ValueError("certificate only defined over the trivial group")
    b1, b2 = d.b_mat(d.quiver.arrows[0]), d.b_mat(d.quiver.arrows[1])
    comm = mat_sub(mat_mul(b1, b2), mat_mul(b2, b1))
    for i in range(len(comm)):
        comm[i][i] -= d.tau[0]
    return comm, rank(comm)


def verify_report(d: QuiverData):
    """Certificate record used by the CLI verify command."""
    res = moment_residual(d)
    res_zero = all(all(x == 0 for row in m for x in row) for m in res)
    stable, _ = is_stable(d)
    costable, _ = is_costable(d)
    report = {
        "group": str(d.quiver.table.descriptor),
        "v": list(d.v),
        "w": list(d.w),
        "tau": [str(t) for t in d.tau],
        "residual_zero": res_zero,
        "residual": [[[str(x) for x in row] for row in m] for m in res],
        "stable": stable,
        "costable": costable,
        "expected_dim": expected_dim(d.quiver, d.v, d.w),
        "moment_jacobian_rank": moment_jacobian_rank(d),
    }
    if d.quiver.table.descriptor.family == "trivial" and d.v[0] > 0:
        _, r = cm_commutator_certificate(d)
        report["commutator_minus_tau_rank"] = r
    return report
