from fractions import Fraction

import pytest

from quiverplane.chartable import GroupDescriptor, build_group
from quiverplane.linalg import mat_mul, mat_sub
from quiverplane.mckay import is_generic, mckay_quiver
from quiverplane.quiverdata import (
    GaugeElement,
    QuiverData,
    act,
    cm_commutator_certificate,
    cm_point,
    cycle_point,
    expected_dim,
    is_costable,
    is_stable,
    moment_jacobian_rank,
    moment_residual,
    random_data,
    random_gauge,
    residual_is_zero,
    transpose_dual,
    verify_report,
)

TRIV = mckay_quiver(build_group(GroupDescriptor("trivial")))


def cyclic(n):
    return mckay_quiver(build_group(GroupDescriptor("cyclic", n)))


def test_zero_data_zero_tau():
    d = random_data(TRIV, (2,), (1,), (0,), seed=1)
    zero = QuiverData(
        TRIV, (2,), (1,),
        tuple(tuple(tuple(Fraction(0) for _ in row) for row in m) for m in d.B),
        tuple(tuple(tuple(Fraction(0) for _ in row) for row in m) for m in d.I),
        tuple(tuple(tuple(Fraction(0) for _ in row) for row in m) for m in d.J),
        (0,),
    )
    assert residual_is_zero(zero)


def test_trivial_group_scalar_residual():
    # v = 1: the commutator of scalars vanishes, residual = iota*kappa - tau
    d = QuiverData(
        TRIV, (1,), (1,),
        (((Fraction(5),),), ((Fraction(7),),)),
        (((Fraction(2),),),),
        (((Fraction(3),),),),
        (Fraction(4),),
    )
    res = moment_residual(d)
    assert res[0][0][0] == 2 * 3 - 4


@pytest.mark.parametrize("k,tau", [(1, 1), (2, 1), (3, 2), (4, Fraction(2, 3))])
def test_cm_point(k, tau):
    x = [Fraction(i) for i in range(k)]
    p = [Fraction(0)] * k
    d = cm_point(TRIV, x, p, tau)
    assert residual_is_zero(d)
    _, r = cm_commutator_certificate(d)
    assert r == 1
    assert is_stable(d)[0]
    assert is_costable(d)[0]


def test_cm_point_validation():
    with pytest.raises(ValueError):
        cm_point(TRIV, [1, 1], [0, 0], 1)
    with pytest.raises(ValueError):
        cm_point(TRIV, [0, 1], [0, 0], 0)


def test_cm_point_k1_matches_spec():
    d = cm_point(TRIV, [Fraction(5)], [Fraction(9)], Fraction(7))
    assert d.I[0][0][0] == 1 and d.J[0][0][0] == 7
    assert residual_is_zero(d)


@pytest.mark.parametrize("n,tau", [
    (2, (0, 0)),
    (2, (1, -1)),
    (3, (1, 1, 1)),
    (4, (1, Fraction(1, 3), Fraction(1, 5), Fraction(1, 7))),
])
def test_cycle_point(n, tau):
    q = cyclic(n)
    d = cycle_point(q, tau)
    assert residual_is_zero(d)
    assert is_stable(d)[0]
    assert d.J[0][0][0] == sum(Fraction(t) for t in tau)


def test_cycle_point_examples_from_zero_tau():
    q = cyclic(2)
    d = cycle_point(q, (0, 0))
    # all x-arrows vanish, J = 0, and the data is stable but not costable
    xs = [d.B[a.index][0][0] for a in q.arrows if a.letter == "x"]
    assert all(x == 0 for x in xs)
    assert d.J[0][0][0] == 0
    assert is_stable(d)[0]
    assert not is_costable(d)[0]


def test_unstable_when_I_zero():
    d = random_data(TRIV, (2,), (1,), (0,), seed=3)
    zeroI = QuiverData(d.quiver, d.v, d.w, d.B,
                       (((Fraction(0),), (Fraction(0),)),), d.J, d.tau)
    verdict, cert = is_stable(zeroI)
    assert not verdict
    assert all(s.dim == 0 for s in cert)


def test_not_costable_when_J_zero():
    d = random_data(TRIV, (2,), (1,), (0,), seed=4)
    zeroJ = QuiverData(d.quiver, d.v, d.w, d.B, d.I,
                       (((Fraction(0), Fraction(0)),),), d.tau)
    verdict, _ = is_costable(zeroJ)
    assert not verdict


def test_costable_when_J_injective():
    d = QuiverData(
        TRIV, (1,), (1,),
        (((Fraction(2),),), ((Fraction(3),),)),
        (((Fraction(0),),),),
        (((Fraction(1),),),),
        (0,),
    )
    assert is_costable(d)[0]


@pytest.mark.parametrize("seed", range(6))
def test_gauge_equivariance(seed):
    q = cyclic(3)
    d = random_data(q, (2, 1, 2), (1, 0, 1), (1, 0, -1), seed=seed)
    g = random_gauge(d, seed=seed + 100)
    gd = act(g, d)
    res, gres = moment_residual(d), moment_residual(gd)
    for i in range(q.n_vertices):
        gm = [list(row) for row in g.g[i]]
        from quiverplane.linalg import inverse
        conj = mat_mul(mat_mul(gm, res[i]), inverse(gm))
        assert conj == gres[i]
    assert is_stable(d)[0] == is_stable(gd)[0]
    assert is_costable(d)[0] == is_costable(gd)[0]


def test_gauge_identity():
    d = random_data(TRIV, (2,), (1,), (1,), seed=9)
    g = GaugeElement((((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))),))
    assert act(g, d) == d


def test_duality_stable_costable():
    for seed in range(5):
        d = random_data(cyclic(2), (2, 1), (1, 1), (1, -1), seed=seed)
        assert is_costable(d)[0] == is_stable(transpose_dual(d))[0]


def test_expected_dim():
    assert expected_dim(TRIV, (3,), (1,)) == 6
    assert expected_dim(TRIV, (0,), (1,)) == 0
    for n in (2, 3, 5):
        q = cyclic(n)
        assert expected_dim(q, (1,) * n, (1,) + (0,) * (n - 1)) == 2


def test_jacobian_ranks():
    d = cm_point(TRIV, [0, 1], [0, 0], 1)
    assert moment_jacobian_rank(d) == 4
    z = QuiverData(TRIV, (1,), (0,),
                   (((Fraction(0),),), ((Fraction(0),),)),
                   ((tuple(),),), (tuple(),), (0,))
    assert moment_jacobian_rank(z) == 0
    q = cyclic(3)
    tau = (1, Fraction(1, 3), Fraction(1, 7))
    assert is_generic(q, tau)
    assert moment_jacobian_rank(cycle_point(q, tau)) == 3


def test_stability_closure_bound():
    # closure must stabilize within sum(v) rounds: run on a chain-feeding case
    q = cyclic(4)
    d = cycle_point(q, (1, 1, 1, 1))
    verdict, cert = is_stable(d)
    assert verdict and all(s.dim == 1 for s in cert)


def test_serialization_roundtrip():
    q = cyclic(3)
    d = random_data(q, (1, 2, 1), (1, 0, 0), (1, 0, -1), seed=11)
    doc = d.to_json()
    d2 = QuiverData.from_json(doc, q)
    assert d2 == d


def test_verify_report_fields():
    d = cm_point(TRIV, [0, 1], [0, 0], 1)
    rep = verify_report(d)
    assert rep["residual_zero"] and rep["stable"] and rep["costable"]
    assert rep["commutator_minus_tau_rank"] == 1
    assert rep["expected_dim"] == 4
    assert rep["moment_jacobian_rank"] == 4
