import pytest

from higherlim import corpus as cp
from higherlim import fp


def test_d5_truncation(d5_f16):
    D5, M = d5_f16
    assert D5.order() == 10 and M.dim == 4 and M.p == 2


def test_gamma0_level_zero():
    G, M = cp.hgm_truncate(cp.family("hgm-gamma0"), 0)
    assert G.order() == 2 and M.dim == 0


def test_h_level_two():
    G, M = cp.hgm_truncate(cp.family("hgm-h"), 2)
    assert G.order() == 225 and G.is_abelian()
    assert all(g.order() in (1, 3, 5, 15) for g in G.elements)
    assert M.dim == 8
    assert M.fixed_dim(G.whole()) == 0


def test_family_validation():
    with pytest.raises(ValueError):
        cp.HGMFamily(member="Z")
    with pytest.raises(ValueError):
        cp.HGMFamily(u=3)        # 3 divides |F0^x|
    with pytest.raises(ValueError):
        cp.family("nope")


def test_inclusion_is_compatible():
    f = cp.family("hgm-gamma*")
    h, P = cp.truncation_inclusion(f, 1)
    A, B = cp.hgm_truncate(f, 1), cp.hgm_truncate(f, 2)
    assert h.is_injective()
    Mb = B[1].pullback(A[0], h)
    for g in A[0].generators:
        lhs = fp.matmul(P, Mb.matrix(g), 2)
        rhs = fp.matmul(A[1].matrix(g), P, 2)
        assert (lhs == rhs).all()


def test_wreath_small():
    T = cp.wreath_tower(2, 2)
    assert [P.order() for P in T.P] == [2, 8, 128]
    checks = cp.wreath_checks(T, stages=[0, 1, 2])
    assert checks and all(c["pass"] for c in checks)
    T3 = cp.wreath_tower(3, 1)
    assert [P.order() for P in T3.P] == [3, 81]
    assert all(c["pass"] for c in cp.wreath_checks(T3))


def test_run_suite_unknown():
    r = cp.run_suite("")
    assert r["pass"] is False and r["count"] == 0 and "error" in r
    assert cp.run_suite("no-such-suite")["pass"] is False


def test_run_suite_small():
    r = cp.run_suite("reduction")
    assert r["pass"] and r["count"] == len(r["instances"]) and not r["failures"]
