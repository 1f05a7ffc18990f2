import pytest

from higherlim import groups as grp
from higherlim.gmodules import permutation_module, trivial_module
from higherlim.lambdas import (SHORTCUT_OP, lambda1_sylow_order_p, lambda_, lambda_X,
                               shortcut_Op_vanishing, vanishing_bound_check)
from higherlim.suites import sign_module


def test_trivial_group():
    G = grp.cyclic_group(1)
    assert lambda_(G, 2, trivial_module(G, 2, 1), 4).dims == [1, 0, 0, 0]
    assert lambda_(G, 2, trivial_module(G, 2, 3), 4).dims == [3, 0, 0, 0]


@pytest.mark.parametrize("p", [2, 3, 5])
def test_cyclic_p(p):
    G = grp.cyclic_group(p)
    assert lambda_(G, p, trivial_module(G, p), 4).dims == [0, 0, 0, 0]


def test_hgm_d5(d5_f16):
    D5, M = d5_f16
    exact = lambda_(D5, 2, M, 4)
    assert exact.dims == [0, 2, 0, 0]
    short = lambda1_sylow_order_p(D5, 2, M, 4)
    assert short.dims == exact.dims


def test_lambda_X_requires_trivial_subgroup(S3):
    with pytest.raises(ValueError):
        lambda_X(S3, [grp.sylow_p(S3, 3)], trivial_module(S3, 3), 3)


def test_lambda_X_trivial_only_is_cohomology(S3):
    M = trivial_module(S3, 3)
    assert lambda_X(S3, [S3.trivial_subgroup()], M, 4).dims == [1, 0, 0, 1]


def test_op_shortcut_agrees(S4, S3):
    for G, p, M in [(S4, 2, trivial_module(S4, 2)), (S3, 3, sign_module(S3, 3)),
                    (S4, 2, permutation_module(S4, 2))]:
        fast = lambda_(G, p, M, 4, shortcuts=True)
        assert fast.provenance == [SHORTCUT_OP] * 4
        assert fast.dims == lambda_(G, p, M, 4).dims == [0, 0, 0, 0]
        assert shortcut_Op_vanishing(G, p, M, 4) is not None


def test_sylow_order_p_rejects_large_sylow(S4):
    with pytest.raises(ValueError):
        lambda1_sylow_order_p(S4, 2, trivial_module(S4, 2), 3)


def test_vanishing_bound(S3):
    r = vanishing_bound_check(S3, 2, permutation_module(S3, 2), 4)
    assert r["sylow_exponent"] == 1 and r["pass"]


def test_methods_agree(d5_f16):
    D5, M = d5_f16
    assert lambda_(D5, 2, M, 3, method="bar").dims == lambda_(D5, 2, M, 3, method="resolution").dims
