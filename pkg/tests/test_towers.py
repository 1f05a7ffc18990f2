import numpy as np
import pytest

from higherlim import corpus as cp
from higherlim import fp
from higherlim import towers as tw
from higherlim.barlim import higher_limits
from higherlim.gmodules import trivial_module


def test_poset_axioms():
    P = tw.FinitePoset.chain(3)
    assert P.n_objects == 4 and P.is_directed()
    assert len(P.hom(0, 2)) == 1 and len(P.hom(2, 0)) == 0
    with pytest.raises(ValueError):
        tw.FinitePoset([0, 1], lambda a, b: True)          # not antisymmetric
    with pytest.raises(ValueError):
        tw.FinitePoset([0, 1, 2], lambda a, b: a == b or (a, b) in {(0, 1), (1, 2)})


def identity_tower(d, N, p=2):
    return tw.TowerWindow([d] * (N + 1), [fp.identity(d)] * N, p)


def test_window_lim_identity_and_zero():
    T = identity_tower(2, 3)
    d, basis = tw.window_lim(T)
    assert d == 2 and basis.shape == (8, 2)
    Z = tw.TowerWindow([2, 2, 2], [fp.zeros(2, 2)] * 2, 2)
    assert tw.window_lim(Z)[0] == 2        # a finite chain has a maximum
    assert Z.stable_images() == [True, True]
    U = tw.TowerWindow([2, 2, 2], [fp.identity(2), fp.zeros(2, 2)], 2)
    assert U.stable_images() == [False, True]


def test_chain_poset_limits():
    # over a chain with a maximum, lim is the top value and lim^i = 0 for i > 0
    T = tw.TowerWindow([1, 2, 3], [np.array([[1, 0]]), np.array([[1, 0, 0], [0, 1, 0]])], 2)
    P, Phi = T.functor()
    assert higher_limits(P, Phi, 3).dims == [3, 0, 0]


def test_constant_tower_stabilizes():
    T = identity_tower(1, 4)
    cert = tw.certify(T, tw.STABILIZING)
    rep = tw.classify_lim1(T, cert)
    assert rep["classification"] == "ZERO" and rep["lim1"] == 0
    assert rep["extrapolation"] == tw.EXTRAPOLATION_TAG


def test_dimension_law():
    assert str(tw.DimensionLaw.fit([0, 4, 8, 12])) == "4n+0"
    assert tw.DimensionLaw.fit([0, 1, 3]) is None


def test_certificate_contradictions():
    T = identity_tower(1, 3)
    with pytest.raises(tw.CertificateError):
        tw.GrowthCertificate(tw.STABILIZING, tw.DimensionLaw(1, 1), True).verify(T)
    with pytest.raises(tw.CertificateError):
        tw.certify(T, tw.UNBOUNDED_QUOTIENT)
    Z = tw.TowerWindow([1, 1, 1], [fp.zeros(1, 1)] * 2, 2)
    with pytest.raises(tw.CertificateError):
        tw.GrowthCertificate(tw.STABILIZING, tw.DimensionLaw(0, 1), True).verify(Z)
    with pytest.raises(tw.CertificateError):
        tw.classify_lim1(tw.TowerWindow([0, 1, 2], [np.array([]).reshape(0, 1),
                                                    np.array([[1, 0]])], 2),
                         tw.GrowthCertificate(tw.UNBOUNDED_QUOTIENT, tw.DimensionLaw(1, 0), True))


def test_h_module_quotient_tower():
    T = tw.module_quotient_tower("hgm-h", 2)
    assert T.dims == [0, 4, 8]
    cert = tw.certify(T, tw.UNBOUNDED_QUOTIENT)
    src = tw.DimensionLaw.fit(tw.source_law("hgm-h", 2))
    rep = tw.classify_lim1(T, cert, src)
    assert rep["classification"] == "NONZERO"


def test_gamma0_chain_orders():
    chain = tw.fin_truncation_chain("hgm-gamma0", 3)
    assert [G.order() for G in chain.groups] == [2, 10, 50, 250]
    for n in range(chain.top):
        assert chain.homs[n].is_injective()


def test_gamma0_lambda1_tower():
    T = tw.lambda_tower("hgm-gamma0", 1, 2)
    assert T.dims == [0, 2, 4]
    assert all(T.surjective())
    assert not any(T.meta["tail"])


def test_finite_family_constant_tower(S3):
    f = cp.FiniteFamily(S3, trivial_module(S3, 3), name="S3/F3")
    T = tw.lambda_tower(f, 0, 2, cross_check=False)
    assert T.dims == [0, 0, 0]
    r = tw.ses_check_countable(f, 1, 2)
    assert r["pass"] and r["lim1"]["classification"] == "ZERO"


def test_shortcut_compatibility():
    rows = tw.shortcut_compatibility("hgm-gamma0", 2)
    assert [r["lambda_rank"] for r in rows] == [r["shortcut_rank"] for r in rows]
    assert [r["dims"] for r in rows] == [r["shortcut_dims"] for r in rows]
