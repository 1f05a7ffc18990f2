import numpy as np
import pytest

from higherlim import fp
from higherlim import groups as grp
from higherlim import orbitcat as oc
from higherlim.barlim import higher_limits, lim0_direct
from higherlim.gmodules import (FpGModule, atomic_functor, coinduced_functor, constant_functor,
                                fixedpoint_functor, nat_transformations, permutation_module,
                                restrict_functor, trivial_module)


def test_module_must_be_homomorphism(S3):
    bad = [np.array([[1, 1], [0, 1]]), np.eye(2, dtype=np.int64)]
    with pytest.raises(ValueError):
        FpGModule(S3, 5, bad)


def test_fixed_points_hgm(d5_f16):
    D5, M = d5_f16
    assert M.fixed_dim(D5.trivial_subgroup()) == 4
    S = grp.sylow_p(D5, 2)
    assert M.fixed_dim(S) == 2
    U = grp.sylow_p(D5, 5)
    assert M.fixed_dim(U) == 0


def test_atomic_functor(d5_f16):
    D5, M = d5_f16
    C = oc.p_orbit_category(D5, 2)
    Phi = atomic_functor(C, M)
    one = C.trivial_object()
    assert Phi.dims[one] == 4 and sum(Phi.dims) == 4
    homs = C.hom(one, one)
    assert len(homs) == 10
    for f in homs:
        assert np.array_equal(Phi.matrix(f), M.matrix(f.rep.inverse()))
    assert Phi.check_functoriality()


def test_fixedpoint_functor(d5_f16, S3):
    D5, M = d5_f16
    C = oc.p_orbit_category(D5, 2)
    Phi = fixedpoint_functor(C, M)
    one = C.trivial_object()
    assert Phi.dims[one] == 4 and Phi.dims[1 - one] == 2
    assert Phi.check_functoriality()
    # agrees with the atomic functor on Mor(1, 1)
    A = atomic_functor(C, M)
    for f in C.hom(one, one):
        assert np.array_equal(Phi.matrix(f), A.matrix(f))
    C3 = oc.p_orbit_category(S3, 3)
    T = fixedpoint_functor(C3, trivial_module(S3, 3))
    assert T.dims == [1, 1]
    assert all(np.array_equal(T.matrix(f), fp.identity(1)) for f in C3.morphisms())


def test_coinduced_functor(S3):
    C = oc.p_orbit_category(S3, 3)
    one = C.trivial_object()
    c3 = 1 - one
    Phi = coinduced_functor(C, c3, 1, 3)
    assert Phi.dims[c3] == 2 and Phi.dims[one] == 0
    assert Phi.check_functoriality()
    G1 = oc.OrbitCategory(S3, [S3.trivial_subgroup()])
    assert coinduced_functor(G1, 0, 1, 3).dims == [6]


def test_constant_functor_one_object_trivial_group():
    G = grp.cyclic_group(1)
    C = oc.OrbitCategory(G, [G.trivial_subgroup()])
    a, b = constant_functor(C, 1, 2), coinduced_functor(C, 0, 1, 2)
    assert a.dims == b.dims
    assert np.array_equal(a.matrix(C.identity(0)), b.matrix(C.identity(0)))


def test_nat_transformations_adjunction(S4):
    C = oc.p_orbit_category(S4, 2)
    M = permutation_module(S4, 2)
    const = constant_functor(C, 1, 2)
    for Phi in (fixedpoint_functor(C, M), atomic_functor(C, M), coinduced_functor(C, 3, 1, 2)):
        assert nat_transformations(const, Phi) == lim0_direct(C, Phi)[0]
        assert nat_transformations(const, Phi) == higher_limits(C, Phi, 1).dims[0]


def test_coinduced_corepresents(S3):
    # Nat(Phi, I_c^{M0}) = dim Phi(c) * dim M0
    C = oc.p_orbit_category(S3, 2)
    M = permutation_module(S3, 2)
    Phi = fixedpoint_functor(C, M)
    for c in range(C.n_objects):
        for m0 in (1, 2):
            assert nat_transformations(Phi, coinduced_functor(C, c, m0, 2)) == Phi.dims[c] * m0


def test_restrict_functor(S4):
    C = oc.OrbitCategory(S4, grp.p_subgroups(S4, 2))
    Phi = fixedpoint_functor(C, permutation_module(S4, 2))
    R = restrict_functor(Phi, list(range(C.n_objects)))
    assert R.dims == Phi.dims
    O = grp.op_subgroup(S4, 2).element_set
    X0 = [i for i, P in enumerate(C.objects) if O <= P.element_set]
    assert len(X0) == 4   # V4 and the three D4
    with pytest.raises(ValueError):
        restrict_functor(Phi, [1])   # a single order-2 subgroup is not conjugation closed
