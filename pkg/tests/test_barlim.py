from higherlim import groups as grp
from higherlim import orbitcat as oc
from higherlim.barlim import bar_complex, higher_limits, lim0_direct
from higherlim.gmodules import (atomic_functor, coinduced_functor, constant_functor,
                                fixedpoint_functor, permutation_module, trivial_module,
                                zero_functor)
from higherlim.spectral import group_cohomology


def one_object(G):
    return oc.OrbitCategory(G, [G.trivial_subgroup()])


def test_zero_functor(S3):
    C = oc.p_orbit_category(S3, 3)
    assert higher_limits(C, zero_functor(C, 3), 4).dims == [0, 0, 0, 0]


def test_c2_classifying_space():
    C2 = grp.cyclic_group(2)
    C = one_object(C2)
    cx = bar_complex(C, atomic_functor(C, trivial_module(C2, 2)), 4)
    assert cx.dims == [1, 1, 1, 1, 1]
    assert cx.check_dd()
    assert group_cohomology(C2, trivial_module(C2, 2), 4) == [1, 1, 1, 1]
    assert group_cohomology(grp.cyclic_group(3), trivial_module(grp.cyclic_group(3), 2), 4) == [1, 0, 0, 0]


def test_chain_bookkeeping(S3):
    C = oc.p_orbit_category(S3, 3)
    cx = bar_complex(C, atomic_functor(C, trivial_module(S3, 3)), 3)
    assert cx.dims[0] == 1
    assert cx.check_dd()


def test_terminal_object(S3):
    # the subgroup C_3 of S3 is terminal in O_3(S3)
    C = oc.p_orbit_category(S3, 3)
    c3 = 1 - C.trivial_object()
    C3only = oc.OrbitCategory(S3, [C.objects[c3]])
    assert higher_limits(C3only, constant_functor(C3only, 1, 3), 4).dims == [1, 0, 0, 0]


def test_normalized_equals_full(S3):
    C = oc.p_orbit_category(S3, 2)
    M = permutation_module(S3, 2)
    for Phi in (atomic_functor(C, M), fixedpoint_functor(C, M), constant_functor(C, 1, 2)):
        a = higher_limits(C, Phi, 3, method="bar").dims
        b = higher_limits(C, Phi, 3, method="bar", normalized=False).dims
        c = higher_limits(C, Phi, 3, method="resolution").dims
        assert a == b == c


def test_cohomology_s3_f3(S3):
    assert group_cohomology(S3, trivial_module(S3, 3), 6) == [1, 0, 0, 1, 1, 0]


def test_coinduced_acyclic(S4):
    C = oc.p_orbit_category(S4, 2)
    for c in range(C.n_objects):
        assert higher_limits(C, coinduced_functor(C, c, 1, 2), 4).dims == [1, 0, 0, 0]


def test_cp_vanishes():
    for p in (2, 3, 5):
        G = grp.cyclic_group(p)
        C = oc.p_orbit_category(G, p)
        assert higher_limits(C, atomic_functor(C, trivial_module(G, p)), 4).dims == [0] * 4


def test_lim0_direct_fixed_points(S4):
    C = oc.p_orbit_category(S4, 2)
    d, basis = lim0_direct(C, fixedpoint_functor(C, permutation_module(S4, 2)))
    assert d == 1
