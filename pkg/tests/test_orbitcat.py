from higherlim import groups as grp
from higherlim import orbitcat as oc
from higherlim.gmodules import atomic_functor, fixedpoint_functor, permutation_module
from higherlim.barlim import higher_limits


def test_one_object_category_is_the_group(S3):
    C = oc.OrbitCategory(S3, [S3.trivial_subgroup()])
    assert C.n_objects == 1
    homs = C.hom(0, 0)
    assert {f.rep for f in homs} == S3.element_set
    a, b = S3.generators
    fa, fb = C.morphism(0, 0, a), C.morphism(0, 0, b)
    assert C.compose(fa, fb).rep == a * b


def test_sigma3_p3_hom_sets(S3):
    C = oc.p_orbit_category(S3, 3)
    one, c3 = C.trivial_object(), 1 - C.trivial_object()
    assert C.n_objects == 2
    assert len(C.hom(one, c3)) == 2
    assert len(C.hom(c3, c3)) == 2
    assert len(C.hom(c3, one)) == 0
    # automorphisms of C3 act on the 2-element set Mor(1, C3)
    for f in C.hom(one, c3):
        for g in C.hom(c3, c3):
            assert C.compose(g, f) in C.hom(one, c3)
    assert len(C.chains(1, nondegenerate=False)) == 6 + 2 + 2


def test_identity_law(S4):
    C = oc.p_orbit_category(S4, 2)
    for a in range(C.n_objects):
        for b in range(C.n_objects):
            for f in C.hom(a, b):
                assert C.compose(C.identity(b), f) == f
                assert C.compose(f, C.identity(a)) == f


def test_coset_count_formula(S4):
    C = oc.OrbitCategory(S4, grp.p_subgroups(S4, 2))
    assert C.n_objects == 20
    for a in range(0, C.n_objects, 3):
        for b in range(C.n_objects):
            assert len(C.hom(a, b)) * C.objects[b].order() == C.transporter_size(a, b)


def test_canonical_reps_are_minimal(S3):
    C = oc.p_orbit_category(S3, 3)
    for f in C.morphisms():
        K = C.objects[f.target]
        assert f.rep == min(k * f.rep for k in K.elements)


def test_skeleton_sizes(S3, S4):
    assert oc.p_orbit_category(S4, 2).n_objects == 7
    assert oc.p_orbit_category(S3, 3).n_objects == 2


def test_trivial_group_chains():
    G = grp.cyclic_group(1)
    C = oc.OrbitCategory(G, [G.trivial_subgroup()])
    assert len(C.chains(0)) == 1
    assert C.chains(1) == [] and C.chains(2) == []


def test_law_report_small_and_corrupted(S4):
    C = oc.p_orbit_category(S4, 2)
    r = oc.law_report(C)
    assert r["pass"] and r["compose_agrees"]
    # a category whose composition is broken must be caught
    bad = oc.p_orbit_category(S4, 2)
    orig = bad.compose

    def compose(f, g):
        h = orig(f, g)
        if h.source == h.target == 0 and not bad.is_identity(f) and not bad.is_identity(g):
            return bad.identity(0)
        return h

    bad.compose = compose
    assert not oc.law_report(bad)["pass"]


def test_check_epimorphisms(S3):
    assert oc.p_orbit_category(S3, 2).check_epimorphisms()


def test_skeleton_invariance(S4):
    full = oc.OrbitCategory(S4, grp.p_subgroups(S4, 2))
    sk = oc.skeleton(full)
    M = permutation_module(S4, 2)
    for make in (atomic_functor, fixedpoint_functor):
        assert higher_limits(full, make(full, M), 3).dims == higher_limits(sk, make(sk, M), 3).dims


def test_homomorphism_functor_is_functor(d5_f16):
    from higherlim import corpus as cp
    f = cp.family("hgm-gamma0")
    h, _ = cp.truncation_inclusion(f, 1)
    src = oc.p_orbit_category(h.source, 2)
    tgt = oc.p_orbit_category(h.target, 2)
    F = oc.homomorphism_functor(src, tgt, h)
    assert F.check()
