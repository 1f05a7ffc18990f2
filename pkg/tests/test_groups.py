import itertools

import pytest
from hypothesis import given, settings, strategies as st

from higherlim import groups as grp
from higherlim.suites import alternating4


def brute_normalizer(G, H):
    Hs = H.element_set
    return {g for g in G.elements if {g * h * g.inverse() for h in Hs} == Hs}


def test_orders(S3):
    assert grp.cyclic_group(1).order() == 1
    assert S3.order() == 6
    assert grp.wreath_Cp(grp.cyclic_group(2), 2).group.order() == 8
    W = grp.wreath_Cp(grp.wreath_Cp(grp.cyclic_group(2), 2).group, 2)
    assert W.group.order() == 128


def test_group_closure(S4):
    els = S4.element_set
    assert S4.identity in els
    assert all(g.inverse() in els for g in els)
    assert all(a * b in els for a, b in itertools.product(S4.elements, repeat=2))


def test_perm_composition_convention():
    a = grp.Perm.from_cycles([(0, 1)], 3)
    b = grp.Perm.from_cycles([(1, 2)], 3)
    # (a*b)(x) = a(b(x))
    assert all((a * b)(x) == a(b(x)) for x in range(3))


def test_normalizer_examples(S3, S4):
    H = grp.generated(S3, [grp.Perm.from_cycles([(0, 1)], 3)])
    assert grp.normalizer(S3, H).order() == 2
    assert grp.normalizer(S3, S3.whole()).order() == 6
    D5 = grp.dihedral_group(5)
    S = grp.sylow_p(D5, 2)
    assert grp.normalizer(D5, S).element_set == brute_normalizer(D5, S)
    assert grp.normalizer(D5, S).order() == 2


def test_normal_core(S3, S4):
    H = grp.generated(S3, [grp.Perm.from_cycles([(0, 1)], 3)])
    assert grp.normal_core(S3, H).order() == 1
    D8 = grp.sylow_p(S4, 2)
    core = grp.normal_core(S4, D8)
    assert core.order() == 4 and grp.is_normal(S4, core)
    A3 = grp.sylow_p(S3, 3)
    assert grp.normal_core(S3, A3).element_set == A3.element_set


def test_p_subgroups_counts(S3, S4):
    assert len(grp.p_subgroups(grp.cyclic_group(3), 2)) == 1
    assert [H.order() for H in grp.p_subgroups(S3, 3)] == [1, 3]
    subs = grp.p_subgroups(S4, 2)
    by_order = {}
    for H in subs:
        by_order[H.order()] = by_order.get(H.order(), 0) + 1
    assert by_order == {1: 1, 2: 9, 4: 7, 8: 3}


def test_p_subgroups_conjugation_closed(S4):
    subs = grp.p_subgroups(S4, 2)
    sets = {H.element_set for H in subs}
    for H in subs:
        for g in S4.generators:
            assert H.conjugate(g).element_set in sets


def test_sylow_orders(S4):
    assert grp.sylow_p(grp.cyclic_group(6), 2).order() == 2
    assert grp.sylow_p(S4, 2).order() == 8
    assert grp.sylow_p(grp.dihedral_group(5), 2).order() == 2
    A4 = alternating4()
    for p in (2, 3):
        assert grp.sylow_p(A4, p).order() == grp.p_part(12, p)


def test_op_subgroup(S3, S4):
    assert grp.op_subgroup(S4, 2).order() == 4
    assert grp.op_subgroup(S3, 3).order() == 3
    assert grp.op_subgroup(S3, 2).order() == 1
    assert grp.op_subgroup(grp.dihedral_group(5), 2).order() == 1


def test_semidirect():
    C5, C2 = grp.cyclic_group(5), grp.cyclic_group(2)
    x = C5.generators[0]
    D = grp.semidirect(C5, C2, {C2.generators[0]: {x: x ** -1}})
    assert D.group.order() == 10 and not D.group.is_abelian()
    T = grp.semidirect(C5, C2, {C2.generators[0]: {x: x}})
    assert T.group.order() == 10 and T.group.is_abelian()


def test_wreath_base_factor():
    W = grp.wreath_Cp(grp.cyclic_group(2), 2)
    assert W.group.degree == 4
    g = grp.cyclic_group(2).generators[0]
    base = grp.generated(W.group, [W.base_embedding(g, 0)])
    assert base.order() == 2


def test_centralizer_of_module(d5_f16):
    from higherlim.gmodules import trivial_module
    D5, M = d5_f16
    assert grp.centralizer_of_module(D5, M).order() == 1
    assert grp.centralizer_of_module(D5, trivial_module(D5, 2)).order() == 10


def test_quotient_group(S4):
    V4 = grp.op_subgroup(S4, 2)
    Q = grp.quotient(S4, V4)
    assert Q.group.order() == 6
    for g in S4.generators:
        assert Q.project(Q.lift(Q.project(g))) == Q.project(g)


def test_strict_normalizer_growth_in_p_groups():
    # proper subgroups of a p-group are properly contained in their normalizers
    P = grp.wreath_Cp(grp.cyclic_group(2), 2).group
    for Q in grp.p_subgroups(P, 2):
        if Q.order() < P.order():
            assert grp.normalizer(P, Q).order() > Q.order()


@settings(max_examples=30, deadline=None)
@given(st.permutations(range(5)), st.permutations(range(5)))
def test_perm_group_axioms(a, b):
    a, b = grp.Perm(a), grp.Perm(b)
    assert (a * b).inverse() == b.inverse() * a.inverse()
    assert (a * a.inverse()).is_identity()
    assert (a ** a.order()).is_identity()


@settings(max_examples=20, deadline=None)
@given(st.lists(st.permutations(range(4)), min_size=1, max_size=2))
def test_normal_core_properties(gens):
    S4 = grp.symmetric_group(4)
    H = grp.generated(S4, [grp.Perm(g) for g in gens])
    core = grp.normal_core(S4, H)
    assert core.element_set <= H.element_set
    assert grp.is_normal(S4, core)
    assert grp.normalizer(S4, H).element_set == brute_normalizer(S4, H)


def test_enumeration_bound_refuses(monkeypatch):
    monkeypatch.setattr(grp, "ENUMERATION_BOUND", 100)
    with pytest.raises(grp.GroupTooLarge):
        grp.symmetric_group(6).elements
