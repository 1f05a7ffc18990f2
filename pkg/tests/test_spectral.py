import pytest

from higherlim import groups as grp
from higherlim import spectral as sp
from higherlim.gmodules import trivial_module
from higherlim.lambdas import lambda_


def test_lhs_c4_over_c2():
    C4 = grp.cyclic_group(4)
    C2 = grp.generated(C4, [C4.generators[0] ** 2])
    T = trivial_module(C4, 2)
    page = sp.lhs_page(C4, C2, T, 4)
    assert page.grid == [[1] * 4] * 4
    ab = sp.group_cohomology(C4, T, 4)
    assert ab == [1, 1, 1, 1]
    assert all(c["agree"] for c in page.meta["choice_checks"])
    assert sp.convergence_check(page, ab)["pass"]


def test_lhs_whole_and_trivial_normal_subgroup(S3):
    T = trivial_module(S3, 3)
    ab = sp.group_cohomology(S3, T, 3)
    whole = sp.lhs_page(S3, S3, T, 3)
    assert whole.single_column() and [row[0] for row in whole.grid][0] == 1
    assert [whole[0, j] for j in range(3)] == ab
    triv = sp.lhs_page(S3, S3.trivial_subgroup(), T, 3)
    assert triv.single_row() and [triv[i, 0] for i in range(3)] == ab


def test_lambda_quotient_pages(d5_f16):
    D5, M = d5_f16
    ab = lambda_(D5, 2, M, 3).dims
    page = sp.e2_lambda_quotient(D5, D5, 2, M, 3)
    assert [page[0, j] for j in range(3)] == [0, 2, 0]
    assert sp.convergence_check(page, ab)["forced_collapse"]
    page = sp.e2_lambda_quotient(D5, D5.trivial_subgroup(), 2, M, 3)
    assert page[1, 0] == 2


def test_product_page(d5_f16):
    D5, M = d5_f16
    prod = grp.DirectProduct(D5, D5)
    MM = M.tensor(M, prod)
    page = sp.e2_product(prod, 2, MM, 3)
    assert page[1, 1] == 4 and sum(map(sum, page.grid)) == 4
    rep = sp.convergence_check(page, lambda_(prod.group, 2, MM, 3).dims)
    assert rep["pass"] and rep["euler"] is True


def test_inconsistent_abutment_raises():
    page = sp.E2Page([[1, 0], [0, 0]], "test", bounded=True)
    with pytest.raises(sp.SpectralInconsistency):
        sp.convergence_check(page, [2, 0])
    assert not sp.convergence_check(page, [0, 1], strict=False)["pass"]


def test_negative_entries_rejected():
    with pytest.raises(ValueError):
        sp.E2Page([[-1]], "test")
