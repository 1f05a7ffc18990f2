import pytest

from higherlim import corpus as cp
from higherlim import groups as grp


@pytest.fixture(scope="session")
def S3():
    return grp.symmetric_group(3)


@pytest.fixture(scope="session")
def S4():
    return grp.symmetric_group(4)


@pytest.fixture(scope="session")
def d5_f16():
    """e:HGM Gamma_0 at level 1: D_5 acting on F_16."""
    return cp.hgm_truncate(cp.family("hgm-gamma0"), 1)
