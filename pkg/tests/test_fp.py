import itertools

import numpy as np
import scipy.sparse as sps
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from higherlim import fp


def brute_rank(A, p):
    """Rank from the number of distinct images ``A x`` over all of ``F_p^n``."""
    m, n = A.shape
    imgs = {tuple(A @ np.array(x) % p) for x in itertools.product(range(p), repeat=n)}
    r = 0
    while p ** r < len(imgs):
        r += 1
    return r


mats = st.tuples(st.sampled_from([2, 3, 5]), st.integers(1, 4), st.integers(1, 4)).flatmap(
    lambda t: st.tuples(st.just(t[0]), arrays(np.int64, (t[1], t[2]),
                                              elements=st.integers(0, t[0] - 1))))


@settings(max_examples=60, deadline=None)
@given(mats)
def test_rank_matches_brute_force(pa):
    p, A = pa
    assert fp.rank(A, p) == brute_rank(A, p)


@settings(max_examples=60, deadline=None)
@given(mats)
def test_kernel_is_kernel(pa):
    p, A = pa
    K = fp.nullspace(A, p)
    assert K.shape[1] == A.shape[1] - fp.rank(A, p)
    assert not np.any(fp.matmul(A, K, p))
    assert fp.rank(K, p) == K.shape[1]


@settings(max_examples=40, deadline=None)
@given(mats)
def test_solve(pa):
    p, A = pa
    x = np.arange(A.shape[1]) % p
    b = fp.matmul(A, x.reshape(-1, 1), p)
    y = fp.solve(A, b, p)
    assert y is not None
    assert np.array_equal(fp.matmul(A, y.reshape(A.shape[1], -1), p), b)


def test_inverse():
    A = np.array([[1, 1], [0, 1]])
    assert np.array_equal(fp.matmul(A, fp.inverse(A, 3), 3), np.eye(2, dtype=np.int64))


def test_sparse_kernel_matches_dense():
    rng = np.random.default_rng(1)
    A = (rng.random((40, 60)) < 0.1).astype(np.int64) * rng.integers(1, 3, (40, 60))
    K = fp.sparse_kernel(sps.csr_matrix(A), 3)
    assert K.shape[1] == fp.nullspace(A, 3).shape[1]
    assert not np.any(fp.matmul(A, K, 3))
