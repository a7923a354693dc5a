import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from heislhs.exact_linalg import (
    image_membership,
    inv_mod,
    kernel_basis,
    rank,
    reduce_mod_rows,
    row_space_basis,
    rref,
    sparse_rank,
)

P = 5


def matrices(p=P, max_side=6):
    return st.integers(1, max_side).flatmap(
        lambda r: st.integers(1, max_side).flatmap(
            lambda c: st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c).map(
                lambda v: np.array(v, dtype=np.int64).reshape(r, c)
            )
        )
    )


def test_rref_small():
    R, piv = rref([[2, 4], [1, 2]], 5)
    assert piv == [0]
    assert R.tolist() == [[1, 2]]


def test_inv_mod():
    assert all((inv_mod(x, 7) * x) % 7 == 1 for x in range(1, 7))


def test_membership_zero_and_identity():
    m = np.array([[1, 2, 0], [0, 1, 3]])
    c = image_membership(m, np.zeros(2, dtype=np.int64), 5)
    assert c is not None and not ((m @ c) % 5).any()
    v = np.array([3, 1, 4])
    assert image_membership(np.eye(3, dtype=np.int64), v, 5).tolist() == v.tolist()


def test_membership_sigma_minus_one_on_degree_one():
    # (sigma - 1) on the basis (x1, y1): x1 -> 0, y1 -> x1; columns are images
    m = np.array([[0, 1], [0, 0]])
    c = image_membership(m, np.array([1, 0]), 5)
    assert c is not None and ((m @ c) % 5).tolist() == [1, 0]
    assert c[1] == 1
    assert image_membership(m, np.array([0, 1]), 5) is None


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(m):
    k = kernel_basis(m, P)
    assert rank(m, P) + k.shape[0] == m.shape[1]
    if k.shape[0]:
        assert not ((m @ k.T) % P).any()


@settings(max_examples=60, deadline=None)
@given(matrices(), st.integers(0, 10**6))
def test_preimages_are_exact(m, seed):
    rng = np.random.default_rng(seed)
    x = rng.integers(0, P, size=m.shape[1])
    v = (m @ x) % P
    c = image_membership(m, v, P)
    assert c is not None
    assert np.array_equal((m @ c) % P, v)


@settings(max_examples=30, deadline=None)
@given(matrices())
def test_kernel_is_deterministic(m):
    assert np.array_equal(kernel_basis(m, P), kernel_basis(m.copy(), P))


@settings(max_examples=30, deadline=None)
@given(matrices())
def test_reduction_modulo_row_space(m):
    basis, piv = row_space_basis(m, P, m.shape[1])
    for row in m:
        assert not reduce_mod_rows(row, basis, piv, P).any()


@settings(max_examples=40, deadline=None)
@given(matrices(p=3, max_side=8))
def test_sparse_rank_matches_dense(m):
    r, c = np.nonzero(m)
    assert sparse_rank(r, c, m[r, c], m.shape, 3) == rank(m, 3)
