import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heislhs.group_algebra import (
    GroupAlgebraElement,
    binomial_identity_check,
    special_elements,
    verify_rho_kappa_identities,
)

P, N = 3, 2
Q = P**N


def elements():
    return st.lists(st.integers(0, P - 1), min_size=Q * Q, max_size=Q * Q).map(
        lambda v: GroupAlgebraElement(P, N, np.array(v).reshape(Q, Q))
    )


def test_identity_and_norm_annihilation():
    s = special_elements(P, N)
    x = s.a * s.b + 2 * s.b
    assert s.one * x == x
    assert (s.a - 1) * s.Na == GroupAlgebraElement.zero(P, N)


def test_rho_times_b_minus_one():
    s = special_elements(P, N)
    assert s.rho * (s.b - 1) == s.b * s.Nab - s.Na


def test_sigma_twist_on_generators():
    s = special_elements(P, N)
    assert s.a.twist(1) == s.a * s.b
    assert s.b.twist(5) == s.b
    x = s.rho + 2 * s.kappa
    assert x.twist(Q) == x


def test_augmentations():
    s = special_elements(P, N)
    assert s.one.augmentation() == 1
    assert s.Na.augmentation() == 0
    assert s.kappa.augmentation() == 0


def test_special_element_shapes():
    s = special_elements(P, N)
    assert s.rho.support_size == Q * (Q + 1) // 2
    assert all(v == 1 for v in s.rho.terms().values())
    assert all(s.kappa.terms()[(i, 0)] == (i + 1) % P for i in range(Q) if (i + 1) % P)


@pytest.mark.parametrize("p,n", [(3, 1), (3, 2), (5, 2)])
def test_rho_kappa_identities(p, n):
    res = verify_rho_kappa_identities(p, n)
    assert len(res) == 5 and all(res.values()), res


def test_binomial_identity():
    assert binomial_identity_check(3, 3, 4) == (1, 1)
    assert binomial_identity_check(1, 0, 1) == (3, 3)
    for i in range(11):
        for j in range(i + 1):
            for m in range(1, 9):
                lhs, rhs = binomial_identity_check(i, j, m)
                assert lhs == rhs


@settings(max_examples=25, deadline=None)
@given(elements(), elements(), elements())
def test_ring_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert (x * y).augmentation() == (x.augmentation() * y.augmentation()) % P


@settings(max_examples=25, deadline=None)
@given(elements(), elements(), st.integers(0, 20), st.integers(0, 20))
def test_twist_is_ring_automorphism(x, y, r, t):
    assert (x * y).twist(r) == x.twist(r) * y.twist(r)
    assert x.twist(r).twist(t) == x.twist(r + t)
