import pytest

from heislhs.group_algebra import special_elements
from heislhs.resolution import (
    FreeModuleElement,
    ResBasisIndex,
    differential,
    differential_on_element,
    verify_exactness,
)

P, N = 3, 2


def basis(k, j, coeff=None):
    return FreeModuleElement.basis(P, N, ResBasisIndex(k, j), coeff)


def test_low_degree_differentials():
    s = special_elements(P, N)
    assert differential(P, N, ResBasisIndex(1, 0)) == basis(0, 0, s.a - 1)
    assert differential(P, N, ResBasisIndex(1, 1)) == basis(0, 0, s.b - 1)


def test_out_of_range_index_is_zero():
    assert not ResBasisIndex(1, 2).valid
    assert not ResBasisIndex(2, -1).valid


def test_d_squared_on_basis():
    for k in range(2, 9):
        for j in range(k + 1):
            assert differential_on_element(differential(P, N, ResBasisIndex(k, j))).is_zero()


def test_kappa_times_generator():
    s = special_elements(P, N)
    x = s.kappa * basis(1, 0)
    assert differential_on_element(x) == basis(0, 0, -s.Na)


def test_zero_element():
    z = FreeModuleElement(P, N, 3)
    assert differential_on_element(z).is_zero()


def test_rank_of_free_module():
    x = basis(4, 2)
    assert x.coeffs.size == 5 * (P**N) ** 2


@pytest.mark.parametrize("p,n,cap", [(3, 1, 6), (3, 2, 6), (5, 2, 4)])
def test_exactness(p, n, cap):
    rep = verify_exactness(p, n, cap)
    assert rep.passed, rep.failures
