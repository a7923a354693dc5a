import pytest

from heislhs.pages.e3 import build_e3
from heislhs.poincare import (
    RationalPowerSeries,
    compare,
    diagonal_sums,
    dim_d_inf,
    lemma_convolution,
    poincare_series,
    series_pd,
)


def test_dim_d_inf():
    assert dim_d_inf(0, 5) == 1
    assert dim_d_inf(4, 5) == 7
    assert dim_d_inf(11, 5) == 15
    with pytest.raises(ValueError):
        dim_d_inf(2, 3)


def test_expansion_start():
    assert poincare_series(5).coefficients(6) == [1, 2, 4, 5, 7, 8]
    assert poincare_series(5).coefficients(1) == [1]


@pytest.mark.parametrize("p", [5, 7, 11])
def test_expansion_matches_convolution(p):
    c = poincare_series(p).coefficients(200)
    assert c == [lemma_convolution(k, p) for k in range(200)]
    assert c[2 * p] == lemma_convolution(2 * p, p)


def test_rational_series_basics():
    geo = RationalPowerSeries([1], [1, -1])
    assert geo.coefficients(5) == [1] * 5
    assert geo.recurrence_holds(20)
    with pytest.raises(ValueError):
        RationalPowerSeries([1], [2, 1])
    assert series_pd(5).coefficients(4) == [1, 2, 4, 5]


def test_closed_form_identities():
    rep = compare(7, 120)
    assert rep.passed, rep.failures


def test_diagonal_sums_need_full_diagonals():
    dims = {(0, 0): 1, (0, 1): 1, (1, 0): 1}
    assert diagonal_sums(dims, 2) == [1, 2, None]


@pytest.mark.parametrize("p", [5, 7])
def test_page_diagonals(p):
    """The computed page agrees with the series below degree 2p except at k = 3,
    where lambda1*mu2 is an extra class, and falls below it from k = 2p on."""
    k = 2 * p + 4
    page = build_e3(p, 2, k, k)
    diag = diagonal_sums(page.dims(), k)
    series = poincare_series(p).coefficients(k + 1)
    assert [d - s for d, s in zip(diag, series)][: 2 * p] == [0, 0, 0, 1] + [0] * (2 * p - 4)
    assert all(diag[j] < series[j] for j in range(2 * p, k + 1))
