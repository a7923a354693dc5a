"""Third-page diagonals against an independent computation of H*(Heis(9); F_3).

The oracle builds a free resolution of the whole group from the comparison
map alpha and the resolution of M alone (no homotopy, no d2 formula), so it
decides whether nu_6 survives without reference to the engine's d2.
"""

import pytest

from heislhs.pages.e3 import build_e3
from heislhs.poincare import diagonal_sums
from oracles.twisted_resolution import TwistedResolution, group_cohomology_dims

CAP = 8


@pytest.fixture(scope="module")
def oracle():
    return group_cohomology_dims(3, 2, CAP)


def test_oracle_is_a_complex():
    res = TwistedResolution(3, 2, 5)
    assert all(res.square_residual(k) == 0 for k in range(6))


def test_low_degrees(oracle):
    # H^1 = Hom(G, F_3) has dim 2; H^2 has dim 4 for Heis(p^n), n >= 2.
    assert oracle[:3] == (1, 2, 4)


def test_e3_diagonal_equals_group_cohomology(oracle):
    page = build_e3(3, 2, CAP, CAP)
    diag = diagonal_sums(page.dims(), CAP)
    assert tuple(diag) == oracle == (1, 2, 4, 6, 7, 8, 9, 12, 15)


def test_nu6_survival_would_exceed_group_cohomology(oracle):
    """If d2(nu6) were 0, nu6 and its target lambda1 lambda2^2 gamma2 would both
    survive, and E3 would be bigger than H*, which bounds every page."""
    page = build_e3(3, 2, CAP, CAP)
    diag = diagonal_sums(page.dims(), CAP)
    gap = [0] * (CAP + 1)
    for r in range(0, CAP + 1, 2):
        # nu6 * gamma2^{r/2} would add one class at (r, 6); its partner one at (r + 2, 5)
        for k in (r + 6, r + 7):
            if k <= CAP:
                gap[k] += 1
    hypothetical = [d + g for d, g in zip(diag, gap)]
    assert any(h > o for h, o in zip(hypothetical, oracle))
