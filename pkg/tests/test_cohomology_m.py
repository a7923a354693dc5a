import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heislhs.cohomology_m import (
    CohClass,
    CohMonomial,
    coinvariants_basis,
    cup,
    dual_index,
    invariants_basis,
    monomial_of,
    monomials,
    norm_action_matrix,
    sigma_act,
    z2p,
)
from heislhs.resolution import ResBasisIndex

P = 5


def C(text, p=P):
    return CohClass.parse(p, text)


def test_cup_examples():
    assert cup(C("x1"), C("x1")).is_zero()
    assert cup(C("y1"), C("x1")) == -C("x1*y1")
    rel = cup(C("x1"), C("x1*y2") - C("y1*x2")) + cup(C("x2"), C("x1*y1"))
    assert rel.is_zero()


def test_sigma_examples():
    assert sigma_act(C("y1")) == C("x1") + C("y1")
    assert sigma_act(C("x2")) == C("x2")


@pytest.mark.parametrize("p", [3, 5])
def test_sigma_p_is_trivial(p):
    for s in range(0, 2 * p + 5):
        for m in monomials(s):
            x = CohClass.monomial(p, m)
            assert sigma_act(x, p) == x


@pytest.mark.parametrize("p,n", [(3, 2), (5, 2), (3, 3)])
def test_norm_acts_as_zero(p, n):
    for s in range(0, 2 * p + 3):
        assert not norm_action_matrix(p, n, s).any()


def test_norm_does_not_vanish_for_n1():
    # sigma^p is not trivial when n = 1, so the norm is nonzero somewhere
    assert any(norm_action_matrix(3, 1, s).any() for s in range(1, 8))


def test_dual_identification():
    assert dual_index(CohMonomial(1, 0, 0, 0)) == ResBasisIndex(1, 0)
    assert dual_index(CohMonomial(0, 1, 0, 1)) == ResBasisIndex(3, 3)
    for s in range(13):
        for l in range(s + 1):
            idx = ResBasisIndex(s, l)
            assert dual_index(monomial_of(idx)) == idx
    with pytest.raises(ValueError):
        monomial_of(ResBasisIndex(3, 4))


@pytest.mark.parametrize("p", [3, 5, 7])
def test_z2p(p):
    z = z2p(p)
    assert z == C(f"y2^{p}", p) - C(f"x2^{p - 1}*y2", p)
    assert sigma_act(z) == z


def test_low_degree_bases():
    inv1 = invariants_basis(P, 1)
    assert inv1.dim == 1 and inv1.basis.tolist() == [C("x1").vec.tolist()]
    inv2 = invariants_basis(P, 2)
    span = {tuple(v) for v in inv2.basis.tolist()}
    assert inv2.dim == 2
    assert {tuple(C("x2").vec), tuple(C("x1*y1").vec)} == span
    co1 = coinvariants_basis(P, 1)
    assert co1.dim == 1
    assert co1.coordinates(C("y1").vec, P).tolist() == [1]


@pytest.mark.parametrize("p", [3, 5, 7])
def test_dimension_pattern_and_closed_forms(p):
    for s in range(2 * p + 5):
        inv, co = invariants_basis(p, s), coinvariants_basis(p, s)
        assert inv.dim == co.dim
        expected = sum(1 if t <= 1 else 2 for t in range(s, -1, -2 * p))
        assert inv.dim == expected
        assert inv.closed_form_match and co.closed_form_match


def classes(max_degree=8):
    return st.integers(0, max_degree).flatmap(
        lambda s: st.lists(st.integers(0, P - 1), min_size=s + 1, max_size=s + 1).map(
            lambda v: CohClass(P, s, np.array(v))
        )
    )


@settings(max_examples=60, deadline=None)
@given(classes(), classes(), classes(4))
def test_cup_ring_laws(x, y, z):
    assert cup(x, y) == ((-1) ** (x.degree * y.degree)) * cup(y, x)
    assert cup(cup(x, y), z) == cup(x, cup(y, z))
    assert sigma_act(cup(x, y)) == cup(sigma_act(x), sigma_act(y))
