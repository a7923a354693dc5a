import pytest

from heislhs.pages.checks import check_e2_multiplication, check_odd_odd_vanishing
from heislhs.pages.e2 import (
    NotInvariantError,
    build_e2,
    cell_coordinates,
    e2_dimension_closed_form,
    e2_product,
    evaluate,
    generator_element,
)
from heislhs.pages.labels import format_label, parse_label

P, N = 5, 2


@pytest.fixture(scope="module")
def page():
    return build_e2(P, N, 6, 2 * P + 4)


def test_cells(page):
    assert page.cell(0, 2).label_strings == ["lambda2", "nu2"]
    assert page.cell(1, 0).label_strings == ["gamma1"]
    assert all(c.labels_verified for c in page.cells.values())


def test_gamma2_periodicity_of_dimensions(page):
    for (r, s), c in page.cells.items():
        if (r + 2, s) in page.cells:
            assert page.cell(r + 2, s).dim == c.dim
        assert c.dim == e2_dimension_closed_form(P, r, s)


def test_product_examples():
    assert e2_product(generator_element(P, N, "mu2"), generator_element(P, N, "mu3")).is_zero()
    assert evaluate(P, N, "nu2*nu2").is_zero()
    x = e2_product(generator_element(P, N, "lambda1"), generator_element(P, N, "gamma2"))
    assert (x.r, x.s) == (2, 1)
    assert x.equals(evaluate(P, N, "lambda1*gamma2"))


def test_relation_ideal_in_column_zero():
    for rel in ("lambda1*nu2", "nu2*nu3"):
        assert evaluate(P, N, rel).is_zero()
    assert (evaluate(P, N, "lambda1*nu3") + evaluate(P, N, "lambda2*nu2")).is_zero()


def test_odd_odd_literal_sum_agrees():
    x = generator_element(3, 2, "mu2")
    y = generator_element(3, 2, "mu4")
    assert e2_product(x, y, literal=True).is_zero()
    rep = check_odd_odd_vanishing(3, 2, 6, literal_cap=3)
    assert rep.passed, rep.failures


def test_multiplication_maps():
    rep = check_e2_multiplication(P, N, 4, 2 * P + 2)
    assert rep.passed, rep.failures


def test_rejects_bad_parameters():
    with pytest.raises(ValueError):
        build_e2(5, 1, 2, 2)
    with pytest.raises(ValueError):
        build_e2(9, 2, 2, 2)


def test_non_invariant_representative_rejected():
    from heislhs.cohomology_m import CohClass

    with pytest.raises(NotInvariantError):
        cell_coordinates(P, 0, 1, CohClass.parse(P, "y1").vec)


def test_label_round_trip():
    for text in ("1", "lambda1*lambda2^3*mu5*gamma2", "nu3*gamma2^2"):
        assert format_label(parse_label(text)) == text
