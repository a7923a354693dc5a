import numpy as np
import pytest

from heislhs.pages.checks import check_e3_multiplication, check_e3_table, check_n_independence
from heislhs.pages.e3 import build_e3, e3_dimension_table, e3_relation, format_combination, generator_survival
from heislhs.pages.labels import parse_label


@pytest.fixture(scope="module")
def page5():
    return build_e3(5, 2, 6, 14)


def test_empty_cells_in_column_three(page5):
    for s in range(3, 9):
        assert page5.cell(3, s).dim == 0


def test_nu2p_free_rows_below_2p_match_structure(page5):
    for (r, s), c in page5.cells.items():
        if s < 9 and (r, s) != (1, 2):
            assert c.structure_verified, (r, s)
            assert c.dim == e3_dimension_table(5, r, s)


def test_lambda1_mu2_survives(page5):
    """E3^{1,2} = E2^{1,2}: both mu3 and lambda1*mu2 are d2-cycles and nothing hits column 1."""
    c = page5.cell(1, 2)
    assert c.dim == 2
    assert c.label_names == ["mu3", "lambda1*mu2"]


def test_omega_relations(page5):
    """omega6 = -lambda1 mu5; in E2^{1,5}, nu3 mu3 = -[x1 y2^2] + [y1 x2 y2] and
    (sigma-1)(y1 y2^2) = x1 y2^2 + 2 y1 x2 y2 modulo lower terms, so
    nu3 mu3 = -(3/2) omega6."""
    p = 5
    c = e3_relation(page5, "omega6", "nu3*mu3")
    assert c == (-2 * pow(3, -1, p)) % p
    assert e3_relation(page5, "omega4", "lambda1*mu3") == p - 1
    assert e3_relation(page5, "omega5", "nu3*mu2") == p - 1
    assert page5.cell(1, 5).label_names == ["nu3*mu3"]
    assert page5.cell(1, 9).label_names == ["omega10"]


def test_generator_survival(page5):
    rows = {g["name"]: g for g in generator_survival(page5)}
    assert not rows["nu10"]["d2_cycle"]
    assert all(g["d2_cycle"] and g["nonzero_in_e3"] for k, g in rows.items() if k != "nu10")


def test_structure_table_mismatches_are_nu_related(page5):
    rep = check_e3_table(page5)
    bad = rep.checks[0].detail["mismatches"]
    assert all(s >= 2 * 5 - 1 or (r, s) == (1, 2) for r, s, *_ in bad)


def test_gamma2_surjective(page5):
    rep = check_e3_multiplication(page5)
    assert rep.checks[0].passed


def test_canonical_labels_are_n_independent():
    rep = check_n_independence(5, 2, 6, 14)
    assert rep.passed, rep.failures


def test_format_combination():
    labs = [parse_label("mu5"), parse_label("lambda1*mu4")]
    assert format_combination(np.array([1, 3]), labs, 5) == "mu5 - 2*lambda1*mu4"
    assert format_combination(np.array([0, 4]), labs, 5) == "-lambda1*mu4"
    assert format_combination(np.array([0, 0]), labs, 5) == "0"
