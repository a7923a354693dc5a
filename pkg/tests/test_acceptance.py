"""Acceptance criteria, one test each.

Every test prints a single ``criterion k: PASS/FAIL ...`` line; the lines are
also collected into the terminal summary.  All comparisons are exact.
Criteria 1, 4 and 6 fail on purpose: see the README for the computed
counterexamples (d2 of nu_2p, the extra class lambda1*mu2, the sign of the
omega6 relation).
"""

import time

from heislhs import chain_maps, poincare, resolution
from heislhs.pages.checks import (
    check_cup_properties,
    check_d2_squared,
    check_e2_dimensions,
    check_e3_table,
    check_leibniz,
    check_n_independence,
    check_odd_odd_vanishing,
    d2_formula_table,
)
from heislhs.pages.e2 import build_e2
from heislhs.pages.e3 import build_e3
from heislhs.pages.weights import build_einfinity, collapse_certificate
from heislhs.report import Report


def names(rep: Report):
    return "; ".join(c.name for c in rep.failures) or "all checks"


def test_criterion_1_d2_table(record):
    t0 = time.perf_counter()
    rep = d2_formula_table(5, 2)
    dt = time.perf_counter() - t0
    ok = rep.passed and dt < 60
    record(1, ok, f"({len(rep.checks)} coefficients, {dt:.1f}s; failing: {names(rep) if not rep.passed else 'none'})")
    assert ok, [c.as_dict() for c in rep.failures]


def test_criterion_2_chain_maps(record):
    t0 = time.perf_counter()
    rep = Report("criterion 2")
    for p, cap in ((3, 8), (5, 6)):
        rep.extend(chain_maps.verify_alpha_chain_map(p, 2, cap), f"p={p}: ")
        rep.extend(chain_maps.verify_homotopy(p, 2, cap), f"p={p}: ")
        rep.extend(chain_maps.verify_alpha_power_closed_form(p, 2, cap, [2, p, p * p]), f"p={p}: ")
    dt = time.perf_counter() - t0
    ok = rep.passed and dt < 300
    record(2, ok, f"({len(rep.checks)} checks, {dt:.1f}s)")
    assert ok, [c.as_dict() for c in rep.failures]


def test_criterion_3_e2_dimensions(record):
    rep = Report("criterion 3")
    for p in (5, 7):
        rep.extend(check_e2_dimensions(build_e2(p, 2, 6, 2 * p + 2)), f"p={p}: ")
    record(3, rep.passed, f"({names(rep)})")
    assert rep.passed, [c.as_dict() for c in rep.failures]


def test_criterion_4_e3_structure(record):
    rep = Report("criterion 4")
    for p in (5, 7):
        rep.extend(check_e3_table(build_e3(p, 2, 6, 2 * p + 2)), f"p={p}: ")
    record(4, rep.passed, f"(failing: {names(rep)})" if not rep.passed else "")
    assert rep.passed, [c.as_dict() for c in rep.failures]


def test_criterion_5_collapse_certificate(record):
    got = {}
    for p, n in ((5, 2), (7, 2), (5, 3), (3, 2)):
        cert = collapse_certificate(p, n)
        got[(p, n)] = (cert.status(), cert.undetermined())
    ok = all(got[k] == ("COMPLETE", []) for k in ((5, 2), (7, 2), (5, 3))) and got[(3, 2)] == (
        "CONDITIONAL",
        [("xi7", 3, "lambda2*nu2*gamma2^2")],
    )
    record(5, ok, "(" + ", ".join(f"{p},{n}: {s}" for (p, n), (s, _) in got.items()) + ")")
    assert ok, got


def test_criterion_6_poincare(record):
    t0 = time.perf_counter()
    rep = Report("criterion 6")
    for p in (5, 7):
        k = 2 * p + 4
        page, _ = build_einfinity(p, 2, k, k)
        rep.extend(poincare.compare(p, k + 1, page.dims(), k), f"p={p}: ")
        rep.extend(poincare.compare(p, 201), f"p={p} to k=200: ")
    dt = time.perf_counter() - t0
    ok = rep.passed and dt < 60
    record(6, ok, f"({dt:.1f}s; failing: {names(rep)})" if not rep.passed else f"({dt:.1f}s)")
    assert ok, [c.as_dict() for c in rep.failures]


def test_criterion_7_property_suites(record):
    rep = Report("criterion 7")
    rep.extend(resolution.verify_exactness(5, 2, 6), "resolution: ")
    rep.extend(check_cup_properties(5, 12), "H(M): ")
    rep.extend(check_odd_odd_vanishing(5, 2, 14, literal_cap=4), "E2: ")
    rep.extend(check_d2_squared(5, 2, 6, 14), "d2: ")
    rep.extend(check_leibniz(5, 2, 6, 14, seed=0, trials=100), "d2: ")
    rep.extend(chain_maps.verify_bar_maps(3, 2, 3), "bar: ")
    record(7, rep.passed, f"({len(rep.checks)} checks)")
    assert rep.passed, [c.as_dict() for c in rep.failures]


def test_criterion_8_n_independence(record):
    t0 = time.perf_counter()
    rep = check_n_independence(5, 2, 6, 14)
    dt = time.perf_counter() - t0
    ok = rep.passed and dt < 600
    record(8, ok, f"({dt:.1f}s)")
    assert ok, [c.as_dict() for c in rep.failures]
