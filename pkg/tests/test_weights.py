import pytest

from heislhs.pages.weights import (
    FORCED_ZERO,
    UNDETERMINED,
    build_einfinity,
    collapse_certificate,
    column0_weight_check,
    u_power_is_one,
    unit_generator,
    weight_table,
    weight_vanishing,
)


@pytest.mark.parametrize("p,n", [(3, 2), (5, 2), (7, 2), (5, 3)])
def test_unit_generator_order(p, n):
    u = unit_generator(p, n)
    order = p ** (n - 1) * (p - 1)
    assert pow(u, order, p**n) == 1
    assert all(pow(u, d, p**n) != 1 for d in range(1, order))
    assert all(unit_generator(p, n) <= v for v in range(2, u) if False)


def test_table_entries():
    t = weight_table(5, 2)
    assert t.of("lambda1") == (0, 1)
    assert t.of("gamma2") == (1, 0)
    assert t.of("mu4") == (3, 2)
    assert t.of("omega7") == (4, 4)
    assert t.of("xi11") == (5, 5)


def statuses(rep, target):
    return {c.target: c.status for c in rep.constraints}[target]


def test_vanishing_examples():
    rep = weight_vanishing(5, 2, "xi11", 10)
    assert statuses(rep, "mu2*gamma2^5")["mod_pn"] == FORCED_ZERO
    rep = weight_vanishing(3, 2, "xi7", 3)
    assert statuses(rep, "lambda2*nu2*gamma2^2")["mod_pn"] == UNDETERMINED
    rep = weight_vanishing(5, 2, "nu3", 3)
    st = statuses(rep, "mu2*gamma2")
    assert st["mod_pn"] == FORCED_ZERO
    d = {c.target: c.deltas for c in rep.constraints}["mu2*gamma2"]
    assert d[0] == 2


def test_nu3_argument_at_p3_needs_psi():
    """u^2 = 1 mod 3, so the Phi equation is degenerate mod p; Psi still forces zero."""
    rep = weight_vanishing(3, 2, "nu3", 3)
    c = {c.target: c for c in rep.constraints}["mu2*gamma2"]
    assert u_power_is_one(3, 2, c.deltas[0], "mod_p")
    assert not u_power_is_one(3, 2, c.deltas[1], "mod_p")


@pytest.mark.parametrize("p,n", [(5, 2), (7, 2), (5, 3)])
def test_certificate_complete(p, n):
    cert = collapse_certificate(p, n)
    assert cert.status() == "COMPLETE"
    assert cert.undetermined() == []


def test_certificate_p3():
    cert = collapse_certificate(3, 2)
    assert cert.status() == "CONDITIONAL"
    assert cert.undetermined() == [("xi7", 3, "lambda2*nu2*gamma2^2")]


def test_mod_p_reading_is_weaker():
    cert = collapse_certificate(5, 2)
    assert cert.status("mod_p") == "CONDITIONAL"
    assert len(cert.undetermined("mod_p")) > 0


def test_nu2p_differential_breaks_mod_pn_equivariance():
    """d2(nu_2p) = lambda1 lambda2^{p-1} gamma2 is nonzero, yet its Phi weights
    differ by p - 1: u^{p-1} != 1 mod p^n but = 1 mod p."""
    p, n = 5, 2
    t = weight_table(p, n)
    src = t.of("nu10")
    tgt = t.label_weight((("lambda1", 1), ("lambda2", 4), ("gamma2", 1)))
    d = tgt[0] - src[0]
    assert not u_power_is_one(p, n, d, "mod_pn")
    assert u_power_is_one(p, n, d, "mod_p")
    assert tgt[1] == src[1]


@pytest.mark.parametrize("p", [3, 5])
def test_column0_weights(p):
    rows = column0_weight_check(p, 2)
    assert all(r["Phi"] and r["Psi"] for r in rows)


def test_build_einfinity_premises():
    page, cert = build_einfinity(3, 2, 4, 8)
    assert page.page == "infinity"
    assert cert.premises["generators_not_d2_cycles"] == ["nu6"]
    assert not cert.premises["structure_table_matches_e3"]
    assert cert.as_dict()["status"] == "CONDITIONAL"
