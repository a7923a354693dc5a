"""Invariant checks on E2, d2 and E3, each returning a Report."""

from __future__ import annotations

import time
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..cohomology_m import CohClass, coinvariants_basis, cup, monomials, sigma_act
from ..exact_linalg import image_membership, rank
from ..report import Report
from .d2 import d2, d2_computed, d2_matrix
from .e2 import (
    E2Element,
    Page,
    build_e2,
    cell_dimension,
    e2_dimension_closed_form,
    e2_product,
    evaluate,
    evaluate_label,
    from_coords,
    generator_element,
)
from .e3 import build_e3, e3_dimension_table, e3_relation
from .labels import d2_labels, d3_labels, e2_generators, e3_generators, format_label, parse_label


def _timed(rep: Report, name: str, fn) -> None:
    t = time.perf_counter()
    ok, detail = fn()
    rep.add(name, ok, detail, time.perf_counter() - t)


# -- cohomology of M ---------------------------------------------------

def check_cup_properties(p: int, degree_cap: int) -> Report:
    """Graded commutativity and the sigma-automorphism property on monomial pairs."""
    rep = Report(f"cup products on H(M) p={p} to degree {degree_cap}")
    comm_bad, sigma_bad, pairs = [], [], 0
    for a in range(degree_cap + 1):
        for b in range(degree_cap + 1 - a):
            for ma in monomials(a):
                x = CohClass.monomial(p, ma)
                sx = sigma_act(x)
                for mb in monomials(b):
                    y = CohClass.monomial(p, mb)
                    pairs += 1
                    xy = cup(x, y)
                    if not (xy - ((-1) ** (a * b)) * cup(y, x)).is_zero():
                        comm_bad.append((str(ma), str(mb)))
                    if not (sigma_act(xy) - cup(sx, sigma_act(y))).is_zero():
                        sigma_bad.append((str(ma), str(mb)))
    rep.add("graded commutativity", not comm_bad, {"pairs": pairs, "failures": comm_bad[:5]})
    rep.add("sigma is an algebra automorphism", not sigma_bad, {"pairs": pairs, "failures": sigma_bad[:5]})
    return rep


# -- E2 --------------------------------------------------------------------

def check_e2_dimensions(page: Page) -> Report:
    rep = Report(f"E2 dimensions p={page.p} n={page.n}")
    bad = [
        (r, s, c.dim, e2_dimension_closed_form(page.p, r, s))
        for (r, s), c in sorted(page.cells.items())
        if c.dim != e2_dimension_closed_form(page.p, r, s)
    ]
    rep.add("dimensions match the closed form", not bad, {"cells": len(page.cells), "mismatches": bad})
    unl = [k for k, c in sorted(page.cells.items()) if not c.labels_verified]
    rep.add("labeled bases verified", not unl, {"unverified": unl})
    return rep


def check_odd_odd_vanishing(p: int, n: int, s_cap: int, literal_cap: int = -1) -> Report:
    """Every product of two coinvariant basis vectors in odd columns is zero."""
    rep = Report(f"odd x odd products p={p} n={n}")
    bad, count = [], 0
    for s in range(s_cap + 1):
        for t in range(s_cap + 1 - s):
            ds, dt = cell_dimension(p, 1, s), cell_dimension(p, 1, t)
            for i in range(ds):
                x = from_coords(p, n, 1, s, np.eye(ds, dtype=np.int64)[i])
                for j in range(dt):
                    y = from_coords(p, n, 1, t, np.eye(dt, dtype=np.int64)[j])
                    count += 1
                    if not e2_product(x, y).is_zero():
                        bad.append((1, s, i, 1, t, j))
                    if s + t <= literal_cap and not e2_product(x, y, literal=True).is_zero():
                        bad.append(("literal", s, i, t, j))
    rep.add("odd x odd products vanish", not bad, {"pairs": count, "failures": bad[:5]})
    mu = e2_product(generator_element(p, n, "mu2"), generator_element(p, n, "mu3"))
    rep.add("mu2 * mu3 = 0", mu.is_zero())
    return rep


def _mult_rank(p: int, n: int, by: E2Element, r: int, s: int, labels=None) -> Tuple[int, int, int]:
    """(rank, source dim, target dim) of multiplication by ``by`` on E2^{r,s}."""
    src = cell_dimension(p, r, s)
    tgt = cell_dimension(p, r + by.r, s + by.s)
    if labels is not None:
        rows = [e2_product(evaluate_label(p, n, l), by).coords() for l in labels]
    else:
        rows = [e2_product(from_coords(p, n, r, s, np.eye(src, dtype=np.int64)[k]), by).coords() for k in range(src)]
    if not rows:
        return 0, src, tgt
    return rank(np.array(rows), p), src, tgt


def check_e2_multiplication(p: int, n: int, r_cap: int, s_cap: int) -> Report:
    rep = Report(f"E2 multiplication maps p={p} n={n}")
    nu = generator_element(p, n, f"nu{2 * p}")
    g2 = generator_element(p, n, "gamma2")
    l2 = generator_element(p, n, "lambda2")
    bad_nu, bad_g, bad_l = [], [], []
    for r in range(r_cap + 1):
        for s in range(s_cap + 1):
            rk, src, _ = _mult_rank(p, n, nu, r, s)
            if rk != src:
                bad_nu.append((r, s))
            rk, src, tgt = _mult_rank(p, n, g2, r, s)
            if not rk == src == tgt:
                bad_g.append((r, s))
            if s >= 2 * p - 1:
                labs = d2_labels(p, r, s)
                rk, _, _ = _mult_rank(p, n, l2, r, s, labels=labs)
                if not rk == len(labs) == len(d2_labels(p, r, s + 2)):
                    bad_l.append((r, s))
    rep.add("nu_2p injective", not bad_nu, {"failures": bad_nu})
    rep.add("gamma2 isomorphism", not bad_g, {"failures": bad_g})
    rep.add("lambda2 isomorphism on the nu_2p-free part, s >= 2p-1", not bad_l, {"failures": bad_l})
    return rep


# -- d2 ----------------------------------------------------------------------

def expected_d2_mu(p: int, k: int) -> Tuple[int, Optional[str]]:
    """d2(mu_k) = c * label: -(i-1) lambda1 mu_{2i-2} gamma2 for k = 2i,
    -i lambda1 mu_{2i-1} gamma2 for k = 2i+1."""
    i = k // 2
    if k % 2 == 0:
        return (-(i - 1)) % p, (f"lambda1*mu{2 * i - 2}*gamma2" if i >= 2 else None)
    return (-i) % p, (f"lambda1*mu{2 * i - 1}*gamma2" if i >= 2 else None)


def d2_formula_table(p: int, n: int) -> Report:
    rep = Report(f"d2 on generators p={p} n={n}")
    for k in range(2, 2 * p + 1):
        name = f"mu{k}"
        got = d2(generator_element(p, n, name))
        c, lab = expected_d2_mu(p, k)
        want = c * evaluate(p, n, lab) if lab else E2Element.zero(p, n, got.r, got.s)
        rep.add(f"d2({name}) = {_describe(c, lab, p)}", got.equals(want), {"coords": got.coords().tolist()})
    for name in ["lambda1", "lambda2", "nu2", "nu3", f"nu{2 * p}", "gamma1", "gamma2"]:
        got = d2(generator_element(p, n, name))
        rep.add(f"d2({name}) = 0", got.is_zero(), {"coords": got.coords().tolist()})
    return rep


def _describe(c: int, lab: Optional[str], p: int) -> str:
    if not lab or c % p == 0:
        return "0"
    s = c - p if c > p // 2 else c
    return f"{s}*{lab}"


def survival_list(p: int, n: int) -> Dict[str, bool]:
    names = ["lambda1", "lambda2", "nu2", "nu3", f"nu{2 * p}", "gamma1", "gamma2", "mu2", "mu3"]
    return {nm: d2(generator_element(p, n, nm)).is_zero() for nm in names}


def column0_d2_report(p: int, n: int, s_cap: int) -> List[dict]:
    """Labels in column 0 on which the computed d2 is nonzero, with the image."""
    out = []
    for s in range(2, s_cap + 1):
        for lab in d2_labels(p, 0, s) + [l for l in _nu_labels(p, s)]:
            x = evaluate_label(p, n, lab)
            y = d2_computed(x)
            if not y.is_zero():
                out.append({"source": format_label(lab), "s": s, "image_coords": y.coords().tolist()})
    return out


def _nu_labels(p: int, s: int):
    from .labels import e2_labels, is_nu_free

    return [l for l in e2_labels(p, 0, s) if not is_nu_free(p, l)]


def row0_contract_check(p: int, n: int, r_cap: int) -> Report:
    """d2 into the bottom row is zero by contract; evaluate f o tau there."""
    rep = Report(f"bottom-row contract p={p} n={n}")
    bad = []
    for r in range(r_cap + 1):
        dim = cell_dimension(p, r, 1)
        for k in range(dim):
            x = from_coords(p, n, r, 1, np.eye(dim, dtype=np.int64)[k])
            if not d2_computed(x).is_zero():
                bad.append((r, k))
    rep.add("f o tau vanishes on E2^{r,1}", not bad, {"nonzero": bad})
    return rep


def check_d2_squared(p: int, n: int, r_cap: int, s_cap: int) -> Report:
    rep = Report(f"d2 o d2 = 0 p={p} n={n}")
    bad = []
    for r in range(r_cap + 1):
        for s in range(2, s_cap + 1):
            a = d2_matrix(p, n, r, s)
            b = d2_matrix(p, n, r + 2, s - 1)
            if a.size and b.size and ((a @ b) % p).any():
                bad.append((r, s))
    rep.add("d2 o d2 = 0 on every computed cell", not bad, {"failures": bad})
    return rep


def random_element(p: int, n: int, r: int, s: int, rng: np.random.Generator) -> E2Element:
    dim = cell_dimension(p, r, s)
    return from_coords(p, n, r, s, rng.integers(0, p, size=dim))


def check_leibniz(p: int, n: int, r_cap: int, s_cap: int, seed: int = 0, trials: int = 100) -> Report:
    """d2(xy) = d2(x) y + (-1)^{r+s} x d2(y) on random elements."""
    rep = Report(f"Leibniz rule p={p} n={n} seed={seed}")
    rng = np.random.default_rng(seed)
    bad = []
    for t in range(trials):
        r1, r2 = (int(v) for v in rng.integers(0, r_cap + 1, size=2))
        s1, s2 = (int(v) for v in rng.integers(0, s_cap + 1, size=2))
        x, y = random_element(p, n, r1, s1, rng), random_element(p, n, r2, s2, rng)
        lhs = d2(e2_product(x, y))
        rhs = e2_product(d2(x), y) + ((-1) ** (r1 + s1)) * e2_product(x, d2(y))
        if s1 + s2 >= 1 and not lhs.equals(rhs):
            bad.append(((r1, s1), (r2, s2)))
    rep.add(f"Leibniz on {trials} random pairs", not bad, {"seed": seed, "failures": bad[:5]})
    return rep


# -- E3 ----------------------------------------------------------------------

def e3_product_coords(page: Page, x: E2Element, y: E2Element) -> np.ndarray:
    z = e2_product(x, y)
    return page.cell(z.r, z.s).coordinates(z.coords(), page.p)


def _e3_mult_rank(page: Page, by: str, r: int, s: int):
    p, n = page.p, page.n
    g = evaluate(p, n, by)
    src = page.cell(r, s)
    tgt = page.cell(r + g.r, s + g.s)
    rows = []
    for v in src.reps:
        x = E2Element(p, n, r, s, from_coords(p, n, r, s, v).rep)
        rows.append(e3_product_coords(page, x, g))
    rk = rank(np.array(rows), p) if rows else 0
    return rk, src.dim, tgt.dim


def check_e3_multiplication(page: Page) -> Report:
    p = page.p
    rep = Report(f"E3 multiplication maps p={p} n={page.n}")
    surj, iso, lam = [], [], []
    for (r, s) in sorted(page.cells):
        if r + 2 <= page.r_cap:
            rk, src, tgt = _e3_mult_rank(page, "gamma2", r, s)
            if rk != tgt:
                surj.append((r, s))
            if r != 1 and rk != src:
                iso.append((r, s))
        if s >= 2 * p and s + 2 <= page.s_cap:
            rk, src, tgt = _e3_mult_rank(page, "lambda2", r, s)
            if rk != src:
                lam.append((r, s))
    rep.add("gamma2 surjective on E3", not surj, {"failures": surj})
    rep.add("gamma2 injective on E3 for r != 1", not iso, {"failures": iso})
    rep.add("lambda2 injective on E3 for s >= 2p", not lam, {"failures": lam})
    return rep


def check_e3_table(page: Page) -> Report:
    """Computed E3 against the labeled structure rules."""
    p = page.p
    rep = Report(f"E3 structure p={p} n={page.n}")
    dims = [
        (r, s, c.dim, e3_dimension_table(p, r, s))
        for (r, s), c in sorted(page.cells.items())
        if c.dim != e3_dimension_table(p, r, s)
    ]
    rep.add("dimensions match the structure table", not dims, {"mismatches": dims})
    labs = [k for k, c in sorted(page.cells.items()) if not c.structure_verified]
    rep.add("structure labels form a basis of each cell", not labs, {"cells": labs})
    empty = [(3, s, page.cell(3, s).dim) for s in range(3, 2 * p - 1) if (3, s) in page.cells and page.cell(3, s).dim]
    rep.add("E3^{3,s} = 0 for 3 <= s <= 2p-2", not empty, {"nonzero": empty})
    if p >= 5 and (1, 5) in page.cells:
        c = e3_relation(page, "omega6", "nu3*mu3")
        two_thirds = (2 * pow(3, -1, p)) % p
        rep.add("omega6 = (2/3) nu3*mu3", c == two_thirds, {"computed_coefficient": c, "signed": _signed(c, p), "minus_two_thirds": (-two_thirds) % p})
    if (1, 3) in page.cells:
        c = e3_relation(page, "omega4", "lambda1*mu3")
        rep.add("-omega4 = lambda1*mu3", c == p - 1, {"computed_coefficient": c})
    if (1, 4) in page.cells:
        c = e3_relation(page, "omega5", "nu3*mu2")
        rep.add("-omega5 = nu3*mu2", c == p - 1, {"computed_coefficient": c})
    return rep


def _signed(c, p):
    if c is None:
        return None
    return c - p if c > p // 2 else c


def structure_constants(page: Page) -> Dict[str, List[int]]:
    """Products of pairs of page generators (d2-cycles only), in the labeled
    basis of the target cell, for targets inside the page."""
    p, n = page.p, page.n
    gens = [g for g in (e3_generators(p) if page.page != 2 else e2_generators(p))]
    gens = sorted(gens, key=lambda g: g.name)
    out: Dict[str, List[int]] = {}
    for i, a in enumerate(gens):
        for b in gens[i:]:
            r, s = a.r + b.r, a.s + b.s
            if (r, s) not in page.cells:
                continue
            x, y = generator_element(p, n, a.name), generator_element(p, n, b.name)
            cell = page.cell(r, s)
            z = e2_product(x, y)
            if page.page == 2:
                c = cell.label_coordinates(z.coords(), p)
            else:
                if not (d2(x).is_zero() and d2(y).is_zero()):
                    continue
                c = cell.label_coordinates(z.coords(), p)
            out[f"{a.name}*{b.name}"] = None if c is None else [int(v) for v in c]
    return out


def page_signature(page: Page) -> dict:
    """Labeled dimension table plus structure constants, for n-independence."""
    cells = {}
    for (r, s), c in sorted(page.cells.items()):
        labels = c.label_strings if page.page == 2 else c.label_names
        cells[f"{r},{s}"] = {"dim": c.dim, "basis": list(labels)}
    return {"cells": cells, "products": structure_constants(page)}


def check_n_independence(p: int, n: int, r_cap: int, s_cap: int) -> Report:
    rep = Report(f"n-independence p={p}, n={n} vs n={n + 1}")
    for label, build in (("E2", build_e2), ("E3", build_e3)):
        a = page_signature(build(p, n, r_cap, s_cap))
        b = page_signature(build(p, n + 1, r_cap, s_cap))
        diff = sorted(k for k in a["cells"] if a["cells"][k] != b["cells"].get(k))
        pdiff = sorted(k for k in a["products"] if a["products"][k] != b["products"].get(k))
        rep.add(f"{label} labeled tables coincide", not diff, {"differences": diff})
        rep.add(f"{label} structure constants coincide", not pdiff, {"products": len(a["products"]), "differences": pdiff})
    return rep
