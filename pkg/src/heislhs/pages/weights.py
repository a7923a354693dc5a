"""Automorphism weights and the vanishing argument for d_m, m >= 3.

Phi(sigma^k a^i b^j) = sigma^{uk} a^i b^{uj} and Psi(sigma^k a^i b^j) =
sigma^k a^{ui} b^{uj} act on each named generator by a power of u.  If d_m
sends a generator of weight w to a combination of target basis vectors of
weights v, equivariance gives t_b (1 - u^{v_b - w}) = 0 for every
coefficient t_b, under both automorphisms.

Two readings of "u^d = 1" are supported:

* ``"mod_pn"``: u is a generator of (Z/p^n)^x and u^d = 1 iff the order
  p^{n-1}(p-1) divides d.  This is the contract used for the certificate.
* ``"mod_p"``: coefficients live in F_p, so scalars act through u mod p
  and u^d = 1 iff (p-1) divides d.  This is the reading that is sound for
  F_p coefficients; it is reported alongside as a diagnostic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..cohomology_m import monomials
from .e2 import Page, check_params, generator_element
from .labels import (
    Generator,
    Label,
    e3_generators,
    e3_labels,
    format_label,
    generator_bidegree,
    split_name,
)

FORCED_ZERO = "FORCED_ZERO"
UNDETERMINED = "UNDETERMINED"
READINGS = ("mod_pn", "mod_p")


def _is_primitive_root(u: int, m: int, order: int) -> bool:
    if np.gcd(u, m) != 1:
        return False
    ps, k = [], order
    d = 2
    while d * d <= k:
        if k % d == 0:
            ps.append(d)
            while k % d == 0:
                k //= d
        d += 1
    if k > 1:
        ps.append(k)
    return all(pow(u, order // q, m) != 1 for q in ps)


@lru_cache(maxsize=None)
def unit_generator(p: int, n: int) -> int:
    """Smallest generator of the cyclic group (Z/p^n)^x."""
    m, order = p**n, p ** (n - 1) * (p - 1)
    for u in range(2, m):
        if _is_primitive_root(u, m, order):
            return u
    raise ValueError("no primitive root")  # pragma: no cover


def unit_order(p: int, n: int, reading: str) -> int:
    if reading == "mod_pn":
        return p ** (n - 1) * (p - 1)
    if reading == "mod_p":
        return p - 1
    raise ValueError(f"unknown reading {reading!r}")


def u_power_is_one(p: int, n: int, d: int, reading: str = "mod_pn") -> bool:
    modulus = p**n if reading == "mod_pn" else p
    u = unit_generator(p, n)
    val = pow(u, d % unit_order(p, n, reading), modulus)
    return val == 1


@dataclass(frozen=True)
class WeightTable:
    p: int
    n: int
    u: int
    weights: Dict[str, Tuple[int, int]]  # name -> (Phi exponent, Psi exponent)
    source: Dict[str, str]  # name -> "table" | "derived"

    def of(self, name: str) -> Tuple[int, int]:
        return self.weights[name]

    def label_weight(self, label: Label) -> Tuple[int, int]:
        a = b = 0
        for name, e in label:
            wa, wb = self.weights[name]
            a, b = a + e * wa, b + e * wb
        return a, b


def generator_weight(p: int, name: str) -> Tuple[int, int]:
    kind, k = split_name(name)
    if kind == "lambda":
        return 0, 1
    if kind == "gamma":
        return 1, 0
    if kind == "nu" and k in (2, 3) and k != 2 * p:
        return 1, 2
    if kind == "nu" and k == 2 * p:
        # from the monomial y2^p of the representative; x2^{p-1} y2 gives
        # (1, p), which agrees only modulo p - 1
        return p, p
    if kind == "mu":
        i = k // 2
        return i + 1, i
    if kind == "omega":
        i = k // 2
        return (i, i) if k % 2 == 0 else (i + 1, i + 1)
    if kind == "xi":
        return p, p
    raise ValueError(name)


def weight_table(p: int, n: int) -> WeightTable:
    names = [g.name for g in e3_generators(p)]
    names += [f"mu{k}" for k in range(2, 2 * p + 1)] + ["omega4", "omega5", "omega6"]
    names = sorted(set(n_ for n_ in names if _defined(p, n_)))
    w = {nm: generator_weight(p, nm) for nm in names}
    src = {nm: ("derived" if nm == f"nu{2 * p}" else "table") for nm in names}
    return WeightTable(p, n, unit_generator(p, n), w, src)


def _defined(p: int, name: str) -> bool:
    try:
        generator_bidegree(p, name)
        return True
    except ValueError:
        return False


# -- column-0 check ----------------------------------------------------

def monomial_scalar(p: int, n: int, mono, which: str) -> int:
    """Scalar by which Phi* or Psi* multiplies a monomial of H(M; F_p)."""
    u = unit_generator(p, n) % p
    ys = mono.e2 + mono.j2
    xs = mono.e1 + mono.i2
    e = ys if which == "Phi" else xs + ys
    return pow(u, e, p)


def column0_weight_check(p: int, n: int) -> List[dict]:
    """Check that each column-0 generator is an eigenvector of Phi*, Psi* on H(M)
    with eigenvalue u^w mod p (the only meaningful test over F_p)."""
    table = weight_table(p, n)
    out = []
    for g in e3_generators(p):
        if g.r != 0:
            continue
        rep = generator_element(p, n, g.name).rep
        monos = monomials(g.s)
        vec = np.asarray(rep.vec) % p
        row = {"name": g.name, "weights": table.of(g.name)}
        for k, which in enumerate(("Phi", "Psi")):
            scal = np.array([monomial_scalar(p, n, m, which) for m in monos])
            image = (scal * vec) % p
            expect = pow(unit_generator(p, n), table.of(g.name)[k], p)
            row[which] = bool(not ((image - expect * vec) % p).any())
        out.append(row)
    return out


# -- vanishing engine --------------------------------------------------

@dataclass
class Constraint:
    target: str
    deltas: Tuple[int, int]
    status: Dict[str, str]  # reading -> FORCED_ZERO / UNDETERMINED

    def as_dict(self) -> dict:
        return {"target": self.target, "delta_phi": self.deltas[0], "delta_psi": self.deltas[1], **self.status}


@dataclass
class VanishingReport:
    source: str
    m: int
    target_cell: Tuple[int, int]
    constraints: List[Constraint] = field(default_factory=list)

    def undetermined(self, reading: str = "mod_pn") -> List[Constraint]:
        return [c for c in self.constraints if c.status[reading] == UNDETERMINED]

    def as_dict(self) -> dict:
        return {
            "source": self.source,
            "m": self.m,
            "target": list(self.target_cell),
            "constraints": [c.as_dict() for c in self.constraints],
        }


def weight_vanishing(p: int, n: int, source: str, m: int, table: Optional[WeightTable] = None) -> VanishingReport:
    """Constraints on d_m(source) from the Phi and Psi weights."""
    if m < 3:
        raise ValueError("weight vanishing is for m >= 3")
    table = table or weight_table(p, n)
    r, s = generator_bidegree(p, source)
    R, S = r + m, s - m + 1
    rep = VanishingReport(source, m, (R, S))
    if S < 0:
        return rep
    w = table.of(source)
    for lab in e3_labels(p, R, S):
        v = table.label_weight(lab)
        deltas = (v[0] - w[0], v[1] - w[1])
        status = {}
        for reading in READINGS:
            forced = any(not u_power_is_one(p, n, d, reading) for d in deltas)
            status[reading] = FORCED_ZERO if forced else UNDETERMINED
        rep.constraints.append(Constraint(format_label(lab), deltas, status))
    return rep


@dataclass
class Certificate:
    p: int
    n: int
    u: int
    reports: List[VanishingReport]
    premises: Dict[str, object]

    def undetermined(self, reading: str = "mod_pn") -> List[Tuple[str, int, str]]:
        return [(r.source, r.m, c.target) for r in self.reports for c in r.undetermined(reading)]

    def status(self, reading: str = "mod_pn") -> str:
        return "COMPLETE" if not self.undetermined(reading) else "CONDITIONAL"

    def as_dict(self) -> dict:
        und = self.undetermined("mod_pn")
        und_p = self.undetermined("mod_p")
        return {
            "status": self.status("mod_pn"),
            "u": self.u,
            "reading": "mod_pn",
            "checked": sum(len(r.constraints) for r in self.reports),
            "undetermined": [{"source": a, "m": m, "target": t} for a, m, t in und],
            "mod_p_status": self.status("mod_p"),
            "mod_p_undetermined": [{"source": a, "m": m, "target": t} for a, m, t in und_p],
            "premises": self.premises,
        }


def collapse_certificate(p: int, n: int, premises: Optional[dict] = None) -> Certificate:
    """Run the vanishing engine for every page-3 generator and every d_m, m >= 3,
    whose target bidegree has s >= 0."""
    check_params(p, n)
    table = weight_table(p, n)
    reports = []
    for g in e3_generators(p):
        for m in range(3, g.s + 2):
            reports.append(weight_vanishing(p, n, g.name, m, table))
    return Certificate(p, n, table.u, reports, dict(premises or {}))


def build_einfinity(p: int, n: int, r_cap: int, s_cap: int, e3: Optional[Page] = None):
    """E3 relabeled as E_infinity, with the collapse certificate.

    The certificate only covers d_m for m >= 3; its premises (the page-3
    structure table and the generator list) are checked against the
    computed E3 and the results are attached.
    """
    from .e3 import build_e3, generator_survival

    if e3 is None:
        e3 = build_e3(p, n, r_cap, s_cap)
    surv = generator_survival(e3)
    mismatched = sorted(
        (k for k, c in e3.cells.items() if not c.structure_verified),
        key=lambda k: (k[0] + k[1], k[0]),
    )
    col0 = column0_weight_check(p, n)
    premises = {
        "structure_table_matches_e3": not mismatched,
        "structure_table_mismatches": [list(k) for k in mismatched],
        "generators_not_d2_cycles": [g["name"] for g in surv if not g["d2_cycle"]],
        "column0_weights_mod_p": all(r["Phi"] and r["Psi"] for r in col0),
        "weight_sources": {k: v for k, v in sorted(weight_table(p, n).source.items())},
    }
    cert = collapse_certificate(p, n, premises)
    page = Page("infinity", p, n, e3.r_cap, e3.s_cap, dict(e3.cells))
    page.e2 = e3.e2  # type: ignore[attr-defined]
    return page, cert
