"""Named generators of E2/E3 and the labeled bases of each cell.

A label is a product of generator names in canonical factor order, written
like ``"lambda1*lambda2^2*mu5*gamma2"``; ``"1"`` is the unit.  The rules
below say which labels span which cell.  They are claims to be checked:
the page builders evaluate each label as an actual product in E2 and
verify that the labels of a cell form a basis.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, List, Tuple

Factor = Tuple[str, int]
Label = Tuple[Factor, ...]

_NAME = re.compile(r"^(lambda|nu|gamma|mu|omega|xi)(\d+)$")


@dataclass(frozen=True)
class Generator:
    name: str
    r: int
    s: int
    page: int  # first page on which it is a named multiplicative generator


def _order_key(p: int, name: str) -> int:
    kind, idx = split_name(name)
    if kind == "lambda":
        return idx - 1
    if kind == "nu":
        return {2: 2, 3: 3}.get(idx, 6)
    if kind == "gamma" and idx == 2:
        return 5
    return 4  # the r-odd factor: mu, omega, xi, gamma1


def split_name(name: str) -> Tuple[str, int]:
    m = _NAME.match(name)
    if not m:
        raise ValueError(f"unknown generator name {name!r}")
    return m.group(1), int(m.group(2))


def parse_label(text: str) -> Label:
    text = text.strip()
    if text == "1":
        return ()
    out: Dict[str, int] = {}
    order: List[str] = []
    for part in text.split("*"):
        name, _, e = part.strip().partition("^")
        split_name(name)
        if name not in out:
            order.append(name)
            out[name] = 0
        out[name] += int(e) if e else 1
    return tuple((n, out[n]) for n in order if out[n])


def format_label(label: Label) -> str:
    if not label:
        return "1"
    return "*".join(n if e == 1 else f"{n}^{e}" for n, e in label)


def make_label(p: int, *factors: Factor) -> Label:
    """Combine factors, drop zero powers and sort into canonical order."""
    acc: Dict[str, int] = {}
    for name, e in factors:
        if e:
            acc[name] = acc.get(name, 0) + e
    return tuple(sorted(((n, e) for n, e in acc.items() if e), key=lambda f: (_order_key(p, f[0]), f[0])))


def times(p: int, label: Label, *factors: Factor) -> Label:
    return make_label(p, *label, *factors)


def generator_bidegree(p: int, name: str) -> Tuple[int, int]:
    kind, k = split_name(name)
    if kind == "lambda" and k in (1, 2):
        return 0, k
    if kind == "nu" and k in (2, 3, 2 * p):
        return 0, k
    if kind == "gamma" and k in (1, 2):
        return k, 0
    if kind == "mu" and 2 <= k <= 2 * p:
        return 1, k - 1
    if kind == "omega" and 4 <= k <= 2 * p + 2:
        return 1, k - 1
    if kind == "xi" and k == 2 * p + 1:
        return 1, 2 * p
    raise ValueError(f"{name} is not a generator for p={p}")


def label_bidegree(p: int, label: Label) -> Tuple[int, int]:
    r = s = 0
    for name, e in label:
        gr, gs = generator_bidegree(p, name)
        r, s = r + e * gr, s + e * gs
    return r, s


def e2_generators(p: int) -> List[Generator]:
    names = ["lambda1", "lambda2", "nu2", "nu3", f"nu{2 * p}", "gamma1", "gamma2"]
    names += [f"mu{k}" for k in range(2, 2 * p + 1)]
    return [Generator(nm, *generator_bidegree(p, nm), 2) for nm in names]


def e3_generators(p: int) -> List[Generator]:
    names = ["lambda1", "lambda2", "nu2", "nu3", f"nu{2 * p}", "gamma1", "gamma2", "mu2", "mu3"]
    first = 6 if p == 3 else 7
    names += [f"omega{k}" for k in range(first, 2 * p + 3)]
    names += [f"xi{2 * p + 1}"]
    return [Generator(nm, *generator_bidegree(p, nm), 3) for nm in names]


def page3_definitions(p: int) -> Dict[str, Tuple[int, str]]:
    """omega and xi as signed products in E2: name -> (sign, label)."""
    out = {f"omega{i}": (-1, f"lambda1*mu{i - 1}") for i in range(4, 2 * p + 2)}
    out[f"omega{2 * p + 2}"] = (1, f"lambda2*mu{2 * p}")
    out[f"xi{2 * p + 1}"] = (1, f"lambda2*mu{2 * p - 1}")
    return out


# -- labeled bases ------------------------------------------------------

def d2_labels(p: int, r: int, s: int) -> List[Label]:
    """Labels spanning the nu_{2p}-free part D2^{r,s}."""
    if r < 0 or s < 0:
        return []
    g = ("gamma2", r // 2)
    L = lambda *f: make_label(p, *f, g)  # noqa: E731
    if r % 2 == 0:
        if s == 0:
            return [L()]
        if s == 1:
            return [L(("lambda1", 1))]
        if s % 2 == 0:
            i = s // 2
            return [L(("lambda2", i)), L(("lambda2", i - 1), ("nu2", 1))]
        i = (s - 1) // 2
        return [L(("lambda1", 1), ("lambda2", i)), L(("lambda2", i - 1), ("nu3", 1))]
    if s == 0:
        return [L(("gamma1", 1))]
    if s == 1:
        return [L(("mu2", 1))]
    if s <= 2 * p - 1:
        return [L((f"mu{s + 1}", 1)), L(("lambda1", 1), (f"mu{s}", 1))]
    if s % 2 == 0:
        i = s // 2
        return [
            L(("lambda1", 1), ("lambda2", i - p), (f"mu{2 * p}", 1)),
            L(("lambda2", i - p + 1), (f"mu{2 * p - 1}", 1)),
        ]
    i = (s - 1) // 2
    return [
        L(("lambda2", i - p + 1), (f"mu{2 * p}", 1)),
        L(("lambda1", 1), ("lambda2", i - p + 1), (f"mu{2 * p - 1}", 1)),
    ]


def d3_labels(p: int, r: int, s: int) -> List[Label]:
    """Labels spanning D3^{r,s} = E3^{r,s} modulo nu_{2p}."""
    if r < 0 or s < 0:
        return []
    if r % 2 == 0:
        return d2_labels(p, r, s)
    if r >= 5:
        return [times(p, x, ("gamma2", 1)) for x in d3_labels(p, r - 2, s)]
    if r == 3:
        if 3 <= s <= 2 * p - 2:
            return []
        return [times(p, x, ("gamma2", 1)) for x in d3_labels(p, 1, s)]
    M = lambda *f: make_label(p, *f)  # noqa: E731
    fixed = {
        0: [M(("gamma1", 1))],
        1: [M(("mu2", 1))],
        2: [M(("mu3", 1))],
        3: [M(("lambda1", 1), ("mu3", 1))],
        4: [M(("nu3", 1), ("mu2", 1))],
    }
    if s in fixed:
        return fixed[s]
    if s == 5 and p >= 5:
        return [M(("nu3", 1), ("mu3", 1))]
    if s <= 2 * p - 1:
        return [M((f"omega{s + 1}", 1))]
    if s % 2 == 0:
        i = s // 2
        return [
            M(("lambda2", i - p), (f"omega{2 * p + 1}", 1)),
            M(("lambda2", i - p), (f"xi{2 * p + 1}", 1)),
        ]
    i = (s - 1) // 2
    return [
        M(("lambda2", i - p + 1), (f"omega{2 * p}", 1)),
        M(("lambda2", i - p), (f"omega{2 * p + 2}", 1)),
    ]


def _with_periodic(p: int, r: int, s: int, base) -> List[Label]:
    out: List[Label] = []
    nu = f"nu{2 * p}"
    for l in range(s // (2 * p) + 1):
        out.extend(times(p, x, (nu, l)) for x in base(p, r, s - 2 * p * l))
    return out


def e2_labels(p: int, r: int, s: int) -> List[Label]:
    return _with_periodic(p, r, s, d2_labels)


def e3_labels(p: int, r: int, s: int) -> List[Label]:
    return _with_periodic(p, r, s, d3_labels)


def is_nu_free(p: int, label: Label) -> bool:
    return all(name != f"nu{2 * p}" for name, _ in label)
