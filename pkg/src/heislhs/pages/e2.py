"""The second page E2^{r,s} = H^r(Q; H^s(M)) with its products.

For even r a cell is the sigma-invariants of H^s(M); for odd r it is the
coinvariants.  An element is carried by a representative in H^s(M) (a lift,
for odd r) and compared through canonical coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..cohomology_m import (
    CohClass,
    coinvariants_basis,
    cup,
    invariants_basis,
    sigma_act,
    z2p,
)
from ..exact_linalg import image_membership, rank
from .labels import (
    Label,
    e2_generators,
    e2_labels,
    format_label,
    generator_bidegree,
    page3_definitions,
    parse_label,
    split_name,
)


class NotInvariantError(ValueError):
    pass


@dataclass(frozen=True)
class E2Element:
    p: int
    n: int
    r: int
    s: int
    rep: CohClass

    @classmethod
    def zero(cls, p: int, n: int, r: int, s: int) -> "E2Element":
        return cls(p, n, r, s, CohClass(p, max(s, -1)))

    def _like(self, rep: CohClass) -> "E2Element":
        return E2Element(self.p, self.n, self.r, self.s, rep)

    def _check(self, other: "E2Element") -> None:
        if (self.p, self.n, self.r, self.s) != (other.p, other.n, other.r, other.s):
            raise ValueError(f"cells differ: ({self.r},{self.s}) vs ({other.r},{other.s})")

    def __add__(self, other: "E2Element") -> "E2Element":
        self._check(other)
        return self._like(self.rep + other.rep)

    def __sub__(self, other: "E2Element") -> "E2Element":
        self._check(other)
        return self._like(self.rep - other.rep)

    def __neg__(self) -> "E2Element":
        return self._like(-self.rep)

    def __rmul__(self, c: int) -> "E2Element":
        return self._like(int(c) * self.rep)

    def __mul__(self, other):
        if isinstance(other, E2Element):
            return e2_product(self, other)
        return self._like(int(other) * self.rep)

    def coords(self) -> np.ndarray:
        """Coordinates in the canonical basis of the cell."""
        return cell_coordinates(self.p, self.r, self.s, self.rep.vec)

    def is_zero(self) -> bool:
        if self.s < 0:
            return True
        return not self.coords().any()

    def equals(self, other: "E2Element") -> bool:
        self._check(other)
        return (self - other).is_zero()


def cell_dimension(p: int, r: int, s: int) -> int:
    if r < 0 or s < 0:
        return 0
    return invariants_basis(p, s).dim if r % 2 == 0 else coinvariants_basis(p, s).dim


def cell_coordinates(p: int, r: int, s: int, vec) -> np.ndarray:
    if s < 0:
        return np.zeros(0, dtype=np.int64)
    v = np.asarray(vec, dtype=np.int64) % p
    if r % 2 == 0:
        space = invariants_basis(p, s)
        c = space.coordinates(v)
        back = (c @ space.basis) % p if space.dim else np.zeros_like(v)
        if not np.array_equal(back, v):
            raise NotInvariantError(f"representative in E2^({r},{s}) is not sigma-invariant")
        return c
    return coinvariants_basis(p, s).coordinates(v, p)


def cell_basis_vectors(p: int, r: int, s: int) -> np.ndarray:
    """Canonical representatives of the cell basis, one per row."""
    if r % 2 == 0:
        return invariants_basis(p, s).basis
    return coinvariants_basis(p, s).basis()


def from_coords(p: int, n: int, r: int, s: int, coords) -> E2Element:
    c = np.asarray(coords, dtype=np.int64) % p
    basis = cell_basis_vectors(p, r, s)
    vec = (c @ basis) % p if basis.shape[0] else np.zeros(s + 1, dtype=np.int64)
    return E2Element(p, n, r, s, CohClass(p, s, vec))


# -- products -------------------------------------------------------------

@lru_cache(maxsize=None)
def odd_pair_weights(p: int, n: int) -> np.ndarray:
    """w[a, b] = #{0 <= i < j < p^n : i = a, j = b mod p}, reduced mod p.

    sigma has order p on H*(M), so the double sum over i < j collapses to
    these residue-class counts.
    """
    N = p ** (n - 1)
    w = np.zeros((p, p), dtype=np.int64)
    for a in range(p):
        for b in range(p):
            w[a, b] = N * (N + 1) // 2 if b > a else N * (N - 1) // 2
    return w % p


def _odd_odd_sum(x: CohClass, y: CohClass, p: int, n: int) -> CohClass:
    w = odd_pair_weights(p, n)
    out = CohClass(p, x.degree + y.degree)
    for a in range(p):
        if not w[a].any():
            continue
        xa = sigma_act(x, a)
        for b in range(p):
            if w[a, b]:
                out = out + int(w[a, b]) * cup(xa, sigma_act(y, b))
    return out


def odd_odd_sum_literal(x: CohClass, y: CohClass, p: int, n: int) -> CohClass:
    """sum_{0 <= i < j < p^n} sigma^i x  cup  sigma^j y, term by term (slow oracle)."""
    q = p**n
    out = CohClass(p, x.degree + y.degree)
    for i in range(q):
        xi = sigma_act(x, i)
        for j in range(i + 1, q):
            out = out + cup(xi, sigma_act(y, j))
    return out


def e2_product(x: E2Element, y: E2Element, literal: bool = False) -> E2Element:
    """Product in E2 through representatives.

    With ``phi`` at (r, s) and ``phi'`` at (r', s'):
    (-1)^{r' s} phi.phi' = phi cup phi' if r or r' is even, and the
    double sum over sigma-translates if both are odd.
    """
    if (x.p, x.n) != (y.p, y.n):
        raise ValueError("elements from different pages")
    p, n = x.p, x.n
    r, s = x.r + y.r, x.s + y.s
    sign = -1 if (y.r * x.s) % 2 else 1
    if x.r % 2 and y.r % 2:
        body = (odd_odd_sum_literal if literal else _odd_odd_sum)(x.rep, y.rep, p, n)
    else:
        body = cup(x.rep, y.rep)
    return E2Element(p, n, r, s, sign * body)


# -- generators and labels --------------------------------------------------

def unit(p: int, n: int) -> E2Element:
    return E2Element(p, n, 0, 0, CohClass.parse(p, "1"))


@lru_cache(maxsize=None)
def _generator_rep(p: int, n: int, name: str) -> E2Element:
    kind, k = split_name(name)
    r, s = generator_bidegree(p, name)
    P = lambda t: CohClass.parse(p, t)  # noqa: E731
    if kind == "lambda":
        rep = P("x1") if k == 1 else P("x2")
    elif kind == "nu" and k == 2:
        rep = P("x1*y1")
    elif kind == "nu" and k == 3:
        rep = P("x1*y2") - P("y1*x2")
    elif kind == "nu":
        rep = z2p(p)
    elif kind == "gamma":
        rep = P("1")
    elif kind == "mu":
        rep = P(f"y1*y2^{k // 2 - 1}") if k % 2 == 0 else P(f"y2^{k // 2}")
    else:
        sign, label = page3_definitions(p)[name]
        return sign * evaluate_label(p, n, parse_label(label))
    return E2Element(p, n, r, s, rep)


def generator_element(p: int, n: int, name: str) -> E2Element:
    return _generator_rep(p, n, name)


def evaluate_label(p: int, n: int, label: Label) -> E2Element:
    """The product of the label's factors, left to right, in E2."""
    out = unit(p, n)
    for name, e in label:
        g = generator_element(p, n, name)
        for _ in range(e):
            out = e2_product(out, g)
    return out


def evaluate(p: int, n: int, text: str) -> E2Element:
    return evaluate_label(p, n, parse_label(text))


# -- cells and pages --------------------------------------------------------

@dataclass
class E2Cell:
    r: int
    s: int
    kind: str  # "invariants" or "coinvariants"
    dim: int
    labels: List[Label]
    label_matrix: np.ndarray  # rows: label coordinates in the canonical basis
    labels_verified: bool

    @property
    def label_strings(self) -> List[str]:
        return [format_label(l) for l in self.labels]

    def label_coordinates(self, coords, p: int) -> Optional[np.ndarray]:
        """Express canonical coordinates in the labeled basis."""
        if self.dim == 0:
            return np.zeros(0, dtype=np.int64)
        return image_membership(self.label_matrix.T, coords, p)


@dataclass
class Page:
    page: int
    p: int
    n: int
    r_cap: int
    s_cap: int
    cells: Dict[Tuple[int, int], object] = field(default_factory=dict)

    def cell(self, r: int, s: int):
        try:
            return self.cells[(r, s)]
        except KeyError:
            raise KeyError(f"cell ({r},{s}) outside the computed range") from None

    def dims(self) -> Dict[Tuple[int, int], int]:
        return {k: c.dim for k, c in sorted(self.cells.items())}


def _label_matrix(p: int, n: int, r: int, s: int, labels: Sequence[Label]) -> np.ndarray:
    rows = []
    for lab in labels:
        x = evaluate_label(p, n, lab)
        if (x.r, x.s) != (r, s):
            raise ValueError(f"label {format_label(lab)} lives in ({x.r},{x.s}), not ({r},{s})")
        rows.append(x.coords())
    dim = cell_dimension(p, r, s)
    return np.array(rows, dtype=np.int64).reshape(len(rows), dim)


def build_e2_cell(p: int, n: int, r: int, s: int) -> E2Cell:
    dim = cell_dimension(p, r, s)
    labels = e2_labels(p, r, s)
    mat = _label_matrix(p, n, r, s, labels)
    ok = len(labels) == dim and (dim == 0 or rank(mat, p) == dim)
    return E2Cell(r, s, "invariants" if r % 2 == 0 else "coinvariants", dim, labels, mat, ok)


def check_params(p: int, n: int) -> None:
    if p < 3 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ValueError(f"p must be an odd prime, got {p}")
    if n < 2:
        raise ValueError("the page engine requires n >= 2")


def build_e2(p: int, n: int, r_cap: int, s_cap: int) -> Page:
    check_params(p, n)
    if r_cap < 0 or s_cap < 0:
        raise ValueError("caps must be non-negative")
    page = Page(2, p, n, r_cap, s_cap)
    for r in range(r_cap + 1):
        for s in range(s_cap + 1):
            page.cells[(r, s)] = build_e2_cell(p, n, r, s)
    return page


def e2_dimension_closed_form(p: int, r: int, s: int) -> int:
    """dim E2^{r,s} = sum_l dim D2^{r, s - 2pl}, with dim D2^{r,t} = 1 for t <= 1 and 2 otherwise."""
    return sum(1 if t <= 1 else 2 for t in range(s, -1, -2 * p))


def generator_table(p: int, n: int, page: int = 2) -> List[dict]:
    from .labels import e3_generators

    gens = e2_generators(p) if page == 2 else e3_generators(p)
    out = []
    for g in gens:
        x = generator_element(p, n, g.name)
        out.append({"name": g.name, "r": g.r, "s": g.s, "representative": repr(x.rep)})
    return out
