"""E3 = ker d2 / im d2, cell by cell, with canonical representatives.

Representatives are echelon-canonical: the image of d2 is put in RREF, the
kernel is reduced modulo it and put in RREF again.  Named labels (from the
structure rules in ``labels``) are attached only after checking that they
evaluate to a basis of the computed homology; otherwise the cell is
labeled by canonical combinations of E2 labels and the mismatch is
recorded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..exact_linalg import image_membership, kernel_basis, rank, reduce_mod_rows, row_space_basis
from .d2 import d2, d2_matrix
from .e2 import E2Element, Page, build_e2, check_params, evaluate_label, from_coords
from .labels import (
    Label,
    e3_generators,
    e3_labels,
    format_label,
    parse_label,
)


def signed(c: int, p: int) -> int:
    c %= p
    return c - p if c > p // 2 else c


def format_combination(coeffs, labels: List[Label], p: int) -> str:
    parts = []
    for c, lab in zip(coeffs, labels):
        c = signed(int(c), p)
        if not c:
            continue
        name = format_label(lab)
        mag = abs(c)
        body = name if mag == 1 else (str(mag) if name == "1" else f"{mag}*{name}")
        parts.append(("- " if c < 0 else "+ ") + body)
    if not parts:
        return "0"
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


@dataclass
class E3Cell:
    r: int
    s: int
    e2_dim: int
    image: np.ndarray  # RREF rows, E2 canonical coordinates
    image_pivots: List[int]
    reps: np.ndarray  # RREF rows, reduced modulo the image
    rep_pivots: List[int]
    kernel_check: np.ndarray  # d2 matrix out of the cell, for membership tests
    structure_labels: List[Label]
    structure_verified: bool
    label_names: List[str] = field(default_factory=list)
    label_matrix: np.ndarray = field(default_factory=lambda: np.zeros((0, 0), dtype=np.int64))

    @property
    def dim(self) -> int:
        return self.reps.shape[0]

    def is_cycle(self, coords, p: int) -> bool:
        if self.kernel_check.shape[1] == 0:
            return True
        return not ((np.asarray(coords) @ self.kernel_check) % p).any()

    def coordinates(self, coords, p: int) -> np.ndarray:
        """E3 coordinates of a d2-cycle given by E2 canonical coordinates."""
        if not self.is_cycle(coords, p):
            raise ValueError(f"not a d2-cycle in ({self.r},{self.s})")
        v = reduce_mod_rows(coords, self.image, self.image_pivots, p) if self.image.shape[0] else np.asarray(coords) % p
        return np.asarray(v)[self.rep_pivots].copy() % p

    def label_coordinates(self, coords, p: int) -> Optional[np.ndarray]:
        c = self.coordinates(coords, p)
        if self.dim == 0:
            return np.zeros(0, dtype=np.int64)
        return image_membership(self.label_matrix.T, c, p)


def _cell(p: int, n: int, r: int, s: int, e2: Page) -> E3Cell:
    e2cell = e2.cell(r, s)
    dim = e2cell.dim
    out_m = d2_matrix(p, n, r, s)
    in_m = d2_matrix(p, n, r - 2, s + 1) if r >= 2 else np.zeros((0, dim), dtype=np.int64)
    ker = kernel_basis(out_m.T, p) if out_m.shape[1] else np.eye(dim, dtype=np.int64)
    img, img_piv = row_space_basis(in_m, p, dim)
    if ker.shape[0]:
        reduced = np.array([reduce_mod_rows(v, img, img_piv, p) for v in ker]) if img.shape[0] else ker % p
    else:
        reduced = np.zeros((0, dim), dtype=np.int64)
    reps, rep_piv = row_space_basis(reduced, p, dim)
    cell = E3Cell(r, s, dim, img, img_piv, reps, rep_piv, out_m, e3_labels(p, r, s), False)

    # named structure labels
    rows = []
    ok = len(cell.structure_labels) == cell.dim
    for lab in cell.structure_labels:
        x = evaluate_label(p, n, lab).coords()
        if not cell.is_cycle(x, p):
            ok = False
            break
        rows.append(cell.coordinates(x, p))
    if ok and cell.dim:
        ok = rank(np.array(rows), p) == cell.dim
    cell.structure_verified = ok
    if ok:
        cell.label_names = [format_label(l) for l in cell.structure_labels]
        cell.label_matrix = np.array(rows, dtype=np.int64).reshape(cell.dim, cell.dim)
        return cell

    # fall back to canonical combinations of E2 labels
    L2 = e2cell.label_matrix  # label -> canonical
    to_label = lambda v: image_membership(L2.T, v, p)  # noqa: E731
    if cell.dim:
        img_l = np.array([to_label(v) for v in img]) if img.shape[0] else np.zeros((0, dim), dtype=np.int64)
        ker_l = np.array([to_label(v) for v in ker])
        img_lr, img_lp = row_space_basis(img_l, p, dim)
        red_l = np.array([reduce_mod_rows(v, img_lr, img_lp, p) for v in ker_l]) if img_lr.shape[0] else ker_l % p
        reps_l, _ = row_space_basis(red_l, p, dim)
        cell.label_names = [format_combination(v, e2cell.labels, p) for v in reps_l]
        cell.label_matrix = np.array([cell.coordinates((v @ L2) % p, p) for v in reps_l], dtype=np.int64)
    else:
        cell.label_matrix = np.zeros((0, 0), dtype=np.int64)
    return cell


def build_e3(p: int, n: int, r_cap: int, s_cap: int, e2: Optional[Page] = None) -> Page:
    """E3 on 0 <= r <= r_cap, 0 <= s <= s_cap (E2 is built one step further)."""
    check_params(p, n)
    if e2 is None or e2.r_cap < r_cap + 2 or e2.s_cap < s_cap + 1:
        e2 = build_e2(p, n, r_cap + 2, s_cap + 1)
    page = Page(3, p, n, r_cap, s_cap)
    for r in range(r_cap + 1):
        for s in range(s_cap + 1):
            page.cells[(r, s)] = _cell(p, n, r, s, e2)
    page.e2 = e2  # type: ignore[attr-defined]
    return page


def e3_element_coordinates(page: Page, x: E2Element) -> np.ndarray:
    cell = page.cell(x.r, x.s)
    return cell.coordinates(x.coords(), page.p)


def e3_relation(page: Page, lhs: str, rhs: str) -> Optional[int]:
    """The scalar c with [lhs] = c [rhs] in E3, or None if there is none."""
    p, n = page.p, page.n
    a = evaluate_label(p, n, parse_label(lhs))
    b = evaluate_label(p, n, parse_label(rhs))
    if (a.r, a.s) != (b.r, b.s):
        raise ValueError("labels live in different cells")
    ca = e3_element_coordinates(page, a)
    cb = e3_element_coordinates(page, b)
    sol = image_membership(cb.reshape(-1, 1), ca, p)
    return None if sol is None else int(sol[0])


def generator_survival(page: Page) -> List[dict]:
    """Which named page-3 generators are d2-cycles, and whether each is nonzero in E3."""
    p, n = page.p, page.n
    out = []
    for g in e3_generators(p):
        x = evaluate_label(p, n, parse_label(g.name))
        cycle = d2(x).is_zero()
        in_range = (g.r, g.s) in page.cells
        nonzero = None
        if cycle and in_range:
            nonzero = bool(e3_element_coordinates(page, x).any())
        out.append({"name": g.name, "r": g.r, "s": g.s, "d2_cycle": bool(cycle), "nonzero_in_e3": nonzero})
    return out


def e3_dimension_table(p: int, r: int, s: int) -> int:
    """Dimension predicted by the labeled structure rules."""
    return len(e3_labels(p, r, s))
