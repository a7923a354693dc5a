"""The second differential d2 : E2^{r,s} -> E2^{r+2,s-1}.

d2 of the class of f in H^s(M) = Hom_KM(P_s, K) is represented by
(-1)^r f o tau.  The coefficient module is trivial, so f is applied to
tau(e^{s-1}_j) through the augmentation of each KM-coefficient.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..chain_maps import tau
from ..cohomology_m import CohClass
from ..resolution import ResBasisIndex
from .e2 import E2Element, cell_basis_vectors, cell_dimension, from_coords


@lru_cache(maxsize=None)
def tau_augmentation_matrix(p: int, n: int, k: int) -> np.ndarray:
    """A[j, l] = augmentation of the e^{k+1}_l coefficient of tau(e^k_j)."""
    out = np.zeros((k + 1, k + 2), dtype=np.int64)
    for j in range(k + 1):
        out[j] = tau(p, n, ResBasisIndex(k, j)).augmentation_vector()
    out %= p
    out.flags.writeable = False
    return out


def f_compose_tau(p: int, n: int, f: CohClass) -> CohClass:
    """f o tau as a class of degree deg(f) - 1."""
    s = f.degree
    if s < 1:
        raise ValueError("f o tau needs degree >= 1")
    a = tau_augmentation_matrix(p, n, s - 1)
    return CohClass(p, s - 1, a @ f.vec)


def d2_computed(x: E2Element) -> E2Element:
    """(-1)^r f o tau, with no edge-case shortcuts."""
    sign = -1 if x.r % 2 else 1
    return E2Element(x.p, x.n, x.r + 2, x.s - 1, sign * f_compose_tau(x.p, x.n, x.rep))


def d2(x: E2Element) -> E2Element:
    """d2 with the bottom-row conventions.

    s = 0 has no target.  For s = 1 the target is the bottom row, which no
    differential hits because the extension splits, so zero is returned;
    ``d2_computed`` evaluates the formula there as a cross-check.
    """
    if x.s <= 1:
        return E2Element.zero(x.p, x.n, x.r + 2, x.s - 1)
    return d2_computed(x)


def d2_matrix(p: int, n: int, r: int, s: int) -> np.ndarray:
    """Rows are the canonical coordinates of d2 of each canonical basis vector of E2^{r,s}."""
    src = cell_dimension(p, r, s)
    tgt = cell_dimension(p, r + 2, s - 1)
    out = np.zeros((src, tgt), dtype=np.int64)
    if src == 0 or tgt == 0:
        return out
    basis = cell_basis_vectors(p, r, s)
    for k in range(src):
        out[k] = d2(from_coords(p, n, r, s, np.eye(src, dtype=np.int64)[k])).coords()
    return out
