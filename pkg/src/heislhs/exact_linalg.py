"""Dense linear algebra over the prime field F_p.

Matrices are plain numpy integer arrays; every routine reduces its input
modulo ``p`` first and returns canonical representatives in ``[0, p)``.
Reduced row echelon form is the one canonical-form primitive: kernels,
complements and preimages are all read off from it, so results are
deterministic for identical inputs.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components


def as_fp(m, p: int) -> np.ndarray:
    return np.asarray(m, dtype=np.int64) % p


def inv_mod(x: int, p: int) -> int:
    x %= p
    if x == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    return pow(x, -1, p)


def rref(m, p: int) -> Tuple[np.ndarray, List[int]]:
    """Return ``(R, pivots)`` with ``R`` the reduced row echelon form of ``m``.

    Zero rows are dropped, so ``R`` has exactly ``len(pivots)`` rows.
    """
    a = as_fp(m, p)
    if a.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    a = a.copy()
    rows, cols = a.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = (a[r] * inv_mod(int(a[r, c]), p)) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(m, p: int) -> int:
    a = np.asarray(m)
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def kernel_basis(m, p: int) -> np.ndarray:
    """Canonical basis of the right kernel ``{v : m v = 0}``, one vector per row.

    Vector ``k`` has a 1 in the ``k``-th free column and zeros in the other
    free columns.
    """
    a = np.asarray(m)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    r, piv = rref(a, p)
    free = [c for c in range(cols) if c not in set(piv)]
    out = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        out[k, f] = 1
        for i, pc in enumerate(piv):
            out[k, pc] = (-r[i, f]) % p
    return out


def row_space_basis(vectors, p: int, width: Optional[int] = None) -> Tuple[np.ndarray, List[int]]:
    """RREF basis of the span of the given row vectors."""
    a = np.asarray(vectors, dtype=np.int64)
    if a.size == 0:
        w = width if width is not None else (a.shape[1] if a.ndim == 2 else 0)
        return np.zeros((0, w), dtype=np.int64), []
    return rref(a, p)


def reduce_mod_rows(v, basis: np.ndarray, pivots: Sequence[int], p: int) -> np.ndarray:
    """Reduce ``v`` modulo the row space of an RREF ``basis``.

    The result vanishes at every pivot column; it is the canonical
    representative of ``v`` in the quotient.
    """
    out = as_fp(v, p).copy()
    for i, c in enumerate(pivots):
        if out[c]:
            out = (out - out[c] * basis[i]) % p
    return out


def image_membership(m, v, p: int) -> Optional[np.ndarray]:
    """Return some ``c`` with ``m @ c == v`` (mod p), or ``None`` if ``v`` is not in the column space."""
    a = as_fp(m, p)
    b = as_fp(v, p).reshape(-1)
    rows, cols = a.shape
    if b.shape[0] != rows:
        raise ValueError("vector length must equal the number of rows")
    if not b.any():
        return np.zeros(cols, dtype=np.int64)
    aug = np.concatenate([a, b[:, None]], axis=1)
    r, piv = rref(aug, p)
    if cols in piv:
        return None
    c = np.zeros(cols, dtype=np.int64)
    for i, pc in enumerate(piv):
        c[pc] = r[i, cols]
    return c


def complement_columns(pivots: Sequence[int], width: int) -> List[int]:
    taken = set(pivots)
    return [c for c in range(width) if c not in taken]


def sparse_rank(rows: np.ndarray, cols: np.ndarray, vals: np.ndarray, shape: Tuple[int, int], p: int) -> int:
    """Rank of a sparse matrix given in COO form.

    The bipartite row/column graph is split into connected components;
    the matrix is block diagonal after permuting rows and columns, so the
    rank is the sum of the dense ranks of the blocks.
    """
    n_rows, n_cols = shape
    vals = np.asarray(vals, dtype=np.int64) % p
    keep = vals != 0
    rows, cols, vals = np.asarray(rows)[keep], np.asarray(cols)[keep], vals[keep]
    if vals.size == 0:
        return 0
    graph = coo_matrix(
        (np.ones(vals.size), (rows, n_rows + cols)), shape=(n_rows + n_cols, n_rows + n_cols)
    )
    _, label = connected_components(graph, directed=False)
    comp = label[rows]
    order = np.argsort(comp, kind="stable")
    comp, rows, cols, vals = comp[order], rows[order], cols[order], vals[order]
    bounds = np.flatnonzero(np.diff(comp)) + 1
    total = 0
    for lo, hi in zip(np.r_[0, bounds], np.r_[bounds, comp.size]):
        r, c, v = rows[lo:hi], cols[lo:hi], vals[lo:hi]
        if hi - lo == 1:
            total += 1
            continue
        ur, ri = np.unique(r, return_inverse=True)
        uc, ci = np.unique(c, return_inverse=True)
        block = np.zeros((ur.size, uc.size), dtype=np.int64)
        np.add.at(block, (ri, ci), v)
        total += rank(block, p)
    return total
