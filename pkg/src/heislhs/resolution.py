"""The minimal free KM-resolution P of the trivial module, M = C_q x C_q.

P_k is free on e^k_0, ..., e^k_k where e^i_j = e'_{i-j} (x) e''_j is the
tensor of the basis elements of the minimal resolutions over <a> and <b>.
Indices outside ``0 <= j <= i`` denote the zero element.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Dict, List, Optional

import numpy as np

from .exact_linalg import sparse_rank
from .group_algebra import GroupAlgebraElement, _convolve, special_elements
from .report import Report


@dataclass(frozen=True, order=True)
class ResBasisIndex:
    upper: int
    lower: int

    @property
    def valid(self) -> bool:
        return 0 <= self.lower <= self.upper

    def __str__(self) -> str:
        return f"e^{self.upper}_{self.lower}"


class FreeModuleElement:
    """Element of P_k: a KM-coefficient for each basis element e^k_j.

    ``coeffs[j]`` is the (q, q) coefficient array of e^k_j.
    """

    __slots__ = ("p", "n", "degree", "coeffs")

    def __init__(self, p: int, n: int, degree: int, coeffs=None):
        q = p**n
        if coeffs is None:
            coeffs = np.zeros((degree + 1, q, q), dtype=np.int64)
        arr = np.asarray(coeffs, dtype=np.int64) % p
        if arr.shape != (degree + 1, q, q):
            raise ValueError(f"bad coefficient shape {arr.shape} for degree {degree}")
        self.p, self.n, self.degree, self.coeffs = p, n, degree, arr

    @classmethod
    def basis(cls, p: int, n: int, idx: ResBasisIndex, coeff: Optional[GroupAlgebraElement] = None):
        out = cls(p, n, idx.upper)
        if idx.valid:
            out.coeffs[idx.lower] = coeff.coeffs if coeff is not None else _unit(p, n)
        return out

    def term(self, j: int) -> GroupAlgebraElement:
        return GroupAlgebraElement(self.p, self.n, self.coeffs[j])

    def terms(self) -> Dict[ResBasisIndex, GroupAlgebraElement]:
        return {
            ResBasisIndex(self.degree, j): self.term(j) for j in range(self.degree + 1) if self.coeffs[j].any()
        }

    def _like(self, arr) -> "FreeModuleElement":
        return FreeModuleElement(self.p, self.n, self.degree, arr)

    def _check(self, other: "FreeModuleElement") -> None:
        if (self.p, self.n, self.degree) != (other.p, other.n, other.degree):
            raise ValueError("elements live in different modules")

    def __add__(self, other: "FreeModuleElement") -> "FreeModuleElement":
        self._check(other)
        return self._like(self.coeffs + other.coeffs)

    def __sub__(self, other: "FreeModuleElement") -> "FreeModuleElement":
        self._check(other)
        return self._like(self.coeffs - other.coeffs)

    def __neg__(self) -> "FreeModuleElement":
        return self._like(-self.coeffs)

    def __rmul__(self, scalar) -> "FreeModuleElement":
        """Left multiplication by an integer or a KM element."""
        if isinstance(scalar, (int, np.integer)):
            return self._like(self.coeffs * int(scalar))
        if isinstance(scalar, GroupAlgebraElement):
            out = np.zeros_like(self.coeffs)
            for j in range(self.degree + 1):
                if self.coeffs[j].any():
                    out[j] = _convolve(scalar.coeffs, self.coeffs[j], self.p)
            return self._like(out)
        return NotImplemented

    def twist(self, r: int) -> "FreeModuleElement":
        """Twist every coefficient by sigma^r."""
        q = self.p**self.n
        i = np.arange(q)[:, None]
        j = np.arange(q)[None, :]
        return self._like(self.coeffs[:, i, (j - r * i) % q])

    def augmentation_vector(self) -> np.ndarray:
        return self.coeffs.sum(axis=(1, 2)) % self.p

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def __eq__(self, other) -> bool:
        if not isinstance(other, FreeModuleElement):
            return NotImplemented
        return (self.p, self.n, self.degree) == (other.p, other.n, other.degree) and np.array_equal(
            self.coeffs, other.coeffs
        )

    def __repr__(self) -> str:
        parts = [f"({c!r})*{i}" for i, c in self.terms().items()]
        return " + ".join(parts) if parts else f"0 in P_{self.degree}"


@lru_cache(maxsize=None)
def _unit(p: int, n: int) -> np.ndarray:
    arr = np.zeros((p**n, p**n), dtype=np.int64)
    arr[0, 0] = 1
    arr.setflags(write=False)
    return arr


def _combine(p: int, n: int, degree: int, terms) -> FreeModuleElement:
    out = FreeModuleElement(p, n, degree)
    for coeff, idx in terms:
        if 0 <= idx.lower <= idx.upper:
            c = coeff.coeffs if isinstance(coeff, GroupAlgebraElement) else (int(coeff) * _unit(p, n))
            out.coeffs[idx.lower] = (out.coeffs[idx.lower] + c) % p
    return out


def differential(p: int, n: int, e: ResBasisIndex) -> FreeModuleElement:
    """The boundary of a basis element e^i_j (zero if the index is out of range)."""
    if e.upper < 1:
        raise ValueError("the differential starts in degree 1; use the augmentation in degree 0")
    return _differential_cached(p, n, e.upper, e.lower)


@lru_cache(maxsize=4096)
def _differential_cached(p: int, n: int, upper: int, lower: int) -> FreeModuleElement:
    s = special_elements(p, n)
    e = ResBasisIndex
    k = upper - 1
    if not 0 <= lower <= upper:
        return FreeModuleElement(p, n, k)
    if upper % 2 == 0:
        if lower % 2 == 0:
            terms = [(s.Na, e(k, lower)), (s.Nb, e(k, lower - 1))]
        else:
            terms = [(s.a1, e(k, lower)), (-s.b1, e(k, lower - 1))]
    else:
        if lower % 2 == 0:
            terms = [(s.a1, e(k, lower)), (-s.Nb, e(k, lower - 1))]
        else:
            terms = [(s.Na, e(k, lower)), (s.b1, e(k, lower - 1))]
    return _combine(p, n, k, terms)


def differential_on_element(x: FreeModuleElement) -> FreeModuleElement:
    """KM-linear extension of the differential."""
    if x.degree < 1:
        raise ValueError("the differential starts in degree 1")
    out = FreeModuleElement(x.p, x.n, x.degree - 1)
    for j in range(x.degree + 1):
        if x.coeffs[j].any():
            out = out + GroupAlgebraElement(x.p, x.n, x.coeffs[j]) * differential(x.p, x.n, ResBasisIndex(x.degree, j))
    return out


def augmentation(x: FreeModuleElement) -> int:
    """epsilon: P_0 = KM e^0_0 -> K."""
    if x.degree != 0:
        raise ValueError("the augmentation is defined on P_0")
    return int(x.coeffs[0].sum() % x.p)


# -- exactness --------------------------------------------------------

@lru_cache(maxsize=None)
def _binomial_matrix(p: int, q: int) -> np.ndarray:
    return np.array([[comb(i, s) % p for s in range(q)] for i in range(q)], dtype=np.int64)


def nilpotent_coordinates(x: GroupAlgebraElement) -> np.ndarray:
    """Coordinates of ``x`` in the basis A^s B^t, A = a - 1, B = b - 1.

    Since (a - 1)^q = a^q - 1 = 0 in characteristic p, these monomials with
    s, t < q form a basis of KM in which multiplication by A or B is a shift.
    """
    c = _binomial_matrix(x.p, x.q)
    return (c.T @ x.coeffs @ c) % x.p


def differential_matrix(p: int, n: int, k: int):
    """COO data of d_k : P_k -> P_{k-1} in the A^s B^t e^k_j bases.

    Column index ``(j*q + s)*q + t`` stands for A^s B^t e^k_j and likewise for
    rows in degree k-1.  Returns ``(rows, cols, vals, shape)``.
    """
    q = p**n
    rows, cols, vals = [], [], []
    st = np.arange(q * q)
    s_all, t_all = st // q, st % q
    for j in range(k + 1):
        d = differential(p, n, ResBasisIndex(k, j))
        for l in range(k):
            if not d.coeffs[l].any():
                continue
            nc = nilpotent_coordinates(d.term(l))
            for u, v in np.argwhere(nc):
                c = int(nc[u, v])
                ok = (s_all + u < q) & (t_all + v < q)
                s, t = s_all[ok], t_all[ok]
                cols.append((j * q + s) * q + t)
                rows.append((l * q + s + u) * q + t + v)
                vals.append(np.full(s.size, c, dtype=np.int64))
    shape = (k * q * q, (k + 1) * q * q)
    if not rows:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty, empty, shape
    return np.concatenate(rows), np.concatenate(cols), np.concatenate(vals), shape


def differential_rank(p: int, n: int, k: int) -> int:
    rows, cols, vals, shape = differential_matrix(p, n, k)
    return sparse_rank(rows, cols, vals, shape, p)


def dense_differential_matrix(p: int, n: int, k: int) -> np.ndarray:
    """d_k in the group-element basis g e^k_j (column ``(j*q*q) + flat(g)``).

    Quadratic in the group order; only for small cross-checks.
    """
    q = p**n
    out = np.zeros((k * q * q, (k + 1) * q * q), dtype=np.int64)
    for j in range(k + 1):
        d = differential(p, n, ResBasisIndex(k, j))
        for g in range(q * q):
            shifted = np.roll(d.coeffs, (g // q, g % q), axis=(1, 2))
            out[:, j * q * q + g] = shifted.reshape(-1)
    return out % p


def verify_exactness(p: int, n: int, degree_cap: int) -> Report:
    """Check that P is a minimal free resolution up to ``degree_cap``."""
    if degree_cap < 1:
        raise ValueError("degree_cap must be at least 1")
    q = p**n
    rep = Report(f"resolution exactness p={p} n={n} cap={degree_cap}")
    t0 = time.perf_counter()
    eps = [augmentation(differential(p, n, ResBasisIndex(1, j))) for j in range(2)]
    rep.add("augmentation o d1 == 0", all(v == 0 for v in eps), eps, time.perf_counter() - t0)

    t0 = time.perf_counter()
    bad: List[str] = []
    non_minimal: List[str] = []
    for k in range(1, degree_cap + 1):
        for j in range(k + 1):
            d = differential(p, n, ResBasisIndex(k, j))
            if d.augmentation_vector().any():
                non_minimal.append(str(ResBasisIndex(k, j)))
            if k >= 2 and not differential_on_element(d).is_zero():
                bad.append(str(ResBasisIndex(k, j)))
    rep.add("d o d == 0 on basis", not bad, bad, time.perf_counter() - t0)
    rep.add("coefficients of d lie in the augmentation ideal", not non_minimal, non_minimal)

    ranks: Dict[int, int] = {}
    t0 = time.perf_counter()
    for k in range(1, degree_cap + 1):
        ranks[k] = differential_rank(p, n, k)
    elapsed = time.perf_counter() - t0
    rep.add("rank d1 == dim ker(augmentation)", ranks[1] == q * q - 1, {"rank": ranks[1], "expected": q * q - 1}, elapsed)
    for k in range(1, degree_cap):
        dim_ker = (k + 1) * q * q - ranks[k]
        rep.add(
            f"exact at P_{k}", dim_ker == ranks[k + 1], {"dim_ker": dim_ker, "rank_next": ranks[k + 1]}
        )
    return rep
