"""Group algebras F_p[C_q x C_q] and F_p[C_q] with q = p**n.

An element stores a dense coefficient array indexed by exponents: shape
``(q, q)`` for the rank-2 algebra KM = F_p[<a, b>] (entry ``[i, j]`` is the
coefficient of ``a^i b^j``) and shape ``(q,)`` for the cyclic algebra
KQ = F_p[<sigma>].
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Dict, Iterable, Tuple, Union

import numpy as np

# Below this support size a product is computed by summing shifted copies;
# above it, by FFT convolution with exact rounding.
_SHIFT_LIMIT = 48


class GroupAlgebraElement:
    __slots__ = ("p", "n", "q", "rank", "coeffs")

    def __init__(self, p: int, n: int, coeffs, rank: int = 2):
        q = p**n
        arr = np.asarray(coeffs, dtype=np.int64) % p
        expected = (q, q) if rank == 2 else (q,)
        if rank not in (1, 2) or arr.shape != expected:
            raise ValueError(f"coefficient array of shape {arr.shape} does not fit rank {rank}, q={q}")
        arr.setflags(write=False)
        self.p, self.n, self.q, self.rank, self.coeffs = p, n, q, rank, arr

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, p: int, n: int, rank: int = 2) -> "GroupAlgebraElement":
        q = p**n
        return cls(p, n, np.zeros((q, q) if rank == 2 else (q,), dtype=np.int64), rank)

    @classmethod
    def monomial(cls, p: int, n: int, exps: Union[int, Tuple[int, ...]], coeff: int = 1, rank: int = 2):
        """``coeff * a^i b^j`` (rank 2, ``exps=(i, j)``) or ``coeff * sigma^i`` (rank 1)."""
        out = np.zeros(((p**n, p**n) if rank == 2 else (p**n,)), dtype=np.int64)
        if rank == 1 and not isinstance(exps, tuple):
            exps = (exps,)
        out[tuple(e % p**n for e in exps)] = coeff
        return cls(p, n, out, rank)

    @classmethod
    def one(cls, p: int, n: int, rank: int = 2) -> "GroupAlgebraElement":
        return cls.monomial(p, n, (0, 0) if rank == 2 else (0,), 1, rank)

    @classmethod
    def from_dict(cls, p: int, n: int, terms: Dict[Tuple[int, ...], int], rank: int = 2):
        q = p**n
        out = np.zeros((q, q) if rank == 2 else (q,), dtype=np.int64)
        for exps, c in terms.items():
            idx = tuple(e % q for e in exps)
            out[idx] = (out[idx] + c) % p
        return cls(p, n, out, rank)

    # -- arithmetic ---------------------------------------------------
    def _check(self, other: "GroupAlgebraElement") -> None:
        if (self.p, self.n, self.rank) != (other.p, other.n, other.rank):
            raise ValueError(
                f"mismatched group algebras: (p={self.p}, n={self.n}, rank={self.rank}) "
                f"vs (p={other.p}, n={other.n}, rank={other.rank})"
            )

    def _new(self, arr) -> "GroupAlgebraElement":
        return GroupAlgebraElement(self.p, self.n, arr, self.rank)

    def __add__(self, other):
        if isinstance(other, int):
            other = self.one(self.p, self.n, self.rank) * other
        self._check(other)
        return self._new(self.coeffs + other.coeffs)

    __radd__ = __add__

    def __neg__(self):
        return self._new(-self.coeffs)

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.one(self.p, self.n, self.rank) * other
        self._check(other)
        return self._new(self.coeffs - other.coeffs)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return self._new(self.coeffs * (int(other) % self.p))
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        self._check(other)
        return self._new(_convolve(self.coeffs, other.coeffs, self.p))

    def __rmul__(self, other):
        if isinstance(other, (int, np.integer)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        result, base = self.one(self.p, self.n, self.rank), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.one(self.p, self.n, self.rank) * other
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return (self.p, self.n, self.rank) == (other.p, other.n, other.rank) and np.array_equal(
            self.coeffs, other.coeffs
        )

    def __hash__(self):
        return hash((self.p, self.n, self.rank, self.coeffs.tobytes()))

    def __bool__(self) -> bool:
        return bool(self.coeffs.any())

    def __repr__(self) -> str:
        terms = self.terms()
        if not terms:
            return "0"
        sym = ("a", "b") if self.rank == 2 else ("sigma",)
        parts = []
        for exps, c in sorted(terms.items())[:8]:
            mono = "*".join(f"{s}^{e}" for s, e in zip(sym, exps) if e) or "1"
            parts.append(f"{c}*{mono}")
        more = " + ..." if len(terms) > 8 else ""
        return " + ".join(parts) + more

    # -- structure ----------------------------------------------------
    def terms(self) -> Dict[Tuple[int, ...], int]:
        idx = np.argwhere(self.coeffs)
        return {tuple(int(x) for x in i): int(self.coeffs[tuple(i)]) for i in idx}

    @property
    def support_size(self) -> int:
        return int(np.count_nonzero(self.coeffs))

    def augmentation(self) -> int:
        return int(self.coeffs.sum() % self.p)

    def twist(self, r: int) -> "GroupAlgebraElement":
        """Apply the automorphism induced by sigma^r: ``a^i b^j -> a^i b^(j + r i)``."""
        if self.rank != 2:
            raise ValueError("the sigma twist acts on the rank-2 algebra KM")
        q = self.q
        i = np.arange(q)[:, None]
        j = np.arange(q)[None, :]
        return self._new(self.coeffs[i, (j - r * i) % q])


def _convolve(x: np.ndarray, y: np.ndarray, p: int) -> np.ndarray:
    sx, sy = np.count_nonzero(x), np.count_nonzero(y)
    if sx > sy:
        x, y, sx = y, x, sy
    if sx <= _SHIFT_LIMIT:
        out = np.zeros_like(y)
        for idx in np.argwhere(x):
            out += x[tuple(idx)] * np.roll(y, tuple(int(s) for s in idx), axis=tuple(range(y.ndim)))
        return out % p
    fx = np.fft.rfftn(x)
    fy = np.fft.rfftn(y)
    raw = np.fft.irfftn(fx * fy, s=x.shape, axes=tuple(range(x.ndim)))
    rounded = np.rint(raw)
    if np.abs(raw - rounded).max() > 0.25:  # pragma: no cover - magnitudes stay far below 2**50
        raise ArithmeticError("FFT convolution lost exactness")
    return rounded.astype(np.int64) % p


# -- named elements ----------------------------------------------------

def a_elem(p: int, n: int) -> GroupAlgebraElement:
    return GroupAlgebraElement.monomial(p, n, (1, 0))


def b_elem(p: int, n: int) -> GroupAlgebraElement:
    return GroupAlgebraElement.monomial(p, n, (0, 1))


def sigma_elem(p: int, n: int) -> GroupAlgebraElement:
    return GroupAlgebraElement.monomial(p, n, 1, rank=1)


class SpecialElements:
    """Norms, rho, kappa and partial norms for fixed ``(p, n)``."""

    def __init__(self, p: int, n: int):
        self.p, self.n, self.q = p, n, p**n
        q = self.q
        na = np.zeros((q, q), dtype=np.int64)
        na[:, 0] = 1
        self.Na = GroupAlgebraElement(p, n, na)
        self.Nb = GroupAlgebraElement(p, n, na.T)
        self.Nab = GroupAlgebraElement(p, n, np.eye(q, dtype=np.int64))
        # rho = sum_{0 <= j <= i < q} a^i b^j
        self.rho = GroupAlgebraElement(p, n, np.tril(np.ones((q, q), dtype=np.int64)))
        kap = np.zeros((q, q), dtype=np.int64)
        kap[:, 0] = np.arange(1, q + 1)
        self.kappa = GroupAlgebraElement(p, n, kap)
        self.a = a_elem(p, n)
        self.b = b_elem(p, n)
        self.one = GroupAlgebraElement.one(p, n)
        self.a1 = self.a - 1
        self.b1 = self.b - 1
        self.sigma_norm = self.partial_norm(q)

    def partial_norm(self, k: int) -> GroupAlgebraElement:
        """N_k(sigma) = sum_{i < k} sigma^i in KQ (k may exceed q; exponents wrap)."""
        arr = np.zeros(self.q, dtype=np.int64)
        np.add.at(arr, np.arange(k) % self.q, 1)
        return GroupAlgebraElement(self.p, self.n, arr, rank=1)


@lru_cache(maxsize=None)
def special_elements(p: int, n: int) -> SpecialElements:
    return SpecialElements(p, n)


def verify_rho_kappa_identities(p: int, n: int) -> Dict[str, bool]:
    """Evaluate the five rho/kappa identities by direct arithmetic."""
    s = special_elements(p, n)
    twisted_sum = GroupAlgebraElement.zero(p, n)
    b_pow = s.one
    for r in range(s.q):
        twisted_sum = twisted_sum + s.rho.twist(r) * b_pow
        b_pow = b_pow * s.b
    return {
        "rho*(b-1) == b*N(ab) - N(a)": s.rho * s.b1 == s.b * s.Nab - s.Na,
        "rho*(a-1) == N(b) - N(ab)": s.rho * s.a1 == s.Nb - s.Nab,
        "rho*(ab-1) == N(b) - N(a)": s.rho * (s.a * s.b - 1) == s.Nb - s.Na,
        "kappa*(a-1) == -N(a)": s.kappa * s.a1 == -s.Na,
        "sum_r rho^(sigma^r) b^r == kappa*N(b)": twisted_sum == s.kappa * s.Nb,
    }


def binomial_identity_check(i: int, j: int, m: int) -> Tuple[int, int]:
    """Both sides of sum m^(k-j) C(l,k) C(k,j) = sum (m+1)^(l-j) C(l,j) over j<=k<=l<=i."""
    if not 0 <= j <= i or m < 1:
        raise ValueError("need 0 <= j <= i and m >= 1")
    lhs = sum(m ** (k - j) * comb(l, k) * comb(k, j) for l in range(j, i + 1) for k in range(j, l + 1))
    rhs = sum((m + 1) ** (l - j) * comb(l, j) for l in range(j, i + 1))
    return lhs, rhs


def iter_group(p: int, n: int) -> Iterable[Tuple[int, int]]:
    q = p**n
    for i in range(q):
        for j in range(q):
            yield i, j
