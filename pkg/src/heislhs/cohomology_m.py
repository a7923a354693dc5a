"""H*(M) = Lambda(x1, y1) (x) F_p[x2, y2] with its sigma-action.

A degree-s class is a coefficient vector over the s+1 monomials of degree
s, indexed by the dual identification

    x1^e1 y1^e2 x2^i y2^j  <->  (e^s_l)^*,  l = e2 + 2 j,

so coordinate ``l`` pairs with the resolution basis element e^s_l.  Low
``l`` means x-heavy, high ``l`` means y-heavy.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Dict, List, Optional, Tuple

import numpy as np

from .exact_linalg import complement_columns, kernel_basis, rank, reduce_mod_rows, row_space_basis
from .resolution import ResBasisIndex


@dataclass(frozen=True, order=True)
class CohMonomial:
    e1: int  # exponent of x1
    e2: int  # exponent of y1
    i2: int  # exponent of x2
    j2: int  # exponent of y2

    def __post_init__(self):
        if self.e1 not in (0, 1) or self.e2 not in (0, 1) or self.i2 < 0 or self.j2 < 0:
            raise ValueError(f"invalid exponents {self}")

    @property
    def degree(self) -> int:
        return self.e1 + self.e2 + 2 * self.i2 + 2 * self.j2

    def __str__(self) -> str:
        parts = []
        for name, e in (("x1", self.e1), ("y1", self.e2), ("x2", self.i2), ("y2", self.j2)):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) or "1"


def dual_index(m: CohMonomial) -> ResBasisIndex:
    return ResBasisIndex(m.degree, m.e2 + 2 * m.j2)


def monomial_of(idx: ResBasisIndex) -> CohMonomial:
    s, l = idx.upper, idx.lower
    if not 0 <= l <= s:
        raise ValueError(f"{idx} is not a basis index")
    rest = s - l
    return CohMonomial(rest % 2, l % 2, rest // 2, l // 2)


def monomials(s: int) -> List[CohMonomial]:
    return [monomial_of(ResBasisIndex(s, l)) for l in range(s + 1)]


class CohClass:
    """Homogeneous element of H^s(M) over F_p."""

    __slots__ = ("p", "degree", "vec")

    def __init__(self, p: int, degree: int, vec=None):
        if vec is None:
            vec = np.zeros(degree + 1, dtype=np.int64)
        arr = np.asarray(vec, dtype=np.int64).reshape(-1) % p
        if arr.shape[0] != degree + 1:
            raise ValueError(f"degree {degree} needs {degree + 1} coordinates, got {arr.shape[0]}")
        self.p, self.degree, self.vec = p, degree, arr

    @classmethod
    def monomial(cls, p: int, m: CohMonomial, coeff: int = 1) -> "CohClass":
        out = cls(p, m.degree)
        out.vec[dual_index(m).lower] = coeff % p
        return out

    @classmethod
    def parse(cls, p: int, text: str) -> "CohClass":
        """Build a monomial such as ``"x1*y2^3"`` (``"1"`` for the unit)."""
        exps = {"x1": 0, "y1": 0, "x2": 0, "y2": 0}
        if text.strip() != "1":
            for factor in text.split("*"):
                name, _, e = factor.strip().partition("^")
                exps[name] += int(e) if e else 1
        m = CohMonomial(exps["x1"], exps["y1"], exps["x2"], exps["y2"])
        return cls.monomial(p, m)

    def _check(self, other: "CohClass") -> None:
        if self.p != other.p or self.degree != other.degree:
            raise ValueError("classes of different degree or characteristic")

    def __add__(self, other: "CohClass") -> "CohClass":
        self._check(other)
        return CohClass(self.p, self.degree, self.vec + other.vec)

    def __sub__(self, other: "CohClass") -> "CohClass":
        self._check(other)
        return CohClass(self.p, self.degree, self.vec - other.vec)

    def __neg__(self) -> "CohClass":
        return CohClass(self.p, self.degree, -self.vec)

    def __rmul__(self, c: int) -> "CohClass":
        return CohClass(self.p, self.degree, self.vec * int(c))

    def __mul__(self, other):
        if isinstance(other, CohClass):
            return cup(self, other)
        return CohClass(self.p, self.degree, self.vec * int(other))

    def __eq__(self, other) -> bool:
        if not isinstance(other, CohClass):
            return NotImplemented
        return self.p == other.p and self.degree == other.degree and np.array_equal(self.vec, other.vec)

    def __hash__(self):
        return hash((self.p, self.degree, self.vec.tobytes()))

    def is_zero(self) -> bool:
        return not self.vec.any()

    def terms(self) -> Dict[CohMonomial, int]:
        return {monomial_of(ResBasisIndex(self.degree, int(l))): int(self.vec[l]) for l in np.flatnonzero(self.vec)}

    def __repr__(self) -> str:
        t = self.terms()
        if not t:
            return "0"
        return " + ".join(f"{c}*{m}" for m, c in t.items())


@lru_cache(maxsize=None)
def _cup_table(s: int, t: int) -> Tuple[np.ndarray, np.ndarray]:
    """For each monomial pair, target coordinate (or -1 for zero) and Koszul sign."""
    target = np.full((s + 1, t + 1), -1, dtype=np.int64)
    sign = np.zeros((s + 1, t + 1), dtype=np.int64)
    for a, m in enumerate(monomials(s)):
        for b, m2 in enumerate(monomials(t)):
            if m.e1 + m2.e1 > 1 or m.e2 + m2.e2 > 1:
                continue
            prod = CohMonomial(m.e1 + m2.e1, m.e2 + m2.e2, m.i2 + m2.i2, m.j2 + m2.j2)
            target[a, b] = dual_index(prod).lower
            # moving the x1 of the right factor past the y1 of the left one
            sign[a, b] = -1 if (m.e2 and m2.e1) else 1
    return target, sign


def cup(x: CohClass, y: CohClass) -> CohClass:
    """Graded-commutative product; odd generators anticommute and square to zero."""
    if x.p != y.p:
        raise ValueError("classes over different fields")
    p = x.p
    target, sign = _cup_table(x.degree, y.degree)
    out = np.zeros(x.degree + y.degree + 1, dtype=np.int64)
    coef = np.outer(x.vec, y.vec) * sign
    ok = target >= 0
    np.add.at(out, target[ok], coef[ok])
    return CohClass(p, x.degree + y.degree, out)


# -- sigma action ------------------------------------------------------

@lru_cache(maxsize=None)
def _sigma_generator_matrix(p: int, s: int) -> np.ndarray:
    """Matrix of sigma on H^s(M): x1 -> x1, y1 -> x1 + y1, x2 -> x2, y2 -> x2 + y2.

    Column l is the image of the l-th monomial.
    """
    out = np.zeros((s + 1, s + 1), dtype=np.int64)
    for l, m in enumerate(monomials(s)):
        # x1^e1 (x1 + y1)^e2: only the y1 term survives when e1 = 1
        odd_terms = [(m.e1, m.e2, 1)] if (m.e1 == 1 or m.e2 == 0) else [(1, 0, 1), (0, 1, 1)]
        for e1, e2, c1 in odd_terms:
            for k in range(m.j2 + 1):
                c = c1 * comb(m.j2, k)
                mono = CohMonomial(e1, e2, m.i2 + m.j2 - k, k)
                out[dual_index(mono).lower, l] += c
    return out % p


def sigma_matrix(p: int, s: int, r: int = 1) -> np.ndarray:
    """Matrix of sigma^r on H^s(M), computed by iterating sigma (binary powering)."""
    return _sigma_power(p, s, r % _sigma_order(p, s))


def _sigma_order(p: int, s: int) -> int:
    # unipotent over F_p, so the order divides a power of p; p^(s+1) is a safe period
    return p ** (s + 1)


@lru_cache(maxsize=None)
def _sigma_power(p: int, s: int, r: int) -> np.ndarray:
    base = _sigma_generator_matrix(p, s)
    result = np.eye(s + 1, dtype=np.int64)
    while r:
        if r & 1:
            result = (result @ base) % p
        base = (base @ base) % p
        r >>= 1
    return result


def sigma_act(x: CohClass, r: int = 1) -> CohClass:
    return CohClass(x.p, x.degree, sigma_matrix(x.p, x.degree, r) @ x.vec)


def norm_action_matrix(p: int, n: int, s: int) -> np.ndarray:
    """Matrix of N(sigma) = sum_{r < p^n} sigma^r on H^s(M)."""
    out = np.zeros((s + 1, s + 1), dtype=np.int64)
    m = np.eye(s + 1, dtype=np.int64)
    g = sigma_matrix(p, s, 1)
    for _ in range(p**n):
        out = (out + m) % p
        m = (g @ m) % p
    return out


def z2p(p: int) -> CohClass:
    """prod_{i < p} sigma^i . y2, the sigma-invariant class of degree 2p."""
    y2 = CohClass.parse(p, "y2")
    out = CohClass.parse(p, "1")
    for i in range(p):
        out = cup(out, sigma_act(y2, i))
    return out


# -- invariants and coinvariants ----------------------------------------

@dataclass
class InvariantSpace:
    degree: int
    basis: np.ndarray  # rows are invariant classes
    pivots: List[int]  # RREF pivots of ``basis``
    closed_form_match: bool

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def coordinates(self, v) -> np.ndarray:
        """Coordinates of an invariant vector in the canonical basis (read at the pivots)."""
        return np.asarray(v, dtype=np.int64)[self.pivots].copy()


@dataclass
class CoinvariantSpace:
    degree: int
    image: np.ndarray  # RREF basis of (sigma - 1) H^s
    image_pivots: List[int]
    reps: List[int]  # coordinates whose unit vectors represent the quotient basis
    closed_form_match: bool

    @property
    def dim(self) -> int:
        return len(self.reps)

    def reduce(self, v, p: int) -> np.ndarray:
        return reduce_mod_rows(v, self.image, self.image_pivots, p)

    def coordinates(self, v, p: int) -> np.ndarray:
        return self.reduce(v, p)[self.reps].copy()

    def basis(self) -> np.ndarray:
        out = np.zeros((len(self.reps), self.degree + 1), dtype=np.int64)
        for k, c in enumerate(self.reps):
            out[k, c] = 1
        return out


def _w_invariants(p: int, s: int) -> List[CohClass]:
    """Closed-form basis of the sigma-invariants of the z2p-free part W^s."""
    P = lambda t: CohClass.parse(p, t)  # noqa: E731
    if s == 0:
        return [P("1")]
    if s == 1:
        return [P("x1")]
    if s % 2 == 0:
        i = s // 2
        return [P(f"x2^{i}"), cup(P("x1*y1"), P(f"x2^{i - 1}"))]
    i = (s - 1) // 2
    nu3 = P("x1*y2") - P("y1*x2")
    return [P(f"x1*x2^{i}"), cup(nu3, P(f"x2^{i - 1}"))]


def _w_coinvariants(p: int, s: int) -> List[CohClass]:
    """Closed-form coinvariant representatives for W^s."""
    P = lambda t: CohClass.parse(p, t)  # noqa: E731
    if s == 0:
        return [P("1")]
    if s == 1:
        return [P("y1")]
    if s % 2 == 0:
        i = s // 2
        if s <= 2 * p - 2:
            return [P(f"x1*y1*y2^{i - 1}"), P(f"y2^{i}")]
        return [P(f"x1*y1*x2^{i - p}*y2^{p - 1}"), P(f"x2^{i - p + 1}*y2^{p - 1}")]
    i = (s - 1) // 2
    if s <= 2 * p - 1:
        return [P(f"x1*y2^{i}"), P(f"y1*y2^{i}")]
    return [P(f"x1*x2^{i - p + 1}*y2^{p - 1}"), P(f"y1*x2^{i - p + 1}*y2^{p - 1}")]


def closed_form_classes(p: int, s: int, kind: str) -> List[CohClass]:
    """The closed-form (in)variant basis of H^s = sum_l z2p^l (x) W^(s - 2pl)."""
    w = _w_invariants if kind == "invariants" else _w_coinvariants
    z = z2p(p)
    out: List[CohClass] = []
    zl = CohClass.parse(p, "1")
    for l in range(s // (2 * p) + 1):
        out.extend(cup(zl, c) for c in w(p, s - 2 * p * l))
        zl = cup(zl, z)
    return out


@lru_cache(maxsize=None)
def invariants_basis(p: int, s: int) -> InvariantSpace:
    """Canonical kernel basis of (sigma - 1) on H^s(M)."""
    m = (sigma_matrix(p, s) - np.eye(s + 1, dtype=np.int64)) % p
    ker = kernel_basis(m, p)
    basis, piv = row_space_basis(ker, p, s + 1)
    closed = closed_form_classes(p, s, "invariants")
    cf = np.array([c.vec for c in closed])
    both = np.concatenate([basis, cf]) if basis.size else cf
    match = len(closed) == basis.shape[0] == rank(cf, p) == rank(both, p)
    return InvariantSpace(s, basis, piv, match)


@lru_cache(maxsize=None)
def coinvariants_basis(p: int, s: int) -> CoinvariantSpace:
    """Canonical representatives of H^s / (sigma - 1) H^s.

    The image is put in RREF; the non-pivot coordinates (the y-heavy end
    of the monomial order) supply the complement.
    """
    m = (sigma_matrix(p, s) - np.eye(s + 1, dtype=np.int64)) % p
    img, piv = row_space_basis(m.T, p, s + 1)
    reps = complement_columns(piv, s + 1)
    space = CoinvariantSpace(s, img, piv, reps, False)
    closed = closed_form_classes(p, s, "coinvariants")
    reduced = np.array([space.coordinates(c.vec, p) for c in closed])
    space.closed_form_match = len(closed) == len(reps) and rank(reduced, p) == len(reps)
    return space


def is_invariant(x: CohClass) -> bool:
    return sigma_act(x, 1) == x


def as_class(p: int, s: int, vec) -> CohClass:
    return CohClass(p, s, vec)


def parse_poly(p: int, text: str) -> CohClass:
    """Parse a signed sum like ``"x1*y2 - y1*x2"`` (coefficients as integer prefixes ``3 x1``)."""
    out: Optional[CohClass] = None
    for raw in text.replace("-", "+-").split("+"):
        raw = raw.strip()
        if not raw:
            continue
        sign = -1 if raw.startswith("-") else 1
        raw = raw.lstrip("-").strip()
        coeff = 1
        head, _, tail = raw.partition(" ")
        if tail and head.isdigit():
            coeff, raw = int(head), tail
        term = (sign * coeff) * CohClass.parse(p, raw)
        out = term if out is None else out + term
    if out is None:
        raise ValueError("empty polynomial")
    return out
