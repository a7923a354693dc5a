"""Poincare series of H(G; F_p): closed forms, exact expansion and comparison
with diagonal sums of a computed page."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .report import Report


def _trim(c: Sequence[int]) -> List[int]:
    c = [int(v) for v in c]
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def poly_mul(a: Sequence[int], b: Sequence[int]) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


@dataclass
class RationalPowerSeries:
    """numerator / denominator with integer coefficients, expanded exactly."""

    numerator: List[int]
    denominator: List[int]
    _coeffs: List[int] = field(default_factory=list, repr=False)

    def __post_init__(self):
        self.numerator = _trim(self.numerator)
        self.denominator = _trim(self.denominator)
        if self.denominator[0] not in (1, -1):
            raise ValueError("denominator needs constant term +-1 for an integral expansion")

    def coefficients(self, terms: int) -> List[int]:
        num, den = self.numerator, self.denominator
        c = self._coeffs
        while len(c) < terms:
            k = len(c)
            acc = num[k] if k < len(num) else 0
            for i in range(1, min(k, len(den) - 1) + 1):
                acc -= den[i] * c[k - i]
            c.append(acc * den[0])  # den[0] = +-1 is its own inverse
        return list(c[:terms])

    def recurrence_holds(self, terms: int) -> bool:
        """sum_i den[i] c[k-i] = num[k] at every cached index."""
        c = self.coefficients(terms)
        for k in range(terms):
            s = sum(self.denominator[i] * c[k - i] for i in range(min(k, len(self.denominator) - 1) + 1))
            if s != (self.numerator[k] if k < len(self.numerator) else 0):
                return False
        return True

    def __str__(self) -> str:
        return f"({_poly_str(self.numerator)}) / ({_poly_str(self.denominator)})"


def _poly_str(c: Sequence[int]) -> str:
    parts = []
    for k, v in enumerate(c):
        if not v:
            continue
        mon = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
        mag = abs(v)
        body = str(mag) if not mon else (mon if mag == 1 else f"{mag}*{mon}")
        parts.append(("- " if v < 0 else "+ ") + body)
    text = " ".join(parts) or "0"
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def _check_p(p: int) -> None:
    if p < 5 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ValueError(f"the closed forms are stated for primes p >= 5, got {p}")


def dim_d_inf(k: int, p: int) -> int:
    """Piecewise dimension of the nu_2p-free part of the limit page in total degree k."""
    _check_p(p)
    if k < 0:
        return 0
    if k <= 1:
        return k + 1
    if k <= 3:
        return k + 2
    if k <= 2 * p:
        return k + 3
    return 2 * k - 2 * p + 3


def d_numerator(p: int) -> List[int]:
    num = [0] * (2 * p + 2)
    for k, v in ((0, 1), (2, 1), (3, -1), (4, 1), (5, -1), (2 * p + 1, 1)):
        num[k] += v
    return num


def series_pd(p: int) -> RationalPowerSeries:
    _check_p(p)
    return RationalPowerSeries(d_numerator(p), [1, -2, 1])


def poincare_series(p: int) -> RationalPowerSeries:
    _check_p(p)
    period = [1] + [0] * (2 * p - 1) + [-1]
    return RationalPowerSeries(d_numerator(p), poly_mul([1, -2, 1], period))


def lemma_convolution(k: int, p: int) -> int:
    """sum_{j >= 0} dim_d_inf(k - 2pj, p)."""
    return sum(dim_d_inf(k - 2 * p * j, p) for j in range(k // (2 * p) + 1))


def diagonal_sums(dims: Dict, k_max: int) -> List[Optional[int]]:
    """sum_r dim E^{r,k-r} for k <= k_max, or None where the page does not cover the diagonal."""
    out: List[Optional[int]] = []
    for k in range(k_max + 1):
        cells = [(r, k - r) for r in range(k + 1)]
        if all(c in dims for c in cells):
            out.append(sum(dims[c] for c in cells))
        else:
            out.append(None)
    return out


def compare(p: int, terms: int, page_dims: Optional[Dict] = None, page_k: Optional[int] = None) -> Report:
    """Formula expansion vs the lemma convolution, and optionally vs a page."""
    series = poincare_series(p)
    coeffs = series.coefficients(terms)
    rep = Report(f"Poincare series p={p} terms={terms}")
    rep.notes.append(f"P(t) = {series}")
    conv = [lemma_convolution(k, p) for k in range(terms)]
    bad = [k for k in range(terms) if coeffs[k] != conv[k]]
    rep.add("expansion equals the lemma convolution", not bad, {"first_mismatch": bad[:1]})
    rep.add("expansion satisfies the denominator recurrence", series.recurrence_holds(terms))
    pd = series_pd(p).coefficients(terms)
    shifted = poly_mul(coeffs, [1] + [0] * (2 * p - 1) + [-1])[:terms]
    rep.add("P(t)(1 - t^2p) = P_D(t)", shifted == pd)
    mono = all(coeffs[k] <= coeffs[k + 2 * p] for k in range(terms - 2 * p))
    rep.add("coefficients non-decreasing in each class mod 2p", mono)
    if page_dims is not None:
        kmax = min(terms - 1, page_k if page_k is not None else terms - 1)
        diag = diagonal_sums(page_dims, kmax)
        rows = [
            {"k": k, "formula": coeffs[k], "lemma": conv[k], "page": diag[k]}
            for k in range(kmax + 1)
        ]
        mism = [r for r in rows if r["page"] is not None and r["page"] != r["formula"]]
        rep.add(
            "expansion equals computed page diagonals",
            not mism and all(r["page"] is not None for r in rows),
            {"k_max": kmax, "mismatches": mism},
        )
    return rep
