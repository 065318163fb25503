"""Cohomological invariants of the branched-cover varieties.

Everything reduces to the dimension of the space of global sections of the
r-th twist on a smooth complete intersection of n-d degree-k forms in P^n:

    h0(r) = 0                          for r < 0,
    h0(r) = C(r+n, n)                  for 0 <= r < k,
    h0(r) = sum over the box {0..k-1}^{n-d}, truncated to coordinate sum
            jbar <= r, of C(r - jbar + d, d)   for r >= k.

The canonical twist is r1 = (n-d)k - n - 1; its sign determines the Kodaira
dimension, and plurigenera are P_m = h0(m r1).  An independent oracle is
the coefficient of t^r in (1 - t^k)^{n-d} (1 - t)^{-(n+1)}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .fermatgroup import GfmType

__all__ = [
    "h0_twist",
    "hd_twist",
    "hilbert_series_coefficient",
    "canonical_degree",
    "plurigenus",
    "kodaira_dimension",
    "classify",
    "leading_coefficient",
    "InvariantReport",
    "invariant_report",
    "KODAIRA_NEG_INF",
]

KODAIRA_NEG_INF = float("-inf")

K3_TUPLES = frozenset({(4, 3), (2, 5)})
RATIONAL_TUPLES = frozenset({(2, 3), (3, 3), (2, 4)})


def _binom(a: int, b: int) -> int:
    """C(a, b), zero outside the lattice (a < b or negative entries)."""
    if b < 0 or a < b:
        return 0
    return math.comb(a, b)


@lru_cache(maxsize=None)
def _box_sum_counts(k: int, boxes: int) -> tuple[int, ...]:
    """Number of tuples in {0..k-1}^boxes with each coordinate sum.

    Index s of the result counts tuples with sum s; this is the coefficient
    list of (1 + t + ... + t^{k-1})^boxes.
    """
    counts = [1]
    for _ in range(boxes):
        new = [0] * (len(counts) + k - 1)
        for s, c in enumerate(counts):
            for j in range(k):
                new[s + j] += c
        counts = new
    return tuple(counts)


def h0_twist(gfm_type: GfmType, r: int) -> int:
    """Dimension of the space of degree-r twisted global sections."""
    d, k, n = gfm_type.d, gfm_type.k, gfm_type.n
    if r < 0:
        return 0
    if r < k:
        return _binom(r + n, n)
    total = 0
    for s, count in enumerate(_box_sum_counts(k, n - d)):
        if s > r:
            break
        total += count * _binom(r - s + d, d)
    return total


def hd_twist(gfm_type: GfmType, r: int) -> int:
    """Top cohomology via duality against the canonical twist r1."""
    return h0_twist(gfm_type, canonical_degree(gfm_type) - r)


def hilbert_series_coefficient(gfm_type: GfmType, r: int) -> int:
    """Coefficient of t^r in (1 - t^k)^{n-d} (1 - t)^{-(n+1)}.

    Independent oracle for h0_twist, evaluated by the alternating binomial
    convolution sum_s (-1)^s C(n-d, s) C(r - s k + n, n).
    """
    if r < 0:
        raise ValueError("the Hilbert series has no negative coefficients")
    d, k, n = gfm_type.d, gfm_type.k, gfm_type.n
    total = 0
    for s in range(min(n - d, r // k) + 1):
        term = math.comb(n - d, s) * _binom(r - s * k + n, n)
        total += -term if s % 2 else term
    return total


def canonical_degree(gfm_type: GfmType) -> int:
    """The twist carrying the canonical sheaf: r1 = (n-d)k - n - 1."""
    return (gfm_type.n - gfm_type.d) * gfm_type.k - gfm_type.n - 1


def plurigenus(gfm_type: GfmType, m: int) -> int:
    """P_m = h0(m r1)."""
    if m < 1:
        raise ValueError("plurigenus index m must be positive")
    return h0_twist(gfm_type, m * canonical_degree(gfm_type))


def kodaira_dimension(gfm_type: GfmType):
    """-inf, 0 or d according to the sign of r1."""
    r1 = canonical_degree(gfm_type)
    if r1 < 0:
        return KODAIRA_NEG_INF
    if r1 == 0:
        return 0
    return gfm_type.d


def classify(gfm_type: GfmType) -> str:
    """Coarse classification label.

    The rational and K3 labels are asserted only for the surface tuples the
    classification names explicitly; any other negative-Kodaira type is
    labelled plainly, without extrapolating rationality.
    """
    d, k, n = gfm_type.d, gfm_type.k, gfm_type.n
    if d == 2 and (k, n) in K3_TUPLES:
        return "K3"
    if d == 2 and (k, n) in RATIONAL_TUPLES:
        return "rational"
    r1 = canonical_degree(gfm_type)
    if r1 == 0:
        return "Calabi-Yau"
    if r1 > 0:
        return "general-type"
    return "negative-kodaira"


def leading_coefficient(gfm_type: GfmType) -> Fraction:
    """Leading coefficient k^{n-d} r1^d / d! of the plurigenus polynomial.

    For m r1 >= max(k, (n-d)(k-1)) the map m -> P_m is a degree-d polynomial
    with this leading coefficient.
    """
    d, k, n = gfm_type.d, gfm_type.k, gfm_type.n
    r1 = canonical_degree(gfm_type)
    if r1 <= 0:
        raise ValueError("leading coefficient requires r1 > 0")
    return Fraction(k ** (n - d) * r1**d, math.factorial(d))


@dataclass(frozen=True)
class InvariantReport:
    gfm_type: GfmType
    r1: int
    kodaira: float | int
    pa_pg: int
    plurigenera: dict[int, int]
    label: str
    intermediate_vanishing_note: str

    def to_json(self):
        kodaira = "-infinity" if self.kodaira == KODAIRA_NEG_INF else self.kodaira
        return {
            "type": {"d": self.gfm_type.d, "k": self.gfm_type.k, "n": self.gfm_type.n},
            "r1": self.r1,
            "kodaira": kodaira,
            "pa": self.pa_pg,
            "pg": self.pa_pg,
            "plurigenera": {str(m): p for m, p in sorted(self.plurigenera.items())},
            "label": self.label,
            "intermediate_vanishing": self.intermediate_vanishing_note,
        }


def invariant_report(gfm_type: GfmType, pluri_indices=(1, 2, 3)) -> InvariantReport:
    """Collect r1, genera, requested plurigenera and the classification."""
    r1 = canonical_degree(gfm_type)
    return InvariantReport(
        gfm_type,
        r1,
        kodaira_dimension(gfm_type),
        h0_twist(gfm_type, r1),
        {m: plurigenus(gfm_type, m) for m in pluri_indices},
        classify(gfm_type),
        f"h^i of every twist vanishes for 0 < i < {gfm_type.d}"
        if gfm_type.d > 1
        else "no intermediate cohomology in dimension 1",
    )
