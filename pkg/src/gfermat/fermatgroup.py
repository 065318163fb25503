"""The branched-cover variety, its deck group, fixed loci and automorphisms.

For a parameter table in X_{n,d} and a degree k >= 2 the variety is the
complete intersection of n-d degree-k forms in P^n whose coefficient rows
follow the table pattern; the deck group of the projection
[x_1 : ... : x_{n+1}] -> [x_1^k : ... : x_{d+1}^k] is generated by the n+1
coordinate multipliers phi_j (multiply x_j by a primitive k-th root of
unity), subject to the single relation phi_1 ... phi_{n+1} = 1.

Group elements are exponent vectors modulo that diagonal relation and are
stored canonically with last exponent 0; all level-set computations are
taken on the canonical form, over every level 0 <= l <= k-1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arrangement import StandardParameter, is_standard_parameter
from .errors import BudgetExceeded
from .exactfield import (
    CyclotomicScalar,
    ExactMatrix,
    all_maximal_minors_nonzero,
    rational_to_string,
    solve_linear,
)
from .modaction import (
    DEFAULT_BUDGET,
    EXCEPTIONAL_TYPES,
    Permutation,
    orbit_and_stabilizer,
)

__all__ = [
    "GfmType",
    "GroupElement",
    "EquationSystem",
    "FixedComponent",
    "FixedLocusReport",
    "FreeActionResult",
    "AutomorphismOrder",
    "LowNClassification",
    "equations",
    "smoothness_certificate",
    "canonical_generators",
    "fixed_locus",
    "acts_freely",
    "subgroup_acts_freely",
    "bound_feasible",
    "is_linear_automorphism",
    "induced_hyperplane_permutation",
    "automorphism_order",
    "fiber_product_components",
    "classify_low_n",
]


@dataclass(frozen=True)
class GfmType:
    """A type triple (d; k, n): dimension, branch order, n+1 hyperplanes."""

    d: int
    k: int
    n: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("dimension d must be >= 1")
        if self.k < 2:
            raise ValueError("branch order k must be >= 2")
        if self.n < self.d + 1:
            raise ValueError("need n >= d+1 (see classify_low_n for 2 <= n <= d)")


@dataclass(frozen=True)
class GroupElement:
    """Element of the deck group as an exponent vector mod k.

    Raw vectors (m_1, ..., m_{n+1}) and (m_1 + c, ..., m_{n+1} + c) name the
    same element; the stored canonical form has last exponent 0, and
    equality and hashing use it.
    """

    k: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("modulus k must be >= 2")
        exps = tuple(int(m) % self.k for m in self.exponents)
        if len(exps) < 2:
            raise ValueError("need at least two exponents")
        shift = exps[-1]
        exps = tuple((m - shift) % self.k for m in exps)
        object.__setattr__(self, "exponents", exps)

    @classmethod
    def identity(cls, k: int, n: int) -> GroupElement:
        return cls(k, (0,) * (n + 1))

    @classmethod
    def generator(cls, k: int, n: int, j: int) -> GroupElement:
        """phi_j (1-based j), the multiplier of the j-th coordinate."""
        if not 1 <= j <= n + 1:
            raise ValueError("generator index out of range")
        exps = [0] * (n + 1)
        exps[j - 1] = 1
        return cls(k, tuple(exps))

    @property
    def n(self) -> int:
        return len(self.exponents) - 1

    def __mul__(self, other: GroupElement) -> GroupElement:
        if self.k != other.k or self.n != other.n:
            raise ValueError("group elements live in different groups")
        return GroupElement(
            self.k, tuple(a + b for a, b in zip(self.exponents, other.exponents))
        )

    def __pow__(self, exponent: int) -> GroupElement:
        return GroupElement(self.k, tuple(m * exponent for m in self.exponents))

    def inverse(self) -> GroupElement:
        return self ** (-1)

    def is_identity(self) -> bool:
        return not any(self.exponents)

    def level_sets(self) -> dict[int, tuple[int, ...]]:
        """1-based coordinate indices grouped by canonical exponent value."""
        out: dict[int, list[int]] = {}
        for j, m in enumerate(self.exponents, start=1):
            out.setdefault(m, []).append(j)
        return {l: tuple(idx) for l, idx in sorted(out.items())}

    def to_json(self):
        return {"k": self.k, "exponents": list(self.exponents)}


def canonical_generators(k: int, n: int) -> tuple[GroupElement, ...]:
    """The n+1 order-k multipliers phi_1, ..., phi_{n+1}; their product is 1."""
    if k < 2 or n < 2:
        raise ValueError("need k >= 2 and n >= 2")
    return tuple(GroupElement.generator(k, n, j) for j in range(1, n + 2))


# ---------------------------------------------------------------------------
# Equations and smoothness
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EquationSystem:
    """The n-d degree-k forms cutting out the variety in P^n.

    Form 0 is x_1^k + ... + x_{d+2}^k; form i (i >= 1) is
    l_{i,1} x_1^k + ... + l_{i,d} x_d^k + x_{d+1}^k + x_{d+2+i}^k.
    ``coefficient_matrix`` collects the coefficients of x_1^k, ..., x_{n+1}^k.
    """

    d: int
    n: int
    k: int
    table: tuple[tuple[Fraction, ...], ...]
    coefficient_matrix: ExactMatrix

    @classmethod
    def from_table(cls, d: int, n: int, k: int, table) -> EquationSystem:
        if d < 1 or n < d + 1 or k < 2:
            raise ValueError("need d >= 1, n >= d+1, k >= 2")
        table = tuple(tuple(Fraction(x) for x in row) for row in table)
        if len(table) != n - d - 1 or any(len(r) != d for r in table):
            raise ValueError("table must be (n-d-1) x d")
        rows = [[Fraction(1)] * (d + 2) + [Fraction(0)] * (n - d - 1)]
        for i, lam in enumerate(table):
            row = list(lam) + [Fraction(1)] + [Fraction(0)] * (n - d)
            row[d + 2 + i] = Fraction(1)  # coefficient of x_{d+3+i} in 1-based terms
            rows.append(row)
        return cls(d, n, k, table, ExactMatrix.from_rows(rows))

    @property
    def forms(self) -> tuple[tuple[tuple[int, Fraction], ...], ...]:
        """Sparse rows: (1-based variable index, coefficient) of x_j^k terms."""
        out = []
        for i in range(self.coefficient_matrix.rows):
            row = self.coefficient_matrix.row(i)
            out.append(tuple(
                (j + 1, c) for j, c in enumerate(row) if c != 0
            ))
        return tuple(out)

    def polynomial_text(self) -> tuple[str, ...]:
        lines = []
        for form in self.forms:
            terms = []
            for j, c in form:
                if c == 1:
                    terms.append(f"x{j}^{self.k}")
                elif c == -1:
                    terms.append(f"-x{j}^{self.k}")
                else:
                    terms.append(f"{rational_to_string(c)}*x{j}^{self.k}")
            lines.append(" + ".join(terms).replace("+ -", "- "))
        return tuple(lines)

    def to_json(self):
        return {
            "d": self.d,
            "n": self.n,
            "k": self.k,
            "forms": [
                [[j, rational_to_string(c)] for j, c in form]
                for form in self.forms
            ],
            "coefficient_matrix": self.coefficient_matrix.to_json(),
            "text": list(self.polynomial_text()),
        }


def equations(par: StandardParameter, k: int) -> EquationSystem:
    """Equation system of the variety over a parameter in X_{n,d}."""
    if k < 2:
        raise ValueError("degree k must be >= 2")
    if not is_standard_parameter(par):
        raise ValueError("parameter is not in X_{n,d}")
    return EquationSystem.from_table(par.d, par.n, k, par.rows)


def smoothness_certificate(system: EquationSystem) -> bool:
    """Exact smoothness test: every maximal minor of the coefficient matrix
    is nonzero, equivalently the dual arrangement is in general position."""
    size = system.coefficient_matrix.rows
    return all_maximal_minors_nonzero(system.coefficient_matrix, size)


# ---------------------------------------------------------------------------
# Fixed loci and free actions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FixedComponent:
    """One connected component of a fixed locus.

    The component over level l keeps the coordinates indexed by that level
    set and is itself of type (d'; k, n') with d' = #L_l + d - n - 1 and
    n' = #L_l - 1; when d' = 0 it is a set of k^{n'} points.
    """

    level: int
    indices: tuple[int, ...]
    dimension: int
    subtype_d: int
    subtype_n: int
    point_count: int | None

    def to_json(self):
        return {
            "level": self.level,
            "indices": list(self.indices),
            "dimension": self.dimension,
            "type": {"d": self.subtype_d, "n": self.subtype_n},
            "point_count": self.point_count,
        }


@dataclass(frozen=True)
class FixedLocusReport:
    element: GroupElement
    gfm_type: GfmType
    components: tuple[FixedComponent, ...]

    def to_json(self):
        return {
            "element": self.element.to_json(),
            "type": {"d": self.gfm_type.d, "k": self.gfm_type.k, "n": self.gfm_type.n},
            "components": [c.to_json() for c in self.components],
        }


def fixed_locus(element: GroupElement, gfm_type: GfmType) -> FixedLocusReport:
    """Components of the fixed locus of a deck-group element.

    A level set L_l of the canonical exponent vector contributes a component
    exactly when #L_l >= n+1-d; its dimension is #L_l + d - n - 1.  All
    levels are scanned (the level carrying exponent 0 fixes its coordinates
    pointwise just like any other), which is well defined because the
    canonical form pins the representative.
    """
    d, k, n = gfm_type.d, gfm_type.k, gfm_type.n
    if element.k != k or element.n != n:
        raise ValueError("element does not match the type")
    components = []
    for level, indices in element.level_sets().items():
        size = len(indices)
        if size >= n + 1 - d:
            dimension = size + d - n - 1
            subtype_n = size - 1
            count = k ** subtype_n if dimension == 0 else None
            components.append(
                FixedComponent(level, indices, dimension, dimension, subtype_n, count)
            )
    return FixedLocusReport(element, gfm_type, tuple(components))


def acts_freely(element: GroupElement, gfm_type: GfmType) -> bool:
    """True iff no level set reaches size n+1-d (no fixed points at all)."""
    return not fixed_locus(element, gfm_type).components


@dataclass(frozen=True)
class FreeActionResult:
    free: bool
    offending: GroupElement | None
    subgroup_order: int


def _subgroup_closure(generators, k: int, n: int, budget: int):
    elements = {GroupElement.identity(k, n)}
    frontier = list(elements)
    gens = list(generators)
    while frontier:
        new_frontier = []
        for g in gens:
            for h in frontier:
                prod = g * h
                if prod not in elements:
                    elements.add(prod)
                    new_frontier.append(prod)
                    if len(elements) > budget:
                        raise BudgetExceeded(len(elements), budget)
        frontier = new_frontier
    return elements


def subgroup_acts_freely(
    generators,
    gfm_type: GfmType,
    budget: int = DEFAULT_BUDGET,
) -> FreeActionResult:
    """Exhaustive freeness check over the generated subgroup.

    Returns the first (in sorted exponent order) non-free nontrivial element
    when the action is not free.
    """
    k, n = gfm_type.k, gfm_type.n
    for g in generators:
        if g.k != k or g.n != n:
            raise ValueError("generator does not match the type")
    elements = _subgroup_closure(generators, k, n, budget)
    for element in sorted(elements, key=lambda g: g.exponents):
        if element.is_identity():
            continue
        if not acts_freely(element, gfm_type):
            return FreeActionResult(False, element, len(elements))
    return FreeActionResult(True, None, len(elements))


def bound_feasible(p: int, r: int, n: int) -> bool:
    """Necessary condition for a corank-r subgroup of the mod-p deck group
    to act freely in dimension >= 2: n+1 <= (p^r - 1)/(p - 1)."""
    if p < 2 or r < 1:
        raise ValueError("need a prime p >= 2 and r >= 1")
    return n + 1 <= (p**r - 1) // (p - 1)


# ---------------------------------------------------------------------------
# Linear automorphism verifier
# ---------------------------------------------------------------------------

def _monomial_support(matrix: ExactMatrix):
    """Column index of the unique nonzero entry per row, or None."""
    support = []
    for i in range(matrix.rows):
        nonzero = [j for j in range(matrix.cols) if matrix.entry(i, j) != 0]
        if len(nonzero) != 1:
            return None
        support.append(nonzero[0])
    if sorted(support) != list(range(matrix.cols)):
        return None
    return support


def _common_cyclotomic_order(matrix: ExactMatrix, k: int) -> int:
    order = k
    for e in matrix.entries:
        if isinstance(e, CyclotomicScalar):
            order = order * e.order // math.gcd(order, e.order)
    return order


def is_linear_automorphism(matrix: ExactMatrix, par: StandardParameter, k: int) -> bool:
    """Verify a candidate linear automorphism of the variety.

    Accepts exactly the invertible monomial matrices (one nonzero entry per
    row and column) whose substitution maps every defining form into the
    span of the defining forms; the span test is an exact linear solve on
    the coefficients of x_j^k over a cyclotomic field.  Rational entries
    live in the order-k field (covering the deck group itself); entries of
    higher cyclotomic order are handled by lifting everything to the common
    order, so twisted permutation lifts are verifiable too.
    """
    if matrix.rows != matrix.cols or matrix.rows != par.n + 1:
        raise ValueError("matrix must be square of size n+1")
    field = _common_cyclotomic_order(matrix, k)
    entries = tuple(
        e.promote(field) if isinstance(e, CyclotomicScalar)
        else CyclotomicScalar.from_rational(field, e)
        for e in matrix.entries
    )
    lifted = ExactMatrix(matrix.rows, matrix.cols, entries)
    if lifted.rank() != lifted.rows:
        raise ValueError("matrix is singular")
    support = _monomial_support(lifted)
    if support is None:
        return False
    system = equations(par, k)
    coeff = system.coefficient_matrix
    zero = CyclotomicScalar.zero(field)
    basis_t = ExactMatrix.from_rows(
        [
            [CyclotomicScalar.from_rational(field, coeff.entry(i, j))
             for i in range(coeff.rows)]
            for j in range(coeff.cols)
        ]
    )
    for i in range(coeff.rows):
        transformed = [zero] * coeff.cols
        for r in range(lifted.rows):
            c = support[r]
            scale = lifted.entry(r, c)
            factor = scale
            for _ in range(k - 1):
                factor = factor * scale
            transformed[c] = transformed[c] + factor * coeff.entry(i, r)
        if solve_linear(basis_t, transformed).status == "inconsistent":
            return False
    return True


def induced_hyperplane_permutation(matrix: ExactMatrix) -> Permutation:
    """The permutation of branch hyperplanes induced by a monomial matrix.

    The matrix sends the coordinate hyperplane carrying index c(r) to the
    one carrying index r, where c(r) is the column of the nonzero entry in
    row r.
    """
    support = _monomial_support(matrix)
    if support is None:
        raise ValueError("matrix is not monomial")
    images = [0] * matrix.rows
    for r, c in enumerate(support):
        images[c] = r
    return Permutation(tuple(images))


# ---------------------------------------------------------------------------
# Automorphism order, fiber product, low-n classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AutomorphismOrder:
    """|Aut| = |G_0| k^n, with G_0 the stabilizer of the branch divisor.

    ``stabilizer_order`` counts the permutations fixing the parameter (the
    group G_0 itself); ``stabilizer_image_order`` is its image after the
    kernel quotient, which differs only for (n, d) = (3, 1).  For the two
    exceptional triples the order refers to the linear automorphism group.
    """

    order: int
    stabilizer_order: int
    stabilizer_image_order: int
    kernel_order: int
    deck_order: int
    category: str

    def to_json(self):
        return {
            "order": self.order,
            "stabilizer_order": self.stabilizer_order,
            "stabilizer_image_order": self.stabilizer_image_order,
            "kernel_order": self.kernel_order,
            "deck_order": self.deck_order,
            "category": self.category,
        }


def automorphism_order(
    par: StandardParameter, k: int, budget: int = DEFAULT_BUDGET
) -> AutomorphismOrder:
    report = orbit_and_stabilizer(par, budget=budget)
    stab = report.stabilizer_order
    if par.n == par.d + 1:
        kernel = math.factorial(par.n + 1)
    elif (par.n, par.d) == (3, 1):
        kernel = 4
    else:
        kernel = 1
    deck = k**par.n
    # the full automorphism group is infinite for the two K3 triples and
    # for curves of genus <= 1; the order then refers to Lin only
    infinite_aut = (par.d, k, par.n) in EXCEPTIONAL_TYPES or (
        par.d == 1 and (k - 1) * (par.n - 1) <= 2
    )
    category = "Lin" if infinite_aut else "Aut"
    return AutomorphismOrder(stab * deck, stab, stab // kernel, kernel, deck, category)


def fiber_product_components(gfm_type: GfmType) -> int:
    """Number of irreducible components of the naive fiber product of the
    n-d defining degree-k hypersurfaces: k^((n-d)(d+1) - n)."""
    d, k, n = gfm_type.d, gfm_type.k, gfm_type.n
    return k ** ((n - d) * (d + 1) - n)


@dataclass(frozen=True)
class LowNClassification:
    d: int
    n: int
    case: str
    description: str

    def to_json(self):
        return {"d": self.d, "n": self.n, "case": self.case,
                "description": self.description}


def classify_low_n(d: int, n: int) -> LowNClassification:
    """The degenerate range 2 <= n <= d: only n = d occurs, and the manifold
    is P^d with the deck group generated by the d coordinate multipliers."""
    if n >= d + 1:
        raise ValueError("classify_low_n handles only 2 <= n <= d")
    if n < 2 or d < 2:
        raise ValueError("need d >= 2 and n >= 2")
    if n == d:
        return LowNClassification(
            d, n, "projective-space",
            f"M = P^{d}; the group is generated by the {d} coordinate "
            "multipliers rho_1, ..., rho_d (multiply one coordinate by a "
            "primitive k-th root of unity)",
        )
    return LowNClassification(
        d, n, "nonexistent",
        "no generalized Fermat pair exists for n < d",
    )
