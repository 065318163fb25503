"""Exact scalars and dense exact linear algebra.

Scalars are either rationals (``fractions.Fraction``, which already keeps
lowest terms and a positive denominator) or cyclotomic numbers represented
as polynomial residues modulo the k-th cyclotomic polynomial.  Matrices are
dense, immutable and generic over any exact field whose elements support
``+ - * /`` and comparison with ``0``/``1``.

Rationals serialize as ``"p/q"`` (or ``"p"`` when the denominator is 1);
cyclotomic scalars as a coefficient list tagged with their order k.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

Rational = Fraction

__all__ = [
    "Rational",
    "rational_from_string",
    "rational_to_string",
    "cyclotomic_polynomial",
    "CyclotomicScalar",
    "ExactMatrix",
    "LinearSolveResult",
    "solve_linear",
    "projective_normalize",
    "all_maximal_minors_nonzero",
]


def rational_from_string(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (also accepts ints and Fractions)."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, str):
        return Fraction(text.strip())
    raise ValueError(f"cannot parse rational from {text!r}")


def rational_to_string(value: Fraction) -> str:
    return str(Fraction(value))


# ---------------------------------------------------------------------------
# Cyclotomic polynomials and scalars
# ---------------------------------------------------------------------------

def _poly_divmod_int(num, den):
    """Exact division of integer polynomials (dense ascending tuples)."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for shift in range(len(num) - len(den), -1, -1):
        coeff, rem = divmod(num[shift + len(den) - 1], den[-1])
        if rem:
            raise ValueError("non-exact polynomial division")
        q[shift] = coeff
        for i, c in enumerate(den):
            num[shift + i] -= coeff * c
    if any(num):
        raise ValueError("non-exact polynomial division")
    return tuple(q)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(k: int) -> tuple[int, ...]:
    """Coefficients (ascending) of the monic k-th cyclotomic polynomial.

    Computed by exact division of x^k - 1 by the cyclotomic polynomials of
    the proper divisors of k, so that prod_{e | k} Phi_e = x^k - 1.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    poly = tuple([-1] + [0] * (k - 1) + [1])  # x^k - 1
    for e in range(1, k):
        if k % e == 0:
            poly = _poly_divmod_int(poly, cyclotomic_polynomial(e))
    return poly


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return out


def _poly_rem(poly, mod):
    """Remainder of poly by the monic polynomial ``mod`` (Fraction coeffs)."""
    rem = [Fraction(c) for c in poly]
    deg_mod = len(mod) - 1
    for shift in range(len(rem) - len(mod), -1, -1):
        coeff = rem[shift + deg_mod]
        if coeff:
            for i in range(len(mod)):
                rem[shift + i] -= coeff * mod[i]
    del rem[deg_mod:]
    return rem


@dataclass(frozen=True)
class CyclotomicScalar:
    """Element of Q(zeta_k), stored as a residue modulo Phi_k.

    ``coeffs`` always has length deg(Phi_k); the residue class of the
    indeterminate satisfies Phi_k(zeta) = 0 and zeta^k = 1 exactly.
    """

    order: int
    coeffs: tuple[Fraction, ...]

    @staticmethod
    def _modulus(k):
        return [Fraction(c) for c in cyclotomic_polynomial(k)]

    @classmethod
    def from_poly(cls, k: int, coeffs) -> CyclotomicScalar:
        rem = _poly_rem([Fraction(c) for c in coeffs], cls._modulus(k))
        deg = len(cyclotomic_polynomial(k)) - 1
        rem += [Fraction(0)] * (deg - len(rem))
        return cls(k, tuple(rem))

    @classmethod
    def from_rational(cls, k: int, value) -> CyclotomicScalar:
        return cls.from_poly(k, [Fraction(value)])

    @classmethod
    def zero(cls, k: int) -> CyclotomicScalar:
        return cls.from_rational(k, 0)

    @classmethod
    def one(cls, k: int) -> CyclotomicScalar:
        return cls.from_rational(k, 1)

    @classmethod
    def zeta(cls, k: int, power: int = 1) -> CyclotomicScalar:
        coeffs = [Fraction(0)] * (power % k) + [Fraction(1)]
        return cls.from_poly(k, coeffs)

    def _coerce(self, other):
        if isinstance(other, CyclotomicScalar):
            if other.order != self.order:
                raise ValueError("cyclotomic orders differ")
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicScalar.from_rational(self.order, other)
        return None

    def __bool__(self):
        return any(self.coeffs)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CyclotomicScalar(
            self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicScalar(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CyclotomicScalar.from_poly(
            self.order, _poly_mul(self.coeffs, other.coeffs)
        )

    __rmul__ = __mul__

    def inverse(self) -> CyclotomicScalar:
        """Inverse modulo Phi_k via the extended Euclidean algorithm.

        Phi_k is irreducible over Q, so every nonzero residue is a unit.
        """
        if not self:
            raise ZeroDivisionError("cyclotomic scalar is zero")
        r0, r1 = self._modulus(self.order), list(self.coeffs)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while any(r1):
            while r1 and not r1[-1]:
                r1.pop()
            if len(r1) == 1:
                inv = [c / r1[0] for c in s1]
                return CyclotomicScalar.from_poly(self.order, inv)
            q = [Fraction(0)] * (len(r0) - len(r1) + 1)
            rem = list(r0)
            for shift in range(len(rem) - len(r1), -1, -1):
                c = rem[shift + len(r1) - 1] / r1[-1]
                q[shift] = c
                for i, rc in enumerate(r1):
                    rem[shift + i] -= c * rc
            del rem[len(r1) - 1:]
            r0, r1 = r1, rem
            new_s = [Fraction(0)] * max(len(s0), len(q) + len(s1) - 1)
            for i, c in enumerate(s0):
                new_s[i] += c
            for i, c in enumerate(_poly_mul(q, s1)):
                new_s[i] -= c
            s0, s1 = s1, new_s
        raise ZeroDivisionError("cyclotomic scalar is zero modulo Phi_k")

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CyclotomicScalar.from_rational(self.order, other)
        if not isinstance(other, CyclotomicScalar):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def promote(self, order: int) -> CyclotomicScalar:
        """Re-express the value in the cyclotomic field of a multiple order
        via zeta_m = zeta_{order}^{order/m}."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError("can only promote to a multiple of the order")
        step = CyclotomicScalar.zeta(order, order // self.order)
        acc = CyclotomicScalar.zero(order)
        power = CyclotomicScalar.one(order)
        for c in self.coeffs:
            acc = acc + power * c
            power = power * step
        return acc

    def to_json(self):
        return {"k": self.order, "coeffs": [rational_to_string(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data) -> CyclotomicScalar:
        return cls.from_poly(int(data["k"]), [rational_from_string(c) for c in data["coeffs"]])


# ---------------------------------------------------------------------------
# Dense exact matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExactMatrix:
    """Immutable dense matrix with row-major entries over an exact field."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match matrix shape")

    @classmethod
    def from_rows(cls, rows) -> ExactMatrix:
        rows = [tuple(r) for r in rows]
        if not rows:
            raise ValueError("matrix needs at least one row")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), width, tuple(itertools.chain.from_iterable(rows)))

    @classmethod
    def from_columns(cls, cols) -> ExactMatrix:
        return cls.from_rows(zip(*[tuple(c) for c in cols]))

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls.from_rows(
            [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        )

    def entry(self, i: int, j: int):
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def row_list(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> ExactMatrix:
        return ExactMatrix.from_rows(zip(*self.row_list()))

    def matvec(self, vec) -> tuple:
        vec = tuple(vec)
        if len(vec) != self.cols:
            raise ValueError("vector length does not match matrix width")
        return tuple(
            sum((self.entry(i, j) * vec[j] for j in range(self.cols)),
                start=Fraction(0) * self.entry(i, 0))
            for i in range(self.rows)
        )

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        if self.cols != other.rows:
            raise ValueError("inner dimensions do not match")
        cols = [other.column(j) for j in range(other.cols)]
        return ExactMatrix.from_rows(
            [[_dot(self.row(i), c) for c in cols] for i in range(self.rows)]
        )

    def scale_rows(self, factors) -> ExactMatrix:
        factors = tuple(factors)
        return ExactMatrix.from_rows(
            [[f * e for e in self.row(i)] for i, f in enumerate(factors)]
        )

    def submatrix(self, row_idx, col_idx) -> ExactMatrix:
        return ExactMatrix.from_rows(
            [[self.entry(i, j) for j in col_idx] for i in row_idx]
        )

    def minor(self, row_idx, col_idx):
        return self.submatrix(row_idx, col_idx).det()

    def det(self):
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = self.row_list()
        sign = 1
        prev = 1
        for i in range(n - 1):
            if a[i][i] == 0:
                for r in range(i + 1, n):
                    if a[r][i] != 0:
                        a[i], a[r] = a[r], a[i]
                        sign = -sign
                        break
                else:
                    return _zero_like(self.entries[0])
            for r in range(i + 1, n):
                for c in range(i + 1, n):
                    a[r][c] = (a[r][c] * a[i][i] - a[r][i] * a[i][c]) / prev
                a[r][i] = 0
            prev = a[i][i]
        return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]

    def det_cofactor(self):
        """Determinant by cofactor expansion (test oracle for .det())."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        if self.rows == 1:
            return self.entry(0, 0)
        total = _zero_like(self.entries[0])
        cols = range(1, self.cols)
        for j in range(self.cols):
            pivot = self.entry(0, j)
            if pivot == 0:
                continue
            sub = self.submatrix(range(1, self.rows),
                                 [c for c in range(self.cols) if c != j])
            term = pivot * sub.det_cofactor()
            total = total + term if j % 2 == 0 else total - term
        return total

    def rank(self) -> int:
        a = self.row_list()
        rank = 0
        for col in range(self.cols):
            pivot_row = next(
                (r for r in range(rank, self.rows) if a[r][col] != 0), None
            )
            if pivot_row is None:
                continue
            a[rank], a[pivot_row] = a[pivot_row], a[rank]
            pivot = a[rank][col]
            for r in range(self.rows):
                if r != rank and a[r][col] != 0:
                    factor = a[r][col] / pivot
                    a[r] = [x - factor * y for x, y in zip(a[r], a[rank])]
            rank += 1
            if rank == self.rows:
                break
        return rank

    def inverse(self) -> ExactMatrix:
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        a = [list(self.row(i)) + [Fraction(int(i == j)) for j in range(n)]
             for i in range(n)]
        for col in range(n):
            pivot_row = next((r for r in range(col, n) if a[r][col] != 0), None)
            if pivot_row is None:
                raise ValueError("matrix is singular")
            a[col], a[pivot_row] = a[pivot_row], a[col]
            pivot = a[col][col]
            a[col] = [x / pivot for x in a[col]]
            for r in range(n):
                if r != col and a[r][col] != 0:
                    factor = a[r][col]
                    a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
        return ExactMatrix.from_rows([row[n:] for row in a])

    def adjugate(self) -> ExactMatrix:
        """Transpose of the cofactor matrix; M @ adj(M) = det(M) I."""
        if self.rows != self.cols:
            raise ValueError("adjugate of a non-square matrix")
        n = self.rows
        if n == 1:
            return ExactMatrix.from_rows([[_one_like(self.entries[0])]])
        cof = []
        for i in range(n):
            cof_row = []
            for j in range(n):
                sub = self.submatrix([r for r in range(n) if r != i],
                                     [c for c in range(n) if c != j])
                m = sub.det()
                cof_row.append(m if (i + j) % 2 == 0 else -m)
            cof.append(cof_row)
        return ExactMatrix.from_rows(cof).transpose()

    def to_json(self):
        return [[_scalar_to_json(e) for e in self.row(i)] for i in range(self.rows)]


def _dot(u, v):
    acc = None
    for a, b in zip(u, v):
        term = a * b
        acc = term if acc is None else acc + term
    return acc


def _zero_like(sample):
    if isinstance(sample, CyclotomicScalar):
        return CyclotomicScalar.zero(sample.order)
    return Fraction(0)


def _one_like(sample):
    if isinstance(sample, CyclotomicScalar):
        return CyclotomicScalar.one(sample.order)
    return Fraction(1)


def _scalar_to_json(value):
    if isinstance(value, CyclotomicScalar):
        return value.to_json()
    return rational_to_string(value)


# ---------------------------------------------------------------------------
# Solving and projective helpers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearSolveResult:
    """Outcome of an exact linear solve.

    ``status`` is one of ``"unique"``, ``"underdetermined"`` or
    ``"inconsistent"``.  For underdetermined systems the reported solution
    sets every free variable to zero.
    """

    status: str
    solution: tuple | None
    rank: int


def solve_linear(matrix: ExactMatrix, rhs) -> LinearSolveResult:
    """Solve ``matrix @ x = rhs`` by exact Gaussian elimination."""
    rhs = tuple(rhs)
    if matrix.rows != len(rhs):
        raise ValueError("right-hand side length does not match row count")
    m, n = matrix.rows, matrix.cols
    a = [list(matrix.row(i)) + [rhs[i]] for i in range(m)]
    pivots = []
    rank = 0
    for col in range(n):
        pivot_row = next((r for r in range(rank, m) if a[r][col] != 0), None)
        if pivot_row is None:
            continue
        a[rank], a[pivot_row] = a[pivot_row], a[rank]
        pivot = a[rank][col]
        a[rank] = [x / pivot for x in a[rank]]
        for r in range(m):
            if r != rank and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[rank])]
        pivots.append(col)
        rank += 1
        if rank == m:
            break
    for r in range(rank, m):
        if a[r][n] != 0:
            return LinearSolveResult("inconsistent", None, rank)
    zero = _zero_like(matrix.entries[0])
    solution = [zero] * n
    for r, col in enumerate(pivots):
        solution[col] = a[r][n]
    status = "unique" if rank == n else "underdetermined"
    return LinearSolveResult(status, tuple(solution), rank)


def projective_normalize(vec) -> tuple:
    """Scale a nonzero vector so its first nonzero entry is 1 (idempotent)."""
    vec = tuple(vec)
    for entry in vec:
        if entry != 0:
            return tuple(x / entry for x in vec)
    raise ValueError("cannot normalize the zero vector")


def all_maximal_minors_nonzero(matrix: ExactMatrix, s: int) -> bool:
    """True iff every s-by-s minor of ``matrix`` is nonzero."""
    if s < 1 or s > min(matrix.rows, matrix.cols):
        raise ValueError("minor size out of range")
    for row_idx in itertools.combinations(range(matrix.rows), s):
        for col_idx in itertools.combinations(range(matrix.cols), s):
            if matrix.minor(row_idx, col_idx) == 0:
                return False
    return True
