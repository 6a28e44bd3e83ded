"""Grade-partitioned supervectors and supermatrices over Grassmann numbers.

A supermatrix carries an array grade (0 or 1) and graded row/column index
sets.  Every nonzero entry must satisfy the compatibility condition

    deg(M[i, j]) = array_grade + deg(row i) + deg(col j)  (mod 2),

which is validated on construction.  The supertranspose is of order four, the
supertrace is cyclic modulo sign, and the superadjoint is the superstar of the
supertranspose.  The Berezinian plays the role of the determinant and is
multiplicative where defined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .grassmann import (
    PRUNE_TOL,
    AlgebraContext,
    ContextMismatch,
    GrassmannNumber,
    gn_exp,
)


class ShapeMismatch(ValueError):
    """Incompatible shapes in a supermatrix operation."""


class ImpureGrade(ValueError):
    """Entry or operand violates the grade compatibility condition."""


class ImpureScalar(ValueError):
    """Graded scalar multiplication requires a pure even or pure odd scalar."""


class BothBlocksSingular(ArithmeticError):
    """Berezinian undefined: neither diagonal block is invertible."""


@dataclass(frozen=True)
class GradedShape:
    """Graded index set: a tuple of 0/1 grades, one per index position.

    ``GradedShape.of(p, q)`` builds the sorted (p|q) shape with p even indices
    first; tensor products produce interleaved grade patterns.
    """

    grades: tuple[int, ...]

    @classmethod
    def of(cls, even_dim: int, odd_dim: int) -> "GradedShape":
        return cls((0,) * even_dim + (1,) * odd_dim)

    @property
    def dim(self) -> int:
        return len(self.grades)

    @property
    def even_dim(self) -> int:
        return sum(1 for g in self.grades if g == 0)

    @property
    def odd_dim(self) -> int:
        return sum(1 for g in self.grades if g == 1)

    def deg(self, index: int) -> int:
        return self.grades[index]

    def even_indices(self) -> list[int]:
        return [i for i, g in enumerate(self.grades) if g == 0]

    def odd_indices(self) -> list[int]:
        return [i for i, g in enumerate(self.grades) if g == 1]

    def __mul__(self, other: "GradedShape") -> "GradedShape":
        """Tensor product: composite index (i, j) has grade deg i + deg j."""
        return GradedShape(tuple((a + b) & 1 for a in self.grades for b in other.grades))

    def __repr__(self) -> str:
        return f"GradedShape{self.grades}"


class Supermatrix:
    """Dense matrix of GrassmannNumbers with graded shapes and an array grade."""

    __slots__ = ("context", "row_shape", "col_shape", "grade", "entries")

    def __init__(
        self,
        context: AlgebraContext,
        row_shape: GradedShape,
        col_shape: GradedShape,
        grade: int,
        entries: Sequence[Sequence[GrassmannNumber]],
        validate: bool = True,
    ):
        self.context = context
        self.row_shape = row_shape
        self.col_shape = col_shape
        self.grade = grade & 1
        rows = tuple(tuple(row) for row in entries)
        if len(rows) != row_shape.dim or any(len(r) != col_shape.dim for r in rows):
            raise ShapeMismatch("entry array does not match the declared shapes")
        self.entries = rows
        if validate:
            self._validate()

    def _validate(self) -> None:
        for i, row in enumerate(self.entries):
            for j, entry in enumerate(row):
                if entry.context != self.context:
                    raise ContextMismatch("entry from a different algebra context")
                if entry.is_zero():
                    continue
                want = (self.grade + self.row_shape.deg(i) + self.col_shape.deg(j)) & 1
                g = entry.grade()
                if g == "mixed" or (0 if g == "even" else 1) != want:
                    raise ImpureGrade(
                        f"entry ({i},{j}) has grade {g}, expected parity {want}"
                    )

    # -- constructors -------------------------------------------------------

    @classmethod
    def zeros(cls, context: AlgebraContext, row_shape: GradedShape, col_shape: GradedShape, grade: int = 0) -> "Supermatrix":
        z = context.zero()
        rows = [[z] * col_shape.dim for _ in range(row_shape.dim)]
        return cls(context, row_shape, col_shape, grade, rows, validate=False)

    @classmethod
    def identity(cls, context: AlgebraContext, shape: GradedShape) -> "Supermatrix":
        rows = [
            [context.one() if i == j else context.zero() for j in range(shape.dim)]
            for i in range(shape.dim)
        ]
        return cls(context, shape, shape, 0, rows, validate=False)

    @classmethod
    def from_complex(
        cls,
        context: AlgebraContext,
        row_shape: GradedShape,
        col_shape: GradedShape,
        array: Sequence[Sequence[complex]],
        grade: int = 0,
    ) -> "Supermatrix":
        rows = [[context.scalar(v) for v in row] for row in array]
        return cls(context, row_shape, col_shape, grade, rows)

    def map_entries(self, fn: Callable[[GrassmannNumber], GrassmannNumber], grade: int | None = None) -> "Supermatrix":
        rows = [[fn(e) for e in row] for row in self.entries]
        return Supermatrix(
            self.context, self.row_shape, self.col_shape,
            self.grade if grade is None else grade, rows, validate=False,
        )

    # -- structure ------------------------------------------------------------

    def entry(self, i: int, j: int) -> GrassmannNumber:
        return self.entries[i][j]

    @property
    def is_square(self) -> bool:
        return self.row_shape == self.col_shape

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> list[list[GrassmannNumber]]:
        return [[self.entries[i][j] for j in cols] for i in rows]

    def block(self, which: str) -> list[list[GrassmannNumber]]:
        """Block 'A' (even-even), 'B' (even-odd), 'C' (odd-even) or 'D' (odd-odd)."""
        re, ro = self.row_shape.even_indices(), self.row_shape.odd_indices()
        ce, co = self.col_shape.even_indices(), self.col_shape.odd_indices()
        return {
            "A": self.submatrix(re, ce),
            "B": self.submatrix(re, co),
            "C": self.submatrix(ro, ce),
            "D": self.submatrix(ro, co),
        }[which]

    def max_abs(self) -> float:
        return max((e.max_abs() for row in self.entries for e in row), default=0.0)

    def isclose(self, other: "Supermatrix", tol: float = PRUNE_TOL) -> bool:
        if self.row_shape != other.row_shape or self.col_shape != other.col_shape:
            return False
        return all(
            self.entries[i][j].isclose(other.entries[i][j], tol)
            for i in range(self.row_shape.dim)
            for j in range(self.col_shape.dim)
        )

    def __repr__(self) -> str:
        body = "\n".join("  [" + ", ".join(repr(e) for e in row) + "]" for row in self.entries)
        return f"Supermatrix(grade={self.grade}, rows={self.row_shape.grades}, cols={self.col_shape.grades},\n{body})"

    # -- linear operations ------------------------------------------------------

    def _check_same_shape(self, other: "Supermatrix") -> None:
        if self.row_shape != other.row_shape or self.col_shape != other.col_shape:
            raise ShapeMismatch("shape mismatch")
        if self.context != other.context:
            raise ContextMismatch("operands from different algebra contexts")

    def __add__(self, other: "Supermatrix") -> "Supermatrix":
        self._check_same_shape(other)
        if self.grade != other.grade and self.max_abs() > 0 and other.max_abs() > 0:
            raise ImpureGrade("cannot add supermatrices of different array grades")
        rows = [
            [self.entries[i][j] + other.entries[i][j] for j in range(self.col_shape.dim)]
            for i in range(self.row_shape.dim)
        ]
        grade = self.grade if self.max_abs() > 0 else other.grade
        return Supermatrix(self.context, self.row_shape, self.col_shape, grade, rows, validate=False)

    def __sub__(self, other: "Supermatrix") -> "Supermatrix":
        return self + (-other)

    def __neg__(self) -> "Supermatrix":
        return self.map_entries(lambda e: -e)

    def scale(self, value: complex) -> "Supermatrix":
        """Plain entrywise scaling by a complex number (an even scalar)."""
        return self.map_entries(lambda e: e * value)

    def __matmul__(self, other: "Supermatrix") -> "Supermatrix":
        if self.col_shape != other.row_shape:
            raise ShapeMismatch("inner shapes do not match")
        if self.context != other.context:
            raise ContextMismatch("operands from different algebra contexts")
        n, m, k = self.row_shape.dim, other.col_shape.dim, self.col_shape.dim
        rows = []
        for i in range(n):
            row = []
            for j in range(m):
                acc = self.context.zero()
                for t in range(k):
                    # factor order preserved: left entry times right entry
                    acc = acc + self.entries[i][t] * other.entries[t][j]
                row.append(acc)
            rows.append(row)
        return Supermatrix(
            self.context, self.row_shape, other.col_shape,
            (self.grade + other.grade) & 1, rows, validate=False,
        )

    # -- graded scalar multiplication ------------------------------------------

    def scalar_mul(self, side: str, alpha: GrassmannNumber) -> "Supermatrix":
        """Left/right multiplication by a pure Grassmann scalar.

        (alpha M)[i, j] = (-1)^(deg(row i) * deg(alpha)) alpha * M[i, j]
        (M alpha)[i, j] = (-1)^(deg(col j) * deg(alpha)) M[i, j] * alpha
        """
        if not alpha.is_pure():
            raise ImpureScalar("graded scalar multiplication needs a pure scalar")
        d = alpha.parity()
        rows = []
        for i in range(self.row_shape.dim):
            row = []
            for j in range(self.col_shape.dim):
                if side == "left":
                    sign = -1 if (self.row_shape.deg(i) * d) & 1 else 1
                    row.append((alpha * self.entries[i][j]) * sign)
                elif side == "right":
                    sign = -1 if (self.col_shape.deg(j) * d) & 1 else 1
                    row.append((self.entries[i][j] * alpha) * sign)
                else:
                    raise ValueError("side must be 'left' or 'right'")
            rows.append(row)
        return Supermatrix(
            self.context, self.row_shape, self.col_shape,
            (self.grade + d) & 1, rows, validate=False,
        )

    # -- super operations ---------------------------------------------------------

    def supertranspose(self) -> "Supermatrix":
        """M^st[i, j] = (-1)^((deg j + deg M)(deg i + deg j)) M[j, i]; order four."""
        rows = []
        for i in range(self.col_shape.dim):
            di = self.col_shape.deg(i)
            row = []
            for j in range(self.row_shape.dim):
                dj = self.row_shape.deg(j)
                sign = -1 if ((dj + self.grade) * (di + dj)) & 1 else 1
                row.append(self.entries[j][i] * sign)
            rows.append(row)
        return Supermatrix(self.context, self.col_shape, self.row_shape, self.grade, rows, validate=False)

    def supertrace(self) -> GrassmannNumber:
        """str M = sum_X (-1)^((deg X + deg M) deg X) M[X, X]."""
        if not self.is_square:
            raise ShapeMismatch("supertrace needs a square supermatrix")
        acc = self.context.zero()
        for i in range(self.row_shape.dim):
            d = self.row_shape.deg(i)
            sign = -1 if ((d + self.grade) * d) & 1 else 1
            acc = acc + self.entries[i][i] * sign
        return acc

    def superstar_entries(self) -> "Supermatrix":
        return self.map_entries(lambda e: e.superstar())

    def superadjoint(self) -> "Supermatrix":
        """M^ddag = (M^st)^#, applied entrywise after the supertranspose."""
        return self.supertranspose().superstar_entries()

    def tensor(self, other: "Supermatrix") -> "Supermatrix":
        """Graded Kronecker product; composite index grades add mod 2.

        Entry sign (-1)^(dj1 di2 + gM di2 + gN dj1 + di1 di2 dj1 dj2) is the
        unique grade-local dressing (up to gauge) under which the
        supertranspose distributes and the supertrace is multiplicative; it
        reduces to the plain Kronecker product for body-valued block-diagonal
        factors.
        """
        if self.context != other.context:
            raise ContextMismatch("operands from different algebra contexts")
        rshape = self.row_shape * other.row_shape
        cshape = self.col_shape * other.col_shape
        gm, gn = self.grade, other.grade
        rows = []
        for i1 in range(self.row_shape.dim):
            di1 = self.row_shape.deg(i1)
            for i2 in range(other.row_shape.dim):
                di2 = other.row_shape.deg(i2)
                row = []
                for j1 in range(self.col_shape.dim):
                    dj1 = self.col_shape.deg(j1)
                    for j2 in range(other.col_shape.dim):
                        dj2 = other.col_shape.deg(j2)
                        entry = self.entries[i1][j1] * other.entries[i2][j2]
                        if (dj1 * di2 + gm * di2 + gn * dj1 + di1 * di2 * dj1 * dj2) & 1:
                            entry = -entry
                        row.append(entry)
                rows.append(row)
        return Supermatrix(
            self.context, rshape, cshape, (gm + gn) & 1, rows, validate=False
        )

    def berezinian(self) -> GrassmannNumber:
        """Ber M = det(A - B D^-1 C) / det D, falling back to
        det A / det(D - C A^-1 B) when the D block is singular."""
        if not self.is_square:
            raise ShapeMismatch("Berezinian needs a square supermatrix")
        if self.grade != 0:
            raise ImpureGrade("Berezinian needs an even supermatrix")
        a = self.block("A")
        b = self.block("B")
        c = self.block("C")
        d = self.block("D")
        ctx = self.context
        det_d = _det(ctx, d)
        if abs(det_d.body) >= PRUNE_TOL:
            d_inv = _inv(ctx, d, det_d)
            schur = _mat_sub(a, _mat_mul(ctx, _mat_mul(ctx, b, d_inv), c))
            return _det(ctx, schur) * det_d.inverse()
        det_a = _det(ctx, a)
        if abs(det_a.body) >= PRUNE_TOL:
            a_inv = _inv(ctx, a, det_a)
            schur = _mat_sub(d, _mat_mul(ctx, _mat_mul(ctx, c, a_inv), b))
            det_schur = _det(ctx, schur)
            if abs(det_schur.body) < PRUNE_TOL:
                raise BothBlocksSingular("Berezinian undefined: odd-odd Schur complement singular")
            return det_a * det_schur.inverse()
        raise BothBlocksSingular("both diagonal blocks singular: Berezinian undefined")

    def exp(self) -> "Supermatrix":
        """Matrix exponential by scaling and squaring a truncated Taylor series.

        Soul contributions terminate by nilpotency; the body series is
        truncated when the largest term coefficient drops below 1e-16.
        """
        if not self.is_square:
            raise ShapeMismatch("exp needs a square supermatrix")
        if self.grade != 0:
            raise ImpureGrade("exp needs an even supermatrix")
        norm = self.max_abs() * self.row_shape.dim
        squarings = 0
        if norm > 0.5:
            squarings = min(32, max(0, math.ceil(math.log2(norm / 0.5))))
        scaled = self.scale(0.5 ** squarings)
        acc = Supermatrix.identity(self.context, self.row_shape)
        term = acc
        for k in range(1, 128):
            term = (term @ scaled).scale(1.0 / k)
            if term.max_abs() < 1e-16:
                break
            acc = acc + term
        for _ in range(squarings):
            acc = acc @ acc
        return acc

    def to_json(self) -> dict:
        return {
            "row_shape": list(self.row_shape.grades),
            "col_shape": list(self.col_shape.grades),
            "grade": self.grade,
            "entries": [[e.to_records() for e in row] for row in self.entries],
        }


class SuperVector:
    """Column supervector with a graded shape and an array grade."""

    __slots__ = ("context", "shape", "grade", "entries")

    def __init__(self, context: AlgebraContext, shape: GradedShape, grade: int, entries: Sequence[GrassmannNumber]):
        self.context = context
        self.shape = shape
        self.grade = grade & 1
        self.entries = tuple(entries)
        if len(self.entries) != shape.dim:
            raise ShapeMismatch("entry count does not match the shape")
        for i, entry in enumerate(self.entries):
            if entry.is_zero():
                continue
            want = (self.grade + shape.deg(i)) & 1
            g = entry.grade()
            if g == "mixed" or (0 if g == "even" else 1) != want:
                raise ImpureGrade(f"entry {i} has grade {g}, expected parity {want}")

    def __repr__(self) -> str:
        return f"SuperVector(grade={self.grade}, {list(self.entries)!r})"


def matvec(m: Supermatrix, v: SuperVector) -> SuperVector:
    if m.col_shape != v.shape:
        raise ShapeMismatch("inner shapes do not match")
    out = []
    for i in range(m.row_shape.dim):
        acc = m.context.zero()
        for j in range(m.col_shape.dim):
            acc = acc + m.entries[i][j] * v.entries[j]
        out.append(acc)
    return SuperVector(m.context, m.row_shape, (m.grade + v.grade) & 1, out)


def superbracket(m: Supermatrix, n: Supermatrix) -> Supermatrix:
    """Graded bracket [[M, N]] = MN - (-1)^(deg M deg N) NM for pure M, N."""
    if not (m.is_square and n.is_square) or m.row_shape != n.row_shape:
        raise ShapeMismatch("superbracket needs equal square shapes")
    sign = -1 if (m.grade * n.grade) & 1 else 1
    return (m @ n) - (n @ m).scale(sign)


def scalar_mul(side: str, alpha: GrassmannNumber, m: Supermatrix) -> Supermatrix:
    return m.scalar_mul(side, alpha)


def matmul(m: Supermatrix, n: Supermatrix) -> Supermatrix:
    return m @ n


def supertranspose(m: Supermatrix) -> Supermatrix:
    return m.supertranspose()


def supertrace(m: Supermatrix) -> GrassmannNumber:
    return m.supertrace()


def superadjoint(m: Supermatrix) -> Supermatrix:
    return m.superadjoint()


def berezinian(m: Supermatrix) -> GrassmannNumber:
    return m.berezinian()


def tensor_product(m: Supermatrix, n: Supermatrix) -> Supermatrix:
    return m.tensor(n)


def matrix_exp(m: Supermatrix) -> Supermatrix:
    return m.exp()


# -- determinants and inverses over commuting (even) Grassmann entries -------


def _det(ctx: AlgebraContext, rows: list[list[GrassmannNumber]]) -> GrassmannNumber:
    """Laplace expansion; exact over commuting entries.  det of 0x0 is 1."""
    n = len(rows)
    if n == 0:
        return ctx.one()
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    acc = ctx.zero()
    for j in range(n):
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = rows[0][j] * _det(ctx, minor)
        acc = acc + (term if j % 2 == 0 else -term)
    return acc


def _cofactor(ctx: AlgebraContext, rows: list[list[GrassmannNumber]], i: int, j: int) -> GrassmannNumber:
    minor = [r[:j] + r[j + 1 :] for k, r in enumerate(rows) if k != i]
    d = _det(ctx, minor)
    return d if (i + j) % 2 == 0 else -d


def _inv(ctx: AlgebraContext, rows: list[list[GrassmannNumber]], det: GrassmannNumber) -> list[list[GrassmannNumber]]:
    """Adjugate inverse; requires det with invertible body."""
    n = len(rows)
    det_inv = det.inverse()
    return [[_cofactor(ctx, rows, j, i) * det_inv for j in range(n)] for i in range(n)]


def _mat_mul(ctx: AlgebraContext, a: list[list[GrassmannNumber]], b: list[list[GrassmannNumber]]) -> list[list[GrassmannNumber]]:
    if not a or not b:
        return []
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = ctx.zero()
            for t in range(k):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def _mat_sub(a: list[list[GrassmannNumber]], b: list[list[GrassmannNumber]]) -> list[list[GrassmannNumber]]:
    if not b:
        return a
    if not a:
        return [[-e for e in row] for row in b]
    return [[a[i][j] - b[i][j] for j in range(len(a[0]))] for i in range(len(a))]
