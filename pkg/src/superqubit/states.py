"""Superqubit states: parity-validated coefficient tensors over (2|1)^n.

Basis kets carry one symbol per slot from {0, 1, *}; the starred (bullet)
symbol is the odd basis direction.  A state of grade g must satisfy

    deg(a_ket) = g + (number of * slots in ket)  (mod 2)

for every nonzero coefficient.  Inner products, normalization, density
matrices and partial supertraces all follow the graded sign rules; the norm
of a physical state has strictly positive body, which makes the analytic
inverse square root (and hence exact normalization) well defined.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping, Sequence

from .grassmann import (
    PRUNE_TOL,
    VANISH_TOL,
    AlgebraContext,
    ContextMismatch,
    GrassmannNumber,
    gn_inv_sqrt,
)
from .superlinear import GradedShape, ShapeMismatch, Supermatrix

BULLET = 2
_SYMBOLS = "01*"

Ket = tuple[int, ...]


class ParityViolation(ValueError):
    """A coefficient's Grassmann parity contradicts its ket's parity."""


class Unphysical(ArithmeticError):
    """State norm has non-positive body; not normalizable."""


class BadSlots(ValueError):
    """Invalid slot selection for a partial supertrace."""


def ket_text(ket: Ket) -> str:
    return "".join(_SYMBOLS[s] for s in ket)


def ket_from_text(text: str) -> Ket:
    try:
        return tuple(_SYMBOLS.index(ch) for ch in text)
    except ValueError:
        raise ValueError(f"bad ket label {text!r}: slots must be 0, 1 or *") from None


def slot_deg(symbol: int) -> int:
    return 1 if symbol == BULLET else 0

def ket_deg(ket: Ket) -> int:
    return sum(1 for s in ket if s == BULLET) & 1


def all_kets(n: int) -> list[Ket]:
    """All 3^n kets in row-major order; grades match the (2|1)^n tensor shape."""
    return [tuple(k) for k in product((0, 1, BULLET), repeat=n)]


def state_shape(n: int) -> GradedShape:
    return GradedShape(tuple(ket_deg(k) for k in all_kets(n)))


def boson_fermion_count(n: int) -> tuple[int, int]:
    """Number of even and odd basis kets: ((3^n + 1)/2, (3^n - 1)/2)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return (3**n + 1) // 2, (3**n - 1) // 2


class SuperState:
    """An n-superqubit state: sparse map from kets to Grassmann coefficients."""

    __slots__ = ("n", "context", "grade", "coeffs")

    def __init__(
        self,
        n: int,
        context: AlgebraContext,
        coefficients: Mapping[Ket | str, GrassmannNumber | complex],
        grade: int = 0,
        validate: bool = True,
    ):
        self.n = n
        self.context = context
        self.grade = grade & 1
        coeffs: dict[Ket, GrassmannNumber] = {}
        for key, value in coefficients.items():
            ket = ket_from_text(key) if isinstance(key, str) else tuple(key)
            if len(ket) != n:
                raise ShapeMismatch(f"ket {ket_text(ket)} has {len(ket)} slots, expected {n}")
            if not isinstance(value, GrassmannNumber):
                value = context.scalar(value)
            if value.is_zero():
                continue
            coeffs[ket] = value
        self.coeffs = coeffs
        if validate:
            self._validate()

    def _validate(self) -> None:
        for ket, coeff in self.coeffs.items():
            if coeff.context != self.context:
                raise ContextMismatch(f"coefficient of |{ket_text(ket)}> uses a different context")
            g = coeff.grade()
            want = (self.grade + ket_deg(ket)) & 1
            if g == "mixed" or (0 if g == "even" else 1) != want:
                raise ParityViolation(
                    f"coefficient of |{ket_text(ket)}> must have parity {want}, got {g}"
                )

    # -- access ---------------------------------------------------------------

    def coefficient(self, ket: Ket | str) -> GrassmannNumber:
        if isinstance(ket, str):
            ket = ket_from_text(ket)
        return self.coeffs.get(tuple(ket), self.context.zero())

    def max_abs(self) -> float:
        return max((c.max_abs() for c in self.coeffs.values()), default=0.0)

    def is_zero(self, tol: float = PRUNE_TOL) -> bool:
        return self.max_abs() < tol

    def isclose(self, other: "SuperState", tol: float = PRUNE_TOL) -> bool:
        if self.n != other.n:
            return False
        kets = set(self.coeffs) | set(other.coeffs)
        return all(self.coefficient(k).isclose(other.coefficient(k), tol) for k in kets)

    def map_coefficients(self, fn) -> "SuperState":
        return SuperState(
            self.n, self.context, {k: fn(c) for k, c in self.coeffs.items()},
            grade=self.grade, validate=False,
        )

    def __add__(self, other: "SuperState") -> "SuperState":
        if self.n != other.n or self.context != other.context or self.grade != other.grade:
            raise ShapeMismatch("can only add states of equal n, context and grade")
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, self.context.zero()) + c
        return SuperState(self.n, self.context, out, grade=self.grade, validate=False)

    def scale(self, value: GrassmannNumber | complex, side: str = "left") -> "SuperState":
        """Multiply every coefficient by a scalar.  A pure odd Grassmann scalar
        flips the state grade."""
        if not isinstance(value, GrassmannNumber):
            value = self.context.scalar(value)
        d = value.parity()
        coeffs = {
            k: (value * c if side == "left" else c * value) for k, c in self.coeffs.items()
        }
        return SuperState(self.n, self.context, coeffs, grade=(self.grade + d) & 1)

    # -- inner product and normalization ---------------------------------------

    def inner(self, other: "SuperState") -> GrassmannNumber:
        """<self|other> = sum_ket (-1)^(deg ket (1 + deg self)) self_ket^# other_ket."""
        if self.n != other.n:
            raise ShapeMismatch("states have different slot counts")
        if self.context != other.context:
            raise ContextMismatch("states from different algebra contexts")
        acc = self.context.zero()
        bra_sign_exp = 1 + self.grade
        for ket in set(self.coeffs) | set(other.coeffs):
            term = self.coefficient(ket).superstar() * other.coefficient(ket)
            if (ket_deg(ket) * bra_sign_exp) & 1:
                term = -term
            acc = acc + term
        return acc

    def norm_squared(self) -> GrassmannNumber:
        return self.inner(self)

    def is_physical(self, tol: float = VANISH_TOL) -> bool:
        return self.norm_squared().body.real > tol

    def normalize(self) -> "SuperState":
        """Return the state scaled by <psi|psi>^(-1/2); the result has norm
        exactly 1 in the algebra (all soul corrections cancel)."""
        norm = self.norm_squared()
        if not norm.body.real > VANISH_TOL:
            raise Unphysical("norm body is not strictly positive")
        factor = gn_inv_sqrt(norm)
        return self.map_coefficients(lambda c: factor * c)

    # -- density matrices ----------------------------------------------------------

    def density_matrix(self) -> "SuperDensityMatrix":
        """rho[ket1, ket2] = (-1)^(deg ket2) a_ket1 a_ket2^#."""
        kets = all_kets(self.n)
        shape = state_shape(self.n)
        stars = {k: self.coefficient(k).superstar() for k in kets}
        rows = []
        for k1 in kets:
            a1 = self.coefficient(k1)
            row = []
            for k2 in kets:
                entry = a1 * stars[k2]
                if ket_deg(k2):
                    entry = -entry
                row.append(entry)
            rows.append(row)
        matrix = Supermatrix(self.context, shape, shape, 0, rows, validate=False)
        return SuperDensityMatrix(self.n, matrix)

    # -- serialization -----------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "grade": self.grade,
            "pairs": self.context.pair_count,
            "coefficients": {
                ket_text(k): c.to_records() for k, c in sorted(self.coeffs.items())
            },
        }

    def __repr__(self) -> str:
        parts = [f"|{ket_text(k)}>: {c!r}" for k, c in sorted(self.coeffs.items())]
        return f"SuperState(n={self.n}, grade={self.grade}, {{{', '.join(parts)}}})"


def make_state(
    n: int,
    coefficients: Mapping[Ket | str, GrassmannNumber | complex],
    context: AlgebraContext | None = None,
    grade: int = 0,
) -> SuperState:
    """Build a validated state; default context has one generator pair per slot."""
    if context is None:
        context = AlgebraContext(n)
    return SuperState(n, context, coefficients, grade=grade)


def extend_context(state: SuperState, extra_pairs: int) -> SuperState:
    """Re-embed a state into a context with extra generator pairs appended.

    Monomial masks are unchanged because new generator indices extend the
    range; coefficients carry over verbatim.
    """
    ctx = AlgebraContext(state.context.pair_count + extra_pairs)
    coeffs = {k: GrassmannNumber(ctx, c.terms) for k, c in state.coeffs.items()}
    return SuperState(state.n, ctx, coeffs, grade=state.grade, validate=False)


class SuperDensityMatrix:
    """Pure-state super density matrix over the 3^n ket basis.

    Self-superadjoint, with supertrace equal to the state norm; unnormalized
    pure states satisfy rho^2 = str(rho) rho.
    """

    __slots__ = ("n", "matrix")

    def __init__(self, n: int, matrix: Supermatrix):
        self.n = n
        self.matrix = matrix

    @property
    def context(self) -> AlgebraContext:
        return self.matrix.context

    def kets(self) -> list[Ket]:
        return all_kets(self.n)

    def entry(self, ket1: Ket | str, ket2: Ket | str) -> GrassmannNumber:
        if isinstance(ket1, str):
            ket1 = ket_from_text(ket1)
        if isinstance(ket2, str):
            ket2 = ket_from_text(ket2)
        kets = self.kets()
        return self.matrix.entry(kets.index(tuple(ket1)), kets.index(tuple(ket2)))

    def supertrace(self) -> GrassmannNumber:
        return self.matrix.supertrace()

    def square(self) -> Supermatrix:
        return self.matrix @ self.matrix

    def is_self_superadjoint(self, tol: float = PRUNE_TOL) -> bool:
        return self.matrix.superadjoint().isclose(self.matrix, tol)

    def partial_supertrace(
        self,
        keep: Sequence[int] | None = None,
        drop: Sequence[int] | None = None,
    ) -> "SuperDensityMatrix":
        """Trace out slots with the graded sign (-1)^(deg of traced symbol).

        Exactly one of ``keep``/``drop`` selects 0-based slot positions.
        """
        if (keep is None) == (drop is None):
            raise BadSlots("specify exactly one of keep= or drop=")
        slots = set(range(self.n))
        if keep is not None:
            keep_list = sorted(set(keep))
            if not set(keep_list) <= slots:
                raise BadSlots(f"keep slots {keep} out of range for n={self.n}")
        else:
            drop_set = set(drop)  # type: ignore[arg-type]
            if not drop_set <= slots:
                raise BadSlots(f"drop slots {drop} out of range for n={self.n}")
            keep_list = sorted(slots - drop_set)
        if not keep_list:
            raise BadSlots("cannot trace out every slot; use supertrace()")
        traced = sorted(slots - set(keep_list))

        m = len(keep_list)
        kets_kept = all_kets(m)
        kets_traced = all_kets(len(traced)) if traced else [()]
        full_kets = self.kets()
        index_of = {k: i for i, k in enumerate(full_kets)}

        def merge(kept: Ket, tr: Ket) -> Ket:
            full = [0] * self.n
            for pos, s in zip(keep_list, kept):
                full[pos] = s
            for pos, s in zip(traced, tr):
                full[pos] = s
            return tuple(full)

        ctx = self.context
        rows = []
        for k1 in kets_kept:
            row = []
            for k2 in kets_kept:
                acc = ctx.zero()
                for t in kets_traced:
                    sign = -1 if ket_deg(t) else 1
                    e = self.matrix.entry(index_of[merge(k1, t)], index_of[merge(k2, t)])
                    acc = acc + e * sign
                row.append(acc)
            rows.append(row)
        shape = state_shape(m)
        return SuperDensityMatrix(m, Supermatrix(ctx, shape, shape, 0, rows, validate=False))
