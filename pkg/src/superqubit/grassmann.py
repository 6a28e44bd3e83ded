"""Arithmetic in a finite-dimensional Grassmann algebra with paired generators.

The algebra Lambda_{2k} is generated by 2k mutually anticommuting symbols
theta_0, ..., theta_{2k-1}.  Generators come in superconjugate pairs
(theta_{2j}, theta_{2j+1}): the superstar ``#`` maps theta_{2j} -> theta_{2j+1}
and theta_{2j+1} -> -theta_{2j} and extends to products *without* reversing
factor order, so that z^## = (-1)^deg(z) z for pure z.  The star operator
swaps the pair members with no sign but *reverses* factor order, so z** = z.

Every element splits into a complex "body" (the coefficient of the empty
monomial) and a nilpotent "soul" (everything else).  Analytic functions of a
Grassmann number are evaluated by Taylor-expanding around the body; the series
terminates because the soul is nilpotent.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

# Two thresholds, deliberately distinct: PRUNE_TOL controls when a stored
# coefficient is treated as an exact zero and dropped; VANISH_TOL is the
# looser "does this quantity vanish" decision used by classification.
PRUNE_TOL = 1e-12
VANISH_TOL = 1e-9

GRADE_EVEN = "even"
GRADE_ODD = "odd"
GRADE_MIXED = "mixed"


class ContextMismatch(ValueError):
    """Operands belong to different algebra contexts."""


class NoInverse(ArithmeticError):
    """Inversion of a Grassmann number with vanishing body."""


class SingularBody(ArithmeticError):
    """Analytic function evaluated where its body argument is singular."""


@dataclass(frozen=True)
class AlgebraContext:
    """A Grassmann algebra with ``pair_count`` superconjugate generator pairs.

    Generator indices run over [0, 2*pair_count); indices 2j and 2j+1 form a
    conjugate pair.  All numbers combined in one expression must share a
    context.
    """

    pair_count: int

    def __post_init__(self) -> None:
        if self.pair_count < 0:
            raise ValueError("pair_count must be non-negative")

    @property
    def generator_count(self) -> int:
        return 2 * self.pair_count

    def zero(self) -> "GrassmannNumber":
        return GrassmannNumber(self, {})

    def one(self) -> "GrassmannNumber":
        return GrassmannNumber(self, {0: 1.0 + 0.0j})

    def scalar(self, value: complex) -> "GrassmannNumber":
        return GrassmannNumber(self, {0: complex(value)})

    def generator(self, index: int) -> "GrassmannNumber":
        if not 0 <= index < self.generator_count:
            raise IndexError(f"generator index {index} out of range [0, {self.generator_count})")
        return GrassmannNumber(self, {1 << index: 1.0 + 0.0j})

    def theta(self, pair: int) -> "GrassmannNumber":
        """First member theta of pair ``pair``."""
        return self.generator(2 * pair)

    def theta_sharp(self, pair: int) -> "GrassmannNumber":
        """Second member theta^# of pair ``pair``."""
        return self.generator(2 * pair + 1)

    def monomial(self, indices: Iterable[int], coeff: complex = 1.0) -> "GrassmannNumber":
        """Product coeff * theta_{i1} * theta_{i2} * ... in the given order."""
        mask, sign = _canonical_mask(tuple(indices))
        if sign == 0:
            return self.zero()
        return GrassmannNumber(self, {mask: complex(coeff) * sign})


def _canonical_mask(indices: Sequence[int]) -> tuple[int, int]:
    """Sort a generator-index word into ascending order.

    Returns (bitmask, sign) where sign is (-1)^(number of transpositions),
    or (0, 0) if an index repeats (the word is zero).
    """
    order = list(indices)
    swaps = 0
    for i in range(1, len(order)):
        j = i
        while j > 0 and order[j - 1] > order[j]:
            order[j - 1], order[j] = order[j], order[j - 1]
            swaps += 1
            j -= 1
    mask = 0
    for idx in order:
        bit = 1 << idx
        if mask & bit:
            return 0, 0
        mask |= bit
    return mask, (-1 if swaps & 1 else 1)


def _merge_sign(a: int, b: int) -> int:
    """Sign from sorting the concatenation of two ascending disjoint masks."""
    swaps = 0
    bb = b
    while bb:
        low = bb & -bb
        j = low.bit_length() - 1
        swaps += (a >> (j + 1)).bit_count()
        bb ^= low
    return -1 if swaps & 1 else 1


def _mask_indices(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class GrassmannNumber:
    """Sparse element of a Grassmann algebra: a map monomial -> complex.

    Monomials are stored as bitmasks over generator indices in canonical
    ascending order, which makes the representation a normal form: two equal
    elements have identical term maps.  Values are immutable; every operation
    returns a new number.
    """

    __slots__ = ("context", "_terms")

    def __init__(self, context: AlgebraContext, terms: dict[int, complex], _prune: bool = True):
        self.context = context
        if _prune:
            terms = {
                m: c
                for m, c in terms.items()
                if abs(c.real) >= PRUNE_TOL or abs(c.imag) >= PRUNE_TOL
            }
        self._terms = terms

    # -- basic structure ---------------------------------------------------

    @property
    def terms(self) -> dict[int, complex]:
        return dict(self._terms)

    @property
    def body(self) -> complex:
        return self._terms.get(0, 0.0 + 0.0j)

    @property
    def soul(self) -> "GrassmannNumber":
        return GrassmannNumber(self.context, {m: c for m, c in self._terms.items() if m}, _prune=False)

    def is_zero(self, tol: float = PRUNE_TOL) -> bool:
        return all(abs(c) < tol for c in self._terms.values())

    def max_abs(self) -> float:
        return max((abs(c) for c in self._terms.values()), default=0.0)

    def grade(self) -> str:
        """'even', 'odd', or 'mixed'; the zero element reports 'even'."""
        has_even = has_odd = False
        for m in self._terms:
            if m.bit_count() & 1:
                has_odd = True
            else:
                has_even = True
        if has_odd and has_even:
            return GRADE_MIXED
        if has_odd:
            return GRADE_ODD
        return GRADE_EVEN

    def is_pure(self) -> bool:
        return self.grade() != GRADE_MIXED

    def parity(self) -> int:
        """0 or 1 for pure elements; raises on mixed grade."""
        g = self.grade()
        if g == GRADE_MIXED:
            raise ValueError("parity undefined for mixed-grade element")
        return 0 if g == GRADE_EVEN else 1

    def even_part(self) -> "GrassmannNumber":
        return GrassmannNumber(self.context, {m: c for m, c in self._terms.items() if not m.bit_count() & 1}, _prune=False)

    def odd_part(self) -> "GrassmannNumber":
        return GrassmannNumber(self.context, {m: c for m, c in self._terms.items() if m.bit_count() & 1}, _prune=False)

    # -- ring operations ---------------------------------------------------

    def _coerce(self, other) -> "GrassmannNumber":
        if isinstance(other, GrassmannNumber):
            if other.context != self.context:
                raise ContextMismatch("operands from different algebra contexts")
            return other
        if isinstance(other, (int, float, complex)):
            return self.context.scalar(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other) -> "GrassmannNumber":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0.0) + c
        return GrassmannNumber(self.context, out)

    __radd__ = __add__

    def __sub__(self, other) -> "GrassmannNumber":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "GrassmannNumber":
        return (-self) + other

    def __neg__(self) -> "GrassmannNumber":
        return GrassmannNumber(self.context, {m: -c for m, c in self._terms.items()}, _prune=False)

    def __mul__(self, other) -> "GrassmannNumber":
        if isinstance(other, (int, float, complex)):
            z = complex(other)
            return GrassmannNumber(self.context, {m: c * z for m, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[int, complex] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                if m1 & m2:
                    continue
                m = m1 | m2
                c = c1 * c2 * _merge_sign(m1, m2)
                out[m] = out.get(m, 0.0) + c
        return GrassmannNumber(self.context, out)

    def __rmul__(self, other) -> "GrassmannNumber":
        if isinstance(other, (int, float, complex)):
            return self.__mul__(other)
        return NotImplemented

    def __pow__(self, n: int) -> "GrassmannNumber":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are defined")
        out = self.context.one()
        for _ in range(n):
            out = out * self
        return out

    def __truediv__(self, other) -> "GrassmannNumber":
        if isinstance(other, (int, float, complex)):
            return self * (1.0 / complex(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    # -- conjugations --------------------------------------------------------

    def superstar(self) -> "GrassmannNumber":
        """Superstar ``#``: conjugates coefficients, theta_{2j} -> theta_{2j+1},
        theta_{2j+1} -> -theta_{2j}, multiplicative without order reversal."""
        out: dict[int, complex] = {}
        for m, c in self._terms.items():
            sign = 1
            mapped = []
            for idx in _mask_indices(m):
                if idx & 1:
                    mapped.append(idx - 1)
                    sign = -sign
                else:
                    mapped.append(idx + 1)
            mask, s2 = _canonical_mask(mapped)
            out[mask] = out.get(mask, 0.0) + c.conjugate() * sign * s2
        return GrassmannNumber(self.context, out)

    def star(self) -> "GrassmannNumber":
        """Star: conjugates coefficients, swaps pair members with no sign,
        reverses factor order, so z** = z."""
        out: dict[int, complex] = {}
        for m, c in self._terms.items():
            mapped = [idx ^ 1 for idx in reversed(_mask_indices(m))]
            mask, s = _canonical_mask(mapped)
            out[mask] = out.get(mask, 0.0) + c.conjugate() * s
        return GrassmannNumber(self.context, out)

    # -- analytic structure --------------------------------------------------

    def inverse(self) -> "GrassmannNumber":
        """Exact inverse via the finite geometric series in soul/body."""
        b = self.body
        if abs(b) < PRUNE_TOL:
            raise NoInverse("Grassmann number has no inverse: body vanishes")
        s = self.soul
        out = self.context.scalar(1.0 / b)
        power = self.context.one()
        for _ in range(self.context.generator_count):
            power = power * s * (-1.0 / b)
            if power.is_zero(0.0):
                break
            out = out + power * (1.0 / b)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, GrassmannNumber):
            if isinstance(other, (int, float, complex)):
                other = self.context.scalar(other)
            else:
                return NotImplemented
        return self.context == other.context and self._terms == other._terms

    def isclose(self, other, tol: float = PRUNE_TOL) -> bool:
        other = self._coerce(other)
        masks = set(self._terms) | set(other._terms)
        return all(abs(self._terms.get(m, 0.0) - other._terms.get(m, 0.0)) <= tol for m in masks)

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m in sorted(self._terms, key=lambda x: (x.bit_count(), x)):
            c = self._terms[m]
            if m == 0:
                parts.append(f"{c:g}" if c.imag == 0 else f"({c.real:g}{c.imag:+g}j)")
            else:
                word = "*".join(f"t{i}" for i in _mask_indices(m))
                cs = f"{c:g}" if c.imag == 0 else f"({c.real:g}{c.imag:+g}j)"
                parts.append(f"{cs}*{word}")
        return " + ".join(parts)

    # -- serialization ---------------------------------------------------------

    def to_records(self) -> list[dict]:
        """List of {monomial: ascending index array, re, im}; [] denotes the body."""
        recs = []
        for m in sorted(self._terms, key=lambda x: (x.bit_count(), x)):
            c = self._terms[m]
            recs.append({"monomial": _mask_indices(m), "re": c.real, "im": c.imag})
        return recs

    @classmethod
    def from_records(cls, context: AlgebraContext, records: Iterable[dict]) -> "GrassmannNumber":
        out = context.zero()
        for rec in records:
            out = out + context.monomial(rec["monomial"], complex(rec["re"], rec["im"]))
        return out


# -- module-level operation aliases (functional interface) -------------------


def gn_add(x: GrassmannNumber, y: GrassmannNumber) -> GrassmannNumber:
    return x + y


def gn_mul(x: GrassmannNumber, y: GrassmannNumber) -> GrassmannNumber:
    return x * y


def gn_grade(z: GrassmannNumber) -> str:
    return z.grade()


def superstar(z: GrassmannNumber) -> GrassmannNumber:
    return z.superstar()


def star(z: GrassmannNumber) -> GrassmannNumber:
    return z.star()


def gn_inverse(z: GrassmannNumber) -> GrassmannNumber:
    return z.inverse()


def analytic_apply(derivs: Sequence[complex], z: GrassmannNumber) -> GrassmannNumber:
    """Evaluate an analytic function given its derivatives at the body.

    ``derivs[k]`` must hold f^(k)(z_body).  Returns sum_k derivs[k]/k! * soul^k;
    the series terminates because the soul is nilpotent.  The caller signals a
    singular body by raising; this function raises SingularBody only on
    non-finite derivative values.
    """
    for d in derivs:
        dd = complex(d)
        if not (math.isfinite(dd.real) and math.isfinite(dd.imag)):
            raise SingularBody("non-finite derivative value: function singular at the body")
    out = z.context.scalar(derivs[0])
    soul = z.soul
    power = z.context.one()
    fact = 1.0
    for k in range(1, len(derivs)):
        power = power * soul
        if power.is_zero(0.0):
            break
        fact *= k
        out = out + power * (complex(derivs[k]) / fact)
    return out


def power_derivatives(exponent: float, x0: complex, count: int) -> list[complex]:
    """Derivatives of x**exponent at x0, orders 0..count-1."""
    if abs(x0) < PRUNE_TOL:
        raise SingularBody(f"x**{exponent} singular at 0")
    out: list[complex] = []
    coeff = 1.0
    p = exponent
    for k in range(count):
        out.append(coeff * complex(x0) ** (p))
        coeff *= p
        p -= 1.0
    return out


def gn_power(z: GrassmannNumber, exponent: float) -> GrassmannNumber:
    """z**exponent for non-integer exponents, via the analytic calculus."""
    count = z.context.generator_count + 1
    return analytic_apply(power_derivatives(exponent, z.body, count), z)


def gn_inv_sqrt(z: GrassmannNumber) -> GrassmannNumber:
    return gn_power(z, -0.5)


def gn_sqrt(z: GrassmannNumber) -> GrassmannNumber:
    return gn_power(z, 0.5)


def gn_exp(z: GrassmannNumber) -> GrassmannNumber:
    count = z.context.generator_count + 1
    return analytic_apply([cmath.exp(z.body)] * count, z)
