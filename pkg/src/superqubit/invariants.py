"""Entanglement covariants and invariants, classical and supersymmetric.

Classical two- and three-qubit quantities (determinant, gamma covariants, the
T tensor, the quartic hyperdeterminant-type invariant, tangles) act as the
reduction oracles for their supersymmetric counterparts (sdet, the Gamma
supermatrices, T over (2|1)^3, sDet, super tangles).

Conventions.  Indices are raised by contracting a slot with the invariant
tensor of the (2|1) representation (epsilon block with eps_{01} = +1,
extended by 1 on the odd direction); raised factors are written first and
products of anticommuting coefficients are kept in that order.  Under these
conventions every sign below is forced by exact first-order invariance under
the superalgebra action (checked with nilpotent parameters), and:

  * sdet equals (1/2) str[(aE)^st E a] with the group-invariant tensor E,
    reduces to det a when the starred coefficients vanish, and reproduces
    the known worked values;
  * sDet (the quadratic of the Gamma supermatrix) reduces to the classical
    quartic invariant det(gamma), is exactly invariant, and reproduces the
    known worked values;
  * T transforms exactly like the coefficient tensor itself, and the signed
    T contraction reproduces sDet with uniform weight 1/2 and sector sign
    (-1)^(b(b+1)/2), b = number of starred slots.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable

import numpy as np

from .grassmann import (
    PRUNE_TOL,
    VANISH_TOL,
    AlgebraContext,
    GrassmannNumber,
    gn_sqrt,
)
from .superlinear import BothBlocksSingular, GradedShape, ImpureGrade, Supermatrix
from .states import (
    BULLET,
    SuperState,
    all_kets,
    extend_context,
    ket_text,
    slot_deg,
)
from .osp import E_INVARIANT, act_generator

# classical epsilon with eps_{01} = +1; doubled raisings are convention free
EPS = np.array([[0.0, 1.0], [-1.0, 0.0]])

# per-slot raising tensor of the (2|1) representation
RAISE = ((0.0, 1.0, 0.0), (-1.0, 0.0, 0.0), (0.0, 0.0, 1.0))

SHAPE21 = GradedShape.of(2, 1)


class ClassificationError(ValueError):
    """The covariant vanishing pattern matches no class row."""


# ---------------------------------------------------------------------------
# classical block (complex numpy arrays)
# ---------------------------------------------------------------------------


def det2(a: np.ndarray) -> complex:
    a = np.asarray(a, dtype=complex).reshape(2, 2)
    return complex(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])


def two_tangle(a: np.ndarray) -> float:
    """tau = 4 |det a|^2 = 4 det rho_A = 4 det rho_B."""
    return float(4.0 * abs(det2(a)) ** 2)


def reduced_density_2(a: np.ndarray, keep: int) -> np.ndarray:
    a = np.asarray(a, dtype=complex).reshape(2, 2)
    return a @ a.conj().T if keep == 0 else a.T @ a.conj()


def gamma_covariants(a: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The three 2x2 covariants, one per singled-out qubit."""
    a = np.asarray(a, dtype=complex).reshape(2, 2, 2)
    ga = np.einsum("bB,cC,iBC,jbc->ij", EPS, EPS, a, a)
    gb = np.einsum("aA,cC,AiC,ajc->ij", EPS, EPS, a, a)
    gc = np.einsum("aA,bB,ABi,abj->ij", EPS, EPS, a, a)
    return ga, gb, gc


def t_tensor(a: np.ndarray) -> np.ndarray:
    """Cubic covariant, computed in its three equivalent slot forms."""
    a = np.asarray(a, dtype=complex).reshape(2, 2, 2)
    ga, gb, gc = gamma_covariants(a)
    t1 = np.einsum("ip,pP,Pbc->ibc", ga, EPS, a)
    t2 = np.einsum("jp,pP,aPc->ajc", gb, EPS, a)
    t3 = np.einsum("kp,pP,abP->abk", gc, EPS, a)
    if not (np.allclose(t1, t2, atol=1e-10) and np.allclose(t1, t3, atol=1e-10)):
        raise AssertionError("the three slot forms of the T covariant disagree")
    return t1


def cayley_hyperdet(a: np.ndarray) -> complex:
    """Quartic invariant as det of the gamma covariants (all three agree).

    Convention: this is the negative of the textbook 12-term expansion (see
    ``cayley_hyperdet_quartic``); under it the supersymmetric extension
    reduces to the classical value exactly, with no sign flip.
    """
    ga, gb, gc = gamma_covariants(a)
    da, db, dc = (complex(np.linalg.det(g)) for g in (ga, gb, gc))
    scale = max(1.0, abs(da))
    if not (abs(da - db) < 1e-9 * scale and abs(da - dc) < 1e-9 * scale):
        raise AssertionError("det of the three gamma covariants disagree")
    return da


def cayley_hyperdet_quartic(a: np.ndarray) -> complex:
    """Independent oracle: the textbook 12-term quartic expansion (GHZ > 0)."""
    c = np.asarray(a, dtype=complex).reshape(8)
    return complex(
        c[0] ** 2 * c[7] ** 2 + c[1] ** 2 * c[6] ** 2 + c[2] ** 2 * c[5] ** 2 + c[3] ** 2 * c[4] ** 2
        - 2 * (
            c[0] * c[1] * c[6] * c[7]
            + c[0] * c[2] * c[5] * c[7]
            + c[0] * c[3] * c[4] * c[7]
            + c[1] * c[2] * c[5] * c[6]
            + c[1] * c[3] * c[4] * c[6]
            + c[2] * c[3] * c[4] * c[5]
        )
        + 4 * (c[0] * c[3] * c[5] * c[6] + c[1] * c[2] * c[4] * c[7])
    )


def three_tangle(a: np.ndarray) -> float:
    return float(4.0 * abs(cayley_hyperdet(a)))


def local_entropies(a: np.ndarray) -> tuple[float, float, float]:
    """4 det rho_X for each singled-out qubit."""
    a = np.asarray(a, dtype=complex).reshape(2, 2, 2)
    out = []
    for axis in range(3):
        m = np.moveaxis(a, axis, 0).reshape(2, 4)
        rho = m @ m.conj().T
        out.append(float(4.0 * np.linalg.det(rho).real))
    return tuple(out)  # type: ignore[return-value]


def classify3(a: np.ndarray, tol: float = VANISH_TOL) -> str:
    """Class label from the covariant vanishing pattern, top row first."""
    a = np.asarray(a, dtype=complex).reshape(2, 2, 2)
    if np.abs(a).max() < tol:
        return "Null"
    ga, gb, gc = gamma_covariants(a)
    has_a = np.abs(ga).max() >= tol
    has_b = np.abs(gb).max() >= tol
    has_c = np.abs(gc).max() >= tol
    if not (has_a or has_b or has_c):
        return "A-B-C"
    if has_a and not has_b and not has_c:
        return "A-BC"
    if has_b and not has_a and not has_c:
        return "B-CA"
    if has_c and not has_a and not has_b:
        return "C-AB"
    det = cayley_hyperdet(a)
    if abs(det) < tol:
        t = t_tensor(a)
        if np.abs(t).max() >= tol:
            return "W"
        raise ClassificationError("pattern matches no class row")
    return "GHZ"


# ---------------------------------------------------------------------------
# graded raising helper
# ---------------------------------------------------------------------------


CoeffFn = Callable[[tuple[int, ...]], GrassmannNumber]


def _raise_slot_fn(coeff: CoeffFn, slot: int) -> CoeffFn:
    """Ket -> coefficient with one slot contracted against RAISE."""

    def raised(ket: tuple[int, ...]) -> GrassmannNumber:
        x = ket[slot]
        acc = None
        for xp in range(3):
            w = RAISE[x][xp]
            if w == 0:
                continue
            val = coeff(ket[:slot] + (xp,) + ket[slot + 1 :]) * w
            acc = val if acc is None else acc + val
        return acc

    return raised


# ---------------------------------------------------------------------------
# two superqubits
# ---------------------------------------------------------------------------


def _require_n(state: SuperState, n: int) -> None:
    if state.n != n:
        raise ValueError(f"operation needs an n={n} state, got n={state.n}")


def sdet(state: SuperState) -> GrassmannNumber:
    """Quadratic invariant of a two-superqubit coefficient supermatrix:

        (a00 a11 - a01 a10 - a_{0*} a_{1*} - a_{*0} a_{*1}) - a_{**}^2 / 2.

    Equals (1/2) str[(aE)^st E a]; reduces to det a when the starred
    coefficients vanish; exactly annihilated by every superalgebra
    generator.  Not the Berezinian.
    """
    _require_n(state, 2)
    c = state.coefficient
    B = BULLET
    return (
        c((0, 0)) * c((1, 1))
        - c((0, 1)) * c((1, 0))
        - c((0, B)) * c((1, B))
        - c((B, 0)) * c((B, 1))
        - c((B, B)) * c((B, B)) * 0.5
    )


def sdet_quadratic_form(state: SuperState) -> GrassmannNumber:
    """sdet as (1/2) sum_XY s(X, Y) a^{XY} a_{XY}, raised factor first,
    with sector signs (+, +, +, -) mirroring the gamma bosonic block."""
    _require_n(state, 2)
    c = state.coefficient
    up = _raise_slot_fn(_raise_slot_fn(c, 0), 1)
    acc = state.context.zero()
    for ket in all_kets(2):
        term = up(ket) * c(ket)
        if slot_deg(ket[0]) and slot_deg(ket[1]):
            term = -term
        acc = acc + term
    return acc * 0.5


def coefficient_supermatrix(state: SuperState) -> Supermatrix:
    """The (2|1)x(2|1) supermatrix of two-superqubit coefficients."""
    _require_n(state, 2)
    rows = [[state.coefficient((i, j)) for j in range(3)] for i in range(3)]
    return Supermatrix(state.context, SHAPE21, SHAPE21, state.grade, rows)


def _invariant_tensor(ctx: AlgebraContext) -> Supermatrix:
    rows = [list(r) for r in E_INVARIANT]
    return Supermatrix.from_complex(ctx, SHAPE21, SHAPE21, rows, grade=0)


def _sdet_supertrace_of(matrix: Supermatrix) -> GrassmannNumber:
    """(1/2) str[(M E)^st E M] with the group-invariant tensor E."""
    e = _invariant_tensor(matrix.context)
    return ((matrix @ e).supertranspose() @ (e @ matrix)).supertrace() * 0.5


def sdet_supertrace_form(state: SuperState) -> GrassmannNumber:
    """sdet through the supermatrix machinery; equals the explicit expansion."""
    return _sdet_supertrace_of(coefficient_supermatrix(state))


def super_two_tangle(state: SuperState) -> GrassmannNumber:
    """tau = 4 sdet (sdet)^#."""
    s = sdet(state)
    return s * s.superstar() * 4.0


def berezinian_compare(state: SuperState) -> dict:
    """Berezinian of the coefficient supermatrix next to sdet.

    The Berezinian needs an invertible odd-odd block, so it is undefined for
    vanishing a_{**}; sdet is defined always, and the two generally differ.
    """
    _require_n(state, 2)
    s = sdet(state)
    try:
        ber = coefficient_supermatrix(state).berezinian()
    except (BothBlocksSingular, ImpureGrade):
        return {"berezinian": None, "sdet": s, "equal": None}
    return {"berezinian": ber, "sdet": s, "equal": ber.isclose(s, VANISH_TOL)}


# ---------------------------------------------------------------------------
# three superqubits: Gamma supermatrices
# ---------------------------------------------------------------------------

# Sector signs (bos-bos, bos-star, star-bos, star-star) of the bilinear
# contraction over the two non-singled slots, per singled slot and per block.
# Anchored by the worked examples and forced by exact invariance; under the
# raised-index convention of the source formulas they are the printed
# patterns for the first slot.
_GAMMA_SIGNS: dict[int, dict[str, tuple[float, float, float, float]]] = {
    0: {"bos": (1, 1, 1, -1), "rowb": (1, -1, -1, -1), "colb": (1, 1, 1, -1)},
    1: {"bos": (1, 1, 1, -1), "rowb": (1, -1, 1, 1), "colb": (1, 1, -1, 1)},
    2: {"bos": (1, 1, 1, -1), "rowb": (1, 1, 1, -1), "colb": (1, -1, -1, -1)},
}


def _gamma_entry(
    ctx: AlgebraContext,
    coeff: CoeffFn,
    free_slot: int,
    y1: int,
    y2: int,
    signs: tuple[float, float, float, float],
) -> GrassmannNumber:
    others = [s for s in (0, 1, 2) if s != free_slot]
    s_bb, s_bf, s_fb, s_ff = signs
    up = _raise_slot_fn(_raise_slot_fn(coeff, others[0]), others[1])
    B = BULLET

    def ket(y: int, u: int, v: int) -> tuple[int, ...]:
        k = [0, 0, 0]
        k[free_slot] = y
        k[others[0]] = u
        k[others[1]] = v
        return tuple(k)

    acc = ctx.zero()
    for u, v in product((0, 1), (0, 1)):
        acc = acc + up(ket(y1, u, v)) * coeff(ket(y2, u, v)) * s_bb
    for u in (0, 1):
        acc = acc + up(ket(y1, u, B)) * coeff(ket(y2, u, B)) * s_bf
    for v in (0, 1):
        acc = acc + up(ket(y1, B, v)) * coeff(ket(y2, B, v)) * s_fb
    return acc + up(ket(y1, B, B)) * coeff(ket(y2, B, B)) * s_ff


def _gamma_singled(ctx: AlgebraContext, coeff: CoeffFn, free_slot: int) -> Supermatrix:
    """Gamma supermatrix singling out one tensor slot; the all-odd corner
    vanishes identically."""
    sig = _GAMMA_SIGNS[free_slot]
    B = BULLET
    rows = [[ctx.zero() for _ in range(3)] for _ in range(3)]
    for y1, y2 in product((0, 1), (0, 1)):
        rows[y1][y2] = _gamma_entry(ctx, coeff, free_slot, y1, y2, sig["bos"])
    for y in (0, 1):
        rows[y][B] = _gamma_entry(ctx, coeff, free_slot, y, B, sig["rowb"])
        rows[B][y] = _gamma_entry(ctx, coeff, free_slot, B, y, sig["colb"])
    return Supermatrix(ctx, SHAPE21, SHAPE21, 0, rows)


def super_gamma(state: SuperState) -> tuple[Supermatrix, Supermatrix, Supermatrix]:
    """The three (2|1)x(2|1) Gamma supermatrices of a 3-superqubit state.

    Each singles out one slot; each is annihilated exactly by the
    superalgebra generators of the other two slots and (for the first) obeys
    the slot-1 supersymmetry relations tying its blocks together.
    """
    _require_n(state, 3)
    c = state.coefficient
    return (
        _gamma_singled(state.context, c, 0),
        _gamma_singled(state.context, c, 1),
        _gamma_singled(state.context, c, 2),
    )


def super_gamma_a_only(state: SuperState) -> Supermatrix:
    _require_n(state, 3)
    return _gamma_singled(state.context, state.coefficient, 0)


def _sdet_of_matrix(m: Supermatrix) -> GrassmannNumber:
    """The sdet quadratic applied to any (2|1)x(2|1) supermatrix."""
    B = 2
    e = m.entry
    return (
        e(0, 0) * e(1, 1)
        - e(0, 1) * e(1, 0)
        - e(0, B) * e(1, B)
        - e(B, 0) * e(B, 1)
        - e(B, B) * e(B, B) * 0.5
    )


# ---------------------------------------------------------------------------
# three superqubits: T covariant and the quartic invariant
# ---------------------------------------------------------------------------


def super_t(state: SuperState, gamma_a: Supermatrix | None = None) -> dict[tuple[int, ...], GrassmannNumber]:
    """T[X, Y, Z] = sum_X' s Gamma^A[X, X'] a^{X'}_{YZ}, with s = -1 exactly
    when X is bosonic and X' is starred.

    With this relative sign T transforms exactly like the coefficient tensor
    under every superalgebra generator (checked with nilpotent parameters).
    """
    _require_n(state, 3)
    if gamma_a is None:
        gamma_a = super_gamma_a_only(state)
    up1 = _raise_slot_fn(state.coefficient, 0)
    out: dict[tuple[int, ...], GrassmannNumber] = {}
    for ket in all_kets(3):
        x, y, z = ket
        acc = state.context.zero()
        for xp in range(3):
            g = gamma_a.entry(x, xp)
            if g.is_zero():
                continue
            term = g * up1((xp, y, z))
            if slot_deg(x) == 0 and slot_deg(xp) == 1:
                term = -term
            acc = acc + term
        if not acc.is_zero():
            out[ket] = acc
    return out


def t_state(state: SuperState) -> SuperState:
    """The T covariant packaged as a state-like tensor (same parity pattern)."""
    return SuperState(3, state.context, super_t(state), grade=state.grade, validate=False)


def _t_contraction(state: SuperState, t: dict[tuple[int, ...], GrassmannNumber]) -> GrassmannNumber:
    """sDet as (1/2) sum_XYZ (-1)^(b(b+1)/2) T_{XYZ} a^{XYZ}, b = number of
    starred slots; all three slots raised, T factor first."""
    c = state.coefficient
    up = _raise_slot_fn(_raise_slot_fn(_raise_slot_fn(c, 0), 1), 2)
    acc = state.context.zero()
    for ket, t_val in t.items():
        b = sum(slot_deg(s) for s in ket)
        sign = -1 if (b * (b + 1) // 2) & 1 else 1
        acc = acc + t_val * up(ket) * sign
    return acc * 0.5


def superhyperdet(state: SuperState, verify: bool = True) -> GrassmannNumber:
    """Quartic invariant of a 3-superqubit state: the sdet quadratic of the
    slot-1 Gamma supermatrix.

    With ``verify`` the value is recomputed through the supertrace machinery
    and as the signed T contraction; disagreement raises.  Reduces to the
    classical quartic invariant (det of the gamma covariant) when all
    starred-ket coefficients vanish.  The quadratics of the other two Gamma
    supermatrices agree with it on every classically reducible state and on
    star-symmetric states; see ``superhyperdet_routes``.
    """
    _require_n(state, 3)
    gamma_a = super_gamma_a_only(state)
    primary = _sdet_of_matrix(gamma_a)
    if verify:
        via_str = _sdet_supertrace_of(gamma_a)
        if not via_str.isclose(primary, 1e-9):
            raise AssertionError("sDet via the supertrace machinery disagrees")
        via_t = _t_contraction(state, super_t(state, gamma_a))
        if not via_t.isclose(primary, 1e-9):
            raise AssertionError("sDet via the T contraction disagrees")
    return primary


def superhyperdet_routes(state: SuperState) -> dict[str, GrassmannNumber]:
    """All computation routes: the three Gamma quadratics, the supertrace
    machinery form of the first, and the signed T contraction."""
    ga, gb, gc = super_gamma(state)
    return {
        "gamma_a": _sdet_of_matrix(ga),
        "gamma_b": _sdet_of_matrix(gb),
        "gamma_c": _sdet_of_matrix(gc),
        "supertrace": _sdet_supertrace_of(ga),
        "t_contraction": _t_contraction(state, super_t(state, ga)),
    }


def super_three_tangle(state: SuperState, verify: bool = True) -> tuple[GrassmannNumber | None, str]:
    """tau = 4 sqrt(sDet sDet^#); returns (value, status).

    status 'ok' when the square root is defined, 'zero' for vanishing sDet,
    'undefined-sqrt' when the product has zero body but nonzero soul (the
    analytic square root does not exist there).
    """
    s = superhyperdet(state, verify=verify)
    prod = s * s.superstar()
    if prod.is_zero():
        return state.context.zero(), "zero"
    if abs(prod.body) < PRUNE_TOL:
        return None, "undefined-sqrt"
    return gn_sqrt(prod) * 4.0, "ok"


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


def classify_super(state: SuperState, tol: float = VANISH_TOL) -> str:
    """SLOCC class from the vanishing pattern of the super covariants.

    n = 2: separable ('A-B') versus 'entangled' by sdet.  n = 3: the six-row
    three-qubit table with the covariants replaced by their supersymmetric
    counterparts, top row first, plus 'Null' for the zero state.
    """
    if state.n == 2:
        if state.is_zero(tol):
            return "Null"
        return "entangled" if sdet(state).max_abs() >= tol else "A-B"
    if state.n != 3:
        raise ValueError("classification applies to n = 2 or 3")
    if state.is_zero(tol):
        return "Null"
    ga, gb, gc = super_gamma(state)
    has_a = ga.max_abs() >= tol
    has_b = gb.max_abs() >= tol
    has_c = gc.max_abs() >= tol
    if not (has_a or has_b or has_c):
        return "A-B-C"
    if has_a and not has_b and not has_c:
        return "A-BC"
    if has_b and not has_a and not has_c:
        return "B-CA"
    if has_c and not has_a and not has_b:
        return "C-AB"
    sdet_gamma = _sdet_of_matrix(ga)
    if sdet_gamma.max_abs() < tol:
        t = super_t(state, ga)
        if any(v.max_abs() >= tol for v in t.values()):
            return "W"
        raise ClassificationError("pattern matches no class row")
    return "GHZ"


# ---------------------------------------------------------------------------
# infinitesimal invariance with exact nilpotent parameters
# ---------------------------------------------------------------------------


def _nilpotent_parameter(state: SuperState, gen_parity: int) -> tuple[SuperState, GrassmannNumber]:
    """Re-embed the state with one fresh generator pair and return the exact
    nilpotent parameter: a fresh odd generator for odd transformations, a
    product of the two fresh generators (even nilpotent) for even ones."""
    extended = extend_context(state, 1)
    ctx = extended.context
    pair = ctx.pair_count - 1
    if gen_parity:
        eps = ctx.theta(pair)
    else:
        eps = ctx.theta(pair) * ctx.theta_sharp(pair)
    return extended, eps


def perturbed_state(state: SuperState, x1: int, x2: int, slot: int) -> tuple[SuperState, SuperState, GrassmannNumber]:
    """(extended state, state + eps * (P_{x1x2} state), eps)."""
    gen_parity = (slot_deg(x1) + slot_deg(x2)) & 1
    base, eps = _nilpotent_parameter(state, gen_parity)
    moved = act_generator(base, x1, x2, slot).scale(eps, side="left")
    return base, base + moved, eps


def infinitesimal_invariance_check(
    state: SuperState,
    x1: int,
    x2: int,
    slot: int,
    invariant: Callable[[SuperState], GrassmannNumber] | str = "sdet",
    tol: float = PRUNE_TOL,
) -> bool:
    """Exact first-order invariance: inv(a + eps g a) - inv(a) = 0.

    The parameter eps is an exact nilpotent, so the first-order statement is
    an identity in the algebra, not a numerical limit.
    """
    if invariant == "sdet":
        fn: Callable[[SuperState], GrassmannNumber] = sdet
    elif invariant == "sDet":
        def fn(s):
            return superhyperdet(s, verify=False)
    else:
        fn = invariant  # type: ignore[assignment]
    base, perturbed, _ = perturbed_state(state, x1, x2, slot)
    delta = fn(perturbed) - fn(base)
    return delta.max_abs() <= tol


def t_covariance_check(state: SuperState, x1: int, x2: int, slot: int, tol: float = PRUNE_TOL) -> bool:
    """T(a + eps g a) - T(a) = eps (g T(a)) exactly, for each generator."""
    base, perturbed, eps = perturbed_state(state, x1, x2, slot)
    lhs = t_state(perturbed) + t_state(base).scale(-1.0)
    rhs = act_generator(t_state(base), x1, x2, slot).scale(eps, side="left")
    return lhs.isclose(rhs, tol)


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------


def classical_array(state: SuperState) -> np.ndarray | None:
    """The complex coefficient tensor when the state is classically reducible:
    no star-ket coefficients and body-only values, else None."""
    if state.grade != 0:
        return None
    shape = (2,) * state.n
    out = np.zeros(shape, dtype=complex)
    for ket, coeff in state.coeffs.items():
        if any(s == BULLET for s in ket):
            if not coeff.is_zero():
                return None
            continue
        if not coeff.soul.is_zero():
            return None
        out[ket] = coeff.body
    return out


@dataclass
class CovariantReport:
    """Computed invariants plus the vanishing pattern and class label."""

    n: int
    label: str
    classical: dict | None = None
    super_block: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "classical": self.classical,
            "super": self.super_block,
            "class": self.label,
        }


def covariant_report(state: SuperState, tol: float = VANISH_TOL) -> CovariantReport:
    """Full invariant/covariant report for an n = 2 or 3 state."""
    if state.n not in (2, 3):
        raise ValueError("reports cover n = 2 or 3")
    label = classify_super(state, tol)
    classical = None
    arr = classical_array(state)
    if arr is not None and np.abs(arr).max() >= tol:
        if state.n == 2:
            d = det2(arr)
            classical = {
                "det": {"re": d.real, "im": d.imag},
                "tau": two_tangle(arr),
                "class": "entangled" if abs(d) >= tol else "A-B",
            }
        else:
            ga, gb, gc = gamma_covariants(arr)
            det = cayley_hyperdet(arr)
            classical = {
                "gammas_nonzero": {
                    "A": bool(np.abs(ga).max() >= tol),
                    "B": bool(np.abs(gb).max() >= tol),
                    "C": bool(np.abs(gc).max() >= tol),
                },
                "Det": {"re": det.real, "im": det.imag},
                "tau": three_tangle(arr),
                "local_entropies": list(local_entropies(arr)),
                "class": classify3(arr, tol),
            }
    if state.n == 2:
        s = sdet(state)
        ber = berezinian_compare(state)
        super_block = {
            "sdet": s.to_records(),
            "tau": super_two_tangle(state).to_records(),
            "berezinian": "undefined" if ber["berezinian"] is None else ber["berezinian"].to_records(),
            "berezinian_equals_sdet": ber["equal"],
        }
    else:
        ga, gb, gc = super_gamma(state)
        t = super_t(state, ga)
        s = superhyperdet(state)
        tau, status = super_three_tangle(state, verify=False)
        super_block = {
            "gammas": {
                "nonzero": {
                    "A": bool(ga.max_abs() >= tol),
                    "B": bool(gb.max_abs() >= tol),
                    "C": bool(gc.max_abs() >= tol),
                },
                "A": ga.to_json(),
                "B": gb.to_json(),
                "C": gc.to_json(),
            },
            "T": {ket_text(k): v.to_records() for k, v in sorted(t.items()) if v.max_abs() >= tol},
            "sDet": s.to_records(),
            "tau": tau.to_records() if tau is not None else status,
            "tau_status": status,
        }
    return CovariantReport(n=state.n, label=label, classical=classical, super_block=super_block)
