"""Orthosymplectic superalgebra osp(p|2q) generators and their action.

The (2q|p) convention puts the 2q bosonic indices first.  Generators are
built from matrix units U and the graded metric G = J_(2q) (+) H_p as

    T[X1 X2] = 2 G[[X1| X3] U[X3 |X2]]   (supersymmetrized index pair),

and satisfy the membership condition T^st E + E T = 0 with the invariant
tensor E.  For p = q = 1 the basis is {T01, T00, T11, T0, T1} acting on the
(2|1) superqubit; the compact real form uosp(1|2) consists of the
anti-super-Hermitian elements X^ddag = -X.

The slot action on n-fold tensor states uses the rescaled generators
P = T/2 (with Q_A = P_{A *}) and carries the graded prefactor
(-1)^((deg X + deg Y) * sum of slot grades left of the target slot).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .grassmann import AlgebraContext, GrassmannNumber
from .superlinear import GradedShape, ShapeMismatch, Supermatrix, superbracket
from .states import BULLET, SuperState, all_kets, ket_deg, slot_deg


class BracketMismatch(AssertionError):
    """A computed superbracket deviates from the canonical table."""


class BadSlot(ValueError):
    """Generator applied to a slot outside 1..n."""


# epsilon conventions: eps_{01} = +1, raised tensor is the negative
EPSILON_LOWER = ((0.0, 1.0), (-1.0, 0.0))
EPSILON_UPPER = ((0.0, -1.0), (1.0, 0.0))

# invariant tensor of the (2|1) representation, E = J_2 (+) 1
E_INVARIANT = ((0.0, 1.0, 0.0), (-1.0, 0.0, 0.0), (0.0, 0.0, 1.0))

IndexPair = tuple[int, int]


@dataclass(frozen=True)
class OspParams:
    p: int = 1
    q: int = 1

    def __post_init__(self) -> None:
        if self.p < 1 or self.q < 1:
            raise ValueError("p and q must be positive")

    @property
    def dim(self) -> int:
        return 2 * self.q + self.p

    @property
    def shape(self) -> GradedShape:
        return GradedShape.of(2 * self.q, self.p)

    def deg(self, index: int) -> int:
        return 0 if index < 2 * self.q else 1


def _metric(params: OspParams) -> list[list[float]]:
    """G = J_(2q) (+) H_p with H_p = sigma_1 x 1_r [(+) (1) for odd p]."""
    d = params.dim
    g = [[0.0] * d for _ in range(d)]
    q = params.q
    for i in range(q):
        g[i][q + i] = 1.0
        g[q + i][i] = -1.0
    r, odd = divmod(params.p, 2)
    base = 2 * q
    for i in range(r):
        g[base + 2 * i][base + 2 * i + 1] = 1.0
        g[base + 2 * i + 1][base + 2 * i] = 1.0
    if odd:
        g[d - 1][d - 1] = 1.0
    return g


@dataclass
class GeneratorSet:
    """The osp(p|2q) basis T[X1 X2] with the invariant tensor E and metric G.

    For p = q = 1, ``names`` maps T01, T00, T11, T0, T1 (and the rescaled
    P/Q family) to explicit 3x3 supermatrices.
    """

    params: OspParams
    context: AlgebraContext
    E: Supermatrix
    G: Supermatrix
    T: dict[IndexPair, Supermatrix] = field(default_factory=dict)
    P: dict[IndexPair, Supermatrix] = field(default_factory=dict)

    @property
    def shape(self) -> GradedShape:
        return self.params.shape

    def basis_pairs(self) -> list[IndexPair]:
        """Canonical index pairs (i <= j), excluding identically-zero ones."""
        d = self.params.dim
        pairs = []
        for i in range(d):
            for j in range(i, d):
                if self.params.deg(i) and self.params.deg(j) and i == j:
                    continue  # odd-odd diagonal antisymmetrizes to zero for p=1
                if (i, j) in self.T and self.T[(i, j)].max_abs() > 0:
                    pairs.append((i, j))
        return pairs

    def t_of(self, i: int, j: int) -> Supermatrix:
        """T with graded index symmetry T[ji] = (-1)^(deg i deg j) T[ij]."""
        if (i, j) in self.T:
            return self.T[(i, j)]
        m = self.T[(j, i)]
        sign = -1 if (self.params.deg(i) * self.params.deg(j)) & 1 else 1
        return m.scale(sign)

    def q_of(self, a: int) -> Supermatrix:
        """Rescaled odd generator Q_A = P_{A bullet} (p = 1 only)."""
        return self.P[(a, self.params.dim - 1)]


def build_generators(params: OspParams = OspParams(1, 1), context: AlgebraContext | None = None) -> GeneratorSet:
    """Construct the generator family T[X1 X2] = 2 G[[X1|X3] U[X3|X2]]."""
    if context is None:
        context = AlgebraContext(1)
    d = params.dim
    shape = params.shape
    g = _metric(params)

    e_rows = [[0.0] * d for _ in range(d)]
    q = params.q
    for i in range(q):
        e_rows[i][q + i] = 1.0
        e_rows[q + i][i] = -1.0
    for i in range(2 * q, d):
        e_rows[i][i] = 1.0

    E = Supermatrix.from_complex(context, shape, shape, e_rows, grade=0)
    G = Supermatrix.from_complex(context, shape, shape, g, grade=0)

    gens = GeneratorSet(params, context, E, G)
    for x1 in range(d):
        for x2 in range(x1, d):
            # (T[x1x2])[x4, x5] = G[x1, x5] d(x2, x4) + (-1)^(x1 x2) G[x2, x5] d(x1, x4)
            sign = -1 if (params.deg(x1) * params.deg(x2)) & 1 else 1
            rows = [[0.0] * d for _ in range(d)]
            for x5 in range(d):
                rows[x2][x5] += g[x1][x5]
                rows[x1][x5] += sign * g[x2][x5]
            grade = (params.deg(x1) + params.deg(x2)) & 1
            m = Supermatrix.from_complex(context, shape, shape, rows, grade=grade)
            gens.T[(x1, x2)] = m
            gens.P[(x1, x2)] = m.scale(0.5)
    return gens


# -- p = q = 1 specifics -------------------------------------------------------

OSP12_BASIS = (("T01", (0, 1)), ("T00", (0, 0)), ("T11", (1, 1)), ("T0", (0, 2)), ("T1", (1, 2)))

# canonical bracket table of osp(1|2): coefficients of [[row, col]] in the basis
OSP12_BRACKETS: dict[tuple[str, str], dict[str, int]] = {
    ("T01", "T01"): {},
    ("T01", "T00"): {"T00": -2},
    ("T01", "T11"): {"T11": 2},
    ("T01", "T0"): {"T0": -1},
    ("T01", "T1"): {"T1": 1},
    ("T00", "T01"): {"T00": 2},
    ("T00", "T00"): {},
    ("T00", "T11"): {"T01": 4},
    ("T00", "T0"): {},
    ("T00", "T1"): {"T0": 2},
    ("T11", "T01"): {"T11": -2},
    ("T11", "T00"): {"T01": -4},
    ("T11", "T11"): {},
    ("T11", "T0"): {"T1": -2},
    ("T11", "T1"): {},
    ("T0", "T01"): {"T0": 1},
    ("T0", "T00"): {},
    ("T0", "T11"): {"T1": 2},
    ("T0", "T0"): {"T00": 1},
    ("T0", "T1"): {"T01": 1},
    ("T1", "T01"): {"T1": -1},
    ("T1", "T00"): {"T0": -2},
    ("T1", "T11"): {},
    ("T1", "T0"): {"T01": 1},
    ("T1", "T1"): {"T11": 1},
}


def bracket_formula(gens: GeneratorSet, pair1: IndexPair, pair2: IndexPair) -> Supermatrix:
    """Closed form [[T_p1, T_p2]] = 4 G[[X1 [X3] T[X2] X4]] (nested strength-one
    supersymmetrization over both index pairs)."""
    (x1, x2), (x3, x4) = pair1, pair2
    deg = gens.params.deg
    g = gens.G
    acc = Supermatrix.zeros(gens.context, gens.shape, gens.shape, grade=(deg(x1) + deg(x2) + deg(x3) + deg(x4)) & 1)
    outer = [(x1, x2, 1), (x2, x1, -1 if (deg(x1) * deg(x2)) & 1 else 1)]
    inner = [(x3, x4, 1), (x4, x3, -1 if (deg(x3) * deg(x4)) & 1 else 1)]
    for a, b, s1 in outer:
        for c, d, s2 in inner:
            coeff = s1 * s2 * g.entry(a, c).body
            if coeff:
                acc = acc + gens.t_of(b, d).scale(coeff)
    return acc


def bracket_table(gens: GeneratorSet, epsilon_fault: bool = False) -> dict[tuple[str, str], dict[str, int]]:
    """Compute all pairwise superbrackets of the osp(1|2) basis from the
    explicit supermatrices and verify them against the canonical table and the
    closed-form expression.  Returns the table of structure constants.

    ``epsilon_fault`` deliberately flips the sign convention (test hook);
    the verification then reports the first offending pair.
    """
    if gens.params != OspParams(1, 1):
        raise ValueError("the canonical table applies to p = q = 1")
    basis = {name: gens.T[pair] for name, pair in OSP12_BASIS}
    if epsilon_fault:
        # corrupt one epsilon entry of the metric (breaks its antisymmetry)
        # and rebuild the generators from it; the table check must then fail
        g = [[e.body for e in row] for row in gens.G.entries]
        g[0][1] = -g[0][1]
        basis = {}
        for name, (x1, x2) in OSP12_BASIS:
            sign = -1 if (gens.params.deg(x1) * gens.params.deg(x2)) & 1 else 1
            rows = [[0.0 + 0.0j] * 3 for _ in range(3)]
            for x5 in range(3):
                rows[x2][x5] += g[x1][x5]
                rows[x1][x5] += sign * g[x2][x5]
            grade = (gens.params.deg(x1) + gens.params.deg(x2)) & 1
            basis[name] = Supermatrix.from_complex(gens.context, gens.shape, gens.shape, rows, grade=grade)
    table: dict[tuple[str, str], dict[str, int]] = {}
    for name1, pair1 in OSP12_BASIS:
        for name2, pair2 in OSP12_BASIS:
            computed = superbracket(basis[name1], basis[name2])
            expected_coeffs = OSP12_BRACKETS[(name1, name2)]
            expected = Supermatrix.zeros(gens.context, gens.shape, gens.shape, grade=computed.grade)
            for bname, coeff in expected_coeffs.items():
                expected = expected + basis[bname].scale(coeff)
            if not computed.isclose(expected, 0.0):
                raise BracketMismatch(f"[[{name1}, {name2}]] deviates from the canonical table")
            if not epsilon_fault:
                via_formula = bracket_formula(gens, pair1, pair2)
                if not computed.isclose(via_formula, 0.0):
                    raise BracketMismatch(f"[[{name1}, {name2}]] deviates from the metric closed form")
            table[(name1, name2)] = dict(expected_coeffs)
    return table


def check_rescaled_brackets(gens: GeneratorSet) -> None:
    """Validate the rescaled family: [P, P] = 2 eps P, [P, Q] = eps Q and
    {Q_A1, Q_A2} = P_{A1A2}/2."""
    eps = EPSILON_LOWER
    p = gens.P

    def psym(a1, a2):
        return p[(min(a1, a2), max(a1, a2))]

    for a1, a2, a3, a4 in product((0, 1), repeat=4):
        lhs = superbracket(psym(a1, a2), psym(a3, a4))
        rhs = Supermatrix.zeros(gens.context, gens.shape, gens.shape, 0)
        # 2 eps_((A1)(A3) P_(A2)(A4)) expands to (1/2) sum over both swaps
        for b1, b2 in ((a1, a2), (a2, a1)):
            for b3, b4 in ((a3, a4), (a4, a3)):
                coeff = 0.5 * eps[b1][b3]
                if coeff:
                    rhs = rhs + psym(b2, b4).scale(coeff)
        if not lhs.isclose(rhs, 0.0):
            raise BracketMismatch(f"[P_{a1}{a2}, P_{a3}{a4}] deviates from the sl(2) brackets")

    for a1, a2, a3 in product((0, 1), repeat=3):
        lhs = superbracket(psym(a1, a2), gens.q_of(a3))
        rhs = gens.q_of(a2).scale(0.5 * eps[a1][a3]) + gens.q_of(a1).scale(0.5 * eps[a2][a3])
        if not lhs.isclose(rhs, 0.0):
            raise BracketMismatch(f"[P_{a1}{a2}, Q_{a3}] deviates from the spinor action")

    for a1, a2 in product((0, 1), repeat=2):
        lhs = superbracket(gens.q_of(a1), gens.q_of(a2))
        rhs = psym(a1, a2).scale(0.5)
        if not lhs.isclose(rhs, 0.0):
            raise BracketMismatch(f"{{Q_{a1}, Q_{a2}}} deviates from P/2")


def is_osp_algebra_element(gens: GeneratorSet, m: Supermatrix, tol: float = 1e-9) -> bool:
    """Membership condition for the algebra: M^st E + E M = 0."""
    lhs = (m.supertranspose() @ gens.E) + (gens.E @ m)
    return lhs.max_abs() <= tol


def check_group_element(gens: GeneratorSet, m: Supermatrix, tol: float = 1e-9) -> bool:
    """Membership condition for the supergroup: M^st E M = E."""
    return (m.supertranspose() @ gens.E @ m).isclose(gens.E, tol)


def check_uosp_group_element(m: Supermatrix, tol: float = 1e-9) -> bool:
    """Superunitarity: M^ddag M = 1."""
    ident = Supermatrix.identity(m.context, m.row_shape)
    return (m.superadjoint() @ m).isclose(ident, tol)


def check_uosp_algebra_element(x: Supermatrix, tol: float = 1e-9) -> bool:
    """Anti-super-Hermiticity: X^ddag = -X."""
    return x.superadjoint().isclose(-x, tol)


def uosp_compact_basis(gens: GeneratorSet) -> dict[str, Supermatrix]:
    """The anti-super-Hermitian bosonic basis A1, A2, A3 and the odd Q_0, Q_1.

    A1 = (i/2)(P00 - P11), A2 = (P00 + P11)/2, A3 = i P01; each A_i^ddag = -A_i,
    and Q_A^ddag = eps_{AA'} Q_{A'}.
    """
    p00, p11, p01 = gens.P[(0, 0)], gens.P[(1, 1)], gens.P[(0, 1)]
    return {
        "A1": (p00 - p11).scale(0.5j),
        "A2": (p00 + p11).scale(0.5),
        "A3": p01.scale(1j),
        "Q0": gens.q_of(0),
        "Q1": gens.q_of(1),
    }


def uosp_algebra_element(
    gens: GeneratorSet,
    xi: tuple[float, float, float],
    eta: GrassmannNumber | None = None,
) -> Supermatrix:
    """X = xi_i A_i + eta^# Q_0 + eta Q_1 with real xi and odd Grassmann eta.

    The odd-parameter part eta Q is an even supermatrix (odd scalar times odd
    matrix), so the whole element is even and exponentiates directly.
    """
    basis = uosp_compact_basis(gens)
    x = basis["A1"].scale(xi[0]) + basis["A2"].scale(xi[1]) + basis["A3"].scale(xi[2])
    if eta is not None and not eta.is_zero():
        x = x + basis["Q0"].scalar_mul("left", eta.superstar()) + basis["Q1"].scalar_mul("left", eta)
    return x


# -- slot action on n-superqubit coefficient tensors ------------------------------


def act_generator(state: SuperState, x1: int, x2: int, slot: int) -> SuperState:
    """Apply the rescaled generator P[x1 x2] (Q_A is P[A, bullet]) to one slot.

    ``slot`` is 1-based.  The result coefficient at ket Z is

        (-1)^((deg x1 + deg x2) * sum of slot grades left of the slot)
        * ( E[x1, Z_k] a[Z with slot -> x2] + (-1)^(x1 x2) E[x2, Z_k] a[...x1...] ) / 2

    An odd generator (one bullet index) flips the state grade.
    """
    n = state.n
    if not 1 <= slot <= n:
        raise BadSlot(f"slot {slot} out of range 1..{n}")
    k = slot - 1
    d1, d2 = slot_deg(x1), slot_deg(x2)
    gen_parity = (d1 + d2) & 1
    swap_sign = -1 if (d1 * d2) & 1 else 1
    e = E_INVARIANT
    ctx = state.context
    out: dict[tuple[int, ...], GrassmannNumber] = {}
    for z in all_kets(n):
        zk = z[k]
        c1 = e[x1][zk]
        c2 = e[x2][zk]
        if c1 == 0 and c2 == 0:
            continue
        acc = ctx.zero()
        if c1:
            acc = acc + state.coefficient(z[:k] + (x2,) + z[k + 1 :]) * c1
        if c2:
            acc = acc + state.coefficient(z[:k] + (x1,) + z[k + 1 :]) * (swap_sign * c2)
        if gen_parity and (sum(slot_deg(s) for s in z[:k]) & 1):
            acc = -acc
        if not acc.is_zero():
            out[z] = acc * 0.5
    return SuperState(n, ctx, out, grade=(state.grade + gen_parity) & 1, validate=False)


GENERATOR_LABELS = {
    "P00": (0, 0),
    "P01": (0, 1),
    "P11": (1, 1),
    "Q0": (0, BULLET),
    "Q1": (1, BULLET),
}


def act_named_generator(state: SuperState, name: str, slot: int) -> SuperState:
    try:
        x1, x2 = GENERATOR_LABELS[name]
    except KeyError:
        raise ValueError(f"unknown generator {name!r}; choose from {sorted(GENERATOR_LABELS)}") from None
    return act_generator(state, x1, x2, slot)


def act_matrix_slot(state: SuperState, matrix: Supermatrix, slot: int) -> SuperState:
    """Independent slot action: contract an explicit (2|1) matrix into one slot.

    (g a)[Z] = (-1)^(deg g * sum of slot grades left of the slot)
               * sum_W g[Z_k, W] a[Z with slot -> W].

    Used as the cross-check oracle for ``act_generator`` and for finite
    (bosonic) group transformations.
    """
    n = state.n
    if not 1 <= slot <= n:
        raise BadSlot(f"slot {slot} out of range 1..{n}")
    k = slot - 1
    ctx = state.context
    out: dict[tuple[int, ...], GrassmannNumber] = {}
    for z in all_kets(n):
        acc = ctx.zero()
        for w in range(3):
            coeff = matrix.entry(z[k], w)
            if coeff.is_zero():
                continue
            src = state.coefficient(z[:k] + (w,) + z[k + 1 :])
            if src.is_zero():
                continue
            acc = acc + coeff * src
        if matrix.grade and (sum(slot_deg(s) for s in z[:k]) & 1):
            acc = -acc
        if not acc.is_zero():
            out[z] = acc
    return SuperState(n, ctx, out, grade=(state.grade + matrix.grade) & 1, validate=False)
