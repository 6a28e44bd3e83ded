import math
import random
from itertools import product

import pytest

from superqubit import (
    AlgebraContext,
    BracketMismatch,
    GradedShape,
    OspParams,
    SuperState,
    Supermatrix,
    act_generator,
    act_matrix_slot,
    bracket_table,
    build_generators,
    check_group_element,
    check_rescaled_brackets,
    check_uosp_algebra_element,
    check_uosp_group_element,
    is_osp_algebra_element,
    uosp_algebra_element,
    uosp_compact_basis,
)
from superqubit.osp import EPSILON_LOWER, OSP12_BASIS, OSP12_BRACKETS
from superqubit.states import BULLET, all_kets

from conftest import random_state

GENS = build_generators()
B = BULLET

EXPLICIT = {
    (0, 1): [[-1, 0, 0], [0, 1, 0], [0, 0, 0]],
    (0, 0): [[0, 2, 0], [0, 0, 0], [0, 0, 0]],
    (1, 1): [[0, 0, 0], [-2, 0, 0], [0, 0, 0]],
    (0, 2): [[0, 0, 1], [0, 0, 0], [0, 1, 0]],
    (1, 2): [[0, 0, 0], [0, 0, 1], [-1, 0, 0]],
}


class TestGenerators:
    def test_explicit_matrices_entry_for_entry(self):
        for pair, rows in EXPLICIT.items():
            m = GENS.T[pair]
            for i in range(3):
                for j in range(3):
                    assert m.entry(i, j).body == rows[i][j], (pair, i, j)

    def test_odd_odd_generator_vanishes(self):
        assert GENS.T[(2, 2)].max_abs() == 0.0

    def test_membership_condition(self):
        for pair in EXPLICIT:
            assert is_osp_algebra_element(GENS, GENS.T[pair], tol=0.0)

    def test_membership_fails_for_perturbation(self):
        bad = GENS.T[(0, 1)] + Supermatrix.from_complex(
            GENS.context, GENS.shape, GENS.shape, [[1, 0, 0], [0, 0, 0], [0, 0, 0]]
        )
        assert not is_osp_algebra_element(GENS, bad)

    def test_generic_params_membership(self):
        for p, q in ((1, 2), (3, 1)):
            gens = build_generators(OspParams(p, q))
            for pair, t in gens.T.items():
                if t.max_abs() == 0:
                    continue
                assert is_osp_algebra_element(gens, t, tol=0.0), (p, q, pair)


class TestBrackets:
    def test_table_matches_canonical_constants(self):
        table = bracket_table(GENS)
        assert table == OSP12_BRACKETS

    def test_rescaled_family(self):
        check_rescaled_brackets(GENS)

    def test_epsilon_fault_detected(self):
        with pytest.raises(BracketMismatch):
            bracket_table(GENS, epsilon_fault=True)

    def test_anticommutator_t0_t1(self):
        t0, t1 = GENS.T[(0, 2)], GENS.T[(1, 2)]
        anti = t0 @ t1 + t1 @ t0
        assert anti.isclose(GENS.T[(0, 1)], 0.0)

    def test_sl2_subalgebra(self):
        # [P01, P00] = -P00 from the epsilon form of the even brackets
        p01, p00 = GENS.P[(0, 1)], GENS.P[(0, 0)]
        comm = p01 @ p00 - p00 @ p01
        assert comm.isclose(p00.scale(-1), 0.0)


class TestGroupConditions:
    def test_identity_in_group(self):
        ident = Supermatrix.identity(GENS.context, GENS.shape)
        assert check_group_element(GENS, ident)

    def test_exponential_of_even_element(self, rng):
        for _ in range(10):
            t = rng.uniform(-1.0, 1.0)
            x = (GENS.T[(0, 0)] - GENS.T[(1, 1)]).scale(t)
            assert check_group_element(GENS, x.exp(), tol=1e-9)

    def test_unit_perturbation_not_in_group(self):
        bad = Supermatrix.identity(GENS.context, GENS.shape) + Supermatrix.from_complex(
            GENS.context, GENS.shape, GENS.shape, [[1, 0, 0], [0, 0, 0], [0, 0, 0]]
        )
        assert not check_group_element(GENS, bad)


class TestUosp:
    def test_compact_basis_anti_self_adjoint(self):
        basis = uosp_compact_basis(GENS)
        for name in ("A1", "A2", "A3"):
            assert check_uosp_algebra_element(basis[name], tol=0.0)

    def test_p00_alone_not_compact(self):
        assert not check_uosp_algebra_element(GENS.P[(0, 0)])

    def test_q_superadjoint_epsilon_rule(self):
        for a in (0, 1):
            adj = GENS.q_of(a).superadjoint()
            expected = GENS.q_of(0).scale(EPSILON_LOWER[a][0]) + GENS.q_of(1).scale(EPSILON_LOWER[a][1])
            assert adj.isclose(expected, 0.0)

    def test_bosonic_exponential_superunitary(self, rng):
        for _ in range(5):
            xi = tuple(rng.uniform(-1, 1) for _ in range(3))
            m = uosp_algebra_element(GENS, xi).exp()
            assert check_uosp_group_element(m, tol=1e-9)

    def test_odd_parameter_element(self):
        ctx = AlgebraContext(1)
        gens = build_generators(context=ctx)
        eta = ctx.theta(0)
        x = uosp_algebra_element(gens, (0.25, -0.5, 0.75), eta)
        assert check_uosp_algebra_element(x, tol=0.0)
        m = x.exp()
        assert check_uosp_group_element(m, tol=1e-9)
        assert check_group_element(gens, m, tol=1e-9)


class TestAction:
    def test_single_slot_q_rows(self):
        ctx = AlgebraContext(1)
        st = SuperState(1, ctx, {(0,): 2, (1,): 3, (B,): ctx.theta(0)})
        eps = EPSILON_LOWER
        for a1 in (0, 1):
            res = act_generator(st, a1, B, 1).scale(2.0)
            for a3 in (0, 1):
                assert res.coefficient((a3,)).isclose(ctx.theta(0) * eps[a1][a3], 0.0)
            assert res.coefficient((B,)).isclose(ctx.scalar(2 if a1 == 0 else 3), 0.0)

    def test_single_slot_p_rows(self):
        ctx = AlgebraContext(1)
        st = SuperState(1, ctx, {(0,): 2, (1,): 3, (B,): ctx.theta(0)})
        eps = EPSILON_LOWER
        for a1, a2 in product((0, 1), repeat=2):
            res = act_generator(st, a1, a2, 1)
            for a3 in (0, 1):
                want = (eps[a1][a3] * st.coefficient((a2,)) + eps[a2][a3] * st.coefficient((a1,))) * 0.5
                assert res.coefficient((a3,)).isclose(want, 0.0)
            assert res.coefficient((B,)).is_zero()

    def test_two_slot_tables(self):
        ctx = AlgebraContext(2)
        coeffs = {
            (0, 0): 2, (0, 1): 3, (1, 0): 5, (1, 1): 7, (B, B): 11,
            (0, B): ctx.theta(0), (1, B): ctx.theta_sharp(0),
            (B, 0): ctx.theta(1), (B, 1): ctx.theta_sharp(1),
        }
        st = SuperState(2, ctx, coeffs)
        eps = EPSILON_LOWER
        c = st.coefficient
        for b1 in (0, 1):
            r = act_generator(st, b1, B, 2).scale(2.0)  # 2Q on the second slot
            for a3, b3 in product((0, 1), repeat=2):
                assert r.coefficient((a3, b3)).isclose(c((a3, B)) * eps[b1][b3], 0.0)
            assert r.coefficient((B, B)).isclose(-c((B, b1)), 0.0)
            for a3 in (0, 1):
                assert r.coefficient((a3, B)).isclose(c((a3, b1)), 0.0)
            for b3 in (0, 1):
                assert r.coefficient((B, b3)).isclose(-(c((B, B)) * eps[b1][b3]), 0.0)
        for a1 in (0, 1):
            r = act_generator(st, a1, B, 1).scale(2.0)  # 2Q on the first slot
            for a3, b3 in product((0, 1), repeat=2):
                assert r.coefficient((a3, b3)).isclose(c((B, b3)) * eps[a1][a3], 0.0)
            assert r.coefficient((B, B)).isclose(c((a1, B)), 0.0)
            for a3 in (0, 1):
                assert r.coefficient((a3, B)).isclose(c((B, B)) * eps[a1][a3], 0.0)
            for b3 in (0, 1):
                assert r.coefficient((B, b3)).isclose(c((a1, b3)), 0.0)

    def test_three_slot_q_signs(self):
        ctx = AlgebraContext(3)
        st = random_state(3, ctx, random.Random(3))
        c = st.coefficient
        eps = EPSILON_LOWER
        for c1 in (0, 1):
            r = act_generator(st, c1, B, 3).scale(2.0)  # 2Q on the third slot
            for a3, b3, c3 in product((0, 1), repeat=3):
                assert r.coefficient((a3, b3, c3)).isclose(c((a3, b3, B)) * eps[c1][c3], 1e-12)
            for a3, b3 in product((0, 1), repeat=2):
                assert r.coefficient((a3, b3, B)).isclose(c((a3, b3, c1)), 1e-12)
            for a3, c3 in product((0, 1), repeat=2):
                # crossing one odd slot flips the sign
                assert r.coefficient((a3, B, c3)).isclose(-(c((a3, B, B)) * eps[c1][c3]), 1e-12)
            for b3, c3 in product((0, 1), repeat=2):
                assert r.coefficient((B, b3, c3)).isclose(-(c((B, b3, B)) * eps[c1][c3]), 1e-12)
            for a3 in (0, 1):
                assert r.coefficient((a3, B, B)).isclose(-c((a3, B, c1)), 1e-12)
            for b3 in (0, 1):
                assert r.coefficient((B, b3, B)).isclose(-c((B, b3, c1)), 1e-12)
            for c3 in (0, 1):
                assert r.coefficient((B, B, c3)).isclose(c((B, B, B)) * eps[c1][c3], 1e-12)
            assert r.coefficient((B, B, B)).isclose(c((B, B, c1)), 1e-12)

    def test_matrix_oracle_equivalence(self, rng):
        # the explicit-matrix slot contraction reproduces the index formula
        for n in (1, 2, 3):
            ctx = AlgebraContext(n)
            st = random_state(n, ctx, rng)
            gens = build_generators(context=ctx)
            for (x1, x2) in ((0, 0), (0, 1), (1, 1), (0, B), (1, B)):
                for slot in range(1, n + 1):
                    via_formula = act_generator(st, x1, x2, slot)
                    via_matrix = act_matrix_slot(st, gens.P[(x1, x2)], slot)
                    assert via_formula.isclose(via_matrix, 1e-12), (n, (x1, x2), slot)

    def test_bad_slot(self):
        ctx = AlgebraContext(1)
        st = SuperState(1, ctx, {(0,): 1})
        from superqubit import BadSlot

        with pytest.raises(BadSlot):
            act_generator(st, 0, 1, 2)
