import math
import random

import numpy as np
import pytest

from superqubit import (
    AlgebraContext,
    BothBlocksSingular,
    GradedShape,
    ImpureGrade,
    ImpureScalar,
    ShapeMismatch,
    Supermatrix,
    gn_exp,
    superbracket,
)
from superqubit.superlinear import _det

from conftest import random_even_supermatrix, random_odd_supermatrix

CTX = AlgebraContext(3)
SHAPE = GradedShape.of(2, 1)


def random_pure_matrix(ctx, shape, rng):
    if rng.random() < 0.5:
        return random_even_supermatrix(ctx, shape, rng)
    return random_odd_supermatrix(ctx, shape, rng)


class TestConstruction:
    def test_compatibility_validated(self):
        rows = [[CTX.zero()] * 3 for _ in range(3)]
        rows[0][2] = CTX.one()  # even value at an (even, odd) position of an even matrix
        with pytest.raises(ImpureGrade):
            Supermatrix(CTX, SHAPE, SHAPE, 0, rows)

    def test_valid_odd_entry(self):
        rows = [[CTX.zero()] * 3 for _ in range(3)]
        rows[0][2] = CTX.generator(0)
        m = Supermatrix(CTX, SHAPE, SHAPE, 0, rows)
        assert m.entry(0, 2) == CTX.generator(0)

    def test_blocks(self):
        m = Supermatrix.from_complex(CTX, SHAPE, SHAPE, [[1, 2, 0], [3, 4, 0], [0, 0, 5]])
        assert [[e.body for e in row] for row in m.block("A")] == [[1, 2], [3, 4]]
        assert [[e.body for e in row] for row in m.block("D")] == [[5]]


class TestSupertranspose:
    def test_order_four(self, rng):
        for _ in range(20):
            m = random_pure_matrix(CTX, SHAPE, rng)
            st4 = m.supertranspose().supertranspose().supertranspose().supertranspose()
            assert st4.isclose(m, 0.0)

    def test_double_supertranspose_flips_off_diagonal(self, rng):
        m = random_even_supermatrix(CTX, SHAPE, rng)
        st2 = m.supertranspose().supertranspose()
        for i in range(3):
            for j in range(3):
                sign = -1 if (SHAPE.deg(i) + SHAPE.deg(j)) & 1 else 1
                assert st2.entry(i, j).isclose(m.entry(i, j) * sign, 0.0)

    def test_even_block_matrix_is_ordinary_transpose(self):
        m = Supermatrix.from_complex(CTX, SHAPE, SHAPE, [[1, 2, 0], [3, 4, 0], [0, 0, 5]])
        st = m.supertranspose()
        assert st.entry(0, 1).body == 3
        assert st.entry(1, 0).body == 2
        assert st.entry(2, 2).body == 5

    def test_product_rule(self, rng):
        for _ in range(20):
            m = random_pure_matrix(CTX, SHAPE, rng)
            n = random_pure_matrix(CTX, SHAPE, rng)
            sign = -1 if (m.grade * n.grade) & 1 else 1
            lhs = (m @ n).supertranspose()
            rhs = (n.supertranspose() @ m.supertranspose()).scale(sign)
            assert lhs.isclose(rhs, 0.0)


class TestSupertrace:
    def test_identity(self):
        assert Supermatrix.identity(CTX, SHAPE).supertrace() == CTX.one()

    def test_linearity(self, rng):
        m = random_even_supermatrix(CTX, SHAPE, rng)
        n = random_even_supermatrix(CTX, SHAPE, rng)
        assert (m + n).supertrace().isclose(m.supertrace() + n.supertrace(), 0.0)

    def test_cyclic_mod_sign(self, rng):
        for _ in range(20):
            m = random_pure_matrix(CTX, SHAPE, rng)
            n = random_pure_matrix(CTX, SHAPE, rng)
            sign = -1 if (m.grade * n.grade) & 1 else 1
            assert (m @ n).supertrace().isclose((n @ m).supertrace() * sign, 1e-12)

    def test_supertranspose_invariance(self, rng):
        for _ in range(10):
            m = random_pure_matrix(CTX, SHAPE, rng)
            assert m.supertranspose().supertrace().isclose(m.supertrace(), 1e-12)


class TestSuperadjoint:
    def test_diagonal_body_matrix(self):
        m = Supermatrix.from_complex(CTX, SHAPE, SHAPE, [[1 + 1j, 0, 0], [0, 2j, 0], [0, 0, 3 - 1j]])
        adj = m.superadjoint()
        assert adj.entry(0, 0).body == 1 - 1j
        assert adj.entry(1, 1).body == -2j
        assert adj.entry(2, 2).body == 3 + 1j

    def test_involution_law(self, rng):
        for _ in range(20):
            m = random_pure_matrix(CTX, SHAPE, rng)
            sign = -1 if m.grade else 1
            assert m.superadjoint().superadjoint().isclose(m.scale(sign), 0.0)

    def test_product_law(self, rng):
        for _ in range(20):
            m = random_pure_matrix(CTX, SHAPE, rng)
            n = random_pure_matrix(CTX, SHAPE, rng)
            sign = -1 if (m.grade * n.grade) & 1 else 1
            lhs = (m @ n).superadjoint()
            rhs = (n.superadjoint() @ m.superadjoint()).scale(sign)
            assert lhs.isclose(rhs, 1e-12)


class TestScalarMul:
    def test_even_scalar_is_plain_scaling(self, rng):
        m = random_even_supermatrix(CTX, SHAPE, rng)
        assert m.scalar_mul("left", CTX.scalar(2)).isclose(m.scale(2), 0.0)
        assert m.scalar_mul("right", CTX.scalar(2)).isclose(m.scale(2), 0.0)

    def test_odd_scalar_signs(self):
        theta = CTX.generator(0)
        rows = [[CTX.zero()] * 3 for _ in range(3)]
        rows[2][0] = CTX.generator(1)  # entry at odd row index
        rows[0][1] = CTX.one()
        m = Supermatrix(CTX, SHAPE, SHAPE, 0, rows)
        left = m.scalar_mul("left", theta)
        assert left.grade == 1
        # odd row picks up a minus, even row does not
        assert left.entry(2, 0).isclose(-(theta * CTX.generator(1)), 0.0)
        assert left.entry(0, 1).isclose(theta, 0.0)
        right = m.scalar_mul("right", theta)
        assert right.entry(2, 0).isclose(CTX.generator(1) * theta, 0.0)
        assert right.entry(0, 1).isclose(theta, 0.0)  # even column: no sign

    def test_odd_scalar_column_signs(self):
        theta = CTX.generator(0)
        rows = [[CTX.zero()] * 3 for _ in range(3)]
        rows[0][2] = CTX.generator(1)  # entry at odd column index
        m = Supermatrix(CTX, SHAPE, SHAPE, 0, rows)
        right = m.scalar_mul("right", theta)
        assert right.entry(0, 2).isclose(-(CTX.generator(1) * theta), 0.0)

    def test_impure_scalar_rejected(self):
        m = Supermatrix.identity(CTX, SHAPE)
        with pytest.raises(ImpureScalar):
            m.scalar_mul("left", CTX.one() + CTX.generator(0))


class TestMatmul:
    def test_identity(self, rng):
        m = random_even_supermatrix(CTX, SHAPE, rng)
        ident = Supermatrix.identity(CTX, SHAPE)
        assert (m @ ident).isclose(m, 0.0)
        assert (ident @ m).isclose(m, 0.0)

    def test_associativity(self, rng):
        for _ in range(10):
            l, m, n = (random_pure_matrix(CTX, SHAPE, rng) for _ in range(3))
            assert ((l @ m) @ n).isclose(l @ (m @ n), 1e-12)

    def test_shape_mismatch(self):
        m = Supermatrix.identity(CTX, SHAPE)
        n = Supermatrix.identity(CTX, GradedShape.of(1, 1))
        with pytest.raises(ShapeMismatch):
            _ = m @ n


class TestBerezinian:
    def test_block_diagonal(self):
        m = Supermatrix.from_complex(CTX, GradedShape.of(1, 1), GradedShape.of(1, 1), [[6, 0], [0, 3]])
        assert m.berezinian() == CTX.scalar(2)

    def test_multiplicative(self, rng):
        done = 0
        while done < 20:
            m = random_even_supermatrix(CTX, SHAPE, rng)
            n = random_even_supermatrix(CTX, SHAPE, rng)
            try:
                bm, bn, bmn = m.berezinian(), n.berezinian(), (m @ n).berezinian()
            except (BothBlocksSingular, ArithmeticError):
                continue
            assert bmn.isclose(bm * bn, 1e-9)
            done += 1

    def test_exp_identity(self, rng):
        for _ in range(10):
            m = random_even_supermatrix(CTX, SHAPE, rng).scale(0.25)
            assert m.exp().berezinian().isclose(gn_exp(m.supertrace()), 1e-9)

    def test_both_blocks_singular(self):
        rows = [[CTX.zero()] * 3 for _ in range(3)]
        rows[0][2] = CTX.generator(0)
        rows[2][0] = CTX.generator(1)
        m = Supermatrix(CTX, SHAPE, SHAPE, 0, rows)
        with pytest.raises(BothBlocksSingular):
            m.berezinian()

    def test_laplace_det_against_numpy(self, rng):
        body = [[complex(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(3)] for _ in range(3)]
        rows = [[CTX.scalar(v) for v in row] for row in body]
        d = _det(CTX, rows)
        assert abs(d.body - complex(np.linalg.det(np.array(body)))) < 1e-9


class TestTensorProduct:
    def test_grade_pattern(self):
        m = Supermatrix.identity(CTX, SHAPE)
        t = m.tensor(m)
        assert t.row_shape.grades == (0, 0, 1, 0, 0, 1, 1, 1, 0)
        assert t.row_shape.even_dim == 5 and t.row_shape.odd_dim == 4

    def test_threefold_counts(self):
        m = Supermatrix.identity(CTX, SHAPE)
        t = m.tensor(m).tensor(m)
        assert t.row_shape.even_dim == 14 and t.row_shape.odd_dim == 13

    def test_supertrace_multiplicative(self, rng):
        m = random_even_supermatrix(CTX, SHAPE, rng)
        n = random_even_supermatrix(CTX, SHAPE, rng)
        assert m.tensor(n).supertrace().isclose(m.supertrace() * n.supertrace(), 1e-12)

    def test_supertranspose_distributes(self, rng):
        m = random_even_supermatrix(CTX, SHAPE, rng)
        n = random_even_supermatrix(CTX, SHAPE, rng)
        assert m.tensor(n).supertranspose().isclose(m.supertranspose().tensor(n.supertranspose()), 0.0)

    def test_identity_tensor_supertrace(self):
        ident = Supermatrix.identity(CTX, SHAPE)
        assert ident.tensor(ident).supertrace() == CTX.one()


class TestSuperbracket:
    def test_even_self_bracket_vanishes(self, rng):
        m = random_even_supermatrix(CTX, SHAPE, rng)
        assert superbracket(m, m).max_abs() == 0.0

    def test_graded_jacobi(self, rng):
        for _ in range(6):
            x, y, z = (random_pure_matrix(CTX, SHAPE, rng) for _ in range(3))
            px, py, pz = x.grade, y.grade, z.grade
            term1 = superbracket(x, superbracket(y, z)).scale(-1 if (px * pz) & 1 else 1)
            term2 = superbracket(y, superbracket(z, x)).scale(-1 if (py * px) & 1 else 1)
            term3 = superbracket(z, superbracket(x, y)).scale(-1 if (pz * py) & 1 else 1)
            total = term1 + term2 + term3
            assert total.max_abs() < 1e-9


class TestMatrixExp:
    def test_exp_zero(self):
        z = Supermatrix.zeros(CTX, SHAPE, SHAPE)
        assert z.exp().isclose(Supermatrix.identity(CTX, SHAPE), 0.0)

    def test_nilpotent_generator(self):
        t00 = Supermatrix.from_complex(CTX, SHAPE, SHAPE, [[0, 2, 0], [0, 0, 0], [0, 0, 0]])
        m = t00.scale(0.7).exp()
        expected = Supermatrix.identity(CTX, SHAPE) + t00.scale(0.7)
        assert m.isclose(expected, 1e-12)

    def test_rotation_block(self):
        a2 = Supermatrix.from_complex(CTX, SHAPE, SHAPE, [[0, 0.5, 0], [-0.5, 0, 0], [0, 0, 0]])
        m = a2.scale(2 * 0.3).exp()
        assert abs(m.entry(0, 0).body - math.cos(0.3)) < 1e-12
        assert abs(m.entry(0, 1).body - math.sin(0.3)) < 1e-12

    def test_json_shape(self):
        m = Supermatrix.identity(CTX, SHAPE)
        data = m.to_json()
        assert data["row_shape"] == [0, 0, 1]
        assert data["grade"] == 0
        assert data["entries"][0][0][0]["monomial"] == []
