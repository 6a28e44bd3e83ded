import math

import pytest
from hypothesis import given, settings, strategies as st

from superqubit import (
    AlgebraContext,
    ContextMismatch,
    GrassmannNumber,
    NoInverse,
    SingularBody,
    analytic_apply,
    gn_exp,
    gn_inv_sqrt,
)
from superqubit.grassmann import power_derivatives

CTX = AlgebraContext(2)
T0, T1, T2, T3 = (CTX.generator(i) for i in range(4))


def grassmann_elements(ctx=CTX, parity=None):
    """Hypothesis strategy: small-integer-coefficient algebra elements."""
    n = ctx.generator_count
    masks = [m for m in range(1 << n) if parity is None or (m.bit_count() & 1) == parity]

    def build(pairs):
        z = ctx.zero()
        for mask, (re, im) in pairs:
            z = z + GrassmannNumber(ctx, {mask: complex(re, im)})
        return z

    coeff = st.tuples(st.integers(-3, 3), st.integers(-3, 3))
    return st.lists(st.tuples(st.sampled_from(masks), coeff), max_size=4).map(build)


class TestBasics:
    def test_generator_doubling(self):
        assert T0 + T0 == T0 * 2

    def test_additive_identity(self):
        z = CTX.scalar(2 + 1j) + T0 * T1
        assert z + CTX.zero() == z

    def test_cancellation(self):
        one = CTX.one()
        assert (one + T0 * T1) + (one - T0 * T1) == CTX.scalar(2)

    def test_anticommutation(self):
        assert T0 * T1 == -(T1 * T0)

    def test_generator_squares_to_zero(self):
        assert (T0 * T0).is_zero()

    def test_product_expansion(self):
        # (2 + t0 t1)(3 + t2 t3): brute-force term-by-term expansion
        lhs = (CTX.scalar(2) + T0 * T1) * (CTX.scalar(3) + T2 * T3)
        expected = CTX.scalar(6) + T0 * T1 * 3 + T2 * T3 * 2 + T0 * T1 * T2 * T3
        assert lhs == expected

    def test_grade(self):
        assert (CTX.scalar(3) + T0 * T1).grade() == "even"
        assert T0.grade() == "odd"
        assert (CTX.one() + T0).grade() == "mixed"
        assert CTX.zero().grade() == "even"

    def test_context_mismatch(self):
        other = AlgebraContext(1)
        with pytest.raises(ContextMismatch):
            _ = T0 + other.generator(0)


class TestConjugations:
    def test_superstar_body(self):
        assert CTX.scalar(1j).superstar() == CTX.scalar(-1j)

    def test_superstar_pair_map(self):
        assert T0.superstar() == T1
        assert T1.superstar() == -T0

    def test_superstar_twice_on_generator(self):
        assert T0.superstar().superstar() == -T0

    def test_superstar_even_element(self):
        z = T0 * T2
        assert z.superstar() == T1 * T3
        assert z.superstar().superstar() == z

    def test_star_involution(self):
        assert T0.star().star() == T0

    def test_star_order_reversal(self):
        # (t0 t2)^* = t3 t1 = -t1 t3
        assert (T0 * T2).star() == -(T1 * T3)

    def test_star_coefficient_conjugation(self):
        assert (T0 * 1j).star() == T1 * (-1j)


@settings(max_examples=60, deadline=None)
@given(grassmann_elements(), grassmann_elements(), grassmann_elements())
def test_ring_laws(x, y, z):
    assert ((x * y) * z).isclose(x * (y * z), 1e-12)
    assert (x * (y + z)).isclose(x * y + x * z, 1e-12)
    assert ((x + y) * z).isclose(x * z + y * z, 1e-12)


@settings(max_examples=60, deadline=None)
@given(
    grassmann_elements(parity=0), grassmann_elements(parity=1),
    st.sampled_from([0, 1]), st.sampled_from([0, 1]),
)
def test_graded_commutativity(even, odd, p1, p2):
    x = even if p1 == 0 else odd
    y = even if p2 == 0 else odd
    sign = -1 if p1 == 1 and p2 == 1 else 1
    assert (x * y).isclose((y * x) * sign, 1e-12)


@settings(max_examples=40, deadline=None)
@given(grassmann_elements())
def test_soul_nilpotency(z):
    power = z.context.one()
    for _ in range(z.context.generator_count + 1):
        power = power * z.soul
    assert power.is_zero(0.0)


@settings(max_examples=60, deadline=None)
@given(grassmann_elements(), grassmann_elements())
def test_superstar_multiplicative(x, y):
    assert (x * y).superstar().isclose(x.superstar() * y.superstar(), 1e-12)


@settings(max_examples=60, deadline=None)
@given(grassmann_elements(parity=0), grassmann_elements(parity=1))
def test_superstar_twice_pure(even, odd):
    assert even.superstar().superstar().isclose(even, 1e-12)
    assert odd.superstar().superstar().isclose(-odd, 1e-12)


@settings(max_examples=60, deadline=None)
@given(grassmann_elements(), grassmann_elements())
def test_star_laws(x, y):
    assert x.star().star().isclose(x, 1e-12)
    assert (x * y).star().isclose(y.star() * x.star(), 1e-12)


@settings(max_examples=60, deadline=None)
@given(grassmann_elements())
def test_inverse_round_trip(z):
    if abs(z.body) < 0.5:
        z = z + 1.0
    assert (z * z.inverse()).isclose(z.context.one(), 1e-12)


class TestAnalytic:
    def test_exp_of_nilpotent(self):
        z = T0 * T1
        assert gn_exp(z) == CTX.one() + T0 * T1

    def test_inverse_sqrt_example(self):
        z = CTX.scalar(4) + T0 * T1
        r = gn_inv_sqrt(z)
        assert r.isclose(CTX.scalar(0.5) - T0 * T1 * (1 / 16), 1e-12)
        assert (r * r * z).isclose(CTX.one(), 1e-12)

    def test_inverse_sqrt_identity_case(self):
        assert gn_inv_sqrt(CTX.one()) == CTX.one()

    def test_singular_body(self):
        with pytest.raises(SingularBody):
            power_derivatives(-0.5, 0.0, 3)

    def test_explicit_derivative_sequence(self):
        z = CTX.scalar(4) + T0 * T1
        derivs = power_derivatives(-0.5, 4.0, 5)
        assert analytic_apply(derivs, z).isclose(gn_inv_sqrt(z), 0.0)


@settings(max_examples=40, deadline=None)
@given(grassmann_elements())
def test_inverse_sqrt_law(z):
    if abs(z.body) < 0.5:
        z = z + 1.0
    r = gn_inv_sqrt(z)
    assert (r * r * z).isclose(z.context.one(), 1e-12)


class TestInverse:
    def test_scalar(self):
        assert CTX.scalar(2).inverse() == CTX.scalar(0.5)

    def test_soulful(self):
        z = CTX.one() + T0 * T1
        assert z.inverse() == CTX.one() - T0 * T1
        assert z * z.inverse() == CTX.one()

    def test_no_inverse_for_pure_soul(self):
        with pytest.raises(NoInverse):
            T0.inverse()


class TestSerialization:
    def test_records_round_trip(self):
        z = CTX.scalar(1 - 2j) + T0 * T1 * 3 + T2 * (0.5j)
        records = z.to_records()
        assert records[0]["monomial"] == []
        back = GrassmannNumber.from_records(CTX, records)
        assert back == z
