"""Shared randomized-input helpers.

Random Grassmann data uses small integer coefficients so that the exact
algebraic identities (invariance, nilpotency, round trips) cancel exactly in
double precision; tolerances then only absorb genuinely irrational
arithmetic (normalizations, exponentials).
"""

from __future__ import annotations

import random

import pytest

from superqubit import AlgebraContext, SuperState, Supermatrix, GradedShape
from superqubit.states import all_kets, ket_deg


def random_grassmann(ctx: AlgebraContext, rng: random.Random, parity=None, max_terms=3):
    """Random element with integer coefficients; parity 0, 1 or None (mixed)."""
    z = ctx.zero()
    n = ctx.generator_count
    if parity in (0, None):
        z = z + ctx.scalar(complex(rng.randint(-3, 3), rng.randint(-3, 3)))
        for _ in range(max_terms):
            if rng.random() < 0.5 and n >= 2:
                i, j = rng.randrange(n), rng.randrange(n)
                if i != j:
                    z = z + ctx.monomial((i, j), rng.randint(-2, 2))
    if parity in (1, None):
        for g in range(n):
            if rng.random() < 0.5:
                z = z + ctx.generator(g) * rng.randint(-3, 3)
    return z


def random_pure(ctx: AlgebraContext, rng: random.Random, parity: int):
    z = random_grassmann(ctx, rng, parity=parity)
    if z.is_zero():
        z = ctx.one() if parity == 0 else ctx.generator(rng.randrange(ctx.generator_count))
    return z


def random_state(n: int, ctx: AlgebraContext, rng: random.Random, soulful: bool = True) -> SuperState:
    """Random even state: integer bodies (plus optional soul) on even kets,
    integer combinations of generators on odd kets."""
    coeffs = {}
    for ket in all_kets(n):
        if ket_deg(ket) == 0:
            z = ctx.scalar(complex(rng.randint(-3, 3), rng.randint(-3, 3)))
            if soulful and rng.random() < 0.5 and ctx.generator_count >= 2:
                i, j = rng.randrange(ctx.generator_count), rng.randrange(ctx.generator_count)
                if i != j:
                    z = z + ctx.monomial((i, j), rng.randint(-2, 2))
        elif soulful:
            z = ctx.zero()
            for g in range(ctx.generator_count):
                if rng.random() < 0.4:
                    z = z + ctx.generator(g) * rng.randint(-3, 3)
        else:
            z = ctx.zero()
        coeffs[ket] = z
    return SuperState(n, ctx, coeffs)


def random_classical_state(n: int, ctx: AlgebraContext, rng: random.Random) -> SuperState:
    """Random body-valued state supported on unstarred kets only."""
    coeffs = {}
    for ket in all_kets(n):
        if all(s != 2 for s in ket):
            coeffs[ket] = complex(rng.randint(-3, 3), rng.randint(-3, 3))
    return SuperState(n, ctx, coeffs)


def random_even_supermatrix(ctx, shape: GradedShape, rng: random.Random, souls: bool = True) -> Supermatrix:
    rows = []
    for i in range(shape.dim):
        row = []
        for j in range(shape.dim):
            parity = (shape.deg(i) + shape.deg(j)) & 1
            if parity == 0:
                z = ctx.scalar(complex(rng.randint(-3, 3), rng.randint(-3, 3)))
                if souls and rng.random() < 0.5 and ctx.generator_count >= 2:
                    a, b = rng.randrange(ctx.generator_count), rng.randrange(ctx.generator_count)
                    if a != b:
                        z = z + ctx.monomial((a, b), rng.randint(-2, 2))
            else:
                z = ctx.zero()
                if souls:
                    for g in range(ctx.generator_count):
                        if rng.random() < 0.4:
                            z = z + ctx.generator(g) * rng.randint(-2, 2)
            row.append(z)
        rows.append(row)
    return Supermatrix(ctx, shape, shape, 0, rows)


def random_odd_supermatrix(ctx, shape: GradedShape, rng: random.Random) -> Supermatrix:
    rows = []
    for i in range(shape.dim):
        row = []
        for j in range(shape.dim):
            parity = (shape.deg(i) + shape.deg(j)) & 1
            if parity == 1:
                z = ctx.scalar(complex(rng.randint(-3, 3), rng.randint(-3, 3)))
            else:
                z = ctx.zero()
                for g in range(ctx.generator_count):
                    if rng.random() < 0.4:
                        z = z + ctx.generator(g) * rng.randint(-2, 2)
            row.append(z)
        rows.append(row)
    return Supermatrix(ctx, shape, shape, 1, rows)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240915)
