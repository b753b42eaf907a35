from __future__ import annotations

import pickle

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pgconics.errors import (
    DegenerateField,
    DivisionByZero,
    EvenCharacteristic,
    NoSquareRoot,
    NotAPrimePower,
)
from pgconics.gf import field_create, is_irreducible, smallest_irreducible

ORDERS = [3, 5, 7, 9, 11, 25, 27]


def test_gf5_parameters():
    ctx = field_create(5)
    assert (ctx.p, ctx.n, ctx.q, ctx.alpha) == (5, 1, 5, 2)


def test_gf9_uses_smallest_irreducible_quadratic():
    ctx = field_create(9)
    assert (ctx.p, ctx.n) == (3, 2)
    # x^2 + 1 is the first monic quadratic over GF(3) without a root
    assert ctx.modulus == (1, 0, 1)
    assert ctx.alpha == 4


@pytest.mark.parametrize("q,exc", [(4, EvenCharacteristic), (2, EvenCharacteristic), (8, EvenCharacteristic),
                                   (6, NotAPrimePower), (12, NotAPrimePower), (1, DegenerateField),
                                   (0, DegenerateField)])
def test_rejected_orders(q, exc):
    with pytest.raises(exc):
        field_create(q)


def test_gf5_small_products():
    ctx = field_create(5)
    assert ctx.mul(3, 4) == 2
    assert ctx.inv(2) == 3
    with pytest.raises(DivisionByZero):
        ctx.inv(0)


def test_gf5_squares_and_roots():
    ctx = field_create(5)
    assert ctx.is_square(4) and ctx.is_square(0)
    assert not ctx.is_square(2)
    assert ctx.sqrt(4) == 2
    assert ctx.sqrt(0) == 0
    with pytest.raises(NoSquareRoot):
        ctx.sqrt(2)


@pytest.mark.parametrize("q", ORDERS)
def test_alpha_is_primitive(q):
    ctx = field_create(q)
    powers = {ctx.alpha_pow(k) for k in range(q - 1)}
    assert powers == set(range(1, q))
    assert ctx.pow(ctx.alpha, q - 1) == 1


@pytest.mark.parametrize("q", ORDERS)
def test_half_the_units_are_squares(q):
    ctx = field_create(q)
    squares = {ctx.mul(x, x) for x in range(1, q)}
    assert len(squares) == (q - 1) // 2
    assert all(ctx.is_square(x) == (x in squares) for x in range(1, q))
    assert not ctx.is_square(ctx.nonsquare())


def test_irreducibility_helpers():
    assert is_irreducible([1, 0, 1], 3)
    assert not is_irreducible([2, 0, 1], 3)  # x^2 - 1
    assert smallest_irreducible(3, 2) == (1, 0, 1)
    assert smallest_irreducible(3, 3)[-1] == 1


def test_codec_round_trip():
    ctx = field_create(27)
    for x in ctx.elements():
        assert ctx.encode(ctx.decode(x)) == x
    assert ctx.from_int(-1) == ctx.neg(1)


def test_field_context_pickles_to_the_cached_instance():
    ctx = field_create(9)
    assert pickle.loads(pickle.dumps(ctx)) is ctx


@pytest.mark.parametrize("q", [5, 9, 27])
def test_vectorised_ops_match_scalar(q):
    ctx = field_create(q)
    xs = np.repeat(np.arange(q), q)
    ys = np.tile(np.arange(q), q)
    pairs = list(zip(xs.tolist(), ys.tolist()))
    assert ctx.vadd(xs, ys).tolist() == [ctx.add(x, y) for x, y in pairs]
    assert ctx.vmul(xs, ys).tolist() == [ctx.mul(x, y) for x, y in pairs]
    assert ctx.vsub(xs, ys).tolist() == [ctx.sub(x, y) for x, y in pairs]
    assert ctx.vneg(xs).tolist() == [ctx.neg(x) for x in xs.tolist()]


field_elems = st.sampled_from(ORDERS).flatmap(
    lambda q: st.tuples(st.just(field_create(q)), *[st.integers(0, q - 1)] * 3)
)


@settings(max_examples=300, deadline=None)
@given(field_elems)
def test_field_axioms(sample):
    ctx, x, y, z = sample
    assert ctx.add(x, y) == ctx.add(y, x)
    assert ctx.mul(x, y) == ctx.mul(y, x)
    assert ctx.mul(x, ctx.add(y, z)) == ctx.add(ctx.mul(x, y), ctx.mul(x, z))
    assert ctx.mul(ctx.mul(x, y), z) == ctx.mul(x, ctx.mul(y, z))
    assert ctx.add(x, ctx.neg(x)) == 0
    if x:
        assert ctx.mul(x, ctx.inv(x)) == 1
        assert ctx.alpha_pow(ctx.log(x)) == x
    if ctx.is_square(x):
        r = ctx.sqrt(x)
        assert ctx.mul(r, r) == x
        assert r <= ctx.neg(r)
