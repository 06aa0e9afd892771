"""Differential forms: d, wedge, dlog and their algebraic identities."""

import random

import pytest

from charp import (
    Context,
    OneForm,
    RatFunc,
    TwoForm,
    d_function,
    d_oneform,
    dlog_function,
    is_closed,
    wedge,
)
from charp.errors import ZeroArgument
from charp.randgen import random_oneform, random_ratfunc


def test_d_of_pth_power_vanishes():
    ctx = Context(3, 1)
    x = RatFunc.variable(ctx, 0)
    assert d_function(x**3).is_zero()


def test_product_rule():
    ctx = Context(5, 2)
    x, y = RatFunc.variable(ctx, 0), RatFunc.variable(ctx, 1)
    assert d_function(x * y) == OneForm(ctx, [y, x])


def test_d_oneform_single_variable_vanishes():
    ctx = Context(3, 1)
    x = RatFunc.variable(ctx, 0)
    assert d_oneform(OneForm(ctx, [x])).is_zero()


def test_d_oneform_antisymmetry_of_atoms():
    ctx = Context(5, 2)
    y = RatFunc.variable(ctx, 1)
    omega = OneForm(ctx, [y, RatFunc.zero(ctx)])  # y dx
    result = d_oneform(omega)
    assert result.coeff(0, 1) == -RatFunc.one(ctx)


def test_wedge_alternation_and_product():
    ctx = Context(3, 2)
    f = random_ratfunc(random.Random(1), ctx)
    g = random_ratfunc(random.Random(2), ctx)
    dx, dy = OneForm.dx(ctx, 0), OneForm.dx(ctx, 1)
    assert wedge(dx, dx).is_zero()
    assert wedge(f * dx, g * dy).coeff(0, 1) == f * g


def test_closedness_detection():
    ctx = Context(3, 2)
    x, y = RatFunc.variable(ctx, 0), RatFunc.variable(ctx, 1)
    assert is_closed(dlog_function(x))
    assert not is_closed(OneForm(ctx, [y, RatFunc.zero(ctx)]))


def test_dlog_of_zero_rejected():
    ctx = Context(3, 1)
    with pytest.raises(ZeroArgument):
        dlog_function(RatFunc.zero(ctx))


class TestIdentities:
    def test_d_squared_zero(self):
        ctx = Context(5, 2)
        rng = random.Random(31)
        for _ in range(25):
            f = random_ratfunc(rng, ctx)
            assert d_oneform(d_function(f)).is_zero()

    def test_wedge_antisymmetry(self):
        ctx = Context(3, 2)
        rng = random.Random(37)
        for _ in range(25):
            a = random_oneform(rng, ctx)
            b = random_oneform(rng, ctx)
            assert wedge(a, b) == -wedge(b, a)
            assert wedge(a, a).is_zero()

    def test_leibniz_for_forms(self):
        ctx = Context(3, 2)
        rng = random.Random(41)
        for _ in range(25):
            f = random_ratfunc(rng, ctx)
            omega = random_oneform(rng, ctx)
            lhs = d_oneform(f * omega)
            rhs = wedge(d_function(f), omega) + f * d_oneform(omega)
            assert lhs == rhs

    def test_dlog_additivity_and_pth_powers(self):
        ctx = Context(3, 2)
        rng = random.Random(43)
        for _ in range(25):
            f = random_ratfunc(rng, ctx, nonzero=True)
            g = random_ratfunc(rng, ctx, nonzero=True)
            assert dlog_function(f * g) == dlog_function(f) + dlog_function(g)
            assert dlog_function(f.frobenius()).is_zero()


def test_two_form_zero_entries_not_stored():
    ctx = Context(3, 2)
    tf = TwoForm(ctx, {(0, 1): RatFunc.zero(ctx)})
    assert tf.is_zero() and not tf.coeffs
