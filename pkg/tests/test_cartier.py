"""Cartier operator, its right inverse, antiderivatives and witnesses."""

import random

import pytest

from charp import (
    Chart,
    Context,
    OneForm,
    Poly,
    RatFunc,
    antiderivative,
    cartier,
    cartier_1var_oracle,
    d_function,
    dlog_function,
    gamma,
    is_closed,
    log_witness,
)
from charp.errors import (
    ChartTooLarge,
    NoWitnessOnChart,
    NotClosed,
    NotExact,
)
from charp.randgen import (
    linear_pool,
    random_closed_form,
    random_oneform,
    random_ratfunc,
    random_unit,
)


def test_cartier_kills_exact_atoms():
    ctx = Context(5, 1)
    assert cartier(OneForm.dx(ctx, 0)).is_zero()


def test_cartier_requires_closed():
    ctx = Context(3, 2)
    y = RatFunc.variable(ctx, 1)
    with pytest.raises(NotClosed):
        cartier(OneForm(ctx, [y, RatFunc.zero(ctx)]))


def test_gamma_definition():
    ctx = Context(3, 2)
    x = RatFunc.variable(ctx, 0)
    # gamma(dx) = x^2 dx and gamma(x dy) = x^3 y^2 dy at p = 3.
    assert gamma(OneForm.dx(ctx, 0)).coeffs[0] == x * x
    eta = OneForm(ctx, [RatFunc.zero(ctx), x])
    y = RatFunc.variable(ctx, 1)
    assert gamma(eta).coeffs[1] == x**3 * y**2
    assert gamma(OneForm.zero(ctx)).is_zero()


def test_antiderivative_product_form():
    ctx = Context(5, 2)
    x, y = RatFunc.variable(ctx, 0), RatFunc.variable(ctx, 1)
    omega = OneForm(ctx, [y, x])  # d(xy)
    f = antiderivative(omega)
    assert d_function(f) == omega


def test_antiderivative_rejects_nonexact():
    ctx = Context(3, 1)
    x = RatFunc.variable(ctx, 0)
    with pytest.raises(NotExact):
        antiderivative(OneForm(ctx, [x * x]))


def test_oracle_rejects_multivariate():
    ctx = Context(3, 2)
    with pytest.raises(ValueError):
        cartier_1var_oracle(OneForm.zero(ctx))


class TestCartierContracts:
    @pytest.mark.parametrize("p,n", [(3, 1), (3, 2), (5, 2)])
    def test_main_identities(self, p, n):
        ctx = Context(p, n)
        rng = random.Random(100 * p + n)
        pool = linear_pool(ctx)
        for _ in range(15):
            f = random_ratfunc(rng, ctx, pool, nonzero=True)
            assert cartier(d_function(f)).is_zero()
            assert cartier(dlog_function(f)) == dlog_function(f)
            eta = random_oneform(rng, ctx, pool, max_degree=2, max_terms=2)
            assert cartier(gamma(eta)) == eta
            assert is_closed(gamma(eta))

    def test_semilinearity_and_additivity(self):
        ctx = Context(3, 2)
        rng = random.Random(55)
        pool = linear_pool(ctx)
        for _ in range(15):
            omega = random_closed_form(rng, ctx, pool)
            eta = random_closed_form(rng, ctx, pool)
            h = random_ratfunc(rng, ctx, pool, max_degree=2, max_terms=2)
            assert cartier(h.frobenius() * omega) == h * cartier(omega)
            assert cartier(omega + eta) == cartier(omega) + cartier(eta)

    def test_exactness_detection(self):
        # omega - gamma(C(omega)) is exact and the antiderivative recovers it.
        ctx = Context(3, 2)
        rng = random.Random(77)
        pool = linear_pool(ctx)
        for _ in range(15):
            omega = random_closed_form(rng, ctx, pool)
            rest = omega - gamma(cartier(omega))
            assert cartier(rest).is_zero()
            f = antiderivative(rest)
            assert d_function(f) == rest

    def test_univariate_agreement(self):
        ctx = Context(7, 1)
        rng = random.Random(99)
        pool = linear_pool(ctx)
        for _ in range(25):
            omega = random_oneform(rng, ctx, pool, max_degree=5, max_terms=4)
            assert cartier(omega) == cartier_1var_oracle(omega)


class TestLogWitness:
    def test_witness_correctness_randomized(self):
        ctx = Context(3, 2)
        rng = random.Random(13)
        pool = linear_pool(ctx)
        chart = Chart(ctx, tuple(pool[:4]))
        for _ in range(10):
            f = random_unit(rng, ctx, pool[:4], max_factors=3)
            omega = dlog_function(f)
            w = log_witness(omega, chart)
            assert dlog_function(w) == omega

    def test_no_witness_off_chart(self):
        ctx = Context(3, 1)
        x = Poly.variable(ctx, 0)
        xp1 = x + Poly.one(ctx)
        omega = dlog_function(RatFunc.from_poly(xp1))
        with pytest.raises(NoWitnessOnChart):
            log_witness(omega, Chart(ctx, (x,)))

    def test_chart_generator_cap(self):
        ctx = Context(3, 1)
        x = Poly.variable(ctx, 0)
        gens = tuple(x + Poly.const(ctx, c) for c in range(3)) + tuple(
            (x + Poly.const(ctx, c)) * (x + Poly.const(ctx, c)) - Poly.one(ctx)
            for c in range(3)
        ) + ((x * x * x - x + Poly.one(ctx)),)
        with pytest.raises(ChartTooLarge):
            log_witness(OneForm.zero(ctx), Chart(ctx, gens))

    def test_chart_rejects_repeated_generators(self):
        ctx = Context(3, 1)
        x = Poly.variable(ctx, 0)
        with pytest.raises(ValueError):
            Chart(ctx, (x, x.scale(2)))

    def test_trivial_witness_for_zero_form(self):
        ctx = Context(3, 1)
        chart = Chart(ctx, (Poly.variable(ctx, 0),))
        assert log_witness(OneForm.zero(ctx), chart) == RatFunc.one(ctx)
