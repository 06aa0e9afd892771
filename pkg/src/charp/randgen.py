"""Seeded random generators for polynomials, rational functions and
forms, used by the crosscheck batteries and the test suite.

Everything takes an explicit random.Random so runs are reproducible
from a seed.  Denominators are drawn from a small pool of linear
(hence irreducible) polynomials; that keeps gcds cheap and guarantees
the declared-irreducible chart rule applies to whatever we generate.
"""

from __future__ import annotations

import random

from .cartier import Chart, gamma
from .context import Context
from .forms import OneForm, d_function, dlog_function
from .poly import Poly
from .ratfunc import RatFunc


def linear_pool(ctx: Context, size: int = 6) -> list[Poly]:
    """Deterministic pool of monic linear polynomials: x_i, x_i + c, and a
    couple of mixed-variable ones.  All linear, so irreducible and
    pairwise non-associate."""
    pool = []
    for i in range(ctx.nvars):
        pool.append(Poly.variable(ctx, i))
    for c in range(1, ctx.p):
        for i in range(ctx.nvars):
            pool.append(Poly.variable(ctx, i) + Poly.const(ctx, c))
            if len(pool) >= size + ctx.nvars:
                break
        if len(pool) >= size + ctx.nvars:
            break
    if ctx.nvars >= 2:
        mixed = Poly.variable(ctx, 0) + Poly.variable(ctx, 1) + Poly.const(ctx, 1)
        pool.append(mixed)
    return pool[: max(size, ctx.nvars)]


def random_poly(
    rng: random.Random,
    ctx: Context,
    max_degree: int = 3,
    max_terms: int = 4,
    nonzero: bool = False,
) -> Poly:
    terms = {}
    for _ in range(rng.randint(1 if nonzero else 0, max_terms)):
        exp = tuple(rng.randint(0, max_degree) for _ in range(ctx.nvars))
        terms[exp] = rng.randint(1, ctx.p - 1)
    f = Poly(ctx, terms)
    if nonzero and f.is_zero():
        return Poly.const(ctx, rng.randint(1, ctx.p - 1))
    return f


def random_denominator(rng: random.Random, ctx: Context, pool, max_factors: int = 2) -> Poly:
    den = Poly.one(ctx)
    for _ in range(rng.randint(0, max_factors)):
        den = den * rng.choice(pool)
    return den


def random_ratfunc(
    rng: random.Random,
    ctx: Context,
    pool=None,
    max_degree: int = 3,
    max_terms: int = 4,
    nonzero: bool = False,
) -> RatFunc:
    pool = pool if pool is not None else linear_pool(ctx)
    num = random_poly(rng, ctx, max_degree, max_terms, nonzero=nonzero)
    return RatFunc(num, random_denominator(rng, ctx, pool))


def random_unit(
    rng: random.Random,
    ctx: Context,
    pool=None,
    max_exp: int | None = None,
    max_factors: int = 3,
) -> RatFunc:
    """c * prod q_j^(m_j) over at most max_factors pool generators: a unit
    on the pool chart.  The factor cap keeps downstream witness searches
    inside their exponential budget."""
    pool = pool if pool is not None else linear_pool(ctx)
    max_exp = max_exp if max_exp is not None else ctx.p - 1
    value = RatFunc.const(ctx, rng.randint(1, ctx.p - 1))
    count = rng.randint(0, min(max_factors, len(pool)))
    for q in rng.sample(pool, count):
        m = rng.choice([e for e in range(-max_exp, max_exp + 1) if e != 0])
        value = value * RatFunc.from_poly(q) ** m
    return value


def random_oneform(
    rng: random.Random,
    ctx: Context,
    pool=None,
    max_degree: int = 3,
    max_terms: int = 3,
) -> OneForm:
    pool = pool if pool is not None else linear_pool(ctx)
    return OneForm(
        ctx,
        [
            random_ratfunc(rng, ctx, pool, max_degree, max_terms)
            for _ in range(ctx.nvars)
        ],
    )


def random_closed_form(
    rng: random.Random,
    ctx: Context,
    pool=None,
    max_degree: int = 3,
    exact_only: bool = False,
) -> OneForm:
    """A random closed 1-form.

    Every closed rational form splits as gamma(eta) + df, so sampling
    eta and f uniformly-ish covers the whole space; exact_only drops the
    gamma part (giving Cartier image zero)."""
    pool = pool if pool is not None else linear_pool(ctx)
    f = random_ratfunc(rng, ctx, pool, max_degree, max_terms=3)
    omega = d_function(f)
    if not exact_only:
        eta = OneForm(
            ctx,
            [
                random_ratfunc(rng, ctx, pool, max_degree=1, max_terms=2)
                for _ in range(ctx.nvars)
            ],
        )
        omega = omega + gamma(eta)
    return omega


def random_dlog_form(rng: random.Random, ctx: Context, pool=None) -> tuple[OneForm, RatFunc]:
    pool = pool if pool is not None else linear_pool(ctx)
    f = random_unit(rng, ctx, pool)
    return dlog_function(f), f


def pool_chart(ctx: Context, pool=None, limit: int = 4) -> Chart:
    pool = pool if pool is not None else linear_pool(ctx)
    return Chart(ctx, tuple(pool[:limit]))
