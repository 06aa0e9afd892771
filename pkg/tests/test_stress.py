"""Stress tests for the paths the main batteries exercise lightly:
gcd in three and four variables, rank-3 matrix inversion, and the top
of the supported prime range."""

import random

import pytest

from charp import (
    Context,
    Derivation,
    GroupTag,
    MatrixOneForm,
    OneForm,
    Poly,
    RatFunc,
    cartier,
    curvature,
    d_function,
    dlog_function,
    gamma,
    identity_matrix,
    mat_inv,
    mat_mul,
    maurer_cartan,
    pcurvature_abelian,
    pcurvature_brute,
    poly_gcd,
)
from charp.randgen import linear_pool, random_poly, random_ratfunc, random_unit


class TestGcdStress:
    @pytest.mark.parametrize("p,n", [(3, 2), (5, 2), (3, 3), (3, 4)])
    def test_gcd_divides_and_cofactors_coprime(self, p, n):
        ctx = Context(p, n)
        rng = random.Random(1000 * p + n)
        for _ in range(25):
            a = random_poly(rng, ctx, max_degree=3, max_terms=4, nonzero=True)
            b = random_poly(rng, ctx, max_degree=3, max_terms=4, nonzero=True)
            c = random_poly(rng, ctx, max_degree=2, max_terms=3, nonzero=True)
            g = poly_gcd(a * c, b * c)
            assert g.divides(a * c) and g.divides(b * c)
            assert c.monic().divides(g)
            qa = (a * c).divexact(g)
            qb = (b * c).divexact(g)
            assert poly_gcd(qa, qb).is_constant()
            _, lc = g.leading()
            assert lc == 1

    def test_gcd_of_p_th_powers(self):
        ctx = Context(3, 2)
        rng = random.Random(77)
        for _ in range(10):
            a = random_poly(rng, ctx, max_degree=2, max_terms=3, nonzero=True)
            b = random_poly(rng, ctx, max_degree=2, max_terms=3, nonzero=True)
            g = poly_gcd(a.frobenius(), (a * b).frobenius())
            assert g == poly_gcd(a, a * b).frobenius().monic()

    def test_deep_rational_chains_stay_canonical(self):
        ctx = Context(3, 3)
        rng = random.Random(88)
        pool = linear_pool(ctx)
        acc = RatFunc.one(ctx)
        for _ in range(12):
            acc = acc * random_ratfunc(rng, ctx, pool, max_degree=2, nonzero=True)
            acc = acc + random_ratfunc(rng, ctx, pool, max_degree=2)
        from charp.poly import poly_gcd as g

        assert g(acc.num, acc.den).is_constant()
        _, lc = acc.den.leading()
        assert lc == 1


class TestHigherVariables:
    @pytest.mark.parametrize("n", [3, 4])
    def test_cartier_identities(self, n):
        ctx = Context(3, n)
        rng = random.Random(n)
        pool = linear_pool(ctx)
        for _ in range(5):
            f = random_ratfunc(rng, ctx, pool, max_degree=2, nonzero=True)
            assert cartier(d_function(f)).is_zero()
            assert cartier(dlog_function(f)) == dlog_function(f)
            eta = OneForm(
                ctx,
                [random_ratfunc(rng, ctx, pool, max_degree=1, max_terms=2) for _ in range(n)],
            )
            assert cartier(gamma(eta)) == eta

    def test_abelian_formula_three_vars(self):
        ctx = Context(3, 3)
        rng = random.Random(5)
        pool = linear_pool(ctx)
        f = random_ratfunc(rng, ctx, pool, max_degree=2, nonzero=True)
        omega = d_function(f) + gamma(
            OneForm(ctx, [random_ratfunc(rng, ctx, pool, max_degree=1, max_terms=2)
                          for _ in range(3)])
        )
        eta = pcurvature_abelian(omega, GroupTag.G_M)
        brute = pcurvature_brute(MatrixOneForm.scalar(omega))
        for i in range(3):
            assert brute.component(i)[0][0] == eta.coeffs[i].frobenius()


class TestRankThree:
    def test_gl3_inverse_and_flatness(self):
        ctx = Context(3, 2)
        rng = random.Random(9)
        pool = linear_pool(ctx)
        zero, one = RatFunc.zero(ctx), RatFunc.one(ctx)
        for _ in range(5):
            def rf():
                return RatFunc.from_poly(random_poly(rng, ctx, max_degree=1, max_terms=2))

            lower = ((one, zero, zero), (rf(), one, zero), (rf(), rf(), one))
            upper = ((one, rf(), rf()), (zero, one, rf()), (zero, zero, one))
            units = (random_unit(rng, ctx, pool, max_factors=1),
                     random_unit(rng, ctx, pool, max_factors=1), one)
            diag = tuple(
                tuple(units[i] if i == j else zero for j in range(3)) for i in range(3)
            )
            g = mat_mul(mat_mul(lower, diag), upper)
            assert mat_mul(g, mat_inv(g)) == identity_matrix(ctx, 3)
            mc = maurer_cartan(g, GroupTag.GL)
            assert curvature(mc).is_zero()
            assert pcurvature_brute(mc).is_zero()

    def test_pivoting_with_zero_corner(self):
        ctx = Context(3, 1)
        x = RatFunc.variable(ctx, 0)
        zero, one = RatFunc.zero(ctx), RatFunc.one(ctx)
        g = ((zero, one, zero), (x, zero, zero), (zero, zero, one))
        assert mat_mul(g, mat_inv(g)) == identity_matrix(ctx, 3)


class TestLargePrime:
    def test_p31_core_identities(self):
        ctx = Context(31, 1)
        x = RatFunc.variable(ctx, 0)
        omega = dlog_function(x * x + RatFunc.one(ctx))
        assert cartier(omega) == omega
        # Wilson at the cap: C(x^30 dx) = dx.
        big = OneForm(ctx, [RatFunc.from_poly(Poly.variable(ctx, 0) ** 30)])
        assert cartier(big) == OneForm.dx(ctx, 0)

    def test_p31_pcurvature(self):
        ctx = Context(31, 1)
        x = RatFunc.variable(ctx, 0)
        psi = pcurvature_brute(MatrixOneForm.scalar(dlog_function(x)))
        assert psi.is_zero()
        d = Derivation(ctx, [x])
        assert psi.at(d)[0][0].is_zero()
