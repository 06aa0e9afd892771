"""Polynomial kernel: exact arithmetic, p-th-power structure, gcd."""

import random

import pytest

from charp import Context, Poly, poly_arith, poly_gcd, poly_lcm
from charp.errors import DivisionNotExact, IndexOutOfRange, NotAPthPower, ZeroDivisor
from charp.randgen import random_poly


def ctx1(p=3):
    return Context(p, 1)


def ctx2(p=3):
    return Context(p, 2)


def x_of(ctx):
    return Poly.variable(ctx, 0)


class TestArithmetic:
    def test_frobenius_additivity_char3(self):
        ctx = ctx1()
        xp1 = x_of(ctx) + Poly.one(ctx)
        assert xp1 * xp1 * xp1 == Poly(ctx, {(3,): 1, (0,): 1})

    def test_divexact_factorization(self):
        ctx = ctx1()
        x = x_of(ctx)
        num = x * x - Poly.one(ctx)
        assert poly_arith(num, x - Poly.one(ctx), "divexact") == x + Poly.one(ctx)

    def test_coefficients_cancel_mod5(self):
        ctx = ctx1(5)
        x = x_of(ctx)
        a = x.scale(2) + Poly.const(ctx, 3)
        b = x.scale(3) + Poly.const(ctx, 2)
        assert (a + b).is_zero()

    def test_divexact_not_exact(self):
        ctx = ctx1()
        x = x_of(ctx)
        with pytest.raises(DivisionNotExact):
            (x * x + Poly.one(ctx)).divexact(x)

    def test_divexact_by_zero(self):
        ctx = ctx1()
        with pytest.raises(ZeroDivisor):
            x_of(ctx).divexact(Poly.zero(ctx))

    def test_pow_matches_repeated_mul(self):
        ctx = ctx2(5)
        rng = random.Random(7)
        for _ in range(20):
            f = random_poly(rng, ctx, max_degree=2, max_terms=3)
            acc = Poly.one(ctx)
            for e in range(7):
                assert f**e == acc
                acc = acc * f

    def test_divexact_roundtrip(self):
        ctx = Context(5, 3)
        rng = random.Random(19)
        for _ in range(25):
            q = random_poly(rng, ctx, max_degree=3, max_terms=4)
            b = random_poly(rng, ctx, max_degree=3, max_terms=4, nonzero=True)
            assert (q * b).divexact(b) == q


class TestDerivative:
    def test_pth_power_killed(self):
        ctx = ctx1()
        assert (x_of(ctx) ** 3).partial(0).is_zero()

    def test_power_rule(self):
        ctx = ctx2()
        x, y = Poly.variable(ctx, 0), Poly.variable(ctx, 1)
        assert (x * x * y).partial(0) == (x * y).scale(2)

    def test_index_out_of_range(self):
        ctx = ctx1()
        with pytest.raises(IndexOutOfRange):
            x_of(ctx).partial(1)

    def test_leibniz_and_commutation(self):
        ctx = ctx2(5)
        rng = random.Random(11)
        for _ in range(25):
            f = random_poly(rng, ctx, max_degree=3, max_terms=3)
            g = random_poly(rng, ctx, max_degree=3, max_terms=3)
            for i in range(2):
                assert (f * g).partial(i) == f * g.partial(i) + g * f.partial(i)
            assert f.partial(0).partial(1) == f.partial(1).partial(0)
            assert f.frobenius().partial(0).is_zero()
            assert f.frobenius().partial(1).is_zero()


class TestPthPowerStructure:
    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_reassembly(self, p):
        ctx = Context(p, 2)
        rng = random.Random(p)
        for _ in range(30):
            f = random_poly(rng, ctx, max_degree=7, max_terms=6)
            parts = f.p_basis_decompose()
            total = Poly.zero(ctx)
            for alpha, g in parts.items():
                total = total + g.frobenius() * Poly.monomial(ctx, alpha)
            assert total == f

    def test_pth_root_roundtrip(self):
        ctx = ctx2(3)
        rng = random.Random(5)
        for _ in range(30):
            g = random_poly(rng, ctx, max_degree=4, max_terms=4)
            assert g.frobenius().pth_root() == g

    def test_pth_root_failure_iff_bad_exponent(self):
        ctx = ctx1()
        with pytest.raises(NotAPthPower):
            (x_of(ctx) ** 2).pth_root()


class TestGcd:
    def test_gcd_common_factor(self):
        ctx = ctx2(5)
        rng = random.Random(3)
        for _ in range(20):
            a = random_poly(rng, ctx, max_degree=2, max_terms=3, nonzero=True)
            b = random_poly(rng, ctx, max_degree=2, max_terms=3, nonzero=True)
            c = random_poly(rng, ctx, max_degree=2, max_terms=2, nonzero=True)
            g = poly_gcd(a * c, b * c)
            # c divides the gcd; the gcd divides both products.
            assert g.divides((a * c))
            assert g.divides((b * c))
            assert c.divides(g) or c.monic().divides(g)

    def test_gcd_of_coprime_linears(self):
        ctx = ctx1()
        x = x_of(ctx)
        assert poly_gcd(x, x + Poly.one(ctx)) == Poly.one(ctx)

    def test_lcm(self):
        ctx = ctx1()
        x = x_of(ctx)
        xp1 = x + Poly.one(ctx)
        assert poly_lcm(x * xp1, x) == (x * xp1).monic()

    def test_trivariate_gcd_falls_back(self):
        ctx = Context(3, 3)
        x, y, z = (Poly.variable(ctx, i) for i in range(3))
        common = x + y + z
        g = poly_gcd(common * x, common * y)
        assert g == common.monic()
