"""Connections: dlog map, curvature, and the p-curvature engines."""

import random

import pytest

from charp import (
    Context,
    Derivation,
    GroupTag,
    MatrixOneForm,
    OneForm,
    RatFunc,
    aff1_matrix,
    curvature,
    d_function,
    derivation_p_power,
    dlog_function,
    ga_matrix,
    identity_matrix,
    mat_inv,
    mat_mul,
    maurer_cartan,
    nabla_power,
    pcurvature_abelian,
    pcurvature_at,
    pcurvature_brute,
    rank1_pcurvature_oracle,
)
from charp.errors import NotAbelian, NotClosed, ShapeViolation, SingularMatrix, ZeroUnit
from charp.randgen import linear_pool, random_closed_form, random_ratfunc, random_unit


def _aff1_element(f, fp):
    ctx = f.ctx
    return ((f, fp), (RatFunc.zero(ctx), RatFunc.one(ctx)))


class TestMaurerCartan:
    def test_identity_maps_to_zero(self):
        ctx = Context(3, 2)
        assert maurer_cartan(identity_matrix(ctx, 2), GroupTag.GL).is_zero()

    def test_aff1_pair_formula(self):
        # (f, f') -> ((df/f, -df'/f), (0, 0)) in the affine presentation.
        ctx = Context(3, 2)
        f = random_ratfunc(random.Random(3), ctx, nonzero=True)
        fp = random_ratfunc(random.Random(4), ctx)
        mc = maurer_cartan(_aff1_element(f, fp), GroupTag.AFF1)
        assert mc.entries[0][0] == dlog_function(f)
        assert mc.entries[0][1] == -(f.inv() * d_function(fp))
        assert mc.entries[1][0].is_zero() and mc.entries[1][1].is_zero()

    def test_ga_embedding(self):
        ctx = Context(3, 1)
        a = random_ratfunc(random.Random(5), ctx)
        g = ((RatFunc.one(ctx), a), (RatFunc.zero(ctx), RatFunc.one(ctx)))
        mc = maurer_cartan(g, GroupTag.G_A)
        assert mc.entries[0][1] == d_function(a)
        assert mc.entries[0][0].is_zero()

    def test_shape_enforcement(self):
        ctx = Context(3, 1)
        x = RatFunc.variable(ctx, 0)
        bad = ((x, x), (x, RatFunc.one(ctx)))
        with pytest.raises(ShapeViolation):
            maurer_cartan(bad, GroupTag.AFF1)
        with pytest.raises(ZeroUnit):
            maurer_cartan(_aff1_element(RatFunc.zero(ctx), x), GroupTag.AFF1)

    def test_singular_matrix_rejected(self):
        ctx = Context(3, 1)
        x = RatFunc.variable(ctx, 0)
        g = ((x, x), (x, x))
        with pytest.raises(SingularMatrix):
            maurer_cartan(g, GroupTag.GL)

    def test_matrix_inverse(self):
        ctx = Context(3, 2)
        rng = random.Random(8)
        pool = linear_pool(ctx)
        zero, one = RatFunc.zero(ctx), RatFunc.one(ctx)
        a = random_ratfunc(rng, ctx, pool)
        d1 = random_unit(rng, ctx, pool, max_factors=2)
        g = mat_mul(((one, zero), (a, one)), ((d1, zero), (zero, one)))
        assert mat_mul(g, mat_inv(g)) == identity_matrix(ctx, 2)


class TestCurvature:
    def test_zero_connection(self):
        ctx = Context(3, 2)
        assert curvature(MatrixOneForm.zero(ctx, 2)).is_zero()

    def test_aff1_block_structure(self):
        # The affine curvature matrix is ((d w, d w' + w ^ w'), (0, 0)).
        from charp import d_oneform, wedge

        ctx = Context(3, 2)
        rng = random.Random(21)
        pool = linear_pool(ctx)
        omega = random_closed_form(rng, ctx, pool)
        omega_p = OneForm(ctx, [random_ratfunc(rng, ctx, pool) for _ in range(2)])
        c = curvature(aff1_matrix(omega, omega_p))
        assert c.entries[0][0] == d_oneform(omega)
        assert c.entries[0][1] == d_oneform(omega_p) + wedge(omega, omega_p)
        assert c.entries[1][0].is_zero() and c.entries[1][1].is_zero()

    def test_flatness_of_dlog_forms(self):
        ctx = Context(3, 2)
        rng = random.Random(22)
        pool = linear_pool(ctx)
        for _ in range(10):
            f = random_unit(rng, ctx, pool, max_factors=2)
            fp = random_ratfunc(rng, ctx, pool)
            mc = maurer_cartan(_aff1_element(f, fp), GroupTag.AFF1)
            assert curvature(mc).is_zero()


class TestDerivations:
    def test_coordinate_p_power_vanishes(self):
        ctx = Context(5, 2)
        for i in range(2):
            assert derivation_p_power(Derivation.coordinate(ctx, i)).is_zero()

    def test_euler_field_fixed(self):
        ctx = Context(3, 1)
        x = RatFunc.variable(ctx, 0)
        d = Derivation(ctx, [x])
        assert derivation_p_power(d) == d


class TestPCurvature:
    def test_brute_matches_oracle_rank1(self):
        ctx = Context(5, 1)
        rng = random.Random(30)
        pool = linear_pool(ctx)
        for _ in range(15):
            omega = OneForm(ctx, [random_ratfunc(rng, ctx, pool, max_degree=3)])
            psi = pcurvature_brute(MatrixOneForm.scalar(omega))
            assert psi.component(0)[0][0] == rank1_pcurvature_oracle(omega)

    def test_brute_vanishes_on_dlog_image(self):
        ctx = Context(3, 2)
        rng = random.Random(31)
        pool = linear_pool(ctx)
        for _ in range(8):
            f = random_unit(rng, ctx, pool, max_factors=2)
            fp = random_ratfunc(rng, ctx, pool, max_degree=2)
            mc = maurer_cartan(_aff1_element(f, fp), GroupTag.AFF1)
            assert pcurvature_brute(mc).is_zero()

    def test_pcurvature_at_coordinate_agreement(self):
        ctx = Context(3, 2)
        rng = random.Random(32)
        pool = linear_pool(ctx)
        omega = random_closed_form(rng, ctx, pool)
        matrix = MatrixOneForm.scalar(omega)
        brute = pcurvature_brute(matrix)
        for i in range(2):
            assert pcurvature_at(matrix, Derivation.coordinate(ctx, i)) == brute.component(i)

    def test_pcurvature_at_zero_connection(self):
        ctx = Context(3, 2)
        rng = random.Random(33)
        d = Derivation(
            ctx, [random_ratfunc(rng, ctx, max_degree=1) for _ in range(2)]
        )
        result = pcurvature_at(MatrixOneForm.zero(ctx, 2), d)
        assert all(v.is_zero() for row in result for v in row)

    def test_evaluation_rule_is_twisted(self):
        ctx = Context(3, 1)
        x = RatFunc.variable(ctx, 0)
        psi = pcurvature_brute(MatrixOneForm.scalar(OneForm(ctx, [x])))
        value = psi.at(Derivation(ctx, [x]))
        assert value[0][0] == (x**3) * psi.component(0)[0][0]
        assert psi.twisted

    def test_psi_commutes_with_multiplication(self):
        # (nabla_i)^p is O_X-linear: applying it to f*v equals f*(applied to v).
        ctx = Context(3, 1)
        rng = random.Random(34)
        pool = linear_pool(ctx)
        omega = OneForm(ctx, [random_ratfunc(rng, ctx, pool, max_degree=2)])
        matrix = MatrixOneForm.scalar(omega)
        d = Derivation.coordinate(ctx, 0)
        for _ in range(5):
            f = random_ratfunc(rng, ctx, pool, max_degree=2)
            v = (random_ratfunc(rng, ctx, pool, max_degree=2),)
            lhs = nabla_power(matrix, d, (f * v[0],), 3)
            rhs = nabla_power(matrix, d, v, 3)
            assert lhs[0] == f * rhs[0]


class TestAbelianFormula:
    def test_gm_and_ga_values(self):
        ctx = Context(3, 1)
        x = RatFunc.variable(ctx, 0)
        omega = OneForm(ctx, [x * x])
        eta_m = pcurvature_abelian(omega, GroupTag.G_M)
        assert eta_m.coeffs[0] == x * x - RatFunc.one(ctx)
        eta_a = pcurvature_abelian(omega, GroupTag.G_A)
        assert eta_a.coeffs[0] == RatFunc.const(ctx, 2)

    def test_requires_closed_and_abelian(self):
        ctx = Context(3, 2)
        y = RatFunc.variable(ctx, 1)
        open_form = OneForm(ctx, [y, RatFunc.zero(ctx)])
        with pytest.raises(NotClosed):
            pcurvature_abelian(open_form, GroupTag.G_M)
        with pytest.raises(NotAbelian):
            pcurvature_abelian(OneForm.zero(ctx), GroupTag.AFF1)

    def test_substitution_bridge(self):
        # Brute psi equals the formula output with x_j -> x_j^p applied,
        # componentwise for both abelian tags.
        ctx = Context(3, 2)
        rng = random.Random(35)
        pool = linear_pool(ctx)
        for _ in range(10):
            omega = random_closed_form(rng, ctx, pool, max_degree=2)
            eta = pcurvature_abelian(omega, GroupTag.G_M)
            brute = pcurvature_brute(MatrixOneForm.scalar(omega))
            for i in range(2):
                assert brute.component(i)[0][0] == eta.coeffs[i].frobenius()
            eta_a = pcurvature_abelian(omega, GroupTag.G_A)
            brute_a = pcurvature_brute(ga_matrix(omega))
            for i in range(2):
                assert brute_a.component(i)[0][1] == eta_a.coeffs[i].frobenius()

    def test_plinearity_under_flatness(self):
        ctx = Context(3, 2)
        rng = random.Random(36)
        pool = linear_pool(ctx)
        f = random_unit(rng, ctx, pool, max_factors=2)
        mc = maurer_cartan(((f,),), GroupTag.G_M)
        d = Derivation(ctx, [random_ratfunc(rng, ctx, pool, max_degree=1) for _ in range(2)])
        h = random_ratfunc(rng, ctx, pool, max_degree=1, nonzero=True)
        lhs = pcurvature_at(mc, d.scale(h))
        rhs = pcurvature_at(mc, d)
        assert lhs[0][0] == h.frobenius() * rhs[0][0]
