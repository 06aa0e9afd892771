"""Cross-validation of the gcd kernel against sympy's GF(p) gcd.

sympy is an optional dev dependency (used by the fixture freeze script);
these tests are skipped when it is missing.  They matter because every
canonical form in the package routes through poly_gcd.
"""

import random

import pytest

sympy = pytest.importorskip("sympy")

from charp import Context, Poly, poly_gcd  # noqa: E402
from charp.randgen import random_poly  # noqa: E402

SYMS = sympy.symbols("x y z w")


def to_sympy(f: Poly):
    gens = SYMS[: f.ctx.nvars]
    expr = sympy.Integer(0)
    for exp, c in f.terms.items():
        term = sympy.Integer(c)
        for s, e in zip(gens, exp):
            term *= s**e
        expr += term
    return sympy.Poly(expr, *gens, modulus=f.ctx.p, symmetric=False)


def from_sympy(poly, ctx: Context) -> Poly:
    return Poly(ctx, {tuple(exp): int(c) for exp, c in poly.as_dict().items()})


def sympy_monic_gcd(a: Poly, b: Poly) -> Poly:
    g = to_sympy(a).gcd(to_sympy(b))
    return from_sympy(g, a.ctx).monic()


@pytest.mark.parametrize("p,n", [(3, 1), (3, 2), (5, 2), (7, 2), (3, 3), (3, 4), (5, 3)])
def test_gcd_matches_sympy(p, n):
    ctx = Context(p, n)
    rng = random.Random(10_000 * p + n)
    # sympy's GF gcd slows dramatically on large 4-variable inputs
    # (85 s on one degree-15 pair), so cap the sizes there.
    deg = 2 if n >= 4 else 3
    for trial in range(20 if n >= 3 else 30):
        a = random_poly(rng, ctx, max_degree=deg, max_terms=4, nonzero=True)
        b = random_poly(rng, ctx, max_degree=deg, max_terms=4, nonzero=True)
        if trial % 2:
            # Force a common factor half the time.
            c = random_poly(rng, ctx, max_degree=2, max_terms=3, nonzero=True)
            a, b = a * c, b * c
        assert poly_gcd(a, b) == sympy_monic_gcd(a, b), f"a={a}, b={b}"


def test_gcd_matches_sympy_on_powers():
    ctx = Context(3, 2)
    rng = random.Random(424242)
    for _ in range(10):
        a = random_poly(rng, ctx, max_degree=2, max_terms=3, nonzero=True)
        b = random_poly(rng, ctx, max_degree=2, max_terms=3, nonzero=True)
        big_a = a.frobenius() * b
        big_b = a * b.frobenius()
        assert poly_gcd(big_a, big_b) == sympy_monic_gcd(big_a, big_b)
