"""The Cartier operator on closed rational 1-forms, with inverses.

Everything reduces to the polynomial case by one trick: any rational
1-form can be written (sum_i N_i dx_i) / Q^p with polynomial N_i
(multiply numerator and denominator by Q^(p-1)).  Since d kills 1/Q^p,
closedness, exactness and the Cartier image all pass through the
clearing unchanged, and the operator becomes p-th-power bookkeeping on
exponents:

* C extracts, for the dx_i component, the p-th-power part sitting on
  the monomial slot x_i^(p-1), then divides by Q.
* gamma(g dx_i) = g^p x_i^(p-1) dx_i is a section of C.
* A closed polynomial form splits by the residue class of
  (exponent + e_i) mod p per dx_i term; the zero class is exactly
  gamma(C(.)), and every other class integrates term by term.  That
  split is the whole antiderivative algorithm.

The one-variable operator has a classical closed formula
C(a dx) = (-a^(p-1 derivatives))^(1/p) dx, kept here as an independent
oracle against the extraction path.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .context import Context
from .errors import (
    ChartTooLarge,
    NoWitnessOnChart,
    NotCartierFixed,
    NotClosed,
)
from .errors import NotExact as NotExactError
from .forms import OneForm, dlog_function, is_closed
from .poly import Poly, poly_lcm
from .ratfunc import RatFunc

MAX_CHART_GENERATORS = 6


@dataclass(frozen=True)
class Chart:
    """A Zariski chart of affine n-space: the complement of the zero loci
    of the listed generators.

    Generators must be nonzero non-constant polynomials, pairwise
    non-associate; irreducibility is asserted by the caller (the library
    does not factor).
    """

    ctx: Context
    generators: tuple[Poly, ...]

    def __post_init__(self):
        monics = []
        for q in self.generators:
            if q.is_zero() or q.is_constant():
                raise ValueError("chart generators must be non-constant polynomials")
            m = q.monic()
            if m in monics:
                raise ValueError(f"chart generators {q} repeated up to a constant")
            monics.append(m)

    def __len__(self) -> int:
        return len(self.generators)

    def sort_key(self) -> tuple[str, ...]:
        return tuple(str(q) for q in self.generators)

    def __str__(self) -> str:
        return "{" + ", ".join(str(q) for q in self.generators) + "}"


def clear_to_p_power(omega: OneForm) -> tuple[list[Poly], Poly]:
    """Write omega = (sum_i N_i dx_i) / Q^p; return ([N_i], Q).

    Q is the (monic) lcm of the component denominators, so the result
    is as small as this normal form allows.
    """
    ctx = omega.ctx
    q = Poly.one(ctx)
    for c in omega.coeffs:
        q = poly_lcm(q, c.den)
    scaled = q ** (ctx.p - 1)
    nums = []
    for c in omega.coeffs:
        nums.append(c.num * q.divexact(c.den) * scaled)
    return nums, q


def cartier(omega: OneForm) -> OneForm:
    """Cartier operator of a closed 1-form, in the same coordinates.

    Linear over F_p, kills exact forms, fixes dlog forms, and satisfies
    C(h^p w) = h C(w); the output lives on the Frobenius twist, which
    over F_p is identified with the source."""
    ctx = omega.ctx
    if not is_closed(omega):
        raise NotClosed("Cartier operator requires a closed form")
    nums, q = clear_to_p_power(omega)
    out = []
    for i, n in enumerate(nums):
        slot = tuple(ctx.p - 1 if j == i else 0 for j in range(ctx.nvars))
        out.append(RatFunc(n.p_power_part(slot), q))
    return OneForm(ctx, out)


def gamma(eta: OneForm) -> OneForm:
    """Right inverse of C: gamma(g dx_i) = g^p x_i^(p-1) dx_i componentwise.

    The image is always closed and C(gamma(eta)) = eta for every eta."""
    ctx = eta.ctx
    out = []
    for i, g in enumerate(eta.coeffs):
        xi = Poly.variable(ctx, i) ** (ctx.p - 1)
        out.append(g.frobenius() * RatFunc.from_poly(xi))
    return OneForm(ctx, out)


def antiderivative(omega: OneForm) -> RatFunc:
    """f with df = omega, for omega closed with C(omega) = 0.

    After clearing to (sum N_i dx_i)/Q^p, each monomial term c x^a dx_i
    is binned by the class b = (a + e_i) mod p.  C(omega) = 0 says the
    b = 0 bin is empty; every other bin is itself closed (classes mod p
    cannot interfere under d) and is integrated through any coordinate j
    with b_j != 0 using only its dx_j terms - closedness fills in the
    rest.
    """
    ctx = omega.ctx
    p = ctx.p
    if not is_closed(omega):
        raise NotClosed("antiderivative requires a closed form")
    if not cartier(omega).is_zero():
        raise NotExactError("form has nonzero Cartier image, no antiderivative exists")
    nums, q = clear_to_p_power(omega)
    by_class: dict[tuple[int, ...], dict[int, dict]] = {}
    for i, n in enumerate(nums):
        for exp, c in n.terms.items():
            cls = tuple((e + (1 if j == i else 0)) % p for j, e in enumerate(exp))
            by_class.setdefault(cls, {}).setdefault(i, {})[exp] = c
    total = Poly.zero(ctx)
    for cls, components in sorted(by_class.items()):
        if not any(cls):
            raise AssertionError("residue class 0 survived a zero Cartier image")
        j = next(k for k, b in enumerate(cls) if b)
        inv = ctx.inv(cls[j])
        terms = {}
        for exp, c in components.get(j, {}).items():
            lifted = list(exp)
            lifted[j] += 1
            terms[tuple(lifted)] = (c * inv) % p
        total = total + Poly(ctx, terms, _normalized=True)
    return RatFunc(total, q.frobenius())


def cartier_1var_oracle(omega: OneForm) -> OneForm:
    """Independent one-variable Cartier: C(a dx) = (-d^(p-1) a)^(1/p) dx.

    Computed on the cleared numerator; the p-th root is guaranteed and
    a failure there signals an internal inconsistency."""
    ctx = omega.ctx
    if ctx.nvars != 1:
        raise ValueError("the closed-formula oracle needs exactly one variable")
    a = omega.coeffs[0]
    numer = a.num * a.den ** (ctx.p - 1)
    for _ in range(ctx.p - 1):
        numer = numer.partial(0)
    root = (-numer).pth_root()
    return OneForm(ctx, [RatFunc(root, a.den)])


def log_witness(omega: OneForm, chart: Chart) -> RatFunc:
    """A unit f on the chart with dlog(f) = omega, by exhaustive search.

    Candidates are products of the chart generators with exponents in
    {0..p-1}; since dlog only sees a unit modulo p-th powers, that
    search is complete on the chart.  Exponential in the generator
    count, hence the hard cap."""
    ctx = omega.ctx
    if len(chart) > MAX_CHART_GENERATORS:
        raise ChartTooLarge(
            f"{len(chart)} generators exceed the search cap of {MAX_CHART_GENERATORS}"
        )
    if not is_closed(omega):
        raise NotClosed("a logarithmic form must be closed")
    if cartier(omega) != omega:
        raise NotCartierFixed("Cartier operator does not fix this form")
    dlogs = [dlog_function(RatFunc.from_poly(q)) for q in chart.generators]
    for exponents in itertools.product(range(ctx.p), repeat=len(chart)):
        candidate = OneForm.zero(ctx)
        for m, dl in zip(exponents, dlogs):
            if m:
                candidate = candidate + RatFunc.const(ctx, m) * dl
        if candidate == omega:
            f = Poly.one(ctx)
            for m, g in zip(exponents, chart.generators):
                f = f * g**m
            return RatFunc.from_poly(f)
    raise NoWitnessOnChart(f"no witness for {omega} on chart {chart}")
