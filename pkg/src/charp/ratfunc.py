"""Rational functions over F_p in canonical form.

A RatFunc is a reduced fraction num/den of Polys: gcd(num, den) = 1 and
den is grlex-monic.  The normal form is unique, so equality of values
is equality of representations.  Construction normalizes; arithmetic
keeps the form.
"""

from __future__ import annotations

from .context import Context
from .errors import InverseOfZero, NotAPthPower, ZeroDenominator
from .poly import Poly, poly_gcd


class RatFunc:
    """Immutable reduced fraction of polynomials over F_p."""

    __slots__ = ("ctx", "num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, _normalized: bool = False):
        ctx = num.ctx
        if den is None:
            den = Poly.one(ctx)
        if not _normalized:
            if den.is_zero():
                raise ZeroDenominator("zero denominator")
            if num.is_zero():
                den = Poly.one(ctx)
            else:
                g = poly_gcd(num, den)
                if not (g.is_constant() and g.constant_value() == 1):
                    num = num.divexact(g)
                    den = den.divexact(g)
                _, lc = den.leading()
                if lc != 1:
                    inv = ctx.inv(lc)
                    num = num.scale(inv)
                    den = den.scale(inv)
        self.ctx = ctx
        self.num = num
        self.den = den

    # ------------------------------------------------------------ builders

    @classmethod
    def zero(cls, ctx: Context) -> RatFunc:
        return cls(Poly.zero(ctx), _normalized=True)

    @classmethod
    def one(cls, ctx: Context) -> RatFunc:
        return cls(Poly.one(ctx), _normalized=True)

    @classmethod
    def const(cls, ctx: Context, c: int) -> RatFunc:
        return cls(Poly.const(ctx, c), _normalized=True)

    @classmethod
    def variable(cls, ctx: Context, i: int) -> RatFunc:
        return cls(Poly.variable(ctx, i), _normalized=True)

    @classmethod
    def from_poly(cls, f: Poly) -> RatFunc:
        return cls(f, _normalized=True)

    # ------------------------------------------------------------ predicates

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num == Poly.one(self.ctx) and self.den == Poly.one(self.ctx)

    def is_poly(self) -> bool:
        return self.den == Poly.one(self.ctx)

    def as_poly(self) -> Poly:
        if not self.is_poly():
            raise ValueError(f"{self} is not a polynomial")
        return self.num

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    # ------------------------------------------------------------ arithmetic

    def _check(self, other: RatFunc) -> None:
        if self.ctx != other.ctx:
            raise ValueError("mixed computation contexts")

    def __add__(self, other: RatFunc) -> RatFunc:
        # Lowest-terms addition: with gcd(a,b) = gcd(c,d) = 1, any common
        # factor of a*(d/g) + c*(b/g) and b*(d/g) divides g = gcd(b, d),
        # so only g-sized gcds are ever computed (never numerator-sized).
        if not isinstance(other, RatFunc):
            return NotImplemented
        self._check(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        a, b = self.num, self.den
        c, d = other.num, other.den
        if b == d:
            if b.is_constant():
                return RatFunc(a + c, b)
            t = a + c
            g2 = poly_gcd(t, b)
            if not g2.is_constant():
                t, b = t.divexact(g2), b.divexact(g2)
            return _monic_normalized(t, b)
        g = poly_gcd(b, d)
        if g.is_constant():
            return _monic_normalized(a * d + c * b, b * d)
        bg, dg = b.divexact(g), d.divexact(g)
        t = a * dg + c * bg
        g2 = poly_gcd(t, g)
        if g2.is_constant():
            return _monic_normalized(t, bg * d)
        return _monic_normalized(t.divexact(g2), b.divexact(g2) * dg)

    def __sub__(self, other: RatFunc) -> RatFunc:
        return self + (-other)

    def __neg__(self) -> RatFunc:
        return RatFunc(-self.num, self.den, _normalized=True)

    def __mul__(self, other: RatFunc) -> RatFunc:
        if not isinstance(other, RatFunc):
            return NotImplemented
        self._check(other)
        if self.is_zero() or other.is_zero():
            return RatFunc.zero(self.ctx)
        # Cross-cancel first to keep the final gcd trivial.
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1 = self.num if g1.is_constant() else self.num.divexact(g1)
        d2 = other.den if g1.is_constant() else other.den.divexact(g1)
        n2 = other.num if g2.is_constant() else other.num.divexact(g2)
        d1 = self.den if g2.is_constant() else self.den.divexact(g2)
        num = n1 * n2
        den = d1 * d2
        _, lc = den.leading()
        if lc != 1:
            inv = self.ctx.inv(lc)
            num, den = num.scale(inv), den.scale(inv)
        return RatFunc(num, den, _normalized=True)

    def inv(self) -> RatFunc:
        if self.is_zero():
            raise InverseOfZero("inverse of zero")
        num, den = self.den, self.num
        _, lc = den.leading()
        if lc != 1:
            i = self.ctx.inv(lc)
            num, den = num.scale(i), den.scale(i)
        return RatFunc(num, den, _normalized=True)

    def __truediv__(self, other: RatFunc) -> RatFunc:
        return self * other.inv()

    def __pow__(self, e: int) -> RatFunc:
        if e < 0:
            return self.inv() ** (-e)
        if e == 0:
            return RatFunc.one(self.ctx)
        # Parts stay coprime and the denominator stays monic under powers.
        return RatFunc(self.num**e, self.den**e, _normalized=True)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, RatFunc)
            and self.ctx == other.ctx
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    # ------------------------------------------------------------ calculus

    def partial(self, i: int) -> RatFunc:
        """Quotient rule, exact: (den*num' - num*den') / den^2.

        Cancellation against den^2 can only come from gcd(den, den'),
        so a p-th-power denominator (den' = 0) keeps its denominator and
        a squarefree-ish one (gcd 1) needs no reduction at all."""
        if self.is_poly():
            return RatFunc.from_poly(self.num.partial(i))
        dden = self.den.partial(i)
        if dden.is_zero():
            return RatFunc(self.num.partial(i), self.den)
        num = self.den * self.num.partial(i) - self.num * dden
        g = poly_gcd(self.den, dden)
        if g.is_constant():
            return _monic_normalized(num, self.den * self.den)
        return RatFunc(num, self.den * self.den)

    def frobenius(self) -> RatFunc:
        """The p-th power; over F_p this equals substituting x_j -> x_j^p."""
        return RatFunc(self.num.frobenius(), self.den.frobenius(), _normalized=True)

    def pth_root(self) -> RatFunc:
        """g with g^p = self; exists iff both reduced parts are p-th powers."""
        try:
            return RatFunc(self.num.pth_root(), self.den.pth_root(), _normalized=True)
        except NotAPthPower as exc:
            raise NotAPthPower(f"{self} is not a p-th power") from exc

    # ------------------------------------------------------------ printing

    def __str__(self) -> str:
        if self.is_poly():
            return str(self.num)
        num_s = str(self.num)
        if len(self.num.terms) > 1:
            num_s = f"({num_s})"
        den_s = str(self.den)
        if not _safe_denominator(self.den):
            den_s = f"({den_s})"
        return f"{num_s}/{den_s}"

    def __repr__(self) -> str:
        return f"RatFunc({self}, p={self.ctx.p})"


def _monic_normalized(num: Poly, den: Poly) -> RatFunc:
    """Wrap an already-coprime pair, only scaling the denominator monic."""
    if num.is_zero():
        return RatFunc(num, Poly.one(num.ctx), _normalized=True)
    _, lc = den.leading()
    if lc != 1:
        inv = num.ctx.inv(lc)
        num, den = num.scale(inv), den.scale(inv)
    return RatFunc(num, den, _normalized=True)


def _safe_denominator(den: Poly) -> bool:
    # A denominator may print bare only if re-parsing cannot regroup it:
    # a single term, coefficient 1, involving exactly one variable.
    if len(den.terms) != 1:
        return False
    [(exp, c)] = den.terms.items()
    return c == 1 and sum(1 for e in exp if e) == 1


def ratfunc_normalize(num: Poly, den: Poly) -> RatFunc:
    """Construct the canonical form of num/den (the constructor's job,
    exposed under its own name)."""
    return RatFunc(num, den)
