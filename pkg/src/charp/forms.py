"""Scalar-valued differential 1- and 2-forms with rational coefficients.

A OneForm is the vector of coefficients of dx_1..dx_n; a TwoForm keeps
only the strict upper triangle (i < j) of dx_i ^ dx_j coefficients.
Nothing above degree 2 exists here: the curvature expression d(Omega) +
Omega ^ Omega never needs more.
"""

from __future__ import annotations

from .context import Context
from .errors import ZeroArgument
from .ratfunc import RatFunc


class OneForm:
    """sum_i f_i dx_i with RatFunc coefficients; immutable."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: Context, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != ctx.nvars:
            raise ValueError("coefficient count does not match variable count")
        self.ctx = ctx
        self.coeffs = coeffs

    @classmethod
    def zero(cls, ctx: Context) -> OneForm:
        return cls(ctx, [RatFunc.zero(ctx)] * ctx.nvars)

    @classmethod
    def dx(cls, ctx: Context, i: int) -> OneForm:
        ctx.check_index(i)
        coeffs = [RatFunc.zero(ctx)] * ctx.nvars
        coeffs[i] = RatFunc.one(ctx)
        return cls(ctx, coeffs)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __add__(self, other: OneForm) -> OneForm:
        return OneForm(self.ctx, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: OneForm) -> OneForm:
        return OneForm(self.ctx, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> OneForm:
        return OneForm(self.ctx, [-a for a in self.coeffs])

    def scale(self, f: RatFunc) -> OneForm:
        return OneForm(self.ctx, [f * a for a in self.coeffs])

    __rmul__ = scale

    def __eq__(self, other: object) -> bool:
        return isinstance(other, OneForm) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __str__(self) -> str:
        pieces = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            name = self.ctx.form_name(i)
            if c.is_one():
                pieces.append(name)
            else:
                pieces.append(f"{_coeff_str(c)}*{name}")
        return " + ".join(pieces) if pieces else "0"

    def __repr__(self) -> str:
        return f"OneForm({self})"


class TwoForm:
    """sum_{i<j} f_ij dx_i ^ dx_j; zero entries are not stored."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: Context, coeffs: dict[tuple[int, int], RatFunc]):
        clean = {}
        for (i, j), c in coeffs.items():
            if not i < j:
                raise ValueError("two-form keys must be strictly increasing pairs")
            if not c.is_zero():
                clean[(i, j)] = c
        self.ctx = ctx
        self.coeffs = clean

    @classmethod
    def zero(cls, ctx: Context) -> TwoForm:
        return cls(ctx, {})

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int, j: int) -> RatFunc:
        return self.coeffs.get((i, j), RatFunc.zero(self.ctx))

    def __add__(self, other: TwoForm) -> TwoForm:
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            v = out.get(key)
            out[key] = c if v is None else v + c
        return TwoForm(self.ctx, out)

    def __sub__(self, other: TwoForm) -> TwoForm:
        return self + (-other)

    def __neg__(self) -> TwoForm:
        return TwoForm(self.ctx, {k: -c for k, c in self.coeffs.items()})

    def scale(self, f: RatFunc) -> TwoForm:
        return TwoForm(self.ctx, {k: f * c for k, c in self.coeffs.items()})

    __rmul__ = scale

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TwoForm) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.coeffs.items())))

    def __str__(self) -> str:
        pieces = []
        for (i, j) in sorted(self.coeffs):
            c = self.coeffs[(i, j)]
            atoms = f"{self.ctx.form_name(i)}*{self.ctx.form_name(j)}"
            if c.is_one():
                pieces.append(atoms)
            else:
                pieces.append(f"{_coeff_str(c)}*{atoms}")
        return " + ".join(pieces) if pieces else "0"

    def __repr__(self) -> str:
        return f"TwoForm({self})"


def _coeff_str(c: RatFunc) -> str:
    # Parenthesize multi-term polynomial coefficients so `c*dx` re-parses.
    s = str(c)
    if c.is_poly() and len(c.num.terms) > 1:
        return f"({s})"
    return s


# ---------------------------------------------------------------- operators

def d_function(f: RatFunc) -> OneForm:
    """Exterior derivative of a function: sum_i (df/dx_i) dx_i."""
    ctx = f.ctx
    return OneForm(ctx, [f.partial(i) for i in range(ctx.nvars)])


def d_oneform(omega: OneForm) -> TwoForm:
    """d(sum f_i dx_i) = sum_{i<j} (d_i f_j - d_j f_i) dx_i ^ dx_j."""
    ctx = omega.ctx
    out = {}
    for i in range(ctx.nvars):
        for j in range(i + 1, ctx.nvars):
            c = omega.coeffs[j].partial(i) - omega.coeffs[i].partial(j)
            if not c.is_zero():
                out[(i, j)] = c
    return TwoForm(ctx, out)


def wedge(omega: OneForm, eta: OneForm) -> TwoForm:
    """Wedge product of two 1-forms."""
    ctx = omega.ctx
    out = {}
    for i in range(ctx.nvars):
        for j in range(i + 1, ctx.nvars):
            c = omega.coeffs[i] * eta.coeffs[j] - omega.coeffs[j] * eta.coeffs[i]
            if not c.is_zero():
                out[(i, j)] = c
    return TwoForm(ctx, out)


def is_closed(omega: OneForm) -> bool:
    return d_oneform(omega).is_zero()


def dlog_function(f: RatFunc) -> OneForm:
    """df/f for a nonzero function."""
    if f.is_zero():
        raise ZeroArgument("dlog of zero")
    finv = f.inv()
    return OneForm(f.ctx, [f.partial(i) * finv for i in range(f.ctx.nvars)])
