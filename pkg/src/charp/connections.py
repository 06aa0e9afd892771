"""Matrix-valued connections on trivialized torsors and their curvatures.

A connection on the trivial rank-r torsor is a matrix Omega of 1-forms
acting as nabla = d + Omega on column vectors.  Supported group shapes:

* g_m:   1x1 (units),
* g_a:   the standard unipotent embedding ((1, a), (0, 1)) into GL_2,
* gl:    any invertible r x r matrix,
* aff1:  the affine group of the line, embedded as ((f, f'), (0, 1));
  its Lie algebra is the first row, so connection matrices have shape
  ((omega, omega'), (0, 0)).

Two independent p-curvature engines live here: a brute-force operator
iteration (apply nabla_D p times to basis columns; the s(D^p) term is
subtracted exactly), and the closed formula for abelian groups built
from the Cartier operator.  Their agreement is one of the main checks
of the whole package.
"""

from __future__ import annotations

import enum

from .cartier import cartier
from .context import Context
from .errors import (
    CharTwo,
    NotAbelian,
    NotClosed,
    ShapeViolation,
    SingularMatrix,
    ZeroUnit,
)
from .forms import OneForm, d_function, d_oneform, dlog_function, is_closed, wedge
from .poly import Poly, poly_lcm
from .ratfunc import RatFunc

Matrix = tuple[tuple[RatFunc, ...], ...]


class GroupTag(enum.Enum):
    """Structure group of the trivial torsor; fixes the matrix shape and
    the p-power operation on the Lie algebra."""

    G_M = "g_m"
    G_A = "g_a"
    GL = "gl"
    AFF1 = "aff1"


# ---------------------------------------------------------------- matrices

def identity_matrix(ctx: Context, r: int) -> Matrix:
    one, zero = RatFunc.one(ctx), RatFunc.zero(ctx)
    return tuple(tuple(one if i == j else zero for j in range(r)) for i in range(r))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, m, k = len(a), len(b[0]), len(b)
    zero = RatFunc.zero(a[0][0].ctx)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = zero
            for t in range(k):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_inv(g: Matrix) -> Matrix:
    """Gauss-Jordan inverse over the rational function field."""
    r = len(g)
    if any(len(row) != r for row in g):
        raise ShapeViolation("matrix must be square")
    ctx = g[0][0].ctx
    aug = [list(row) + list(idrow) for row, idrow in zip(g, identity_matrix(ctx, r))]
    for col in range(r):
        pivot = next((i for i in range(col, r) if not aug[i][col].is_zero()), None)
        if pivot is None:
            raise SingularMatrix("matrix is not invertible")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = aug[col][col].inv()
        aug[col] = [inv * v for v in aug[col]]
        for i in range(r):
            if i != col and not aug[i][col].is_zero():
                factor = aug[i][col]
                aug[i] = [a - factor * b for a, b in zip(aug[i], aug[col])]
    return tuple(tuple(row[r:]) for row in aug)


def format_matrix(rows) -> str:
    return "; ".join(", ".join(str(v) for v in row) for row in rows)


# ---------------------------------------------------------------- lie forms

class MatrixOneForm:
    """Square matrix of 1-forms (a Lie-algebra-valued connection form)."""

    __slots__ = ("ctx", "entries")

    def __init__(self, ctx: Context, entries):
        entries = tuple(tuple(row) for row in entries)
        r = len(entries)
        if any(len(row) != r for row in entries):
            raise ShapeViolation("matrix of forms must be square")
        self.ctx = ctx
        self.entries = entries

    @classmethod
    def zero(cls, ctx: Context, r: int) -> MatrixOneForm:
        z = OneForm.zero(ctx)
        return cls(ctx, [[z] * r for _ in range(r)])

    @classmethod
    def scalar(cls, omega: OneForm) -> MatrixOneForm:
        return cls(omega.ctx, [[omega]])

    @property
    def rank(self) -> int:
        return len(self.entries)

    def coefficient_matrix(self, i: int) -> Matrix:
        """The r x r matrix of dx_i coefficients."""
        return tuple(tuple(entry.coeffs[i] for entry in row) for row in self.entries)

    def __add__(self, other: MatrixOneForm) -> MatrixOneForm:
        return MatrixOneForm(
            self.ctx,
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)],
        )

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MatrixOneForm) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def __str__(self) -> str:
        return format_matrix(self.entries)

    def __repr__(self) -> str:
        return f"MatrixOneForm({self})"


class MatrixTwoForm:
    """Square matrix of 2-forms (curvature values)."""

    __slots__ = ("ctx", "entries")

    def __init__(self, ctx: Context, entries):
        entries = tuple(tuple(row) for row in entries)
        r = len(entries)
        if any(len(row) != r for row in entries):
            raise ShapeViolation("matrix of forms must be square")
        self.ctx = ctx
        self.entries = entries

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MatrixTwoForm) and self.entries == other.entries

    def __str__(self) -> str:
        return format_matrix(self.entries)

    def __repr__(self) -> str:
        return f"MatrixTwoForm({self})"


def aff1_matrix(omega: OneForm, omega_prime: OneForm) -> MatrixOneForm:
    """Connection matrix ((omega, omega'), (0, 0)) for the affine group."""
    ctx = omega.ctx
    z = OneForm.zero(ctx)
    return MatrixOneForm(ctx, [[omega, omega_prime], [z, z]])


def ga_matrix(omega: OneForm) -> MatrixOneForm:
    """GL_2 realization ((0, omega), (0, 0)) of an additive-group connection."""
    ctx = omega.ctx
    z = OneForm.zero(ctx)
    return MatrixOneForm(ctx, [[z, omega], [z, z]])


# ---------------------------------------------------------------- dlog map

def _require_shape(cond: bool, message: str) -> None:
    if not cond:
        raise ShapeViolation(message)


def maurer_cartan(g: Matrix, tag: GroupTag) -> MatrixOneForm:
    """The logarithmic derivative carrying a group element to a flat
    connection form with vanishing p-curvature.

    For matrix groups this is g^{-1} dg.  For the affine group, written
    ((f, f'), (0, 1)), the convention fixed across the package is the
    pair map (f, f') -> ((df/f, -df'/f), (0, 0)); it generates the same
    forms (replace f' by -f') and matches the boundary-map presentation
    of Frobenius-kernel torsors.
    """
    ctx = g[0][0].ctx
    r = len(g)
    _require_shape(all(len(row) == r for row in g), "group element must be square")
    if tag is GroupTag.G_M:
        _require_shape(r == 1, "a unit is a 1x1 matrix")
        f = g[0][0]
        if f.is_zero():
            raise ZeroUnit("dlog of the zero unit")
        return MatrixOneForm.scalar(dlog_function(f))
    if tag is GroupTag.G_A:
        _require_shape(r == 2, "additive elements embed in GL_2")
        one, zero = RatFunc.one(ctx), RatFunc.zero(ctx)
        _require_shape(
            g[0][0] == one and g[1][0] == zero and g[1][1] == one,
            "additive embedding must be ((1, a), (0, 1))",
        )
        return ga_matrix(d_function(g[0][1]))
    if tag is GroupTag.AFF1:
        _require_shape(r == 2, "affine-group elements embed in GL_2")
        one, zero = RatFunc.one(ctx), RatFunc.zero(ctx)
        _require_shape(
            g[1][0] == zero and g[1][1] == one,
            "affine embedding must be ((f, f'), (0, 1))",
        )
        f, fp = g[0][0], g[0][1]
        if f.is_zero():
            raise ZeroUnit("affine element needs a nonzero unit part")
        finv = f.inv()
        omega = dlog_function(f)
        omega_prime = -(finv * d_function(fp))
        return aff1_matrix(omega, omega_prime)
    ginv = mat_inv(g)
    dg = [[d_function(entry) for entry in row] for row in g]
    entries = []
    for i in range(r):
        row = []
        for k in range(r):
            acc = OneForm.zero(ctx)
            for j in range(r):
                acc = acc + ginv[i][j] * dg[j][k]
            row.append(acc)
        entries.append(row)
    return MatrixOneForm(ctx, entries)


def curvature(omega: MatrixOneForm) -> MatrixTwoForm:
    """d(Omega) + Omega ^ Omega, entrywise."""
    ctx = omega.ctx
    r = omega.rank
    entries = []
    for i in range(r):
        row = []
        for k in range(r):
            acc = d_oneform(omega.entries[i][k])
            for j in range(r):
                acc = acc + wedge(omega.entries[i][j], omega.entries[j][k])
            row.append(acc)
        entries.append(row)
    return MatrixTwoForm(ctx, entries)


# ---------------------------------------------------------------- derivations

class Derivation:
    """Vector field D = sum_i f_i d/dx_i with rational coefficients."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: Context, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != ctx.nvars:
            raise ValueError("coefficient count does not match variable count")
        self.ctx = ctx
        self.coeffs = coeffs

    @classmethod
    def coordinate(cls, ctx: Context, i: int) -> Derivation:
        ctx.check_index(i)
        coeffs = [RatFunc.zero(ctx)] * ctx.nvars
        coeffs[i] = RatFunc.one(ctx)
        return cls(ctx, coeffs)

    def apply(self, f: RatFunc) -> RatFunc:
        out = RatFunc.zero(self.ctx)
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                out = out + c * f.partial(i)
        return out

    def __add__(self, other: Derivation) -> Derivation:
        return Derivation(self.ctx, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def scale(self, f: RatFunc) -> Derivation:
        return Derivation(self.ctx, [f * c for c in self.coeffs])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Derivation) and self.coeffs == other.coeffs

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __str__(self) -> str:
        names = [f"d/d{self.ctx.var_name(i)}" for i in range(self.ctx.nvars)]
        pieces = [
            name if c.is_one() else f"({c})*{name}"
            for c, name in zip(self.coeffs, names)
            if not c.is_zero()
        ]
        return " + ".join(pieces) if pieces else "0"


def derivation_p_power(d: Derivation) -> Derivation:
    """D^p, read off from p-fold application to the coordinate functions
    (a derivation of the polynomial ring is determined by those values)."""
    ctx = d.ctx
    out = []
    for j in range(ctx.nvars):
        value = RatFunc.variable(ctx, j)
        for _ in range(ctx.p):
            value = d.apply(value)
        out.append(value)
    return Derivation(ctx, out)


# ---------------------------------------------------------------- p-curvature

class PCurvature:
    """The values psi(d/dx_1)..psi(d/dx_n) of the p-curvature of a
    connection, as r x r matrices.

    Evaluation is p-linear through the Frobenius twist: at
    D = sum f_j d/dx_j the value is sum f_i^p psi_i.
    """

    __slots__ = ("ctx", "psi", "twisted")

    def __init__(self, ctx: Context, psi, twisted: bool = True):
        self.ctx = ctx
        self.psi = tuple(tuple(tuple(row) for row in m) for m in psi)
        self.twisted = twisted

    @property
    def rank(self) -> int:
        return len(self.psi[0])

    def component(self, i: int) -> Matrix:
        return self.psi[i]

    def at(self, d: Derivation) -> Matrix:
        ctx = self.ctx
        r = self.rank
        zero = RatFunc.zero(ctx)
        out = [[zero for _ in range(r)] for _ in range(r)]
        for i, coeff in enumerate(d.coeffs):
            if coeff.is_zero():
                continue
            cp = coeff**ctx.p
            for a in range(r):
                for b in range(r):
                    out[a][b] = out[a][b] + cp * self.psi[i][a][b]
        return tuple(tuple(row) for row in out)

    def is_zero(self) -> bool:
        return all(v.is_zero() for m in self.psi for row in m for v in row)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PCurvature) and self.psi == other.psi

    def __str__(self) -> str:
        ctx = self.ctx
        return "; ".join(
            f"psi(d/d{ctx.var_name(i)}) = [{format_matrix(m)}]" for i, m in enumerate(self.psi)
        )


def nabla_apply(omega: MatrixOneForm, d: Derivation, vector) -> tuple[RatFunc, ...]:
    """One application of nabla_D = D + Omega(D) to a column vector."""
    ctx = omega.ctx
    r = omega.rank
    coeff_matrices = [
        (omega.coefficient_matrix(i), c) for i, c in enumerate(d.coeffs) if not c.is_zero()
    ]
    out = []
    for a in range(r):
        acc = d.apply(vector[a])
        for mat, c in coeff_matrices:
            for b in range(r):
                if not vector[b].is_zero() and not mat[a][b].is_zero():
                    acc = acc + c * mat[a][b] * vector[b]
        out.append(acc)
    return tuple(out)


def nabla_power(omega: MatrixOneForm, d: Derivation, vector, k: int) -> tuple[RatFunc, ...]:
    v = tuple(vector)
    for _ in range(k):
        v = nabla_apply(omega, d, v)
    return v


def _common_denominator(omega: MatrixOneForm) -> Poly:
    s = Poly.one(omega.ctx)
    for row in omega.entries:
        for entry in row:
            for c in entry.coeffs:
                s = poly_lcm(s, c.den)
    return s


def _cleared_coefficient_matrix(omega: MatrixOneForm, i: int, s: Poly):
    """Polynomial matrix B with Omega(d/dx_i) = B / s."""
    return [
        [entry.coeffs[i].num * s.divexact(entry.coeffs[i].den) for entry in row]
        for row in omega.entries
    ]


def pcurvature_brute(omega: MatrixOneForm) -> PCurvature:
    """psi(d/dx_i) = (d/dx_i + A_i)^p by direct operator iteration on the
    standard basis columns; the s(D^p) term vanishes because coordinate
    derivations satisfy D^p = 0.

    The iteration runs on cleared numerators: with A_i = B/s the vector
    u/s^k steps to (s du/dx_i - k u ds/dx_i + B u) / s^(k+1), all
    polynomial, so the only fraction reduction is one per output entry.
    """
    ctx = omega.ctx
    p = ctx.p
    r = omega.rank
    s = _common_denominator(omega)
    s_p = s**p
    zero, one = Poly.zero(ctx), Poly.one(ctx)
    psi = []
    for i in range(ctx.nvars):
        b_mat = _cleared_coefficient_matrix(omega, i, s)
        ds = s.partial(i)
        cols = []
        for col in range(r):
            u = [one if a == col else zero for a in range(r)]
            for k in range(p):
                new = []
                for a in range(r):
                    acc = s * u[a].partial(i)
                    if k and not ds.is_zero():
                        acc = acc - (u[a] * ds).scale(k)
                    for c in range(r):
                        if not u[c].is_zero():
                            acc = acc + b_mat[a][c] * u[c]
                    new.append(acc)
                u = new
            cols.append([RatFunc(ua, s_p) for ua in u])
        psi.append(tuple(tuple(cols[col][a] for col in range(r)) for a in range(r)))
    return PCurvature(ctx, psi)


def pcurvature_at(omega: MatrixOneForm, d: Derivation) -> Matrix:
    """psi(D) = (nabla_D)^p - nabla_{D^p}, for an arbitrary vector field.

    D^p is computed exactly rather than assuming p-linearity, so
    non-flat connections can be probed too.  The p-fold iteration runs on
    cleared numerators over the common denominator s of Omega and D:
    u/s^k steps to (sum_j G_j (s d_j u - k u d_j s) + s C u) / s^(k+2)
    with G_j, C polynomial.
    """
    ctx = omega.ctx
    p = ctx.p
    r = omega.rank
    s = _common_denominator(omega)
    for c in d.coeffs:
        s = poly_lcm(s, c.den)
    # D = sum_j (G_j/s) d_j and Omega(D) = C/s^2 with C = sum_j G_j B_j.
    g_coeffs = [c.num * s.divexact(c.den) for c in d.coeffs]
    c_mat = [[Poly.zero(ctx) for _ in range(r)] for _ in range(r)]
    for j in range(ctx.nvars):
        if g_coeffs[j].is_zero():
            continue
        b_mat = _cleared_coefficient_matrix(omega, j, s)
        for a in range(r):
            for bcol in range(r):
                if not b_mat[a][bcol].is_zero():
                    c_mat[a][bcol] = c_mat[a][bcol] + g_coeffs[j] * b_mat[a][bcol]
    ds = [s.partial(j) for j in range(ctx.nvars)]
    zero, one = Poly.zero(ctx), Poly.one(ctx)
    power_cols = []
    for col in range(r):
        u = [one if a == col else zero for a in range(r)]
        k = 0
        for _ in range(p):
            new = []
            for a in range(r):
                acc = Poly.zero(ctx)
                for j in range(ctx.nvars):
                    if g_coeffs[j].is_zero():
                        continue
                    term = s * u[a].partial(j)
                    if k and not ds[j].is_zero():
                        term = term - (u[a] * ds[j]).scale(k)
                    acc = acc + g_coeffs[j] * term
                for c in range(r):
                    if not u[c].is_zero() and not c_mat[a][c].is_zero():
                        acc = acc + c_mat[a][c] * u[c]
                new.append(acc)
            u = new
            k += 2
        power_cols.append(u)
    s_k = s**k if k else Poly.one(ctx)
    power = tuple(
        tuple(RatFunc(power_cols[col][a], s_k) for col in range(r)) for a in range(r)
    )
    e = derivation_p_power(d)
    # nabla_E on a constant basis column is multiplication by Omega(E).
    omega_e = [[RatFunc.zero(ctx) for _ in range(r)] for _ in range(r)]
    for i, c in enumerate(e.coeffs):
        if c.is_zero():
            continue
        mat = omega.coefficient_matrix(i)
        for a in range(r):
            for b in range(r):
                omega_e[a][b] = omega_e[a][b] + c * mat[a][b]
    return tuple(
        tuple(power[a][b] - omega_e[a][b] for b in range(r)) for a in range(r)
    )


def pcurvature_abelian(omega: OneForm, tag: GroupTag) -> OneForm:
    """Closed formula for abelian structure groups: the p-power map on
    the Lie algebra minus the Cartier operator.

    For units (g_m) the Lie p-power map is the identity, giving
    omega - C(omega); for the additive group it is zero, giving
    -C(omega).  The output is the untwisted representative: the brute
    engine's psi components are recovered by substituting x_j -> x_j^p,
    which over F_p is the componentwise p-th power.
    """
    ctx = omega.ctx
    if ctx.p == 2:
        raise CharTwo("abelian p-curvature formula assumes characteristic != 2")
    if tag is GroupTag.G_M:
        if not is_closed(omega):
            raise NotClosed("abelian p-curvature formula requires a closed form")
        return omega - cartier(omega)
    if tag is GroupTag.G_A:
        if not is_closed(omega):
            raise NotClosed("abelian p-curvature formula requires a closed form")
        return -cartier(omega)
    raise NotAbelian(f"tag {tag.value} is not abelian")


def rank1_pcurvature_oracle(omega: OneForm) -> RatFunc:
    """Independent rank-1, one-variable oracle: for nabla = d + a dx,
    psi(d/dx) = a^p + d^(p-1) a / dx^(p-1)."""
    ctx = omega.ctx
    if ctx.nvars != 1:
        raise ValueError("the rank-1 oracle needs exactly one variable")
    a = omega.coeffs[0]
    deriv = a
    for _ in range(ctx.p - 1):
        deriv = deriv.partial(0)
    return a.frobenius() + deriv
