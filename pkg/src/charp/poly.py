"""Exact sparse multivariate polynomials over F_p.

A polynomial is a dict mapping exponent tuples (one entry per ambient
variable) to nonzero residues in {1, .., p-1}; the zero polynomial is
the empty dict.  All arithmetic is exact; no floating point, no
probabilistic shortcuts anywhere.

The canonical term order is graded lexicographic (total degree first,
then lex on the exponent tuple).  "Monic" and "leading coefficient"
below always refer to this order.

Two F_p-specific facts are used throughout and are worth naming once:

* Frobenius is the identity on coefficients, so f(x)^p = f applied to
  x_j^p, i.e. raising to the p gives the same terms with exponents
  scaled by p.
* Consequently every coefficient is its own p-th root, and f has a
  p-th root iff every exponent is divisible by p.
"""

from __future__ import annotations

import itertools
from typing import Iterator

from .context import Context
from .errors import DivisionNotExact, NotAPthPower, ZeroDivisor

Exponent = tuple[int, ...]


def grlex_key(exp: Exponent) -> tuple[int, Exponent]:
    return (sum(exp), exp)


class Poly:
    """Immutable sparse polynomial over F_p (treat instances as frozen)."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: Context, terms: dict[Exponent, int], _normalized: bool = False):
        if not _normalized:
            p = ctx.p
            clean: dict[Exponent, int] = {}
            for exp, c in terms.items():
                c %= p
                if c:
                    clean[exp] = c
            terms = clean
        self.ctx = ctx
        self.terms = terms

    # ------------------------------------------------------------ builders

    @classmethod
    def zero(cls, ctx: Context) -> Poly:
        return cls(ctx, {}, _normalized=True)

    @classmethod
    def const(cls, ctx: Context, c: int) -> Poly:
        c %= ctx.p
        if c == 0:
            return cls.zero(ctx)
        return cls(ctx, {(0,) * ctx.nvars: c}, _normalized=True)

    @classmethod
    def one(cls, ctx: Context) -> Poly:
        return cls.const(ctx, 1)

    @classmethod
    def variable(cls, ctx: Context, i: int) -> Poly:
        ctx.check_index(i)
        exp = [0] * ctx.nvars
        exp[i] = 1
        return cls(ctx, {tuple(exp): 1}, _normalized=True)

    @classmethod
    def monomial(cls, ctx: Context, exps, c: int = 1) -> Poly:
        return cls(ctx, {tuple(exps): c})

    # ------------------------------------------------------------ basics

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> int:
        """Value of a constant polynomial as a residue."""
        if self.is_zero():
            return 0
        [(exp, c)] = self.terms.items()
        if any(exp):
            raise ValueError("not a constant polynomial")
        return c

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def degree_in(self, i: int) -> int:
        if not self.terms:
            return 0
        return max(e[i] for e in self.terms)

    def variables_present(self) -> tuple[int, ...]:
        present = set()
        for exp in self.terms:
            for i, e in enumerate(exp):
                if e:
                    present.add(i)
        return tuple(sorted(present))

    def leading(self) -> tuple[Exponent, int]:
        """Grlex-leading (exponent, coefficient)."""
        if not self.terms:
            raise ZeroDivisor("zero polynomial has no leading term")
        exp = max(self.terms, key=grlex_key)
        return exp, self.terms[exp]

    def monic(self) -> Poly:
        """Scale so the grlex-leading coefficient is 1."""
        if self.is_zero():
            return self
        _, lc = self.leading()
        if lc == 1:
            return self
        return self.scale(self.ctx.inv(lc))

    def monomial_content(self) -> Exponent:
        """Componentwise minimum exponent over all terms."""
        if not self.terms:
            return (0,) * self.ctx.nvars
        mins = None
        for exp in self.terms:
            if mins is None:
                mins = list(exp)
            else:
                for i, e in enumerate(exp):
                    if e < mins[i]:
                        mins[i] = e
            if not any(mins):
                break
        return tuple(mins)

    def shift_down(self, exps: Exponent) -> Poly:
        """Divide by the monomial x^exps (which must divide every term)."""
        if not any(exps):
            return self
        return Poly(
            self.ctx,
            {tuple(e - s for e, s in zip(exp, exps)): c for exp, c in self.terms.items()},
            _normalized=True,
        )

    def scale(self, c: int) -> Poly:
        p = self.ctx.p
        c %= p
        if c == 0:
            return Poly.zero(self.ctx)
        if c == 1:
            return self
        return Poly(self.ctx, {e: (v * c) % p for e, v in self.terms.items()}, _normalized=True)

    # ------------------------------------------------------------ arithmetic

    def _check(self, other: Poly) -> None:
        if self.ctx != other.ctx:
            raise ValueError("mixed computation contexts")

    def __add__(self, other: Poly) -> Poly:
        self._check(other)
        p = self.ctx.p
        out = dict(self.terms)
        for exp, c in other.terms.items():
            v = (out.get(exp, 0) + c) % p
            if v:
                out[exp] = v
            elif exp in out:
                del out[exp]
        return Poly(self.ctx, out, _normalized=True)

    def __sub__(self, other: Poly) -> Poly:
        self._check(other)
        p = self.ctx.p
        out = dict(self.terms)
        for exp, c in other.terms.items():
            v = (out.get(exp, 0) - c) % p
            if v:
                out[exp] = v
            elif exp in out:
                del out[exp]
        return Poly(self.ctx, out, _normalized=True)

    def __neg__(self) -> Poly:
        return self.scale(self.ctx.p - 1)

    def __mul__(self, other: Poly) -> Poly:
        self._check(other)
        p = self.ctx.p
        a, b = self.terms, other.terms
        if not a or not b:
            return Poly.zero(self.ctx)
        if len(a) > len(b):
            a, b = b, a
        out: dict[Exponent, int] = {}
        get = out.get
        for ea, ca in a.items():
            for eb, cb in b.items():
                exp = tuple(x + y for x, y in zip(ea, eb))
                v = (get(exp, 0) + ca * cb) % p
                if v:
                    out[exp] = v
                elif exp in out:
                    del out[exp]
        return Poly(self.ctx, out, _normalized=True)

    def __pow__(self, e: int) -> Poly:
        if e < 0:
            raise ValueError("negative exponent on a polynomial")
        if e == 0:
            return Poly.one(self.ctx)
        # Write e in base p: f^(p^k) is just exponent scaling (Frobenius
        # fixes F_p coefficients), so only the base-p digits cost
        # genuine multiplications.
        p = self.ctx.p
        result = Poly.one(self.ctx)
        base = self
        while e:
            e, d = divmod(e, p)
            if d:
                result = result * _small_pow(base, d)
            if e:
                base = base.exp_scale(p)
        return result

    def exp_scale(self, k: int) -> Poly:
        """Multiply every exponent by k; equals f^k when k is a power of p."""
        if k == 1 or self.is_zero():
            return self
        return Poly(
            self.ctx,
            {tuple(x * k for x in exp): c for exp, c in self.terms.items()},
            _normalized=True,
        )

    def frobenius(self) -> Poly:
        """f^p, computed by exponent scaling."""
        return self.exp_scale(self.ctx.p)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Poly) and self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.ctx, tuple(sorted(self.terms.items()))))

    # ------------------------------------------------------------ calculus

    def partial(self, i: int) -> Poly:
        """Partial derivative with respect to variable i (0-based)."""
        self.ctx.check_index(i)
        p = self.ctx.p
        out: dict[Exponent, int] = {}
        for exp, c in self.terms.items():
            a = exp[i]
            v = (c * a) % p
            if v:
                e = list(exp)
                e[i] = a - 1
                out[tuple(e)] = v
        return Poly(self.ctx, out, _normalized=True)

    # ------------------------------------------------------------ p-th powers

    def p_basis_decompose(self) -> dict[Exponent, Poly]:
        """Write f = sum over alpha in {0..p-1}^n of g_alpha^p * x^alpha.

        Returns {alpha: g_alpha} with zero components omitted.  Each
        monomial c*x^beta is routed to alpha = beta mod p with quotient
        exponent beta div p; over F_p the coefficient is its own p-th
        root.
        """
        p = self.ctx.p
        out: dict[Exponent, dict[Exponent, int]] = {}
        for exp, c in self.terms.items():
            alpha = tuple(e % p for e in exp)
            gamma = tuple(e // p for e in exp)
            out.setdefault(alpha, {})[gamma] = c
        return {
            alpha: Poly(self.ctx, terms, _normalized=True)
            for alpha, terms in sorted(out.items())
        }

    def p_power_part(self, alpha: Exponent) -> Poly:
        """The single component g_alpha of p_basis_decompose, computed directly."""
        p = self.ctx.p
        out: dict[Exponent, int] = {}
        for exp, c in self.terms.items():
            if all(e % p == a for e, a in zip(exp, alpha)):
                out[tuple(e // p for e in exp)] = c
        return Poly(self.ctx, out, _normalized=True)

    def pth_root(self) -> Poly:
        """g with g^p = f.  Exists iff every exponent is divisible by p."""
        p = self.ctx.p
        out: dict[Exponent, int] = {}
        for exp, c in self.terms.items():
            if any(e % p for e in exp):
                raise NotAPthPower(f"exponent {exp} not divisible by {p}")
            out[tuple(e // p for e in exp)] = c
        return Poly(self.ctx, out, _normalized=True)

    # ------------------------------------------------------------ division

    def divexact(self, other: Poly) -> Poly:
        """Exact quotient self / other; DivisionNotExact if it does not divide.

        Single-divisor grlex division: when the quotient exists the
        leading term of every partial remainder is divisible by the
        divisor's leading term, so hitting a non-divisible leading term
        proves non-divisibility.
        """
        self._check(other)
        if other.is_zero():
            raise ZeroDivisor("exact division by zero")
        if self.is_zero():
            return Poly.zero(self.ctx)
        if other.is_constant():
            return self.scale(self.ctx.inv(other.constant_value()))
        p = self.ctx.p
        exp_b, lc_b = other.leading()
        inv_lcb = self.ctx.inv(lc_b)
        rem = dict(self.terms)
        quot: dict[Exponent, int] = {}
        while rem:
            exp_r = max(rem, key=grlex_key)
            diff = tuple(a - b for a, b in zip(exp_r, exp_b))
            if any(d < 0 for d in diff):
                raise DivisionNotExact("remainder leading term not divisible")
            cq = (rem[exp_r] * inv_lcb) % p
            quot[diff] = cq
            for exp, c in other.terms.items():
                tgt = tuple(a + b for a, b in zip(diff, exp))
                v = (rem.get(tgt, 0) - cq * c) % p
                if v:
                    rem[tgt] = v
                elif tgt in rem:
                    del rem[tgt]
        return Poly(self.ctx, quot, _normalized=True)

    def divides(self, other: Poly) -> bool:
        """True iff self divides other exactly."""
        try:
            other.divexact(self)
            return True
        except DivisionNotExact:
            return False

    # ------------------------------------------------------------ in main var

    def coeff_in(self, v: int, k: int) -> Poly:
        """Coefficient of x_v^k, as a polynomial with the v-slot zeroed."""
        out: dict[Exponent, int] = {}
        for exp, c in self.terms.items():
            if exp[v] == k:
                e = list(exp)
                e[v] = 0
                out[tuple(e)] = c
        return Poly(self.ctx, out, _normalized=True)

    def coeffs_in(self, v: int) -> Iterator[tuple[int, Poly]]:
        degs = sorted({exp[v] for exp in self.terms})
        for k in degs:
            yield k, self.coeff_in(v, k)

    def shift_in(self, v: int, k: int) -> Poly:
        """Multiply by x_v^k."""
        if k == 0 or self.is_zero():
            return self
        out = {}
        for exp, c in self.terms.items():
            e = list(exp)
            e[v] += k
            out[tuple(e)] = c
        return Poly(self.ctx, out, _normalized=True)

    # ------------------------------------------------------------ printing

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        ctx = self.ctx
        pieces = []
        for exp in sorted(self.terms, key=grlex_key, reverse=True):
            c = self.terms[exp]
            factors = []
            if c != 1 or not any(exp):
                factors.append(str(c))
            for i, e in enumerate(exp):
                if e == 1:
                    factors.append(ctx.var_name(i))
                elif e > 1:
                    factors.append(f"{ctx.var_name(i)}^{e}")
            pieces.append("*".join(factors))
        return " + ".join(pieces)

    def __repr__(self) -> str:
        return f"Poly({self}, p={self.ctx.p})"


def _small_pow(f: Poly, d: int) -> Poly:
    """f^d for 0 <= d < p by binary exponentiation."""
    result = None
    base = f
    while d:
        if d & 1:
            result = base if result is None else result * base
        d >>= 1
        if d:
            base = base * base
    return Poly.one(f.ctx) if result is None else result


# ---------------------------------------------------------------- dense univariate kernel
#
# Coefficient lists over F_p (index = degree, no trailing zeros), used by
# the univariate and bivariate gcd fast paths.

def _u_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _u_sub_scaled(a: list[int], b: list[int], c: int, shift: int, p: int) -> list[int]:
    """a - c * x^shift * b, in place on a copy of a."""
    out = a + [0] * max(0, shift + len(b) - len(a))
    for i, bi in enumerate(b):
        if bi:
            out[i + shift] = (out[i + shift] - c * bi) % p
    return _u_trim(out)


def _u_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = (out[i + j] + ai * bj) % p
    return _u_trim(out)


def _u_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    """Monic Euclid on dense lists."""
    a, b = _u_trim(list(a)), _u_trim(list(b))
    while b:
        inv = pow(b[-1], p - 2, p)
        while len(a) >= len(b):
            factor = (a[-1] * inv) % p
            a = _u_sub_scaled(a, b, factor, len(a) - len(b), p)
            if not a:
                break
        a, b = b, a
    inv = pow(a[-1], p - 2, p)
    return [(c * inv) % p for c in a]


def _u_divexact(a: list[int], b: list[int], p: int) -> list[int]:
    """Exact quotient of dense univariate lists (b must divide a)."""
    if not a:
        return []
    inv = pow(b[-1], p - 2, p)
    rem = list(a)
    quot = [0] * (len(a) - len(b) + 1)
    while rem:
        if len(rem) < len(b):
            raise DivisionNotExact("univariate division not exact")
        factor = (rem[-1] * inv) % p
        quot[len(rem) - len(b)] = factor
        rem = _u_sub_scaled(rem, b, factor, len(rem) - len(b), p)
    return _u_trim(quot)


# ---------------------------------------------------------------- bivariate gcd
#
# Euclid in the top variable with coefficients in F_p[y].  Raw
# pseudo-remainder sequences blow up the coefficient degrees
# (multiplying by lc^(deg difference) at every stage), so the content in
# y is stripped after every single elimination step; stripping costs
# only cheap univariate gcds and keeps the growth linear.

def _biv_dense(f: Poly, vx: int, vy: int) -> list[list[int]]:
    """Rows indexed by x-degree, each a dense list in y."""
    rows: list[list[int]] = [[] for _ in range(f.degree_in(vx) + 1)]
    for exp, c in f.terms.items():
        row = rows[exp[vx]]
        j = exp[vy]
        if len(row) <= j:
            row.extend([0] * (j + 1 - len(row)))
        row[j] = c
    return [(_u_trim(r)) for r in rows]


def _biv_poly(rows: list[list[int]], ctx, vx: int, vy: int) -> Poly:
    terms: dict[Exponent, int] = {}
    base = [0] * ctx.nvars
    for i, row in enumerate(rows):
        for j, c in enumerate(row):
            if c:
                e = list(base)
                e[vx], e[vy] = i, j
                terms[tuple(e)] = c
    return Poly(ctx, terms, _normalized=True)


def _biv_trim(rows: list[list[int]]) -> list[list[int]]:
    while rows and not rows[-1]:
        rows.pop()
    return rows


def _biv_content(rows: list[list[int]], p: int) -> list[int]:
    g: list[int] = []
    for row in rows:
        if row:
            g = _u_gcd(g, row, p) if g else _u_gcd(row, row, p)
            if len(g) == 1:
                return [1]
    return g if g else []


def _biv_strip(rows: list[list[int]], p: int) -> list[list[int]]:
    """Divide out the y-content; returns a primitive (in y) poly."""
    rows = _biv_trim(rows)
    if not rows:
        return rows
    g = _biv_content(rows, p)
    if len(g) == 1:
        if g[0] != 1:
            inv = pow(g[0], p - 2, p)
            return [[(c * inv) % p for c in row] for row in rows]
        return rows
    return [_u_divexact(row, g, p) if row else [] for row in rows]


def _gcd_bivariate(a: Poly, b: Poly, vx: int, vy: int) -> Poly:
    ctx = a.ctx
    p = ctx.p
    ra, rb = _biv_dense(a, vx, vy), _biv_dense(b, vx, vy)
    cont_a, cont_b = _biv_content(ra, p), _biv_content(rb, p)
    cont = _u_gcd(cont_a, cont_b, p)
    ra, rb = _biv_strip(ra, p), _biv_strip(rb, p)
    if len(ra) < len(rb):
        ra, rb = rb, ra
    while rb:
        if len(rb) == 1:
            # Primitive and free of x: the primitive-part gcd is 1.
            ra = [[1]]
            break
        r = ra
        while len(r) >= len(rb):
            lc_r, lc_b = r[-1], rb[-1]
            shift = len(r) - len(rb)
            # r <- lc_b * r - lc_r * x^shift * b, then strip the content.
            new = [_u_mul(row, lc_b, p) for row in r]
            for i, row in enumerate(rb):
                tgt = i + shift
                sub = _u_mul(row, lc_r, p)
                merged = new[tgt] + [0] * max(0, len(sub) - len(new[tgt]))
                for j, c in enumerate(sub):
                    if c:
                        merged[j] = (merged[j] - c) % p
                new[tgt] = _u_trim(merged)
            r = _biv_strip(new, p)
            if not r:
                break
        ra, rb = rb, r
    rows = _biv_strip(ra, p)
    result = _biv_poly(rows, ctx, vx, vy)
    if len(cont) > 1 or (cont and cont[0] != 1):
        e = [0] * ctx.nvars
        cont_terms = {}
        for j, c in enumerate(cont):
            if c:
                ee = list(e)
                ee[vy] = j
                cont_terms[tuple(ee)] = c
        result = result * Poly(ctx, cont_terms, _normalized=True)
    return result.monic()


# ---------------------------------------------------------------- gcd / lcm

def _univariate_var(f: Poly) -> int | None:
    """The unique variable f depends on, or None if constant or multivariate."""
    vs = f.variables_present()
    return vs[0] if len(vs) == 1 else None


def _eval_except(f: Poly, v: int, point: dict[int, int]) -> list[int]:
    """Evaluate all variables but v at the point; dense list in v."""
    p = f.ctx.p
    out = [0] * (f.degree_in(v) + 1)
    for exp, c in f.terms.items():
        val = c
        for j, e in enumerate(exp):
            if j != v and e:
                base = point[j]
                if base == 0:
                    val = 0
                    break
                val = (val * pow(base, e, p)) % p
        if val:
            out[exp[v]] = (out[exp[v]] + val) % p
    return _u_trim(out)


def _coprime_by_evaluation(a: Poly, b: Poly, v: int, others) -> bool:
    """Exact one-sided test: True certifies that the v-primitive parts of
    a and b are coprime.

    At a point where both leading v-coefficients survive, any common
    factor g would keep its v-degree under evaluation (its leading
    coefficient divides the surviving one), so a constant evaluated gcd
    forces deg_v(g) = 0.  False means only 'inconclusive'."""
    p = a.ctx.p
    da, db = a.degree_in(v), b.degree_in(v)
    # Nonzero coordinates first; the all-zero corner kills most leading
    # coefficients.
    coords = list(range(1, p)) + [0]
    attempts = 0
    for point_vals in itertools.product(coords, repeat=len(others)):
        if attempts >= 16:
            break
        attempts += 1
        point = dict(zip(others, point_vals))
        ea = _eval_except(a, v, point)
        if len(ea) != da + 1:
            continue
        eb = _eval_except(b, v, point)
        if len(eb) != db + 1:
            continue
        if len(_u_gcd(ea, eb, p)) == 1:
            return True
    return False


def _euclid_univariate(a: Poly, b: Poly, v: int) -> Poly:
    """Dense monic Euclid for polynomials in the single variable v."""
    ctx = a.ctx
    p = ctx.p

    def to_list(f: Poly) -> list[int]:
        out = [0] * (f.degree_in(v) + 1)
        for exp, c in f.terms.items():
            out[exp[v]] = c
        return out

    fa, fb = to_list(a), to_list(b)
    while any(fb):
        while fb and fb[-1] == 0:
            fb.pop()
        if len(fa) < len(fb):
            fa, fb = fb, fa
            continue
        inv_lead = pow(fb[-1], p - 2, p)
        shift = len(fa) - len(fb)
        factor = (fa[-1] * inv_lead) % p
        for i in range(len(fb)):
            fa[i + shift] = (fa[i + shift] - factor * fb[i]) % p
        while fa and fa[-1] == 0:
            fa.pop()
        if len(fa) < len(fb):
            fa, fb = fb, fa
    inv_lead = pow(fa[-1], p - 2, p)
    terms: dict[Exponent, int] = {}
    for k, c in enumerate(fa):
        if c:
            e = [0] * ctx.nvars
            e[v] = k
            terms[tuple(e)] = (c * inv_lead) % p
    return Poly(ctx, terms, _normalized=True)


def _content_in(f: Poly, v: int) -> Poly:
    g = Poly.zero(f.ctx)
    for _, c in f.coeffs_in(v):
        g = poly_gcd(g, c)
        if g.is_constant() and not g.is_zero():
            return Poly.one(f.ctx)
    return g


def _strip_content(f: Poly, v: int) -> Poly:
    """Divide out the content with respect to v (monic-normalized)."""
    if f.is_zero():
        return f
    cont = _content_in(f, v)
    if cont.is_constant():
        return f.monic()
    return f.divexact(cont).monic()


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over F_p.

    Dispatch: dense Euclid for univariate pairs, then per-variable
    coprimality certificates by evaluation (proving the gcd free of a
    variable reduces the problem to contents; proving it free of every
    variable proves it constant), then a content-stripped Euclid in a
    cheapest remaining variable.  Exact throughout - the evaluation
    step only ever *certifies* coprimality, never assumes it.
    """
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.is_constant() or b.is_constant():
        return Poly.one(a.ctx)
    # Pull the monomial contents out first: they are free to find and
    # shrink everything downstream (certificates, contents, Euclid).
    mono_a, mono_b = a.monomial_content(), b.monomial_content()
    if any(mono_a) or any(mono_b):
        common = tuple(min(ea, eb) for ea, eb in zip(mono_a, mono_b))
        g = poly_gcd(a.shift_down(mono_a), b.shift_down(mono_b))
        if any(common):
            g = g * Poly.monomial(a.ctx, common)
        return g.monic()
    va, vb = _univariate_var(a), _univariate_var(b)
    if va is not None and va == vb:
        return _euclid_univariate(a, b, va)
    present = sorted(set(a.variables_present()) | set(b.variables_present()))
    shared = sorted(set(a.variables_present()) & set(b.variables_present()))
    for v in present:
        if v not in shared:
            # gcd cannot involve a variable absent from one side.
            ca = a if a.degree_in(v) == 0 else _content_in(a, v)
            cb = b if b.degree_in(v) == 0 else _content_in(b, v)
            return poly_gcd(ca, cb)
    for v in present:
        others = tuple(j for j in present if j != v)
        if _coprime_by_evaluation(a, b, v, others):
            # gcd is v-free, hence a common divisor of the v-contents.
            return poly_gcd(_content_in(a, v), _content_in(b, v))
    if len(present) == 2:
        return _gcd_bivariate(a, b, present[1], present[0])
    v = min(present, key=lambda j: a.degree_in(j) + b.degree_in(j))
    cont_a, cont_b = _content_in(a, v), _content_in(b, v)
    pa = a.divexact(cont_a) if not cont_a.is_constant() else a
    pb = b.divexact(cont_b) if not cont_b.is_constant() else b
    if pa.degree_in(v) < pb.degree_in(v):
        pa, pb = pb, pa
    # Euclid in v with the content stripped after every single
    # elimination step; accumulating pseudo-remainder multipliers
    # instead would blow the coefficient degrees up.
    while not pb.is_zero():
        if pb.degree_in(v) == 0:
            pa = Poly.one(a.ctx)
            break
        db = pb.degree_in(v)
        lc_b = pb.coeff_in(v, db)
        r = pa
        while not r.is_zero():
            dr = r.degree_in(v)
            if dr < db:
                break
            lc_r = r.coeff_in(v, dr)
            r = lc_b * r - (lc_r * pb).shift_in(v, dr - db)
            r = _strip_content(r, v)
        pa, pb = pb, r
    return (poly_gcd(cont_a, cont_b) * _strip_content(pa, v)).monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        return Poly.zero(a.ctx)
    g = poly_gcd(a, b)
    return (a * b.divexact(g)).monic()


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    """Dispatch helper: op in {'add', 'sub', 'mul', 'divexact'}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "divexact":
        return a.divexact(b)
    raise ValueError(f"unknown op {op!r}")
