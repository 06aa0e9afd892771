"""Randomized cross-check batteries tying the independent computation
routes together.

Each battery draws seeded random instances and compares two ways of
computing the same thing (extraction vs closed formula, classifier vs
brute-force p-curvature, boundary construction vs logarithmic
derivative, ...).  Counts are parameters: the CLI runs reduced trial
counts by default, the acceptance suite runs the full ones.

All batteries are deterministic functions of their seed.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .cartier import cartier, cartier_1var_oracle, gamma
from .connections import (
    Derivation,
    GroupTag,
    MatrixOneForm,
    aff1_matrix,
    curvature,
    derivation_p_power,
    ga_matrix,
    mat_mul,
    maurer_cartan,
    pcurvature_abelian,
    pcurvature_at,
    pcurvature_brute,
    rank1_pcurvature_oracle,
)
from .context import Context
from .forms import OneForm, d_function, dlog_function
from .poly import Poly
from .randgen import (
    linear_pool,
    random_closed_form,
    random_dlog_form,
    random_oneform,
    random_poly,
    random_ratfunc,
    random_unit,
)
from .ratfunc import RatFunc
from .torsorlab import (
    ChartWitness,
    boundary_torsor,
    chart_from_denominators,
    classify_aff1,
    classify_alpha_p,
    classify_mu_p,
    kummer_cocycle,
)


@dataclass
class BatteryResult:
    name: str
    trials: int
    failures: int
    seconds: float
    notes: str = ""
    examples: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        note = f"  [{self.notes}]" if self.notes else ""
        return (
            f"{status} {self.name}: {self.trials} trials, "
            f"{self.failures} failures, {self.seconds:.2f}s{note}"
        )


class _Recorder:
    def __init__(self, name: str):
        self.name = name
        self.trials = 0
        self.failures = 0
        self.examples: list[str] = []
        self.start = time.perf_counter()

    def check(self, ok: bool, describe: str) -> None:
        self.trials += 1
        if not ok:
            self.failures += 1
            if len(self.examples) < 5:
                self.examples.append(describe)

    def result(self, notes: str = "") -> BatteryResult:
        return BatteryResult(
            self.name,
            self.trials,
            self.failures,
            time.perf_counter() - self.start,
            notes,
            self.examples,
        )


def _per(total: int, parts: int) -> int:
    """Split a trial budget over configurations, rounding up."""
    return -(-total // parts)


def _rng(seed: int, salt: int) -> random.Random:
    return random.Random(seed * 1_000_003 + salt)


# ---------------------------------------------------------------- batteries

def battery_cartier_identities(
    seed: int, trials: int = 200, ps=(3, 5, 7), nvars=(1, 2)
) -> BatteryResult:
    """C(df) = 0, C(dlog f) = dlog f, C(gamma(eta)) = eta, and
    semilinearity C(h^p w) = h C(w)."""
    rec = _Recorder("cartier-identities")
    for salt, (p, n) in enumerate((p, n) for p in ps for n in nvars):
        ctx = Context(p, n)
        rng = _rng(seed, salt)
        pool = linear_pool(ctx)
        deg = 6 if n == 1 else 3
        for _ in range(trials):
            f = random_ratfunc(rng, ctx, pool, max_degree=deg, nonzero=True)
            rec.check(cartier(d_function(f)).is_zero(), f"C(df) != 0 for f={f}, p={p}")
            dl = dlog_function(f)
            rec.check(cartier(dl) == dl, f"C(dlog f) != dlog f for f={f}, p={p}")
            eta = random_oneform(rng, ctx, pool, max_degree=2, max_terms=2)
            rec.check(cartier(gamma(eta)) == eta, f"C(gamma) != id at eta={eta}, p={p}")
            omega = random_closed_form(rng, ctx, pool, max_degree=deg)
            h = random_ratfunc(rng, ctx, pool, max_degree=2, max_terms=2)
            lhs = cartier(h.frobenius() * omega)
            rhs = h * cartier(omega)
            rec.check(lhs == rhs, f"semilinearity broke at h={h}, p={p}, n={n}")
    return rec.result()


def battery_univariate_oracle(seed: int, trials: int = 500, ps=(3, 5, 7)) -> BatteryResult:
    """Extraction Cartier vs the classical one-variable derivative formula,
    including the Wilson instance x^(p-1) dx -> dx."""
    rec = _Recorder("cartier-univariate-oracle")
    for salt, p in enumerate(ps):
        ctx = Context(p, 1)
        rng = _rng(seed, 100 + salt)
        pool = linear_pool(ctx)
        wilson = OneForm(ctx, [RatFunc.from_poly(Poly.variable(ctx, 0) ** (p - 1))])
        dx = OneForm.dx(ctx, 0)
        rec.check(cartier(wilson) == dx, f"Wilson case failed for p={p}")
        rec.check(cartier_1var_oracle(wilson) == dx, f"Wilson oracle failed for p={p}")
        per = _per(trials, len(ps))
        for _ in range(per):
            omega = random_oneform(rng, ctx, pool, max_degree=6, max_terms=4)
            rec.check(
                cartier(omega) == cartier_1var_oracle(omega),
                f"oracle mismatch at {omega}, p={p}",
            )
    return rec.result()


def battery_mu_p_equivalence(
    seed: int, trials: int = 300, dlog_trials: int = 100, ps=(3, 5, 7), nvars=(1, 2)
) -> BatteryResult:
    """classify_mu_p accepts iff the brute p-curvature of d + omega is 0."""
    rec = _Recorder("mu-p-equivalence")
    configs = [(p, n) for p in ps for n in nvars]
    for salt, (p, n) in enumerate(configs):
        ctx = Context(p, n)
        rng = _rng(seed, 200 + salt)
        pool = linear_pool(ctx)
        for _ in range(_per(trials, len(configs))):
            omega = random_closed_form(rng, ctx, pool, max_degree=2)
            verdict = classify_mu_p(omega)
            psi = pcurvature_brute(MatrixOneForm.scalar(omega))
            rec.check(
                verdict.accepted == psi.is_zero(),
                f"mu_p disagreement at {omega}, p={p}, n={n}",
            )
        for _ in range(_per(dlog_trials, len(configs))):
            omega, _f = random_dlog_form(rng, ctx, pool)
            verdict = classify_mu_p(omega)
            psi = pcurvature_brute(MatrixOneForm.scalar(omega))
            rec.check(
                verdict.accepted and psi.is_zero(),
                f"dlog form rejected or psi != 0 at {omega}, p={p}, n={n}",
            )
    return rec.result()


def battery_alpha_p_equivalence(
    seed: int, trials: int = 300, exact_trials: int = 100, ps=(3, 5, 7), nvars=(1, 2)
) -> BatteryResult:
    """classify_alpha_p vs brute p-curvature of the GL_2-embedded additive
    connection; antiderivatives are verified by differentiating back."""
    rec = _Recorder("alpha-p-equivalence")
    configs = [(p, n) for p in ps for n in nvars]
    for salt, (p, n) in enumerate(configs):
        ctx = Context(p, n)
        rng = _rng(seed, 300 + salt)
        pool = linear_pool(ctx)
        instances = [
            random_closed_form(rng, ctx, pool, max_degree=2)
            for _ in range(_per(trials, len(configs)))
        ] + [
            random_closed_form(rng, ctx, pool, max_degree=3, exact_only=True)
            for _ in range(_per(exact_trials, len(configs)))
        ]
        for omega in instances:
            verdict = classify_alpha_p(omega)
            psi = pcurvature_brute(ga_matrix(omega))
            rec.check(
                verdict.accepted == psi.is_zero(),
                f"alpha_p disagreement at {omega}, p={p}, n={n}",
            )
            if verdict.accepted:
                rec.check(
                    d_function(verdict.primitive) == omega,
                    f"antiderivative check failed at {omega}, p={p}, n={n}",
                )
    return rec.result()


def battery_abelian_formula(
    seed: int, trials: int = 300, ps=(3, 5, 7), nvars=(1, 2)
) -> BatteryResult:
    """The Cartier-based closed formula matches the brute engine after the
    p-th-power substitution, for both abelian tags."""
    rec = _Recorder("abelian-pcurvature-formula")
    configs = [(p, n) for p in ps for n in nvars]
    for salt, (p, n) in enumerate(configs):
        ctx = Context(p, n)
        rng = _rng(seed, 400 + salt)
        pool = linear_pool(ctx)
        for _ in range(_per(trials, len(configs))):
            omega = random_closed_form(rng, ctx, pool, max_degree=2)
            eta_m = pcurvature_abelian(omega, GroupTag.G_M)
            brute_m = pcurvature_brute(MatrixOneForm.scalar(omega))
            ok_m = all(
                brute_m.component(i)[0][0] == eta_m.coeffs[i].frobenius()
                for i in range(n)
            )
            rec.check(ok_m, f"g_m formula mismatch at {omega}, p={p}, n={n}")
            eta_a = pcurvature_abelian(omega, GroupTag.G_A)
            brute_a = pcurvature_brute(ga_matrix(omega))
            ok_a = all(
                brute_a.component(i)[0][1] == eta_a.coeffs[i].frobenius()
                and brute_a.component(i)[0][0].is_zero()
                and brute_a.component(i)[1][0].is_zero()
                and brute_a.component(i)[1][1].is_zero()
                for i in range(n)
            )
            rec.check(ok_a, f"g_a formula mismatch at {omega}, p={p}, n={n}")
    return rec.result()


def battery_aff1_classifier(
    seed: int, mc_trials: int = 200, pair_trials: int = 200, ps=(3, 5), nvars=(1, 2)
) -> BatteryResult:
    """(a) logarithmic-derivative pairs are accepted with zero brute psi;
    (b) on constructed flat C-fixed pairs the verdict agrees with
    (brute psi = 0 and flat) whenever a witness is found.  The no-witness
    fraction is recorded in the notes and must stay under 5%."""
    rec = _Recorder("aff1-classifier")
    configs = [(p, n) for p in ps for n in nvars]
    no_witness = 0
    pair_total = 0
    for salt, (p, n) in enumerate(configs):
        ctx = Context(p, n)
        rng = _rng(seed, 500 + salt)
        pool = linear_pool(ctx)
        for _ in range(_per(mc_trials, len(configs))):
            f = random_unit(rng, ctx, pool, max_factors=2)
            fp = random_ratfunc(rng, ctx, pool, max_degree=2)
            g = (
                (f, fp),
                (RatFunc.zero(ctx), RatFunc.one(ctx)),
            )
            mc = maurer_cartan(g, GroupTag.AFF1)
            omega, omega_prime = mc.entries[0][0], mc.entries[0][1]
            charts = [chart_from_denominators(omega, pool)]
            verdict = classify_aff1(omega, omega_prime, charts)
            psi = pcurvature_brute(mc)
            rec.check(
                verdict.accepted and psi.is_zero(),
                f"dlog pair rejected or psi != 0 at f={f}, f'={fp}, p={p}, n={n}",
            )
        for _ in range(_per(pair_trials, len(configs))):
            omega, f = random_dlog_form(rng, ctx, pool)
            # d(omega') + omega ^ omega' = 0 iff f*omega' is closed, so
            # build omega' = (closed form)/f; an exact numerator makes
            # condition three hold, a gamma part breaks it.
            exact_only = rng.random() < 0.5
            eta = random_closed_form(rng, ctx, pool, max_degree=2, exact_only=exact_only)
            omega_prime = f.inv() * eta
            charts = [chart_from_denominators(omega, pool)]
            verdict = classify_aff1(omega, omega_prime, charts)
            pair_total += 1
            if (
                not verdict.accepted
                and verdict.reason.value == "ConditionThreeFailed"
                and not verdict.witnesses
            ):
                no_witness += 1
                continue
            matrix = aff1_matrix(omega, omega_prime)
            truth = pcurvature_brute(matrix).is_zero() and curvature(matrix).is_zero()
            rec.check(
                verdict.accepted == truth,
                f"aff1 disagreement at omega={omega}, omega'={omega_prime}, p={p}, n={n}",
            )
    fraction = no_witness / pair_total if pair_total else 0.0
    rec.check(fraction < 0.05, f"no-witness fraction {fraction:.1%} exceeds 5%")
    return rec.result(notes=f"no-witness fraction {fraction:.1%}")


def battery_boundary_roundtrip(
    seed: int, trials: int = 100, ps=(3, 5), nvars=(1, 2)
) -> BatteryResult:
    """boundary equations induce exactly the logarithmic-derivative forms,
    and those forms pass their classifier with a zero certificate."""
    rec = _Recorder("boundary-roundtrip")
    configs = [(p, n) for p in ps for n in nvars]
    for salt, (p, n) in enumerate(configs):
        ctx = Context(p, n)
        rng = _rng(seed, 600 + salt)
        pool = linear_pool(ctx)
        zero, one = RatFunc.zero(ctx), RatFunc.one(ctx)
        for _ in range(_per(trials, len(configs))):
            f = random_unit(rng, ctx, pool, max_factors=2)
            bt = boundary_torsor(f, GroupTag.G_M)
            mc = maurer_cartan(((f,),), GroupTag.G_M)
            rec.check(
                bt.forms[0] == mc.entries[0][0],
                f"g_m boundary form != dlog at f={f}, p={p}",
            )
            verdict = classify_mu_p(bt.forms[0], [chart_from_denominators(bt.forms[0], pool)])
            rec.check(
                verdict.accepted and verdict.pcurv_certificate.is_zero(),
                f"g_m boundary not accepted at f={f}, p={p}",
            )

            fp = random_ratfunc(rng, ctx, pool, max_degree=3)
            bt = boundary_torsor(fp, GroupTag.G_A)
            mc = maurer_cartan(((one, fp), (zero, one)), GroupTag.G_A)
            rec.check(
                bt.forms[0] == mc.entries[0][1],
                f"g_a boundary form != d at f'={fp}, p={p}",
            )
            rec.check(
                classify_alpha_p(bt.forms[0]).accepted,
                f"g_a boundary not accepted at f'={fp}, p={p}",
            )

            f2 = random_unit(rng, ctx, pool, max_factors=2)
            fp2 = random_ratfunc(rng, ctx, pool, max_degree=2)
            bt = boundary_torsor((f2, fp2), GroupTag.AFF1)
            mc = maurer_cartan(((f2, fp2), (zero, one)), GroupTag.AFF1)
            rec.check(
                bt.forms == (mc.entries[0][0], mc.entries[0][1]),
                f"aff1 boundary forms != dlog pair at ({f2}, {fp2}), p={p}",
            )
            verdict = classify_aff1(
                bt.forms[0], bt.forms[1], [chart_from_denominators(bt.forms[0], pool)]
            )
            rec.check(
                verdict.accepted and verdict.pcurv_certificate.is_zero(),
                f"aff1 boundary not accepted at ({f2}, {fp2}), p={p}",
            )
    return rec.result()


def battery_cocycle_laws(seed: int, trials: int = 50, ps=(3, 5)) -> BatteryResult:
    """u_ij u_jk = u_ik and u_ij^p = f_i/f_j for triples of witnesses of a
    common form."""
    rec = _Recorder("cocycle-laws")
    for salt, p in enumerate(ps):
        ctx = Context(p, 2)
        rng = _rng(seed, 700 + salt)
        pool = linear_pool(ctx)
        for _ in range(_per(trials, len(ps))):
            base = random_unit(rng, ctx, pool, max_factors=2)
            fs = []
            for _i in range(3):
                scale = random_ratfunc(rng, ctx, pool, max_degree=1, nonzero=True)
                fs.append(base * scale.frobenius())
            witnesses = [
                ChartWitness(chart_from_denominators(dlog_function(f), pool), f) for f in fs
            ]
            table = kummer_cocycle(witnesses)
            ok = True
            for i in range(3):
                for j in range(3):
                    for k in range(3):
                        if len({i, j, k}) == 3:
                            if table[(i, j)] * table[(j, k)] != table[(i, k)]:
                                ok = False
            for i in range(3):
                for j in range(3):
                    if i != j and table[(i, j)] ** p != fs[i] / fs[j]:
                        ok = False
            rec.check(ok, f"cocycle law broke at base={base}, p={p}")
    return rec.result()


def battery_mc_flatness(seed: int, trials: int = 200, ps=(3, 5)) -> BatteryResult:
    """curvature(dlog g) = 0 for random invertible matrices over GL_2 and
    the affine group, in two variables."""
    rec = _Recorder("maurer-cartan-flatness")
    for salt, p in enumerate(ps):
        ctx = Context(p, 2)
        rng = _rng(seed, 800 + salt)
        pool = linear_pool(ctx)
        zero, one = RatFunc.zero(ctx), RatFunc.one(ctx)
        for _ in range(_per(trials, 2 * len(ps))):
            # Invertible by construction: unit lower * diagonal units * unit upper.
            a = RatFunc.from_poly(random_poly(rng, ctx, max_degree=2, max_terms=2))
            b = RatFunc.from_poly(random_poly(rng, ctx, max_degree=2, max_terms=2))
            d1 = random_unit(rng, ctx, pool, max_factors=2)
            d2 = random_unit(rng, ctx, pool, max_factors=1)
            lower = ((one, zero), (a, one))
            diag = ((d1, zero), (zero, d2))
            upper = ((one, b), (zero, one))
            g = mat_mul(mat_mul(lower, diag), upper)
            mc = maurer_cartan(g, GroupTag.GL)
            rec.check(
                curvature(mc).is_zero(), f"GL2 dlog not flat at g={g}, p={p}"
            )
            f = random_unit(rng, ctx, pool, max_factors=2)
            fp = random_ratfunc(rng, ctx, pool, max_degree=2)
            mc2 = maurer_cartan(((f, fp), (zero, one)), GroupTag.AFF1)
            rec.check(
                curvature(mc2).is_zero(), f"aff1 dlog not flat at ({f}, {fp}), p={p}"
            )
    return rec.result()


def battery_pcurv_operators(seed: int, trials: int = 60, ps=(3, 5)) -> BatteryResult:
    """Consistency of the general-derivation engine: agreement with the
    coordinate components, p-linearity and additivity on flat
    connections, and the rank-1 closed-formula oracle."""
    rec = _Recorder("pcurvature-operators")
    for salt, p in enumerate(ps):
        ctx1 = Context(p, 1)
        rng = _rng(seed, 900 + salt)
        pool1 = linear_pool(ctx1)
        for _ in range(_per(trials, 2 * len(ps))):
            omega = random_oneform(rng, ctx1, pool1, max_degree=3, max_terms=3)
            matrix = MatrixOneForm.scalar(omega)
            brute = pcurvature_brute(matrix)
            rec.check(
                brute.component(0)[0][0] == rank1_pcurvature_oracle(omega),
                f"rank-1 oracle mismatch at {omega}, p={p}",
            )
            d0 = Derivation.coordinate(ctx1, 0)
            rec.check(
                pcurvature_at(matrix, d0) == brute.component(0),
                f"pcurvature_at(d/dx) != brute at {omega}, p={p}",
            )
        ctx2 = Context(p, 2)
        pool2 = linear_pool(ctx2)
        for _ in range(_per(trials, 2 * len(ps))):
            f = random_unit(rng, ctx2, pool2, max_factors=2)
            mc = maurer_cartan(((f,),), GroupTag.G_M)
            h = random_ratfunc(rng, ctx2, pool2, max_degree=1, nonzero=True)
            d = Derivation(
                ctx2,
                [
                    RatFunc.from_poly(random_poly(rng, ctx2, max_degree=1, max_terms=2))
                    for _ in range(2)
                ],
            )
            e = Derivation.coordinate(ctx2, rng.randrange(2))
            # p-linearity and additivity hold because dlog forms are flat.
            lhs = pcurvature_at(mc, d.scale(h))
            rhs = tuple(
                tuple(h.frobenius() * v for v in row) for row in pcurvature_at(mc, d)
            )
            rec.check(lhs == rhs, f"p-linearity broke at D={d}, h={h}, p={p}")
            lhs2 = pcurvature_at(mc, d + e)
            base_d = pcurvature_at(mc, d)
            base_e = pcurvature_at(mc, e)
            rhs2 = tuple(
                tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(base_d, base_e)
            )
            rec.check(lhs2 == rhs2, f"additivity broke at D={d}, E={e}, p={p}")
            dp = derivation_p_power(e)
            rec.check(dp.is_zero(), f"coordinate derivation p-power != 0, p={p}")
    return rec.result()


BATTERIES = {
    "cartier-identities": battery_cartier_identities,
    "cartier-univariate-oracle": battery_univariate_oracle,
    "mu-p-equivalence": battery_mu_p_equivalence,
    "alpha-p-equivalence": battery_alpha_p_equivalence,
    "abelian-pcurvature-formula": battery_abelian_formula,
    "aff1-classifier": battery_aff1_classifier,
    "boundary-roundtrip": battery_boundary_roundtrip,
    "cocycle-laws": battery_cocycle_laws,
    "maurer-cartan-flatness": battery_mc_flatness,
    "pcurvature-operators": battery_pcurv_operators,
}

# Reduced trial counts for the CLI's quick mode; the acceptance suite
# passes the full counts explicitly.
QUICK_TRIALS = {
    "cartier-identities": {"trials": 8, "ps": (3, 5)},
    "cartier-univariate-oracle": {"trials": 30, "ps": (3, 5)},
    "mu-p-equivalence": {"trials": 12, "dlog_trials": 8, "ps": (3, 5)},
    "alpha-p-equivalence": {"trials": 12, "exact_trials": 8, "ps": (3, 5)},
    "abelian-pcurvature-formula": {"trials": 12, "ps": (3, 5)},
    "aff1-classifier": {"mc_trials": 8, "pair_trials": 8, "ps": (3,)},
    "boundary-roundtrip": {"trials": 8, "ps": (3, 5)},
    "cocycle-laws": {"trials": 10, "ps": (3, 5)},
    "maurer-cartan-flatness": {"trials": 12, "ps": (3, 5)},
    "pcurvature-operators": {"trials": 12, "ps": (3, 5)},
}


def run_batteries(names=None, seed: int = 0, full: bool = False) -> list[BatteryResult]:
    """Run the named batteries (all by default) and return their results
    in a stable order."""
    selected = list(BATTERIES) if not names else list(names)
    results = []
    for name in selected:
        if name not in BATTERIES:
            raise ValueError(f"unknown battery {name!r}; known: {', '.join(BATTERIES)}")
        kwargs = {} if full else dict(QUICK_TRIALS.get(name, {}))
        results.append(BATTERIES[name](seed=seed, **kwargs))
    return results
