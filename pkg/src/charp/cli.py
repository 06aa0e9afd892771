"""Command-line interface.

Every subcommand takes -p (odd prime, soft-capped by CHARP_MAX_P,
default 31) and -n/--nvars (1..4), parses its inputs in the expression
language, and prints either human-readable text or, with --json, a
stable document

    {"schema": 1, "command": .., "p": .., "nvars": .., "inputs": ..,
     "result": .., "certificates": .., "witnesses": .., "reason": ..}

Identical invocations (including --seed) produce byte-identical JSON.

Exit codes: 0 success or accepted verdict; 1 rejected verdict or
domain-condition failure (not closed, not exact, no witness, ...);
2 input error (syntax, sorts, shapes, bad prime); 3 internal assertion
failure, which always indicates a bug.
"""

from __future__ import annotations

import json
import os
import sys
from dataclasses import dataclass, field

import click

from . import crosscheck as crosscheck_mod
from . import errors as err
from .cartier import (
    Chart,
    antiderivative,
    cartier,
    gamma,
    log_witness,
)
from .connections import (
    GroupTag,
    MatrixOneForm,
    curvature,
    maurer_cartan,
    pcurvature_abelian,
    pcurvature_brute,
)
from .context import Context, is_prime
from .errors import CharpError
from .expr import (
    eval_oneform,
    eval_oneform_matrix,
    eval_scalar,
    eval_scalar_matrix,
)
from .forms import dlog_function
from .torsorlab import (
    ChartWitness,
    Verdict,
    boundary_torsor,
    classify_aff1,
    classify_alpha_p,
    classify_mu_p,
    kummer_cocycle,
)

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3

_DOMAIN_ERRORS = (
    err.NotClosed,
    err.NotExact,
    err.NotCartierFixed,
    err.NoWitnessOnChart,
    err.InconsistentWitnesses,
)

_INTERNAL_ERRORS = (AssertionError, err.NotAPthPower)

DEFAULT_MAX_P = 31


# Which subcommand exercises each library operation; the test suite
# asserts this table covers the whole public API.
OPERATION_COVERAGE = {
    "poly_arith": "cartier",
    "poly_gcd": "cartier",
    "poly_lcm": "cartier",
    "partial_derivative": "dlog",
    "p_basis_decompose": "cartier",
    "p_th_root": "cocycle",
    "ratfunc_normalize": "cartier",
    "d_function": "dlog",
    "d_oneform": "curv",
    "wedge": "curv",
    "is_closed": "cartier",
    "dlog_function": "dlog",
    "cartier": "cartier",
    "gamma": "gamma",
    "antiderivative": "antider",
    "cartier_1var_oracle": "crosscheck",
    "log_witness": "logwitness",
    "clear_to_p_power": "cartier",
    "maurer_cartan": "mc",
    "curvature": "curv",
    "derivation_p_power": "crosscheck",
    "pcurvature_brute": "pcurv-brute",
    "pcurvature_at": "crosscheck",
    "pcurvature_abelian": "pcurv-abelian",
    "rank1_pcurvature_oracle": "crosscheck",
    "nabla_power": "crosscheck",
    "mat_inv": "mc",
    "mat_mul": "crosscheck",
    "classify_mu_p": "classify mu_p",
    "classify_alpha_p": "classify alpha_p",
    "classify_aff1": "classify aff1",
    "boundary_torsor": "boundary",
    "kummer_cocycle": "cocycle",
    "chart_from_denominators": "classify mu_p",
    "parse_expression": "cartier",
    "run_command": "cartier",
    "aff1_matrix": "classify aff1",
    "ga_matrix": "classify alpha_p",
    "identity_matrix": "mc",
}


@dataclass
class JobSpec:
    """A fully validated CLI request, independent of click."""

    command: str
    p: int
    nvars: int
    inputs: dict = field(default_factory=dict)
    json_output: bool = False
    seed: int | None = None


def max_prime_cap() -> int:
    raw = os.environ.get("CHARP_MAX_P", "")
    try:
        return int(raw) if raw else DEFAULT_MAX_P
    except ValueError:
        return DEFAULT_MAX_P


def make_context(p: int, nvars: int) -> Context:
    cap = max_prime_cap()
    if p > cap:
        raise CharpError(
            f"p = {p} exceeds the soft cap {cap} (override with CHARP_MAX_P)"
        )
    if p == 2 or not is_prime(p):
        raise CharpError(f"p must be an odd prime, got {p}")
    if not 1 <= nvars <= 4:
        raise CharpError(f"nvars must be in 1..4, got {nvars}")
    return Context(p, nvars)


def _parse_chart(text: str, ctx: Context) -> Chart:
    generators = []
    for piece in text.split(","):
        value = eval_scalar(piece, ctx)
        if not value.is_poly():
            raise CharpError(f"chart generator {piece.strip()!r} must be a polynomial")
        generators.append(value.as_poly())
    return Chart(ctx, tuple(generators))


def _parse_witness(text: str, ctx: Context) -> ChartWitness:
    if "@" not in text:
        raise CharpError(f"witness must look like 'f @ g1, g2', got {text!r}")
    f_text, chart_text = text.split("@", 1)
    return ChartWitness(_parse_chart(chart_text, ctx), eval_scalar(f_text, ctx))


def _witness_doc(w: ChartWitness) -> dict:
    return {"chart": [str(g) for g in w.chart.generators], "f": str(w.f)}


def _verdict_doc(verdict: Verdict) -> dict:
    doc = {
        "accepted": verdict.accepted,
        "reason": verdict.reason.value,
    }
    if verdict.detail:
        doc["detail"] = verdict.detail
    if verdict.primitive is not None:
        doc["primitive"] = str(verdict.primitive)
    return doc


def _certificate_doc(verdict: Verdict):
    if verdict.pcurv_certificate is None:
        return None
    cert = verdict.pcurv_certificate
    return {
        "pcurvature": [
            [[str(v) for v in row] for row in cert.component(i)]
            for i in range(cert.ctx.nvars)
        ],
        "zero": cert.is_zero(),
    }


def _verdict_output(job: JobSpec, verdict: Verdict):
    witnesses = [_witness_doc(w) for w in verdict.witnesses]
    doc = {
        "result": _verdict_doc(verdict),
        "witnesses": witnesses or None,
        "certificates": _certificate_doc(verdict),
        "reason": verdict.reason.value,
    }
    lines = [str(verdict)]
    for w in verdict.witnesses:
        lines.append(f"witness on chart {w.chart}: {w.f}")
    if verdict.primitive is not None:
        lines.append(f"antiderivative: {verdict.primitive}")
    if verdict.pcurv_certificate is not None:
        lines.append(f"certificate p-curvature zero: {verdict.pcurv_certificate.is_zero()}")
    code = EXIT_OK if verdict.accepted else EXIT_REJECTED
    return code, doc, lines


def run_command(job: JobSpec):
    """Execute a JobSpec; returns (exit_code, json_document, human_lines)."""
    try:
        code, doc, lines = _dispatch(job)
    except _INTERNAL_ERRORS as exc:
        return (
            EXIT_INTERNAL,
            _finish_doc(job, {"result": None, "reason": f"internal error: {exc}"}),
            [f"internal error: {exc}"],
        )
    except _DOMAIN_ERRORS as exc:
        return (
            EXIT_REJECTED,
            _finish_doc(job, {"result": None, "reason": f"{type(exc).__name__}: {exc}"}),
            [f"rejected: {type(exc).__name__}: {exc}"],
        )
    except (CharpError, ValueError) as exc:
        return (
            EXIT_INPUT,
            _finish_doc(job, {"result": None, "reason": f"{type(exc).__name__}: {exc}"}),
            [f"input error: {type(exc).__name__}: {exc}"],
        )
    return code, _finish_doc(job, doc), lines


def _finish_doc(job: JobSpec, doc: dict) -> dict:
    full = {
        "schema": 1,
        "command": job.command,
        "p": job.p,
        "nvars": job.nvars,
        "inputs": job.inputs,
        "result": None,
        "certificates": None,
        "witnesses": None,
        "reason": None,
    }
    if job.seed is not None:
        full["seed"] = job.seed
    full.update(doc)
    return full


def _dispatch(job: JobSpec):
    ctx = make_context(job.p, job.nvars)
    command = job.command
    inputs = job.inputs

    if command == "cartier":
        omega = eval_oneform(inputs["form"], ctx)
        result = cartier(omega)
        return EXIT_OK, {"result": str(result)}, [f"C(omega) = {result}"]

    if command == "gamma":
        eta = eval_oneform(inputs["form"], ctx)
        result = gamma(eta)
        return EXIT_OK, {"result": str(result)}, [f"gamma(eta) = {result}"]

    if command == "antider":
        omega = eval_oneform(inputs["form"], ctx)
        result = antiderivative(omega)
        return EXIT_OK, {"result": str(result)}, [f"f = {result}  (df = omega)"]

    if command == "logwitness":
        omega = eval_oneform(inputs["form"], ctx)
        chart = _parse_chart(inputs["chart"], ctx)
        result = log_witness(omega, chart)
        return EXIT_OK, {"result": str(result)}, [f"f = {result}  (dlog f = omega)"]

    if command == "dlog":
        f = eval_scalar(inputs["func"], ctx)
        result = dlog_function(f)
        return EXIT_OK, {"result": str(result)}, [f"dlog(f) = {result}"]

    if command == "mc":
        tag = _group_tag(inputs["group"])
        matrix = eval_scalar_matrix(inputs["matrix"], ctx)
        result = maurer_cartan(matrix, tag)
        return EXIT_OK, {"result": str(result)}, [f"dlog(g) = [{result}]"]

    if command == "curv":
        rows = eval_oneform_matrix(inputs["matrix"], ctx)
        result = curvature(MatrixOneForm(ctx, rows))
        doc = {"result": str(result), "certificates": {"flat": result.is_zero()}}
        return EXIT_OK, doc, [f"curvature = [{result}]", f"flat: {result.is_zero()}"]

    if command == "pcurv-brute":
        rows = eval_oneform_matrix(inputs["omega"], ctx)
        matrix = MatrixOneForm(ctx, rows)
        rank = inputs.get("rank")
        if rank is not None and matrix.rank != rank:
            raise CharpError(f"matrix rank {matrix.rank} does not match --rank {rank}")
        psi = pcurvature_brute(matrix)
        doc = {
            "result": [
                [[str(v) for v in row] for row in psi.component(i)]
                for i in range(ctx.nvars)
            ],
            "certificates": {"zero": psi.is_zero()},
        }
        return EXIT_OK, doc, [str(psi), f"zero: {psi.is_zero()}"]

    if command == "pcurv-abelian":
        tag = _group_tag(inputs["group"])
        omega = eval_oneform(inputs["form"], ctx)
        result = pcurvature_abelian(omega, tag)
        return EXIT_OK, {"result": str(result)}, [f"psi-representative = {result}"]

    if command == "classify mu_p":
        omega = eval_oneform(inputs["form"], ctx)
        charts = [_parse_chart(c, ctx) for c in inputs.get("charts", [])]
        return _verdict_output(job, classify_mu_p(omega, charts))

    if command == "classify alpha_p":
        omega = eval_oneform(inputs["form"], ctx)
        return _verdict_output(job, classify_alpha_p(omega))

    if command == "classify aff1":
        omega = eval_oneform(inputs["omega"], ctx)
        omega_prime = eval_oneform(inputs["omegap"], ctx)
        charts = [_parse_chart(c, ctx) for c in inputs.get("charts", [])]
        witnesses = [_parse_witness(w, ctx) for w in inputs.get("witnesses", [])]
        return _verdict_output(job, classify_aff1(omega, omega_prime, charts, witnesses))

    if command == "boundary":
        tag = _group_tag(inputs["group"])
        if tag is GroupTag.AFF1:
            g = (eval_scalar(inputs["g"], ctx), eval_scalar(inputs["gprime"], ctx))
        else:
            g = eval_scalar(inputs["g"], ctx)
        bt = boundary_torsor(g, tag)
        doc = {
            "result": {
                "kind": bt.kind,
                "equations": [str(e) for e in bt.equations],
                "forms": [str(f) for f in bt.forms],
            }
        }
        return EXIT_OK, doc, [str(bt)]

    if command == "cocycle":
        witnesses = [_parse_witness(w, ctx) for w in inputs.get("witnesses", [])]
        table = kummer_cocycle(witnesses)
        items = sorted(table.items())
        doc = {"result": {f"u_{i + 1}{j + 1}": str(u) for (i, j), u in items}}
        lines = [f"u_{i + 1}{j + 1} = {u}" for (i, j), u in items]
        return EXIT_OK, doc, lines

    if command == "crosscheck":
        names = inputs.get("batteries") or None
        results = crosscheck_mod.run_batteries(
            names, seed=job.seed or 0, full=bool(inputs.get("full"))
        )
        all_pass = all(r.passed for r in results)
        doc = {
            "result": {
                r.name: {
                    "trials": r.trials,
                    "failures": r.failures,
                    "notes": r.notes,
                    "examples": r.examples,
                }
                for r in results
            },
            "reason": "OK" if all_pass else "battery failures",
        }
        lines = [r.line() for r in results]
        report_dir = inputs.get("report")
        if report_dir:
            from .report import render_report

            written = render_report(results, report_dir)
            lines += [f"wrote {path}" for path in written]
        return (EXIT_OK if all_pass else EXIT_REJECTED), doc, lines

    raise CharpError(f"unknown command {command!r}")


def _group_tag(name: str) -> GroupTag:
    try:
        return GroupTag(name)
    except ValueError:
        raise CharpError(
            f"unknown group {name!r}; expected one of "
            + ", ".join(t.value for t in GroupTag)
        ) from None


# ---------------------------------------------------------------- click layer

def _emit(job: JobSpec):
    code, doc, lines = run_command(job)
    if job.json_output:
        click.echo(json.dumps(doc, sort_keys=True, indent=2))
    else:
        for line in lines:
            click.echo(line)
    sys.exit(code)


def _common_options(fn):
    fn = click.option("-p", "p", type=int, required=True, help="odd prime modulus")(fn)
    fn = click.option("-n", "--nvars", type=int, default=1, show_default=True,
                      help="number of variables (1..4)")(fn)
    fn = click.option("--json", "json_output", is_flag=True, help="emit stable JSON")(fn)
    return fn


def _maybe_stdin(value: str | None, use_stdin: bool) -> str:
    if use_stdin:
        return sys.stdin.read().strip()
    if value is None:
        raise click.UsageError("missing expression (or use --stdin)")
    return value


@click.group()
def main():
    """Exact Cartier operator, p-curvature, and Frobenius-kernel torsor
    classification over F_p."""


def _simple_form_command(name: str, input_key: str, flag: str, help_text: str):
    @main.command(name=name, help=help_text)
    @_common_options
    @click.option(flag, "expression", default=None, help="input expression")
    @click.option("--stdin", "use_stdin", is_flag=True, help="read the expression from stdin")
    def _cmd(p, nvars, json_output, expression, use_stdin):
        expression = _maybe_stdin(expression, use_stdin)
        job = JobSpec(name, p, nvars, {input_key: expression}, json_output)
        _emit(job)

    return _cmd


_simple_form_command("cartier", "form", "--form", "Cartier operator of a closed 1-form.")
_simple_form_command("gamma", "form", "--form", "Right inverse of the Cartier operator.")
_simple_form_command("antider", "form", "--form",
                     "Antiderivative of a closed form with zero Cartier image.")
_simple_form_command("dlog", "func", "--func", "Logarithmic derivative df/f.")


@main.command(name="logwitness", help="Search a chart for f with dlog(f) = omega.")
@_common_options
@click.option("--form", "form", default=None, help="the 1-form")
@click.option("--chart", "chart", required=True, help="comma-separated chart generators")
@click.option("--stdin", "use_stdin", is_flag=True)
def _logwitness(p, nvars, json_output, form, chart, use_stdin):
    form = _maybe_stdin(form, use_stdin)
    _emit(JobSpec("logwitness", p, nvars, {"form": form, "chart": chart}, json_output))


@main.command(name="mc", help="Matrix logarithmic derivative (flat connection form).")
@_common_options
@click.option("--matrix", "matrix", default=None, help="rows 'a, b; c, d'")
@click.option("--group", "group", default="gl", show_default=True,
              help="g_m | g_a | gl | aff1")
@click.option("--stdin", "use_stdin", is_flag=True)
def _mc(p, nvars, json_output, matrix, group, use_stdin):
    matrix = _maybe_stdin(matrix, use_stdin)
    _emit(JobSpec("mc", p, nvars, {"matrix": matrix, "group": group}, json_output))


@main.command(name="curv", help="Curvature of a matrix connection form.")
@_common_options
@click.option("--matrix", "matrix", default=None, help="rows of 1-form entries")
@click.option("--stdin", "use_stdin", is_flag=True)
def _curv(p, nvars, json_output, matrix, use_stdin):
    matrix = _maybe_stdin(matrix, use_stdin)
    _emit(JobSpec("curv", p, nvars, {"matrix": matrix}, json_output))


@main.command(name="pcurv-brute", help="Brute-force p-curvature of a connection.")
@_common_options
@click.option("--omega", "omega", default=None,
              help="1-form (rank 1) or matrix of 1-forms")
@click.option("--rank", "rank", type=int, default=None, help="expected rank, validated")
@click.option("--stdin", "use_stdin", is_flag=True)
def _pcurv_brute(p, nvars, json_output, omega, rank, use_stdin):
    omega = _maybe_stdin(omega, use_stdin)
    inputs = {"omega": omega}
    if rank is not None:
        inputs["rank"] = rank
    _emit(JobSpec("pcurv-brute", p, nvars, inputs, json_output))


@main.command(name="pcurv-abelian", help="Closed-formula p-curvature for abelian groups.")
@_common_options
@click.option("--form", "form", default=None, help="closed 1-form")
@click.option("--group", "group", required=True, help="g_m | g_a")
@click.option("--stdin", "use_stdin", is_flag=True)
def _pcurv_abelian(p, nvars, json_output, form, group, use_stdin):
    form = _maybe_stdin(form, use_stdin)
    _emit(JobSpec("pcurv-abelian", p, nvars, {"form": form, "group": group}, json_output))


@main.group(name="classify")
def _classify():
    """Classify forms as arising from Frobenius-kernel torsors."""


@_classify.command(name="mu_p", help="Multiplicative kernel: closed and C-fixed.")
@_common_options
@click.option("--form", "form", default=None, help="the 1-form")
@click.option("--chart", "charts", multiple=True, help="chart (repeatable)")
@click.option("--stdin", "use_stdin", is_flag=True)
def _classify_mu_p(p, nvars, json_output, form, charts, use_stdin):
    form = _maybe_stdin(form, use_stdin)
    _emit(JobSpec("classify mu_p", p, nvars,
                  {"form": form, "charts": list(charts)}, json_output))


@_classify.command(name="alpha_p", help="Additive kernel: closed and C-zero.")
@_common_options
@click.option("--form", "form", default=None, help="the 1-form")
@click.option("--stdin", "use_stdin", is_flag=True)
def _classify_alpha_p(p, nvars, json_output, form, use_stdin):
    form = _maybe_stdin(form, use_stdin)
    _emit(JobSpec("classify alpha_p", p, nvars, {"form": form}, json_output))


@_classify.command(name="aff1", help="Affine-group kernel: the pair conditions.")
@_common_options
@click.option("--omega", "omega", default=None, help="unit-part 1-form")
@click.option("--omegap", "omegap", required=True, help="translation-part 1-form")
@click.option("--chart", "charts", multiple=True, help="chart (repeatable)")
@click.option("--witness", "witnesses", multiple=True,
              help="extra witness 'f @ g1, g2' (repeatable)")
@click.option("--stdin", "use_stdin", is_flag=True)
def _classify_aff1(p, nvars, json_output, omega, omegap, charts, witnesses, use_stdin):
    omega = _maybe_stdin(omega, use_stdin)
    _emit(JobSpec("classify aff1", p, nvars,
                  {"omega": omega, "omegap": omegap,
                   "charts": list(charts), "witnesses": list(witnesses)},
                  json_output))


@main.command(name="boundary", help="Torsor presentation of the boundary of g.")
@_common_options
@click.option("--group", "group", required=True, help="g_m | g_a | aff1")
@click.option("--g", "g", default=None, help="group element (unit or function)")
@click.option("--gprime", "gprime", default=None, help="second coordinate for aff1")
@click.option("--stdin", "use_stdin", is_flag=True)
def _boundary(p, nvars, json_output, group, g, gprime, use_stdin):
    g = _maybe_stdin(g, use_stdin)
    inputs = {"group": group, "g": g}
    if gprime is not None:
        inputs["gprime"] = gprime
    _emit(JobSpec("boundary", p, nvars, inputs, json_output))


@main.command(name="cocycle", help="Gluing units of overlapping witnesses.")
@_common_options
@click.option("--witness", "witnesses", multiple=True, required=True,
              help="witness 'f @ g1, g2' (repeatable, at least two)")
def _cocycle(p, nvars, json_output, witnesses):
    _emit(JobSpec("cocycle", p, nvars, {"witnesses": list(witnesses)}, json_output))


@main.command(name="crosscheck", help="Randomized cross-check batteries.")
@click.option("-p", "p", type=int, default=3, show_default=True,
              help="recorded in the document; batteries pick their own primes")
@click.option("-n", "--nvars", type=int, default=1, show_default=True)
@click.option("--json", "json_output", is_flag=True)
@click.option("--seed", "seed", type=int, default=0, show_default=True)
@click.option("--battery", "batteries", multiple=True,
              help=f"battery name (repeatable); known: {', '.join(crosscheck_mod.BATTERIES)}")
@click.option("--full", "full", is_flag=True, help="full acceptance-scale trial counts")
@click.option("--report", "report", default=None,
              help="directory for the CSV + figure report")
def _crosscheck(p, nvars, json_output, seed, batteries, full, report):
    inputs = {"batteries": list(batteries), "full": full}
    if report:
        inputs["report"] = report
    _emit(JobSpec("crosscheck", p, nvars, inputs, json_output, seed=seed))


if __name__ == "__main__":
    main()
