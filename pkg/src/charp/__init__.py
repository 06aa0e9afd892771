"""charp: exact differential forms, the Cartier operator, and p-curvature
over the prime field F_p, with classifiers for torsors under Frobenius
kernels and a small expression-language CLI."""

from .context import Context
from .poly import Poly, poly_arith, poly_gcd, poly_lcm
from .ratfunc import RatFunc, ratfunc_normalize
from .forms import (
    OneForm,
    TwoForm,
    d_function,
    d_oneform,
    dlog_function,
    is_closed,
    wedge,
)
from .cartier import (
    Chart,
    antiderivative,
    cartier,
    cartier_1var_oracle,
    clear_to_p_power,
    gamma,
    log_witness,
)
from .connections import (
    Derivation,
    GroupTag,
    MatrixOneForm,
    MatrixTwoForm,
    PCurvature,
    aff1_matrix,
    curvature,
    derivation_p_power,
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
from .torsorlab import (
    ChartWitness,
    TorsorEquation,
    TorsorPresentation,
    Verdict,
    VerdictReason,
    boundary_torsor,
    chart_from_denominators,
    classify_aff1,
    classify_alpha_p,
    classify_mu_p,
    kummer_cocycle,
)
from . import errors

__all__ = [
    "Context",
    "Poly",
    "RatFunc",
    "OneForm",
    "TwoForm",
    "Chart",
    "ChartWitness",
    "Derivation",
    "GroupTag",
    "MatrixOneForm",
    "MatrixTwoForm",
    "PCurvature",
    "TorsorEquation",
    "TorsorPresentation",
    "Verdict",
    "VerdictReason",
    "aff1_matrix",
    "antiderivative",
    "boundary_torsor",
    "cartier",
    "cartier_1var_oracle",
    "chart_from_denominators",
    "classify_aff1",
    "classify_alpha_p",
    "classify_mu_p",
    "clear_to_p_power",
    "curvature",
    "d_function",
    "d_oneform",
    "derivation_p_power",
    "dlog_function",
    "errors",
    "ga_matrix",
    "gamma",
    "identity_matrix",
    "is_closed",
    "kummer_cocycle",
    "log_witness",
    "mat_inv",
    "mat_mul",
    "maurer_cartan",
    "nabla_power",
    "pcurvature_abelian",
    "pcurvature_at",
    "pcurvature_brute",
    "poly_arith",
    "poly_gcd",
    "poly_lcm",
    "rank1_pcurvature_oracle",
    "ratfunc_normalize",
    "wedge",
]

__version__ = "0.1.0"
