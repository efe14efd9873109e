"""Exact convex stochastic order on finitely supported rational distributions.

The package decides lhs <=_cx rhs (E f(lhs) <= E f(rhs) for all convex f)
with four exact procedures -- a stop-loss oracle, the single-crossing
criterion, the Levin-Steckin integral conditions and the sign-change lemma
-- and applies them to verify the binomial convex-concentration inequality,
the Rasa inequality for Bernstein polynomials, and its m-variable
generalisation.  Every quantity is a `fractions.Fraction`; there is no
floating point anywhere in the computational core.
"""

from .convex_functions import (
    Affine,
    Angle,
    ConvexTestFunction,
    Monomial,
    PiecewiseLinear,
    expectation,
    random_piecewise_linear,
    builtin_family,
)
from .counterexample import (
    CounterexampleReport,
    VerificationError,
    analyze_counterexample,
    build_counterexample,
)
from .cx_order import (
    CxVerdict,
    LevinSteckinReport,
    OhlinReport,
    StandingHypothesisError,
    SzostokReport,
    crossing_points,
    cx_compare_oracle,
    levin_steckin_check,
    ohlin_check,
    sign_changes,
    szostok_decision,
)
from .distributions import (
    DiscreteDistribution,
    FormatError,
    ParameterError,
    Rational,
    StepCdf,
    as_rational,
    bernoulli,
    binomial,
    cdf,
    convolve,
    convolve_many,
    decimal_str,
    dirac,
    distribution_to_json_obj,
    distribution_to_text,
    mean,
    mixture,
    parse_distribution,
    scale,
    stop_loss,
)
from .randomgen import (
    random_equal_mean_pair,
    random_probability,
    random_weighted_distribution,
)
from .rasa import (
    GeneralizedVerdicts,
    PsiPattern,
    RasaPair,
    bernstein,
    bernstein_vector,
    generalized_pair,
    poisson_binomial,
    psi_sign_pattern,
    rasa_form,
    rasa_form_general,
    rasa_pair,
    verify_generalized,
    verify_hoeffding,
    verify_theorem_main,
)
from .sweep import RunConfig, farey_fractions, run_sweep

__version__ = "0.1.0"

__all__ = [
    "Affine",
    "Angle",
    "ConvexTestFunction",
    "CounterexampleReport",
    "CxVerdict",
    "DiscreteDistribution",
    "FormatError",
    "GeneralizedVerdicts",
    "LevinSteckinReport",
    "Monomial",
    "OhlinReport",
    "ParameterError",
    "PiecewiseLinear",
    "PsiPattern",
    "Rational",
    "RasaPair",
    "RunConfig",
    "StandingHypothesisError",
    "StepCdf",
    "SzostokReport",
    "VerificationError",
    "analyze_counterexample",
    "as_rational",
    "bernoulli",
    "bernstein",
    "bernstein_vector",
    "binomial",
    "build_counterexample",
    "cdf",
    "convolve",
    "convolve_many",
    "crossing_points",
    "cx_compare_oracle",
    "decimal_str",
    "dirac",
    "distribution_to_json_obj",
    "distribution_to_text",
    "expectation",
    "farey_fractions",
    "generalized_pair",
    "levin_steckin_check",
    "mean",
    "mixture",
    "ohlin_check",
    "parse_distribution",
    "poisson_binomial",
    "psi_sign_pattern",
    "random_equal_mean_pair",
    "random_piecewise_linear",
    "random_probability",
    "random_weighted_distribution",
    "rasa_form",
    "rasa_form_general",
    "rasa_pair",
    "run_sweep",
    "scale",
    "sign_changes",
    "stop_loss",
    "szostok_decision",
    "builtin_family",
    "verify_generalized",
    "verify_hoeffding",
    "verify_theorem_main",
]
