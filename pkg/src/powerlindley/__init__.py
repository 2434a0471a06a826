"""Power Lindley distribution toolkit.

Evaluation, sampling, closed-form moments, characteristic-function and
moment-determinacy analysis, constructive Stieltjes classes with numerical
verification, and least-squares fitting of frequency tables against a
Weibull baseline. The command line front end is installed as ``plfit``.

Hot kernels run on a compiled extension when available; see
``powerlindley._kernels`` and benchmarks/bench_kernels.py.
"""
from ._kernels import backend as kernel_backend
from .distribution import (
    PLParams,
    RandomSource,
    WeibullParams,
    pl_cdf,
    pl_hazard,
    pl_log_moment,
    pl_log_pdf,
    pl_mean,
    pl_moment,
    pl_pdf,
    pl_quantile,
    pl_sample,
    pl_survival,
    pl_variance,
    weibull_cdf,
    weibull_mean,
    weibull_median,
    weibull_pdf,
)
from .errors import (
    AccuracyError,
    BracketError,
    DomainError,
    FitError,
    NormalizationError,
    OptimizationError,
    ParseError,
    PowerLindleyError,
)
from .fitting import (
    FitObjective,
    FitReport,
    FrequencyTable,
    fit,
    normalize_table,
    objective_error,
    sample_mean,
)
from .moment_analysis import (
    AnalyticityReport,
    analyze,
    lin_derivative,
    lin_function,
    lindley_cf,
    moment_growth_exponent,
)
from .numerics import (
    MinimizeResult,
    QuadratureSpec,
    RootBracket,
    find_root,
    integrate_semi_infinite,
    log_gamma,
    minimize_2d,
)
from .stieltjes import (
    PerturbationSpec,
    StieltjesMember,
    gr_cosine_integral,
    gr_sine_integral,
    normalize,
    perturbation,
    perturbation_value,
    stieltjes_density,
    verify_vanishing_moments,
)

__version__ = "0.1.0"
