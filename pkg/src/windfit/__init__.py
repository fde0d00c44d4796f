"""Wind-speed distribution fitting, ranking, and power density estimation.

Six candidate families (three-parameter Weibull, log-logistic, lognormal,
extreme-value, and the two Weibull/log-logistic composites) are fitted by
Nelder-Mead maximum likelihood, scored with four goodness-of-fit criteria,
and compared on wind power density error.
"""

__version__ = "0.1.0"

from .families import DistParams, FamilyId, Support
from .sample import Sample
from .distributions import cdf, logpdf, pdf, quantile, sample, support
from .estimation import (FitResult, SimplexConfig, fit_mle, initial_guess,
                         negloglik, nelder_mead)
from .gof import (GofConfig, GofReport, ProbabilityPairs, chi2_stat,
                  empirical_cdf, ks_stat, r_squared, rank_models, rmse)
from .power import PowerConfig, PowerReport, p_model, p_ref, pde, third_moment
from .stats import DescriptiveStats, describe
from .pipeline import (RunConfig, ingest, ingest_text, render_json,
                       render_text, run_pipeline, season_split)

__all__ = [
    "DistParams", "FamilyId", "Support", "Sample",
    "cdf", "logpdf", "pdf", "quantile", "sample", "support",
    "FitResult", "SimplexConfig", "fit_mle", "initial_guess", "negloglik",
    "nelder_mead",
    "GofConfig", "GofReport", "ProbabilityPairs", "chi2_stat",
    "empirical_cdf", "ks_stat", "r_squared", "rank_models", "rmse",
    "PowerConfig", "PowerReport", "p_model", "p_ref", "pde", "third_moment",
    "DescriptiveStats", "describe",
    "RunConfig", "ingest", "ingest_text", "render_json", "render_text",
    "run_pipeline", "season_split",
    "__version__",
]
