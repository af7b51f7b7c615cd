"""Exact and asymptotic significance indices for contingency-table hypotheses.

Computes, for homogeneity, independence, and Hardy-Weinberg equilibrium nulls:
the exact LRT P-value over the fully enumerated table space, the asymptotic
LRT and Pearson chi-square p-values, Fisher's exact p-value (2x2 homogeneity),
and the Bayesian e-value both by posterior Monte Carlo and by its chi-square
approximation. A power module estimates rejection surfaces on parameter grids.
"""

from .asymptotic import DfRule, asymptotic_e_value, asymptotic_p_value, chi2_p_value, df_rule
from .exact import (
    DEFAULT_BUDGET,
    BudgetExceededError,
    ExactDistribution,
    build_distribution,
    exact_p_value,
    load_distribution,
    log_h,
    save_distribution,
    spec_fingerprint,
)
from .fbst import (
    PosteriorModel,
    e_value,
    log_posterior_density,
    log_sup_under_null,
    posterior_model,
)
from .fisher import fisher_p_value
from .lrt import LrtResult, log_lambda, pearson_chi2
from .numerics import (
    RngStream,
    chi2_survival,
    log_factorial,
    sample_binomial,
    sample_dirichlet,
    sample_multinomial,
)
from .power import PowerGrid, estimate_power, power_at
from .report import IndexReport, compute_report, sweep_indices
from .tables import (
    ContingencyTable,
    Hypothesis,
    HypothesisSpec,
    count_tables,
    enumerate_tables,
    iter_compositions,
)

__all__ = [
    "BudgetExceededError",
    "ContingencyTable",
    "DEFAULT_BUDGET",
    "DfRule",
    "ExactDistribution",
    "Hypothesis",
    "HypothesisSpec",
    "IndexReport",
    "LrtResult",
    "PosteriorModel",
    "PowerGrid",
    "RngStream",
    "asymptotic_e_value",
    "asymptotic_p_value",
    "build_distribution",
    "chi2_p_value",
    "chi2_survival",
    "compute_report",
    "count_tables",
    "df_rule",
    "e_value",
    "enumerate_tables",
    "estimate_power",
    "exact_p_value",
    "fisher_p_value",
    "iter_compositions",
    "load_distribution",
    "log_factorial",
    "log_h",
    "log_lambda",
    "log_posterior_density",
    "log_sup_under_null",
    "pearson_chi2",
    "posterior_model",
    "power_at",
    "sample_binomial",
    "sample_dirichlet",
    "sample_multinomial",
    "save_distribution",
    "spec_fingerprint",
    "sweep_indices",
]

__version__ = "0.1.0"
