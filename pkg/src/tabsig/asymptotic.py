"""Chi-square approximations to the exact indices."""

from __future__ import annotations

from dataclasses import dataclass

from .lrt import LrtResult
from .numerics import chi2_survival
from .tables import Hypothesis, HypothesisSpec


@dataclass(frozen=True)
class DfRule:
    """Degrees of freedom for the two chi-square tails driven by -2*ln(lambda).

    The p-value tail uses the dimension gap between the full parameter space
    and the null set; the e-value tail uses the full dimension.
    """

    p_value_df: int
    e_value_df: int


def df_rule(spec: HypothesisSpec) -> DfRule:
    rows, cols = spec.table_shape
    if spec.kind is Hypothesis.HOMOGENEITY:
        # full space is one (cols-1)-simplex per row
        return DfRule((rows - 1) * (cols - 1), rows * (cols - 1))
    if spec.kind is Hypothesis.INDEPENDENCE:
        return DfRule(rows + cols - 2, rows * cols - 1)
    return DfRule(1, 2)


def asymptotic_p_value(lrt: LrtResult, rule: DfRule) -> float:
    return chi2_survival(lrt.neg2_log_lambda, rule.p_value_df)


def asymptotic_e_value(lrt: LrtResult, rule: DfRule) -> float:
    return chi2_survival(lrt.neg2_log_lambda, rule.e_value_df)


def chi2_p_value(stat: float, df: int) -> float:
    if stat < 0:
        raise ValueError("chi-square statistic must be >= 0")
    return chi2_survival(stat, df)
