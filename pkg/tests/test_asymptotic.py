import math

import numpy as np
import pytest

from tabsig import (
    ContingencyTable,
    DfRule,
    Hypothesis,
    HypothesisSpec,
    asymptotic_e_value,
    asymptotic_p_value,
    chi2_p_value,
    df_rule,
    log_lambda,
)


def _lrt(rows, kind=Hypothesis.HOMOGENEITY):
    t = ContingencyTable.from_rows(rows)
    spec = HypothesisSpec.for_table(kind, t)
    return log_lambda(t, spec), df_rule(spec)


def test_df_rules():
    assert df_rule(HypothesisSpec.homogeneity((5, 5))) == DfRule(1, 2)
    assert df_rule(HypothesisSpec.homogeneity((5, 5, 5), cols=3)) == DfRule(4, 6)
    assert df_rule(HypothesisSpec.independence(2, 2, 10)) == DfRule(2, 3)
    assert df_rule(HypothesisSpec.independence(3, 4, 10)) == DfRule(5, 11)
    assert df_rule(HypothesisSpec.hardy_weinberg(10)) == DfRule(1, 2)


def test_lambda_one_gives_unit_indices():
    lrt, rule = _lrt([[5, 5], [5, 5]])
    assert asymptotic_p_value(lrt, rule) == 1.0
    assert asymptotic_e_value(lrt, rule) == 1.0
    lrt, rule = _lrt([[25, 50, 25]], Hypothesis.HARDY_WEINBERG)
    assert asymptotic_p_value(lrt, rule) == 1.0
    assert asymptotic_e_value(lrt, rule) == 1.0


def test_quarter_lambda_values():
    # lambda = 1/4 at homogeneity table ((0,1),(1,0)); -2 ln lambda = 2 ln 4
    lrt, rule = _lrt([[0, 1], [1, 0]])
    assert lrt.neg2_log_lambda == pytest.approx(2 * math.log(4), rel=1e-14)
    assert asymptotic_p_value(lrt, rule) == pytest.approx(0.09589096714246556, abs=1e-12)
    # chi-square with 2 df has survival exp(-x/2)
    assert asymptotic_e_value(lrt, rule) == pytest.approx(0.25, abs=1e-12)


def test_diagonal_table_p_value():
    lrt, rule = _lrt([[10, 0], [0, 10]])
    assert asymptotic_p_value(lrt, rule) == pytest.approx(1.3977963343581475e-07, rel=1e-10)


def test_chi2_p_value_reference_points():
    assert chi2_p_value(0.0, 1) == 1.0
    assert chi2_p_value(20.0, 1) == pytest.approx(7.744216431044088e-06, rel=1e-10)
    assert chi2_p_value(3.841458820694124, 1) == pytest.approx(0.05, abs=1e-12)
    with pytest.raises(ValueError):
        chi2_p_value(-1.0, 1)


def test_e_value_dominates_p_value_when_df_larger():
    for kind, spec in [
        (Hypothesis.HOMOGENEITY, HypothesisSpec.homogeneity((8, 8))),
        (Hypothesis.INDEPENDENCE, HypothesisSpec.independence(2, 2, 12)),
        (Hypothesis.HARDY_WEINBERG, HypothesisSpec.hardy_weinberg(15)),
    ]:
        rule = df_rule(spec)
        assert rule.e_value_df > rule.p_value_df
        for x in np.linspace(0.0, 30.0, 40):
            lrt_like = type("L", (), {"neg2_log_lambda": x})
            assert asymptotic_e_value(lrt_like, rule) >= asymptotic_p_value(lrt_like, rule)


def test_both_indices_decrease_with_statistic():
    rule = df_rule(HypothesisSpec.homogeneity((10, 10)))
    xs = np.linspace(0.0, 40.0, 100)
    p = [asymptotic_p_value(type("L", (), {"neg2_log_lambda": x}), rule) for x in xs]
    e = [asymptotic_e_value(type("L", (), {"neg2_log_lambda": x}), rule) for x in xs]
    assert all(a > b for a, b in zip(p, p[1:]))
    assert all(a > b for a, b in zip(e, e[1:]))
