"""Per-table index reports and whole-space sweeps."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .asymptotic import df_rule
from .exact import DEFAULT_BUDGET, ExactDistribution, build_distribution
from .fbst import e_value, posterior_model
from .fisher import fisher_p_value
from .lrt import log_lambda, pearson_chi2, pearson_chi2_many, pearson_df
from .numerics import RngStream, chi2_survival
from .tables import ContingencyTable, Hypothesis, HypothesisSpec, iter_cell_chunks

SWEEP_COLUMNS = (
    "cells",
    "lambda",
    "neg2loglambda",
    "p_exact",
    "p_lrt_asym",
    "p_chi2",
    "p_fisher",
    "ev_mc",
    "ev_asym",
)


def _fisher_applies(spec: HypothesisSpec) -> bool:
    return spec.kind is Hypothesis.HOMOGENEITY and spec.table_shape == (2, 2)


@dataclass(frozen=True)
class IndexReport:
    """Every significance index for one observed table, plus the settings used."""

    cells: tuple[tuple[int, ...], ...]
    hypothesis: str
    lambda_: float
    neg2_log_lambda: float
    p_exact: float
    p_lrt_asym: float
    p_chi2: float
    p_fisher: float | None
    ev_mc: float
    ev_mc_stderr: float
    ev_asym: float
    seed: int
    mc_samples: int

    def to_dict(self) -> dict:
        return {
            "cells": [list(row) for row in self.cells],
            "hypothesis": self.hypothesis,
            "lambda": self.lambda_,
            "neg2_log_lambda": self.neg2_log_lambda,
            "p_exact": self.p_exact,
            "p_lrt_asym": self.p_lrt_asym,
            "p_chi2": self.p_chi2,
            "p_fisher": self.p_fisher,
            "ev_mc": self.ev_mc,
            "ev_mc_stderr": self.ev_mc_stderr,
            "ev_asym": self.ev_asym,
            "seed": self.seed,
            "mc_samples": self.mc_samples,
        }


def compute_report(
    table: ContingencyTable,
    spec: HypothesisSpec,
    *,
    seed: int = 0,
    mc_samples: int = 100_000,
    stream_id: int = 0,
    budget: int = DEFAULT_BUDGET,
    distribution: ExactDistribution | None = None,
) -> IndexReport:
    """All indices for one table; builds the exact distribution unless one is passed."""
    spec.validate_table(table)
    dist = distribution if distribution is not None else build_distribution(spec, budget)
    lrt = log_lambda(table, spec)
    rule = df_rule(spec)
    stat, df = pearson_chi2(table, spec)
    ev, stderr = e_value(posterior_model(table, spec), RngStream(seed, stream_id), mc_samples)
    return IndexReport(
        cells=table.cells,
        hypothesis=spec.kind.value,
        lambda_=lrt.statistic,
        neg2_log_lambda=lrt.neg2_log_lambda,
        p_exact=dist.p_value_of_log_lambda(lrt.log_lambda),
        p_lrt_asym=chi2_survival(lrt.neg2_log_lambda, rule.p_value_df),
        p_chi2=chi2_survival(stat, df),
        p_fisher=fisher_p_value(table) if _fisher_applies(spec) else None,
        ev_mc=ev,
        ev_mc_stderr=stderr,
        ev_asym=chi2_survival(lrt.neg2_log_lambda, rule.e_value_df),
        seed=seed,
        mc_samples=mc_samples,
    )


def sweep_indices(
    spec: HypothesisSpec,
    *,
    seed: int = 0,
    mc_samples: int = 100_000,
    budget: int = DEFAULT_BUDGET,
) -> Iterator[dict]:
    """All indices for every table of the space, in enumeration order.

    Monte Carlo e-values take one derived stream per table (stream id =
    enumeration index), so output is deterministic for a given seed. The
    enumeration budget is checked before the first row is produced.
    """
    dist = build_distribution(spec, budget)
    rule = df_rule(spec)
    neg2 = -2.0 * dist.log_lambda + 0.0
    p_exact = dist.p_values()
    p_lrt = chi2_survival(neg2, rule.p_value_df)
    ev_asym = chi2_survival(neg2, rule.e_value_df)
    master = RngStream(seed)
    fisher_applies = _fisher_applies(spec)
    df = pearson_df(spec)
    rows, cols = spec.table_shape

    def generate() -> Iterator[dict]:
        index = 0
        for chunk in iter_cell_chunks(spec):
            p_chi2 = chi2_survival(pearson_chi2_many(chunk, spec), df)
            for pos, flat in enumerate(chunk):
                table = ContingencyTable.from_rows(flat.reshape(rows, cols))
                ev, _ = e_value(posterior_model(table, spec), master.derive(index), mc_samples)
                yield {
                    "cells": ",".join(str(int(v)) for v in flat),
                    "lambda": float(np.exp(dist.log_lambda[index])),
                    "neg2loglambda": float(neg2[index]),
                    "p_exact": float(p_exact[index]),
                    "p_lrt_asym": float(p_lrt[index]),
                    "p_chi2": float(p_chi2[pos]),
                    "p_fisher": fisher_p_value(table) if fisher_applies else None,
                    "ev_mc": ev,
                    "ev_asym": float(ev_asym[index]),
                }
                index += 1

    return generate()
