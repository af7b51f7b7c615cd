"""Likelihood-ratio statistics in log space, with Pearson's chi-square alongside.

Every x*ln(x/m) term uses the 0*ln(0) = 0 continuity convention, applied via
scipy's xlogy. Tables whose unrestricted estimate already satisfies the null
are detected with exact integer arithmetic so their statistic is exactly 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import xlogy

from .tables import ContingencyTable, Hypothesis, HypothesisSpec


@dataclass(frozen=True)
class LrtResult:
    """Log-space likelihood ratio and the null estimate it was computed from."""

    log_lambda: float
    mle_under_null: tuple

    @property
    def neg2_log_lambda(self) -> float:
        return -2.0 * self.log_lambda + 0.0  # normalize -0.0

    @property
    def statistic(self) -> float:
        """The likelihood ratio itself, in (0, 1]."""
        return float(math.exp(self.log_lambda))


def log_lambda(table: ContingencyTable, spec: HypothesisSpec) -> LrtResult:
    """ln of the likelihood-ratio statistic for one table under the design's null."""
    spec.validate_table(table)
    cells = table.to_array().reshape(1, -1)
    value = float(log_lambda_many(cells, spec)[0])
    return LrtResult(value, _mle_under_null(table, spec))


def _mle_under_null(table: ContingencyTable, spec: HypothesisSpec) -> tuple:
    n = table.total
    if spec.kind is Hypothesis.HARDY_WEINBERG:
        x1, x2, _ = table.cells[0]
        # empty sample: any allele probability maximizes; report the symmetric one
        return ((2 * x1 + x2) / (2 * n) if n else 0.5,)
    if n == 0:
        rows, cols = spec.table_shape
        if spec.kind is Hypothesis.HOMOGENEITY:
            return tuple([1.0 / cols] * cols)
        return tuple([1.0 / rows] * rows), tuple([1.0 / cols] * cols)
    if spec.kind is Hypothesis.HOMOGENEITY:
        return tuple(m / n for m in table.col_margins)
    return (
        tuple(m / n for m in table.row_margins),
        tuple(m / n for m in table.col_margins),
    )


def log_lambda_many(cells: np.ndarray, spec: HypothesisSpec) -> np.ndarray:
    """log-lambda for a (m, rows*cols) block of tables in one vectorized pass."""
    rows, cols = spec.table_shape
    x = cells.reshape(-1, rows, cols)
    with np.errstate(divide="ignore", invalid="ignore"):
        if spec.kind is Hypothesis.HARDY_WEINBERG:
            out, exact = _hw_log_lambda(x[:, 0, :])
        else:
            out, exact = _block_log_lambda(x, spec.kind)
    out = np.minimum(out, 0.0)
    out[exact] = 0.0
    return out


def _block_log_lambda(x: np.ndarray, kind: Hypothesis) -> tuple[np.ndarray, np.ndarray]:
    row_m = x.sum(axis=2)
    col_m = x.sum(axis=1)
    total = row_m.sum(axis=1)
    pooled = xlogy(col_m, col_m / total[:, None]).sum(axis=1)
    if kind is Hypothesis.HOMOGENEITY:
        free = xlogy(x, x / row_m[:, :, None]).sum(axis=(1, 2))
    else:
        pooled = pooled + xlogy(row_m, row_m / total[:, None]).sum(axis=1)
        free = xlogy(x, x / total[:, None, None]).sum(axis=(1, 2))
    # the unrestricted estimate satisfies the null iff x_ij * n == n_i * n_j exactly
    exact = np.all(
        x * total[:, None, None] == row_m[:, :, None] * col_m[:, None, :], axis=(1, 2)
    )
    return pooled - free, exact


def _hw_log_lambda(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    total = x.sum(axis=1)
    a = 2 * x[:, 0] + x[:, 1]
    b = 2 * x[:, 2] + x[:, 1]
    theta = a / (2.0 * total)
    constrained = x[:, 1] * math.log(2.0) + xlogy(a, theta) + xlogy(b, 1.0 - theta)
    free = xlogy(x, x / total[:, None]).sum(axis=1)
    exact = (a * a == 4 * total * x[:, 0]) & (a * b == 2 * total * x[:, 1])
    return constrained - free, exact


def pearson_df(spec: HypothesisSpec) -> int:
    if spec.kind is Hypothesis.HARDY_WEINBERG:
        return 1
    rows, cols = spec.table_shape
    return (rows - 1) * (cols - 1)


def pearson_chi2(table: ContingencyTable, spec: HypothesisSpec) -> tuple[float, int]:
    """Sum of (observed - expected)^2 / expected and its degrees of freedom.

    Expected counts come from the estimate under the null; cells with zero
    expectation contribute nothing (their observed count is necessarily zero).
    """
    spec.validate_table(table)
    stat = float(pearson_chi2_many(table.to_array().reshape(1, -1), spec)[0])
    return stat, pearson_df(spec)


def pearson_chi2_many(cells: np.ndarray, spec: HypothesisSpec) -> np.ndarray:
    rows, cols = spec.table_shape
    x = cells.reshape(-1, rows, cols).astype(np.float64)
    if spec.kind is Hypothesis.HARDY_WEINBERG:
        g = x[:, 0, :]
        total = g.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            theta = np.where(total > 0, (2 * g[:, 0] + g[:, 1]) / (2.0 * total), 0.5)
        expected = total[:, None] * np.stack(
            [theta**2, 2 * theta * (1 - theta), (1 - theta) ** 2], axis=1
        )
        observed = g
    else:
        row_m = x.sum(axis=2)
        col_m = x.sum(axis=1)
        total = row_m.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            expected = np.where(
                total[:, None, None] > 0,
                row_m[:, :, None] * col_m[:, None, :] / total[:, None, None],
                0.0,
            )
        observed = x
    diff2 = np.square(observed - expected)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(expected > 0, diff2 / np.where(expected > 0, expected, 1.0), 0.0)
    return terms.reshape(terms.shape[0], -1).sum(axis=1)
