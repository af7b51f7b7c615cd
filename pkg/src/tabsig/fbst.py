"""Full Bayesian Significance Test under uniform Dirichlet priors.

The posterior is a product of Dirichlet blocks (one per multinomial in the
sampling model). The evidence in favor of the null is one minus the posterior
mass of the set of parameter points whose density reaches the supremum of the
posterior over the null set; that supremum has a closed form because uniform
priors put the constrained maximizer at the constrained MLE.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import xlogy

from .numerics import RngStream, log_factorial
from .tables import ContingencyTable, Hypothesis, HypothesisSpec


@dataclass(frozen=True)
class PosteriorModel:
    """Posterior for one observed table, with the null supremum precomputed."""

    spec: HypothesisSpec
    cells: tuple[tuple[int, ...], ...]
    log_sup_null: float

    @property
    def dirichlet_alphas(self) -> tuple[tuple[int, ...], ...]:
        """Posterior Dirichlet parameters (count + 1), one tuple per block."""
        return tuple(tuple(int(v) + 1 for v in block) for block in _blocks(self.cells, self.spec))


def _blocks(cells, spec: HypothesisSpec) -> list[np.ndarray]:
    # homogeneity: one multinomial per row; otherwise a single multinomial
    arr = np.asarray(cells, dtype=np.int64)
    if spec.kind is Hypothesis.HOMOGENEITY:
        return [arr[i] for i in range(arr.shape[0])]
    return [arr.reshape(-1)]


def _block_log_norm(counts: np.ndarray) -> float:
    # Dirichlet(counts + 1) normalizer: (n + k - 1)! / prod(counts!)
    n = int(counts.sum())
    return float(log_factorial(n + counts.size - 1) - log_factorial(counts).sum())


def posterior_model(table: ContingencyTable, spec: HypothesisSpec) -> PosteriorModel:
    spec.validate_table(table)
    return PosteriorModel(spec, table.cells, _log_sup_null(table, spec))


def _log_sup_null(table: ContingencyTable, spec: HypothesisSpec) -> float:
    cells = table.to_array()
    n = table.total
    norm = sum(_block_log_norm(block) for block in _blocks(table.cells, spec))
    if spec.kind is Hypothesis.HARDY_WEINBERG:
        x1, x2, x3 = (int(v) for v in cells[0])
        if n == 0:
            return norm
        a, b = 2 * x1 + x2, 2 * x3 + x2
        theta = a / (2.0 * n)
        return norm + x2 * math.log(2.0) + float(xlogy(a, theta) + xlogy(b, 1.0 - theta))
    if n == 0:
        return norm
    col_m = cells.sum(axis=0)
    shared = float(xlogy(col_m, col_m / n).sum())
    if spec.kind is Hypothesis.INDEPENDENCE:
        row_m = cells.sum(axis=1)
        shared += float(xlogy(row_m, row_m / n).sum())
    return norm + shared


def log_sup_under_null(model: PosteriorModel) -> float:
    """Posterior density at the best point inside the null set (log scale)."""
    return model.log_sup_null


def log_posterior_density(model: PosteriorModel, point) -> float:
    """Log posterior density at a parameter point.

    The point must match the table layout: one simplex row per block
    (homogeneity) or a single flattened simplex (independence, equilibrium).
    """
    blocks = _blocks(model.cells, model.spec)
    pt = np.asarray(point, dtype=np.float64).reshape(-1)
    sizes = [b.size for b in blocks]
    if pt.size != sum(sizes):
        raise ValueError(f"point has {pt.size} coordinates, expected {sum(sizes)}")
    total = 0.0
    offset = 0
    for counts in blocks:
        theta = pt[offset : offset + counts.size]
        offset += counts.size
        if np.any(theta < 0) or abs(float(theta.sum()) - 1.0) > 1e-9:
            raise ValueError("point is not on the model's parameter space")
        total += _block_log_norm(counts) + float(xlogy(counts, theta).sum())
    return total


def e_value(model: PosteriorModel, rng: RngStream, k: int) -> tuple[float, float]:
    """Monte Carlo evidence in favor of the null, with its binomial standard error.

    Draws k posterior points and counts how often their density reaches the
    null supremum; the e-value is one minus that fraction. Comparisons happen
    in log space; exact ties have posterior probability zero.
    """
    if k < 1:
        raise ValueError("sample size k must be >= 1")
    log_dens = np.zeros(k)
    gen = rng.generator
    for counts in _blocks(model.cells, model.spec):
        alphas = (counts + 1).astype(np.float64)
        draws = gen.standard_gamma(np.broadcast_to(alphas, (k, alphas.size)))
        draws /= draws.sum(axis=1, keepdims=True)
        log_dens += _block_log_norm(counts)
        nz = counts > 0
        if np.any(nz):
            with np.errstate(divide="ignore"):
                log_dens += np.log(draws[:, nz]) @ counts[nz].astype(np.float64)
    hits = int(np.count_nonzero(log_dens >= model.log_sup_null))
    frac = hits / k
    return 1.0 - frac, math.sqrt(frac * (1.0 - frac) / k)
