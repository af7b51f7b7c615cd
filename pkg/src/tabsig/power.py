"""Monte Carlo power surfaces over a parameter grid for the frequentist indices.

Supported designs are 2x2 homogeneity (two independent binomial rows) and
Hardy-Weinberg equilibrium (one trinomial draw). Because the design fixes the
margins or the total, every index is precomputed once over the enumerated
table space; each replicate then reduces to a lookup.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .asymptotic import df_rule
from .exact import DEFAULT_BUDGET, build_distribution
from .fisher import fisher_p_value
from .lrt import pearson_chi2_many, pearson_df
from .numerics import RngStream, chi2_survival
from .tables import Hypothesis, HypothesisSpec, enumerate_tables, iter_cell_chunks

HOMOGENEITY_TESTS = ("exact_P", "asym_LRT", "chi2", "fisher")
HARDY_WEINBERG_TESTS = ("exact_P", "asym_LRT", "chi2")


@dataclass(frozen=True)
class PowerGrid:
    """Estimated rejection rate per test on a lattice of parameter points.

    Arrays are aligned: cell i has parameters (theta1[i], theta2[i]) and power
    power[test][i]. Hardy-Weinberg lattices omit infeasible cells (theta3 <= 0).
    """

    kind: Hypothesis
    grid_size: int
    replicates: int
    alpha: float
    seed: int
    tests: tuple[str, ...]
    theta1: np.ndarray
    theta2: np.ndarray
    power: dict[str, np.ndarray]


def default_tests(spec: HypothesisSpec) -> tuple[str, ...]:
    if spec.kind is Hypothesis.HOMOGENEITY:
        return HOMOGENEITY_TESTS
    return HARDY_WEINBERG_TESTS


def _check_spec(spec: HypothesisSpec, tests) -> tuple[str, ...]:
    if spec.kind is Hypothesis.HOMOGENEITY:
        if spec.table_shape != (2, 2):
            raise ValueError("power estimation supports 2x2 homogeneity designs only")
        allowed = HOMOGENEITY_TESTS
    elif spec.kind is Hypothesis.HARDY_WEINBERG:
        allowed = HARDY_WEINBERG_TESTS
    else:
        raise ValueError("power estimation supports homogeneity 2x2 and Hardy-Weinberg designs")
    tests = tuple(tests) if tests is not None else allowed
    for t in tests:
        if t not in allowed:
            raise ValueError(f"test {t!r} is not available for {spec.kind.value}")
    if not tests:
        raise ValueError("at least one test is required")
    return tests


def _index_lookup(spec: HypothesisSpec, tests, budget: int) -> dict[str, np.ndarray]:
    """Each requested index evaluated on every table of the space, as a lookup array.

    Homogeneity: array[x11, x21]. Hardy-Weinberg: array[x1, x2], with
    infeasible (x1, x2) pairs left at NaN so accidental hits fail loudly.
    """
    dist = build_distribution(spec, budget)
    cells = np.concatenate(list(iter_cell_chunks(spec)))
    rule = df_rule(spec)
    neg2 = -2.0 * dist.log_lambda
    flat: dict[str, np.ndarray] = {}
    if "exact_P" in tests:
        flat["exact_P"] = dist.p_values()
    if "asym_LRT" in tests:
        flat["asym_LRT"] = chi2_survival(neg2, rule.p_value_df)
    if "chi2" in tests:
        flat["chi2"] = chi2_survival(pearson_chi2_many(cells, spec), pearson_df(spec))
    if "fisher" in tests:
        flat["fisher"] = np.array([fisher_p_value(t) for t in enumerate_tables(spec)])

    if spec.kind is Hypothesis.HOMOGENEITY:
        n1, n2 = spec.row_margins
        return {t: v.reshape(n1 + 1, n2 + 1) for t, v in flat.items()}
    n = spec.total
    out = {}
    for t, v in flat.items():
        dense = np.full((n + 1, n + 1), np.nan)
        dense[cells[:, 0], cells[:, 1]] = v
        out[t] = dense
    return out


def power_at(
    spec: HypothesisSpec,
    tests,
    theta_points,
    *,
    replicates: int,
    alpha: float = 0.05,
    rng: RngStream,
    budget: int = DEFAULT_BUDGET,
    stream_ids=None,
) -> dict[str, np.ndarray]:
    """Rejection rate of each test at specific parameter points.

    Each point gets its own derived stream (by position, unless explicit
    stream_ids are given), so estimates do not depend on evaluation order.
    """
    tests = _check_spec(spec, tests)
    if replicates < 1:
        raise ValueError("replicates must be >= 1")
    points = list(theta_points)
    ids = list(stream_ids) if stream_ids is not None else list(range(len(points)))
    if len(ids) != len(points):
        raise ValueError("stream_ids must match theta_points in length")
    reject = {t: v <= alpha for t, v in _index_lookup(spec, tests, budget).items()}
    powers = {t: np.empty(len(points)) for t in tests}
    for pos, ((t1, t2), sid) in enumerate(zip(points, ids)):
        gen = rng.derive(sid).generator
        if spec.kind is Hypothesis.HOMOGENEITY:
            n1, n2 = spec.row_margins
            x1 = gen.binomial(n1, t1, size=replicates)
            x2 = gen.binomial(n2, t2, size=replicates)
        else:
            draws = gen.multinomial(spec.total, (t1, t2, 1.0 - t1 - t2), size=replicates)
            x1, x2 = draws[:, 0], draws[:, 1]
        for t in tests:
            powers[t][pos] = float(np.mean(reject[t][x1, x2]))
    return powers


def estimate_power(
    spec: HypothesisSpec,
    tests=None,
    *,
    grid_size: int = 100,
    replicates: int = 1000,
    alpha: float = 0.05,
    rng: RngStream,
    budget: int = DEFAULT_BUDGET,
) -> PowerGrid:
    """Power surface on a grid of cell centers (i - 0.5)/grid_size.

    Cell streams are derived from the master seed by full-lattice cell index,
    so results are reproducible and independent of evaluation order.
    """
    tests = _check_spec(spec, tests)
    if grid_size < 1:
        raise ValueError("grid_size must be >= 1")
    if replicates < 1:
        raise ValueError("replicates must be >= 1")
    centers = (np.arange(grid_size) + 0.5) / grid_size
    points: list[tuple[float, float]] = []
    ids: list[int] = []
    for i, t1 in enumerate(centers):
        for j, t2 in enumerate(centers):
            if spec.kind is Hypothesis.HARDY_WEINBERG and t1 + t2 >= 1.0 - 1e-12:
                continue  # outside the simplex
            points.append((float(t1), float(t2)))
            ids.append(i * grid_size + j)
    powers = power_at(
        spec,
        tests,
        points,
        replicates=replicates,
        alpha=alpha,
        rng=rng,
        budget=budget,
        stream_ids=ids,
    )
    theta = np.asarray(points, dtype=np.float64)
    return PowerGrid(
        kind=spec.kind,
        grid_size=grid_size,
        replicates=replicates,
        alpha=alpha,
        seed=rng.seed,
        tests=tests,
        theta1=theta[:, 0],
        theta2=theta[:, 1],
        power=powers,
    )
