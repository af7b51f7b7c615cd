"""The null-marginal table distribution, its normalization, and exact P-values.

h(x) is the likelihood under the null with its nuisance parameters integrated
out against uniform priors; normalizing h over the whole enumerated space
gives the sampling distribution of tables under the null, from which the
P-value of the likelihood-ratio statistic follows by summation.
"""

from __future__ import annotations

import hashlib
import math
import struct
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .lrt import log_lambda, log_lambda_many
from .numerics import log_factorial
from .tables import (
    ContingencyTable,
    Hypothesis,
    HypothesisSpec,
    count_tables,
    iter_cell_chunks,
)

DEFAULT_BUDGET = 10_000_000

# two statistics tie when |l1 - l2| <= 1e-9 * max(1, |l1|); analytically equal
# lambdas must not be split by floating-point noise
_TIE_REL = 1e-9


class BudgetExceededError(RuntimeError):
    """Table space too large to enumerate under the configured budget."""

    def __init__(self, count: int, budget: int):
        super().__init__(
            f"table space holds {count} tables, above the enumeration budget of {budget}"
        )
        self.count = count
        self.budget = budget


def log_h(table: ContingencyTable, spec: HypothesisSpec) -> float:
    """ln h(x): null likelihood with nuisance parameters integrated out."""
    spec.validate_table(table)
    return float(log_h_many(table.to_array().reshape(1, -1), spec)[0])


def log_h_many(cells: np.ndarray, spec: HypothesisSpec) -> np.ndarray:
    rows, cols = spec.table_shape
    x = cells.reshape(-1, rows, cols)
    cell_part = log_factorial(x).reshape(x.shape[0], -1).sum(axis=1)
    if spec.kind is Hypothesis.HARDY_WEINBERG:
        g = x[:, 0, :]
        total = g.sum(axis=1)
        a = 2 * g[:, 0] + g[:, 1]
        b = 2 * g[:, 2] + g[:, 1]
        return (
            log_factorial(total)
            - cell_part
            + g[:, 1] * math.log(2.0)
            + log_factorial(a)
            + log_factorial(b)
            - log_factorial(2 * total + 1)
        )
    row_m = x.sum(axis=2)
    col_m = x.sum(axis=1)
    total = row_m.sum(axis=1)
    margin_part = log_factorial(row_m).sum(axis=1) + log_factorial(col_m).sum(axis=1)
    if spec.kind is Hypothesis.HOMOGENEITY:
        return margin_part - cell_part - log_factorial(total + cols - 1)
    return (
        log_factorial(total)
        + margin_part
        - cell_part
        - log_factorial(total + rows - 1)
        - log_factorial(total + cols - 1)
    )


def _tie_threshold(value: float) -> float:
    return value + _TIE_REL * max(1.0, abs(value))


@dataclass(frozen=True)
class ExactDistribution:
    """Null distribution over a full table space plus a sorted P-value index.

    Per-table arrays follow enumeration order; the index pairs ascending
    log-lambda values with cumulative probabilities for O(log n) queries.
    """

    spec: HypothesisSpec
    log_h: np.ndarray
    log_lambda: np.ndarray
    log_norm: float
    sorted_log_lambda: np.ndarray
    cum_prob: np.ndarray

    @property
    def size(self) -> int:
        return self.log_h.size

    @property
    def log_prob(self) -> np.ndarray:
        return self.log_h - self.log_norm

    def probabilities(self) -> np.ndarray:
        return np.exp(self.log_prob)

    def p_value_of_log_lambda(self, value: float) -> float:
        idx = np.searchsorted(self.sorted_log_lambda, _tie_threshold(value), side="right")
        return float(self.cum_prob[idx - 1])

    def p_values(self) -> np.ndarray:
        """Exact P-value of every table, in enumeration order."""
        thresholds = self.log_lambda + _TIE_REL * np.maximum(1.0, np.abs(self.log_lambda))
        idx = np.searchsorted(self.sorted_log_lambda, thresholds, side="right")
        return self.cum_prob[idx - 1]


def _with_index(
    spec: HypothesisSpec, lh: np.ndarray, ll: np.ndarray, log_norm: float
) -> ExactDistribution:
    order = np.argsort(ll, kind="stable")
    cum = np.cumsum(np.exp(lh[order] - log_norm))
    cum /= cum[-1]  # pin the full-space mass to exactly 1
    return ExactDistribution(spec, lh, ll, log_norm, ll[order], cum)


def build_distribution(spec: HypothesisSpec, budget: int = DEFAULT_BUDGET) -> ExactDistribution:
    """Enumerate the space once, normalize h by log-sum-exp, and index by lambda."""
    count = count_tables(spec)
    if count > budget:
        raise BudgetExceededError(count, budget)
    lh = np.empty(count)
    ll = np.empty(count)
    pos = 0
    for chunk in iter_cell_chunks(spec):
        stop = pos + chunk.shape[0]
        lh[pos:stop] = log_h_many(chunk, spec)
        ll[pos:stop] = log_lambda_many(chunk, spec)
        pos = stop
    return _with_index(spec, lh, ll, float(logsumexp(lh)))


def exact_p_value(dist: ExactDistribution, observed: ContingencyTable) -> float:
    """Null probability of a table whose lambda is no larger than the observed one."""
    result = log_lambda(observed, dist.spec)
    return dist.p_value_of_log_lambda(result.log_lambda)


_MAGIC = b"XDST"
_VERSION = 1


def spec_fingerprint(spec: HypothesisSpec) -> str:
    """Canonical digest of a design, used to key distribution caches."""
    if spec.kind is Hypothesis.HOMOGENEITY:
        desc = f"homogeneity:{','.join(map(str, spec.row_margins))}:{spec.cols}"
    elif spec.kind is Hypothesis.INDEPENDENCE:
        desc = f"independence:{spec.shape[0]}x{spec.shape[1]}:{spec.total}"
    else:
        desc = f"hardy-weinberg:{spec.total}"
    return hashlib.sha256(desc.encode()).hexdigest()


def save_distribution(dist: ExactDistribution, path) -> None:
    """Write a versioned binary cache (little-endian 64-bit reals)."""
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<IQ", _VERSION, dist.size))
        fh.write(bytes.fromhex(spec_fingerprint(dist.spec)))
        fh.write(struct.pack("<d", dist.log_norm))
        fh.write(dist.log_h.astype("<f8").tobytes())
        fh.write(dist.log_lambda.astype("<f8").tobytes())


def load_distribution(path, spec: HypothesisSpec) -> ExactDistribution:
    """Read a cache written by save_distribution, checking it matches the design."""
    with open(path, "rb") as fh:
        if fh.read(4) != _MAGIC:
            raise ValueError(f"{path}: not a distribution cache")
        version, size = struct.unpack("<IQ", fh.read(12))
        if version != _VERSION:
            raise ValueError(f"{path}: unsupported cache version {version}")
        if fh.read(32) != bytes.fromhex(spec_fingerprint(spec)):
            raise ValueError(f"{path}: cache was built for a different design")
        (log_norm,) = struct.unpack("<d", fh.read(8))
        lh = np.frombuffer(fh.read(8 * size), dtype="<f8").astype(np.float64)
        ll = np.frombuffer(fh.read(8 * size), dtype="<f8").astype(np.float64)
    return _with_index(spec, lh, ll, log_norm)
