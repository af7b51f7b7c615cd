"""Numeric kernels: cached log-factorials, chi-square survival, seedable RNG streams."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaincc, gammaln

_CACHE_LIMIT = 1_000_000
_logfact = gammaln(np.arange(128, dtype=np.float64) + 1.0)


def _logfact_table(upto: int) -> np.ndarray:
    global _logfact
    if upto >= _logfact.size:
        size = min(max(upto + 1, 2 * _logfact.size), _CACHE_LIMIT + 1)
        _logfact = gammaln(np.arange(max(size, upto + 1), dtype=np.float64) + 1.0)
    return _logfact


def log_factorial(m):
    """ln(m!) for nonnegative integer m; accepts scalars or integer arrays."""
    arr = np.asarray(m)
    if arr.size and int(arr.min()) < 0:
        raise ValueError("log_factorial requires m >= 0")
    hi = int(arr.max()) if arr.size else 0
    if hi <= _CACHE_LIMIT:
        out = _logfact_table(hi)[arr]
    else:
        out = gammaln(arr.astype(np.float64) + 1.0)
    if arr.ndim == 0:
        return float(out)
    return out


def chi2_survival(x, df: int):
    """Upper-tail probability Pr(X >= x) for X ~ chi-square with df degrees of freedom.

    Computed as the regularized upper incomplete gamma function Q(df/2, x/2).
    """
    if int(df) != df or df < 1:
        raise ValueError("df must be a positive integer")
    arr = np.asarray(x, dtype=np.float64)
    if np.any(arr < 0):
        raise ValueError("chi-square statistic must be >= 0")
    out = gammaincc(df / 2.0, arr / 2.0)
    return float(out) if arr.ndim == 0 else out


_MASK64 = (1 << 64) - 1


@dataclass
class RngStream:
    """Counter-keyed random stream: (seed, stream_id) determines every draw.

    Distinct stream ids under one master seed give independent, individually
    reproducible streams, so parallel work items (grid cells, per-table
    e-value batches) can be keyed by index.
    """

    seed: int
    stream_id: int = 0

    def __post_init__(self):
        key = np.array([self.seed & _MASK64, self.stream_id & _MASK64], dtype=np.uint64)
        self._generator = np.random.Generator(np.random.Philox(key=key))

    @property
    def generator(self) -> np.random.Generator:
        return self._generator

    def derive(self, stream_id: int) -> "RngStream":
        """Fresh stream with the same master seed and a new stream id."""
        return RngStream(self.seed, stream_id)


def sample_dirichlet(rng: RngStream, alphas, size: int | None = None):
    """Dirichlet draw(s) as normalized gamma variates; each draw sums to 1."""
    alphas = np.asarray(alphas, dtype=np.float64)
    if alphas.ndim != 1 or alphas.size == 0 or np.any(alphas <= 0):
        raise ValueError("alphas must be a nonempty vector of positive reals")
    shape = (alphas.size,) if size is None else (size, alphas.size)
    draws = rng.generator.standard_gamma(np.broadcast_to(alphas, shape))
    return draws / draws.sum(axis=-1, keepdims=True)


def sample_binomial(rng: RngStream, m: int, p: float, size: int | None = None):
    if m < 0 or not 0.0 <= p <= 1.0:
        raise ValueError("need m >= 0 and p in [0, 1]")
    out = rng.generator.binomial(m, p, size=size)
    return int(out) if size is None else out


def sample_multinomial(rng: RngStream, m: int, probs, size: int | None = None):
    probs = np.asarray(probs, dtype=np.float64)
    if m < 0 or np.any(probs < 0) or abs(float(probs.sum()) - 1.0) > 1e-9:
        raise ValueError("probs must be nonnegative and sum to 1")
    return rng.generator.multinomial(m, probs / probs.sum(), size=size)
