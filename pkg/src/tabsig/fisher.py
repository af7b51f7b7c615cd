"""Fisher's exact test for 2x2 tables, conditioning on both sets of margins."""

from __future__ import annotations

import math

from .numerics import log_factorial
from .tables import ContingencyTable

# hypergeometric probabilities that agree to this relative tolerance are tied
_TIE_REL = 1e-7


def fisher_p_value(table: ContingencyTable) -> float:
    """Two-sided p-value: total probability of tables no more probable than observed.

    With both margins fixed the support is one-dimensional in the top-left
    cell; probabilities are hypergeometric and evaluated with log-factorials.
    """
    if (table.rows, table.cols) != (2, 2):
        raise ValueError("Fisher's exact test applies to 2x2 tables")
    (a, b), (c, d) = table.cells
    n1, n2 = a + b, c + d
    m = a + c
    total = n1 + n2

    def log_prob(k: int) -> float:
        return float(
            log_factorial(n1) - log_factorial(k) - log_factorial(n1 - k)
            + log_factorial(n2) - log_factorial(m - k) - log_factorial(n2 - m + k)
            - (log_factorial(total) - log_factorial(m) - log_factorial(total - m))
        )

    support = range(max(0, m - n2), min(n1, m) + 1)
    cutoff = log_prob(a) + math.log1p(_TIE_REL)
    p = sum(math.exp(log_prob(k)) for k in support if log_prob(k) <= cutoff)
    return min(p, 1.0)
