"""Independent slow-path oracles used only by the test suite.

Everything here recomputes quantities from first principles (exact rational
arithmetic, direct factorial formulas, numeric quadrature) without touching
the package's log-space pipeline, so agreement is meaningful.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
from scipy.integrate import quad
from scipy.stats import beta as beta_dist

from tabsig import Hypothesis, HypothesisSpec, enumerate_tables


def _xlog(a: float, b: float) -> float:
    return a * math.log(b) if a else 0.0


def _ipow(base: int, exp: int) -> int:
    return base**exp  # 0**0 == 1 in Python, matching the continuity convention


# ---------------------------------------------------------------------------
# exact rational arithmetic over small table spaces


def rational_h(cells, spec: HypothesisSpec) -> Fraction:
    flat = [int(v) for row in cells for v in row]
    rows, cols = spec.table_shape
    cell_fact = math.prod(math.factorial(v) for v in flat)
    if spec.kind is Hypothesis.HARDY_WEINBERG:
        x1, x2, x3 = flat
        n = x1 + x2 + x3
        return Fraction(
            math.factorial(n)
            * 2**x2
            * math.factorial(2 * x1 + x2)
            * math.factorial(2 * x3 + x2),
            cell_fact * math.factorial(2 * n + 1),
        )
    row_m = [sum(flat[i * cols : (i + 1) * cols]) for i in range(rows)]
    col_m = [sum(flat[j::cols]) for j in range(cols)]
    n = sum(row_m)
    margin_fact = math.prod(math.factorial(m) for m in row_m) * math.prod(
        math.factorial(m) for m in col_m
    )
    if spec.kind is Hypothesis.HOMOGENEITY:
        return Fraction(margin_fact, cell_fact * math.factorial(n + cols - 1))
    return Fraction(
        math.factorial(n) * margin_fact,
        cell_fact * math.factorial(n + rows - 1) * math.factorial(n + cols - 1),
    )


def rational_lambda(cells, spec: HypothesisSpec) -> Fraction:
    """The likelihood ratio as an exact rational (powers of rationals)."""
    flat = [int(v) for row in cells for v in row]
    rows, cols = spec.table_shape
    if spec.kind is Hypothesis.HARDY_WEINBERG:
        x1, x2, x3 = flat
        n = x1 + x2 + x3
        if n == 0:
            return Fraction(1)
        a, b = 2 * x1 + x2, 2 * x3 + x2
        theta = Fraction(a, 2 * n)
        num = Fraction(2) ** x2 * theta**a * (1 - theta) ** b
        den = Fraction(
            _ipow(x1, x1) * _ipow(x2, x2) * _ipow(x3, x3), _ipow(n, n)
        )
        return num / den
    row_m = [sum(flat[i * cols : (i + 1) * cols]) for i in range(rows)]
    col_m = [sum(flat[j::cols]) for j in range(cols)]
    n = sum(row_m)
    if n == 0:
        return Fraction(1)
    # the homogeneity and independence ratios coincide as functions of the cells
    num = math.prod(_ipow(m, m) for m in col_m) * math.prod(_ipow(m, m) for m in row_m)
    den = _ipow(n, n) * math.prod(_ipow(v, v) for v in flat)
    return Fraction(num, den)


def rational_space(spec: HypothesisSpec):
    """(cells, h, lambda) for every table, in enumeration order."""
    return [
        (t.cells, rational_h(t.cells, spec), rational_lambda(t.cells, spec))
        for t in enumerate_tables(spec)
    ]


def rational_p_values(space) -> list[Fraction]:
    """Exact P-value per table, matching the order of `space`."""
    total = sum(h for _, h, _ in space)
    out = []
    for _, _, lam_obs in space:
        mass = sum(h for _, h, lam in space if lam <= lam_obs)
        out.append(mass / total)
    return out


# ---------------------------------------------------------------------------
# closed-form posterior suprema, written directly from the display formulas
# (factorials and power terms evaluated from scratch)


def sup_display_homogeneity_2x2(cells) -> float:
    (x11, x12), (x21, x22) = cells
    n1, n2 = x11 + x12, x21 + x22
    n = n1 + n2
    c1, c2 = x11 + x21, x12 + x22
    log_norm = math.log(math.factorial(n1 + 1)) + math.log(math.factorial(n2 + 1))
    log_norm -= sum(math.log(math.factorial(v)) for v in (x11, x12, x21, x22))
    if n == 0:
        return log_norm
    return log_norm + _xlog(c1, c1 / n) + _xlog(c2, c2 / n)


def sup_display_homogeneity(cells) -> float:
    rows = [list(map(int, r)) for r in cells]
    cols = len(rows[0])
    col_m = [sum(r[j] for r in rows) for j in range(cols)]
    n = sum(col_m)
    log_norm = 0.0
    for r in rows:
        log_norm += math.log(math.factorial(sum(r) + cols - 1))
        log_norm -= sum(math.log(math.factorial(v)) for v in r)
    if n == 0:
        return log_norm
    return log_norm + sum(_xlog(m, m / n) for m in col_m)


def sup_display_independence(cells) -> float:
    rows = [list(map(int, r)) for r in cells]
    ell, cols = len(rows), len(rows[0])
    row_m = [sum(r) for r in rows]
    col_m = [sum(r[j] for r in rows) for j in range(cols)]
    n = sum(row_m)
    log_norm = math.log(math.factorial(n + ell * cols - 1))
    log_norm -= sum(math.log(math.factorial(v)) for r in rows for v in r)
    if n == 0:
        return log_norm
    return (
        log_norm
        + sum(_xlog(m, m / n) for m in row_m)
        + sum(_xlog(m, m / n) for m in col_m)
    )


def sup_display_hw(cells) -> float:
    x1, x2, x3 = (int(v) for v in cells[0])
    n = x1 + x2 + x3
    log_norm = math.log(math.factorial(n + 2))
    log_norm -= sum(math.log(math.factorial(v)) for v in (x1, x2, x3))
    if n == 0:
        return log_norm
    a, b = 2 * x1 + x2, 2 * x3 + x2
    theta = a / (2 * n)
    return log_norm + _xlog(x2, 2.0) + _xlog(a, theta) + _xlog(b, 1.0 - theta)


# ---------------------------------------------------------------------------
# deterministic 2-D quadrature of the product-Beta posterior over the
# region whose density reaches the constrained supremum (2x2 homogeneity)


def _beta_mode(a: int, b: int) -> float:
    if a == 1 and b == 1:
        return 0.5  # flat density
    if a == 1:
        return 0.0
    if b == 1:
        return 1.0
    return (a - 1) / (a + b - 2)


def _superlevel_interval(frozen, a: int, b: int, log_level: float):
    """[lo, hi] where logpdf >= log_level; None when the level beats the mode."""
    mode = _beta_mode(a, b)
    peak = frozen.logpdf(mode) if not (a == 1 and b == 1) else 0.0
    if log_level > peak:
        return None
    if a == 1 and b == 1:
        return (0.0, 1.0)

    def rising(lo, hi):  # logpdf increasing on [lo, hi]; first point above level
        if frozen.logpdf(lo) >= log_level:
            return lo
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if frozen.logpdf(mid) >= log_level:
                hi = mid
            else:
                lo = mid
        return hi

    def falling(lo, hi):  # logpdf decreasing on [lo, hi]; last point above level
        if frozen.logpdf(hi) >= log_level:
            return hi
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if frozen.logpdf(mid) >= log_level:
                lo = mid
            else:
                hi = mid
        return lo

    lo = 0.0 if a == 1 else rising(0.0, mode)
    hi = 1.0 if b == 1 else falling(mode, 1.0)
    return (lo, hi)


def evalue_quadrature_2x2(cells) -> float:
    """e-value for a 2x2 homogeneity table by numeric integration.

    The null supremum is located numerically (dense scan plus refinement),
    so this path shares nothing with the closed-form implementation.
    """
    (x11, x12), (x21, x22) = cells
    a1, b1 = x11 + 1, x12 + 1
    a2, b2 = x21 + 1, x22 + 1
    f1 = beta_dist(a1, b1)
    f2 = beta_dist(a2, b2)

    def diag(t):
        return f1.logpdf(t) + f2.logpdf(t)

    grid = np.linspace(1e-9, 1 - 1e-9, 20001)
    values = f1.logpdf(grid) + f2.logpdf(grid)
    best = int(np.argmax(values))
    lo = grid[max(best - 1, 0)]
    hi = grid[min(best + 1, grid.size - 1)]
    for _ in range(200):  # golden-section refinement of the diagonal maximum
        m1 = lo + 0.381966011 * (hi - lo)
        m2 = hi - 0.381966011 * (hi - lo)
        if diag(m1) < diag(m2):
            lo = m1
        else:
            hi = m2
    log_sup = diag(0.5 * (lo + hi))

    peak2 = f2.logpdf(_beta_mode(a2, b2)) if (a2, b2) != (1, 1) else 0.0
    outer = _superlevel_interval(f1, a1, b1, log_sup - peak2)
    if outer is None:
        return 1.0

    def mass_at(t1: float) -> float:
        log_f1 = f1.logpdf(t1)
        inner = _superlevel_interval(f2, a2, b2, log_sup - log_f1)
        if inner is None:
            return 0.0
        return f1.pdf(t1) * (f2.cdf(inner[1]) - f2.cdf(inner[0]))

    lo1, hi1 = outer
    mid = min(max(_beta_mode(a1, b1), lo1), hi1)
    tangent_mass = 0.0
    for left, right in ((lo1, mid), (mid, hi1)):
        if right > left:
            part, _ = quad(mass_at, left, right, limit=200, epsabs=1e-11)
            tangent_mass += part
    return 1.0 - tangent_mass


# ---------------------------------------------------------------------------
# chi-square survival by direct numeric integration of the density


def chi2_survival_quad(x: float, df: int) -> float:
    half = df / 2.0
    norm = 1.0 / (2.0**half * math.gamma(half))

    def pdf(t):
        return norm * t ** (half - 1.0) * math.exp(-t / 2.0)

    value, _ = quad(pdf, x, np.inf, limit=200)
    return value
