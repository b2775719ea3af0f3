"""Limit relations between generalized and ordinary Vandermonde matrices.

Three computable consequences of the power-series factorization
G_mn(x, a) = lim_k V_km(a)^T D_k V_kn(log x), with D_k the diagonal of inverse
factorials:

* truncated_factorization evaluates the k-term product, whose entries are the
  Taylor partial sums of exp(a_i log x_j);
* minor_series_gn expands det G_n as a sum of triple minor products over index
  combinations, grouped by their largest index;
* ratio_limit follows g_n(x, a*t) / v_n(a*t) down a t-schedule toward
  (prod_k 1/(k-1)!) * v_n(log x).
"""

from dataclasses import dataclass
from itertools import combinations
from math import factorial

import numpy as np

from .vandermonde import (
    IndexOutOfRange,
    build_generalized,
    build_vandermonde,
    det_general,
    det_vandermonde,
    log_branch,
)


class ZeroNode(ValueError):
    """A zero node reached an operation that needs logarithms."""


class LengthMismatch(ValueError):
    """Row and column selections must have equal length."""


class DegenerateExponents(ValueError):
    """The exponent vector has a vanishing Vandermonde determinant."""


class DimensionGuard(ValueError):
    """Combinatorial growth guard: the minor series is capped at n <= 4."""


MINOR_SERIES_MAX_N = 4

# Crossover for small-t evaluation of g_n(x, a*t).  Elimination on the nearly
# rank-one matrix loses roughly eps / t^(n-1) in relative terms, so it is only
# trusted while that estimate stays below ~1e-9; under the threshold the
# determinant is summed as an exact power series in t instead.
_SERIES_MAX_N = 8


def _t_crossover(n):
    return 1e-9 ** (1.0 / (n - 1)) if n >= 2 else 0.0


def _nonzero_nodes(x):
    x = np.atleast_1d(np.asarray(x))
    if np.any(x == 0):
        raise ZeroNode("nodes must be nonzero where logarithms are required")
    return x


def factorial_diagonal(k):
    """Diagonal entries 1/0!, 1/1!, ..., 1/(k-1)!."""
    if k < 1:
        raise ValueError("size must be at least 1")
    return np.array([1.0 / factorial(i) for i in range(k)])


def truncated_factorization(x, a, k, branch=0):
    """V_km(a)^T D_k V_kn(log x): entrywise k-term Taylor sums of x_j^a_i."""
    x = _nonzero_nodes(x)
    a = np.atleast_1d(np.asarray(a))
    if k < 1:
        raise ValueError("truncation must be at least 1")
    lx = log_branch(x, branch)
    va = build_vandermonde(a, k)
    vl = build_vandermonde(lx, k)
    d = factorial_diagonal(k)
    return va.T @ (d[:, None] * vl)


def _combination(idx, bound, what):
    idx = tuple(int(i) for i in idx)
    if any(i < 1 or i > bound for i in idx):
        raise IndexOutOfRange(f"{what} indices must lie in 1..{bound}")
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise IndexOutOfRange(f"{what} indices must be strictly increasing")
    return idx


def minor(m, rows, cols):
    """Determinant of the submatrix picked by 1-based index combinations."""
    m = np.asarray(m)
    if m.ndim != 2:
        raise ValueError("expected a matrix")
    rows = _combination(rows, m.shape[0], "row")
    cols = _combination(cols, m.shape[1], "column")
    if len(rows) != len(cols):
        raise LengthMismatch("row and column selections must have equal length")
    sel = m[np.ix_([i - 1 for i in rows], [j - 1 for j in cols])]
    return det_general(sel)


def exponent_sum(q):
    """E(q) = sum (q_j - 1); equals n(n-1)/2 on the identity combination."""
    q = _combination(q, max(q), "combination")
    return sum(i - 1 for i in q)


def _level_terms(a, lx, k):
    """Sum over combinations q with max index k of the triple minor product."""
    n = len(a)
    total = 0.0 + 0.0j
    for rest in combinations(range(1, k), n - 1):
        e = np.array(rest + (k,)) - 1
        left = np.power.outer(a, e)        # a_i^(q_l - 1)
        right = np.power.outer(lx, e).T    # (log x_j)^(q_i - 1)
        weight = 1.0
        for ei in e:
            weight /= factorial(int(ei))
        total += det_general(left) * weight * det_general(right)
    return total


def minor_series_gn(x, a, K, branch=0):
    """Partial sums (indexed k = n..K) of the minor expansion of det G_n."""
    x = _nonzero_nodes(x)
    a = np.atleast_1d(np.asarray(a)).astype(np.complex128)
    n = x.size
    if a.size != n:
        raise LengthMismatch("nodes and exponents must have equal length")
    if n > MINOR_SERIES_MAX_N:
        raise DimensionGuard(f"minor series capped at n <= {MINOR_SERIES_MAX_N}")
    if K < n:
        raise ValueError("truncation must be at least n")
    lx = log_branch(x, branch)
    sums = np.empty(K - n + 1, dtype=np.complex128)
    running = 0.0 + 0.0j
    for k in range(n, K + 1):
        running += _level_terms(a, lx, k)
        sums[k - n] = running
    return sums


def _gn_series(x, a, branch, max_levels=60):
    """det G_n summed by levels until the contribution stalls at rounding."""
    lx = log_branch(x, branch)
    a = np.atleast_1d(np.asarray(a)).astype(np.complex128)
    n = len(lx)
    total = 0.0 + 0.0j
    quiet = 0
    for k in range(n, n + max_levels + 1):
        term = _level_terms(a, lx, k)
        total += term
        if abs(term) <= 1e-17 * max(abs(total), 1e-300):
            quiet += 1
            if quiet >= 2:
                break
        else:
            quiet = 0
    return total


@dataclass
class RatioLimitReport:
    """g_n(x, a*t) / v_n(a*t) along a t-schedule, with the analytic limit.

    series_used marks schedule points where the determinant was summed as a
    power series instead of eliminated directly (small t, where elimination
    loses the signal to cancellation).
    """

    t_values: np.ndarray
    ratios: np.ndarray
    limit_rhs: complex
    series_used: np.ndarray

    def errors(self):
        return np.abs(self.ratios - self.limit_rhs)


def default_t_schedule(halvings=20):
    return 0.5 ** np.arange(halvings + 1)


def ratio_limit(x, a, t_schedule=None, branch=0):
    """Evaluate the determinant ratio along the schedule; error decays as O(t)."""
    x = _nonzero_nodes(x)
    a = np.atleast_1d(np.asarray(a))
    n = x.size
    if n < 2:
        raise ValueError("the ratio needs dimension >= 2")
    if a.size != n:
        raise LengthMismatch("nodes and exponents must have equal length")
    va = det_vandermonde(a)
    if va == 0:
        raise DegenerateExponents("exponent vector has coincident entries")
    if t_schedule is None:
        t_schedule = default_t_schedule()
    t_values = np.asarray(t_schedule, dtype=float)
    if np.any(t_values <= 0) or np.any(np.diff(t_values) >= 0):
        raise ValueError("t schedule must be positive and strictly decreasing")
    m = n * (n - 1) // 2
    lx = log_branch(x, branch)
    rhs = complex(det_vandermonde(lx))
    for kk in range(1, n + 1):
        rhs /= factorial(kk - 1)
    cross = _t_crossover(n)
    ratios = np.empty(t_values.size, dtype=np.complex128)
    used = np.zeros(t_values.size, dtype=bool)
    for i, t in enumerate(t_values):
        if t < cross and n <= _SERIES_MAX_N:
            g = _gn_series(x, a * t, branch)
            used[i] = True
        else:
            g = det_general(build_generalized(x, a * t, branch))
        ratios[i] = g / (t ** m * complex(va))
    return RatioLimitReport(
        t_values=t_values, ratios=ratios, limit_rhs=rhs, series_used=used
    )
