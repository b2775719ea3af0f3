"""Ordinary and generalized Vandermonde matrices and their determinants.

The ordinary matrix has entries x_j^(i-1) (rows indexed by powers, columns by
nodes, 0^0 = 1).  The generalized matrix replaces the power ladder 0..m-1 by an
arbitrary exponent vector a, with x_j^a_i = exp(a_i * log x_j) under a fixed
branch of the complex logarithm.  The determinant of the square ordinary
matrix factors as the product of all pairwise node differences; that product
formula, its analytic gradient, and a plain elimination determinant (kept as
an independent cross-check) live here.
"""

import numpy as np


class ZeroNodeWithNonIntegerExponent(ValueError):
    """A zero node was combined with an exponent that needs the log path."""


class NonSquareMatrix(ValueError):
    """Determinant requested for a non-square matrix."""


class RepeatedNodes(ValueError):
    """Two nodes coincide, so the gradient formula divides by zero."""


class IndexOutOfRange(ValueError):
    """An index lies outside the valid range."""


def _as_nodes(x):
    x = np.atleast_1d(np.asarray(x))
    if x.ndim != 1 or x.size < 1:
        raise ValueError("node vector must be one-dimensional and non-empty")
    if np.iscomplexobj(x):
        return x.astype(np.complex128)
    return x.astype(np.float64)


def log_branch(x, branch=0):
    """Complex log with imaginary part in ((2*branch-1)*pi, (2*branch+1)*pi]."""
    x = _as_nodes(x)
    if np.any(x == 0):
        raise ZeroNodeWithNonIntegerExponent("log of a zero node is undefined")
    out = np.log(x.astype(np.complex128))
    if branch:
        out = out + 2j * np.pi * branch
    return out


def build_vandermonde(x, m):
    """m x n matrix with entry (i, j) = x_j^(i-1); 0^0 evaluates to 1."""
    x = _as_nodes(x)
    if m < 1:
        raise ValueError("row count must be at least 1")
    return np.vander(x, m, increasing=True).T


def _is_integer(v):
    return v.imag == 0 and float(v.real).is_integer()


def build_generalized(x, a, branch=0):
    """m x n matrix with entry (i, j) = x_j^a_i under the chosen log branch.

    Rows whose exponent is a nonnegative integer are built by plain powering,
    which keeps zero nodes legal there (0^0 = 1).  Every other row needs
    exp(a_i * log x_j) and therefore nonzero nodes.
    """
    x = _as_nodes(x)
    a = _as_nodes(a)
    has_zero = bool(np.any(x == 0))
    power_rows = [_is_integer(complex(ai)) and complex(ai).real >= 0 for ai in a]
    if has_zero and not all(power_rows):
        raise ZeroNodeWithNonIntegerExponent(
            "zero nodes are only valid with nonnegative integer exponents"
        )
    if all(power_rows) and not np.iscomplexobj(x):
        rows = [x ** int(complex(ai).real) for ai in a]
        return np.array(rows)
    lx = log_branch(x, branch)
    rows = []
    for ai, plain in zip(a, power_rows):
        if plain:
            rows.append(x.astype(np.complex128) ** int(complex(ai).real))
        else:
            rows.append(np.exp(complex(ai) * lx))
    return np.array(rows)


def det_vandermonde(x):
    """prod_{i<j} (x_j - x_i); zero exactly when two nodes coincide.

    For real nodes the factors are multiplied in magnitude-sorted order, so
    permuting the nodes changes only the sign and |result| is bit-identical.
    """
    x = _as_nodes(x)
    n = x.size
    if n == 1:
        return x.dtype.type(1)
    d = (x[None, :] - x[:, None])[np.triu_indices(n, 1)]
    if np.iscomplexobj(x):
        return np.prod(d)
    if np.any(d == 0):
        return np.float64(0.0)
    magnitude = np.prod(np.sort(np.abs(d)))
    negatives = int(np.count_nonzero(d < 0))
    return np.float64(-magnitude if negatives % 2 else magnitude)


def det_general(m):
    """Determinant by Gaussian elimination with partial pivoting.

    Independent of the product formula; the two must agree on ordinary
    Vandermonde matrices up to rounding.
    """
    a = np.asarray(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NonSquareMatrix(f"expected a square matrix, got shape {a.shape}")
    dtype = np.complex128 if np.iscomplexobj(a) else np.float64
    a = a.astype(dtype, copy=True)
    n = a.shape[0]
    det = dtype(1)
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        if a[p, k] == 0:
            return dtype(0)
        if p != k:
            a[[k, p]] = a[[p, k]]
            det = -det
        det = det * a[k, k]
        a[k + 1:, k + 1:] -= np.outer(a[k + 1:, k] / a[k, k], a[k, k + 1:])
    return det


def grad_vn(x):
    """Gradient of det_vandermonde: component k is sum_{i!=k} v/(x_k - x_i)."""
    x = _as_nodes(x)
    n = x.size
    d = x[:, None] - x[None, :]
    off = ~np.eye(n, dtype=bool)
    if np.any(d[off] == 0):
        raise RepeatedNodes("gradient is undefined when nodes coincide")
    v = det_vandermonde(x)
    np.fill_diagonal(d, 1)
    r = v / d
    r[np.eye(n, dtype=bool)] = 0
    return r.sum(axis=1)


def elementary_symmetric(x, k):
    """e_k(x), the sum of all k-fold products of distinct entries; e_0 = 1."""
    x = _as_nodes(x)
    n = x.size
    if not 0 <= k <= n:
        raise IndexOutOfRange(f"order {k} outside 0..{n}")
    e = np.zeros(k + 1, dtype=x.dtype)
    e[0] = 1
    for xi in x:
        for j in range(k, 0, -1):
            e[j] += xi * e[j - 1]
    return e[k]
