"""Pure numpy implementations of the hot kernels.

These are the reference fallback for ``_core``. Sums that feed the golden
tables go through :func:`math.fsum`, which is exactly rounded and therefore
platform independent; the compiled kernels use Neumaier summation in input
order, and both agree to within an ulp or two.
"""
import math

import numpy as np


def compensated_sum(x):
    return math.fsum(np.asarray(x, dtype=np.float64).tolist())


def sum_squares(sizes):
    sizes = np.asarray(sizes, dtype=np.float64)
    return math.fsum((sizes * sizes).tolist())


def entropy(sizes, total):
    p = np.asarray(sizes, dtype=np.float64) / total
    p = p[p > 0.0]
    return math.fsum((-p * np.log(p)).tolist())


_SPLITTER = 134217729.0  # 2**27 + 1


def _two_square(a):
    """Exact split a*a = p + e (Dekker)."""
    p = a * a
    t = _SPLITTER * a
    hi = t - (t - a)
    lo = a - hi
    e = ((hi * hi - p) + 2.0 * hi * lo) + lo * lo
    return p, e


def _square_sum(sizes):
    """sum(sizes**2) as an unevaluated pair hi + lo."""
    p, e = _two_square(sizes)
    parts = p.tolist() + e.tolist()
    hi = math.fsum(parts)
    lo = math.fsum(parts + [-hi])
    return hi, lo


def _loo_numerator(q_hi, q_lo, n):
    """Q - n**2 without cancellation when n dominates."""
    p, e = _two_square(n)
    s = q_hi - p
    bb = s - q_hi
    err = (q_hi - (s - bb)) + (-p - bb)
    return s + ((err + q_lo) - e)


def leave_one_out(sizes, total, i):
    sizes = np.asarray(sizes, dtype=np.float64)
    q_hi, q_lo = _square_sum(sizes)
    n = sizes[i:i + 1]
    return float(_loo_numerator(q_hi, q_lo, n)[0] / (total - n[0]))


def mas(sizes, total):
    """Mass Agreement Score in three O(K) passes.

    Q is carried as a double-double so that each leave-one-out numerator
    ``Q - n_i**2`` stays accurate even when cluster i holds almost all the
    mass. Each agreement term is accumulated as ``n_i * (N - |n_i - S_i|)``
    and the sum is divided by ``N**2`` once, which keeps equal integer splits
    at exactly 1.0.
    """
    sizes = np.asarray(sizes, dtype=np.float64)
    if sizes.shape[0] < 2:
        return 0.0
    q_hi, q_lo = _square_sum(sizes)
    loo = _loo_numerator(q_hi, q_lo, sizes) / (total - sizes)
    terms = sizes * (total - np.abs(sizes - loo))
    return math.fsum(terms.tolist()) / (total * total)


def _mas_rows(rows, total):
    """MAS of every row of a (M, K) size matrix; zero entries are empty clusters."""
    q = np.einsum("ij,ij->i", rows, rows)
    nonempty = rows > 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        loo = (q[:, None] - rows * rows) / (total - rows)
        terms = np.where(nonempty, rows * (total - np.abs(rows - loo)), 0.0)
    u = terms.sum(axis=1) / (total * total)
    u[nonempty.sum(axis=1) < 2] = 0.0
    return u


def single_move_deltas(sizes):
    """|Delta U| for every single-point move A -> B.

    Returns a (K, K + 1) array; column K is a move into a fresh empty
    cluster and the diagonal is NaN.
    """
    sizes = np.asarray(sizes, dtype=np.float64)
    k = sizes.shape[0]
    total = compensated_sum(sizes)
    base = mas(sizes, total)
    padded = np.append(sizes, 0.0)
    out = np.full((k, k + 1), np.nan)
    dest = np.arange(k + 1)
    for a in range(k):
        rows = np.tile(padded, (k + 1, 1))
        rows[:, a] -= 1.0
        rows[dest, dest] += 1.0
        keep = dest != a
        out[a, keep] = np.abs(_mas_rows(rows[keep], total) - base)
    return out


def silhouette_samples(x, codes, n_clusters, chunk=256):
    x = np.ascontiguousarray(x, dtype=np.float64)
    codes = np.asarray(codes, dtype=np.intp)
    n = x.shape[0]
    counts = np.bincount(codes, minlength=n_clusters).astype(np.float64)
    onehot = np.zeros((n, n_clusters))
    onehot[np.arange(n), codes] = 1.0
    sums = np.empty((n, n_clusters))
    for start in range(0, n, chunk):
        block = x[start:start + chunk]
        diff = block[:, None, :] - x[None, :, :]
        dist = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
        sums[start:start + chunk] = dist @ onehot

    own = counts[codes]
    rows = np.arange(n)
    with np.errstate(divide="ignore", invalid="ignore"):
        a = sums[rows, codes] / (own - 1.0)
        means = sums / counts
    means[rows, codes] = np.inf
    means[:, counts == 0] = np.inf
    b = means.min(axis=1)
    denom = np.maximum(a, b)
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.where(denom > 0.0, (b - a) / denom, 0.0)
    s[own <= 1.0] = 0.0
    return s
