# cython: language_level=3
"""Compiled kernels. Same contracts as ``_pure``; see that module for docs."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, fma, log, sqrt

cnp.import_array()


cdef inline void _neumaier_add(double *s, double *c, double x) noexcept nogil:
    cdef double t = s[0] + x
    if fabs(s[0]) >= fabs(x):
        c[0] += (s[0] - t) + x
    else:
        c[0] += (x - t) + s[0]
    s[0] = t


def compensated_sum(const double[::1] x):
    cdef Py_ssize_t i, n = x.shape[0]
    cdef double s = 0.0, c = 0.0
    with nogil:
        for i in range(n):
            _neumaier_add(&s, &c, x[i])
    return s + c


def sum_squares(const double[::1] sizes):
    cdef Py_ssize_t i, n = sizes.shape[0]
    cdef double s = 0.0, c = 0.0
    with nogil:
        for i in range(n):
            _neumaier_add(&s, &c, sizes[i] * sizes[i])
    return s + c


def entropy(const double[::1] sizes, double total):
    cdef Py_ssize_t i, n = sizes.shape[0]
    cdef double s = 0.0, c = 0.0, p
    with nogil:
        for i in range(n):
            p = sizes[i] / total
            if p > 0.0:
                _neumaier_add(&s, &c, -p * log(p))
    return s + c


cdef inline void _square_sum(const double[::1] sizes, double *hi, double *lo) noexcept nogil:
    # Q = sum n_i^2 as an unevaluated pair hi + lo, each square split exactly
    cdef Py_ssize_t i
    cdef double s = 0.0, c = 0.0, p
    for i in range(sizes.shape[0]):
        p = sizes[i] * sizes[i]
        _neumaier_add(&s, &c, p)
        _neumaier_add(&s, &c, fma(sizes[i], sizes[i], -p))
    hi[0] = s + c
    lo[0] = c - (hi[0] - s)


cdef inline double _loo_numerator(double q_hi, double q_lo, double n) noexcept nogil:
    # Q - n^2 without cancellation when n dominates
    cdef double p = n * n
    cdef double e = fma(n, n, -p)
    cdef double s = q_hi - p
    cdef double bb = s - q_hi
    cdef double err = (q_hi - (s - bb)) + (-p - bb)
    return s + ((err + q_lo) - e)


def leave_one_out(const double[::1] sizes, double total, Py_ssize_t i):
    cdef double q_hi, q_lo
    _square_sum(sizes, &q_hi, &q_lo)
    return _loo_numerator(q_hi, q_lo, sizes[i]) / (total - sizes[i])


def mas(const double[::1] sizes, double total):
    cdef Py_ssize_t i, k = sizes.shape[0]
    cdef double q_hi, q_lo, u = 0.0, uc = 0.0, n_i, s_i
    if k < 2:
        return 0.0
    with nogil:
        # pass 1: Q
        _square_sum(sizes, &q_hi, &q_lo)
        # passes 2 and 3 fused per element; each S_i is O(1) given Q
        for i in range(k):
            n_i = sizes[i]
            s_i = _loo_numerator(q_hi, q_lo, n_i) / (total - n_i)
            _neumaier_add(&u, &uc, n_i * (total - fabs(n_i - s_i)))
    return (u + uc) / (total * total)


cdef double _mas_after_move(const double[::1] sizes, Py_ssize_t a, Py_ssize_t b,
                            double q_new, double total) noexcept nogil:
    cdef Py_ssize_t i, k = sizes.shape[0]
    cdef double u = 0.0, uc = 0.0, n_i, s_i
    cdef Py_ssize_t nonempty = 0
    for i in range(k + 1):
        if i == k:
            n_i = 1.0 if b == k else 0.0
        elif i == a:
            n_i = sizes[i] - 1.0
        elif i == b:
            n_i = sizes[i] + 1.0
        else:
            n_i = sizes[i]
        if n_i <= 0.0:
            continue
        nonempty += 1
        if n_i >= total:
            return 0.0
        s_i = (q_new - n_i * n_i) / (total - n_i)
        _neumaier_add(&u, &uc, n_i * (total - fabs(n_i - s_i)))
    if nonempty < 2:
        return 0.0
    return (u + uc) / (total * total)


def single_move_deltas(const double[::1] sizes):
    cdef Py_ssize_t a, b, k = sizes.shape[0]
    cdef double total = compensated_sum(sizes)
    cdef double base = mas(sizes, total)
    cdef double q = sum_squares(sizes)
    cdef double n_b
    out = np.full((k, k + 1), np.nan, dtype=np.float64)
    cdef double[:, ::1] view = out
    with nogil:
        for a in range(k):
            for b in range(k + 1):
                if b == a:
                    continue
                n_b = 0.0 if b == k else sizes[b]
                view[a, b] = fabs(
                    _mas_after_move(sizes, a, b, q + 2.0 * (n_b - sizes[a] + 1.0), total)
                    - base
                )
    return out


def silhouette_samples(const double[:, ::1] x, const cnp.intp_t[::1] codes,
                       Py_ssize_t n_clusters):
    cdef Py_ssize_t n = x.shape[0], dim = x.shape[1]
    cdef Py_ssize_t i, j, f, ci, cj, c
    cdef double d, diff, a, b, mean_c
    counts_arr = np.zeros(n_clusters, dtype=np.float64)
    sums_arr = np.zeros((n, n_clusters), dtype=np.float64)
    out = np.zeros(n, dtype=np.float64)
    cdef double[::1] counts = counts_arr
    cdef double[:, ::1] sums = sums_arr
    cdef double[::1] s = out
    with nogil:
        for i in range(n):
            counts[codes[i]] += 1.0
        for i in range(n):
            ci = codes[i]
            for j in range(i + 1, n):
                cj = codes[j]
                d = 0.0
                for f in range(dim):
                    diff = x[i, f] - x[j, f]
                    d += diff * diff
                d = sqrt(d)
                sums[i, cj] += d
                sums[j, ci] += d
        for i in range(n):
            ci = codes[i]
            if counts[ci] <= 1.0:
                s[i] = 0.0
                continue
            a = sums[i, ci] / (counts[ci] - 1.0)
            b = -1.0
            for c in range(n_clusters):
                if c == ci or counts[c] == 0.0:
                    continue
                mean_c = sums[i, c] / counts[c]
                if b < 0.0 or mean_c < b:
                    b = mean_c
            if a > b:
                s[i] = (b - a) / a
            elif b > 0.0:
                s[i] = (b - a) / b
            else:
                s[i] = 0.0
    return out
