"""Cluster-size uniformity measures.

All functions take a :class:`~mas_uniformity.partition.Partition` (raw size
sequences are accepted too and canonicalized) and depend only on the
multiset of sizes. Logarithms are natural, so entropies are in nats.

Where a normalized form is 0/0 on a single-cluster partition, it is defined
as 0, the same endpoint MAS uses for K = 1.
"""
from __future__ import annotations

import math
from dataclasses import astuple, dataclass, fields

import numpy as np

from ._backend import kernels
from .errors import IndexOutOfRangeError, SingleClusterError
from .partition import Partition, partition_from_sizes


def _as_partition(p) -> Partition:
    return p if isinstance(p, Partition) else partition_from_sizes(p)


def size_biased_mean(p) -> float:
    """Expected size of the cluster containing a uniformly drawn point, sum(n^2)/N."""
    p = _as_partition(p)
    return kernels.sum_squares(p.sizes) / p.total


def leave_one_out_baseline(p, i: int) -> float:
    """Size-biased mean of every cluster except ``i``.

    Raises
    ------
    SingleClusterError
        The partition has one cluster, so the complement is empty.
    IndexOutOfRangeError
        ``i`` is not a valid cluster index.
    """
    p = _as_partition(p)
    if p.k < 2:
        raise SingleClusterError("leave-one-out baseline needs at least two clusters")
    if not -p.k <= i < p.k:
        raise IndexOutOfRangeError(f"cluster index {i} out of range for K={p.k}")
    return float(kernels.leave_one_out(p.sizes, p.total, i % p.k))


def mas(p) -> float:
    """Mass Agreement Score.

    Point-weighted mean over clusters of ``1 - |n_i - S_i| / N`` where
    ``S_i`` is the leave-one-out size-biased mean. Lies in (0, 1] for
    K >= 2, equals 1 exactly when all clusters have the same size, and is 0
    by convention for a single cluster. O(K).
    """
    p = _as_partition(p)
    return float(kernels.mas(p.sizes, p.total))


def hhi(p) -> float:
    p = _as_partition(p)
    return kernels.sum_squares(p.sizes) / (p.total * p.total)


def shannon_entropy(p) -> tuple[float, float]:
    """Shannon entropy in nats and its ``H / ln K`` normalization."""
    p = _as_partition(p)
    raw = max(float(kernels.entropy(p.sizes, p.total)), 0.0)
    if p.k < 2:
        return raw, 0.0
    return raw, min(raw / math.log(p.k), 1.0)


def renyi2_entropy(p) -> tuple[float, float]:
    """Collision (order-2 Rényi) entropy ``-ln(HHI)`` and ``H2 / ln K``."""
    p = _as_partition(p)
    raw = max(-math.log(hhi(p)), 0.0)
    if p.k < 2:
        return raw, 0.0
    return raw, min(raw / math.log(p.k), 1.0)


def hhi_scores(p) -> tuple[float, float, float]:
    """Return ``(HHI, 1 - HHI, 1 - HHI*)``.

    ``HHI*`` rescales HHI by its K-dependent floor 1/K. ``1 - HHI*`` is 0
    for K = 1.
    """
    p = _as_partition(p)
    h = hhi(p)
    if p.k < 2:
        return h, 1.0 - h, 0.0
    floor = 1.0 / p.k
    star = (h - floor) / (1.0 - floor)
    return h, 1.0 - h, min(max(1.0 - star, 0.0), 1.0)


def gini_score(p) -> float:
    """``1 - Gini`` with Gini = sum_ij |n_i - n_j| / (2 K N).

    The double sum runs over ordered pairs and is evaluated in O(K log K)
    from the sorted sizes. A single cluster scores 1.
    """
    p = _as_partition(p)
    k = p.k
    ordered = np.sort(p.sizes)
    weights = 2.0 * np.arange(k, dtype=np.float64) - (k - 1)
    pair_sum = 2.0 * kernels.compensated_sum(np.ascontiguousarray(weights * ordered))
    return 1.0 - pair_sum / (2.0 * k * p.total)


def effective_cluster_count(p) -> float:
    """Inverse HHI, the effective number of clusters; lies in [1, K]."""
    p = _as_partition(p)
    return min(max(1.0 / hhi(p), 1.0), float(p.k))


@dataclass(frozen=True)
class UniformityReport:
    """Every uniformity measure for one partition (one table row)."""

    k: int
    mas: float
    shannon: float
    shannon_norm: float
    renyi2: float
    renyi2_norm: float
    hhi_score: float
    hhi_star_score: float
    gini_score: float

    @classmethod
    def columns(cls) -> tuple[str, ...]:
        return tuple(f.name for f in fields(cls))

    def as_tuple(self) -> tuple:
        return astuple(self)

    def as_dict(self) -> dict:
        return dict(zip(self.columns(), self.as_tuple()))


def full_report(p) -> UniformityReport:
    p = _as_partition(p)
    h, h_norm = shannon_entropy(p)
    h2, h2_norm = renyi2_entropy(p)
    _, one_minus_hhi, one_minus_star = hhi_scores(p)
    return UniformityReport(
        k=p.k,
        mas=mas(p),
        shannon=h,
        shannon_norm=h_norm,
        renyi2=h2,
        renyi2_norm=h2_norm,
        hhi_score=one_minus_hhi,
        hhi_star_score=one_minus_star,
        gini_score=gini_score(p),
    )


# Selectors usable as the uniformity factor of the composite scorer, in the
# row order of the published comparison. "null" is the constant 1.
UNIFORMITY_SELECTORS = {
    "null": ("Null Reference", lambda p: 1.0),
    "mas": ("MAS", mas),
    "gini": ("1 - Gini", gini_score),
    "hhi": ("1 - HHI", lambda p: hhi_scores(p)[1]),
    "hhi_star": ("1 - HHI*", lambda p: hhi_scores(p)[2]),
    "entropy": ("H (Entropy)", lambda p: shannon_entropy(p)[0]),
    "entropy_norm": ("H/ln K", lambda p: shannon_entropy(p)[1]),
    "renyi2": ("H2 (Renyi-2)", lambda p: renyi2_entropy(p)[0]),
    "renyi2_norm": ("H2/ln K", lambda p: renyi2_entropy(p)[1]),
    "k_eff": ("K_eff", effective_cluster_count),
}

# Selectors whose values are not confined to [0, 1].
UNBOUNDED_SELECTORS = frozenset({"entropy", "renyi2", "k_eff"})
