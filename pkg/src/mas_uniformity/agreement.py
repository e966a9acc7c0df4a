"""External agreement (ARI), internal geometry (silhouette) and ranking
agreement (PWRS) used to evaluate composite scorers."""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from ._backend import kernels
from .errors import (
    AllPairsTiedError,
    DegenerateClusteringError,
    LengthMismatchError,
    NonFiniteError,
    OutOfRangeError,
)
from .partition import LabelAssignment


@dataclass(frozen=True, eq=False)
class DatasetMatrix:
    """Points-by-features matrix of finite reals (read-only)."""

    values: np.ndarray

    def __post_init__(self):
        arr = np.array(self.values, dtype=np.float64, copy=True)
        if arr.ndim == 1:
            arr = arr[:, None]
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-D matrix, got {arr.ndim} dimensions")
        if arr.shape[0] < 2 or arr.shape[1] < 1:
            raise OutOfRangeError(f"need at least 2 points and 1 feature, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise NonFiniteError("dataset contains NaN or infinite values")
        arr = np.ascontiguousarray(arr)
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return int(self.values.shape[0])

    @property
    def d(self) -> int:
        return int(self.values.shape[1])


@dataclass(frozen=True)
class RankingComparison:
    pwrs: float
    concordant_pairs: int
    counted_pairs: int
    tied_pairs_excluded: int

    @property
    def total_pairs(self) -> int:
        return self.counted_pairs + self.tied_pairs_excluded


def _labels(x) -> tuple:
    return x.labels if isinstance(x, LabelAssignment) else tuple(x)


def _codes(labels: tuple) -> tuple[np.ndarray, int]:
    return LabelAssignment(labels).codes()


def _pairs(m: int) -> int:
    return m * (m - 1) // 2


def adjusted_rand_index(a, b) -> float:
    """Adjusted Rand Index between two labelings of the same points.

    Hubert-Arabie form ``(index - expected) / (max - expected)`` with
    ``max = (sum C(a_i, 2) + sum C(b_j, 2)) / 2``, evaluated in exact
    rational arithmetic from the contingency table. When max equals the
    expected index (both labelings all-one-cluster or all-singletons) the
    labelings are identical and 1.0 is returned.
    """
    la, lb = _labels(a), _labels(b)
    if len(la) != len(lb):
        raise LengthMismatchError(f"label lengths differ: {len(la)} vs {len(lb)}")
    n = len(la)
    if n < 2:
        raise OutOfRangeError("ARI needs at least two points")
    ca, _ = _codes(la)
    cb, _ = _codes(lb)
    index = sum(_pairs(c) for c in Counter(zip(ca.tolist(), cb.tolist())).values())
    sum_a = sum(_pairs(c) for c in Counter(ca.tolist()).values())
    sum_b = sum(_pairs(c) for c in Counter(cb.tolist()).values())
    expected = Fraction(sum_a * sum_b, _pairs(n))
    max_index = Fraction(sum_a + sum_b, 2)
    if max_index == expected:
        return 1.0
    return float((index - expected) / (max_index - expected))


def silhouette_samples(data, labels) -> np.ndarray:
    """Per-point silhouette values over Euclidean distances.

    Points in singleton clusters get 0.
    """
    x = data.values if isinstance(data, DatasetMatrix) else DatasetMatrix(data).values
    lab = _labels(labels)
    if len(lab) != x.shape[0]:
        raise LengthMismatchError(f"{len(lab)} labels for {x.shape[0]} points")
    codes, k = _codes(lab)
    if k < 2 or k > x.shape[0] - 1:
        raise DegenerateClusteringError(
            f"silhouette needs 2 <= K <= N-1 clusters, got K={k} for N={x.shape[0]}"
        )
    return np.asarray(kernels.silhouette_samples(x, codes, k))


def silhouette_score(data, labels) -> float:
    """Mean silhouette width, in [-1, 1]. Exact all-pairs, O(N^2 D)."""
    s = silhouette_samples(data, labels)
    return math.fsum(s.tolist()) / s.shape[0]


def pwrs(reference, scores) -> RankingComparison:
    """Pairwise ranking similarity of ``scores`` against ``reference``.

    Over all pairs i < j, a pair counts only if both lists differ on it
    (exact float comparison); it is concordant when both differences have
    the same sign.
    """
    ref = [float(v) for v in reference]
    sc = [float(v) for v in scores]
    if len(ref) != len(sc):
        raise LengthMismatchError(f"{len(ref)} reference values vs {len(sc)} scores")
    concordant = counted = tied = 0
    for i, j in combinations(range(len(ref)), 2):
        if ref[i] == ref[j] or sc[i] == sc[j]:
            tied += 1
            continue
        counted += 1
        # compare orderings, not the product of differences, which can underflow
        if (ref[j] > ref[i]) == (sc[j] > sc[i]):
            concordant += 1
    if counted == 0:
        raise AllPairsTiedError(f"no untied pairs among {len(ref)} candidates")
    return RankingComparison(concordant / counted, concordant, counted, tied)
