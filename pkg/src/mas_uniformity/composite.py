"""Composite hyperparameter score and candidate ranking.

    phi = v * (1 - log_N(K_eff)) * (Sil + 1) / 2

``v`` is a uniformity score, ``K_eff`` the effective cluster count and
``Sil`` the mean silhouette. The middle factor penalizes fragmentation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import EmptyInputError, OutOfRangeError


def _phi(v: float, k_eff: float, sil: float, n: int) -> float:
    return v * (1.0 - math.log(k_eff) / math.log(n)) * (sil + 1.0) / 2.0


@dataclass(frozen=True)
class CompositeScore:
    uniformity_v: float
    k_eff: float
    silhouette: float
    n: int
    phi: float

    def recompute(self) -> float:
        return _phi(self.uniformity_v, self.k_eff, self.silhouette, self.n)


def composite_score(v: float, k_eff: float, sil: float, n: int, *,
                    bounded: bool = True) -> CompositeScore:
    """Score one candidate.

    With ``bounded=False`` the uniformity factor only has to be finite and
    nonnegative; this admits raw entropies and K_eff as ``v``, which are
    not confined to [0, 1].

    Raises
    ------
    OutOfRangeError
        Any factor is outside its domain: ``v`` in [0, 1], ``1 <= k_eff <= n``,
        ``sil`` in [-1, 1], ``n >= 2``.
    """
    if not float(n).is_integer() or n < 2:
        raise OutOfRangeError(f"n must be an integer >= 2, got {n!r}")
    n = int(n)
    if not math.isfinite(v) or v < 0.0 or (bounded and v > 1.0):
        raise OutOfRangeError(f"uniformity score {v!r} out of range")
    if not math.isfinite(k_eff) or not 1.0 <= k_eff <= n:
        raise OutOfRangeError(f"k_eff={k_eff!r} must lie in [1, {n}]")
    if not math.isfinite(sil) or not -1.0 <= sil <= 1.0:
        raise OutOfRangeError(f"silhouette {sil!r} must lie in [-1, 1]")
    return CompositeScore(float(v), float(k_eff), float(sil), n, _phi(v, k_eff, sil, n))


def null_reference_score(k_eff: float, sil: float, n: int) -> CompositeScore:
    """Composite score with the uniformity factor fixed to 1."""
    return composite_score(1.0, k_eff, sil, n)


def rank_candidates(scored) -> list[int]:
    """Indices by descending phi; ties go to lower k_eff, then input order."""
    scored = list(scored)
    if not scored:
        raise EmptyInputError("no candidates to rank")
    return sorted(range(len(scored)), key=lambda i: (-scored[i].phi, scored[i].k_eff, i))
