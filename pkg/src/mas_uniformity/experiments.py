"""Synthetic uniformity experiments and the composite-scorer harness.

Experiment 1 fragments a 1% cluster next to two fixed bulk clusters;
experiment 2 splits the bulk clusters. Both are reproduced cell for cell
against the reference tables embedded below. The harness scores externally
produced candidate partitions with the composite score and measures how
well each uniformity choice ranks them against ARI.
"""
from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

import numpy as np

from .agreement import (
    DatasetMatrix,
    RankingComparison,
    adjusted_rand_index,
    pwrs,
    silhouette_score,
)
from .composite import CompositeScore, composite_score, rank_candidates
from .errors import (
    AllPairsTiedError,
    LengthMismatchError,
    NoValidCandidatesError,
    OutOfRangeError,
)
from .metrics import (
    UNBOUNDED_SELECTORS,
    UNIFORMITY_SELECTORS,
    UniformityReport,
    effective_cluster_count,
    full_report,
)
from .partition import LabelAssignment, Partition, partition_from_labels, partition_from_sizes
from .tables import TABLE_HEADERS, round_half_away

logger = logging.getLogger(__name__)

BULK = (4950, 4950)
SMALL = 100
EXPERIMENT1_PIECES = (1, 2, 4, 8, 16, 32, 64, 100)


def split_evenly(mass: int, parts: int) -> list[int]:
    """``parts`` near-equal integers summing to ``mass``; the remainder goes
    one point at a time to the leading parts."""
    q, r = divmod(mass, parts)
    return [q + 1] * r + [q] * (parts - r)


def fragment_small_cluster(pieces: int) -> Partition:
    if not 1 <= pieces <= SMALL:
        raise OutOfRangeError(f"pieces must be in [1, {SMALL}], got {pieces}")
    return partition_from_sizes(list(BULK) + split_evenly(SMALL, pieces))


def _exp1_name(pieces: int) -> str:
    if pieces == SMALL:
        return f"{SMALL} singletons"
    i = pieces.bit_length() - 1
    return f"2^{i} = {pieces} piece" + ("s" if pieces > 1 else "")


EXPERIMENT2_CONFIGS = (
    ("[4950, 4950, 100]", (4950, 4950, 100)),
    ("[4950, 2475, 2475, 100]", (4950, 2475, 2475, 100)),
    ("[2475×4, 100]", (2475, 2475, 2475, 2475, 100)),
    ("[4950, 4950]", (4950, 4950)),
    ("[4950, 2475, 2475]", (4950, 2475, 2475)),
    ("[2475×4]", (2475, 2475, 2475, 2475)),
)

# Reference values at 4 decimals, columns in TABLE_HEADERS order after the name.
TABLE1_GOLDEN = {
    "2^0 = 1 piece": (3, "0.9856", "0.7422", "0.6756", "0.7130", "0.6490", "0.5099", "0.7648", "0.6767"),
    "2^1 = 2 pieces": (4, "0.9855", "0.7491", "0.5404", "0.7131", "0.5144", "0.5099", "0.6799", "0.5100"),
    "2^2 = 4 pieces": (6, "0.9855", "0.7561", "0.4220", "0.7132", "0.3980", "0.5099", "0.6119", "0.3433"),
    "2^3 = 8 pieces": (10, "0.9854", "0.7630", "0.3314", "0.7132", "0.3097", "0.5099", "0.5666", "0.2098"),
    "2^4 = 16 pieces": (18, "0.9854", "0.7699", "0.2664", "0.7132", "0.2468", "0.5099", "0.5399", "0.1208"),
    "2^5 = 32 pieces": (34, "0.9854", "0.7768", "0.2203", "0.7132", "0.2023", "0.5099", "0.5254", "0.0685"),
    "2^6 = 64 pieces": (66, "0.9854", "0.7833", "0.1870", "0.7132", "0.1702", "0.5099", "0.5178", "0.0388"),
    "100 singletons": (102, "0.9854", "0.7883", "0.1704", "0.7132", "0.1542", "0.5099", "0.5150", "0.0296"),
}

TABLE2_GOLDEN = {
    "[4950, 4950, 100]": (3, "0.9856", "0.7422", "0.6756", "0.7130", "0.6490", "0.5099", "0.7648", "0.6767"),
    "[4950, 2475, 2475, 100]": (4, "0.7925", "1.0853", "0.7829", "1.0007", "0.7218", "0.6324", "0.8431", "0.6362"),
    "[2475×4, 100]": (5, "0.9945", "1.4284", "0.8875", "1.4060", "0.8736", "0.7549", "0.9436", "0.8100"),
    "[4950, 4950]": (2, "1.0000", "0.6931", "1.0000", "0.6931", "1.0000", "0.5000", "1.0000", "1.0000"),
    "[4950, 2475, 2475]": (3, "0.7917", "1.0397", "0.9464", "0.9808", "0.8928", "0.6250", "0.9375", "0.8333"),
    "[2475×4]": (4, "1.0000", "1.3863", "1.0000", "1.3863", "1.0000", "0.7500", "1.0000", "1.0000"),
}


@dataclass(frozen=True)
class ExperimentRow:
    config_name: str
    partition: Partition
    report: UniformityReport

    def cells(self) -> tuple:
        return (self.config_name,) + self.report.as_tuple()


def _row(name: str, p: Partition) -> ExperimentRow:
    return ExperimentRow(name, p, full_report(p))


def run_experiment1() -> list[ExperimentRow]:
    return [_row(_exp1_name(k), fragment_small_cluster(k)) for k in EXPERIMENT1_PIECES]


def run_experiment2() -> list[ExperimentRow]:
    return [_row(name, partition_from_sizes(sizes)) for name, sizes in EXPERIMENT2_CONFIGS]


def golden_mismatches(rows: Sequence[ExperimentRow], golden: dict) -> list[tuple]:
    """Cells whose 4-decimal rendering differs from ``golden``.

    Returns ``(config, column, got, expected)`` tuples; empty means a match.
    """
    bad = []
    if [r.config_name for r in rows] != list(golden):
        bad.append(("*", "Configuration", [r.config_name for r in rows], list(golden)))
    for row in rows:
        expected = golden.get(row.config_name)
        if expected is None:
            continue
        got = (row.report.k,) + tuple(round_half_away(v, 4) for v in row.report.as_tuple()[1:])
        for col, g, e in zip(TABLE_HEADERS[1:], got, expected):
            if g != e:
                bad.append((row.config_name, col, g, e))
    return bad


def standardize(data) -> DatasetMatrix:
    """Zero mean, unit population variance per column; constant columns become 0."""
    x = data.values if isinstance(data, DatasetMatrix) else DatasetMatrix(data).values
    centered = x - x.mean(axis=0)
    std = np.sqrt((centered * centered).mean(axis=0))
    scale = np.where(std > 0.0, std, 1.0)
    out = centered / scale
    out[:, std == 0.0] = 0.0
    return DatasetMatrix(out)


@dataclass(frozen=True)
class CandidateSet:
    """Candidate labelings of one dataset plus its ground truth.

    The ground truth is appended as candidate ``"ground_truth"`` unless some
    candidate already equals it up to relabeling.
    """

    dataset_id: str
    candidates: tuple
    ground_truth: LabelAssignment

    def __post_init__(self):
        gt = self.ground_truth
        if not isinstance(gt, LabelAssignment):
            gt = LabelAssignment(gt)
            object.__setattr__(self, "ground_truth", gt)
        cands = []
        for cid, lab in self.candidates:
            lab = lab if isinstance(lab, LabelAssignment) else LabelAssignment(lab)
            if lab.n != gt.n:
                raise LengthMismatchError(
                    f"candidate {cid!r} labels {lab.n} points, ground truth labels {gt.n}"
                )
            cands.append((str(cid), lab))
        ids = [c for c, _ in cands]
        if len(set(ids)) != len(ids):
            raise ValueError("candidate ids must be unique")
        gt_codes = gt.codes()[0]
        if not any(np.array_equal(lab.codes()[0], gt_codes) for _, lab in cands):
            gt_id = "ground_truth" if "ground_truth" not in ids else "ground_truth_"
            cands.append((gt_id, gt))
        object.__setattr__(self, "candidates", tuple(cands))

    @property
    def n(self) -> int:
        return self.ground_truth.n


@dataclass(frozen=True)
class CandidateFactors:
    """Scorer-independent quantities of one candidate."""

    candidate_id: str
    partition: Partition
    k_eff: float
    silhouette: float
    ari: float


@dataclass(frozen=True)
class CandidateEvaluation:
    candidate_id: str
    k: int
    score: CompositeScore
    ari: float


@dataclass
class HarnessResult:
    scorer: str
    label: str
    evaluations: list[CandidateEvaluation]
    selected_id: str
    selected_ari: float
    comparison: RankingComparison | None
    pwrs_error: Exception | None = None
    skipped: list[tuple[str, str]] = field(default_factory=list)

    @property
    def pwrs(self) -> float | None:
        return None if self.comparison is None else self.comparison.pwrs


def candidate_factors(dataset, candidates: CandidateSet, *, standardize_data: bool = True):
    """Compute K_eff, silhouette and ARI for every non-degenerate candidate.

    Returns ``(factors, skipped)``; candidates with K = 1 or K = N are
    skipped with a reason because silhouette is undefined for them.
    """
    data = dataset if isinstance(dataset, DatasetMatrix) else DatasetMatrix(dataset)
    if data.n != candidates.n:
        raise LengthMismatchError(f"dataset has {data.n} points, labels cover {candidates.n}")
    if standardize_data:
        data = standardize(data)
    factors, skipped = [], []
    for cid, labels in candidates.candidates:
        p = partition_from_labels(labels)
        if p.k == 1 or p.k == data.n:
            reason = f"K={p.k} with N={data.n}: silhouette undefined"
            logger.info("skipping candidate %s (%s)", cid, reason)
            skipped.append((cid, reason))
            continue
        factors.append(CandidateFactors(
            candidate_id=cid,
            partition=p,
            k_eff=effective_cluster_count(p),
            silhouette=silhouette_score(data, labels),
            ari=adjusted_rand_index(labels, candidates.ground_truth),
        ))
    if not factors:
        raise NoValidCandidatesError(f"no scorable candidates for {candidates.dataset_id!r}")
    return factors, skipped


def _resolve_selector(choice) -> tuple[str, str, Callable[[Partition], float], bool]:
    if callable(choice):
        name = getattr(choice, "__name__", "custom")
        return name, name, choice, False
    try:
        label, fn = UNIFORMITY_SELECTORS[choice]
    except KeyError:
        raise ValueError(
            f"unknown uniformity selector {choice!r}; choose from {sorted(UNIFORMITY_SELECTORS)}"
        ) from None
    return choice, label, fn, choice not in UNBOUNDED_SELECTORS


def score_factors(factors, skipped, uniformity_choice, n: int) -> HarnessResult:
    key, label, fn, bounded = _resolve_selector(uniformity_choice)
    evaluations = [
        CandidateEvaluation(
            candidate_id=f.candidate_id,
            k=f.partition.k,
            score=composite_score(fn(f.partition), f.k_eff, f.silhouette, n, bounded=bounded),
            ari=f.ari,
        )
        for f in factors
    ]
    order = rank_candidates([e.score for e in evaluations])
    best = evaluations[order[0]]
    comparison, error = None, None
    try:
        comparison = pwrs([e.ari for e in evaluations], [e.score.phi for e in evaluations])
    except AllPairsTiedError as exc:
        error = exc
    return HarnessResult(
        scorer=key,
        label=label,
        evaluations=evaluations,
        selected_id=best.candidate_id,
        selected_ari=best.ari,
        comparison=comparison,
        pwrs_error=error,
        skipped=list(skipped),
    )


def run_experiment3_harness(dataset, candidates: CandidateSet, uniformity_choice="mas", *,
                            standardize_data: bool = True) -> HarnessResult:
    """Score every candidate with one uniformity choice and compare to ARI.

    ``uniformity_choice`` is a key of ``UNIFORMITY_SELECTORS`` (``"null"``
    is the constant-1 reference) or a callable on a Partition.
    """
    factors, skipped = candidate_factors(dataset, candidates, standardize_data=standardize_data)
    return score_factors(factors, skipped, uniformity_choice, candidates.n)


def run_experiment3_sweep(dataset, candidates: CandidateSet, choices=None, *,
                          standardize_data: bool = True) -> list[HarnessResult]:
    """Like :func:`run_experiment3_harness` for several choices, sharing the
    silhouette and ARI computations."""
    choices = list(UNIFORMITY_SELECTORS) if choices is None else list(choices)
    factors, skipped = candidate_factors(dataset, candidates, standardize_data=standardize_data)
    return [score_factors(factors, skipped, c, candidates.n) for c in choices]


def gaussian_blobs(n_per_cluster: int, centers, sigma: float = 1.0, seed: int = 0):
    """Isotropic Gaussian clusters; returns ``(DatasetMatrix, labels)``."""
    rng = np.random.default_rng(seed)
    centers = np.atleast_2d(np.asarray(centers, dtype=np.float64))
    points = [c + sigma * rng.standard_normal((n_per_cluster, centers.shape[1])) for c in centers]
    labels = [i for i in range(len(centers)) for _ in range(n_per_cluster)]
    return DatasetMatrix(np.vstack(points)), LabelAssignment(labels)


def merge_labels(labels, a, b) -> LabelAssignment:
    """Relabel cluster ``b`` as ``a``."""
    lab = labels.labels if isinstance(labels, LabelAssignment) else tuple(labels)
    return LabelAssignment(tuple(a if x == b else x for x in lab))


def split_label(labels, target, new_label) -> LabelAssignment:
    """Move the second half (in point order) of cluster ``target`` to ``new_label``."""
    lab = list(labels.labels if isinstance(labels, LabelAssignment) else labels)
    members = [i for i, x in enumerate(lab) if x == target]
    for i in members[len(members) // 2:]:
        lab[i] = new_label
    return LabelAssignment(tuple(lab))
