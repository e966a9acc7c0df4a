"""Mass Agreement Score and companion cluster-size uniformity measures."""
from ._backend import BACKEND
from .agreement import (
    DatasetMatrix,
    RankingComparison,
    adjusted_rand_index,
    pwrs,
    silhouette_samples,
    silhouette_score,
)
from .composite import CompositeScore, composite_score, null_reference_score, rank_candidates
from .errors import *  # noqa: F401,F403
from .experiments import (
    CandidateSet,
    ExperimentRow,
    fragment_small_cluster,
    run_experiment1,
    run_experiment2,
    run_experiment3_harness,
    run_experiment3_sweep,
    standardize,
)
from .metrics import (
    UniformityReport,
    effective_cluster_count,
    full_report,
    gini_score,
    hhi_scores,
    leave_one_out_baseline,
    mas,
    renyi2_entropy,
    shannon_entropy,
    size_biased_mean,
)
from .partition import LabelAssignment, Partition, partition_from_labels, partition_from_sizes

__version__ = "0.1.0"
