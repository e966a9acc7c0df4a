"""Partitions of a point mass into clusters, and per-point label assignments."""
from __future__ import annotations

from collections import Counter
from collections.abc import Hashable, Iterable, Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ._backend import kernels
from .errors import AllZeroError, EmptyInputError, NonFiniteError, OutOfRangeError


@dataclass(frozen=True, eq=False)
class Partition:
    """Positive cluster masses in input order plus their total.

    Build with :func:`partition_from_sizes` or :func:`partition_from_labels`;
    the constructor does no validation. ``sizes`` is a read-only float64
    array, so a Partition can be shared freely.
    """

    sizes: np.ndarray
    total: float

    @property
    def k(self) -> int:
        return int(self.sizes.shape[0])

    @property
    def is_integral(self) -> bool:
        return bool(np.all(self.sizes == np.floor(self.sizes)))

    @property
    def proportions(self) -> np.ndarray:
        return self.sizes / self.total

    def scaled(self, r: float) -> Partition:
        return partition_from_sizes(self.sizes * r)

    def __len__(self) -> int:
        return self.k

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.total == other.total and np.array_equal(self.sizes, other.sizes)

    def __hash__(self):
        return hash((self.total, self.sizes.tobytes()))

    def __repr__(self):
        shown = ", ".join(_fmt_size(s) for s in self.sizes[:12])
        if self.k > 12:
            shown += f", ... ({self.k} clusters)"
        return f"Partition(sizes=[{shown}], total={_fmt_size(self.total)})"


def _fmt_size(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def partition_from_sizes(raw_sizes: Iterable[float]) -> Partition:
    """Canonical partition from raw cluster masses.

    Zero entries are dropped; the order of the surviving entries is kept.

    Raises
    ------
    EmptyInputError
        ``raw_sizes`` has no entries.
    NonFiniteError
        An entry is NaN or infinite.
    AllZeroError
        No entry is positive.
    OutOfRangeError
        An entry is negative.
    """
    if isinstance(raw_sizes, Partition):
        raw_sizes = raw_sizes.sizes
    arr = np.array(
        raw_sizes if isinstance(raw_sizes, (np.ndarray, Sequence)) else list(raw_sizes),
        dtype=np.float64,
    ).ravel()
    if arr.size == 0:
        raise EmptyInputError("no cluster sizes given")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteError("cluster sizes must be finite")
    if np.any(arr < 0):
        raise OutOfRangeError("cluster sizes must be nonnegative")
    if not np.any(arr > 0):
        raise AllZeroError("all cluster sizes are zero")
    if not np.all(arr > 0):
        arr = arr[arr > 0]
    arr = np.ascontiguousarray(arr)
    arr.flags.writeable = False
    return Partition(sizes=arr, total=float(kernels.compensated_sum(arr)))


@dataclass(frozen=True)
class LabelAssignment:
    """One opaque cluster identifier per point."""

    labels: tuple

    def __post_init__(self):
        if not isinstance(self.labels, tuple):
            object.__setattr__(self, "labels", tuple(self.labels))

    @classmethod
    def from_file(cls, path: str | Path) -> LabelAssignment:
        """Read one label token per line (UTF-8, no header).

        Blank lines are skipped. Tokens are compared as strings.
        """
        text = Path(path).read_text(encoding="utf-8")
        return cls(tuple(line.strip() for line in text.splitlines() if line.strip()))

    @property
    def n(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def codes(self) -> tuple[np.ndarray, int]:
        """Integer codes ``0..K-1`` in order of first appearance, and K."""
        index: dict[Hashable, int] = {}
        out = np.empty(len(self.labels), dtype=np.intp)
        for i, lab in enumerate(self.labels):
            out[i] = index.setdefault(lab, len(index))
        return out, len(index)


def partition_from_labels(assignment: LabelAssignment | Sequence[Hashable]) -> Partition:
    """Tally cluster sizes in a single pass over the labels.

    Clusters appear in order of the first occurrence of their label.
    """
    labels = assignment.labels if isinstance(assignment, LabelAssignment) else assignment
    if len(labels) == 0:
        raise EmptyInputError("label assignment is empty")
    counts = Counter(labels)
    return partition_from_sizes(np.fromiter(counts.values(), dtype=np.float64, count=len(counts)))
