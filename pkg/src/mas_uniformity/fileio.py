"""Readers for label files, numeric CSV datasets and candidate manifests.

Manifest (JSON; relative paths resolve against the manifest's directory)::

    {
      "dataset_id": "iris",
      "dataset": "iris.csv",
      "label_column": false,
      "ground_truth": "iris.labels",
      "standardize": true,
      "candidates": [{"id": "k2", "labels": "iris_k2.labels"}, ...]
    }

``ground_truth`` may be omitted when ``label_column`` is true, in which case
the final CSV column holds the ground-truth labels.
"""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .agreement import DatasetMatrix
from .errors import UniformityError
from .experiments import CandidateSet
from .partition import LabelAssignment


class ManifestError(UniformityError):
    pass


def _is_number(text: str) -> bool:
    try:
        float(text)
    except ValueError:
        return False
    return True


def read_dataset_csv(path, label_column: bool = False):
    """Load a numeric CSV, one point per row.

    The first row is treated as a header when any of its feature fields is
    non-numeric. With ``label_column`` the final column is returned as a
    :class:`LabelAssignment` instead of a feature.

    Returns ``(DatasetMatrix, LabelAssignment or None)``.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    if not rows:
        raise UniformityError(f"{path}: no data rows")
    first = rows[0][:-1] if label_column else rows[0]
    if not all(_is_number(c) for c in first):
        rows = rows[1:]
    width = len(rows[0]) if rows else 0
    if any(len(r) != width for r in rows):
        raise UniformityError(f"{path}: rows have differing numbers of fields")
    labels = None
    if label_column:
        labels = LabelAssignment(tuple(r[-1].strip() for r in rows))
        rows = [r[:-1] for r in rows]
    try:
        values = np.array([[float(c) for c in r] for r in rows], dtype=np.float64)
    except ValueError as exc:
        raise UniformityError(f"{path}: non-numeric feature value ({exc})") from None
    return DatasetMatrix(values), labels


@dataclass(frozen=True)
class Manifest:
    dataset: DatasetMatrix
    candidates: CandidateSet
    standardize: bool


def load_manifest(path, label_column: bool | None = None) -> Manifest:
    """Read a candidate-set manifest and every file it references."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ManifestError(f"cannot read manifest {path}: {exc}") from None
    base = path.parent

    def resolve(p):
        p = Path(p)
        return p if p.is_absolute() else base / p

    for key in ("dataset", "candidates"):
        if key not in raw:
            raise ManifestError(f"manifest {path} lacks {key!r}")
    use_column = bool(raw.get("label_column", False)) if label_column is None else label_column
    try:
        data, column_labels = read_dataset_csv(resolve(raw["dataset"]), label_column=use_column)
        if "ground_truth" in raw:
            gt = LabelAssignment.from_file(resolve(raw["ground_truth"]))
        elif column_labels is not None:
            gt = column_labels
        else:
            raise ManifestError("no ground truth: give 'ground_truth' or set label_column")
        cands = [
            (c["id"], LabelAssignment.from_file(resolve(c["labels"])))
            for c in raw["candidates"]
        ]
    except OSError as exc:
        raise ManifestError(str(exc)) from None
    except (KeyError, TypeError) as exc:
        raise ManifestError(f"malformed candidate entry in {path}: {exc}") from None
    dataset_id = str(raw.get("dataset_id", path.stem))
    return Manifest(data, CandidateSet(dataset_id, tuple(cands), gt), bool(raw.get("standardize", True)))
