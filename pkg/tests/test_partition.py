import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mas_uniformity.errors import AllZeroError, EmptyInputError, NonFiniteError, OutOfRangeError
from mas_uniformity.partition import (
    LabelAssignment,
    partition_from_labels,
    partition_from_sizes,
)


def test_from_sizes_table_base_configuration():
    p = partition_from_sizes([4950, 4950, 100])
    assert p.sizes.tolist() == [4950, 4950, 100]
    assert p.total == 10000
    assert p.k == 3


def test_zero_clusters_are_dropped_in_order():
    p = partition_from_sizes([5, 0, 5])
    assert p.sizes.tolist() == [5, 5]
    assert p.total == 10


def test_real_masses():
    p = partition_from_sizes([2.5, 7.5])
    assert p.sizes.tolist() == [2.5, 7.5]
    assert p.total == 10.0
    assert not p.is_integral


@pytest.mark.parametrize("raw, exc", [
    ([], EmptyInputError),
    ([0, 0], AllZeroError),
    ([1, float("nan")], NonFiniteError),
    ([1, float("inf")], NonFiniteError),
    ([3, -1], OutOfRangeError),
])
def test_from_sizes_errors(raw, exc):
    with pytest.raises(exc):
        partition_from_sizes(raw)


def test_partition_is_immutable():
    p = partition_from_sizes([1, 2])
    with pytest.raises(ValueError):
        p.sizes[0] = 5
    with pytest.raises(AttributeError):
        p.total = 3


def test_from_labels_counts():
    assert sorted(partition_from_labels(LabelAssignment("aabbb")).sizes.tolist()) == [2, 3]
    single = partition_from_labels(["x"])
    assert single.sizes.tolist() == [1] and single.k == 1


def test_from_labels_table_configuration():
    labels = ["p"] * 4950 + ["q"] * 4950 + ["r"] * 100
    p = partition_from_labels(LabelAssignment(labels))
    assert sorted(p.sizes.tolist()) == [100, 4950, 4950]
    assert p.total == 10000


def test_from_labels_empty():
    with pytest.raises(EmptyInputError):
        partition_from_labels(LabelAssignment(()))


def test_label_file_roundtrip(tmp_path):
    f = tmp_path / "points.txt"
    f.write_text("a\na\nb\nb\nb\n", encoding="utf-8")
    lab = LabelAssignment.from_file(f)
    assert lab.labels == ("a", "a", "b", "b", "b")
    assert partition_from_labels(lab).sizes.tolist() == [2, 3]


def test_codes_are_first_occurrence_order():
    codes, k = LabelAssignment(["z", "y", "z", "x"]).codes()
    assert codes.tolist() == [0, 1, 0, 2] and k == 3


@given(st.lists(st.integers(0, 5), min_size=1, max_size=60),
       st.permutations(list(range(6))))
def test_relabeling_preserves_size_multiset(labels, perm):
    relabeled = [perm[x] for x in labels]
    a = sorted(partition_from_labels(labels).sizes.tolist())
    b = sorted(partition_from_labels(relabeled).sizes.tolist())
    assert a == b


@given(st.lists(st.floats(0, 1e6, allow_nan=False), min_size=1, max_size=30)
       .filter(lambda xs: any(x > 0 for x in xs)))
def test_from_sizes_is_idempotent(raw):
    p = partition_from_sizes(raw)
    assert partition_from_sizes(p.sizes) == p
    assert partition_from_sizes(p) == p


@given(st.lists(st.integers(0, 2**40), min_size=1, max_size=40)
       .filter(lambda xs: any(xs)))
def test_integer_total_is_exact(raw):
    p = partition_from_sizes(raw)
    assert p.total == sum(raw)
    assert abs(p.total - float(np.sum(p.sizes))) <= 1e-12 * p.total
