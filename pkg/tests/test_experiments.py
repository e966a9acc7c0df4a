import json
import math

import numpy as np
import pytest

from mas_uniformity import experiments as ex
from mas_uniformity.agreement import DatasetMatrix
from mas_uniformity.errors import (
    LengthMismatchError,
    NoValidCandidatesError,
    OutOfRangeError,
    UniformityError,
)
from mas_uniformity.fileio import ManifestError, load_manifest, read_dataset_csv
from mas_uniformity.metrics import full_report
from mas_uniformity.partition import LabelAssignment

TOL4 = 5e-5
CENTERS = [(0.0, 0.0), (20.0, 0.0), (10.0, 17.32)]


def _cells(golden_row):
    return np.array([float(c) for c in golden_row[1:]])


class TestFragmentation:
    def test_single_piece(self):
        assert ex.fragment_small_cluster(1).sizes.tolist() == [4950, 4950, 100]

    def test_eight_pieces(self):
        assert ex.fragment_small_cluster(8).sizes.tolist() == [
            4950, 4950, 13, 13, 13, 13, 12, 12, 12, 12
        ]

    def test_singletons(self):
        p = ex.fragment_small_cluster(100)
        assert p.k == 102 and p.sizes[2:].tolist() == [1.0] * 100

    @pytest.mark.parametrize("pieces", range(1, 101))
    def test_bulk_untouched(self, pieces):
        p = ex.fragment_small_cluster(pieces)
        assert p.sizes[:2].tolist() == [4950, 4950]
        assert p.total == 10_000 and p.k == pieces + 2
        assert p.sizes[2:].max() - p.sizes[2:].min() <= 1

    @pytest.mark.parametrize("pieces", [0, 101, -3])
    def test_out_of_range(self, pieces):
        with pytest.raises(OutOfRangeError):
            ex.fragment_small_cluster(pieces)

    def test_split_evenly(self):
        assert ex.split_evenly(100, 8) == [13] * 4 + [12] * 4
        assert ex.split_evenly(7, 7) == [1] * 7


class TestExperimentOne:
    rows = ex.run_experiment1()

    def test_row_names_and_count(self):
        assert [r.config_name for r in self.rows] == list(ex.TABLE1_GOLDEN)

    def test_golden(self):
        assert ex.golden_mismatches(self.rows, ex.TABLE1_GOLDEN) == []

    @pytest.mark.parametrize("name", list(ex.TABLE1_GOLDEN))
    def test_cells_within_tolerance(self, name):
        row = next(r for r in self.rows if r.config_name == name)
        golden = ex.TABLE1_GOLDEN[name]
        assert row.report.k == golden[0]
        got = np.array(row.report.as_tuple()[1:])
        assert np.all(np.abs(got - _cells(golden)) <= TOL4)

    def test_thirty_two_pieces(self):
        r = self.rows[5].report
        assert r.k == 34
        assert abs(r.mas - 0.9854) <= TOL4
        assert abs(r.shannon - 0.7768) <= TOL4
        assert abs(r.gini_score - 0.0685) <= TOL4

    def test_mas_spread(self):
        masses = [r.report.mas for r in self.rows]
        assert max(masses) - min(masses) <= 0.0003

    def test_report_matches_partition(self):
        for r in self.rows:
            assert r.report == full_report(r.partition)

    def test_cells_layout(self):
        cells = self.rows[0].cells()
        assert cells[0] == "2^0 = 1 piece" and cells[1] == 3 and len(cells) == 10


class TestExperimentTwo:
    rows = ex.run_experiment2()

    def test_golden(self):
        assert len(self.rows) == 6
        assert ex.golden_mismatches(self.rows, ex.TABLE2_GOLDEN) == []

    @pytest.mark.parametrize("name", list(ex.TABLE2_GOLDEN))
    def test_cells_within_tolerance(self, name):
        row = next(r for r in self.rows if r.config_name == name)
        golden = ex.TABLE2_GOLDEN[name]
        assert row.report.k == golden[0]
        assert np.all(np.abs(np.array(row.report.as_tuple()[1:]) - _cells(golden)) <= TOL4)

    def test_two_equal_bulk(self):
        r = self.rows[3].report
        for v in (r.mas, r.shannon_norm, r.renyi2_norm, r.hhi_star_score, r.gini_score):
            assert abs(v - 1.0) <= TOL4

    def test_four_equal(self):
        r = self.rows[5].report
        assert r.mas == 1.0 and abs(r.hhi_score - 0.75) <= 1e-15

    def test_golden_detects_change(self):
        bad = dict(ex.TABLE2_GOLDEN)
        name = "[4950, 4950]"
        bad[name] = (2, "0.9999") + bad[name][2:]
        assert ex.golden_mismatches(self.rows, bad) == [(name, "MAS", "1.0000", "0.9999")]


class TestStandardize:
    def test_column(self):
        out = ex.standardize([[1.0], [2.0], [3.0]]).values[:, 0]
        assert out == pytest.approx([-1.2247, 0.0, 1.2247], abs=1e-4)
        assert out[2] == pytest.approx(math.sqrt(1.5), abs=1e-15)

    def test_constant_column(self):
        out = ex.standardize([[5.0, 1.0], [5.0, 2.0]]).values
        assert out[:, 0].tolist() == [0.0, 0.0]

    def test_idempotent(self):
        x = np.random.default_rng(3).normal(size=(50, 4)) * 7 + 2
        once = ex.standardize(x)
        twice = ex.standardize(once)
        assert np.max(np.abs(once.values - twice.values)) <= 1e-10


def _three_blobs():
    data, gt = ex.gaussian_blobs(100, CENTERS, sigma=1.0, seed=1)
    cands = (
        ("merge01", ex.merge_labels(gt, 0, 1)),
        ("merge12", ex.merge_labels(gt, 1, 2)),
        ("split2", ex.split_label(gt, 2, 3)),
    )
    return data, ex.CandidateSet("blobs", cands, gt)


class TestCandidateSet:
    def test_ground_truth_appended(self):
        gt = LabelAssignment((0, 0, 1, 1))
        cs = ex.CandidateSet("d", (("a", (0, 1, 0, 1)),), gt)
        assert [c for c, _ in cs.candidates] == ["a", "ground_truth"]

    def test_relabeled_ground_truth_not_duplicated(self):
        gt = LabelAssignment((0, 0, 1, 1))
        cs = ex.CandidateSet("d", (("mine", ("x", "x", "y", "y")),), gt)
        assert [c for c, _ in cs.candidates] == ["mine"]

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatchError):
            ex.CandidateSet("d", (("a", (0, 1, 0)),), (0, 0, 1, 1))

    def test_duplicate_ids(self):
        with pytest.raises(ValueError):
            ex.CandidateSet("d", (("a", (0, 1, 0, 1)), ("a", (0, 0, 0, 1))), (0, 0, 1, 1))


class TestHarness:
    def test_ground_truth_only(self):
        data, gt = ex.gaussian_blobs(10, CENTERS, seed=0)
        res = ex.run_experiment3_harness(data, ex.CandidateSet("d", (), gt))
        assert res.selected_ari == 1.0
        assert res.comparison is None and res.pwrs is None
        assert type(res.pwrs_error).__name__ == "AllPairsTiedError"

    def test_two_candidates(self):
        data, gt = ex.gaussian_blobs(30, CENTERS, seed=2)
        cs = ex.CandidateSet("d", (("merged", ex.merge_labels(gt, 0, 1)),), gt)
        res = ex.run_experiment3_harness(data, cs, "mas")
        assert res.selected_id == "ground_truth"
        assert res.pwrs == 1.0 and res.selected_ari == 1.0

    def test_three_gaussians(self):
        data, cs = _three_blobs()
        mas_res = ex.run_experiment3_harness(data, cs, "mas")
        null_res = ex.run_experiment3_harness(data, cs, "null")
        assert mas_res.selected_id == "ground_truth" and mas_res.selected_ari == 1.0
        assert mas_res.pwrs >= null_res.pwrs
        gt_eval = next(e for e in mas_res.evaluations if e.candidate_id == "ground_truth")
        # ground truth wins every factor of the score
        for e in mas_res.evaluations:
            assert gt_eval.score.uniformity_v >= e.score.uniformity_v
            assert gt_eval.score.silhouette >= e.score.silhouette

    def test_deterministic(self):
        data, cs = _three_blobs()
        a = ex.run_experiment3_sweep(data, cs)
        b = ex.run_experiment3_sweep(data, cs)
        assert [(r.scorer, r.selected_id, r.pwrs, [e.score.phi for e in r.evaluations]) for r in a] \
            == [(r.scorer, r.selected_id, r.pwrs, [e.score.phi for e in r.evaluations]) for r in b]

    def test_phi_recomputes(self):
        data, cs = _three_blobs()
        for res in ex.run_experiment3_sweep(data, cs):
            for e in res.evaluations:
                assert abs(e.score.recompute() - e.score.phi) <= 1e-12

    def test_sweep_covers_all_scorers(self):
        data, cs = _three_blobs()
        scorers = [r.scorer for r in ex.run_experiment3_sweep(data, cs)]
        assert scorers == ["null", "mas", "gini", "hhi", "hhi_star", "entropy",
                           "entropy_norm", "renyi2", "renyi2_norm", "k_eff"]

    def test_degenerate_candidates_skipped(self):
        data, gt = ex.gaussian_blobs(5, CENTERS, seed=0)
        cs = ex.CandidateSet("d", (("one", [0] * 15), ("all", list(range(15)))), gt)
        res = ex.run_experiment3_harness(data, cs)
        assert [s[0] for s in res.skipped] == ["one", "all"]
        assert [e.candidate_id for e in res.evaluations] == ["ground_truth"]

    def test_no_valid_candidates(self):
        data = DatasetMatrix([[0.0], [1.0], [2.0]])
        with pytest.raises(NoValidCandidatesError):
            ex.run_experiment3_harness(data, ex.CandidateSet("d", (), [0, 0, 0]))

    def test_dataset_mismatch(self):
        data, gt = ex.gaussian_blobs(5, CENTERS, seed=0)
        with pytest.raises(LengthMismatchError):
            ex.run_experiment3_harness(DatasetMatrix(data.values[:10]), ex.CandidateSet("d", (), gt))

    def test_unknown_scorer(self):
        data, cs = _three_blobs()
        with pytest.raises(ValueError):
            ex.run_experiment3_harness(data, cs, "nope")

    def test_callable_scorer(self):
        data, cs = _three_blobs()
        res = ex.run_experiment3_harness(data, cs, lambda p: 0.5)
        nul = ex.run_experiment3_harness(data, cs, "null")
        assert res.selected_id == nul.selected_id


class TestFileIO:
    def test_csv_header_detection(self, tmp_path):
        f = tmp_path / "d.csv"
        f.write_text("x,y\n1,2\n3,4\n")
        data, labels = read_dataset_csv(f)
        assert data.values.tolist() == [[1, 2], [3, 4]] and labels is None
        f.write_text("1,2\n3,4\n")
        assert read_dataset_csv(f)[0].n == 2

    def test_csv_label_column(self, tmp_path):
        f = tmp_path / "d.csv"
        f.write_text("1.5,a\n2.5,b\n3.5,a\n")
        data, labels = read_dataset_csv(f, label_column=True)
        assert data.values[:, 0].tolist() == [1.5, 2.5, 3.5]
        assert labels.labels == ("a", "b", "a")

    def test_csv_errors(self, tmp_path):
        f = tmp_path / "d.csv"
        f.write_text("1,2\n3\n")
        with pytest.raises(UniformityError):
            read_dataset_csv(f)
        f.write_text("1,2\n3,x\n")
        with pytest.raises(UniformityError):
            read_dataset_csv(f)

    def test_manifest(self, tmp_path):
        data, gt = ex.gaussian_blobs(20, CENTERS, seed=4)
        rows = "\n".join(f"{a},{b},{g}" for (a, b), g in zip(data.values.tolist(), gt.labels))
        (tmp_path / "d.csv").write_text("f1,f2,label\n" + rows + "\n")
        (tmp_path / "m.labels").write_text("\n".join(map(str, ex.merge_labels(gt, 0, 1).labels)))
        (tmp_path / "m.json").write_text(json.dumps({
            "dataset_id": "blobs", "dataset": "d.csv", "label_column": True,
            "candidates": [{"id": "merged", "labels": "m.labels"}],
        }))
        m = load_manifest(tmp_path / "m.json")
        assert m.dataset.n == 60 and m.standardize
        assert [c for c, _ in m.candidates.candidates] == ["merged", "ground_truth"]
        res = ex.run_experiment3_harness(m.dataset, m.candidates)
        assert res.selected_id == "ground_truth"

    def test_manifest_errors(self, tmp_path):
        with pytest.raises(ManifestError):
            load_manifest(tmp_path / "missing.json")
        (tmp_path / "m.json").write_text(json.dumps({"dataset": "d.csv"}))
        with pytest.raises(ManifestError):
            load_manifest(tmp_path / "m.json")
        (tmp_path / "m.json").write_text(json.dumps({"dataset": "nope.csv", "candidates": []}))
        with pytest.raises(ManifestError):
            load_manifest(tmp_path / "m.json")
