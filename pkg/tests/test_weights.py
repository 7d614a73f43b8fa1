from __future__ import annotations

import json

import numpy as np
import pytest

from conftest import disjoint_paths, path_graph
from netstrength.datasets import save_edge_list
from netstrength.graph import Graph
from netstrength.metrics import WeightVector, load_weights, save_weights, sigma
from netstrength.weights import (
    DesignMatrix,
    SurveyDataset,
    SurveyRecord,
    build_system,
    default_weights,
    fit_weights,
    load_survey_csv,
)

# Bundled calibration, one weight per component size 1..30.
EXPECTED_DEFAULTS = [
    0.2221, 0.6607, 0.8747, 1.2271, 0.5538, 0.9078, 0.9445, 0.9517,
    0.9737, 0.7178, 0.6668, 0.7028, 0.8193, 0.7625, 0.9872, 0.7648,
    1.0714, 0.6910, 0.9432, 0.8923, 0.9193, 0.9847, 0.8122, 0.9321,
    0.9485, 0.9868, 0.8559, 0.8390, 0.9867, 0.9093,
]


def record(graph_id: str, graph: Graph, *estimates: float) -> SurveyRecord:
    return SurveyRecord(graph_id=graph_id, graph=graph, estimates=estimates)


class TestDefaultWeights:
    def test_all_thirty_reference_values(self):
        w = default_weights()
        assert len(w) == 30
        for size, expected in enumerate(EXPECTED_DEFAULTS, start=1):
            assert w.value(size) == expected

    def test_spot_values(self):
        w = default_weights()
        assert w.value(1) == 0.2221
        assert w.value(4) == 1.2271
        assert w.value(30) == 0.9093

    def test_csv_round_trip_is_lossless_and_stable(self, tmp_path):
        path = tmp_path / "default.csv"
        save_weights(default_weights(), path)
        loaded = load_weights(path)
        assert loaded.weights == default_weights().weights
        first = path.read_text()
        save_weights(loaded, path)
        assert path.read_text() == first


class TestSurveyRecords:
    def test_estimates_must_cover_graph_scale(self):
        with pytest.raises(ValueError, match="outside"):
            record("g", path_graph(3), 3.5)
        with pytest.raises(ValueError, match="outside"):
            record("g", path_graph(3), 0.5)

    def test_mean_estimate(self):
        r = record("g", path_graph(3), 1.0, 2.0, 3.0)
        assert r.mean_estimate == 2.0


class TestBuildSystem:
    def test_single_connected_graph(self):
        ds = SurveyDataset((record("a", path_graph(3), 2.6),))
        dm = build_system(ds)
        assert dm.matrix.tolist() == [[0.0, 0.0, 3.0]]
        assert dm.target.tolist() == [2.6]
        assert dm.graph_ids == ("a",)

    def test_mixed_components_row(self):
        # components {2,1} next to a connected 3-node graph: width 3
        ds = SurveyDataset((
            record("a", disjoint_paths([2, 1]), 1.8),
            record("b", path_graph(3), 2.6),
        ))
        dm = build_system(ds)
        assert dm.matrix.tolist() == [[1.0, 2.0, 0.0], [0.0, 0.0, 3.0]]

    def test_width_is_largest_observed_size(self):
        ds = SurveyDataset((record("a", disjoint_paths([2, 1]), 1.8),))
        assert build_system(ds).matrix.tolist() == [[1.0, 2.0]]

    def test_identical_graphs_distinct_targets(self):
        ds = SurveyDataset((
            record("a", path_graph(4), 3.0),
            record("b", path_graph(4), 2.0),
        ))
        dm = build_system(ds)
        assert dm.matrix[0].tolist() == dm.matrix[1].tolist()
        assert dm.target.tolist() == [3.0, 2.0]

    def test_empty_dataset_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            build_system(SurveyDataset(()))


class TestFitWeights:
    def test_one_equation_minimum_norm(self):
        dm = DesignMatrix(
            matrix=np.array([[0.0, 0.0, 3.0]]),
            target=np.array([2.6]),
            graph_ids=("a",),
        )
        result = fit_weights(dm)
        assert result.weights.weights == pytest.approx((0.0, 0.0, 2.6 / 3))
        assert result.rank == 1
        assert result.residual_norm == pytest.approx(0.0, abs=1e-12)

    def test_recovers_generating_weights(self):
        generating = [1.0, 0.72, 0.88, 0.61, 0.94, 0.57]
        w_star = WeightVector.from_values(generating)
        suite = [
            ("iso", Graph.build(3, [])),
            ("p2", path_graph(2)),
            ("p3", path_graph(3)),
            ("p4", path_graph(4)),
            ("p5", path_graph(5)),
            ("p6", path_graph(6)),
            ("mix23", disjoint_paths([2, 3])),
            ("mix14", disjoint_paths([1, 4])),
        ]
        records = tuple(
            record(graph_id, graph, sigma(graph, w_star).raw)
            for graph_id, graph in suite
        )
        dm = build_system(SurveyDataset(records))
        assert np.linalg.matrix_rank(dm.matrix) == 6
        result = fit_weights(dm)
        assert result.weights.weights == pytest.approx(generating, abs=1e-6)
        assert result.rank == 6

    def test_unseen_sizes_get_zero_weight(self):
        # no size-2 component anywhere: its column is all zero
        ds = SurveyDataset((
            record("a", path_graph(3), 2.0),
            record("b", Graph.build(3, []), 1.5),
        ))
        result = fit_weights(build_system(ds))
        assert result.weights.value(2) == 0.0

    def test_ridge_limit_shrinks_weights(self):
        ds = SurveyDataset((record("a", path_graph(4), 3.5),))
        dm = build_system(ds)
        loose = fit_weights(dm, ridge=0.0)
        tight = fit_weights(dm, ridge=1e9)
        assert np.linalg.norm(tight.weights.weights) < 1e-6
        assert np.linalg.norm(tight.weights.weights) < (
            np.linalg.norm(loose.weights.weights)
        )
        assert tight.regularization == 1e9

    def test_negative_ridge_rejected(self):
        dm = DesignMatrix(np.eye(2), np.ones(2), ("a", "b"))
        with pytest.raises(ValueError):
            fit_weights(dm, ridge=-1.0)

    def test_non_finite_rejected(self):
        dm = DesignMatrix(
            np.array([[np.nan, 0.0]]), np.array([1.0]), ("a",)
        )
        with pytest.raises(ValueError, match="finite"):
            fit_weights(dm)

    @pytest.mark.parametrize("ridge", [0.0, 0.5])
    def test_no_perturbation_improves_objective(self, ridge):
        rng = np.random.default_rng(99)
        for _ in range(20):
            rows = rng.integers(2, 8)
            cols = rng.integers(1, 6)
            matrix = rng.normal(size=(rows, cols))
            if cols > 1 and rng.random() < 0.4:
                matrix[:, -1] = matrix[:, 0]  # force rank deficiency
            target = rng.normal(size=rows)
            dm = DesignMatrix(matrix, target, tuple("g" * rows))
            fitted = np.array(fit_weights(dm, ridge=ridge).weights.weights)

            def objective(w):
                penalty = ridge * np.dot(w, w)
                return np.sum((matrix @ w - target) ** 2) + penalty

            base = objective(fitted)
            for _ in range(25):
                delta = rng.normal(scale=rng.choice([1e-4, 0.1, 2.0]),
                                   size=cols)
                assert objective(fitted + delta) >= base - 1e-8 * max(base, 1)

    def test_residual_norm_matches_definition(self):
        rng = np.random.default_rng(3)
        matrix = rng.normal(size=(6, 3))
        target = rng.normal(size=6)
        dm = DesignMatrix(matrix, target, tuple("abcdef"))
        result = fit_weights(dm)
        w = np.array(result.weights.weights)
        assert result.residual_norm == pytest.approx(
            float(np.linalg.norm(matrix @ w - target))
        )


class TestSurveyCsv:
    def make_inputs(self, tmp_path):
        graph_dir = tmp_path / "graphs"
        graph_dir.mkdir()
        save_edge_list(path_graph(3), graph_dir / "p3.edges")
        save_edge_list(Graph.build(4, []), graph_dir / "iso4.edges")
        survey = tmp_path / "survey.csv"
        survey.write_text(
            "graph_id,participant_id,estimate\n"
            "p3,u1,2.0\np3,u2,3.0\niso4,u1,1.0\n"
        )
        return survey, graph_dir

    def test_groups_and_orders_records(self, tmp_path):
        survey, graph_dir = self.make_inputs(tmp_path)
        ds = load_survey_csv(survey, graph_dir)
        assert [r.graph_id for r in ds.records] == ["iso4", "p3"]
        by_id = {r.graph_id: r for r in ds.records}
        assert by_id["p3"].estimates == (2.0, 3.0)
        assert by_id["p3"].mean_estimate == 2.5
        assert by_id["iso4"].graph.n == 4

    def test_missing_graph_file(self, tmp_path):
        survey, graph_dir = self.make_inputs(tmp_path)
        survey.write_text("graph_id,participant_id,estimate\nnope,u1,1.0\n")
        with pytest.raises(FileNotFoundError, match="nope"):
            load_survey_csv(survey, graph_dir)

    def test_missing_columns(self, tmp_path):
        survey, graph_dir = self.make_inputs(tmp_path)
        survey.write_text("graph_id,estimate\np3,2.0\n")
        with pytest.raises(ValueError, match="participant_id"):
            load_survey_csv(survey, graph_dir)

    def test_empty_survey(self, tmp_path):
        survey, graph_dir = self.make_inputs(tmp_path)
        survey.write_text("graph_id,participant_id,estimate\n")
        with pytest.raises(ValueError, match="no records"):
            load_survey_csv(survey, graph_dir)

    def test_fit_report_fields_serialize(self, tmp_path):
        survey, graph_dir = self.make_inputs(tmp_path)
        ds = load_survey_csv(survey, graph_dir)
        result = fit_weights(build_system(ds))
        line = json.dumps({
            "residual_norm": result.residual_norm,
            "rank": result.rank,
            "lambda": result.regularization,
        })
        assert json.loads(line)["rank"] == result.rank
