"""Least-squares calibration of per-size weights from strength estimates.

Each surveyed graph contributes one linear equation: the mean human estimate
equals ``sum(i * w_i * count_i)`` over its component size counts. Stacking
the equations gives a design matrix whose minimum-norm least-squares
solution (optionally ridge-regularized) is the fitted weight vector. A
bundled 30-entry default fitted on the original survey corpus ships with
the package.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .datasets import load_edge_list
from .graph import Graph, ccsd
from .metrics import WeightVector

# Bundled default calibration: weight of a size-i component, i = 1..30.
_DEFAULT_WEIGHTS = (
    0.2221, 0.6607, 0.8747, 1.2271, 0.5538,
    0.9078, 0.9445, 0.9517, 0.9737, 0.7178,
    0.6668, 0.7028, 0.8193, 0.7625, 0.9872,
    0.7648, 1.0714, 0.6910, 0.9432, 0.8923,
    0.9193, 0.9847, 0.8122, 0.9321, 0.9485,
    0.9868, 0.8559, 0.8390, 0.9867, 0.9093,
)

SURVEY_HEADER = ("graph_id", "participant_id", "estimate")


def default_weights() -> WeightVector:
    """The bundled 30-entry weight vector (extension policy: error)."""
    return WeightVector(_DEFAULT_WEIGHTS)


@dataclass(frozen=True)
class SurveyRecord:
    """One surveyed graph with the raw per-participant strength estimates."""

    graph_id: str
    graph: Graph
    estimates: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.estimates:
            raise ValueError(f"graph {self.graph_id!r} has no estimates")
        for value in self.estimates:
            if not (1.0 <= value <= self.graph.n):
                raise ValueError(
                    f"estimate {value} for graph {self.graph_id!r} is outside "
                    f"[1, {self.graph.n}]"
                )

    @property
    def mean_estimate(self) -> float:
        return sum(self.estimates) / len(self.estimates)


@dataclass(frozen=True)
class SurveyDataset:
    records: tuple[SurveyRecord, ...]


@dataclass(frozen=True)
class DesignMatrix:
    """Stacked linear system: one row per graph, one column per size.

    ``matrix[j, i-1] = i * count_i(G_j)`` and ``target[j]`` is the mean
    estimate for graph ``j``. Column count is the largest component size
    observed anywhere in the dataset.
    """

    matrix: np.ndarray
    target: np.ndarray
    graph_ids: tuple[str, ...]

    @property
    def size_limit(self) -> int:
        return self.matrix.shape[1]


@dataclass(frozen=True)
class FitResult:
    weights: WeightVector
    residual_norm: float
    rank: int
    regularization: float


def build_system(dataset: SurveyDataset) -> DesignMatrix:
    """Assemble the design matrix and mean-estimate targets."""
    if not dataset.records:
        raise ValueError("survey dataset is empty")
    distributions = [ccsd(record.graph) for record in dataset.records]
    width = max(
        size for dist in distributions for size, _ in dist.items()
    )
    matrix = np.zeros((len(dataset.records), width))
    target = np.empty(len(dataset.records))
    for row, (record, dist) in enumerate(zip(dataset.records, distributions)):
        for size, count in dist.items():
            matrix[row, size - 1] = size * count
        target[row] = record.mean_estimate
    ids = tuple(record.graph_id for record in dataset.records)
    return DesignMatrix(matrix=matrix, target=target, graph_ids=ids)


def fit_weights(dm: DesignMatrix, ridge: float = 0.0) -> FitResult:
    """Solve ``min ||A w - E||^2 + ridge * ||w||^2``.

    With ``ridge=0`` and a rank-deficient system this returns the
    minimum-norm least-squares solution, so sizes that never occur in the
    dataset (all-zero columns) get weight 0. ``residual_norm`` is always
    evaluated on the original system.
    """
    matrix, target = dm.matrix, dm.target
    if not (np.isfinite(matrix).all() and np.isfinite(target).all()):
        raise ValueError("design matrix and target must be finite")
    if ridge < 0:
        raise ValueError(f"ridge parameter must be >= 0, got {ridge}")
    if ridge == 0:
        solution, _, rank, _ = np.linalg.lstsq(matrix, target, rcond=None)
    else:
        width = matrix.shape[1]
        augmented = np.vstack([matrix, np.sqrt(ridge) * np.eye(width)])
        padded = np.concatenate([target, np.zeros(width)])
        solution, _, _, _ = np.linalg.lstsq(augmented, padded, rcond=None)
        rank = int(np.linalg.matrix_rank(matrix))
    residual = float(np.linalg.norm(matrix @ solution - target))
    return FitResult(
        weights=WeightVector.from_values(solution),
        residual_norm=residual,
        rank=int(rank),
        regularization=float(ridge),
    )


def load_survey_csv(path: str | Path, graph_dir: str | Path) -> SurveyDataset:
    """Read a ``graph_id,participant_id,estimate`` CSV.

    Each referenced graph is loaded from ``<graph_dir>/<graph_id>.edges``.
    Records are ordered by graph id so the fitted system is reproducible.
    """
    by_graph: dict[str, list[float]] = {}
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        fields = reader.fieldnames or []
        missing = [name for name in SURVEY_HEADER if name not in fields]
        if missing:
            raise ValueError(f"{path}: missing survey columns {missing}")
        for row in reader:
            graph_id = row["graph_id"].strip()
            if not graph_id:
                raise ValueError(f"{path}: empty graph_id")
            by_graph.setdefault(graph_id, []).append(float(row["estimate"]))
    if not by_graph:
        raise ValueError(f"{path}: survey file contains no records")
    records = []
    for graph_id in sorted(by_graph):
        graph_path = Path(graph_dir) / f"{graph_id}.edges"
        if not graph_path.exists():
            raise FileNotFoundError(
                f"no edge list for surveyed graph {graph_id!r}: {graph_path}"
            )
        records.append(
            SurveyRecord(
                graph_id=graph_id,
                graph=load_edge_list(graph_path),
                estimates=tuple(by_graph[graph_id]),
            )
        )
    return SurveyDataset(records=tuple(records))
