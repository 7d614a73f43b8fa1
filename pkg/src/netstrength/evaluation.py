"""Agreement statistics between metric outputs and survey ground truth.

Two comparison modes: RMSE between normalized strength values, and match
statistics between predicted authoritative node sets and ranked survey
candidates. Candidates and predictions are unordered label sets, so the
pair [2, 11] equals [11, 2].
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .graph import Graph
from .metrics import METRIC_IDS, WeightVector, compute_metric

MEMBER_SEPARATOR = ";"


def rmse(pred: Sequence[float], gt: Sequence[float]) -> float:
    """Root mean squared error between two equal-length value sequences."""
    if len(pred) != len(gt):
        raise ValueError(
            f"length mismatch: {len(pred)} predictions vs {len(gt)} truths"
        )
    if not pred:
        raise ValueError("rmse needs at least one value pair")
    return math.sqrt(
        sum((p - g) ** 2 for p, g in zip(pred, gt)) / len(pred)
    )


@dataclass(frozen=True)
class RankedGroundTruth:
    """Survey candidates for one graph, ordered by descending vote share.

    ``vote_shares`` (percents, summing to at most 100) may be omitted when
    only the ranking is known.
    """

    candidates: tuple[frozenset[str], ...]
    vote_shares: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if not self.candidates:
            raise ValueError("ranked ground truth needs at least one candidate")
        if len(set(self.candidates)) != len(self.candidates):
            raise ValueError("candidates must be distinct as unordered sets")
        if self.vote_shares is not None:
            if len(self.vote_shares) != len(self.candidates):
                raise ValueError("one vote share per candidate required")
            if sum(self.vote_shares) > 100 + 1e-9:
                raise ValueError("vote shares must sum to at most 100")

    def rank_of(self, prediction: frozenset[str]) -> int | None:
        """1-based rank of ``prediction``, or None when it got no votes."""
        for rank, candidate in enumerate(self.candidates, start=1):
            if candidate == prediction:
                return rank
        return None


@dataclass(frozen=True)
class MatchDetail:
    graph_id: str
    prediction: frozenset[str]
    rank: int | None
    vote_share: float | None
    hit: bool


@dataclass(frozen=True)
class MatchReport:
    """Aggregate agreement between predictions and ranked ground truth.

    ``rank_match`` is None when any prediction is absent from its candidate
    list; ``percentage_match`` is None unless every graph carries vote
    shares. Both render as "-" in the emitted tables.
    """

    exact_match: float
    rank_match: float | None
    percentage_match: float | None
    details: tuple[MatchDetail, ...]

    def detail_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["graph_id", "prediction", "rank", "vote_share", "hit"])
        for d in self.details:
            writer.writerow([
                d.graph_id,
                MEMBER_SEPARATOR.join(sorted(d.prediction)),
                "-" if d.rank is None else d.rank,
                "-" if d.vote_share is None else repr(d.vote_share),
                int(d.hit),
            ])
        return out.getvalue()

    def summary_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["statistic", "value"])
        writer.writerow(["exact_match", repr(self.exact_match)])
        writer.writerow([
            "rank_match",
            "-" if self.rank_match is None else repr(self.rank_match),
        ])
        writer.writerow([
            "percentage_match",
            "-" if self.percentage_match is None else repr(self.percentage_match),
        ])
        return out.getvalue()

    def format_table(self) -> str:
        rows = [("graph", "prediction", "rank", "hit")]
        for d in self.details:
            rows.append((
                d.graph_id,
                "{" + ", ".join(sorted(d.prediction)) + "}",
                "-" if d.rank is None else str(d.rank),
                "yes" if d.hit else "no",
            ))
        widths = [max(len(r[c]) for r in rows) for c in range(4)]
        lines = [
            "  ".join(cell.ljust(width) for cell, width in zip(row, widths))
            for row in rows
        ]
        lines.append("")
        lines.append(f"exact match      {self.exact_match}")
        lines.append(
            f"rank match       "
            f"{'-' if self.rank_match is None else self.rank_match}"
        )
        lines.append(
            f"percentage match "
            f"{'-' if self.percentage_match is None else self.percentage_match}"
        )
        return "\n".join(lines)


def match_stats(
    preds: Mapping[str, frozenset[str] | set[str] | Sequence[str]],
    gt: Mapping[str, RankedGroundTruth],
) -> MatchReport:
    """Score predicted node sets against ranked survey candidates.

    exact_match: fraction of graphs whose prediction equals the top-ranked
    candidate. rank_match: mean 1-based rank of the predictions, defined
    only when every prediction appears somewhere in its list.
    percentage_match: mean vote share of the predicted candidate (0 when
    absent), defined only when all graphs carry vote shares.
    """
    if not preds:
        raise ValueError("no predictions given")
    details: list[MatchDetail] = []
    for graph_id in sorted(preds):
        if graph_id not in gt:
            raise ValueError(f"no ground truth for predicted graph {graph_id!r}")
        prediction = frozenset(preds[graph_id])
        truth = gt[graph_id]
        rank = truth.rank_of(prediction)
        share: float | None = None
        if truth.vote_shares is not None:
            share = 0.0 if rank is None else truth.vote_shares[rank - 1]
        details.append(MatchDetail(
            graph_id=graph_id,
            prediction=prediction,
            rank=rank,
            vote_share=share,
            hit=rank == 1,
        ))
    count = len(details)
    exact = sum(d.hit for d in details) / count
    rank_match = None
    if all(d.rank is not None for d in details):
        rank_match = sum(d.rank for d in details) / count
    percentage = None
    if all(d.vote_share is not None for d in details):
        percentage = sum(d.vote_share for d in details) / count
    return MatchReport(
        exact_match=exact,
        rank_match=rank_match,
        percentage_match=percentage,
        details=tuple(details),
    )


@dataclass(frozen=True)
class CompareResult:
    """Per-graph normalized strengths next to ground truth, plus RMSE."""

    metrics: tuple[str, ...]
    rows: tuple[tuple, ...]  # (graph_id, n, gt_norm, *metric_norms)
    rmse_by_metric: dict[str, float]

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(
            ["graph_id", "n", "gt_norm"] + [f"{m}_norm" for m in self.metrics]
        )
        for row in self.rows:
            graph_id, n, gt_norm, *values = row
            writer.writerow(
                [graph_id, n, repr(gt_norm)] + [repr(v) for v in values]
            )
        for metric in self.metrics:
            cells = {metric: repr(self.rmse_by_metric[metric])}
            writer.writerow(
                [f"rmse:{metric}", "", ""]
                + [cells.get(m, "") for m in self.metrics]
            )
        return out.getvalue()


def compare_suite(
    graphs: Sequence[tuple[str, Graph]],
    gt_strengths: Mapping[str, float],
    metrics: Sequence[str] = METRIC_IDS,
    weights: WeightVector | None = None,
) -> CompareResult:
    """Evaluate selected metrics on every graph against mean estimates.

    ``gt_strengths`` holds raw mean estimates in [1, n]; everything is
    normalized by the graph's node count before comparison.
    """
    for metric in metrics:
        if metric not in METRIC_IDS:
            raise ValueError(f"unknown metric id {metric!r}")
    if "proposed" in metrics and weights is None:
        raise ValueError("the proposed metric requires a weight vector")
    rows = []
    normalized_by_metric: dict[str, list[float]] = {m: [] for m in metrics}
    gt_normalized: list[float] = []
    for graph_id, graph in graphs:
        if graph_id not in gt_strengths:
            raise ValueError(f"no ground-truth strength for graph {graph_id!r}")
        gt_norm = gt_strengths[graph_id] / graph.n
        gt_normalized.append(gt_norm)
        values = []
        for metric in metrics:
            normalized = compute_metric(graph, metric, weights).normalized
            normalized_by_metric[metric].append(normalized)
            values.append(normalized)
        rows.append((graph_id, graph.n, gt_norm, *values))
    rmse_by_metric = {
        metric: rmse(normalized_by_metric[metric], gt_normalized)
        for metric in metrics
    }
    return CompareResult(
        metrics=tuple(metrics),
        rows=tuple(rows),
        rmse_by_metric=rmse_by_metric,
    )


def load_ranked_gt_csv(path: str | Path) -> dict[str, RankedGroundTruth]:
    """Read ``graph_id,rank,members,vote_share`` rows into ranked truths.

    Members are ;-separated labels; ranks per graph must be contiguous from
    1; the vote_share column may be empty as long as it is empty for every
    candidate of a graph.
    """
    candidates: dict[str, list[tuple[int, frozenset[str], float | None]]] = {}
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        fields = reader.fieldnames or []
        required = ["graph_id", "rank", "members"]
        missing = [name for name in required if name not in fields]
        if missing:
            raise ValueError(f"{path}: missing columns {missing}")
        for row in reader:
            members = frozenset(
                token.strip()
                for token in row["members"].split(MEMBER_SEPARATOR)
                if token.strip()
            )
            if not members:
                raise ValueError(
                    f"{path}: empty member set for graph {row['graph_id']!r}"
                )
            share_text = (row.get("vote_share") or "").strip()
            share = float(share_text) if share_text else None
            candidates.setdefault(row["graph_id"], []).append(
                (int(row["rank"]), members, share)
            )
    result = {}
    for graph_id, entries in candidates.items():
        entries.sort(key=lambda e: e[0])
        ranks = [rank for rank, _, _ in entries]
        if ranks != list(range(1, len(entries) + 1)):
            raise ValueError(
                f"{path}: ranks for graph {graph_id!r} must be contiguous "
                f"from 1, got {ranks}"
            )
        shares = [share for _, _, share in entries]
        with_shares = [s for s in shares if s is not None]
        if with_shares and len(with_shares) != len(shares):
            raise ValueError(
                f"{path}: graph {graph_id!r} mixes present and missing "
                f"vote shares"
            )
        result[graph_id] = RankedGroundTruth(
            candidates=tuple(members for _, members, _ in entries),
            vote_shares=tuple(with_shares) if with_shares else None,
        )
    return result


def load_predictions_csv(path: str | Path) -> dict[str, frozenset[str]]:
    """Read ``graph_id,members`` rows (members ;-separated)."""
    result: dict[str, frozenset[str]] = {}
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        fields = reader.fieldnames or []
        missing = [name for name in ("graph_id", "members") if name not in fields]
        if missing:
            raise ValueError(f"{path}: missing columns {missing}")
        for row in reader:
            graph_id = row["graph_id"].strip()
            if graph_id in result:
                raise ValueError(f"{path}: duplicate prediction for {graph_id!r}")
            members = frozenset(
                token.strip()
                for token in row["members"].split(MEMBER_SEPARATOR)
                if token.strip()
            )
            if not members:
                raise ValueError(f"{path}: empty prediction for {graph_id!r}")
            result[graph_id] = members
    if not result:
        raise ValueError(f"{path}: no prediction rows")
    return result


def load_strength_values_csv(path: str | Path) -> dict[str, float]:
    """Read ``graph_id,value`` rows of normalized strength predictions."""
    result: dict[str, float] = {}
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        fields = reader.fieldnames or []
        missing = [name for name in ("graph_id", "value") if name not in fields]
        if missing:
            raise ValueError(f"{path}: missing columns {missing}")
        for row in reader:
            result[row["graph_id"].strip()] = float(row["value"])
    if not result:
        raise ValueError(f"{path}: no value rows")
    return result


def load_strength_gt_csv(path: str | Path) -> dict[str, float]:
    """Read ``graph_id,mean_estimate`` rows."""
    result: dict[str, float] = {}
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        fields = reader.fieldnames or []
        missing = [
            name for name in ("graph_id", "mean_estimate") if name not in fields
        ]
        if missing:
            raise ValueError(f"{path}: missing columns {missing}")
        for row in reader:
            result[row["graph_id"].strip()] = float(row["mean_estimate"])
    if not result:
        raise ValueError(f"{path}: no ground-truth rows")
    return result
