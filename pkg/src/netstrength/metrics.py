"""Graph strength measures.

The central measure weights each connected component by a per-size weight
and sums ``size * weight * count`` over the size counts; the weights encode
how strong a component of a given size is perceived to be. Three structural
baselines (cole1, cole2, gfp) are provided for comparison, plus a divide-by-n
normalization so graphs of different sizes share one scale.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .graph import CCSD, EmptyGraphError, Graph, ccsd, components

EXTENSION_ERROR = "error"
EXTENSION_CLAMP = "clamp"

METRIC_IDS = ("proposed", "cole1", "cole2", "gfp")


class WeightCoverageError(ValueError):
    """A component size exceeds the weight vector under the error policy."""


@dataclass(frozen=True)
class WeightVector:
    """Per-component-size weights ``w_1..w_N``.

    ``weights[i-1]`` is the weight of a size-``i`` component. Sizes beyond
    ``N`` either raise (:data:`EXTENSION_ERROR`, the default) or reuse the
    last entry (:data:`EXTENSION_CLAMP`). Entries may be negative or exceed
    1; no clipping is applied.
    """

    weights: tuple[float, ...]
    extension_policy: str = EXTENSION_ERROR

    def __post_init__(self) -> None:
        if len(self.weights) < 1:
            raise ValueError("weight vector must have at least one entry")
        for i, w in enumerate(self.weights, start=1):
            if not math.isfinite(w):
                raise ValueError(f"weight for size {i} is not finite: {w!r}")
        if self.extension_policy not in (EXTENSION_ERROR, EXTENSION_CLAMP):
            raise ValueError(
                f"unknown extension policy {self.extension_policy!r}"
            )

    def __len__(self) -> int:
        return len(self.weights)

    def value(self, size: int) -> float:
        """Weight for a component of ``size`` nodes, applying the policy."""
        if size < 1:
            raise ValueError(f"component size must be >= 1, got {size}")
        if size <= len(self.weights):
            return self.weights[size - 1]
        if self.extension_policy == EXTENSION_CLAMP:
            return self.weights[-1]
        raise WeightCoverageError(
            f"component size {size} exceeds the {len(self.weights)}-entry "
            f"weight vector (extension policy {EXTENSION_ERROR!r})"
        )

    def with_policy(self, extension_policy: str) -> "WeightVector":
        return WeightVector(self.weights, extension_policy)

    @classmethod
    def from_values(
        cls,
        values: Iterable[float],
        extension_policy: str = EXTENSION_ERROR,
    ) -> "WeightVector":
        return cls(tuple(float(v) for v in values), extension_policy)


@dataclass(frozen=True)
class StrengthValue:
    """A strength measurement: raw value, ``raw / n``, and the metric id."""

    raw: float
    normalized: float
    metric_id: str


def _require_nonempty(g: Graph) -> None:
    if g.n == 0:
        raise EmptyGraphError("strength is undefined for an empty graph")


def sigma(g: Graph, w: WeightVector) -> StrengthValue:
    """Perception-weighted strength ``sum(i * w_i * count_i)``.

    For a connected graph this reduces to ``n * w_n``. Component sizes not
    covered by ``w`` follow its extension policy.
    """
    _require_nonempty(g)
    distribution: CCSD = ccsd(g)
    raw = 0.0
    for size, count in distribution.items():
        raw += size * w.value(size) * count
    return StrengthValue(raw=raw, normalized=raw / g.n, metric_id="proposed")


def cole1(g: Graph) -> StrengthValue:
    """Component-count baseline: ``n / c`` for ``c`` connected components.

    Maps a connected graph to ``n`` and a fully fragmented one to 1, on the
    same monotone scale as the other measures.
    """
    _require_nonempty(g)
    raw = g.n / components(g).count
    return StrengthValue(raw=raw, normalized=raw / g.n, metric_id="cole1")


def cole2(g: Graph) -> StrengthValue:
    """Largest-component baseline: size of the biggest component."""
    _require_nonempty(g)
    raw = float(max(components(g).sizes))
    return StrengthValue(raw=raw, normalized=raw / g.n, metric_id="cole2")


def gfp_score(g: Graph) -> StrengthValue:
    """Fragmentation score ``sum(n_i^2) / n`` over component sizes ``n_i``.

    Equals the expected size of the component containing a uniformly random
    node, i.e. the expected number of nodes affected by a failure seeded at
    a random node.
    """
    _require_nonempty(g)
    raw = sum(s * s for s in components(g).sizes) / g.n
    return StrengthValue(raw=raw, normalized=raw / g.n, metric_id="gfp")


def normalize(value: StrengthValue, n: int) -> float:
    """Raw strength divided by the node count, for cross-size comparison."""
    if n < 1:
        raise ValueError(f"node count must be >= 1, got {n}")
    return value.raw / n


def compute_metric(g: Graph, metric_id: str, w: WeightVector | None = None) -> StrengthValue:
    """Evaluate one metric by id; ``w`` is required for ``proposed``."""
    if metric_id == "proposed":
        if w is None:
            raise ValueError("the proposed metric requires a weight vector")
        return sigma(g, w)
    if metric_id == "cole1":
        return cole1(g)
    if metric_id == "cole2":
        return cole2(g)
    if metric_id == "gfp":
        return gfp_score(g)
    raise ValueError(f"unknown metric id {metric_id!r}")


def save_weights(w: WeightVector, path: str | Path) -> None:
    """Write a ``size,weight`` CSV, one row per size 1..N.

    Weights are written with shortest round-trip decimal formatting, so
    save -> load -> save is byte-stable and no precision is ever lost.
    """
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["size", "weight"])
        for size, weight in enumerate(w.weights, start=1):
            writer.writerow([size, repr(weight)])


def load_weights(
    path: str | Path,
    extension_policy: str = EXTENSION_ERROR,
) -> WeightVector:
    """Read a ``size,weight`` CSV produced by :func:`save_weights`."""
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None or [h.strip() for h in header[:2]] != ["size", "weight"]:
            raise ValueError(f"{path}: expected header 'size,weight'")
        values: list[float] = []
        for row_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) < 2:
                raise ValueError(f"{path}:{row_no}: expected 'size,weight' row")
            size = int(row[0])
            if size != len(values) + 1:
                raise ValueError(
                    f"{path}:{row_no}: sizes must be contiguous from 1, got {size}"
                )
            values.append(float(row[1]))
    if not values:
        raise ValueError(f"{path}: no weight rows")
    return WeightVector.from_values(values, extension_policy)
