"""Seeded random graph generation and edge-list file I/O.

Generation uses the stdlib Mersenne Twister (``random.Random``); graph
``index`` of a suite draws from an independent stream seeded with
``seed * 1_000_003 + index``, so suites are reproducible and individual
graphs can be regenerated (or generated in parallel) without replaying the
whole sequence. G(n, p) decides each canonical ``u < v`` pair independently
in ascending order; G(n, m) samples ``m`` pairs without replacement from the
canonical pair list.

Edge-list format: one edge per line as two whitespace-separated labels,
``#`` comments and blank lines ignored. The writer additionally emits a
``#! node <label>`` directive per isolated node (a plain edge list cannot
express them); the parser honors the directive and treats every other
``#`` line as a comment, so files stay readable by third-party tools.
"""

from __future__ import annotations

import json
import logging
import math
import random
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable

from .graph import Graph

logger = logging.getLogger(__name__)

GNP = "gnp"
GNM = "gnm"

_SEED_STRIDE = 1_000_003


class EdgeListParseError(ValueError):
    """Malformed edge-list content; carries the offending line number."""

    def __init__(self, message: str, line_no: int):
        super().__init__(message)
        self.line_no = line_no


@dataclass(frozen=True)
class GeneratorSpec:
    """Parameters for one generated suite of random graphs."""

    model: str
    n: int
    p: float | None = None
    m: int | None = None
    seed: int = 0
    count: int = 1

    def __post_init__(self) -> None:
        if self.model not in (GNP, GNM):
            raise ValueError(f"unknown model {self.model!r}")
        if self.n < 3:
            raise ValueError(f"node count must be >= 3, got {self.n}")
        if self.count < 1:
            raise ValueError(f"count must be >= 1, got {self.count}")
        if self.model == GNP:
            if self.p is None or not (0.0 <= self.p <= 1.0):
                raise ValueError(f"gnp requires p in [0, 1], got {self.p}")
            if self.m is not None:
                raise ValueError("gnp does not take an edge count m")
        else:
            max_edges = math.comb(self.n, 2)
            if self.m is None or not (0 <= self.m <= max_edges):
                raise ValueError(
                    f"gnm requires 0 <= m <= {max_edges}, got {self.m}"
                )
            if self.p is not None:
                raise ValueError("gnm does not take an edge probability p")

    def params(self) -> dict:
        """JSON-ready parameter mapping for manifests."""
        out: dict = {"model": self.model, "n": self.n, "seed": self.seed,
                     "count": self.count}
        if self.model == GNP:
            out["p"] = self.p
        else:
            out["m"] = self.m
        return out


def _stream(seed: int, index: int) -> random.Random:
    return random.Random(seed * _SEED_STRIDE + index)


def _all_pairs(n: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def _gnp(n: int, p: float, rng: random.Random) -> Graph:
    edges = [pair for pair in _all_pairs(n) if rng.random() < p]
    return Graph.build(n, edges)


def _gnm(n: int, m: int, rng: random.Random) -> Graph:
    edges = rng.sample(_all_pairs(n), m)
    return Graph.build(n, edges)


def generate(spec: GeneratorSpec) -> list[Graph]:
    """Generate ``spec.count`` graphs; a pure function of the spec."""
    graphs = []
    for index in range(spec.count):
        rng = _stream(spec.seed, index)
        if spec.model == GNP:
            graphs.append(_gnp(spec.n, spec.p, rng))
        else:
            graphs.append(_gnm(spec.n, spec.m, rng))
    return graphs


@dataclass(frozen=True)
class EdgeListFile:
    """Parsed edge-list content, still at the label level.

    ``labels`` follow first appearance order; ``edges`` keep one entry per
    distinct unordered label pair. Dropped input lines are tallied in
    ``duplicate_count`` and ``self_loop_count``.
    """

    path: str | None
    labels: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    duplicate_count: int
    self_loop_count: int

    @classmethod
    def parse(cls, path: str | Path) -> "EdgeListFile":
        with open(path, encoding="utf-8") as handle:
            return cls.parse_lines(handle, source=str(path))

    @classmethod
    def parse_lines(
        cls, lines: Iterable[str], source: str | None = None
    ) -> "EdgeListFile":
        labels: list[str] = []
        seen: set[str] = set()
        edges: list[tuple[str, str]] = []
        edge_keys: set[frozenset[str]] = set()
        duplicates = 0
        self_loops = 0

        def register(label: str) -> None:
            if label not in seen:
                seen.add(label)
                labels.append(label)

        for line_no, raw in enumerate(lines, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#!"):
                tokens = line[2:].split()
                if len(tokens) != 2 or tokens[0] != "node":
                    raise EdgeListParseError(
                        f"{source or '<edge list>'}:{line_no}: unknown "
                        f"directive {line!r}",
                        line_no,
                    )
                register(tokens[1])
                continue
            if line.startswith("#"):
                continue
            tokens = line.split()
            if len(tokens) != 2:
                raise EdgeListParseError(
                    f"{source or '<edge list>'}:{line_no}: expected two "
                    f"labels, got {len(tokens)}",
                    line_no,
                )
            u, v = tokens
            if u == v:
                self_loops += 1
                register(u)
                continue
            register(u)
            register(v)
            key = frozenset((u, v))
            if key in edge_keys:
                duplicates += 1
                continue
            edge_keys.add(key)
            edges.append((u, v))
        return cls(
            path=source,
            labels=tuple(labels),
            edges=tuple(edges),
            duplicate_count=duplicates,
            self_loop_count=self_loops,
        )

    def to_graph(self) -> Graph:
        ids = {label: i for i, label in enumerate(self.labels)}
        edges = [(ids[u], ids[v]) for u, v in self.edges]
        return Graph.build(len(self.labels), edges, labels=self.labels)


def load_edge_list(path: str | Path) -> Graph:
    """Read an edge-list file into a labeled graph.

    Duplicate edges and self-loops are dropped; a warning reports how many.
    """
    parsed = EdgeListFile.parse(path)
    if parsed.duplicate_count or parsed.self_loop_count:
        logger.warning(
            "%s: dropped %d duplicate edge(s) and %d self-loop(s)",
            path, parsed.duplicate_count, parsed.self_loop_count,
        )
    return parsed.to_graph()


def save_edge_list(g: Graph, path: str | Path) -> None:
    """Write a graph as an edge list, preserving labels and isolated nodes."""
    degree = [0] * g.n
    for u, v in g.edges:
        degree[u] += 1
        degree[v] += 1
    with open(path, "w", encoding="utf-8") as handle:
        for node in range(g.n):
            if degree[node] == 0:
                handle.write(f"#! node {g.label(node)}\n")
        for u, v in sorted(g.edges):
            handle.write(f"{g.label(u)} {g.label(v)}\n")


def write_suite(
    spec: GeneratorSpec, out_dir: str | Path, stem: str = "graph"
) -> list[Path]:
    """Generate a suite and write ``<stem>_<index>.edges`` plus a manifest."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for index, graph in enumerate(generate(spec)):
        path = out / f"{stem}_{index}.edges"
        save_edge_list(graph, path)
        paths.append(path)
    manifest = dict(spec.params(), files=[p.name for p in paths])
    manifest_path = out / f"{stem}_manifest.json"
    manifest_path.write_text(
        json.dumps(manifest, sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )
    return paths


def bundled_eval_path(name: str) -> Path:
    """Path of a bundled evaluation fixture (ranked ground truth or
    per-metric predictions for the surveyed real-world networks)."""
    root = resources.files("netstrength") / "data" / "eval"
    path = Path(str(root / name))
    if not path.exists():
        available = sorted(p.name for p in Path(str(root)).iterdir())
        raise FileNotFoundError(
            f"no bundled fixture {name!r}; available: {available}"
        )
    return path
