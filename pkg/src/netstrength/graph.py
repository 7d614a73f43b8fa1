"""Immutable undirected graphs, component decomposition, and size counts.

Nodes are contiguous 0-based integer ids. Dataset-native node names are kept
in an optional label tuple so reported answers can use the original naming.
All values are frozen after construction and safe to share between threads.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable


class EmptyGraphError(ValueError):
    """Raised by operations that are undefined on a graph with no nodes."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on nodes ``0..n-1``.

    Edges are canonical ``(u, v)`` pairs with ``u < v``; self-loops and
    duplicates are rejected. Prefer :meth:`build` over the raw constructor,
    which requires already-canonical edges.
    """

    n: int
    edges: frozenset[tuple[int, int]]
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"node count must be >= 0, got {self.n}")
        for edge in self.edges:
            u, v = edge
            if u == v:
                raise ValueError(f"self-loop {edge} not allowed")
            if not (0 <= u < v < self.n):
                raise ValueError(
                    f"edge {edge} is not canonical for a {self.n}-node graph"
                )
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError(
                f"expected {self.n} labels, got {len(self.labels)}"
            )

    @classmethod
    def build(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]] = (),
        labels: Iterable[str] | None = None,
    ) -> "Graph":
        """Construct a graph, normalizing edge orientation.

        ``{u, v}`` and ``{v, u}`` are the same edge; repeated pairs collapse
        to one. Self-loops and out-of-range endpoints raise ``ValueError``.
        """
        canonical = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop ({u}, {v}) not allowed")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(
                    f"edge ({u}, {v}) references a node outside 0..{n - 1}"
                )
            canonical.add((u, v) if u < v else (v, u))
        label_tuple = None if labels is None else tuple(labels)
        return cls(n=n, edges=frozenset(canonical), labels=label_tuple)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Neighbor lists in ascending order, indexed by node id."""
        neighbors: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            neighbors[u].append(v)
            neighbors[v].append(u)
        return tuple(tuple(sorted(ns)) for ns in neighbors)

    def label(self, node: int) -> str:
        if not (0 <= node < self.n):
            raise ValueError(f"unknown node id {node}")
        return self.labels[node] if self.labels is not None else str(node)

    def node_labels(self) -> tuple[str, ...]:
        return tuple(self.label(u) for u in range(self.n))


@dataclass(frozen=True)
class ComponentDecomposition:
    """Partition of the nodes into connected components.

    ``assignment[u]`` is the component index of node ``u``; indices are
    ordered by the smallest node id contained in each component, so the
    decomposition is a pure function of the graph.
    """

    assignment: tuple[int, ...]
    sizes: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.sizes)


@dataclass(frozen=True)
class CCSD:
    """Connected-component size counts.

    ``counts`` has length ``n``; entry for size ``i`` (1-based, via
    :meth:`count`) is the number of components with exactly ``i`` nodes.
    The weighted sum ``sum(i * count(i))`` always equals ``n``.
    """

    counts: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.counts)

    def count(self, size: int) -> int:
        """Number of components of exactly ``size`` nodes."""
        if not (1 <= size <= self.n):
            raise ValueError(f"size must be in 1..{self.n}, got {size}")
        return self.counts[size - 1]

    def items(self) -> Iterable[tuple[int, int]]:
        """(size, count) pairs for sizes with at least one component."""
        return (
            (size, count)
            for size, count in enumerate(self.counts, start=1)
            if count
        )


def components(g: Graph) -> ComponentDecomposition:
    """Decompose ``g`` into connected components via BFS.

    Components are discovered in ascending order of their smallest node id,
    making the index assignment deterministic regardless of edge order.
    """
    assignment = [-1] * g.n
    sizes: list[int] = []
    adjacency = g.adjacency
    for start in range(g.n):
        if assignment[start] != -1:
            continue
        index = len(sizes)
        assignment[start] = index
        queue = deque([start])
        size = 0
        while queue:
            node = queue.popleft()
            size += 1
            for neighbor in adjacency[node]:
                if assignment[neighbor] == -1:
                    assignment[neighbor] = index
                    queue.append(neighbor)
        sizes.append(size)
    return ComponentDecomposition(assignment=tuple(assignment), sizes=tuple(sizes))


def ccsd(g: Graph) -> CCSD:
    """Count components of each size 1..n.

    Raises :class:`EmptyGraphError` for a graph with no nodes.
    """
    if g.n == 0:
        raise EmptyGraphError("size counts are undefined for an empty graph")
    counts = [0] * g.n
    for size in components(g).sizes:
        counts[size - 1] += 1
    return CCSD(counts=tuple(counts))


def remove_nodes(g: Graph, removed: Iterable[int]) -> Graph:
    """Induced subgraph on the nodes outside ``removed``.

    Surviving nodes are renumbered contiguously in ascending original id;
    labels follow the surviving nodes so external naming is preserved.
    """
    removed_set = set(removed)
    for node in removed_set:
        if not (0 <= node < g.n):
            raise ValueError(f"unknown node id {node}")
    keep = [u for u in range(g.n) if u not in removed_set]
    new_id = {old: new for new, old in enumerate(keep)}
    edges = [
        (new_id[u], new_id[v])
        for u, v in g.edges
        if u in new_id and v in new_id
    ]
    labels = None
    if g.labels is not None:
        labels = tuple(g.labels[u] for u in keep)
    return Graph.build(len(keep), edges, labels)
