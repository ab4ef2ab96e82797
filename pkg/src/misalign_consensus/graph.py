"""Undirected agent topologies and their planar-coordinate Laplacian."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Graph:
    """Undirected graph on agents ``0 .. n-1`` with unit edge weights.

    Edges are stored as sorted, deduplicated index pairs.  Instances are
    immutable and safe to share.
    """

    n: int
    edges: tuple[tuple[int, int], ...]

    def neighbors(self, i: int) -> tuple[int, ...]:
        _check_index(self, i)
        out = [b if a == i else a for a, b in self.edges if i in (a, b)]
        return tuple(sorted(out))


def _check_index(g: Graph, i: int) -> None:
    if not 0 <= i < g.n:
        raise ValueError(f"agent index {i} out of range for {g.n} agents")


def new_undirected(n: int, edges) -> Graph:
    """Build a validated, normalized undirected graph.

    Rejects out-of-range indices, self-loops, and (implicitly, by
    deduplication) repeated edges.  Agents are 0-indexed.
    """
    if n < 1:
        raise ValueError(f"agent count must be >= 1, got {n}")
    normalized = set()
    for pair in edges:
        i, j = pair
        if not 0 <= i < n or not 0 <= j < n:
            raise ValueError(f"edge ({i}, {j}) out of range for {n} agents")
        if i == j:
            raise ValueError(f"self-loop ({i}, {i}) is not allowed")
        normalized.add((min(i, j), max(i, j)))
    return Graph(n, tuple(sorted(normalized)))


def degree(g: Graph, i: int) -> int:
    """Number of neighbors of agent ``i``."""
    _check_index(g, i)
    return sum(1 for a, b in g.edges if i in (a, b))


def degrees(g: Graph) -> np.ndarray:
    """Degree of every agent as an integer vector."""
    d = np.zeros(g.n, dtype=int)
    for a, b in g.edges:
        d[a] += 1
        d[b] += 1
    return d


def adjacency_matrix(g: Graph) -> np.ndarray:
    """Symmetric 0/1 adjacency matrix (n x n)."""
    a = np.zeros((g.n, g.n))
    for i, j in g.edges:
        a[i, j] = a[j, i] = 1.0
    return a


def scalar_laplacian(g: Graph) -> np.ndarray:
    """Classical graph Laplacian (n x n): degrees on the diagonal minus adjacency."""
    return np.diag(degrees(g).astype(float)) - adjacency_matrix(g)


def topology_laplacian(g: Graph) -> np.ndarray:
    """Laplacian expanded to planar coordinates (2n x 2n).

    Every scalar Laplacian entry becomes that entry times a 2x2 identity
    block, under the agent-major stacking (x1, y1, x2, y2, ...).  Symmetric
    and positive semidefinite.
    """
    return np.kron(scalar_laplacian(g), np.eye(2))


def is_connected(g: Graph) -> bool:
    """True iff every agent is reachable from agent 0 (single component)."""
    if g.n == 1:
        return True
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for a, b in g.edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = {0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == g.n
