"""Undirected simple graph with dense integer node ids."""

from __future__ import annotations

from collections.abc import Iterable


class EdgeListError(ValueError):
    """Malformed edge-list input (bad tokens, self-loops, bad node ids)."""


class Graph:
    """Immutable undirected simple graph.

    Nodes are the integers ``0 .. K-1``.  Isolated nodes are allowed, which
    is why the node count is stored explicitly instead of being inferred
    from the edge set.
    """

    __slots__ = ("K", "edges", "adj", "n", "F")

    def __init__(self, K: int, edges: Iterable[tuple[int, int]]):
        if K < 1:
            raise ValueError("node count must be >= 1")
        adj: list[set[int]] = [set() for _ in range(K)]
        edge_set: set[tuple[int, int]] = set()
        for u, v in edges:
            if u == v:
                raise EdgeListError(f"self-loop on node {u}")
            if not (0 <= u < K and 0 <= v < K):
                raise EdgeListError(f"edge ({u}, {v}) outside node range [0, {K})")
            if u > v:
                u, v = v, u
            edge_set.add((u, v))
            adj[u].add(v)
            adj[v].add(u)
        self.K = K
        self.edges = frozenset(edge_set)
        self.adj = adj
        self.n = len(edge_set)
        self.F = K * (K - 1) // 2

    def neighbors(self, u: int) -> list[int]:
        """Neighbors of ``u`` in ascending order."""
        self._check_node(u)
        return sorted(self.adj[u])

    def degree(self, u: int) -> int:
        self._check_node(u)
        return len(self.adj[u])

    def connected(self, u: int, v: int) -> bool:
        """True iff the edge {u, v} exists.  A node is never connected to itself."""
        self._check_node(u)
        self._check_node(v)
        return v in self.adj[u]

    def links_in(self, nodes: Iterable[int]) -> tuple[int, int]:
        """Count edges internal to ``nodes`` and edges leaving the set.

        Returns ``(internal, external)`` where internal edges have both
        endpoints in the set and external edges exactly one.
        """
        node_set = set(nodes)
        for u in node_set:
            self._check_node(u)
        internal = 0
        external = 0
        for u in node_set:
            for v in self.adj[u]:
                if v in node_set:
                    internal += 1
                else:
                    external += 1
        return internal // 2, external

    def subgraph(self, nodes: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph with nodes relabeled ``0..m-1`` in ascending order.

        Returns the subgraph and the list mapping new ids back to original ids.
        """
        order = sorted(set(nodes))
        for u in order:
            self._check_node(u)
        index = {u: i for i, u in enumerate(order)}
        sub_edges = [
            (index[u], index[v])
            for u, v in self.edges
            if u in index and v in index
        ]
        return Graph(len(order), sub_edges), order

    def _check_node(self, u: int) -> None:
        if not (0 <= u < self.K):
            raise ValueError(f"node {u} out of range [0, {self.K})")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.K == other.K and self.edges == other.edges

    def __hash__(self):
        return hash((self.K, self.edges))

    def __repr__(self) -> str:
        return f"Graph(K={self.K}, n={self.n})"


def load_edge_list(path) -> Graph:
    """Read a graph from an edge-list file.

    One edge per line as two whitespace-separated non-negative integers.
    Lines starting with '#' are comments.  Duplicate and reversed edges are
    merged silently.  The node count is one plus the largest id seen.
    """
    edges = []
    max_id = 0
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise EdgeListError(f"{path}:{lineno}: expected two integers, got {line!r}")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise EdgeListError(f"{path}:{lineno}: expected two integers, got {line!r}") from None
            if u < 0 or v < 0:
                raise EdgeListError(f"{path}:{lineno}: negative node id")
            if u == v:
                raise EdgeListError(f"{path}:{lineno}: self-loop on node {u}")
            edges.append((u, v))
            max_id = max(max_id, u, v)
    return Graph(max_id + 1, edges)


def save_edge_list(graph: Graph, path) -> None:
    """Write a graph in the edge-list format accepted by :func:`load_edge_list`."""
    with open(path, "w") as fh:
        for u, v in sorted(graph.edges):
            fh.write(f"{u} {v}\n")
