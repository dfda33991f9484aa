"""Immutable undirected simple graphs, deterministic generators, edge-list text I/O.

Nodes are dense indices 0..n-1 with no labels; the protocols simulated on top
of these graphs are anonymous, so nothing else is needed.  The edge-list text
format (see :func:`parse_edge_list`) is the single interchange format.
"""

from __future__ import annotations

from itertools import chain
from typing import Iterable

import numpy as np

from .errors import InvalidParameter, ParseError

_MASK64 = (1 << 64) - 1


class Graph:
    """Undirected simple graph with adjacency stored as sorted tuples.

    Instances are immutable after construction and therefore safe to share
    across concurrently executing simulation runs.  Invariants: adjacency is
    symmetric, has no self-loops, and each neighbour list is strictly
    increasing.
    """

    __slots__ = ("_n", "_adjacency", "_edge_count", "_masks")

    def __init__(self, node_count: int, edges: Iterable[tuple[int, int]] = ()):
        if not isinstance(node_count, int) or isinstance(node_count, bool) or node_count < 0:
            raise InvalidParameter(f"node_count must be a nonnegative integer, got {node_count!r}")
        neighbour_sets: list[set[int]] = [set() for _ in range(node_count)]
        for u, v in edges:
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise InvalidParameter(f"edge ({u}, {v}) out of range for {node_count} nodes")
            if u == v:
                raise InvalidParameter(f"self-loop ({u}, {v}) not allowed")
            neighbour_sets[u].add(v)
            neighbour_sets[v].add(u)
        self._n = node_count
        self._adjacency = tuple(tuple(sorted(s)) for s in neighbour_sets)
        self._edge_count = sum(len(s) for s in neighbour_sets) // 2
        self._masks: list[int] | None = None

    @classmethod
    def _from_sorted_adjacency(cls, node_count: int, adjacency: tuple[tuple[int, ...], ...]) -> "Graph":
        """Trusted fast path for generators that build valid adjacency directly."""
        g = object.__new__(cls)
        g._n = node_count
        g._adjacency = adjacency
        g._edge_count = sum(len(row) for row in adjacency) // 2
        g._masks = None
        return g

    @property
    def node_count(self) -> int:
        return self._n

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adjacency

    @property
    def edge_count(self) -> int:
        return self._edge_count

    def neighbours(self, v: int) -> tuple[int, ...]:
        if not 0 <= v < self._n:
            raise InvalidParameter(f"node {v} out of range for {self._n} nodes")
        return self._adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.neighbours(v))

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) pairs with u < v, lexicographically sorted."""
        return [(u, v) for u in range(self._n) for v in self._adjacency[u] if u < v]

    def adjacency_masks(self) -> list[int]:
        """Per-node neighbour sets as little-endian bitmask integers (cached)."""
        if self._masks is None:
            n = self._n
            if n == 0:
                self._masks = []
            else:
                degrees = np.fromiter((len(row) for row in self._adjacency), dtype=np.int64, count=n)
                total = int(degrees.sum())
                dense = np.zeros((n, n), dtype=bool)
                if total:
                    srcs = np.repeat(np.arange(n, dtype=np.int64), degrees)
                    dsts = np.fromiter(chain.from_iterable(self._adjacency), dtype=np.int64, count=total)
                    dense[srcs, dsts] = True
                packed = np.packbits(dense, axis=1, bitorder="little")
                self._masks = [int.from_bytes(packed[v].tobytes(), "little") for v in range(n)]
        return self._masks

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._adjacency == other._adjacency

    def __repr__(self) -> str:
        return f"Graph(node_count={self._n}, edge_count={self._edge_count})"

    def __getstate__(self):
        return (self._n, self._adjacency)

    def __setstate__(self, state):
        self._n, self._adjacency = state
        self._edge_count = sum(len(row) for row in self._adjacency) // 2
        self._masks = None


def validate_graph(g: Graph) -> None:
    """Raise InvalidParameter unless g satisfies all structural invariants."""
    adjacency = g.adjacency
    if len(adjacency) != g.node_count:
        raise InvalidParameter("adjacency length does not match node_count")
    for v, row in enumerate(adjacency):
        for i, u in enumerate(row):
            if not 0 <= u < g.node_count:
                raise InvalidParameter(f"neighbour {u} of node {v} out of range")
            if u == v:
                raise InvalidParameter(f"self-loop at node {v}")
            if i > 0 and row[i - 1] >= u:
                raise InvalidParameter(f"adjacency of node {v} not strictly increasing")
            if v not in adjacency[u]:
                raise InvalidParameter(f"edge ({v}, {u}) not symmetric")


def complete_graph(d: int) -> Graph:
    """Complete graph on d nodes (every pair adjacent)."""
    if not isinstance(d, int) or d < 1:
        raise InvalidParameter(f"complete_graph requires d >= 1, got {d!r}")
    everyone = tuple(range(d))
    adjacency = tuple(everyone[:v] + everyone[v + 1:] for v in range(d))
    return Graph._from_sorted_adjacency(d, adjacency)


def clique_family(m: int) -> Graph:
    """Disjoint union of m copies of the complete graph on d nodes, for every d in 1..m.

    Blocks are laid out consecutively, d ascending and copy index ascending,
    giving m*m components and m*m*(m+1)/2 nodes in total.
    """
    if not isinstance(m, int) or m < 1:
        raise InvalidParameter(f"clique_family requires m >= 1, got {m!r}")
    adjacency: list[tuple[int, ...]] = []
    offset = 0
    for d in range(1, m + 1):
        for _ in range(m):
            block = tuple(range(offset, offset + d))
            for v in block:
                adjacency.append(tuple(u for u in block if u != v))
            offset += d
    return Graph._from_sorted_adjacency(offset, tuple(adjacency))


def erdos_renyi(n: int, p_edge: float, seed: int) -> Graph:
    """G(n, p) random graph, reproducible for equal (n, p_edge, seed).

    Each unordered pair is included independently with probability p_edge.
    Pairs are drawn in lexicographic order (0,1), (0,2), ..., (n-2,n-1) from a
    PCG64 stream seeded with the 64-bit seed, so the adjacency is a pure
    function of the arguments.
    """
    if not isinstance(n, int) or n < 1:
        raise InvalidParameter(f"erdos_renyi requires n >= 1, got {n!r}")
    if not 0.0 <= p_edge <= 1.0:
        raise InvalidParameter(f"p_edge must be in [0, 1], got {p_edge!r}")
    rng = np.random.default_rng(int(seed) & _MASK64)
    draws = rng.random(n * (n - 1) // 2)
    us, vs = np.triu_indices(n, k=1)
    keep = draws < p_edge
    us, vs = us[keep], vs[keep]
    if us.size == 0:
        return Graph._from_sorted_adjacency(n, tuple(() for _ in range(n)))
    srcs = np.concatenate([us, vs])
    dsts = np.concatenate([vs, us])
    order = np.lexsort((dsts, srcs))
    srcs, dsts = srcs[order], dsts[order]
    flat = dsts.tolist()
    bounds = np.searchsorted(srcs, np.arange(n + 1)).tolist()
    adjacency = tuple(tuple(flat[bounds[v]:bounds[v + 1]]) for v in range(n))
    return Graph._from_sorted_adjacency(n, adjacency)


def grid_graph(rows: int, cols: int) -> Graph:
    """Rectangular grid: node (r, c) at index r*cols + c, 4-neighbour adjacency."""
    if not isinstance(rows, int) or rows < 1 or not isinstance(cols, int) or cols < 1:
        raise InvalidParameter(f"grid_graph requires rows, cols >= 1, got {rows!r}, {cols!r}")
    adjacency = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            nbrs = []
            if r > 0:
                nbrs.append(v - cols)
            if c > 0:
                nbrs.append(v - 1)
            if c < cols - 1:
                nbrs.append(v + 1)
            if r < rows - 1:
                nbrs.append(v + cols)
            adjacency.append(tuple(nbrs))
    return Graph._from_sorted_adjacency(rows * cols, tuple(adjacency))


def path_graph(n: int) -> Graph:
    """Path 0 - 1 - ... - (n-1)."""
    if not isinstance(n, int) or n < 1:
        raise InvalidParameter(f"path_graph requires n >= 1, got {n!r}")
    return grid_graph(1, n)


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list interchange format into a Graph.

    Format: first line ``n m``, then exactly m lines ``u v`` with
    0 <= u, v < n and u != v.  Duplicate edges (in either orientation),
    self-loops, out-of-range indices and malformed lines are rejected with a
    ParseError carrying the offending line number.
    """
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty input, expected header 'n m'", line=1)
    header = lines[0].split()
    if len(header) != 2:
        raise ParseError(f"expected header 'n m', got {lines[0]!r}", line=1)
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise ParseError(f"header fields must be integers, got {lines[0]!r}", line=1) from None
    if n < 0 or m < 0:
        raise ParseError(f"header fields must be nonnegative, got {lines[0]!r}", line=1)
    if len(lines) - 1 != m:
        raise ParseError(f"expected {m} edge lines, found {len(lines) - 1}", line=len(lines))
    seen: set[tuple[int, int]] = set()
    edges: list[tuple[int, int]] = []
    for i, raw in enumerate(lines[1:], start=2):
        fields = raw.split()
        if len(fields) != 2:
            raise ParseError(f"expected 'u v', got {raw!r}", line=i)
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"edge endpoints must be integers, got {raw!r}", line=i) from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"edge ({u}, {v}) out of range for {n} nodes", line=i)
        if u == v:
            raise ParseError(f"self-loop ({u}, {v}) not allowed", line=i)
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise ParseError(f"duplicate edge ({u}, {v})", line=i)
        seen.add(key)
        edges.append(key)
    return Graph(n, edges)


def write_edge_list(g: Graph) -> str:
    """Serialize a Graph to the edge-list format; inverse of parse_edge_list.

    Edges are written with u < v in lexicographic order, ASCII decimal, LF
    line endings, so equal graphs serialize to identical bytes.
    """
    out = [f"{g.node_count} {g.edge_count}"]
    out.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(out) + "\n"
