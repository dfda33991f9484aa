"""Independent correctness oracle for maximal independent sets."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidParameter, TooLarge
from .graph import Graph

_ENUMERATION_LIMIT = 20


@dataclass(frozen=True)
class VerifyReport:
    """Result of checking a candidate set.

    A witness is present exactly when the corresponding flag is False:
    ``witness_edge`` is an edge inside the candidate, ``witness_vertex`` is a
    node outside the candidate with no neighbour inside it.
    """

    independent: bool
    maximal: bool
    witness_edge: tuple[int, int] | None = None
    witness_vertex: int | None = None

    @property
    def ok(self) -> bool:
        return self.independent and self.maximal


def check_mis(graph: Graph, candidate) -> VerifyReport:
    """Check independence and maximality of a candidate node set.

    Independence: no edge joins two candidate nodes.  Maximality: every node
    outside the candidate has a neighbour inside it.  Witnesses are the
    first violation in ascending node order.
    """
    members = set()
    for v in candidate:
        if not 0 <= v < graph.node_count:
            raise InvalidParameter(f"candidate node {v} out of range for {graph.node_count} nodes")
        members.add(v)
    witness_edge = None
    for v in sorted(members):
        for u in graph.adjacency[v]:
            if u > v and u in members:
                witness_edge = (v, u)
                break
        if witness_edge:
            break
    witness_vertex = None
    for v in range(graph.node_count):
        if v in members:
            continue
        if not any(u in members for u in graph.adjacency[v]):
            witness_vertex = v
            break
    return VerifyReport(
        independent=witness_edge is None,
        maximal=witness_vertex is None,
        witness_edge=witness_edge,
        witness_vertex=witness_vertex,
    )


def enumerate_mis(graph: Graph) -> list[tuple[int, ...]]:
    """All maximal independent sets of a small graph, by exhaustive 2^n scan.

    Returns sorted tuples in lexicographic order.  Deliberately naive: this
    is the oracle the simulator is checked against, so simplicity beats
    cleverness.  Guarded at 20 nodes.
    """
    n = graph.node_count
    if n > _ENUMERATION_LIMIT:
        raise TooLarge(f"enumeration limited to {_ENUMERATION_LIMIT} nodes, got {n}")
    nbr_masks = graph.adjacency_masks()
    full = (1 << n) - 1
    found = []
    for subset in range(1 << n):
        covered = subset
        independent = True
        bits = subset
        while bits:
            low = bits & -bits
            v = low.bit_length() - 1
            if nbr_masks[v] & subset:
                independent = False
                break
            covered |= nbr_masks[v]
            bits ^= low
        if independent and covered == full:
            found.append(tuple(v for v in range(n) if subset >> v & 1))
    found.sort()
    return found
