"""Immutable multigraph/hypergraph instances and root placements.

Vertices are dense integers 0..n-1.  Hyperedges are stored as sorted
vertex tuples in a stable order, so an edge id is its index and stays
valid across certificate round trips.  A graph is the special case in
which every hyperedge has exactly two vertices; parallel edges are
allowed everywhere, self-loops nowhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .caps import MAX_PARTITION_VERTICES, CapExceeded
from .partitions import Partition


@dataclass(frozen=True)
class GraphMinor:
    """A derived instance together with bookkeeping back to its origin.

    ``edge_ids[i]`` is the original id of the new edge ``i``;
    ``vertices[j]`` is the original vertex behind the new vertex ``j``,
    or ``None`` for a vertex created by contraction.
    """

    graph: "Hypergraph"
    edge_ids: tuple
    vertices: tuple


class Hypergraph:
    """A multiset of hyperedges (vertex sets of size >= 2) over 0..n-1."""

    __slots__ = ("n", "edges", "_vertex_masks")

    def __init__(
        self,
        n: int,
        hyperedges: Iterable[Iterable[int]] = (),
        *,
        max_vertices: int = MAX_PARTITION_VERTICES,
    ):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        if n > max_vertices:
            raise CapExceeded(
                f"{n} vertices exceeds the enumeration cap of {max_vertices}; "
                "downstream algorithms scan all Bell(n) partitions"
            )
        edges = []
        for he in hyperedges:
            vs = tuple(sorted(he))
            if len(set(vs)) != len(vs):
                raise ValueError(f"hyperedge {vs} repeats a vertex")
            if len(vs) < 2:
                raise ValueError(f"hyperedge {vs} has fewer than two vertices")
            if vs[0] < 0 or vs[-1] >= n:
                raise ValueError(f"hyperedge {vs} references a vertex outside 0..{n - 1}")
            edges.append(vs)
        self.n = n
        self.edges = tuple(edges)
        self._vertex_masks = tuple(
            sum(1 << v for v in vs) for vs in self.edges
        )

    @classmethod
    def graph(cls, n: int, pairs: Iterable[Iterable[int]]) -> "Hypergraph":
        return cls(n, pairs)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def is_graph(self) -> bool:
        return all(len(vs) == 2 for vs in self.edges)

    def vertex_mask(self, edge_id: int) -> int:
        return self._vertex_masks[edge_id]

    def _require_graph(self, op: str) -> None:
        if not self.is_graph:
            raise ValueError(f"{op} is defined for graphs only")

    # counting -----------------------------------------------------------

    def induced_count(self, X: Iterable[int]) -> int:
        """Number of edges (with multiplicity) with both ends inside X."""
        self._require_graph("induced_count")
        xm = _mask(X, self.n)
        return sum(1 for em in self._vertex_masks if em & xm == em)

    def cross_degree(self, X: Iterable[int], Y: Iterable[int]) -> int:
        """Number of edges with one end in X and the other in Y (X, Y disjoint)."""
        self._require_graph("cross_degree")
        xm = _mask(X, self.n)
        ym = _mask(Y, self.n)
        if xm & ym:
            raise ValueError("cross_degree requires disjoint vertex sets")
        return sum(1 for em in self._vertex_masks if (em & xm) and (em & ym))

    def crossing_count(self, p: Partition) -> int:
        """Number of hyperedges not contained in a single block of p."""
        if p.n != self.n:
            raise ValueError("partition is over a different vertex set")
        return self.crossings_of_labels(p.labels)

    def crossings_of_labels(self, labels) -> int:
        count = 0
        for vs in self.edges:
            l0 = labels[vs[0]]
            if any(labels[v] != l0 for v in vs[1:]):
                count += 1
        return count

    # derived instances --------------------------------------------------

    def induced(self, X: Iterable[int]) -> GraphMinor:
        """Sub-instance on X: keeps hyperedges entirely inside X."""
        keep_v = sorted(set(X))
        if any(v < 0 or v >= self.n for v in keep_v):
            raise ValueError("induced set references vertices outside the instance")
        vmap = {v: i for i, v in enumerate(keep_v)}
        xm = _mask(keep_v, self.n)
        edges, ids = [], []
        for i, vs in enumerate(self.edges):
            if self._vertex_masks[i] & xm == self._vertex_masks[i]:
                edges.append(tuple(vmap[v] for v in vs))
                ids.append(i)
        return GraphMinor(
            Hypergraph(len(keep_v), edges), tuple(ids), tuple(keep_v)
        )

    def contract(self, X: Iterable[int]) -> GraphMinor:
        """Contract X to a single new vertex; edges inside X disappear,
        edges leaving X are redirected to the new vertex, parallels kept."""
        self._require_graph("contract")
        xs = frozenset(X)
        if not xs:
            raise ValueError("cannot contract an empty vertex set")
        if any(v < 0 or v >= self.n for v in xs):
            raise ValueError("contraction set references vertices outside the instance")
        keep_v = sorted(v for v in range(self.n) if v not in xs)
        vmap = {v: i for i, v in enumerate(keep_v)}
        vx = len(keep_v)
        edges, ids = [], []
        for i, (u, v) in enumerate(self.edges):
            iu, iv = u in xs, v in xs
            if iu and iv:
                continue
            a = vx if iu else vmap[u]
            b = vx if iv else vmap[v]
            edges.append((a, b))
            ids.append(i)
        return GraphMinor(
            Hypergraph(vx + 1, edges), tuple(ids), tuple(keep_v) + (None,)
        )

    def without_edges(self, drop: Iterable[int]) -> GraphMinor:
        dropped = set(drop)
        edges, ids = [], []
        for i, vs in enumerate(self.edges):
            if i not in dropped:
                edges.append(vs)
                ids.append(i)
        return GraphMinor(
            Hypergraph(self.n, edges), tuple(ids), tuple(range(self.n))
        )

    def with_edges(self, extra: Iterable[Iterable[int]]) -> "Hypergraph":
        """New instance with hyperedges appended; existing ids unchanged."""
        return Hypergraph(self.n, list(self.edges) + [tuple(e) for e in extra])

    def replace_edge(self, edge_id: int, vertices: Iterable[int]) -> "Hypergraph":
        """New instance with one hyperedge shrunk to a subset of its vertices."""
        vs = tuple(sorted(vertices))
        old = set(self.edges[edge_id])
        if not set(vs) <= old:
            raise ValueError(f"replacement {vs} is not a subset of hyperedge {edge_id}")
        edges = list(self.edges)
        edges[edge_id] = vs
        return Hypergraph(self.n, edges)

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, edges={list(self.edges)})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Hypergraph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))


def trim_hyperedge(z: Iterable[int], u: int, v: int) -> tuple:
    """The edge uv obtained by trimming hyperedge z; u and v must be
    distinct vertices of z."""
    zs = frozenset(z)
    if u == v:
        raise ValueError("trimming needs two distinct end-vertices")
    if u not in zs or v not in zs:
        raise ValueError(f"trim endpoints ({u}, {v}) must lie inside the hyperedge")
    return (u, v) if u < v else (v, u)


class RootMultiset:
    """Root placements: distinct tokens, each sitting at one vertex.

    Tokens double as ground-set elements of the matroid over the roots,
    so several tokens at the same vertex model a vertex of multiplicity
    greater than one.
    """

    __slots__ = ("placements", "_vertex_of")

    def __init__(self, placements: Iterable[tuple]):
        pl = sorted(((int(v), int(t)) for v, t in placements), key=lambda p: p[1])
        tokens = [t for _, t in pl]
        if len(set(tokens)) != len(tokens):
            raise ValueError("root tokens must be distinct")
        if any(t < 0 or v < 0 for v, t in pl):
            raise ValueError("vertices and tokens must be non-negative")
        self.placements = tuple(pl)
        self._vertex_of = {t: v for v, t in pl}

    @classmethod
    def place(cls, vertices: Iterable[int]) -> "RootMultiset":
        """Place consecutively numbered tokens 0,1,... at the given vertices."""
        return cls((v, t) for t, v in enumerate(vertices))

    @property
    def tokens(self) -> tuple:
        return tuple(t for _, t in self.placements)

    def __len__(self) -> int:
        return len(self.placements)

    def vertex_of(self, token: int) -> int:
        return self._vertex_of[token]

    def at_vertex(self, v: int) -> tuple:
        return tuple(t for u, t in self.placements if u == v)

    def tokens_at(self, X: Iterable[int]) -> frozenset:
        """The sub-multiset of tokens placed at vertices of X."""
        xs = set(X)
        return frozenset(t for v, t in self.placements if v in xs)

    def restrict(self, keep_tokens: Iterable[int]) -> "RootMultiset":
        keep = set(keep_tokens)
        return RootMultiset((v, t) for v, t in self.placements if t in keep)

    def max_vertex(self) -> int:
        return max((v for v, _ in self.placements), default=-1)

    def __repr__(self) -> str:
        return f"RootMultiset({list(self.placements)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, RootMultiset) and self.placements == other.placements

    def __hash__(self) -> int:
        return hash(self.placements)


def _mask(X: Iterable[int], n: int) -> int:
    m = 0
    for v in X:
        if not 0 <= v < n:
            raise ValueError(f"vertex {v} outside 0..{n - 1}")
        m |= 1 << v
    return m
