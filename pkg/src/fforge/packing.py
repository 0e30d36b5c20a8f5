"""Plain data types for packings of rooted forests.

Deliberately free of invariant enforcement: the validator has to be able
to represent and report broken packings.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class TreeEdge:
    """One used edge: the instance edge id plus the two endpoints actually
    connected.  For graph edges the endpoints are forced; for hyperedges
    they record the trimming choice."""

    edge_id: int
    u: int
    v: int

    def __post_init__(self):
        if self.u > self.v:
            lo, hi = self.v, self.u
            object.__setattr__(self, "u", lo)
            object.__setattr__(self, "v", hi)


def tree_edge(edge_id: int, u: int, v: int) -> TreeEdge:
    return TreeEdge(edge_id, min(u, v), max(u, v))


@dataclass(frozen=True)
class RootedForest:
    """Roots as (vertex, token) pairs (token None in plain spanning
    packings) plus the used edges."""

    roots: tuple
    edges: tuple

    def vertices(self) -> frozenset:
        vs = {v for v, _ in self.roots}
        for e in self.edges:
            vs.add(e.u)
            vs.add(e.v)
        return frozenset(vs)

    def edge_ids(self) -> tuple:
        return tuple(e.edge_id for e in self.edges)


@dataclass(frozen=True)
class Packing:
    members: tuple

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def all_edge_ids(self) -> tuple:
        out = []
        for mem in self.members:
            out.extend(mem.edge_ids())
        return tuple(out)

    def total_roots(self) -> int:
        return sum(len(mem.roots) for mem in self.members)
