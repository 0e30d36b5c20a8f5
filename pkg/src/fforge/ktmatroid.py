"""The two packing matroids on the mixed ground set of edges and root tokens.

Given a graph, a placement of root tokens, and a matroid over the tokens,
the mixed rank of an edge subset F and token subset T is

    rank(F u T) = rank_M(S) * |V|
                + min over partitions P of V of
                  ( crossings_F(P) - sum over blocks X of
                    (rank_M(S) - rank_M(T restricted to X)) )

Its independent sets of size rank_M(S)*|V| are exactly the edge/root sets
of matroid-based packings of rooted trees.  Fixing T to the full token
set and shifting by |S| yields the rank of the classical matroid whose
independent edge sets extend to complete packings.  Both are evaluated by
explicit minimization over all partitions, with the minimizing partition
available as a certificate.
"""

from __future__ import annotations

from .caps import CapExceeded, MAX_PARTITION_VERTICES
from .hypergraph import Hypergraph, RootMultiset
from .matroids import RankOracle
from .partitions import Partition, rgs_strings


class KtContext:
    """A graph, root placements, and a base matroid over the root tokens.

    The mixed ground set gives edge i the id i and token t the id m + t,
    where m is the number of edges.
    """

    def __init__(self, graph: Hypergraph, roots: RootMultiset, base_matroid: RankOracle):
        if not graph.is_graph:
            raise ValueError("the packing matroids are defined over graphs")
        if roots.max_vertex() >= graph.n:
            raise ValueError("a root is placed outside the vertex set")
        if base_matroid.ground != frozenset(roots.tokens):
            raise ValueError("base matroid ground set must equal the root tokens")
        self.graph = graph
        self.roots = roots
        self.base = base_matroid
        self.n = graph.n
        self.m = graph.m
        self.rank_s = base_matroid.full_rank
        self.token_mask = sum(1 << t for t in roots.tokens)
        self._edge_ends = tuple(graph.edges)
        self._placements = roots.placements
        self._cache: dict = {}

    # mask plumbing --------------------------------------------------------

    @property
    def complete_size(self) -> int:
        return self.rank_s * self.n

    def mixed_ground(self) -> frozenset:
        return frozenset(range(self.m)) | frozenset(self.m + t for t in self.roots.tokens)

    def edge_mask(self, edge_ids) -> int:
        mm = 0
        for e in edge_ids:
            if not 0 <= e < self.m:
                raise ValueError(f"edge id {e} outside 0..{self.m - 1}")
            mm |= 1 << e
        return mm

    def token_submask(self, tokens) -> int:
        mm = 0
        for t in tokens:
            bit = 1 << t
            if not bit & self.token_mask:
                raise ValueError(f"token {t} is not placed in this context")
            mm |= bit
        return mm

    # rank evaluation ------------------------------------------------------

    def _minimize(self, f_mask: int, t_mask: int) -> tuple:
        """Minimum over all partitions of crossings(F) - sum of per-block
        rank deficits of T, together with the first minimizing labels."""
        key = (f_mask, t_mask)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if self.n > MAX_PARTITION_VERTICES:
            raise CapExceeded("instance too large for partition enumeration")
        ends = [self._edge_ends[e] for e in _bits(f_mask)]
        toks = [(1 << t, v) for v, t in self._placements if t_mask >> t & 1]
        rs = self.rank_s
        rank = self.base.rank_mask
        best = None
        best_labels = None
        for labels in rgs_strings(self.n):
            nb = (max(labels) + 1) if labels else 0
            e = sum(1 for u, v in ends if labels[u] != labels[v])
            block_masks = [0] * nb
            for bit, v in toks:
                block_masks[labels[v]] |= bit
            deficit = nb * rs - sum(rank(bm) for bm in block_masks)
            val = e - deficit
            if best is None or val < best:
                best = val
                best_labels = labels
        out = (best, best_labels)
        self._cache[key] = out
        return out

    def r_prime_mask(self, f_mask: int, t_mask: int) -> int:
        return self.rank_s * self.n + self._minimize(f_mask, t_mask)[0]

    def r_prime(self, edge_ids, tokens) -> int:
        """Mixed rank of an edge subset together with a token subset."""
        return self.r_prime_mask(self.edge_mask(edge_ids), self.token_submask(tokens))

    def r_kt(self, edge_ids) -> int:
        """Rank of an edge subset in the complete-packing matroid.

        Defined only when the tokens at every single vertex are
        independent in the base matroid.
        """
        for v in range(self.n):
            at_v = self.roots.at_vertex(v)
            if not self.base.independent(at_v):
                raise ValueError(
                    f"vertex {v} carries a dependent root multiset; "
                    "the complete-packing rank is undefined"
                )
        f_mask = self.edge_mask(edge_ids)
        val, _ = self._minimize(f_mask, self.token_mask)
        return self.rank_s * self.n - len(self.roots) + val

    def min_partition(self, edge_ids, tokens) -> Partition:
        """A partition attaining the mixed-rank minimum (first in
        enumeration order)."""
        _, labels = self._minimize(self.edge_mask(edge_ids), self.token_submask(tokens))
        return Partition.from_labels(labels)

    def rank_oracle(self) -> RankOracle:
        """The mixed matroid as a plain rank oracle, usable in intersection."""
        edge_all = (1 << self.m) - 1

        def rank_of_mask(mm: int) -> int:
            return self.r_prime_mask(mm & edge_all, mm >> self.m)

        return RankOracle(self.mixed_ground(), rank_of_mask, name="packing-matroid")

    def split_mixed(self, elems) -> tuple:
        """Partition mixed element ids back into (edge ids, token ids)."""
        edges, tokens = [], []
        for e in sorted(elems):
            if e < self.m:
                edges.append(e)
            else:
                tokens.append(e - self.m)
        return tuple(edges), tuple(tokens)


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1
