"""Set partitions of {0, ..., n-1} and the uncrossing calculus on them.

Partitions are stored canonically: blocks ordered by smallest element, so
the per-vertex block labelling is a restricted-growth string.  Two
partitions combine in two ways: the *join* glues overlapping blocks
together until nothing overlaps, and the *meet* repeatedly uncrosses
properly intersecting blocks and keeps the minimal sets of the resulting
laminar family.  The join does not depend on the uncrossing order; the
meet does, so :func:`meet` fixes one deterministic rule (always uncross
the lexicographically smallest properly intersecting pair).
"""

from __future__ import annotations

import math
from typing import Callable, Iterable, Iterator

from .caps import MAX_PARTITION_VERTICES, CapExceeded

Block = frozenset


class Partition:
    """A partition of {0..n-1} into nonempty, disjoint, covering blocks."""

    __slots__ = ("n", "labels", "_blocks", "_hash")

    def __init__(self, n: int, blocks: Iterable[Iterable[int]]):
        owner = [-1] * n
        cleaned = []
        for b in blocks:
            fb = frozenset(b)
            if not fb:
                raise ValueError("partition blocks must be nonempty")
            for v in fb:
                if not 0 <= v < n:
                    raise ValueError(f"vertex {v} outside ground set of size {n}")
                if owner[v] != -1:
                    raise ValueError(f"vertex {v} appears in two blocks")
                owner[v] = 1
            cleaned.append(fb)
        if any(o == -1 for o in owner):
            missing = [v for v, o in enumerate(owner) if o == -1]
            raise ValueError(f"vertices {missing} not covered by any block")
        cleaned.sort(key=min)
        labels = [0] * n
        for i, b in enumerate(cleaned):
            for v in b:
                labels[v] = i
        self.n = n
        self.labels = tuple(labels)
        self._blocks = tuple(cleaned)
        self._hash = hash((n, self.labels))

    @classmethod
    def from_labels(cls, labels: Iterable[int]) -> "Partition":
        labels = tuple(labels)
        p = object.__new__(cls)
        seen: dict[int, int] = {}
        norm = []
        for l in labels:
            norm.append(seen.setdefault(l, len(seen)))
        p.n = len(labels)
        p.labels = tuple(norm)
        p._blocks = None
        p._hash = hash((p.n, p.labels))
        return p

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls.from_labels(range(n))

    @classmethod
    def whole(cls, n: int) -> "Partition":
        return cls.from_labels([0] * n)

    @property
    def blocks(self) -> tuple:
        if self._blocks is None:
            self._blocks = tuple(
                frozenset(b) for b in blocks_from_labels(self.labels)
            )
        return self._blocks

    def crosses(self, X: Iterable[int]) -> bool:
        """True iff X meets at least two blocks."""
        seen = -1
        for v in X:
            l = self.labels[v]
            if seen == -1:
                seen = l
            elif l != seen:
                return True
        return False

    def block_of(self, v: int):
        return self.blocks[self.labels[v]]

    def __len__(self) -> int:
        return (max(self.labels) + 1) if self.labels else 0

    def __iter__(self):
        return iter(self.blocks)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Partition)
            and self.n == other.n
            and self.labels == other.labels
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        body = "|".join(
            ",".join(str(v) for v in sorted(b)) for b in self.blocks
        )
        return f"Partition[{body}]"


def blocks_from_labels(labels) -> list:
    """Blocks of a label vector, ordered by first occurrence (= by minimum)."""
    nb = (max(labels) + 1) if labels else 0
    blocks: list[list[int]] = [[] for _ in range(nb)]
    for v, l in enumerate(labels):
        blocks[l].append(v)
    return blocks


def _same_ground(p1: Partition, p2: Partition) -> None:
    if p1.n != p2.n:
        raise ValueError(f"partitions of different ground sets: {p1.n} vs {p2.n}")


def join(p1: Partition, p2: Partition) -> Partition:
    """Finest common coarsening: components of the block-overlap relation.

    Equals the maximal sets of the fully uncrossed family of the blocks of
    both partitions; the test suite verifies that equivalence against
    :func:`uncross` exhaustively for small ground sets.
    """
    _same_ground(p1, p2)
    parent = list(range(p1.n))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for p in (p1, p2):
        for b in blocks_from_labels(p.labels):
            r = find(b[0])
            for v in b[1:]:
                parent[find(v)] = r
    return Partition.from_labels(find(v) for v in range(p1.n))


def uncross(
    p1: Partition,
    p2: Partition,
    choose: Callable[[int], int] | None = None,
) -> tuple[Partition, Partition]:
    """Run the uncrossing method on the combined block family.

    Repeatedly replaces a properly intersecting pair {A, B} by A&B and A|B
    until no such pair remains, then returns (minimal sets, maximal sets)
    of the final laminar family.  By default the lexicographically
    smallest pair (blocks compared as sorted vertex tuples) is uncrossed
    first, which makes the result deterministic; `choose(k)` may instead
    pick an index into the sorted candidate list, e.g. for randomized
    order experiments.
    """
    _same_ground(p1, p2)
    fam = list(p1.blocks) + list(p2.blocks)
    while True:
        cands = []
        for i in range(len(fam)):
            for j in range(i + 1, len(fam)):
                a, b = fam[i], fam[j]
                if (a & b) and (a - b) and (b - a):
                    ka, kb = sorted((tuple(sorted(a)), tuple(sorted(b))))
                    cands.append((ka, kb, i, j))
        if not cands:
            break
        cands.sort()
        pick = cands[0] if choose is None else cands[choose(len(cands))]
        i, j = pick[2], pick[3]
        a, b = fam[i], fam[j]
        fam[i], fam[j] = a & b, a | b
    distinct = set(fam)
    minimal = [a for a in distinct if not any(b < a for b in distinct)]
    maximal = [a for a in distinct if not any(b > a for b in distinct)]
    return Partition(p1.n, minimal), Partition(p1.n, maximal)


def meet(p1: Partition, p2: Partition) -> Partition:
    """Minimal sets of the uncrossed family under the fixed lexicographic rule."""
    return uncross(p1, p2)[0]


def rgs_strings(n: int) -> Iterator[tuple]:
    """All restricted-growth strings of length n, in descending lexicographic
    order: the all-distinct string (singleton blocks) first, all-zeros last."""
    if n == 0:
        yield ()
        return
    a = list(range(n))
    while True:
        yield tuple(a)
        i = n - 1
        while i > 0 and a[i] == 0:
            i -= 1
        if i == 0:
            return
        a[i] -= 1
        m = 0
        for j in range(i + 1):
            if a[j] > m:
                m = a[j]
        for j in range(i + 1, n):
            m += 1
            a[j] = m


def enumerate_partitions(
    n: int, *, max_vertices: int = MAX_PARTITION_VERTICES
) -> Iterator[Partition]:
    """Yield every partition of an n-set exactly once, finest first.

    The stream follows descending restricted-growth-string order, so the
    all-singletons partition comes first and {V} last.  Certificates of
    the form "first violated partition" rely on this order.
    """
    if n > max_vertices:
        raise CapExceeded(
            f"refusing to enumerate Bell({n}) partitions; cap is {max_vertices} vertices"
        )
    for labels in rgs_strings(n):
        yield Partition.from_labels(labels)


def bell_number(n: int) -> int:
    """Number of partitions of an n-set."""
    bells = [1]
    for i in range(n):
        bells.append(sum(math.comb(i, j) * bells[j] for j in range(i + 1)))
    return bells[n]
