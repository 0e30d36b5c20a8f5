"""Matroids as rank oracles, standard constructions, and matroid intersection.

A matroid is presented purely through its rank function over a finite
ground set of integer element ids (not necessarily contiguous: derived
constructions keep original ids).  Subsets travel as bitmasks internally;
rank queries are memoized per oracle.  Memo writes are idempotent and the
dict operations are atomic under the GIL, so concurrent readers always
observe a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .caps import InternalInconsistency


class RankOracle:
    """A matroid given by its rank function."""

    __slots__ = ("ground", "ground_mask", "name", "_rank_of_mask", "_cache")

    def __init__(self, ground: Iterable[int], rank_of_mask: Callable[[int], int], name: str = "matroid"):
        g = frozenset(int(e) for e in ground)
        if any(e < 0 for e in g):
            raise ValueError("ground elements must be non-negative integers")
        self.ground = g
        self.ground_mask = _mask(g)
        self.name = name
        self._rank_of_mask = rank_of_mask
        self._cache: dict = {}

    # queries --------------------------------------------------------------

    def rank_mask(self, mask: int) -> int:
        if mask & ~self.ground_mask:
            raise ValueError("rank query outside the ground set")
        r = self._cache.get(mask)
        if r is None:
            r = int(self._rank_of_mask(mask))
            self._cache[mask] = r
        return r

    def rank(self, elems: Iterable[int]) -> int:
        return self.rank_mask(_mask(elems))

    def independent_mask(self, mask: int) -> bool:
        return self.rank_mask(mask) == mask.bit_count()

    def independent(self, elems: Iterable[int]) -> bool:
        return self.independent_mask(_mask(elems))

    @property
    def full_rank(self) -> int:
        return self.rank_mask(self.ground_mask)

    def elements(self) -> tuple:
        return tuple(sorted(self.ground))

    def __repr__(self) -> str:
        return f"RankOracle({self.name}, |ground|={len(self.ground)})"


def _mask(elems: Iterable[int]) -> int:
    m = 0
    for e in elems:
        m |= 1 << e
    return m


def elems_of(mask: int) -> tuple:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


# constructions -------------------------------------------------------------


def free_matroid(ground: Iterable[int]) -> RankOracle:
    """Every subset independent: rank(X) = |X|."""
    return RankOracle(ground, lambda m: m.bit_count(), name="free")


def uniform_matroid(ground: Iterable[int], k: int) -> RankOracle:
    """rank(X) = min(|X|, k); bases are the k-element subsets."""
    g = frozenset(ground)
    if not 0 <= k <= len(g):
        raise ValueError(f"uniform rank {k} must lie in 0..{len(g)}")
    return RankOracle(g, lambda m: min(m.bit_count(), k), name=f"uniform({k})")


def restrict(m: RankOracle, keep: Iterable[int]) -> RankOracle:
    """The matroid on a subset of the ground set, same rank function."""
    k = frozenset(keep)
    if not k <= m.ground:
        raise ValueError("restriction set must lie inside the ground set")
    return RankOracle(k, m.rank_mask, name=f"{m.name}|restricted")


def contract(m: RankOracle, x: Iterable[int]) -> RankOracle:
    """Contraction by an independent set: rank(Z) = r(X u Z) - |X|."""
    xs = frozenset(x)
    if not xs <= m.ground:
        raise ValueError("contraction set must lie inside the ground set")
    xm = _mask(xs)
    if not m.independent_mask(xm):
        raise ValueError("can only contract an independent set")
    size = len(xs)
    return RankOracle(
        m.ground - xs,
        lambda mm: m.rank_mask(mm | xm) - size,
        name=f"{m.name}/contracted",
    )


def direct_sum(m1: RankOracle, m2: RankOracle) -> RankOracle:
    """Disjoint union of two matroids; rank adds componentwise."""
    if m1.ground & m2.ground:
        raise ValueError("direct sum needs disjoint ground sets")
    g1, g2 = m1.ground_mask, m2.ground_mask
    return RankOracle(
        m1.ground | m2.ground,
        lambda mm: m1.rank_mask(mm & g1) + m2.rank_mask(mm & g2),
        name=f"{m1.name}(+){m2.name}",
    )


@dataclass(frozen=True)
class GenPartitionSpec:
    """Parts of the ground set with per-part occupancy bounds and a total size.

    Bases are exactly the size-mu sets meeting part i at least lower[i]
    and at most upper[i] times.  Empty parts are tolerated (their lower
    bound must be 0); they do not affect the rank.
    """

    parts: tuple
    lower: tuple
    upper: tuple
    size: int


def make_gen_partition(spec: GenPartitionSpec) -> RankOracle:
    """The generalized partition matroid of a feasible spec.

    rank(Z) = min( sum_i min(upper_i, |Z n S_i|),
                   mu - sum_i max(lower_i - |Z n S_i|, 0) ).
    """
    parts = tuple(frozenset(p) for p in spec.parts)
    if not (len(parts) == len(spec.lower) == len(spec.upper)):
        raise ValueError("parts, lower and upper must have equal length")
    ground: set = set()
    for i, p in enumerate(parts):
        if p & ground:
            raise ValueError(f"part {i} overlaps an earlier part")
        ground |= p
    mu = spec.size
    if mu < 0 or any(a < 0 for a in spec.lower) or any(b < 0 for b in spec.upper):
        raise ValueError("bounds and size must be non-negative")
    for i, p in enumerate(parts):
        cap = min(spec.upper[i], len(p))
        if spec.lower[i] > cap:
            raise ValueError(
                f"infeasible part {i}: lower bound {spec.lower[i]} exceeds "
                f"min(upper, part size) = {cap}"
            )
    lo_sum = sum(spec.lower)
    hi_sum = sum(min(b, len(p)) for b, p in zip(spec.upper, parts))
    if not lo_sum <= mu:
        raise ValueError(
            f"infeasible size: sum of lower bounds {lo_sum} exceeds size {mu}"
        )
    if not mu <= hi_sum:
        raise ValueError(
            f"infeasible size: size {mu} exceeds sum of capped upper bounds {hi_sum}"
        )
    part_masks = tuple(_mask(p) for p in parts)
    lower, upper = spec.lower, spec.upper

    def rank_of_mask(mm: int) -> int:
        take = 0
        slack = 0
        for pm, a, b in zip(part_masks, lower, upper):
            c = (mm & pm).bit_count()
            take += min(b, c)
            if a > c:
                slack += a - c
        return min(take, mu - slack)

    return RankOracle(ground, rank_of_mask, name="gen-partition")


# matroid intersection ------------------------------------------------------


@dataclass(frozen=True)
class Deficiency:
    """Witness that no common independent set of the requested size exists:
    r1(certificate) + r2(ground - certificate) < size."""

    certificate: frozenset


def matroid_intersection(m1: RankOracle, m2: RankOracle, size: int):
    """A common independent set of the given size, or a Deficiency.

    Augmenting-path search over the exchange graph: from each current
    common independent set I, arcs x->y (x in I, y outside) when I-x+y
    stays independent in the first matroid and y->x when it stays
    independent in the second; sources are the elements addable to I in
    the first matroid, sinks those addable in the second.  Shortest
    augmenting paths, found by BFS over elements in ascending id order,
    keep the procedure correct and deterministic.
    """
    if m1.ground != m2.ground:
        raise ValueError("matroid intersection needs a common ground set")
    if size <= 0:
        return frozenset()
    elems = sorted(m1.ground)
    imask = 0
    while imask.bit_count() < size:
        found = _augment(m1, m2, elems, imask)
        if isinstance(found, int):
            imask = found
            continue
        reachable = found
        noreach = [e for e in elems if e not in reachable]
        zmask = _mask(noreach)
        rest = m1.ground_mask & ~zmask
        if m1.rank_mask(zmask) + m2.rank_mask(rest) >= size:
            raise InternalInconsistency(
                "exchange graph exhausted but no deficiency certificate emerged"
            )
        for e in sorted(noreach):
            cand = zmask & ~(1 << e)
            if m1.rank_mask(cand) + m2.rank_mask(m1.ground_mask & ~cand) < size:
                zmask = cand
        return Deficiency(frozenset(elems_of(zmask)))
    return frozenset(elems_of(imask))


def _augment(m1: RankOracle, m2: RankOracle, elems, imask: int):
    """One augmentation step: the improved set mask, or the set of elements
    reachable from the sources when no augmenting path exists."""
    in_i = {e: bool(imask >> e & 1) for e in elems}
    sources = [e for e in elems if not in_i[e] and m1.independent_mask(imask | 1 << e)]
    sinks = {e for e in elems if not in_i[e] and m2.independent_mask(imask | 1 << e)}

    parent: dict = {e: None for e in sources}
    queue = list(sources)
    qi = 0
    goal = None
    while qi < len(queue):
        cur = queue[qi]
        qi += 1
        if cur in sinks and not in_i[cur]:
            goal = cur
            break
        if in_i[cur]:
            # arcs x -> y: swapping y for x keeps the first matroid happy
            swap = imask & ~(1 << cur)
            nxt = [
                y
                for y in elems
                if not in_i[y] and y not in parent
                and m1.independent_mask(swap | 1 << y)
            ]
        else:
            # arcs y -> x: swapping y for x keeps the second matroid happy
            base = imask | 1 << cur
            nxt = [
                x
                for x in elems
                if in_i[x] and x not in parent
                and m2.independent_mask(base & ~(1 << x))
            ]
        for e in nxt:
            parent[e] = cur
            queue.append(e)
    if goal is None:
        return set(parent)
    newmask = imask
    node = goal
    while node is not None:
        newmask ^= 1 << node
        node = parent[node]
    return newmask
