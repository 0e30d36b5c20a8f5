"""Problem specifications, feasibility conditions, and violation certificates.

Every packing theorem in scope characterizes feasibility through a short
list of numbered conditions: pointwise bounds at vertices, scalar budget
comparisons, one subset-quantified inequality, and partition-quantified
inequalities.  `check` evaluates them in the theorem's order and returns
the first failure as a machine-checkable Violation; `violation_deficit`
re-evaluates a certificate independently so tests and the CLI can
confirm that a reported witness really fails by the reported amount.

Partition-quantified conditions are evaluated by full enumeration,
finest partition first, with early exit; the witness partition is the
first violating one in that order, which makes certificates
deterministic.  The two supermodular partition functions behind the
hypergraph theorems,

    p1(P) = -g(V) + sum over blocks X of max over Y <= X of
            (rank_M(S) + g(Y) - rank_M(S_Y)),
    p2(P) = -beta + sum over blocks X of max over Y <= X of
            (rank_M(S) + f(Y) - rank_M(S_Y)),

are exposed as `eval_p1` / `eval_p2` with the per-block maximization in
`inner_max`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .caps import CapExceeded, MAX_SUBSET_SCAN
from .hypergraph import Hypergraph, RootMultiset
from .matroids import RankOracle
from .partitions import Partition, blocks_from_labels, rgs_strings

KINDS = ("spanning", "mbased", "bounded", "limited", "limited-hyper", "augment")

# Kinds whose packing members live in a plain graph.
GRAPH_KINDS = ("spanning", "mbased", "bounded", "limited")


@dataclass(frozen=True)
class ProblemSpec:
    """Everything a packing problem needs: the instance, root placements,
    the matroid over root tokens, per-vertex root bounds f <= g (g entry
    None meaning unbounded), total-root bounds alpha/beta, an exact tree
    count k, and an augmentation budget gamma.  Unused fields stay None.
    """

    instance: Hypergraph
    roots: RootMultiset = field(default_factory=lambda: RootMultiset(()))
    matroid: RankOracle | None = None
    f: tuple = ()
    g: tuple = ()
    alpha: int | None = None
    beta: int | None = None
    k: int | None = None
    gamma: int | None = None

    def __post_init__(self):
        n = self.instance.n
        if self.matroid is None:
            object.__setattr__(self, "matroid", _free_on(self.roots))
        if not self.f:
            object.__setattr__(self, "f", (0,) * n)
        if not self.g:
            object.__setattr__(self, "g", (None,) * n)
        if len(self.f) != n or len(self.g) != n:
            raise ValueError("f and g must assign a bound to every vertex")
        if any(x < 0 for x in self.f):
            raise ValueError("f must be non-negative")
        if any(x is not None and x < 0 for x in self.g):
            raise ValueError("g must be non-negative")
        for name in ("alpha", "beta", "k", "gamma"):
            val = getattr(self, name)
            if val is not None and val < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.roots.max_vertex() >= n:
            raise ValueError("a root is placed outside the vertex set")
        if self.matroid.ground != frozenset(self.roots.tokens):
            raise ValueError("matroid ground set must equal the root tokens")

    @property
    def n(self) -> int:
        return self.instance.n

    @property
    def rank_s(self) -> int:
        return self.matroid.full_rank

    def g_sentinel(self) -> int:
        """Integer stand-in for an unbounded g entry: strictly larger than
        any count of trees through a vertex, so comparisons stay exact."""
        return self.rank_s * self.n + 1

    def g_val(self, v: int) -> int:
        gv = self.g[v]
        return self.g_sentinel() if gv is None else gv

    def g_total(self) -> int:
        return sum(self.g_val(v) for v in range(self.n))

    def root_cap(self, v: int) -> int:
        """min(rank of the tokens at v, g(v)): the most trees v can root."""
        return min(self.matroid.rank(self.roots.at_vertex(v)), self.g_val(v))


def _free_on(roots: RootMultiset) -> RankOracle:
    from .matroids import free_matroid

    return free_matroid(roots.tokens)


@dataclass(frozen=True)
class Violation:
    """A failed feasibility condition with a re-checkable witness.

    `witness` is a vertex id, a frozenset of vertices, a Partition, or
    None for purely scalar conditions; `deficit` is the positive amount
    by which the cited inequality fails at the witness.
    """

    condition: str
    witness: object
    deficit: int

    def __post_init__(self):
        if self.deficit <= 0:
            raise ValueError("a violation must have a positive deficit")


# per-block maximization -----------------------------------------------------


def inner_max(X: Iterable[int], spec: ProblemSpec, mode: str) -> tuple:
    """max over Y <= X of rank_M(S) + h(Y) - rank_M(S_Y) with h = g or f.

    Returns (value, maximizer); ties resolve to the lexicographically
    smallest Y as a sorted vertex tuple.  Y = empty always contributes
    rank_M(S), so the value is at least that.
    """
    xs = sorted(set(X))
    if len(xs) > MAX_SUBSET_SCAN:
        raise CapExceeded(f"inner maximization over 2^{len(xs)} subsets refused")
    if mode not in ("f", "g"):
        raise ValueError("mode must be 'f' or 'g'")
    h = spec.f if mode == "f" else tuple(spec.g_val(v) for v in range(spec.n))
    rs = spec.rank_s
    rank = spec.matroid.rank
    tokens_at = spec.roots.tokens_at
    best = None
    best_y: tuple = ()
    for msk in range(1 << len(xs)):
        y = tuple(xs[i] for i in range(len(xs)) if msk >> i & 1)
        val = rs + sum(h[v] for v in y) - rank(tokens_at(y))
        if best is None or val > best or (val == best and y < best_y):
            best = val
            best_y = y
    return best, frozenset(best_y)


def eval_p1(p: Partition, spec: ProblemSpec) -> int:
    """First supermodular partition function (upper bounds g)."""
    return -spec.g_total() + sum(inner_max(x, spec, "g")[0] for x in p.blocks)


def eval_p2(p: Partition, spec: ProblemSpec, budget: int | None = None) -> int:
    """Second supermodular partition function (lower bounds f against a
    total-root budget, by default beta)."""
    b = spec.beta if budget is None else budget
    if b is None:
        raise ValueError("eval_p2 needs a total-root budget (beta or explicit)")
    return -b + sum(inner_max(x, spec, "f")[0] for x in p.blocks)


# condition evaluators --------------------------------------------------------
#
# Each condition appears twice: a scan producing the first Violation, and a
# point evaluator recomputing the deficit at a given witness.  The scans
# stream partitions finest-first and stop at the first failure.


def _scan_vertices(spec: ProblemSpec, cond: str, deficit_at) -> Violation | None:
    for v in range(spec.n):
        d = deficit_at(spec, v)
        if d > 0:
            return Violation(cond, v, d)
    return None


def _scan_scalar(spec: ProblemSpec, cond: str, deficit_at) -> Violation | None:
    d = deficit_at(spec, None)
    if d > 0:
        return Violation(cond, None, d)
    return None


def _scan_subsets(spec: ProblemSpec, cond: str, deficit_at) -> Violation | None:
    for msk in range(1 << spec.n):
        y = frozenset(v for v in range(spec.n) if msk >> v & 1)
        d = deficit_at(spec, y)
        if d > 0:
            return Violation(cond, y, d)
    return None


def _scan_partitions(spec: ProblemSpec, cond: str, deficit_at) -> Violation | None:
    for labels in rgs_strings(spec.n):
        p = Partition.from_labels(labels)
        d = deficit_at(spec, p)
        if d > 0:
            return Violation(cond, p, d)
    return None


def _d_root_independence(spec: ProblemSpec, v: int) -> int:
    at_v = spec.roots.at_vertex(v)
    return len(at_v) - spec.matroid.rank(at_v)


def _d_pointwise(spec: ProblemSpec, v: int) -> int:
    return spec.f[v] - spec.root_cap(v)


def _d_tree_count(spec: ProblemSpec, _w) -> int:
    return spec.k - sum(spec.root_cap(v) for v in range(spec.n))


def _d_limit_order(spec: ProblemSpec, _w) -> int:
    return spec.alpha - spec.beta


def _d_limit_lower(spec: ProblemSpec, _w) -> int:
    return spec.alpha - sum(spec.root_cap(v) for v in range(spec.n))


def _d_subset_budget(spec: ProblemSpec, y: frozenset) -> int:
    rs = spec.rank_s
    need = rs - spec.matroid.rank(spec.roots.tokens_at(y))
    comp = [v for v in range(spec.n) if v not in y]
    allowed = min(
        spec.beta - sum(spec.f[v] for v in y),
        sum(spec.g_val(v) for v in comp),
    )
    return need - allowed


def _d_nw_partition(spec: ProblemSpec, p: Partition) -> int:
    return spec.k * (len(p) - 1) - spec.instance.crossing_count(p)


def _d_mbased_partition(spec: ProblemSpec, p: Partition) -> int:
    rs = spec.rank_s
    rhs = sum(rs - spec.matroid.rank(spec.roots.tokens_at(x)) for x in p.blocks)
    return rhs - spec.instance.crossing_count(p)


def _d_partition_g(spec: ProblemSpec, p: Partition) -> int:
    rhs = sum(
        inner_max(x, spec, "g")[0] - sum(spec.g_val(v) for v in x) for x in p.blocks
    )
    return rhs - spec.instance.crossing_count(p)


def _d_partition_f_k(spec: ProblemSpec, p: Partition) -> int:
    rhs = sum(inner_max(x, spec, "f")[0] for x in p.blocks)
    return rhs - spec.instance.crossing_count(p) - spec.k


def _d_partition_f_beta(spec: ProblemSpec, p: Partition) -> int:
    rhs = sum(inner_max(x, spec, "f")[0] for x in p.blocks)
    return rhs - spec.instance.crossing_count(p) - spec.beta


def _d_partition_g_aug(spec: ProblemSpec, p: Partition) -> int:
    rhs = sum(inner_max(x, spec, "g")[0] for x in p.blocks)
    return rhs - spec.instance.crossing_count(p) - spec.gamma - spec.g_total()


def _d_partition_f_aug(spec: ProblemSpec, p: Partition) -> int:
    rhs = sum(inner_max(x, spec, "f")[0] for x in p.blocks)
    return rhs - spec.instance.crossing_count(p) - spec.gamma - spec.beta


_CONDITIONS = {
    "root-independence": (_scan_vertices, _d_root_independence),
    "pointwise-bound": (_scan_vertices, _d_pointwise),
    "tree-count": (_scan_scalar, _d_tree_count),
    "limit-order": (_scan_scalar, _d_limit_order),
    "limit-lower": (_scan_scalar, _d_limit_lower),
    "subset-budget": (_scan_subsets, _d_subset_budget),
    "nw-partition": (_scan_partitions, _d_nw_partition),
    "mbased-partition": (_scan_partitions, _d_mbased_partition),
    "partition-g": (_scan_partitions, _d_partition_g),
    "partition-f-k": (_scan_partitions, _d_partition_f_k),
    "partition-f-beta": (_scan_partitions, _d_partition_f_beta),
    "partition-g-aug": (_scan_partitions, _d_partition_g_aug),
    "partition-f-aug": (_scan_partitions, _d_partition_f_aug),
}

_KIND_CONDITIONS = {
    "spanning": ("nw-partition",),
    "mbased": ("root-independence", "mbased-partition"),
    "bounded": ("pointwise-bound", "tree-count", "partition-g", "partition-f-k"),
    "limited": (
        "pointwise-bound",
        "partition-g",
        "limit-order",
        "limit-lower",
        "partition-f-beta",
    ),
    "limited-hyper": (
        "pointwise-bound",
        "limit-order",
        "limit-lower",
        "partition-g",
        "partition-f-beta",
    ),
    "augment": (
        "pointwise-bound",
        "limit-order",
        "limit-lower",
        "subset-budget",
        "partition-g-aug",
        "partition-f-aug",
    ),
}

_KIND_NEEDS = {
    "spanning": ("k",),
    "mbased": (),
    "bounded": ("k",),
    "limited": ("alpha", "beta"),
    "limited-hyper": ("alpha", "beta"),
    "augment": ("alpha", "beta", "gamma"),
}


def _validate_kind(spec: ProblemSpec, kind: str) -> None:
    if kind not in KINDS:
        raise ValueError(f"unknown problem kind {kind!r}")
    for name in _KIND_NEEDS[kind]:
        if getattr(spec, name) is None:
            raise ValueError(f"problem kind {kind!r} needs {name} to be set")
    if kind in GRAPH_KINDS and not spec.instance.is_graph:
        raise ValueError(f"problem kind {kind!r} is defined over graphs only")


def check(spec: ProblemSpec, kind: str) -> Violation | None:
    """Evaluate the feasibility conditions of the given problem kind.

    Returns None when every condition holds, otherwise the first violated
    condition (theorem order; partitions scanned finest-first) with its
    witness and deficit.
    """
    _validate_kind(spec, kind)
    for cond in _KIND_CONDITIONS[kind]:
        scan, deficit_at = _CONDITIONS[cond]
        violation = scan(spec, cond, deficit_at)
        if violation is not None:
            return violation
    return None


def violation_deficit(spec: ProblemSpec, violation: Violation) -> int:
    """Recompute the deficit of a reported violation at its witness."""
    _, deficit_at = _CONDITIONS[violation.condition]
    return deficit_at(spec, violation.witness)


def conditions_for(kind: str) -> tuple:
    """The condition ids checked for a problem kind, in order."""
    if kind not in KINDS:
        raise ValueError(f"unknown problem kind {kind!r}")
    return _KIND_CONDITIONS[kind]
