"""Independent brute-force oracles and validators.

Nothing here reuses a solver code path: existence questions are settled
by exhaustive enumeration over edge assignments, trimming choices and
root selections, and validity by direct re-checking of definitions.  A
disagreement between these oracles and the constructive solvers is a
test failure, never something to reconcile in code.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace
from itertools import combinations, combinations_with_replacement, product
from typing import Callable, Iterable

from .caps import CapExceeded, MAX_AXIOM_GROUND
from .feasibility import ProblemSpec, KINDS
from .hypergraph import Hypergraph, RootMultiset
from .matroids import RankOracle
from .packing import Packing
from .partitions import enumerate_partitions, join, meet

# Hard caps for the exhaustive existence searches.
BRUTE_MAX_VERTICES = 5
BRUTE_MAX_EDGES = 7
BRUTE_MAX_ROOTS = 4

_MAX_FAILURES = 20


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    failures: tuple

    def __bool__(self) -> bool:
        return self.ok


def _report(failures: list) -> ValidationReport:
    return ValidationReport(not failures, tuple(failures))


# packing validation ---------------------------------------------------------


def validate_packing(packing: Packing, spec: ProblemSpec, kind: str) -> ValidationReport:
    """Re-check a packing against the definitions, rule by rule.

    Rules run in a fixed order and all failures are collected: forest
    structure, one root per component, edge-disjointness, roots drawn
    from the placements, the per-vertex basis property, per-vertex f/g
    counts, total-root bounds, and the exact tree count / completeness
    where the kind demands it.  Never raises.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown problem kind {kind!r}")
    hg = spec.instance
    failures: list = []
    comp_records = []  # (member, root vertex, token, component vertex set)

    for mi, mem in enumerate(packing.members):
        bad_structure = False
        for e in mem.edges:
            if not 0 <= e.edge_id < hg.m:
                failures.append(("edge-endpoints", (mi, e.edge_id)))
                bad_structure = True
                continue
            zs = set(hg.edges[e.edge_id])
            if e.u == e.v or e.u not in zs or e.v not in zs:
                failures.append(("edge-endpoints", (mi, e.edge_id)))
                bad_structure = True
        if bad_structure:
            continue
        verts = sorted(mem.vertices())
        parent = {v: v for v in verts}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        acyclic = True
        for e in mem.edges:
            ru, rv = find(e.u), find(e.v)
            if ru == rv:
                failures.append(("forest", (mi, e.edge_id)))
                acyclic = False
                break
            parent[ru] = rv
        if not acyclic:
            continue
        comps: dict = {}
        for v in verts:
            comps.setdefault(find(v), set()).add(v)
        roots_by_comp: dict = {}
        placed_ok = True
        for rv, tok in mem.roots:
            if rv not in parent:
                failures.append(("root-per-component", mi))
                placed_ok = False
                break
            roots_by_comp.setdefault(find(rv), []).append((rv, tok))
        if not placed_ok:
            continue
        if len(roots_by_comp) != len(comps) or any(
            len(rs) != 1 for rs in roots_by_comp.values()
        ):
            failures.append(("root-per-component", mi))
            continue
        for croot, cverts in comps.items():
            rv, tok = roots_by_comp[croot][0]
            comp_records.append((mi, rv, tok, frozenset(cverts)))

    counts = Counter(eid for mem in packing.members for eid in mem.edge_ids())
    for eid in sorted(eid for eid, c in counts.items() if c > 1):
        failures.append(("edge-disjoint", eid))

    matroid_kind = kind != "spanning"
    if matroid_kind:
        valid_tokens = set(spec.roots.tokens)
        used_tokens: list = []
        for mi, mem in enumerate(packing.members):
            for rv, tok in mem.roots:
                if tok is None or tok not in valid_tokens or spec.roots.vertex_of(tok) != rv:
                    failures.append(("root-in-s", tok))
                elif tok in used_tokens:
                    failures.append(("root-in-s", tok))
                else:
                    used_tokens.append(tok)
        rs = spec.rank_s
        for v in range(spec.n):
            toks = [tok for _, _, tok, cverts in comp_records if v in cverts and tok is not None]
            if len(set(toks)) != len(toks) or spec.matroid.rank(toks) != len(toks) or len(toks) != rs:
                failures.append(("vertex-basis", v))
        if kind in ("bounded", "limited", "limited-hyper", "augment"):
            for v in range(spec.n):
                cnt = sum(1 for mem in packing.members for rv, _ in mem.roots if rv == v)
                if cnt < spec.f[v]:
                    failures.append(("root-lower", v))
                if cnt > spec.g_val(v):
                    failures.append(("root-upper", v))
        total = packing.total_roots()
        if kind in ("limited", "limited-hyper", "augment"):
            if spec.alpha is not None and total < spec.alpha:
                failures.append(("total-roots", None))
            if spec.beta is not None and total > spec.beta:
                failures.append(("total-roots", None))
        if kind == "bounded" and spec.k is not None and total != spec.k:
            failures.append(("tree-count", None))
        if kind == "mbased":
            if sorted(used_tokens) != sorted(spec.roots.tokens):
                failures.append(("complete-roots", None))
    else:
        full = frozenset(range(spec.n))
        for mi, mem in enumerate(packing.members):
            if mem.vertices() != full:
                failures.append(("spanning", mi))
        if spec.k is not None and len(packing.members) != spec.k:
            failures.append(("tree-count", None))

    return _report(failures)


# existence by exhaustion -----------------------------------------------------


def _coverage_options(hg: Hypergraph, memo: dict, edge_ids: tuple, root: int | None):
    """All vertex sets coverable by trimming the given hyperedges into one
    tree (containing `root` when given).  Memoized per instance search."""
    key = (edge_ids, root)
    hit = memo.get(key)
    if hit is not None:
        return hit
    out = set()
    if not edge_ids:
        if root is not None:
            out.add(frozenset((root,)))
    else:
        choice_lists = [
            list(combinations(hg.edges[e], 2)) for e in edge_ids
        ]
        for choice in product(*choice_lists):
            verts = {v for pair in choice for v in pair}
            if root is not None:
                verts.add(root)
            if len(choice) != len(verts) - 1:
                continue
            parent = {v: v for v in verts}

            def find(v):
                while parent[v] != v:
                    parent[v] = parent[parent[v]]
                    v = parent[v]
                return v

            ok = True
            for u, v in choice:
                ru, rv = find(u), find(v)
                if ru == rv:
                    ok = False
                    break
                parent[ru] = rv
            if ok:
                out.add(frozenset(verts))
    result = tuple(sorted(out, key=sorted))
    memo[key] = result
    return result


def _check_caps(hg: Hypergraph, n_roots: int) -> None:
    if hg.n > BRUTE_MAX_VERTICES or hg.m > BRUTE_MAX_EDGES or n_roots > BRUTE_MAX_ROOTS:
        raise CapExceeded(
            "brute-force existence search capped at "
            f"{BRUTE_MAX_VERTICES} vertices / {BRUTE_MAX_EDGES} hyperedges / "
            f"{BRUTE_MAX_ROOTS} roots"
        )


def _root_selections(spec: ProblemSpec, kind: str):
    toks = spec.roots.tokens
    if kind == "mbased":
        yield toks
        return
    for r in range(len(toks) + 1):
        for sel in combinations(toks, r):
            total = len(sel)
            if kind == "bounded" and total != spec.k:
                continue
            if kind in ("limited", "limited-hyper") and not (
                spec.alpha <= total <= spec.beta
            ):
                continue
            if kind in ("bounded", "limited", "limited-hyper"):
                ok = True
                for v in range(spec.n):
                    cnt = sum(1 for t in sel if spec.roots.vertex_of(t) == v)
                    if not spec.f[v] <= cnt <= spec.g_val(v):
                        ok = False
                        break
                if not ok:
                    continue
            yield sel


def _basis_everywhere(cover_sets, tokens, matroid: RankOracle, n: int) -> bool:
    rs = matroid.full_rank
    for v in range(n):
        toks = [t for t, w in zip(tokens, cover_sets) if v in w]
        if len(toks) != rs or matroid.rank(toks) != rs:
            return False
    return True


def brute_exists_packing(spec: ProblemSpec, kind: str) -> bool:
    """Ground truth for every feasibility theorem: try all hyperedge
    assignments, trimming choices and root selections."""
    if kind not in KINDS or kind == "augment":
        raise ValueError(f"brute existence search does not handle kind {kind!r}")
    hg = spec.instance
    _check_caps(hg, len(spec.roots))
    n, m = hg.n, hg.m
    memo: dict = {}

    if kind == "spanning":
        k = spec.k
        if k == 0:
            return True
        if n <= 1:
            return True
        full = frozenset(range(n))
        for assign in product(range(k + 1), repeat=m):
            ok = True
            for t in range(1, k + 1):
                ids = tuple(i for i in range(m) if assign[i] == t)
                if full not in _coverage_options(hg, memo, ids, None):
                    ok = False
                    break
            if ok:
                return True
        return False

    for sel in _root_selections(spec, kind):
        trees = tuple(sorted(sel))
        root_vs = tuple(spec.roots.vertex_of(t) for t in trees)
        for assign in product(range(len(trees) + 1), repeat=m):
            options = []
            feasible = True
            for ti in range(len(trees)):
                ids = tuple(i for i in range(m) if assign[i] == ti + 1)
                covs = _coverage_options(hg, memo, ids, root_vs[ti])
                if not covs:
                    feasible = False
                    break
                options.append(covs)
            if not feasible:
                continue
            for combo in product(*options):
                if _basis_everywhere(combo, trees, spec.matroid, n):
                    return True
    return False


def brute_exists_mbased(
    graph: Hypergraph,
    roots: RootMultiset,
    matroid: RankOracle,
    edge_ids: Iterable[int],
    tokens: Iterable[int],
) -> bool:
    """Existence of a matroid-based packing using exactly the given edge
    set and exactly the given root tokens."""
    _check_caps(graph, len(roots))
    f_ids = tuple(sorted(edge_ids))
    trees = tuple(sorted(tokens))
    if not trees:
        return not f_ids and matroid.full_rank == 0
    root_vs = tuple(roots.vertex_of(t) for t in trees)
    memo: dict = {}
    for assign in product(range(len(trees)), repeat=len(f_ids)):
        options = []
        feasible = True
        for ti in range(len(trees)):
            ids = tuple(f_ids[j] for j in range(len(f_ids)) if assign[j] == ti)
            covs = _coverage_options(graph, memo, ids, root_vs[ti])
            if not covs:
                feasible = False
                break
            options.append(covs)
        if not feasible:
            continue
        for combo in product(*options):
            if _basis_everywhere(combo, trees, matroid, graph.n):
                return True
    return False


def brute_min_augmentation(
    spec: ProblemSpec, kind: str = "limited-hyper", max_edges: int = 12
) -> int | None:
    """Minimum number of added edges (any multiset of vertex pairs) after
    which the packing exists; None if max_edges additions do not suffice."""
    if spec.n > 4:
        raise CapExceeded("brute augmentation search capped at 4 vertices")
    pairs = list(combinations(range(spec.n), 2))
    for count in range(max_edges + 1):
        for extra in combinations_with_replacement(pairs, count):
            grown = replace(spec, instance=spec.instance.with_edges(extra))
            if brute_exists_packing(grown, kind):
                return count
    return None


# axiom and supermodularity verification --------------------------------------


def verify_matroid_axioms(
    oracle, ground: Iterable[int] | None = None
) -> ValidationReport:
    """Check non-negativity, integrality, monotonicity, subcardinality and
    submodularity over all subset pairs of the ground set."""
    if isinstance(oracle, RankOracle):
        elems = sorted(oracle.ground)
        rank_mask = oracle.rank_mask
    else:
        if ground is None:
            raise ValueError("a raw rank function needs an explicit ground set")
        elems = sorted(ground)
        fn: Callable = oracle

        def rank_mask(mm: int) -> int:
            return fn(frozenset(e for e in elems if mm >> _pos[e] & 1))

    _pos = {e: i for i, e in enumerate(elems)}
    k = len(elems)
    if k > MAX_AXIOM_GROUND:
        raise CapExceeded(f"axiom verification capped at {MAX_AXIOM_GROUND} elements")

    if isinstance(oracle, RankOracle):
        def mask_of(mm: int) -> int:
            return sum(1 << elems[i] for i in range(k) if mm >> i & 1)
    else:
        def mask_of(mm: int) -> int:
            return mm

    failures: list = []
    ranks = {}
    for mm in range(1 << k):
        r = rank_mask(mask_of(mm))
        ranks[mm] = r
        if not isinstance(r, int):
            failures.append(("rank-integer", _set_of(mm, elems)))
        elif r < 0:
            failures.append(("rank-negative", _set_of(mm, elems)))
        elif r > mm.bit_count():
            failures.append(("subcardinal", _set_of(mm, elems)))
        if len(failures) >= _MAX_FAILURES:
            return _report(failures)
    for mm in range(1 << k):
        for i in range(k):
            if not mm >> i & 1:
                if ranks[mm] > ranks[mm | 1 << i]:
                    failures.append(
                        ("rank-decreasing", (_set_of(mm, elems), elems[i]))
                    )
                    if len(failures) >= _MAX_FAILURES:
                        return _report(failures)
    for a in range(1 << k):
        ra = ranks[a]
        for b in range(a, 1 << k):
            if ra + ranks[b] < ranks[a & b] + ranks[a | b]:
                failures.append(
                    ("submodular", (_set_of(a, elems), _set_of(b, elems)))
                )
                if len(failures) >= _MAX_FAILURES:
                    return _report(failures)
    return _report(failures)


def _set_of(mm: int, elems) -> frozenset:
    return frozenset(elems[i] for i in range(len(elems)) if mm >> i & 1)


def verify_partition_supermodular(p: Callable, n: int) -> ValidationReport:
    """Check p(P1) + p(P2) <= p(meet) + p(join) over all ordered pairs of
    partitions of an n-set."""
    if n > 5:
        raise CapExceeded("supermodularity verification capped at 5 vertices")
    parts = list(enumerate_partitions(n))
    values = {q: p(q) for q in parts}
    failures: list = []
    for p1 in parts:
        for p2 in parts:
            lhs = values[p1] + values[p2]
            rhs = values[meet(p1, p2)] + values[join(p1, p2)]
            if lhs > rhs:
                failures.append(("supermodular", (p1, p2)))
                if len(failures) >= _MAX_FAILURES:
                    return _report(failures)
    return _report(failures)
