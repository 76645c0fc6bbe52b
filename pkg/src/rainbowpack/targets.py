"""Exact solvers for the digraph decomposition and parity packing problems."""

from __future__ import annotations

import itertools

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow

from .errors import InstanceError, SizeError
from .graphs import ArcPartition, Digraph, DisjointSet, PairedGraph, TreePacking, component_count
from .search import ArcDecompositionSearch, TreePackingSearch

__all__ = [
    "BRUTE_FORCE_ARC_CAP",
    "decompose_digraph",
    "brute_force_decompose",
    "pack_parity_trees",
    "brute_force_parity_pack",
    "rooted_arc_connectivity",
    "is_rooted_k_edge_connected",
]

#: Largest arc/edge count accepted by the exhaustive oracles.
BRUTE_FORCE_ARC_CAP = 16


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first, *rest)


def decompose_digraph(d: Digraph, k: int, budget: int | None = None, stats: dict | None = None,
                      check_indegree: bool = True) -> ArcPartition | None:
    """Partition the arcs into k weakly connected spanning parts, each entering every non-root vertex.

    Identical arcs (same tail and head, loops included) are decided as one
    group by how many of them each part receives.  Raises
    :class:`InstanceError` when the root/in-degree conditions fail and
    :class:`SearchBudgetExceeded` when the budget runs out.
    """
    if k < 0:
        raise InstanceError("k must be non-negative")
    if k == 0:
        return ArcPartition(())
    if check_indegree:
        problem = d.indegree_problem(k)
        if problem is not None:
            raise InstanceError(problem)
    n = d.vertex_count
    if n == 1:
        return ArcPartition([range(d.arc_count)] + [()] * (k - 1))
    if component_count(n, d.arcs) > 1:
        return None
    groups: dict[tuple[int, int], list[int]] = {}
    for a, arc in enumerate(d.arcs):
        groups.setdefault(arc, []).append(a)
    items = list(groups.values())
    placements = []
    for members in items:
        ps = []
        for counts in _compositions(len(members), k):
            ps.append(tuple(j for j, c in enumerate(counts) for _ in range(c)))
        placements.append(ps)
    indeg = d.in_degrees()
    priority = [(indeg[d.arcs[members[0]][1]], members[0]) for members in items]
    search = ArcDecompositionSearch(d, k, items, placements, priority=priority, budget=budget, probing=True)
    try:
        final = search.solve()
    finally:
        if stats is not None:
            stats["nodes"] = search.nodes
    if final is None:
        return None
    where = search.element_parts(final)
    return ArcPartition([sorted(a for a, j in where.items() if j == part) for part in range(k)])


def _valid_arc_masks(d: Digraph) -> np.ndarray:
    """Boolean table over all arc subsets: weakly connected, spanning, in-degree >= 1 off the root."""
    m, n = d.arc_count, d.vertex_count
    masks = np.arange(1 << m, dtype=np.int64)
    ok = np.ones(1 << m, dtype=bool)
    for v, arcs in enumerate(d.in_arcs()):
        if v == d.root:
            continue
        need = 0
        for a in arcs:
            need |= 1 << a
        ok &= (masks & need) != 0
    reach = np.full(1 << m, 1 << d.root, dtype=np.int64)
    full = (1 << n) - 1
    for _ in range(n):
        for a, (t, h) in enumerate(d.arcs):
            if t == h:
                continue
            ends = (1 << t) | (1 << h)
            has = ((masks >> a) & 1).astype(bool) & ((reach & ends) != 0)
            reach = np.where(has, reach | ends, reach)
    return ok & (reach == full)


def brute_force_decompose(d: Digraph, k: int, cap: int = BRUTE_FORCE_ARC_CAP) -> ArcPartition | None:
    """Exhaustive oracle: tabulate every valid arc subset, then look for k disjoint ones.

    Valid subsets are closed under adding arcs, so k disjoint valid subsets
    exist iff a partition into k valid parts does; leftover arcs join part 0.
    """
    if d.arc_count > cap:
        raise SizeError(f"{d.arc_count} arcs exceeds brute-force cap {cap}")
    if k < 0:
        raise InstanceError("k must be non-negative")
    if k == 0:
        return ArcPartition(())
    m = d.arc_count
    full = (1 << m) - 1
    valid = _valid_arc_masks(d)

    def split(rest, parts):
        if parts == 1:
            return [rest] if valid[rest] else None
        # the lowest remaining arc goes to the first part of this split
        low = rest & -rest
        others = rest ^ low
        sub = others
        while True:
            first = sub | low
            if valid[first]:
                tail = split(rest ^ first, parts - 1)
                if tail is not None:
                    return [first] + tail
            if sub == 0:
                break
            sub = (sub - 1) & others
        return None

    if m == 0:
        chosen = [0] * k if valid[0] else None
    else:
        chosen = split(full, k)
    if chosen is None:
        return None
    return ArcPartition([[a for a in range(m) if mask >> a & 1] for mask in chosen])


def pack_parity_trees(g: PairedGraph, k: int, budget: int | None = None,
                      stats: dict | None = None) -> TreePacking | None:
    """k pairwise disjoint spanning trees, each a union of whole pairs, or ``None``.

    Each pair is decided as a unit: wholly in one tree, or unused when there
    are spare edges.
    """
    if k < 0:
        raise InstanceError("k must be non-negative")
    n, m = g.vertex_count, g.edge_count
    if k == 0:
        return TreePacking(())
    if n == 1:
        return TreePacking([()] * k)
    if (n - 1) % 2 or k * (n - 1) > m or component_count(n, g.edges) > 1:
        return None
    items = g.pair_members()
    options = [(j, j) for j in range(k)]
    if m > k * (n - 1):
        options.append((-1, -1))
    placements = [options] * len(items)
    search = TreePackingSearch(n, g.edges, k, items, placements, budget=budget, probing=True)
    try:
        final = search.solve()
    finally:
        if stats is not None:
            stats["nodes"] = search.nodes
    if final is None:
        return None
    where = search.element_parts(final)
    return TreePacking([sorted(e for e, j in where.items() if j == part) for part in range(k)])


def brute_force_parity_pack(g: PairedGraph, k: int, cap: int = BRUTE_FORCE_ARC_CAP) -> TreePacking | None:
    """Exhaustive oracle: enumerate every parity spanning tree, then every k-family of them."""
    if g.edge_count > cap:
        raise SizeError(f"{g.edge_count} edges exceeds brute-force cap {cap}")
    if k < 0:
        raise InstanceError("k must be non-negative")
    n = g.vertex_count
    if k == 0:
        return TreePacking(())
    if n == 1:
        return TreePacking([()] * k)
    if (n - 1) % 2:
        return None
    members = g.pair_members()
    trees = []
    for combo in itertools.combinations(range(len(members)), (n - 1) // 2):
        edges = [e for p in combo for e in members[p]]
        ds = DisjointSet(n)
        if all(ds.union(*g.edges[e]) for e in edges):
            trees.append(sum(1 << e for e in edges))
    chosen = []

    def rec(start, used):
        if len(chosen) == k:
            return True
        for i in range(start, len(trees)):
            if not trees[i] & used:
                chosen.append(trees[i])
                if rec(i + 1, used | trees[i]):
                    return True
                chosen.pop()
        return False

    if not rec(0, 0):
        return None
    return TreePacking([[e for e in range(g.edge_count) if mask >> e & 1] for mask in chosen])


def rooted_arc_connectivity(d: Digraph) -> list[int | None]:
    """Max number of arc-disjoint root-to-v paths for every v (``None`` at the root).

    Unit capacity per arc, parallel arcs add up, loops are ignored.
    """
    n = d.vertex_count
    tails = [t for t, h in d.arcs if t != h]
    heads = [h for t, h in d.arcs if t != h]
    cap = csr_matrix((np.ones(len(tails), dtype=np.int32), (tails, heads)), shape=(n, n))
    cap.sum_duplicates()
    out: list[int | None] = []
    for v in range(n):
        if v == d.root:
            out.append(None)
        else:
            out.append(int(maximum_flow(cap, d.root, v).flow_value))
    return out


def is_rooted_k_edge_connected(d: Digraph, k: int) -> bool:
    return all(c is None or c >= k for c in rooted_arc_connectivity(d))
