"""Rainbow spanning trees: one tree by matroid intersection, k trees by exact search."""

from __future__ import annotations

import itertools
from typing import Iterator

from .errors import InstanceError, SizeError
from .graphs import DisjointSet, EdgeColoredGraph, TreePacking, component_count
from .matroid import max_common_independent
from .search import TreePackingSearch

__all__ = [
    "PARTITION_CAP",
    "BRUTE_FORCE_EDGE_CAP",
    "find_rainbow_spanning_tree",
    "set_partitions",
    "partition_criterion_witness",
    "pack_rainbow_trees",
    "brute_force_pack",
    "rainbow_trees",
]

#: Largest vertex count for the Bell-number partition enumeration.
PARTITION_CAP = 9
#: Largest edge count for the exhaustive packing oracle.
BRUTE_FORCE_EDGE_CAP = 16


def find_rainbow_spanning_tree(g: EdgeColoredGraph) -> TreePacking | None:
    """A rainbow spanning tree as a one-part packing, or ``None`` if there is none."""
    n = g.vertex_count
    if component_count(n, g.edges) > 1:
        return None
    common = max_common_independent(g.graphic_matroid(), g.color_matroid())
    if len(common) < n - 1:
        return None
    return TreePacking((common,))


def set_partitions(n: int) -> Iterator[list[int]]:
    """All partitions of ``0..n-1`` as restricted-growth label lists."""
    if n == 0:
        yield []
        return
    labels = [0] * n

    def rec(i, top):
        if i == n:
            yield list(labels)
            return
        for b in range(top + 2):
            labels[i] = b
            yield from rec(i + 1, max(top, b))

    labels[0] = 0
    yield from rec(1, 0)


def partition_criterion_witness(g: EdgeColoredGraph, cap: int = PARTITION_CAP) -> list[list[int]] | None:
    """A vertex partition whose crossing edges use fewer than ``|P| - 1`` colors, or ``None``."""
    n = g.vertex_count
    if n > cap:
        raise SizeError(f"{n} vertices exceeds partition enumeration cap {cap}")
    for labels in set_partitions(n):
        blocks = max(labels) + 1
        if blocks < 2:
            continue
        crossing = {g.colors[e] for e, (u, v) in enumerate(g.edges) if labels[u] != labels[v]}
        if len(crossing) < blocks - 1:
            return [[v for v in range(n) if labels[v] == b] for b in range(blocks)]
    return None


def _class_priority(g, classes):
    # fail-first: classes whose edges share an endpoint come first, then by id
    def shares(cls):
        ends = [set(g.edges[e]) for e in cls]
        return any(ends[a] & ends[b] for a in range(len(ends)) for b in range(a + 1, len(ends)))

    return [(0 if shares(cls) else 1, c) for c, cls in enumerate(classes)]


def pack_rainbow_trees(g: EdgeColoredGraph, k: int, budget: int | None = None,
                       stats: dict | None = None) -> TreePacking | None:
    """k pairwise disjoint rainbow spanning trees, or ``None`` when none exist.

    When every edge must be used (``|E| = k(|V| - 1)``) each color class has
    to be spread over distinct trees, so the search decides one class at a
    time (for k = 2 and classes of size 2: which edge joins the first tree).
    Otherwise it decides one edge at a time, allowing "unused".

    Raises :class:`SearchBudgetExceeded` if the node budget runs out.
    """
    if k < 0:
        raise InstanceError("k must be non-negative")
    n, m = g.vertex_count, g.edge_count
    if k == 0:
        return TreePacking(())
    if n == 1:
        return TreePacking([()] * k)
    if k * (n - 1) > m or component_count(n, g.edges) > 1:
        return None
    classes = g.color_classes()
    if len(classes) < n - 1:
        return None
    if m == k * (n - 1):
        if any(len(cls) > k for cls in classes):
            return None
        items = classes
        placements = [list(itertools.permutations(range(k), len(cls))) for cls in classes]
        priority = _class_priority(g, classes)
    else:
        items = [(e,) for e in range(m)]
        placements = [[(j,) for j in range(k)] + [(-1,)] for _ in range(m)]
        cls_rank = dict(zip(range(len(classes)), _class_priority(g, classes)))
        priority = [(cls_rank[g.colors[e]], e) for e in range(m)]
    search = TreePackingSearch(n, g.edges, k, items, placements, colors=g.colors,
                               priority=priority, budget=budget, probing=True)
    try:
        final = search.solve()
    finally:
        if stats is not None:
            stats["nodes"] = search.nodes
    if final is None:
        return None
    where = search.element_parts(final)
    return TreePacking([sorted(e for e, j in where.items() if j == part) for part in range(k)])


def rainbow_trees(g: EdgeColoredGraph) -> list[int]:
    """Every rainbow spanning tree as an edge bitmask (exhaustive)."""
    n = g.vertex_count
    out = []
    for combo in itertools.combinations(range(g.edge_count), n - 1):
        if len({g.colors[e] for e in combo}) != n - 1:
            continue
        ds = DisjointSet(n)
        if all(ds.union(*g.edges[e]) for e in combo):
            mask = 0
            for e in combo:
                mask |= 1 << e
            out.append(mask)
    return out


def _disjoint_choice(masks: list[int], k: int) -> list[int] | None:
    """k pairwise disjoint masks from ``masks`` (in increasing index order), or ``None``."""
    def rec(start, used, chosen):
        if len(chosen) == k:
            return list(chosen)
        for i in range(start, len(masks)):
            if not masks[i] & used:
                chosen.append(masks[i])
                found = rec(i + 1, used | masks[i], chosen)
                if found:
                    return found
                chosen.pop()
        return None

    return rec(0, 0, [])


def _mask_ids(mask):
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def brute_force_pack(g: EdgeColoredGraph, k: int, cap: int = BRUTE_FORCE_EDGE_CAP) -> TreePacking | None:
    """Exhaustive oracle: enumerate every rainbow spanning tree, then every k-family of them.

    Independent of :func:`pack_rainbow_trees` (no propagation, no symmetry
    breaking, no shared search code).
    """
    if g.edge_count > cap:
        raise SizeError(f"{g.edge_count} edges exceeds brute-force cap {cap}")
    if k < 0:
        raise InstanceError("k must be non-negative")
    if k == 0:
        return TreePacking(())
    if g.vertex_count == 1:
        return TreePacking([()] * k)
    chosen = _disjoint_choice(rainbow_trees(g), k)
    if chosen is None:
        return None
    return TreePacking([_mask_ids(mask) for mask in chosen])
