"""Seeded instance generators.

All generators are deterministic functions of their arguments: randomness
comes from ``numpy.random.default_rng(seed)`` and nothing else.
"""

from __future__ import annotations

import numpy as np

from .errors import InstanceError
from .graphs import Digraph, EdgeColoredGraph, NaeFormula, PairedGraph, component_count
from .matroid import GraphicMatroid, packing_number

__all__ = [
    "random_tree",
    "gen_two_tree_union",
    "gen_normal_form_rejection",
    "gen_nae_exactly4",
    "gen_random_ecg",
    "gen_random_paired",
    "gen_random_digraph",
    "gen_exact_indegree_digraph",
]


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_tree(n: int, rng) -> list[tuple[int, int]]:
    """Uniform random labelled tree on ``0..n-1`` via a Pruefer sequence."""
    rng = _rng(rng)
    if n <= 1:
        return []
    if n == 2:
        return [(0, 1)]
    seq = rng.integers(n, size=n - 2).tolist()
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = next(v for v in range(n) if degree[v] == 1)
        edges.append((min(leaf, x), max(leaf, x)))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = (w for w in range(n) if degree[w] == 1)
    edges.append((u, v))
    return edges


def gen_two_tree_union(vertex_count: int, seed) -> EdgeColoredGraph:
    """Two random spanning trees overlaid, edges paired at random into color classes."""
    if vertex_count < 2:
        raise InstanceError("need at least 2 vertices")
    rng = _rng(seed)
    edges = random_tree(vertex_count, rng) + random_tree(vertex_count, rng)
    order = rng.permutation(len(edges))
    edges = [edges[i] for i in order]
    # colors are relabelled by first appearance so that ids read naturally in files
    return EdgeColoredGraph(vertex_count, edges, _pair_up(len(edges), rng))


def _pair_up(edge_count, rng):
    pairing = rng.permutation(edge_count)
    colors = [0] * edge_count
    for slot, e in enumerate(pairing):
        colors[e] = slot // 2
    first: dict[int, int] = {}
    for c in colors:
        first.setdefault(c, len(first))
    return [first[c] for c in colors]


def gen_normal_form_rejection(vertex_count: int, seed, max_tries: int = 10_000) -> EdgeColoredGraph:
    """Random multigraph with ``2(n-1)`` edges, redrawn until it is a union of two spanning trees.

    Compared to :func:`gen_two_tree_union` the edges are spread less evenly,
    which produces noticeably more instances without a rainbow split.
    """
    if vertex_count < 2:
        raise InstanceError("need at least 2 vertices")
    rng = _rng(seed)
    n, m = vertex_count, 2 * (vertex_count - 1)
    for _ in range(max_tries):
        edges = []
        while len(edges) < m:
            u, v = (int(x) for x in rng.integers(n, size=2))
            if u != v:
                edges.append((min(u, v), max(u, v)))
        if component_count(n, edges) == 1 and packing_number(GraphicMatroid(n, edges)) >= 2:
            return EdgeColoredGraph(n, edges, _pair_up(m, rng))
    raise InstanceError(f"no two-tree union found in {max_tries} draws")


def gen_nae_exactly4(n: int, seed, max_tries: int = 100_000) -> NaeFormula:
    """Monotone 3-CNF with every variable in exactly four clauses.

    Configuration model: four slots per variable are shuffled and cut into
    triples; a draw with a repeated variable inside a clause is rejected.
    """
    if n < 3:
        raise InstanceError(f"need at least 3 variables, got {n}")
    if (4 * n) % 3:
        raise InstanceError(f"4n = {4 * n} is not divisible by 3")
    rng = _rng(seed)
    slots = np.repeat(np.arange(n), 4)
    for _ in range(max_tries):
        perm = rng.permutation(slots).reshape(-1, 3)
        if all(len(set(row)) == 3 for row in perm.tolist()):
            clauses = sorted(tuple(sorted(row)) for row in perm.tolist())
            return NaeFormula(n, clauses)
    raise InstanceError(f"no simple configuration found in {max_tries} draws")


def gen_random_ecg(vertex_count: int, edge_count: int, color_count: int, seed,
                   loops: bool = False) -> EdgeColoredGraph:
    """Random multigraph with random colors, relabelled to be contiguous."""
    if vertex_count == 1 and edge_count and not loops:
        raise InstanceError("a single vertex only carries loops")
    rng = _rng(seed)
    edges = []
    while len(edges) < edge_count:
        u, v = (int(x) for x in rng.integers(vertex_count, size=2))
        if u == v and not loops:
            continue
        edges.append((min(u, v), max(u, v)))
    raw = rng.integers(max(color_count, 1), size=edge_count).tolist()
    first: dict[int, int] = {}
    for c in raw:
        first.setdefault(c, len(first))
    return EdgeColoredGraph(vertex_count, edges, [first[c] for c in raw])


def gen_random_paired(vertex_count: int, pair_count: int, seed, two_tree: bool = False) -> PairedGraph:
    """Random paired multigraph; with ``two_tree`` the edges form two overlaid spanning trees."""
    rng = _rng(seed)
    if two_tree:
        edges = random_tree(vertex_count, rng) + random_tree(vertex_count, rng)
        if len(edges) % 2:
            raise InstanceError("two-tree union has an odd number of edges")
    else:
        edges = []
        while len(edges) < 2 * pair_count:
            u, v = (int(x) for x in rng.integers(vertex_count, size=2))
            if u != v:
                edges.append((min(u, v), max(u, v)))
    order = rng.permutation(len(edges))
    edges = [edges[i] for i in order]
    pairing = rng.permutation(len(edges))
    pairs = [0] * len(edges)
    for slot, e in enumerate(pairing):
        pairs[e] = slot // 2
    first: dict[int, int] = {}
    for p in pairs:
        first.setdefault(p, len(first))
    return PairedGraph(vertex_count, edges, [first[p] for p in pairs])


def gen_random_digraph(vertex_count: int, k: int, extra: int, seed, loop_prob: float = 0.15) -> Digraph:
    """Random digraph rooted at 0 with root in-degree 0 and all other in-degrees >= k.

    Every non-root vertex gets ``k`` random in-arcs, then ``extra`` more arcs
    are sprinkled over non-root heads.  Tails are arbitrary vertices, so loops
    (with probability ``loop_prob`` per arc) and parallels occur.
    """
    rng = _rng(seed)
    n = vertex_count
    heads = [v for v in range(1, n) for _ in range(k)]
    if n > 1:
        heads += rng.integers(1, n, size=extra).tolist()
    arcs = []
    for h in heads:
        if rng.random() < loop_prob:
            arcs.append((h, h))
        else:
            t = int(rng.integers(n - 1))
            t = t if t < h else t + 1
            arcs.append((t, h))
    order = rng.permutation(len(arcs))
    return Digraph(n, [arcs[i] for i in order], 0)


def gen_exact_indegree_digraph(vertex_count: int, k: int, seed, arborescences: bool | None = None) -> Digraph:
    """Digraph rooted at 0 where every non-root vertex has in-degree exactly ``k``.

    With ``arborescences`` the arcs are the union of ``k`` random spanning
    arborescences (so the result is rooted k-edge-connected); otherwise each
    vertex draws its ``k`` tails independently from the other vertices.
    """
    rng = _rng(seed)
    n = vertex_count
    if arborescences is None:
        arborescences = bool(rng.integers(2))
    arcs = []
    if arborescences:
        for _ in range(k):
            order = [0] + (rng.permutation(n - 1) + 1).tolist()
            for pos in range(1, n):
                parent = order[int(rng.integers(pos))]
                arcs.append((parent, order[pos]))
    else:
        for h in range(1, n):
            for _ in range(k):
                t = int(rng.integers(n - 1))
                t = t if t < h else t + 1
                arcs.append((t, h))
    order = rng.permutation(len(arcs))
    return Digraph(n, [arcs[i] for i in order], 0)
