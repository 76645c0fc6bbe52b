import itertools

import numpy as np
import pytest

from rainbowpack.errors import InstanceError
from rainbowpack.generators import gen_random_digraph, gen_random_ecg, gen_random_paired
from rainbowpack.graphs import ArcPartition, Digraph, EdgeColoredGraph, PairedGraph, TreePacking
from rainbowpack.verify import (
    forest_violation,
    verify_digraph_decomposition,
    verify_parity_packing,
    verify_rainbow_packing,
)


def test_rainbow_examples():
    g = EdgeColoredGraph(2, [(0, 1), (0, 1)], [0, 1])
    assert verify_rainbow_packing(g, TreePacking([(0,), (1,)]))
    path = EdgeColoredGraph(3, [(0, 1), (1, 2)], [0, 0])
    v = verify_rainbow_packing(path, TreePacking([(0, 1)]))
    assert v.violation == "repeated color" and v.witness == (0, 0, 1)
    tri = EdgeColoredGraph(3, [(0, 1), (1, 2), (0, 2)], [0, 1, 2])
    v = verify_rainbow_packing(tri, TreePacking([(0, 1, 2)]))
    assert v.violation == "cycle" and v.witness == (0, 1, 2)


def test_rainbow_partition_and_count():
    tri = EdgeColoredGraph(3, [(0, 1), (1, 2), (0, 2)], [0, 1, 2])
    assert verify_rainbow_packing(tri, TreePacking([(0, 1)]))
    v = verify_rainbow_packing(tri, TreePacking([(0, 1)]), require_partition=True)
    assert v.violation == "uncovered" and v.witness == (2,)
    assert verify_rainbow_packing(tri, TreePacking([(0, 1)]), k=2).violation == "part count"
    assert verify_rainbow_packing(tri, TreePacking([(0, 1), (1, 2)])).violation == "overlap"
    assert verify_rainbow_packing(tri, TreePacking([(0,)])).violation == "not spanning"
    with pytest.raises(InstanceError):
        verify_rainbow_packing(tri, TreePacking([(0, 7)]))


def test_digraph_examples():
    d = Digraph(2, [(0, 1), (0, 1)], 0)
    assert verify_digraph_decomposition(d, ArcPartition([(0,), (1,)]))
    v = verify_digraph_decomposition(d, ArcPartition([(0, 1), ()]))
    assert v.violation == "not spanning" and v.detail == "empty part"
    back = Digraph(2, [(0, 1), (1, 0)], 0)
    outcomes = [verify_digraph_decomposition(back, ArcPartition(parts), k=2)
                for parts in ([(0,), (1,)], [(1,), (0,)])]
    assert all(o.violation == "in-degree" and o.witness == 1 for o in outcomes)


def test_digraph_loops_count_for_indegree_only():
    # vertex 2 is entered only by its loop in part 1; the loop does not connect it
    d = Digraph(3, [(0, 1), (1, 2), (0, 1), (0, 2), (2, 2)], 0)
    assert verify_digraph_decomposition(d, ArcPartition([(0, 1), (2, 3, 4)]))
    lonely = Digraph(2, [(0, 1), (1, 1)], 0)
    v = verify_digraph_decomposition(lonely, ArcPartition([(0,), (1,)]))
    assert v.violation == "not spanning" and v.part == 1


def test_digraph_zero_parts_convention():
    d = Digraph(2, [(0, 1)], 0)
    assert verify_digraph_decomposition(d, ArcPartition(()))


def test_parity_examples():
    path = PairedGraph(3, [(0, 1), (1, 2)], [0, 0])
    assert verify_parity_packing(path, TreePacking([(0, 1)]))
    parallel = PairedGraph(2, [(0, 1), (0, 1)], [0, 0])
    assert verify_parity_packing(parallel, TreePacking([(0, 1)])).violation == "cycle"
    v = verify_parity_packing(path, TreePacking([(0,)]))
    assert v.violation == "broken pair" and v.witness == (0, 1)


def test_forest_violation_reports_cycle():
    edges = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]
    assert forest_violation(4, edges, [0, 1, 2]) is None
    assert forest_violation(4, edges, [0, 1, 4]) == [0, 1, 4]


# ---------------------------------------------------------------- exhaustive restatement

def _connected(n, edges):
    if n == 0:
        return True
    seen, stack = {0}, [0]
    while stack:
        x = stack.pop()
        for u, v in edges:
            for a, b in ((u, v), (v, u)):
                if a == x and b not in seen:
                    seen.add(b)
                    stack.append(b)
    return len(seen) == n


def _is_spanning_tree(n, edges):
    return len(edges) == n - 1 and _connected(n, edges)


def naive_rainbow(g, parts, require_partition):
    used = [e for p in parts for e in p]
    if len(used) != len(set(used)):
        return False
    if require_partition and len(used) != g.edge_count:
        return False
    for p in parts:
        if len({g.colors[e] for e in p}) != len(p):
            return False
        if not _is_spanning_tree(g.vertex_count, [g.edges[e] for e in p]):
            return False
    return True


def naive_parity(g, parts, require_partition):
    used = [e for p in parts for e in p]
    if len(used) != len(set(used)):
        return False
    if require_partition and len(used) != g.edge_count:
        return False
    for p in parts:
        for a, b in g.pair_members():
            if (a in p) != (b in p):
                return False
        if not _is_spanning_tree(g.vertex_count, [g.edges[e] for e in p]):
            return False
    return True


def naive_digraph(d, parts):
    used = [a for p in parts for a in p]
    if sorted(used) != list(range(d.arc_count)):
        return False
    for p in parts:
        arcs = [d.arcs[a] for a in p]
        if not _connected(d.vertex_count, [(t, h) for t, h in arcs if t != h]):
            return False
        entered = {h for _, h in arcs}
        if any(v not in entered for v in range(d.vertex_count) if v != d.root):
            return False
    return True


def _labellings(m, k):
    # every assignment of elements to a part or to "unused" (-1)
    for labels in itertools.product(range(-1, k), repeat=m):
        yield [tuple(e for e in range(m) if labels[e] == j) for j in range(k)]


def _small_instances(make, count, seed):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        inst = make(rng)
        if inst is not None:
            out.append(inst)
    return out


def test_rainbow_verifier_matches_restatement():
    def make(rng):
        n = int(rng.integers(1, 5))
        m = int(rng.integers(0, 9)) if n > 1 else 0
        return gen_random_ecg(n, m, int(rng.integers(1, 5)), rng)

    for g in _small_instances(make, 20, 1):
        for k in (1, 2):
            for parts in _labellings(g.edge_count, k):
                p = TreePacking(parts)
                for req in (False, True):
                    assert bool(verify_rainbow_packing(g, p, require_partition=req)) == \
                        naive_rainbow(g, parts, req), (g, parts, req)


def test_parity_verifier_matches_restatement():
    def make(rng):
        n = int(rng.integers(2, 6))
        return gen_random_paired(n, int(rng.integers(1, 5)), rng)  # up to 8 edges

    for g in _small_instances(make, 20, 2):
        for k in (1, 2):
            for parts in _labellings(g.edge_count, k):
                p = TreePacking(parts)
                req = g.edge_count == k * (g.vertex_count - 1)
                assert bool(verify_parity_packing(g, p)) == naive_parity(g, parts, req), (g, parts)


def test_digraph_verifier_matches_restatement():
    def make(rng):
        n = int(rng.integers(2, 6))
        d = gen_random_digraph(n, 1, int(rng.integers(0, 5)), rng, loop_prob=0.25)
        return d if d.arc_count <= 8 else None

    for d in _small_instances(make, 20, 3):
        for k in (1, 2):
            for parts in _labellings(d.arc_count, k):
                verdict = verify_digraph_decomposition(d, ArcPartition(parts))
                assert bool(verdict) == naive_digraph(d, parts), (d, parts)


def test_overlapping_certificates_rejected():
    g = EdgeColoredGraph(2, [(0, 1), (0, 1)], [0, 1])
    assert verify_rainbow_packing(g, TreePacking([(0,), (0,)])).violation == "overlap"
    pg = PairedGraph(3, [(0, 1), (1, 2)], [0, 0])
    assert verify_parity_packing(pg, TreePacking([(0, 1), (0, 1)])).violation == "overlap"
    d = Digraph(2, [(0, 1), (0, 1)], 0)
    assert verify_digraph_decomposition(d, ArcPartition([(0, 1), (1,)])).violation == "overlap"
