import numpy as np
import pytest

from rainbowpack.errors import InstanceError, SizeError
from rainbowpack.generators import (
    gen_exact_indegree_digraph,
    gen_random_digraph,
    gen_random_paired,
)
from rainbowpack.graphs import Digraph, PairedGraph
from rainbowpack.targets import (
    brute_force_decompose,
    brute_force_parity_pack,
    decompose_digraph,
    is_rooted_k_edge_connected,
    pack_parity_trees,
    rooted_arc_connectivity,
)
from rainbowpack.verify import verify_digraph_decomposition, verify_parity_packing


def test_digraph_examples():
    d = Digraph(2, [(0, 1), (0, 1)], 0)
    ap = decompose_digraph(d, 2)
    assert sorted(map(sorted, ap.parts)) == [[0], [1]]
    assert verify_digraph_decomposition(d, ap, k=2)


def test_digraph_precondition():
    with pytest.raises(InstanceError):
        decompose_digraph(Digraph(2, [(0, 1)], 0), 2)
    with pytest.raises(InstanceError):
        decompose_digraph(Digraph(2, [(1, 0), (0, 1)], 0), 1)


def test_digraph_degenerate():
    assert decompose_digraph(Digraph(1, [], 0), 1).parts == (frozenset(),)
    assert brute_force_decompose(Digraph(1, [], 0), 1).parts == (frozenset(),)
    assert decompose_digraph(Digraph(2, [(0, 1)], 0), 0).k == 0
    assert brute_force_decompose(Digraph(2, [(0, 1)], 0), 0).k == 0


def test_loops_give_indegree_not_connectivity():
    # 1 is entered by 0->1 and by its own loop; the loop part would be disconnected
    d = Digraph(2, [(0, 1), (1, 1)], 0)
    assert decompose_digraph(d, 2) is None
    assert brute_force_decompose(d, 2) is None
    assert decompose_digraph(d, 1) is not None


def test_parity_examples():
    path = PairedGraph(3, [(0, 1), (1, 2)], [0, 0])
    p = pack_parity_trees(path, 1)
    assert p.parts == (frozenset({0, 1}),)
    assert pack_parity_trees(PairedGraph(2, [(0, 1), (0, 1)], [0, 0]), 1) is None
    assert brute_force_parity_pack(PairedGraph(2, [(0, 1), (0, 1)], [0, 0]), 1) is None


def test_parity_degenerate():
    single = PairedGraph(1, [], [])
    assert pack_parity_trees(single, 1).parts == (frozenset(),)
    assert brute_force_parity_pack(single, 1).parts == (frozenset(),)
    assert pack_parity_trees(PairedGraph(3, [(0, 1), (1, 2)], [0, 0]), 0).k == 0


def test_brute_force_caps():
    with pytest.raises(SizeError):
        brute_force_decompose(gen_random_digraph(6, 3, 5, 0), 1)
    with pytest.raises(SizeError):
        brute_force_parity_pack(gen_random_paired(5, 9, 0), 1)


def test_digraph_solver_agrees_with_brute_force():
    rng = np.random.default_rng(23)
    checked = 0
    while checked < 150:
        k = int(rng.integers(1, 3))
        d = gen_random_digraph(int(rng.integers(2, 6)), k, int(rng.integers(0, 5)), rng)
        if d.arc_count > 16:
            continue
        checked += 1
        mine, theirs = decompose_digraph(d, k), brute_force_decompose(d, k)
        assert (mine is None) == (theirs is None), (d, k)
        for cert in (mine, theirs):
            if cert is not None:
                assert verify_digraph_decomposition(d, cert, k=k)


def test_parity_solver_agrees_with_brute_force():
    rng = np.random.default_rng(29)
    for _ in range(150):
        k = int(rng.integers(1, 3))
        g = gen_random_paired(int(rng.choice([3, 4, 5])), int(rng.integers(1, 9)), rng,
                              two_tree=bool(rng.random() < 0.3))
        mine, theirs = pack_parity_trees(g, k), brute_force_parity_pack(g, k)
        assert (mine is None) == (theirs is None), (g, k)
        for cert in (mine, theirs):
            if cert is not None:
                assert verify_parity_packing(g, cert, k=k)


def test_rooted_connectivity():
    d = Digraph(3, [(0, 1), (0, 1), (1, 2), (0, 2), (2, 2)], 0)
    assert rooted_arc_connectivity(d) == [None, 2, 2]
    assert is_rooted_k_edge_connected(d, 2)
    assert not is_rooted_k_edge_connected(Digraph(3, [(0, 1), (0, 1), (1, 2), (2, 2)], 0), 2)


def test_exact_indegree_rooted_case_always_decomposes():
    for seed in range(30):
        d = gen_exact_indegree_digraph(int(3 + seed % 5), 2, seed)
        if not is_rooted_k_edge_connected(d, 2):
            continue
        ap = decompose_digraph(d, 2)
        assert ap is not None and verify_digraph_decomposition(d, ap, k=2)
