import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rainbowpack.errors import InstanceError, ParseError
from rainbowpack.formats import parse, parse_as, serialize
from rainbowpack.generators import (
    gen_exact_indegree_digraph,
    gen_nae_exactly4,
    gen_normal_form_rejection,
    gen_random_digraph,
    gen_random_ecg,
    gen_random_paired,
    gen_two_tree_union,
)
from rainbowpack.graphs import (
    ArcPartition,
    Assignment,
    Digraph,
    EdgeColoredGraph,
    NaeFormula,
    PairedGraph,
    TreePacking,
    is_k_partition_connected,
)
from rainbowpack.matroid import GraphicMatroid, packing_number
from rainbowpack.rainbow import set_partitions

K4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


# ---------------------------------------------------------------- types

def test_ecg_validation():
    with pytest.raises(InstanceError):
        EdgeColoredGraph(2, [(0, 2)], [0])
    with pytest.raises(InstanceError):
        EdgeColoredGraph(2, [(0, 1)], [1])  # colors must start at 0
    with pytest.raises(InstanceError):
        EdgeColoredGraph(2, [(0, 1), (0, 1)], [0])


def test_ecg_classes_and_normal_form():
    g = EdgeColoredGraph(2, [(0, 1), (0, 1)], [0, 0])
    assert g.color_classes() == [(0, 1)]
    assert g.is_normal_form()
    tree = EdgeColoredGraph(3, [(0, 1), (1, 2)], [0, 0])
    assert not tree.is_normal_form()
    with pytest.raises(InstanceError):
        tree.require_normal_form()
    # right edge count and class sizes, but vertex 3 is isolated
    split = EdgeColoredGraph(4, [(0, 1), (0, 1), (1, 2), (1, 2), (0, 2), (0, 2)], [0, 1, 2, 0, 1, 2])
    assert "disconnected" in split.normal_form_problem()


def test_digraph_indegree_problem():
    d = Digraph(3, [(0, 1), (0, 1), (1, 2), (2, 2)], 0)
    assert d.in_degrees() == [0, 2, 2]
    assert d.indegree_problem(2) is None
    assert d.indegree_problem(3) is not None
    rooted_loop = Digraph(2, [(0, 0), (0, 1)], 0)
    assert "root" in rooted_loop.indegree_problem(1)


def test_paired_graph_validation():
    g = PairedGraph(3, [(0, 1), (1, 2)], [0, 0])
    assert g.pair_members() == [(0, 1)]
    assert g.mate() == [1, 0]
    with pytest.raises(InstanceError):
        PairedGraph(3, [(0, 1), (1, 2), (0, 2)], [0, 0, 1])


def test_nae_formula():
    f = NaeFormula(3, [(0, 1, 2)])
    assert f.is_nae_satisfied([True, True, False])
    assert not f.is_nae_satisfied([True, True, True])
    assert f.first_violated_clause([False] * 3) == 0
    with pytest.raises(InstanceError):
        NaeFormula(3, [(0, 0, 1)])
    assert "occurs" in NaeFormula(3, [(0, 1, 2)] * 3).exactly4_problem()


def test_assignment_complement():
    a = Assignment((True, False))
    assert a.complement() == Assignment((False, True))


# ---------------------------------------------------------------- k-partition-connectivity

def test_k_partition_examples():
    assert is_k_partition_connected(EdgeColoredGraph(4, K4, range(6)), 2)
    tree = EdgeColoredGraph(4, [(0, 1), (1, 2), (1, 3)], [0, 1, 2])
    assert not is_k_partition_connected(tree, 2)
    assert is_k_partition_connected(tree, 1)
    with pytest.raises(InstanceError):
        is_k_partition_connected(tree, 0)


def partition_count_definition(n, edges, k):
    for labels in set_partitions(n):
        blocks = max(labels) + 1 if labels else 1
        crossing = sum(1 for u, v in edges if labels[u] != labels[v])
        if crossing < k * (blocks - 1):
            return False
    return True


def test_k_partition_matches_definition_exhaustively():
    rng = np.random.default_rng(11)
    for _ in range(150):
        n = int(rng.integers(1, 7))
        m = int(rng.integers(0, 13))
        edges = [tuple(int(x) for x in rng.integers(n, size=2)) for _ in range(m)]
        g = EdgeColoredGraph(n, edges, range(m))
        for k in (1, 2, 3):
            assert is_k_partition_connected(g, k) == partition_count_definition(n, edges, k)


# ---------------------------------------------------------------- generators

def test_two_tree_union_examples():
    g = gen_two_tree_union(5, 3)
    assert g.edge_count == 8 and g.color_count == 4 and g.is_normal_form()
    two = gen_two_tree_union(2, 0)
    assert two.edges == ((0, 1), (0, 1)) and two.color_count == 1
    assert gen_two_tree_union(6, 9) == gen_two_tree_union(6, 9)


@pytest.mark.parametrize("gen", [gen_two_tree_union, gen_normal_form_rejection])
def test_normal_form_generators(gen):
    for seed in range(40):
        g = gen(2 + seed % 6, seed)
        assert g.is_normal_form()
        assert packing_number(GraphicMatroid(g.vertex_count, g.edges)) == 2
        assert all(len(c) == 2 for c in g.color_classes())


def test_nae_generator_examples():
    f = gen_nae_exactly4(3, 0)
    assert f.clause_count == 4 and set(f.clauses) == {(0, 1, 2)}
    with pytest.raises(InstanceError):
        gen_nae_exactly4(4, 0)
    f6 = gen_nae_exactly4(6, 5)
    assert f6.clause_count == 8 and f6.exactly4_problem() is None
    assert gen_nae_exactly4(9, 2) == gen_nae_exactly4(9, 2)


def test_digraph_generators():
    for seed in range(20):
        d = gen_random_digraph(5, 2, 3, seed)
        assert d.indegree_problem(2) is None
        e = gen_exact_indegree_digraph(5, 2, seed)
        assert sorted(e.in_degrees()) == [0, 2, 2, 2, 2]


def test_random_ecg_single_vertex():
    with pytest.raises(InstanceError):
        gen_random_ecg(1, 2, 1, 0)
    assert gen_random_ecg(1, 2, 1, 0, loops=True).edges == ((0, 0), (0, 0))


# ---------------------------------------------------------------- formats

def test_parse_example():
    g = parse("ecg 2 2 1\n0 1 0\n0 1 0\n")
    assert g == EdgeColoredGraph(2, [(0, 1), (0, 1)], [0, 0])


def test_parse_comments_and_blank_lines():
    text = "# a comment\n\ndig 2 2 0  # header\n0 1\n\n0 1\n"
    assert parse(text) == Digraph(2, [(0, 1), (0, 1)], 0)


@pytest.mark.parametrize(
    "text, line",
    [
        ("ecg 2 3 1\n0 1 0\n0 1 0\n", 3),
        ("ecg 2 1 1\n0 5 0\n", 2),
        ("ecg 2 1 1\n0 1\n", 2),
        ("bogus 1\n", 1),
        ("packing 2\n0 1\n", 2),
        ("assign 3\n0 1 2\n", 2),
        ("nae 3 1\n1 2 4\n", 2),
        ("dig 2 1 0\n0 x\n", 2),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")


def test_none_marker():
    assert parse("NONE\n") is None
    assert serialize(None) == "NONE\n"
    with pytest.raises(ParseError):
        parse_as("NONE\n", TreePacking)


def test_empty_parts_and_assignments():
    p = TreePacking([(), (0, 1)])
    assert serialize(p) == "packing 2\n-\n0 1\n"
    assert parse(serialize(p)) == p
    assert parse(serialize(Assignment(()))) == Assignment(())


def test_round_trip_examples():
    objs = [
        gen_two_tree_union(5, 1),
        gen_random_digraph(4, 2, 2, 3),
        gen_random_paired(4, 3, 2),
        gen_nae_exactly4(6, 1),
        TreePacking([(0, 2), (1, 3)]),
        ArcPartition([(0,), (1, 2)]),
        Assignment((True, False, True)),
    ]
    for obj in objs:
        text = serialize(obj)
        assert parse(text) == obj
        assert serialize(parse(text)) == text


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 6), st.integers(0, 10), st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_ecg_round_trip_property(n, m, c, seed):
    g = gen_random_ecg(n, m if n > 1 else 0, c, seed)
    assert parse(serialize(g)) == g
