# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: light
# ---

# # Rainbow spanning trees
#
# One rainbow spanning tree is a matroid intersection question and has a
# partition certificate when it fails. Two or more disjoint ones need search.

from rainbowpack.generators import gen_normal_form_rejection, gen_two_tree_union
from rainbowpack.graphs import EdgeColoredGraph
from rainbowpack.rainbow import (
    brute_force_pack,
    find_rainbow_spanning_tree,
    pack_rainbow_trees,
    partition_criterion_witness,
)
from rainbowpack.verify import verify_rainbow_packing

# A triangle with two red edges has a rainbow tree; an all-red triangle
# does not, and the partition into singletons explains why (three parts,
# one colour).

tri = [(0, 1), (1, 2), (0, 2)]
print(find_rainbow_spanning_tree(EdgeColoredGraph(3, tri, [0, 0, 1])))
mono = EdgeColoredGraph(3, tri, [0, 0, 0])
print(find_rainbow_spanning_tree(mono), partition_criterion_witness(mono))

# The hard regime: a union of two spanning trees whose colour classes all
# have two edges. Split it into two rainbow trees.

g = gen_two_tree_union(7, 3)
stats = {}
p = pack_rainbow_trees(g, 2, stats=stats)
print(p)
print(verify_rainbow_packing(g, p, require_partition=True, k=2), stats)

# The exhaustive oracle agrees on small graphs. Scan a few seeds for a
# normal-form graph with no packing.

for seed in range(1000, 2500):
    h = gen_normal_form_rejection(3 + seed % 5, seed)
    if pack_rainbow_trees(h, 2) is None:
        print(seed, h, brute_force_pack(h, 2))
        break
