# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: light
# ---

# # Digraph decomposition and parity trees
#
# The two-rainbow-tree question on normal-form graphs transfers to
# splitting a digraph into two weakly connected spanning subgraphs with every
# non-root in-degree at least one, and to packing spanning trees built from
# whole edge pairs.

from rainbowpack.generators import gen_exact_indegree_digraph, gen_two_tree_union
from rainbowpack.rainbow import pack_rainbow_trees
from rainbowpack.reductions import (
    arc_partition_to_packing,
    packing_to_arc_partition,
    parity_packing_maps,
    reduce_rst_to_digraph,
    reduce_rst_to_parity,
)
from rainbowpack.targets import decompose_digraph, pack_parity_trees, rooted_arc_connectivity
from rainbowpack.verify import verify_digraph_decomposition, verify_parity_packing

g = gen_two_tree_union(6, 4)
p = pack_rainbow_trees(g, 2)
d, dmap = reduce_rst_to_digraph(g, 0)
pg, pmap = reduce_rst_to_parity(g)
print(d.vertex_count, d.arc_count, pg.vertex_count, pg.edge_count)

# Each side's solution maps to the other and verifies there.

ap = decompose_digraph(d, 2)
print(bool(verify_digraph_decomposition(d, packing_to_arc_partition(dmap, p), k=2)))
print(arc_partition_to_packing(dmap, ap))

q = pack_parity_trees(pg, 2)
print(bool(verify_parity_packing(pg, parity_packing_maps(pmap, "forward", p), k=2)))
print(parity_packing_maps(pmap, "backward", q))

# With in-degree exactly two and rooted 2-edge-connectivity (checked by
# max-flow), a decomposition always exists: it is a pair of arborescences.

d2 = gen_exact_indegree_digraph(8, 2, 5, arborescences=True)
print(rooted_arc_connectivity(d2), decompose_digraph(d2, 2))
