# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: light
# ---

# # From NAE-3SAT to two rainbow trees
#
# Each variable occurs exactly four times. Every occurrence gets a K4 gadget
# wired to its clause; NAE assignments turn into splits of the edge set into
# two rainbow spanning trees and back.

from rainbowpack.generators import gen_nae_exactly4
from rainbowpack.rainbow import pack_rainbow_trees
from rainbowpack.reductions import (
    assignment_to_packing,
    nae_bruteforce,
    nae_solutions,
    packing_to_assignment,
    reduce_nae_to_rst,
)
from rainbowpack.verify import verify_rainbow_packing

f = gen_nae_exactly4(3, 1)
g, mp = reduce_nae_to_rst(f)
print(f)
print(g.vertex_count, g.edge_count, len(g.color_classes()))

# Forward: a satisfying assignment becomes a packing with 20n edges per tree.

a = nae_bruteforce(f)
p = assignment_to_packing(mp, a)
print(a, [len(t) for t in p.parts], bool(verify_rainbow_packing(g, p, require_partition=True, k=2)))

# Backward: the side holding the clause edges of x_i decides its value.
# Solving the reduced graph directly lands on one of the NAE solutions.

solved = pack_rainbow_trees(g, 2)
back = packing_to_assignment(mp, solved)
print(back, back in set(nae_solutions(f)))
