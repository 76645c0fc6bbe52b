# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: light
# ---

# # Matroids, unions and covering numbers
#
# Three kinds of rank oracle ship with the package: graphic (forests of a
# multigraph), partition (at most one element per class) and explicit
# (a table of independent sets). Everything else is built on `rank`.

import numpy as np

from rainbowpack.matroid import (
    GraphicMatroid,
    PartitionMatroid,
    check_rank_axioms,
    covering_number,
    covering_number_formula,
    matroid_union,
    max_common_independent,
    packing_number,
    packing_number_formula,
    random_matroid,
    uniform_matroid,
)

# K4 has six edges and rank 3.

k4 = GraphicMatroid(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
k4.full_rank(), k4.rank([0, 1, 3]), k4.rank([0, 1, 2, 3])

# The union of two copies of the graphic matroid splits the edges into two
# forests. For K4 both forests are spanning trees.

forests = matroid_union([k4, k4])
[sorted(f) for f in forests]

# Covering and packing numbers come from union ranks. The exhaustive
# max/min subset formulas give the same numbers.

for m in (k4, uniform_matroid(2, 5), PartitionMatroid([0, 0, 1, 1, 2])):
    print(m, covering_number(m), covering_number_formula(m), packing_number(m), packing_number_formula(m))

# A rainbow spanning tree is a common basis of a graphic and a partition
# matroid. Colour K4's edges with three colours, two edges each:

colours = PartitionMatroid([0, 1, 2, 2, 1, 0])
sorted(max_common_independent(k4, colours))

# Random matroids pass the exhaustive axiom check.

rng = np.random.default_rng(0)
sum(bool(check_rank_axioms(random_matroid(rng))) for _ in range(50))
