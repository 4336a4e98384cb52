"""Scores on a small multilayer network versus its flattened graph.

Four nodes live on three layers.  Collapsing the layers into one graph
makes nodes 1 and 2 indistinguishable; the five-way tensor keeps them
apart and also scores the layers themselves.
"""

# %%
import numpy as np

from mdhits import classical_hits, from_edge_list, monolayer_hits, solve

np.set_printoptions(precision=3, suppress=True)

# (source, target, source layer, target layer, time), 1-based
edges = [
    (2, 1, 1, 1, 1), (4, 1, 1, 1, 1), (1, 2, 2, 1, 1), (1, 4, 2, 1, 1),
    (1, 3, 2, 2, 1), (2, 4, 2, 2, 1), (3, 1, 2, 3, 1), (3, 2, 2, 3, 1),
    (2, 3, 3, 3, 1), (4, 2, 3, 3, 1),
]
tensor = from_edge_list([(tuple(i - 1 for i in e), 1.0) for e in edges], (4, 4, 3, 3, 1))

# %%
sol = solve(tensor, np.full(5, 0.2))
for name, vec in sol.named().items():
    print(f"{name:9s}", vec)
print("iterations", sol.iterations)

# %% [markdown]
# The aggregate graph: every node pair that is linked in some layer, in both
# directions.  Hub and authority vectors coincide and nodes 1, 2 tie.

# %%
flat = {(i - 1, j - 1) for i, j, *_ in edges}
flat |= {(j, i) for i, j in flat}
agg = from_edge_list([(e, 1.0) for e in sorted(flat)], (4, 4))
print("nonlinear aggregate hub", monolayer_hits(agg, 1 / 3, 1 / 3).hub)
print("classical aggregate hub", classical_hits(agg).hub)
