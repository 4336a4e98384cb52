"""Why the nonlinear map gives one answer where linear HITS gives many.

Run with ``python3 demos/curse_of_disconnectedness.py``.
"""

# %%
import numpy as np

from mdhits import SolverConfig, classical_hits, from_edge_list, monolayer_hits

# node 1 points at nodes 2..5, which all point at node 6 (0-based below)
edges = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (2, 5), (3, 5), (4, 5)]
graph = from_edge_list([(e, 1.0) for e in edges], (6, 6))
np.set_printoptions(precision=4, suppress=True)

# %% [markdown]
# Classical HITS lands on different fixed points depending on where it starts.

# %%
for start in ([1, 1, 1, 1, 1, 1], [1, 0.25, 0.25, 0.25, 0.25, 1]):
    res = classical_hits(graph, hub_start=start)
    print("start", start, "-> hub", res.hub, "authority", res.authority)

# %% [markdown]
# With exponents 1/3 on both sides the fixed point is unique.  Node 1 is the
# only pure hub, node 6 the only pure authority, and the middle nodes share
# 4 ** (-1/4) = 2 ** (-1/2) in both roles.

# %%
for seed in range(3):
    res = monolayer_hits(graph, 1 / 3, 1 / 3, SolverConfig(tol=1e-12, init="random", seed=seed))
    print("seed", seed, "hub", res.hub, "authority", res.authority)
print("closed form", 2 ** -0.5)
