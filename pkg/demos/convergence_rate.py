"""Observed step sizes against the geometric bound, and iterations versus rho.

Prints plot-ready columns; pipe to a file and plot with any tool.
"""

# %%
import numpy as np

from mdhits import SolverConfig, perron, solve
from mdhits.dataio import SynthSpec, generate_random

tensor = generate_random(SynthSpec(25, seed=0, weights="lognormal"))

# %%
sol = solve(tensor, np.full(5, 0.2), SolverConfig(tol=1e-10))
print("k,step,bound")
for row in sol.trace:
    print(f"{row.k},{row.step:.3e},{row.bound:.3e}")

# %% [markdown]
# The iteration count tracks 1 / ln(rho): a straight line in that variable.

# %%
alphas = 0.04 + 0.02 * np.arange(9)
rho = np.array([perron(np.full(5, a))[0] for a in alphas])
its = np.array([solve(tensor, np.full(5, a)).iterations for a in alphas])
x = 1 / np.log(rho)
s1, s2 = np.polyfit(x, its, 1)
print("alpha,rho,iterations,fit")
for a, r, k, f in zip(alphas, rho, its, s1 * x + s2):
    print(f"{a:.2f},{r:.2f},{k},{f:.1f}")
