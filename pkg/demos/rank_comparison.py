"""How much do the rankings move when the exponents change?"""

# %%
import numpy as np

from mdhits import solve
from mdhits.dataio import SynthSpec, generate_random
from mdhits.metrics import intersection_agreement, kendall_tau, ranked

tensor = generate_random(SynthSpec(60, seed=4))
base = solve(tensor, np.full(5, 0.2))

# %%
for alpha in ([0.1] * 5, [0.2, 0.2, 0.05, 0.05, 0.05], [0.05, 0.24, 0.2, 0.2, 0.2]):
    other = solve(tensor, np.array(alpha))
    print("alpha", alpha)
    for name in ("hub", "authority", "broadcast", "receive"):
        x, y = base.named()[name], other.named()[name]
        i_k = intersection_agreement(ranked(x), ranked(y), 20)
        print(f"  {name:9s} I_20={i_k:.3f} tau={kendall_tau(x, y):.3f}")
