"""A toy trade multiplex: countries that import nothing get authority 0.

Each line is ``exporter importer product value`` with no cross-layer edges.
"""

# %%
import io

import numpy as np

from mdhits import solve
from mdhits.dataio import load_tensor

TRADE = """\
1 2 1 3.5
1 3 1 1.25
2 1 1 0.5
3 2 2 7.0
2 3 2 2.0
4 1 1 9.0
4 2 2 1.5
5 3 1 0.75
5 1 2 4.0
"""

tensor = load_tensor(io.StringIO(TRADE), "multiplex")
sol = solve(tensor, np.full(5, 0.2))
support = tensor.support()

# %%
print("authority", sol.authority)
print("inactive authority ids (1-based)", np.flatnonzero(~support.masks[1]) + 1)
print("exact zeros", np.flatnonzero(sol.authority == 0.0) + 1)
