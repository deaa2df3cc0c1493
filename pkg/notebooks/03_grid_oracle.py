# Brute-force lattice search as an independent check on the closed forms.
import time

import numpy as np

from probclone import CloningProblem, GridConfig, oracle_max, rmax
from probclone.oracle import ordering_values

p = CloningProblem(0.6, 0.9, 0.8, 2)

# %%
for scenario in ("I", "II", "III"):
    t0 = time.perf_counter()
    value = oracle_max(scenario, p)
    print(f"{scenario:>3}: oracle {value:.6f}  closed {rmax(scenario, p):.6f}  "
          f"({time.perf_counter() - t0:.2f} s)")

# %%
# Refining the lattice pulls the Scenario I oracle towards 0.8875 from below.
for n in (51, 101, 201, 401, 801, 1601):
    grid = GridConfig(n, max(5e-3, 2.0 / n))
    print(n, oracle_max("I", p, grid))

# %%
# Which auxiliary should go first in Scenario II? Running the lone second
# auxiliary first (it only needs m - 1 copies) wins.
rng = np.random.default_rng(3)
for _ in range(5):
    a, b, g = rng.uniform(0.2, 0.95, size=3)
    first, second = ordering_values(CloningProblem(a, b, g, 2), GridConfig(401, 0.01))
    print(f"alpha={a:.2f} beta={b:.2f} gamma={g:.2f}: {first:.4f} vs {second:.4f}")
