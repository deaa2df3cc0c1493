# Which pairs of success rates a two-state cloner can reach.
import numpy as np

from probclone import (
    MachineSpec,
    average_rate_bound,
    feasibility_margin,
    gram_feasible,
    success_probe_overlap,
    two_state_feasible,
)

spec = MachineSpec(eta_in=0.432, eta_out=0.36)

# %%
# The margin is zero on the boundary of the feasible region.
for r in (0.5, 0.8875, 0.95):
    print(r, feasibility_margin(spec, (r, r)), two_state_feasible(spec, (r, r)))
print("best average rate:", average_rate_bound(spec))

# %%
# A coarse picture of the region: '#' feasible, '.' not.
axis = np.linspace(0, 1, 21)
for r1 in axis[::-1]:
    print("".join("#" if two_state_feasible(spec, (r1, r2)) else "." for r2 in axis))

# %%
# The matrix test with identical success probes agrees with the scalar test
# while outputs are no closer than inputs. If the outputs are closer, the
# probes must differ; success_probe_overlap supplies a working overlap.
x = np.array([[1, 0.1], [0.1, 1]])
y = np.array([[1, 0.6], [0.6, 1]])
rates = (1.0, 1.0)
print(two_state_feasible(MachineSpec(0.1, 0.6), rates))
print(gram_feasible(x, y, np.ones((2, 2)), rates))
s = success_probe_overlap(MachineSpec(0.1, 0.6), rates)
print(s, gram_feasible(x, y, np.array([[1, s], [s, 1]]), rates))
