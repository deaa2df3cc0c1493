# Regimes and closed-form maxima for the three communication scenarios.
import numpy as np

from probclone import (
    CloningProblem,
    classify_regime,
    gap_I_II,
    optimal_stage_rates,
    rmax_scenario_I,
    rmax_scenario_II,
    rmax_scenario_III,
)

# %%
# The worked instance: originals with overlap 0.6, auxiliaries 0.9 and 0.8,
# two copies wanted.
p = CloningProblem(alpha=0.6, beta=0.9, gamma=0.8, m=2)
print(classify_regime(p))
print("rI   =", rmax_scenario_I(p))
print("rII  =", rmax_scenario_II(p))
print("rIII =", rmax_scenario_III(p))
print("gap  =", gap_I_II(p))

# %%
# Scenario III splits into a machine on the two auxiliaries followed, on
# failure, by a machine on the original alone.
for stage in optimal_stage_rates("III", p):
    print("stage rates", stage)

# %%
# Walking gamma from small to large crosses all three regimes.
for gamma in np.linspace(0.5, 1.0, 6):
    q = CloningProblem(0.6, 0.9, gamma, 2)
    label = classify_regime(q).label.value
    print(f"gamma={gamma:.2f} {label:>10}  rI={rmax_scenario_I(q):.6f}  rII={rmax_scenario_II(q):.6f}")
