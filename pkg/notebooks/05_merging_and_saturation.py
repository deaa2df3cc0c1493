# Two auxiliaries act like one with the product overlap; piling on more
# auxiliaries eventually makes cloning certain.
from probclone import (
    CloningProblem,
    cyclic_saturation,
    merge_auxiliaries,
    rmax_scenario_III,
    single_auxiliary_max,
)

# %%
merged = merge_auxiliaries(0.9, 0.8)
print(merged, single_auxiliary_max(0.6, merged, 2), rmax_scenario_III(CloningProblem(0.6, 0.9, 0.8, 2)))

# %%
# Add auxiliaries with overlap 0.95 one at a time.
for k, step in enumerate(cyclic_saturation(0.6, 3, [0.95] * 24), start=1):
    flag = "saturated" if step.saturated else ""
    print(f"{k:2d} overlap={step.effective_overlap:.4f} r_max={step.r_max:.6f} {flag}")
