# Explicit unitaries and Monte Carlo runs.
import numpy as np

from probclone import (
    CloningProblem,
    analytic_rate,
    build_machine,
    make_state_pair,
    optimal_stage_rates,
    run_machine,
    simulate_scenario,
    tensor_power,
)
from probclone.quantum_core import unitarity_residual

# %%
# Two copies of a pair with overlap 0.6 from inputs with overlap 0.432.
a, b = make_state_pair(0.6, 2)
machine = build_machine(0.432, (tensor_power(a, 2), tensor_power(b, 2)), (0.8, 0.8))
print("dimension", machine.unitary.shape[0])
print("unitarity residual", unitarity_residual(machine.unitary))
print("failure overlap", machine.failure_overlap)
print("success probabilities", machine.success_probability(1), machine.success_probability(2))

# %%
result = run_machine(machine, 1, rng_seed=42, shots=100_000)
print(result)

# %%
# Whole protocols at their optimal stage rates.
p = CloningProblem(0.6, 0.9, 0.8, 2)
for scenario in ("I", "II", "III"):
    rates = optimal_stage_rates(scenario, p)
    sim = simulate_scenario(scenario, p, rates, shots=100_000, seed=42)
    exact = analytic_rate(scenario, p, rates)
    sigma = np.sqrt(exact * (1 - exact) / sim.shots)
    print(f"{scenario:>3}: {sim.empirical_rate:.5f} vs {exact:.6f} "
          f"({(sim.empirical_rate - exact) / sigma:+.2f} sigma)")
