"""Probabilistic cloning with supplementary information in two auxiliary systems.

Closed-form success maxima for three communication scenarios, the
feasibility tests they rest on, a brute-force grid oracle, and explicit
unitary machines that can be sampled by Monte Carlo.
"""

from .errors import (
    CloningError,
    DegeneracyError,
    DomainError,
    FeasibilityError,
    InfeasibleMapError,
    InternalConsistencyError,
    SingularBoundError,
    UnsupportedPriorsError,
)
from .feasibility import (
    MachineSpec,
    RatePair,
    average_rate_bound,
    feasibility_margin,
    gram_feasible,
    success_probe_overlap,
    theorem1_feasible,
    two_state_feasible,
)
from .machine_sim import (
    MachineRealization,
    SimulationResult,
    analytic_rate,
    build_machine,
    run_machine,
    simulate_scenario,
)
from .oracle import (
    GridConfig,
    optimize_single_machine,
    optimize_two_step,
    oracle_max,
    ordering_advantage_check,
)
from .protocols import (
    CloningProblem,
    Regime,
    RegimeLabel,
    Scenario,
    ScenarioReport,
    classify_regime,
    compose_two_step,
    cyclic_saturation,
    gap_I_II,
    merge_auxiliaries,
    optimal_stage_rates,
    rmax,
    rmax_scenario_I,
    rmax_scenario_II,
    rmax_scenario_III,
    single_auxiliary_max,
    stage_specs,
)
from .quantum_core import (
    PureState,
    complete_to_unitary,
    gram_matrix,
    inner_product,
    make_state_pair,
    tensor,
    tensor_power,
)

__version__ = "0.1.0"
