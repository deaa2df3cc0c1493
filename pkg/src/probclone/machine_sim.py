"""Explicit cloning unitaries and Monte Carlo runs of the three protocols.

Output-space layout of a built machine::

    [ success block: clone state (x) success-probe qubit | failure block: 2 ]

The memory register is one-dimensional and therefore implicit. Success and
failure branches live in orthogonal blocks, which is exactly the required
probe orthogonality. Inputs are padded with zeros up to the output
dimension before the unitary is completed.

Randomness comes from numpy's counter-based Philox generator keyed by the
seed and a stream number; the uniform used for shot ``k`` is a fixed
function of ``(seed, stream, k)``, so results do not depend on evaluation
order or chunking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, FeasibilityError, InternalConsistencyError
from .feasibility import (
    MachineSpec,
    RateLike,
    RatePair,
    as_rates,
    success_probe_overlap,
    two_state_feasible,
)
from .quantum_core import (
    PureState,
    complete_to_unitary,
    inner_product,
    make_state_pair,
    tensor_power,
)
from .protocols import CloningProblem, Scenario, compose_two_step, stage_specs

CONSISTENCY_SLACK = 1e-9
SEED_LIMIT = 2**64

# Philox stream ids
_STREAM_MACHINE = 0
_STREAM_PRIOR = 1
_STREAM_STAGE = 2


@dataclass(frozen=True, eq=False)
class MachineRealization:
    unitary: np.ndarray
    input_states: tuple[PureState, PureState]
    success_projector: np.ndarray
    target_success_states: tuple[PureState, PureState]
    rates: RatePair
    probe_overlap: float
    failure_overlap: float

    def output_state(self, which_input: int) -> np.ndarray:
        return self.unitary @ self.input_states[_index(which_input)].amplitudes

    def success_probability(self, which_input: int) -> float:
        out = self.output_state(which_input)
        return float(np.real(np.vdot(out, self.success_projector @ out)))

    def success_fidelity(self, which_input: int) -> float:
        """``|<target|post>|^2`` for the renormalized success branch."""
        i = _index(which_input)
        proj = self.success_projector @ self.output_state(which_input)
        norm = np.linalg.norm(proj)
        if norm == 0.0:
            return 0.0
        overlap = np.vdot(self.target_success_states[i].amplitudes, proj / norm)
        return float(abs(overlap) ** 2)


@dataclass(frozen=True)
class SimulationResult:
    shots: int
    successes_per_input: tuple[int, int]
    empirical_rate: float
    mean_success_fidelity: float
    seed: int
    trials_per_input: tuple[int, int] = (0, 0)

    def to_dict(self) -> dict:
        return {
            "shots": self.shots,
            "trials_per_input": list(self.trials_per_input),
            "successes_per_input": list(self.successes_per_input),
            "empirical_rate": self.empirical_rate,
            "mean_success_fidelity": self.mean_success_fidelity,
            "seed": self.seed,
        }


def _index(which_input: int) -> int:
    if which_input not in (1, 2):
        raise DomainError(f"which_input must be 1 or 2, got {which_input!r}")
    return which_input - 1


def _check_seed(seed: int) -> int:
    if isinstance(seed, bool) or int(seed) != seed or not 0 <= seed < SEED_LIMIT:
        raise DomainError(f"seed must be an integer in [0, 2**64), got {seed!r}")
    return int(seed)


def uniforms(seed: int, stream: int, count: int) -> np.ndarray:
    """``count`` uniforms from the Philox stream keyed by ``(seed, stream)``."""
    key = (int(stream) << 64) | _check_seed(seed)
    return np.random.Generator(np.random.Philox(key=key)).random(count)


def build_machine(
    eta_in: float, output_pair: Sequence[PureState], rates: RateLike
) -> MachineRealization:
    """Construct a unitary cloning machine with the requested success rates.

    ``output_pair`` holds the two clone states the machine must emit on
    success (for example ``psi_i`` tensored ``m`` times). The inputs are a
    pair with overlap ``eta_in``. The failure branches get overlap ``c`` and
    the success probes overlap ``s``, chosen so that inner products match::

        eta_in = sqrt(r1 r2) eta_out s + sqrt((1-r1)(1-r2)) c

    Identical probes (``s = 1``) are used whenever that leaves ``|c| <= 1``.

    Raises:
        FeasibilityError: the rates violate the two-state feasibility test.
        InternalConsistencyError: the derived ``c`` or ``s`` is out of range.
    """
    rates = as_rates(rates)
    t1, t2 = output_pair
    if t1.dim != t2.dim:
        raise DomainError("output states must share a dimension")
    raw = inner_product(t1, t2)
    eta_out = min(1.0, abs(raw))
    spec = MachineSpec(eta_in, eta_out)
    if not two_state_feasible(spec, rates):
        raise FeasibilityError(
            f"rates ({rates.r1}, {rates.r2}) infeasible for "
            f"eta_in={eta_in}, eta_out={eta_out}"
        )
    # Rephase the second clone so <t1|t2> is real and nonnegative; fidelity
    # is phase-blind so the clone is unchanged physically.
    phase = raw / abs(raw) if abs(raw) > 0 else 1.0
    t2 = PureState(t2.amplitudes / phase)

    r1, r2 = rates
    clone_part = math.sqrt(r1 * r2) * eta_out
    fail_part = math.sqrt((1.0 - r1) * (1.0 - r2))
    s = success_probe_overlap(spec, rates)
    if fail_part > 0.0:
        c = (eta_in - clone_part * s) / fail_part
    else:
        c = 0.0
        if clone_part > 0.0:
            s = eta_in / clone_part
    if abs(c) > 1.0 + CONSISTENCY_SLACK or not -CONSISTENCY_SLACK <= s <= 1.0 + CONSISTENCY_SLACK:
        raise InternalConsistencyError(f"failure overlap {c!r} / probe overlap {s!r} out of range")
    c = max(-1.0, min(1.0, c))
    s = max(0.0, min(1.0, s))

    probes = (np.array([1.0, 0.0]), np.array([s, math.sqrt(1.0 - s * s)]))
    fails = (np.array([1.0, 0.0]), np.array([c, math.sqrt(1.0 - c * c)]))
    success_dim = 2 * t1.dim
    dim = success_dim + 2
    targets = tuple(
        PureState(np.concatenate([np.kron(t.amplitudes, probe), np.zeros(2)]))
        for t, probe in zip((t1, t2), probes)
    )
    outputs = tuple(
        PureState.from_unnormalized(
            math.sqrt(r) * target.amplitudes
            + math.sqrt(1.0 - r) * np.concatenate([np.zeros(success_dim), f])
        )
        for r, target, f in zip((r1, r2), targets, fails)
    )
    inputs = make_state_pair(eta_in, dim)

    if eta_in == 1.0:
        # identical inputs: outputs coincide too, prescribe one pair only
        unitary = complete_to_unitary(inputs[:1], outputs[:1])
    else:
        unitary = complete_to_unitary(inputs, outputs)
    projector = np.diag(np.concatenate([np.ones(success_dim), np.zeros(2)])).astype(np.complex128)
    return MachineRealization(unitary, inputs, projector, targets, rates, s, c)


def run_machine(
    machine: MachineRealization, which_input: int, rng_seed: int, shots: int
) -> SimulationResult:
    """Sample the success flag of one machine on one fixed input."""
    i = _index(which_input)
    if int(shots) != shots or shots < 1:
        raise DomainError(f"shots must be a positive integer, got {shots!r}")
    p = machine.success_probability(which_input)
    u = uniforms(rng_seed, _STREAM_MACHINE, shots)
    successes = int(np.count_nonzero(u < p))
    fidelity = machine.success_fidelity(which_input) if successes else 0.0
    counts = [0, 0]
    trials = [0, 0]
    counts[i] = successes
    trials[i] = shots
    return SimulationResult(
        shots, tuple(counts), successes / shots, fidelity, rng_seed, tuple(trials)
    )


def scenario_machines(
    scenario: Scenario | str, p: CloningProblem, stage_rates: Sequence[RateLike]
) -> list[MachineRealization]:
    """One realized machine per stage of ``scenario`` at the given rates.

    Clone outputs are ``psi_i`` tensored ``m`` times for stages that must
    deliver all copies, and ``m - 1`` times for the auxiliary-only first
    stages of Scenarios II and III (the original supplies the last copy).
    """
    scenario = Scenario(scenario)
    specs = stage_specs(scenario, p)
    if len(stage_rates) != len(specs):
        raise DomainError(f"scenario {scenario.value} needs {len(specs)} stage rate pairs")
    psi = make_state_pair(p.alpha, 2)
    copies = [p.m] if scenario is Scenario.I else [p.m - 1, p.m]
    machines = []
    for spec, rates, k in zip(specs, stage_rates, copies):
        rates = as_rates(rates)
        if not two_state_feasible(spec, rates):
            raise FeasibilityError(
                f"stage rates ({rates.r1}, {rates.r2}) infeasible for {spec}"
            )
        outputs = (tensor_power(psi[0], k), tensor_power(psi[1], k))
        machines.append(build_machine(spec.eta_in, outputs, rates))
    return machines


def simulate_scenario(
    scenario: Scenario | str,
    p: CloningProblem,
    stage_rates: Sequence[RateLike],
    shots: int,
    seed: int,
) -> SimulationResult:
    """Monte Carlo estimate of a protocol's total success probability.

    Each shot draws the input from the priors, runs stage one, and on
    failure runs stage two (if the scenario has one).
    """
    if int(shots) != shots or shots < 1:
        raise DomainError(f"shots must be a positive integer, got {shots!r}")
    seed = _check_seed(seed)
    machines = scenario_machines(scenario, p, stage_rates)
    which = np.where(uniforms(seed, _STREAM_PRIOR, shots) < p.priors[0], 0, 1)
    # stage draws interleaved per shot: column k belongs to stage k
    draws = uniforms(seed, _STREAM_STAGE, shots * 2).reshape(shots, 2)

    success = np.zeros(shots, dtype=bool)
    fid_sum = 0.0
    for k, machine in enumerate(machines):
        probs = np.array([machine.success_probability(1), machine.success_probability(2)])
        fids = np.array([machine.success_fidelity(1), machine.success_fidelity(2)])
        hit = ~success & (draws[:, k] < probs[which])
        fid_sum += float(np.sum(fids[which[hit]]))
        success |= hit

    trials = (int(np.sum(which == 0)), int(np.sum(which == 1)))
    counts = (int(np.sum(success & (which == 0))), int(np.sum(success & (which == 1))))
    total = counts[0] + counts[1]
    fidelity = fid_sum / total if total else 0.0
    return SimulationResult(shots, counts, total / shots, fidelity, seed, trials)


def analytic_rate(
    scenario: Scenario | str, p: CloningProblem, stage_rates: Sequence[RateLike]
) -> float:
    """Exact total success probability the simulation estimates."""
    rates = [as_rates(r) for r in stage_rates]
    if len(rates) == 1:
        return p.priors[0] * rates[0].r1 + p.priors[1] * rates[0].r2
    return compose_two_step(rates[0], rates[1], p.priors)
