import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from probclone import (
    CloningProblem,
    DomainError,
    GridConfig,
    MachineSpec,
    average_rate_bound,
    optimize_single_machine,
    optimize_two_step,
    oracle_max,
    ordering_advantage_check,
    rmax_scenario_I,
)
from probclone.oracle import feasible_mask, ordering_values

WORKED = CloningProblem(0.6, 0.9, 0.8, 2)


def test_grid_config_validation():
    with pytest.raises(DomainError):
        GridConfig(1)
    with pytest.raises(DomainError):
        GridConfig(101, 1e-3)
    g = GridConfig(5, 0.5)
    np.testing.assert_allclose(g.axis, [0, 0.25, 0.5, 0.75, 1])
    assert g.step == 0.25


def test_worked_single_machine():
    rates, value = optimize_single_machine(MachineSpec(0.432, 0.36))
    assert value == pytest.approx(0.8875, abs=5e-3)
    # the bound 0.8875 sits off-lattice; the argmax is symmetric here
    assert abs(rates.r1 - rates.r2) <= GridConfig().step


def test_inputs_no_closer_than_outputs_allow_certain_cloning():
    rates, value = optimize_single_machine(MachineSpec(0.3, 0.5))
    assert value == 1.0
    assert tuple(rates) == (1.0, 1.0)


def test_tie_break_takes_smallest_r1_then_r2():
    # a prior that ignores r2 makes every feasible r2 at r1 = 1 a tie; the
    # smallest feasible one there solves 0.5 sqrt(r2) = 0.3
    rates, value = optimize_single_machine(MachineSpec(0.3, 0.5), priors=(1.0, 0.0))
    assert value == 1.0
    assert tuple(rates) == pytest.approx((1.0, 0.36), abs=1e-12)


def test_do_nothing_always_in_mask():
    grid = GridConfig(51, 0.05)
    for eta_in, eta_out in [(1.0, 0.0), (0.0, 0.0), (0.7, 0.1)]:
        assert feasible_mask(MachineSpec(eta_in, eta_out), grid)[0, 0]


def test_scenario_oracles_match_worked_values():
    assert oracle_max("I", WORKED) == pytest.approx(0.8875, abs=5e-3)
    assert oracle_max("II", WORKED) == pytest.approx(0.859375, abs=1e-2)
    assert oracle_max("III", WORKED) == pytest.approx(0.8875, abs=1e-2)


def test_two_step_frontier_matches_full_scan():
    # independent reference: scan every pair of lattice points
    grid = GridConfig(41, 0.05)
    first, second = MachineSpec(0.72, 0.6), MachineSpec(0.6, 0.36)
    priors = (0.3, 0.7)
    r = grid.axis
    m1 = feasible_mask(first, grid)
    m2 = feasible_mask(second, grid)
    best = 0.0
    for i, j in zip(*np.nonzero(m1)):
        a1, a2 = r[i], r[j]
        stage2 = np.where(m2, priors[0] * (1 - a1) * r[:, None] + priors[1] * (1 - a2) * r[None, :], -1)
        best = max(best, priors[0] * a1 + priors[1] * a2 + stage2.max())
    assert optimize_two_step(first, second, priors, grid) == pytest.approx(best, abs=1e-15)


def test_ordering_on_worked_instance():
    first, second = ordering_values(WORKED)
    assert first == pytest.approx(0.859375, abs=1e-2)
    assert first >= second - 5e-3
    assert ordering_advantage_check(WORKED)


def test_oracle_is_deterministic():
    assert oracle_max("II", WORKED) == oracle_max("II", WORKED)


def test_unequal_priors_are_allowed():
    p = CloningProblem(0.6, 0.9, 0.8, 2, priors=(0.3, 0.7))
    value = oracle_max("I", p)
    assert 0.0 < value <= 1.0


@pytest.mark.parametrize("eta_in, eta_out", [(0.432, 0.36), (0.72, 0.6), (0.9, 0.2)])
def test_finer_grid_never_worse_on_nested_lattices(eta_in, eta_out):
    # resolutions 101 -> 201 -> 401 nest, so the maximum cannot decrease
    spec = MachineSpec(eta_in, eta_out)
    values = [optimize_single_machine(spec, grid=GridConfig(n, 0.05))[1] for n in (101, 201, 401)]
    assert values == sorted(values)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.0, 1.0), st.floats(0.0, 0.99))
def test_oracle_never_exceeds_the_bound(eta_in, eta_out):
    spec = MachineSpec(eta_in, eta_out)
    _, value = optimize_single_machine(spec, grid=GridConfig(201, 0.01))
    assert value <= average_rate_bound(spec) + 1e-12
    assert value >= average_rate_bound(spec) - 0.01


@settings(max_examples=15, deadline=None)
@given(st.floats(0.2, 0.9), st.floats(0.5, 1.0), st.floats(0.5, 1.0))
def test_scenario_I_oracle_within_tolerance(alpha, beta, gamma):
    p = CloningProblem(alpha, beta, gamma, 2)
    grid = GridConfig(401, 0.01)
    assert oracle_max("I", p, grid) == pytest.approx(rmax_scenario_I(p), abs=grid.tolerance)
