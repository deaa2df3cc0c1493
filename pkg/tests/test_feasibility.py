import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from probclone import (
    DomainError,
    MachineSpec,
    RatePair,
    SingularBoundError,
    average_rate_bound,
    feasibility_margin,
    gram_feasible,
    success_probe_overlap,
    theorem1_feasible,
    two_state_feasible,
)

from conftest import unit

ONES = np.ones((2, 2))


def pair_gram(overlap):
    return np.array([[1.0, overlap], [overlap, 1.0]])


def test_rate_pair_validation():
    with pytest.raises(DomainError):
        RatePair(1.1, 0.5)
    with pytest.raises(DomainError):
        RatePair(0.5, -0.1)
    assert tuple(RatePair(0.25, 0.5)) == (0.25, 0.5)


def test_machine_spec_validation():
    with pytest.raises(DomainError):
        MachineSpec(1.5, 0.2)


def test_two_state_examples():
    assert two_state_feasible(MachineSpec(0.9, 0.9), (1, 1))
    spec = MachineSpec(0.432, 0.36)
    assert feasibility_margin(spec, (1, 1)) == pytest.approx(-0.072, abs=1e-15)
    assert not two_state_feasible(spec, (1, 1))
    assert two_state_feasible(spec, (0.8875, 0.8875))
    assert abs(feasibility_margin(spec, (0.8875, 0.8875))) < 1e-12


@given(unit, unit)
def test_do_nothing_machine_always_feasible(eta_in, eta_out):
    assert two_state_feasible(MachineSpec(eta_in, eta_out), (0, 0))


@given(unit, st.floats(0.0, 0.999))
def test_bound_is_an_exact_boundary_point(eta_in, eta_out):
    assume(eta_in > eta_out)
    spec = MachineSpec(eta_in, eta_out)
    r = average_rate_bound(spec)
    assert two_state_feasible(spec, (r, r))
    assert abs(feasibility_margin(spec, (r, r))) <= 1e-12


@settings(max_examples=300)
@given(st.floats(0.0, 1.0), st.integers(2, 6), unit, unit, unit)
def test_copy_monotonicity(alpha, m, r1, r2, eta_in):
    more = MachineSpec(eta_in, alpha**m)
    fewer = MachineSpec(eta_in, alpha ** (m - 1))
    if two_state_feasible(more, (r1, r2)):
        assert two_state_feasible(fewer, (r1, r2))


def test_gram_examples():
    x = pair_gram(0.7)
    assert gram_feasible(x, pair_gram(0.2), ONES, [0, 0])
    g = pair_gram(0.9)
    assert gram_feasible(g, g, ONES, [1, 1])


def test_gram_three_states():
    # Three states cloned with zero rates is always fine; with rate 1 and a
    # smaller output overlap it is not.
    x = np.full((3, 3), 0.5) + 0.5 * np.eye(3)
    y = np.full((3, 3), 0.25) + 0.75 * np.eye(3)
    assert gram_feasible(x, y, np.ones((3, 3)), [0, 0, 0])
    assert not gram_feasible(x, y, np.ones((3, 3)), [1, 1, 1])


def test_gram_domain_errors():
    with pytest.raises(DomainError):
        gram_feasible(pair_gram(0.5), np.eye(3), ONES, [0.5, 0.5])
    with pytest.raises(DomainError):
        gram_feasible(pair_gram(0.5), pair_gram(0.5), ONES, [0.5, 1.5])


def _random_tuples(seed, n):
    rng = np.random.default_rng(seed)
    return rng.uniform(0.0, 1.0, size=(n, 4))


def test_predicates_agree_with_identical_probes_in_cloning_domain():
    # identical probes reproduce the scalar test whenever eta_in >= eta_out
    checked = 0
    for eta_in, eta_out, r1, r2 in _random_tuples(7, 3000):
        if eta_in < eta_out:
            continue
        spec = MachineSpec(eta_in, eta_out)
        scalar = two_state_feasible(spec, (r1, r2))
        matrix = gram_feasible(pair_gram(eta_in), pair_gram(eta_out), ONES, [r1, r2])
        assert scalar == matrix, (eta_in, eta_out, r1, r2)
        checked += 1
    assert checked > 1000


def test_identical_probes_can_be_too_restrictive_below_the_diagonal():
    # eta_in = 0, eta_out = 0.9, rates (1, 1): the scalar test passes, the
    # matrix test with identical probes fails, a smaller probe overlap fixes it
    spec = MachineSpec(0.0, 0.9)
    assert two_state_feasible(spec, (1, 1))
    assert not gram_feasible(pair_gram(0.0), pair_gram(0.9), ONES, [1, 1])
    s = success_probe_overlap(spec, (1, 1))
    assert s == 0.0
    assert gram_feasible(pair_gram(0.0), pair_gram(0.9), pair_gram(s), [1, 1])


def test_predicates_agree_with_witness_probes_everywhere():
    for eta_in, eta_out, r1, r2 in _random_tuples(11, 2000):
        spec = MachineSpec(eta_in, eta_out)
        s = success_probe_overlap(spec, (r1, r2))
        matrix = gram_feasible(pair_gram(eta_in), pair_gram(eta_out), pair_gram(s), [r1, r2])
        assert two_state_feasible(spec, (r1, r2)) == matrix, (eta_in, eta_out, r1, r2, s)


def test_success_probe_overlap_is_one_in_cloning_domain():
    assert success_probe_overlap(MachineSpec(0.432, 0.36), (0.8, 0.8)) == 1.0


def _grid_bound(eta_in, eta_out, n=2001):
    # independent brute force: max of (r1 + r2)/2 over the feasible lattice
    r = np.linspace(0, 1, n)
    r1, r2 = r[:, None], r[None, :]
    ok = np.sqrt((1 - r1) * (1 - r2)) - eta_in + eta_out * np.sqrt(r1 * r2) >= -1e-12
    return float(np.max(np.where(ok, (r1 + r2) / 2, -1)))


@pytest.mark.parametrize(
    "eta_in, eta_out, expected",
    [(0.72, 0.6, 0.7), (0.9, 0.5, 0.2), (0.3, 0.5, 1.0)],
)
def test_average_rate_bound_examples(eta_in, eta_out, expected):
    bound = average_rate_bound(MachineSpec(eta_in, eta_out))
    assert bound == pytest.approx(expected, abs=1e-12)
    assert _grid_bound(eta_in, eta_out) == pytest.approx(expected, abs=1e-3)


def test_average_rate_bound_singular():
    with pytest.raises(SingularBoundError):
        average_rate_bound(MachineSpec(0.5, 1.0))
    assert average_rate_bound(MachineSpec(1.0, 1.0)) == 1.0


@settings(max_examples=200)
@given(unit, st.floats(0.0, 0.99), unit, unit)
def test_no_feasible_pair_beats_the_bound(eta_in, eta_out, r1, r2):
    spec = MachineSpec(eta_in, eta_out)
    if two_state_feasible(spec, (r1, r2)):
        assert (r1 + r2) / 2 <= average_rate_bound(spec) + 1e-9


def test_margin_matches_definition():
    spec = MachineSpec(0.5, 0.3)
    expected = math.sqrt(0.6 * 0.2) - 0.5 + 0.3 * math.sqrt(0.4 * 0.8)
    assert feasibility_margin(spec, (0.4, 0.8)) == pytest.approx(expected, abs=1e-15)


def test_published_name_is_the_same_predicate():
    assert theorem1_feasible is gram_feasible
