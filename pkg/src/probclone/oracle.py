"""Brute-force maximization of success rates over a lattice of rate pairs.

The oracle only knows the two-state feasibility predicate; it never looks
at a closed form, so agreement with :mod:`probclone.protocols` is an
independent check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, InternalConsistencyError
from .feasibility import BOUNDARY_SLACK, MachineSpec, RatePair
from .protocols import CloningProblem, Scenario, stage_specs

DEFAULT_RESOLUTION = 801
DEFAULT_TOLERANCE = 5e-3


@dataclass(frozen=True)
class GridConfig:
    resolution: int = DEFAULT_RESOLUTION
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self) -> None:
        if int(self.resolution) != self.resolution or self.resolution < 2:
            raise DomainError(f"resolution must be an integer >= 2, got {self.resolution!r}")
        if not self.tolerance > 0:
            raise DomainError(f"tolerance must be positive, got {self.tolerance!r}")
        if self.tolerance < 2.0 / self.resolution:
            raise DomainError(
                f"tolerance {self.tolerance} is finer than the grid allows "
                f"(>= {2.0 / self.resolution:.3g} at resolution {self.resolution})"
            )

    @property
    def axis(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.resolution)

    @property
    def step(self) -> float:
        return 1.0 / (self.resolution - 1)


def feasible_mask(spec: MachineSpec, grid: GridConfig) -> np.ndarray:
    """Boolean lattice, ``mask[i, j]`` for rates ``(axis[i], axis[j])``."""
    r = grid.axis
    r1 = r[:, None]
    r2 = r[None, :]
    margin = np.sqrt((1.0 - r1) * (1.0 - r2)) - spec.eta_in + spec.eta_out * np.sqrt(r1 * r2)
    return margin >= -BOUNDARY_SLACK


def _check_priors(priors: Sequence[float]) -> tuple[float, float]:
    p1, p2 = (float(p) for p in priors)
    if p1 < 0 or p2 < 0 or abs(p1 + p2 - 1.0) > 1e-12:
        raise DomainError(f"priors must be nonnegative and sum to 1, got {priors!r}")
    return p1, p2


def optimize_single_machine(
    spec: MachineSpec,
    priors: Sequence[float] = (0.5, 0.5),
    grid: GridConfig = GridConfig(),
) -> tuple[RatePair, float]:
    """Best feasible lattice point for ``P1*r1 + P2*r2``.

    Every lattice point is evaluated. Ties go to the smallest ``r1``, then
    the smallest ``r2``.
    """
    p1, p2 = _check_priors(priors)
    r = grid.axis
    mask = feasible_mask(spec, grid)
    if not mask[0, 0]:
        raise InternalConsistencyError("the do-nothing machine was judged infeasible")
    value = np.where(mask, p1 * r[:, None] + p2 * r[None, :], -np.inf)
    # argmax returns the first maximum in row-major order
    i, j = np.unravel_index(int(np.argmax(value)), value.shape)
    return RatePair(r[i], r[j]), float(value[i, j])


def _frontier(spec: MachineSpec, grid: GridConfig) -> tuple[np.ndarray, np.ndarray]:
    # For each feasible r1 row keep only the largest feasible r2: every
    # objective used here is non-decreasing in r2 at fixed r1.
    r = grid.axis
    mask = feasible_mask(spec, grid)
    rows = np.flatnonzero(mask.any(axis=1))
    if rows.size == 0 or not mask[0, 0]:
        raise InternalConsistencyError("the do-nothing machine was judged infeasible")
    top = grid.resolution - 1 - np.argmax(mask[rows, ::-1], axis=1)
    return r[rows], r[top]


def optimize_two_step(
    first_spec: MachineSpec,
    second_spec: MachineSpec,
    priors: Sequence[float] = (0.5, 0.5),
    grid: GridConfig = GridConfig(),
) -> float:
    """Best total rate of running ``second_spec`` after ``first_spec`` fails.

    Nested search: for each feasible first-stage pair ``(a1, a2)`` the second
    stage maximizes ``P1(1-a1) b1 + P2(1-a2) b2`` over its feasible lattice.
    Both stage objectives are non-decreasing in the second rate at fixed
    first rate, so the lattice maximum is attained on the per-row frontier
    of each feasible set, and only those points are scanned. The result is
    identical to scanning the full lattices.
    """
    p1, p2 = _check_priors(priors)
    a1, a2 = _frontier(first_spec, grid)
    b1, b2 = _frontier(second_spec, grid)
    w1 = p1 * (1.0 - a1)
    w2 = p2 * (1.0 - a2)
    inner = np.max(w1[:, None] * b1[None, :] + w2[:, None] * b2[None, :], axis=1)
    total = p1 * a1 + p2 * a2 + inner
    return float(min(1.0, np.max(total)))


def oracle_max(
    scenario: Scenario | str, p: CloningProblem, grid: GridConfig = GridConfig()
) -> float:
    """Grid-search maximum of a scenario, with the problem's own priors."""
    specs = stage_specs(scenario, p)
    if len(specs) == 1:
        return optimize_single_machine(specs[0], p.priors, grid)[1]
    return optimize_two_step(specs[0], specs[1], p.priors, grid)


def ordering_values(p: CloningProblem, grid: GridConfig = GridConfig()) -> tuple[float, float]:
    """Oracle maxima of the two Scenario II orderings.

    First ordering: the second auxiliary alone makes ``m - 1`` copies, then
    original plus first auxiliary make ``m``. Second ordering: original plus
    first auxiliary go first, then the second auxiliary alone must make all
    ``m`` copies.
    """
    a, b, g, m = p.alpha, p.beta, p.gamma, p.m
    first = optimize_two_step(
        MachineSpec(g, a ** (m - 1)), MachineSpec(a * b, a**m), p.priors, grid
    )
    second = optimize_two_step(
        MachineSpec(a * b, a**m), MachineSpec(g, a**m), p.priors, grid
    )
    return first, second


def ordering_advantage_check(p: CloningProblem, grid: GridConfig = GridConfig()) -> bool:
    first, second = ordering_values(p, grid)
    return first >= second - grid.tolerance
