"""Existence tests for probabilistic cloning machines.

Two predicates decide whether a machine with given per-state success rates
exists: a matrix test valid for any number of states (the matrix
``X - sqrt(G) Y sqrt(G)`` must be positive semidefinite) and its scalar
two-state specialization. The average-rate bound follows from the scalar
form by the AM-GM inequality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

import numpy as np

from .errors import DomainError, SingularBoundError
from .quantum_core import min_eigenvalue

BOUNDARY_SLACK = 1e-12
PSD_TOL = 1e-9


@dataclass(frozen=True)
class RatePair:
    """Per-state success probabilities ``(r1, r2)`` of one machine."""

    r1: float
    r2: float

    def __post_init__(self) -> None:
        for name in ("r1", "r2"):
            value = float(getattr(self, name))
            if not 0.0 <= value <= 1.0:
                raise DomainError(f"{name} must lie in [0, 1], got {value!r}")
            object.__setattr__(self, name, value)

    def __iter__(self) -> Iterator[float]:
        yield self.r1
        yield self.r2

    @classmethod
    def symmetric(cls, rate: float) -> "RatePair":
        return cls(rate, rate)


RateLike = Union[RatePair, Sequence[float]]


def as_rates(rates: RateLike) -> RatePair:
    if isinstance(rates, RatePair):
        return rates
    r1, r2 = rates
    return RatePair(r1, r2)


@dataclass(frozen=True)
class MachineSpec:
    """Input and output overlap magnitudes of a two-state machine."""

    eta_in: float
    eta_out: float

    def __post_init__(self) -> None:
        for name in ("eta_in", "eta_out"):
            value = float(getattr(self, name))
            if not 0.0 <= value <= 1.0:
                raise DomainError(f"{name} must lie in [0, 1], got {value!r}")
            object.__setattr__(self, name, value)


def feasibility_margin(spec: MachineSpec, rates: RateLike) -> float:
    """``sqrt((1-r1)(1-r2)) - eta_in + eta_out*sqrt(r1*r2)``.

    Nonnegative exactly when a machine with identical-success-probe
    freedom exists (see :func:`two_state_feasible`).
    """
    r1, r2 = as_rates(rates)
    return (
        math.sqrt((1.0 - r1) * (1.0 - r2))
        - spec.eta_in
        + spec.eta_out * math.sqrt(r1 * r2)
    )


def two_state_feasible(spec: MachineSpec, rates: RateLike) -> bool:
    """Whether a two-state cloning machine exists at the given rates.

    Boundary points are accepted with a slack of ``1e-12`` so that rates
    computed from an exact closed form are not rejected by rounding.
    """
    return feasibility_margin(spec, rates) >= -BOUNDARY_SLACK


def gram_feasible(
    input_gram: np.ndarray,
    output_gram: np.ndarray,
    probe_gram: np.ndarray,
    rates: Sequence[float],
) -> bool:
    """Matrix feasibility test for ``n`` states with fixed success probes.

    Args:
        input_gram: ``X[i, j] = <phi_i|phi_j>`` for the machine inputs.
        output_gram: ``<psi_i|psi_j>**m``, the Gram matrix of the clones.
        probe_gram: ``<P_i|P_j>`` for the success-flag probe states.
        rates: success probability per input state.

    Returns:
        True iff ``X - sqrt(G) (output_gram * probe_gram) sqrt(G)`` has
        smallest eigenvalue ``>= -1e-9``, with ``G = diag(rates)`` and the
        product taken elementwise.
    """
    x = np.asarray(input_gram, dtype=np.complex128)
    y = np.asarray(output_gram, dtype=np.complex128)
    p = np.asarray(probe_gram, dtype=np.complex128)
    r = np.asarray(rates, dtype=float).reshape(-1)
    n = r.shape[0]
    for name, mat in (("input_gram", x), ("output_gram", y), ("probe_gram", p)):
        if mat.shape != (n, n):
            raise DomainError(f"{name} has shape {mat.shape}, expected {(n, n)}")
    if np.any(r < 0.0) or np.any(r > 1.0):
        raise DomainError(f"rates must lie in [0, 1], got {r.tolist()}")
    root = np.sqrt(r)
    m = x - root[:, None] * (y * p) * root[None, :]
    return min_eigenvalue(m) >= -PSD_TOL


# name used by the published interface
theorem1_feasible = gram_feasible


def success_probe_overlap(spec: MachineSpec, rates: RateLike) -> float:
    """An overlap ``<P_1|P_2>`` of success probes that witnesses feasibility.

    Identical probes (overlap 1) suffice unless ``eta_in`` falls below
    ``eta_out*sqrt(r1 r2) - sqrt((1-r1)(1-r2))``, which can only happen
    when ``eta_in < eta_out``. In that case the largest overlap that still
    makes the two-state matrix test pass is returned. Callers should first
    check :func:`two_state_feasible`.
    """
    r1, r2 = as_rates(rates)
    clone_part = spec.eta_out * math.sqrt(r1 * r2)
    fail_part = math.sqrt((1.0 - r1) * (1.0 - r2))
    if spec.eta_in >= clone_part - fail_part or clone_part == 0.0:
        return 1.0
    return min(1.0, (spec.eta_in + fail_part) / clone_part)


def average_rate_bound(spec: MachineSpec) -> float:
    """Upper bound on ``(r1 + r2)/2``, clamped to 1.

    Equals ``(1 - eta_in)/(1 - eta_out)`` when ``eta_in > eta_out`` and is
    attained only at ``r1 == r2``.

    Raises:
        SingularBoundError: ``eta_out == 1`` while ``eta_in < 1``.
    """
    if spec.eta_out == 1.0:
        if spec.eta_in == 1.0:
            return 1.0
        raise SingularBoundError("eta_out == 1 makes the bound singular")
    return min(1.0, (1.0 - spec.eta_in) / (1.0 - spec.eta_out))
