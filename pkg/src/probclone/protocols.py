"""Closed-form success maxima for cloning with two auxiliary systems.

Three protocols are compared. The originals ``psi_1, psi_2`` have overlap
``alpha``; the two auxiliary systems carry states with overlaps ``beta``
and ``gamma``; ``m`` copies are wanted.

* Scenario I: one party holds everything and runs a single joint machine.
* Scenario II: the second auxiliary first tries to make ``m - 1`` copies
  alone; on failure the original and the first auxiliary jointly try to
  make ``m`` copies.
* Scenario III: both auxiliaries jointly try ``m - 1`` copies; on failure
  the original alone tries ``m`` copies.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import DomainError, UnsupportedPriorsError
from .feasibility import MachineSpec, RateLike, RatePair, as_rates, average_rate_bound

PRIOR_ATOL = 1e-12
SNAP = 1e-12


class Scenario(str, enum.Enum):
    I = "I"
    II = "II"
    III = "III"


class RegimeLabel(str, enum.Enum):
    ALL_UNIT = "ALL_UNIT"
    STRICT_GAP = "STRICT_GAP"
    WEAK_GAP = "WEAK_GAP"


@dataclass(frozen=True)
class CloningProblem:
    alpha: float
    beta: float
    gamma: float
    m: int = 2
    priors: tuple[float, float] = (0.5, 0.5)

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "gamma"):
            value = float(getattr(self, name))
            if not 0.0 <= value <= 1.0:
                raise DomainError(f"{name} must lie in [0, 1], got {value!r}")
            object.__setattr__(self, name, value)
        if isinstance(self.m, bool) or int(self.m) != self.m or self.m < 2:
            raise DomainError(f"m must be an integer >= 2, got {self.m!r}")
        object.__setattr__(self, "m", int(self.m))
        p1, p2 = (float(p) for p in self.priors)
        if p1 < 0.0 or p2 < 0.0 or abs(p1 + p2 - 1.0) > PRIOR_ATOL:
            raise DomainError(f"priors must be nonnegative and sum to 1, got {self.priors!r}")
        object.__setattr__(self, "priors", (p1, p2))

    @property
    def equal_priors(self) -> bool:
        return abs(self.priors[0] - self.priors[1]) <= PRIOR_ATOL


@dataclass(frozen=True)
class Regime:
    """Which case of the three-way split a problem falls in.

    ``threshold`` is ``alpha**(m-1)``, ``lower`` is ``alpha**(2m-2)`` and
    ``beta_gamma`` is the product of the auxiliary overlaps.
    """

    label: RegimeLabel
    threshold: float
    lower: float
    beta_gamma: float


@dataclass
class ScenarioReport:
    closed_form_max: dict[Scenario, Optional[float]]
    regime: Regime
    oracle_max: Optional[dict[Scenario, float]] = None
    empirical_rate: Optional[dict[Scenario, float]] = None
    notes: list[str] = field(default_factory=list)


def _leq(a: float, b: float) -> bool:
    return a <= b + SNAP


def classify_regime(p: CloningProblem) -> Regime:
    threshold = p.alpha ** (p.m - 1)
    lower = p.alpha ** (2 * p.m - 2)
    bg = p.beta * p.gamma
    if _leq(p.beta, threshold) or _leq(p.gamma, threshold):
        label = RegimeLabel.ALL_UNIT
    elif _leq(bg, threshold):
        # beta, gamma > threshold already forces bg > lower
        label = RegimeLabel.STRICT_GAP
    else:
        label = RegimeLabel.WEAK_GAP
    return Regime(label, threshold, lower, bg)


def stage_specs(scenario: Scenario | str, p: CloningProblem) -> list[MachineSpec]:
    """Overlap specs of the machines a scenario runs, in execution order."""
    scenario = Scenario(scenario)
    a, b, g, m = p.alpha, p.beta, p.gamma, p.m
    if scenario is Scenario.I:
        return [MachineSpec(a * b * g, a**m)]
    if scenario is Scenario.II:
        return [MachineSpec(g, a ** (m - 1)), MachineSpec(a * b, a**m)]
    return [MachineSpec(b * g, a ** (m - 1)), MachineSpec(a, a**m)]


def _check_priors(p: CloningProblem, regime: Regime) -> None:
    if regime.label is RegimeLabel.WEAK_GAP and not p.equal_priors:
        raise UnsupportedPriorsError(
            f"closed form requires equal priors in WEAK_GAP, got {p.priors}"
        )


def _clamp(x: float) -> float:
    return min(1.0, max(0.0, x))


def _joint_max(p: CloningProblem) -> float:
    regime = classify_regime(p)
    _check_priors(p, regime)
    if regime.label is not RegimeLabel.WEAK_GAP or p.alpha == 1.0:
        return 1.0
    a = p.alpha
    return _clamp((1.0 - a * p.beta * p.gamma) / (1.0 - a**p.m))


def rmax_scenario_I(p: CloningProblem) -> float:
    """Maximum total success probability of the joint machine."""
    return _joint_max(p)


def rmax_scenario_III(p: CloningProblem) -> float:
    """Maximum of the auxiliaries-first protocol; same value as Scenario I."""
    return _joint_max(p)


def rmax_scenario_II(p: CloningProblem) -> float:
    """Maximum of the protocol whose stages communicate classically.

    In WEAK_GAP this is the proven optimum. In STRICT_GAP only ``< 1`` is
    proven; the same composition of per-stage bounds (each clamped to 1)
    is returned as an upper-bound composition, to be checked against the
    grid oracle.
    """
    regime = classify_regime(p)
    _check_priors(p, regime)
    if regime.label is RegimeLabel.ALL_UNIT or p.alpha == 1.0:
        return 1.0
    a, b, g, m = p.alpha, p.beta, p.gamma, p.m
    if regime.label is RegimeLabel.WEAK_GAP:
        num = (1.0 - g) * (a * b - a**m) + (1.0 - a * b) * (1.0 - a ** (m - 1))
        return _clamp(num / ((1.0 - a**m) * (1.0 - a ** (m - 1))))
    first, second = (average_rate_bound(s) for s in stage_specs(Scenario.II, p))
    return _clamp(first + second - first * second)


def rmax(scenario: Scenario | str, p: CloningProblem) -> float:
    scenario = Scenario(scenario)
    if scenario is Scenario.I:
        return rmax_scenario_I(p)
    if scenario is Scenario.II:
        return rmax_scenario_II(p)
    return rmax_scenario_III(p)


def gap_I_II(p: CloningProblem) -> float:
    """``rmax_I - rmax_II``, using the factored form in WEAK_GAP.

    The factored form ``(1-gamma) alpha^m (1-beta) / ((1-alpha^m)(1-alpha^(m-1)))``
    is exactly zero when ``beta`` or ``gamma`` is 1, where the difference
    of the two closed forms would leave rounding residue.
    """
    regime = classify_regime(p)
    _check_priors(p, regime)
    if regime.label is RegimeLabel.WEAK_GAP and p.alpha < 1.0:
        a, m = p.alpha, p.m
        return ((1.0 - p.gamma) * a**m * (1.0 - p.beta)) / (
            (1.0 - a**m) * (1.0 - a ** (m - 1))
        )
    return rmax_scenario_I(p) - rmax_scenario_II(p)


def compose_two_step(
    first: RateLike, second: RateLike, priors: Sequence[float] = (0.5, 0.5)
) -> float:
    """Total success of running ``second`` only after ``first`` fails.

    Per state the rate is ``f + (1 - f) s``, symmetric in the two stages.
    """
    f = as_rates(first)
    s = as_rates(second)
    p1, p2 = priors
    return p1 * (f.r1 + (1.0 - f.r1) * s.r1) + p2 * (f.r2 + (1.0 - f.r2) * s.r2)


def optimal_stage_rates(scenario: Scenario | str, p: CloningProblem) -> list[RatePair]:
    """Symmetric per-stage rates at each stage's average-rate bound.

    These attain the closed-form maxima with equal priors. With ``alpha == 1``
    the clone outputs coincide and every stage succeeds with certainty.
    """
    if p.alpha == 1.0:
        return [RatePair(1.0, 1.0) for _ in stage_specs(scenario, p)]
    return [RatePair.symmetric(average_rate_bound(s)) for s in stage_specs(scenario, p)]


def merge_auxiliaries(beta: float, gamma: float) -> float:
    """Overlap of one auxiliary system equivalent to the pair."""
    for name, value in (("beta", beta), ("gamma", gamma)):
        if not 0.0 <= value <= 1.0:
            raise DomainError(f"{name} must lie in [0, 1], got {value!r}")
    return beta * gamma


def single_auxiliary_max(alpha: float, overlap: float, m: int) -> float:
    """Maximum for one auxiliary of the given overlap (classical hand-off).

    The auxiliary first tries ``m - 1`` copies, then the original tries
    ``m``; the optimum is ``(1 - alpha*overlap)/(1 - alpha**m)`` until the
    overlap drops to ``alpha**(m-1)``, after which it is 1.
    """
    if alpha == 1.0 or _leq(overlap, alpha ** (m - 1)):
        return 1.0
    return _clamp((1.0 - alpha * overlap) / (1.0 - alpha**m))


@dataclass(frozen=True)
class SaturationStep:
    effective_overlap: float
    r_max: float
    saturated: bool


def cyclic_saturation(alpha: float, m: int, aux_overlaps: Sequence[float]) -> list[SaturationStep]:
    """Trace of repeatedly folding one more auxiliary into a merged one.

    Step ``k`` holds the product of the first ``k + 1`` overlaps and the
    single-auxiliary maximum at that overlap. The maximum never decreases
    and is exactly 1 from the first step whose product is at most
    ``alpha**(m-1)``.
    """
    if len(aux_overlaps) == 0:
        raise DomainError("need at least one auxiliary overlap")
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha!r}")
    if m < 2:
        raise DomainError(f"m must be >= 2, got {m!r}")
    threshold = alpha ** (m - 1)
    trace = []
    product = 1.0
    for overlap in aux_overlaps:
        product = merge_auxiliaries(product, overlap)
        saturated = alpha == 1.0 or _leq(product, threshold)
        trace.append(SaturationStep(product, single_auxiliary_max(alpha, product, m), saturated))
    return trace
