"""Command-line front end.

Subcommands ``classify``, ``maxima``, ``simulate`` and ``sweep`` share one
set of options. Values come from built-in defaults, then an optional JSON
config file (``--config``), then command-line flags.

Exit codes: 0 success, 2 invalid input, 3 closed form unavailable for the
given priors, 4 internal inconsistency, 5 output could not be written.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import itertools
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .errors import (
    DomainError,
    FeasibilityError,
    InternalConsistencyError,
    UnsupportedPriorsError,
)
from .machine_sim import analytic_rate, simulate_scenario
from .oracle import GridConfig, oracle_max
from .protocols import (
    CloningProblem,
    RegimeLabel,
    Scenario,
    classify_regime,
    gap_I_II,
    optimal_stage_rates,
    rmax,
)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_PRIORS = 3
EXIT_INCONSISTENT = 4
EXIT_IO = 5

SWEEP_PARAMS = ("alpha", "beta", "gamma", "m")
CSV_HEADER = (
    "alpha", "beta", "gamma", "m", "regime",
    "rI", "rII", "rIII", "oracleI", "oracleII", "oracleIII", "gapI_II",
)
SCENARIOS = (Scenario.I, Scenario.II, Scenario.III)


class CliError(Exception):
    def __init__(self, message: str, code: int) -> None:
        super().__init__(message)
        self.code = code


@dataclass
class RunConfig:
    alpha: float = 0.6
    beta: float = 0.9
    gamma: float = 0.8
    m: int = 2
    priors: tuple[float, float] = (0.5, 0.5)
    grid_resolution: int = 801
    shots: int = 100_000
    seed: int = 42
    sweep: dict[str, tuple[float, float, int]] = field(default_factory=dict)

    def problem(self, **override) -> CloningProblem:
        values = dict(alpha=self.alpha, beta=self.beta, gamma=self.gamma, m=self.m,
                      priors=tuple(self.priors))
        values.update(override)
        return CloningProblem(**values)

    def grid(self, tolerance: float = 5e-3) -> GridConfig:
        return GridConfig(self.grid_resolution, max(tolerance, 2.0 / self.grid_resolution))

    def validate(self) -> None:
        self.problem()
        self.grid()
        if isinstance(self.shots, bool) or int(self.shots) != self.shots or self.shots < 1:
            raise DomainError(f"shots must be a positive integer, got {self.shots!r}")
        if isinstance(self.seed, bool) or int(self.seed) != self.seed or not 0 <= self.seed < 2**64:
            raise DomainError(f"seed must be an integer in [0, 2**64), got {self.seed!r}")
        for name, rng in self.sweep.items():
            if name not in SWEEP_PARAMS:
                raise DomainError(f"cannot sweep {name!r}; choose from {SWEEP_PARAMS}")
            if len(rng) != 3:
                raise DomainError(f"sweep range for {name} must be [start, stop, steps]")
            steps = rng[2]
            if isinstance(steps, bool) or int(steps) != steps or steps < 1:
                raise DomainError(f"sweep steps for {name} must be an integer >= 1, got {steps!r}")

    def echo(self) -> dict:
        out = dataclasses.asdict(self)
        out["priors"] = list(self.priors)
        out["sweep"] = {k: list(v) for k, v in sorted(self.sweep.items())}
        return out

    def sweep_values(self) -> dict[str, list]:
        values: dict[str, list] = {}
        for name in SWEEP_PARAMS:
            if name in self.sweep:
                start, stop, steps = self.sweep[name]
                grid = np.linspace(float(start), float(stop), int(steps))
                if name == "m":
                    ints = np.rint(grid)
                    if np.any(np.abs(ints - grid) > 1e-9):
                        raise DomainError("sweep range for m must hit integers only")
                    values[name] = sorted({int(v) for v in ints})
                else:
                    values[name] = sorted({float(v) for v in grid})
            else:
                values[name] = [getattr(self, name)]
        return values


def _load_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise CliError(f"cannot read config: {exc}", EXIT_VALIDATION) from exc
        except json.JSONDecodeError as exc:
            raise CliError(f"config is not valid JSON: {exc}", EXIT_VALIDATION) from exc
        if not isinstance(data, dict):
            raise CliError("config must be a JSON object", EXIT_VALIDATION)
        known = {f.name for f in dataclasses.fields(RunConfig)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise CliError(f"unknown config keys: {unknown}", EXIT_VALIDATION)
        for key, value in data.items():
            if key == "priors":
                value = tuple(value)
            elif key == "sweep":
                value = {k: tuple(v) for k, v in value.items()}
            setattr(cfg, key, value)
    for name in ("alpha", "beta", "gamma", "m", "grid_resolution", "shots", "seed"):
        value = getattr(args, name)
        if value is not None:
            setattr(cfg, name, value)
    if args.priors is not None:
        cfg.priors = tuple(args.priors)
    for name in SWEEP_PARAMS:
        rng = getattr(args, f"sweep_{name}")
        if rng is not None:
            try:
                start, stop, steps = (float(x) for x in rng)
            except ValueError as exc:
                raise CliError(f"--sweep-{name} needs three numbers, got {rng}", EXIT_VALIDATION) from exc
            cfg.sweep[name] = (start, stop, int(steps) if steps.is_integer() else steps)
    try:
        cfg.validate()
    except DomainError as exc:
        raise CliError(str(exc), EXIT_VALIDATION) from exc
    return cfg


def _regime_dict(problem: CloningProblem) -> dict:
    regime = classify_regime(problem)
    return {
        "label": regime.label.value,
        "alpha_pow_m_minus_1": regime.threshold,
        "alpha_pow_2m_minus_2": regime.lower,
        "beta_gamma": regime.beta_gamma,
        "beta_le_threshold": problem.beta <= regime.threshold,
        "gamma_le_threshold": problem.gamma <= regime.threshold,
        "beta_gamma_le_threshold": regime.beta_gamma <= regime.threshold,
    }


def _envelope(command: str, cfg: RunConfig) -> dict:
    return {"tool": "probclone", "version": __version__, "command": command,
            "seed": cfg.seed, "config": cfg.echo()}


def cmd_classify(cfg: RunConfig, args: argparse.Namespace) -> str:
    problem = cfg.problem()
    info = _regime_dict(problem)
    if args.format == "json":
        report = _envelope("classify", cfg)
        report["regime"] = info
        return _dump_json(report)
    return (
        f"{info['label']}\n"
        f"beta={problem.beta:.12g} <= alpha^(m-1)={info['alpha_pow_m_minus_1']:.12g}: "
        f"{info['beta_le_threshold']}\n"
        f"gamma={problem.gamma:.12g} <= alpha^(m-1)={info['alpha_pow_m_minus_1']:.12g}: "
        f"{info['gamma_le_threshold']}\n"
        f"beta*gamma={info['beta_gamma']:.12g} in (alpha^(2m-2)={info['alpha_pow_2m_minus_2']:.12g}, "
        f"alpha^(m-1)]: {info['alpha_pow_2m_minus_2'] < info['beta_gamma'] <= info['alpha_pow_m_minus_1']}\n"
    )


def _closed_forms(problem: CloningProblem) -> dict[Scenario, float]:
    try:
        return {s: rmax(s, problem) for s in SCENARIOS}
    except UnsupportedPriorsError as exc:
        raise CliError(f"{exc}; use --oracle-only to explore", EXIT_PRIORS) from exc


def _scenario_II_kind(problem: CloningProblem) -> str:
    label = classify_regime(problem).label
    if label is RegimeLabel.STRICT_GAP:
        return "upper-bound composition"
    return "closed form"


def cmd_maxima(cfg: RunConfig, args: argparse.Namespace) -> str:
    problem = cfg.problem()
    report = _envelope("maxima", cfg)
    report["regime"] = _regime_dict(problem)
    closed = None
    if not args.oracle_only:
        closed = _closed_forms(problem)
        report["closed_form"] = {s.value: v for s, v in closed.items()}
        report["scenario_II_kind"] = _scenario_II_kind(problem)
        report["gap_I_II"] = gap_I_II(problem)
    if args.oracle or args.oracle_only:
        grid = cfg.grid()
        oracle = {s: oracle_max(s, problem, grid) for s in SCENARIOS}
        report["grid"] = {"resolution": grid.resolution, "tolerance": grid.tolerance}
        report["oracle"] = {s.value: v for s, v in oracle.items()}
        if closed is not None:
            report["delta"] = {s.value: abs(oracle[s] - closed[s]) for s in SCENARIOS}
    return _dump_json(report)


def cmd_simulate(cfg: RunConfig, args: argparse.Namespace) -> str:
    problem = cfg.problem()
    report = _envelope("simulate", cfg)
    report["regime"] = _regime_dict(problem)
    results = {}
    for scenario in SCENARIOS:
        rates = optimal_stage_rates(scenario, problem)
        try:
            sim = simulate_scenario(scenario, problem, rates, cfg.shots, cfg.seed)
        except (FeasibilityError, InternalConsistencyError) as exc:
            raise CliError(f"scenario {scenario.value}: {exc}", EXIT_INCONSISTENT) from exc
        analytic = analytic_rate(scenario, problem, rates)
        sigma = math.sqrt(analytic * (1.0 - analytic) / cfg.shots)
        deviation = abs(sim.empirical_rate - analytic)
        entry = sim.to_dict()
        entry.update({
            "stage_rates": [[r.r1, r.r2] for r in rates],
            "analytic_rate": analytic,
            "sigma": sigma,
            "deviation": deviation,
            "within_3_sigma": deviation <= 3.0 * sigma if sigma > 0 else deviation == 0.0,
        })
        results[scenario.value] = entry
    report["scenarios"] = results
    return _dump_json(report)


def _fmt(value: Optional[float]) -> str:
    return "" if value is None else f"{value:.12g}"


def sweep_rows(cfg: RunConfig, with_oracle: bool, oracle_only: bool = False) -> list[list[str]]:
    values = cfg.sweep_values()
    grid = cfg.grid() if (with_oracle or oracle_only) else None
    rows = []
    for alpha, beta, gamma, m in itertools.product(*(values[k] for k in SWEEP_PARAMS)):
        problem = cfg.problem(alpha=alpha, beta=beta, gamma=gamma, m=m)
        label = classify_regime(problem).label.value
        closed = {s: None for s in SCENARIOS}
        gap = None
        if not oracle_only:
            closed = _closed_forms(problem)
            gap = gap_I_II(problem)
        oracle = {s: None for s in SCENARIOS}
        if grid is not None:
            oracle = {s: oracle_max(s, problem, grid) for s in SCENARIOS}
        rows.append([
            _fmt(alpha), _fmt(beta), _fmt(gamma), str(m), label,
            *(_fmt(closed[s]) for s in SCENARIOS),
            *(_fmt(oracle[s]) for s in SCENARIOS),
            _fmt(gap),
        ])
    return rows


def cmd_sweep(cfg: RunConfig, args: argparse.Namespace) -> str:
    if not cfg.sweep:
        raise CliError("sweep needs at least one --sweep-* range", EXIT_VALIDATION)
    try:
        rows = sweep_rows(cfg, args.oracle, args.oracle_only)
    except DomainError as exc:
        raise CliError(str(exc), EXIT_VALIDATION) from exc
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    writer.writerows(rows)
    return buf.getvalue()


def _dump_json(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


COMMANDS = {
    "classify": cmd_classify,
    "maxima": cmd_maxima,
    "simulate": cmd_simulate,
    "sweep": cmd_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON config file")
    common.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--oracle", action="store_true", help="also run the grid oracle")
    common.add_argument("--oracle-only", action="store_true",
                        help="report oracle values only (allows unequal priors)")
    common.add_argument("--seed", type=int)
    common.add_argument("--alpha", type=float)
    common.add_argument("--beta", type=float)
    common.add_argument("--gamma", type=float)
    common.add_argument("--m", type=int)
    common.add_argument("--priors", type=float, nargs=2, metavar=("P1", "P2"))
    common.add_argument("--grid-resolution", type=int)
    common.add_argument("--shots", type=int)
    for name in SWEEP_PARAMS:
        common.add_argument(f"--sweep-{name}", nargs=3, metavar=("START", "STOP", "STEPS"))

    parser = argparse.ArgumentParser(
        prog="probclone",
        description="Success maxima of probabilistic cloning with two auxiliary systems.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    classify = sub.add_parser("classify", parents=[common], help="regime of one instance")
    classify.add_argument("--format", choices=("text", "json"), default="text")
    sub.add_parser("maxima", parents=[common], help="closed-form (and oracle) maxima as JSON")
    sub.add_parser("simulate", parents=[common], help="Monte Carlo runs at the optimal stage rates")
    sub.add_parser("sweep", parents=[common], help="CSV table over a parameter grid")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _load_config(args)
        text = COMMANDS[args.command](cfg, args)
    except CliError as exc:
        print(f"probclone: error: {exc}", file=sys.stderr)
        return exc.code
    except DomainError as exc:
        print(f"probclone: error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION

    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"probclone: error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
