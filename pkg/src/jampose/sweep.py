"""Jamming-power sweeps over several strategies."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .scenario import Scenario, SweepSpec, save_solution
from .solvers import Solution, SolverConfig, solve

DEFAULT_PM_RANGE = (0.01, 1000.0, 11)


def default_pm_values() -> tuple:
    start, stop, count = DEFAULT_PM_RANGE
    return tuple(float(v) for v in np.geomspace(start, stop, count))


@dataclass(frozen=True)
class SweepResult:
    scenario_name: str
    rows: tuple  # (pm_over_p, strategy, Solution), sorted
    config: SolverConfig

    def objectives(self, strategy: str) -> list:
        return [sol.objective for pm, s, sol in self.rows if s == strategy]

    def pm_values(self) -> list:
        return sorted({pm for pm, _, _ in self.rows})

    def lookup(self, pm: float, strategy: str) -> Solution:
        for p, s, sol in self.rows:
            if p == pm and s == strategy:
                return sol
        raise KeyError((pm, strategy))

    def save(self, path, sweep: SweepSpec | None = None) -> None:
        save_solution(path, [(pm, sol) for pm, _, sol in self.rows], sweep)


def _run_point(args):
    scenario, pm, strategy, config = args
    return pm, strategy, solve(scenario.with_pm(pm), strategy, config)


def run_sweep(
    scenario: Scenario,
    spec: SweepSpec,
    config: SolverConfig | None = None,
    workers: int = 1,
) -> SweepResult:
    """Solve every (pm_over_p, strategy) pair.

    Points are independent, so ``workers > 1`` farms them out to processes;
    rows are sorted afterwards and the result does not depend on ``workers``.
    """
    config = config or SolverConfig()
    jobs = [(scenario, pm, s, config) for pm in spec.pm_over_p_values for s in spec.strategies]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_run_point, jobs))
    else:
        rows = [_run_point(job) for job in jobs]
    rows.sort(key=lambda r: (r[0], r[1]))
    return SweepResult(scenario.name, tuple(rows), config)
