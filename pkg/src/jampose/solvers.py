"""Pose selection strategies.

Every strategy maximizes the minimum SINR over the legitimate nodes:

``optimal``            position, roll and pitch searched jointly (5-D)
``zero_interference``  position only; antenna null on the jammer
``max_gain``           position only; axis orthogonal to both node directions
``vertical``           position only; axis locked to ``[0, 0, 1]``

Search is multi-start simulated annealing followed by a bounded
Nelder-Mead polish of each chain's best point. Each chain draws from its own
generator seeded by ``(seed, chain index)``, so results do not depend on how
chains are scheduled. :func:`grid_oracle` is an exhaustive reference used for
verification only.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import minimize

from . import channel
from .channel import Pose
from .errors import ConfigurationError, InfeasibleOrientationError, StrategyInapplicableError
from .geometry import EulerAngles
from .scenario import STRATEGIES, Scenario

HALF_PI = math.pi / 2
DEFAULT_GRID_CAP = 10**8


@dataclass(frozen=True)
class SolverConfig:
    """Tuning of the annealing + polish search.

    ``initial_temperature`` is expressed relative to the unjammed SINR of the
    nearest legitimate node seen from the box center. Proposal widths start at
    ``step_fraction`` of the box width per axis and shrink with the square
    root of the temperature, down to ``min_step_fraction``.
    """

    seed: int = 0
    restarts: int = 16
    anneal_iterations: int = 2000
    initial_temperature: float = 1.0
    cooling_factor: float = 0.995
    polish_tolerance: float = 1e-6
    max_polish_evals: int = 20000
    step_fraction: float = 0.1
    min_step_fraction: float = 1e-4

    def __post_init__(self):
        if self.restarts < 1:
            raise ConfigurationError("restarts must be >= 1")
        if self.anneal_iterations < 0:
            raise ConfigurationError("anneal_iterations must be >= 0")
        if not 0 < self.cooling_factor < 1:
            raise ConfigurationError("cooling_factor must lie in (0, 1)")
        if not self.initial_temperature > 0:
            raise ConfigurationError("initial_temperature must be > 0")
        if not self.polish_tolerance > 0:
            raise ConfigurationError("polish_tolerance must be > 0")
        if self.max_polish_evals < 0:
            raise ConfigurationError("max_polish_evals must be >= 0")
        if not 0 < self.min_step_fraction <= self.step_fraction:
            raise ConfigurationError("need 0 < min_step_fraction <= step_fraction")


@dataclass(frozen=True, eq=False)
class Solution:
    pose: Pose
    per_node_sinr: tuple
    objective: float
    strategy: str
    evals: int
    feasible: bool = True

    @property
    def objective_db(self) -> float:
        return 10 * math.log10(self.objective) if self.objective > 0 else -math.inf


@dataclass
class _Problem:
    strategy: str
    lower: np.ndarray
    upper: np.ndarray
    batch: Callable[[np.ndarray], np.ndarray]
    finish: Callable[[np.ndarray, int], Solution]
    # optional deterministic starting points polished alongside the chains
    extra_starts: list = field(default_factory=list)


# --------------------------------------------------------------------------
# problem definitions


def _check_box(scenario: Scenario):
    box = scenario.box
    if not (box.z_min > 0 and np.all(box.upper >= box.lower)):
        raise ConfigurationError(
            f"search box must be non-empty with z_min > 0, got {box!r}"
        )


def _position_problem(scenario, strategy, batch, sinr, pose_of) -> _Problem:
    def finish(x, evals):
        pos = np.array(x[:3], dtype=float)
        pose = pose_of(pos)
        per_node = tuple(float(v) for v in sinr(pos, pose))
        return Solution(pose, per_node, min(per_node), strategy, evals, True)

    return _Problem(
        strategy,
        scenario.box.lower,
        scenario.box.upper,
        lambda X: batch(scenario, X),
        finish,
    )


def _zi_problem(scenario):
    return _position_problem(
        scenario,
        "zero_interference",
        channel.min_sinr_zero_interference_batch,
        lambda pos, pose: channel.sinr_zero_interference(scenario, pos),
        lambda pos: channel.pose_for_axis(pos, channel.zero_interference_axis(scenario, pos)),
    )


def _mg_problem(scenario):
    if scenario.n_nodes != 2:
        raise StrategyInapplicableError(
            f"max_gain needs exactly N = 2 legitimate nodes, scenario has {scenario.n_nodes}"
        )
    return _position_problem(
        scenario,
        "max_gain",
        channel.min_sinr_max_gain_batch,
        lambda pos, pose: channel.sinr_max_gain(scenario, pos),
        lambda pos: channel.pose_for_axis(pos, channel.max_gain_axis(scenario, pos)),
    )


def _vertical_problem(scenario):
    return _position_problem(
        scenario,
        "vertical",
        channel.min_sinr_vertical_batch,
        lambda pos, pose: channel.sinr_exact(scenario, pose),
        lambda pos: Pose(pos, EulerAngles(0.0, 0.0, 0.0)),
    )


def _optimal_problem(scenario):
    lower = np.concatenate([scenario.box.lower, [-HALF_PI, -HALF_PI]])
    upper = np.concatenate([scenario.box.upper, [HALF_PI, HALF_PI]])

    def batch(X):
        X = np.asarray(X, dtype=float)
        return channel.min_sinr_pose_batch(scenario, X[..., :3], X[..., 3], X[..., 4])

    def finish(x, evals):
        pose = Pose(x[:3], EulerAngles(float(x[3]), float(x[4]), 0.0))
        per_node = tuple(float(v) for v in channel.sinr_exact(scenario, pose))
        return Solution(pose, per_node, min(per_node), "optimal", evals, True)

    return _Problem("optimal", lower, upper, batch, finish)


_PROBLEMS = {
    "optimal": _optimal_problem,
    "zero_interference": _zi_problem,
    "max_gain": _mg_problem,
    "vertical": _vertical_problem,
}


def _problem(scenario, strategy) -> _Problem:
    if strategy not in _PROBLEMS:
        raise ConfigurationError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    _check_box(scenario)
    return _PROBLEMS[strategy](scenario)


def _reference_scale(scenario) -> float:
    center = scenario.box.center
    d2 = np.min(np.sum((scenario.legit_nodes - center) ** 2, axis=1))
    return 1.0 / (scenario.powers.sigma2_over_p * max(d2, 1e-12))


# --------------------------------------------------------------------------
# search machinery


def _anneal(problem: _Problem, config: SolverConfig, scale: float):
    """Run all annealing chains in lockstep; returns per-chain best points."""
    lower, upper = problem.lower, problem.upper
    width = upper - lower
    dim = len(lower)
    rngs = [np.random.default_rng([config.seed, k]) for k in range(config.restarts)]
    x = np.array([lower + width * rng.random(dim) for rng in rngs])
    f = problem.batch(x) / scale
    best_x, best_f = x.copy(), f.copy()
    evals = len(x)
    temp = config.initial_temperature
    for _ in range(config.anneal_iterations):
        frac = max(config.step_fraction * math.sqrt(temp / config.initial_temperature),
                   config.min_step_fraction)
        noise = np.array([rng.standard_normal(dim) for rng in rngs])
        u = np.array([rng.random() for rng in rngs])
        cand = np.clip(x + frac * width * noise, lower, upper)
        fc = problem.batch(cand) / scale
        evals += len(cand)
        with np.errstate(invalid="ignore", over="ignore"):
            delta = fc - f
            accept = (delta >= 0) | (u < np.exp(delta / temp))
        x[accept] = cand[accept]
        f[accept] = fc[accept]
        better = f > best_f
        best_x[better] = x[better]
        best_f[better] = f[better]
        temp *= config.cooling_factor
    return best_x, best_f, evals


def _polish(problem: _Problem, x0: np.ndarray, scale: float, config: SolverConfig):
    """Bounded Nelder-Mead, restarted from its own result until it stalls."""
    bounds = list(zip(problem.lower, problem.upper))
    width = problem.upper - problem.lower
    evals = 0

    def neg(x):
        v = problem.batch(np.asarray(x)[None, :])[0] / scale
        return -v if np.isfinite(v) else np.inf

    x = np.clip(np.asarray(x0, dtype=float), problem.lower, problem.upper)
    fx = neg(x)
    evals += 1
    tol = config.polish_tolerance / scale
    step = 0.05
    while evals < config.max_polish_evals:
        simplex = [x]
        for k in range(len(x)):
            v = x.copy()
            h = step * width[k] if width[k] > 0 else 0.0
            v[k] = v[k] + h if v[k] + h <= problem.upper[k] else v[k] - h
            simplex.append(v)
        res = minimize(
            neg, x, method="Nelder-Mead", bounds=bounds,
            options={
                "initial_simplex": np.array(simplex),
                "xatol": 1e-10, "fatol": 1e-3 * tol,
                "maxfev": config.max_polish_evals - evals,
                "adaptive": len(x) > 3,
            },
        )
        evals += res.nfev
        if not res.fun < fx:
            break
        gain = fx - res.fun
        x, fx = np.clip(res.x, problem.lower, problem.upper), res.fun
        if gain < tol:
            break
        step = max(step * 0.5, 1e-6)
    return x, -fx, evals


def _search(problem: _Problem, config: SolverConfig, scenario: Scenario) -> Solution:
    scale = _reference_scale(scenario)
    starts, start_f, evals = _anneal(problem, config, scale)
    starts = list(starts) + [np.asarray(s, dtype=float) for s in problem.extra_starts]
    best_x, best_f = None, -np.inf
    for x0 in starts:
        x, fx, n = _polish(problem, x0, scale, config)
        evals += n
        # strict comparison: earliest start wins ties
        if fx > best_f or best_x is None:
            best_x, best_f = x, fx
    if not np.isfinite(best_f):
        raise InfeasibleOrientationError(
            f"no admissible pose found for strategy {problem.strategy}"
        )
    return problem.finish(best_x, evals)


# --------------------------------------------------------------------------
# public strategies


def solve(scenario: Scenario, strategy: str, config: SolverConfig | None = None) -> Solution:
    """Dispatch on a strategy name (underscore form, see ``STRATEGIES``)."""
    config = config or SolverConfig()
    return _search(_problem(scenario, strategy), config, scenario)


def solve_optimal(scenario: Scenario, config: SolverConfig | None = None) -> Solution:
    """Joint position/roll/pitch search over the 5-D box."""
    return solve(scenario, "optimal", config)


def solve_zero_interference(scenario: Scenario, config: SolverConfig | None = None) -> Solution:
    return solve(scenario, "zero_interference", config)


def solve_max_gain(scenario: Scenario, config: SolverConfig | None = None) -> Solution:
    """Position search with both legitimate links at unit antenna gain (N = 2)."""
    return solve(scenario, "max_gain", config)


def solve_vertical(scenario: Scenario, config: SolverConfig | None = None) -> Solution:
    """Position search for an antenna locked to the vertical (hovering drone)."""
    return solve(scenario, "vertical", config)


# --------------------------------------------------------------------------
# exhaustive oracle


def grid_oracle(
    scenario: Scenario,
    strategy: str,
    resolution: Sequence[int],
    cap: int = DEFAULT_GRID_CAP,
    chunk: int = 1 << 16,
) -> Solution:
    """Best point of a regular grid over the strategy's search space.

    ``resolution`` gives per-axis counts: three for position strategies, five
    (x, y, z, roll, pitch) for ``optimal``; a trailing pair may be omitted for
    ``optimal`` and then defaults to 9 x 9. A count of 1 samples the axis
    midpoint. Ties go to the first point in lexicographic scan order.
    """
    problem = _problem(scenario, strategy)
    res = [int(r) for r in resolution]
    dim = len(problem.lower)
    if strategy == "optimal" and len(res) == 3:
        res += [9, 9]
    if len(res) != dim or any(r < 1 for r in res):
        raise ConfigurationError(f"{strategy} grid needs {dim} positive counts, got {resolution}")
    total = math.prod(res)
    if total > cap:
        raise ConfigurationError(f"grid cap exceeded: {total} points > {cap}")
    axes = [
        np.array([0.5 * (lo + hi)]) if r == 1 else np.linspace(lo, hi, r)
        for lo, hi, r in zip(problem.lower, problem.upper, res)
    ]
    best_idx, best_f = 0, -np.inf
    for start in range(0, total, chunk):
        flat = np.arange(start, min(start + chunk, total))
        idx = np.unravel_index(flat, res)
        X = np.stack([ax[i] for ax, i in zip(axes, idx)], axis=-1)
        f = problem.batch(X)
        k = int(np.argmax(f))
        if f[k] > best_f:
            best_idx, best_f = start + k, f[k]
    if not np.isfinite(best_f):
        raise InfeasibleOrientationError("every grid point is degenerate")
    idx = np.unravel_index(best_idx, res)
    x = np.array([ax[i] for ax, i in zip(axes, idx)])
    return problem.finish(x, total)
