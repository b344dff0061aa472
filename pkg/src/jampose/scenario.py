"""Scenario model, validation and file I/O.

Scenario files are JSON::

    {
      "name": "paper",
      "legit_nodes": [[0, 0, 0], [0, 50, 0]],
      "jammer": [17, 15, 4],
      "sigma2_over_p": 0.001,
      "pm_over_p": 1.0,
      "z_bounds": [8, 30],
      "box": [x_lo, x_hi, y_lo, y_hi]        # optional
    }

Results are written as CSV, one row per solve (see :data:`RESULT_COLUMNS`).
"""
from __future__ import annotations

import csv
import json
import math
import os
import tempfile
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path
from typing import Sequence

import numpy as np

from .channel import PowerParams
from .errors import ScenarioValidationError
from .geometry import EPS_COLOCATE

STRATEGIES = ("optimal", "zero_interference", "max_gain", "vertical")

RESULT_COLUMNS = (
    "pm_over_p", "strategy", "x", "y", "z", "roll", "pitch",
    "min_sinr", "min_sinr_db", "evals",
)

MIN_HORIZONTAL_SPAN = 10.0
BOX_MARGIN = 0.5


@dataclass(frozen=True)
class SearchBox:
    """Axis-aligned feasible region for the base-station position (meters)."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float
    z_min: float
    z_max: float

    def __post_init__(self):
        for lo, hi, axis in self._pairs():
            if not (math.isfinite(lo) and math.isfinite(hi)):
                raise ScenarioValidationError(f"non-finite {axis} bounds")
            if lo > hi:
                raise ScenarioValidationError(f"inverted {axis} bounds: [{lo}, {hi}]")
        if not self.z_min >= 0:
            raise ScenarioValidationError(f"z_min must be >= 0, got {self.z_min}")

    def _pairs(self):
        return (
            (self.x_min, self.x_max, "x"),
            (self.y_min, self.y_max, "y"),
            (self.z_min, self.z_max, "z"),
        )

    @property
    def lower(self) -> np.ndarray:
        return np.array([self.x_min, self.y_min, self.z_min])

    @property
    def upper(self) -> np.ndarray:
        return np.array([self.x_max, self.y_max, self.z_max])

    @property
    def center(self) -> np.ndarray:
        return 0.5 * (self.lower + self.upper)

    def contains(self, p) -> bool:
        p = np.asarray(p, dtype=float)
        return bool(np.all(p >= self.lower) and np.all(p <= self.upper))


def default_box(points, z_bounds) -> SearchBox:
    """Node bounding box grown by half its span on each side.

    Each horizontal span is first widened (about its center) to at least
    ``MIN_HORIZONTAL_SPAN`` meters.
    """
    pts = np.asarray(points, dtype=float)
    limits = []
    for k in range(2):
        lo, hi = float(pts[:, k].min()), float(pts[:, k].max())
        span = hi - lo
        if span < MIN_HORIZONTAL_SPAN:
            mid = 0.5 * (lo + hi)
            lo, hi = mid - MIN_HORIZONTAL_SPAN / 2, mid + MIN_HORIZONTAL_SPAN / 2
            span = MIN_HORIZONTAL_SPAN
        limits += [lo - BOX_MARGIN * span, hi + BOX_MARGIN * span]
    return SearchBox(*limits, float(z_bounds[0]), float(z_bounds[1]))


@dataclass(frozen=True, eq=False)
class Scenario:
    """Legitimate nodes, jammer, power ratios and search box."""

    legit_nodes: np.ndarray
    jammer: np.ndarray
    powers: PowerParams
    box: SearchBox
    name: str = "scenario"

    def __post_init__(self):
        nodes = np.array(self.legit_nodes, dtype=float)
        if nodes.ndim != 2 or nodes.shape[1] != 3 or len(nodes) == 0:
            raise ScenarioValidationError("legit_nodes must be a non-empty list of [x, y, z]")
        jammer = np.array(self.jammer, dtype=float)
        if jammer.shape != (3,):
            raise ScenarioValidationError("jammer must be [x, y, z]")
        if not (np.all(np.isfinite(nodes)) and np.all(np.isfinite(jammer))):
            raise ScenarioValidationError("node positions must be finite")
        pts = np.vstack([nodes, jammer])
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if np.linalg.norm(pts[i] - pts[j]) <= EPS_COLOCATE:
                    raise ScenarioValidationError(
                        f"duplicate node position {pts[i].tolist()} (entries {i} and {j})"
                    )
        nodes.setflags(write=False)
        jammer.setflags(write=False)
        object.__setattr__(self, "legit_nodes", nodes)
        object.__setattr__(self, "jammer", jammer)

    @property
    def n_nodes(self) -> int:
        return len(self.legit_nodes)

    def with_pm(self, pm_over_p: float) -> "Scenario":
        return replace(self, powers=replace(self.powers, pm_over_p=float(pm_over_p)))

    def __eq__(self, other):
        if not isinstance(other, Scenario):
            return NotImplemented
        return (
            np.array_equal(self.legit_nodes, other.legit_nodes)
            and np.array_equal(self.jammer, other.jammer)
            and self.powers == other.powers
            and self.box == other.box
            and self.name == other.name
        )

    def to_dict(self) -> dict:
        b = self.box
        return {
            "name": self.name,
            "legit_nodes": self.legit_nodes.tolist(),
            "jammer": self.jammer.tolist(),
            "sigma2_over_p": self.powers.sigma2_over_p,
            "pm_over_p": self.powers.pm_over_p,
            "z_bounds": [b.z_min, b.z_max],
            "box": [b.x_min, b.x_max, b.y_min, b.y_max],
        }


@dataclass(frozen=True)
class SweepSpec:
    """Ascending jamming ratios and the strategies to run at each."""

    pm_over_p_values: tuple
    strategies: tuple = STRATEGIES

    def __post_init__(self):
        values = tuple(float(v) for v in self.pm_over_p_values)
        if not values:
            raise ScenarioValidationError("sweep needs at least one pm_over_p value")
        if any(not (v >= 0 and math.isfinite(v)) for v in values):
            raise ScenarioValidationError("pm_over_p values must be finite and >= 0")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ScenarioValidationError("pm_over_p values must be strictly increasing")
        strategies = tuple(self.strategies)
        unknown = set(strategies) - set(STRATEGIES)
        if unknown:
            raise ScenarioValidationError(f"unknown strategies: {sorted(unknown)}")
        object.__setattr__(self, "pm_over_p_values", values)
        object.__setattr__(self, "strategies", strategies)


def _vec(value, field_name):
    try:
        arr = np.asarray(value, dtype=float)
    except (TypeError, ValueError):
        raise ScenarioValidationError(f"field '{field_name}': expected numbers") from None
    if arr.shape != (3,):
        raise ScenarioValidationError(f"field '{field_name}': expected [x, y, z]")
    return arr


def _number(data, key, default=None):
    if key not in data:
        if default is None:
            raise ScenarioValidationError(f"missing required field '{key}'")
        return default
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioValidationError(f"field '{key}': expected a number, got {value!r}")
    return float(value)


def scenario_from_dict(data: dict) -> Scenario:
    if not isinstance(data, dict):
        raise ScenarioValidationError("scenario must be a JSON object")
    nodes = data.get("legit_nodes")
    if not isinstance(nodes, list) or not nodes:
        raise ScenarioValidationError("field 'legit_nodes': need a non-empty list of [x, y, z]")
    nodes = np.array([_vec(n, f"legit_nodes[{i}]") for i, n in enumerate(nodes)])
    if "jammer" not in data:
        raise ScenarioValidationError("missing required field 'jammer'")
    jammer = _vec(data["jammer"], "jammer")
    try:
        powers = PowerParams(
            pm_over_p=_number(data, "pm_over_p", 0.0),
            sigma2_over_p=_number(data, "sigma2_over_p"),
        )
    except ValueError as exc:
        if isinstance(exc, ScenarioValidationError):
            raise
        raise ScenarioValidationError(str(exc)) from None
    z_bounds = data.get("z_bounds")
    if not (isinstance(z_bounds, list) and len(z_bounds) == 2):
        raise ScenarioValidationError("field 'z_bounds': expected [z_lo, z_hi]")
    z_lo, z_hi = (float(z) for z in z_bounds)
    if data.get("box") is None:
        box = default_box(np.vstack([nodes, jammer]), (z_lo, z_hi))
    else:
        xy = data["box"]
        if not (isinstance(xy, list) and len(xy) == 4):
            raise ScenarioValidationError("field 'box': expected [x_lo, x_hi, y_lo, y_hi]")
        box = SearchBox(*(float(v) for v in xy), z_lo, z_hi)
    return Scenario(nodes, jammer, powers, box, str(data.get("name", "scenario")))


def load_scenario(path) -> Scenario:
    """Read and validate a scenario JSON file."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ScenarioValidationError(f"{path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioValidationError(
            f"{path}:{exc.lineno}:{exc.colno}: invalid JSON ({exc.msg})"
        ) from None
    try:
        return scenario_from_dict(data)
    except ScenarioValidationError as exc:
        raise ScenarioValidationError(f"{path}: {exc}") from None


def save_scenario(path, scenario: Scenario) -> None:
    Path(path).write_text(json.dumps(scenario.to_dict(), indent=2) + "\n")


def builtin_paper_scenario(pm_over_p: float = 1.0) -> Scenario:
    """Two ground nodes 50 m apart and a jammer at (17, 15, 4)."""
    nodes = np.array([[0.0, 0.0, 0.0], [0.0, 50.0, 0.0]])
    jammer = np.array([17.0, 15.0, 4.0])
    box = default_box(np.vstack([nodes, jammer]), (8.0, 30.0))
    powers = PowerParams(pm_over_p=float(pm_over_p), sigma2_over_p=0.001)
    return Scenario(nodes, jammer, powers, box, "paper")


def paper_scenario_path() -> Path:
    """Location of the bundled ``paper.json``."""
    return Path(str(resources.files("jampose") / "data" / "paper.json"))


# --------------------------------------------------------------------------
# results CSV


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def solution_row(pm_over_p: float, solution) -> list[str]:
    x, y, z = solution.pose.position
    roll, pitch, _ = solution.pose.angles
    obj = solution.objective
    db = 10.0 * math.log10(obj) if obj > 0 else -math.inf
    return [
        _fmt(pm_over_p), solution.strategy,
        _fmt(x), _fmt(y), _fmt(z), _fmt(roll), _fmt(pitch),
        _fmt(obj), _fmt(db), str(int(solution.evals)),
    ]


def _atomic_write(path: Path, write) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent or ".")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            write(fh)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def save_solution(path, solutions: Sequence, sweep: SweepSpec | None = None) -> None:
    """Write ``(pm_over_p, Solution)`` pairs as the results CSV.

    ``solutions`` holds pairs ``(pm_over_p, solution)``. Rows are sorted by
    jamming ratio, then strategy name. The file is replaced atomically.
    """
    rows = sorted(solutions, key=lambda item: (float(item[0]), item[1].strategy))
    if sweep is not None:
        allowed = set(sweep.pm_over_p_values)
        stray = [pm for pm, _ in rows if float(pm) not in allowed]
        if stray:
            raise ScenarioValidationError(f"rows with pm_over_p outside the sweep: {stray}")

    def write(fh):
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(RESULT_COLUMNS)
        for pm, sol in rows:
            w.writerow(solution_row(pm, sol))

    try:
        _atomic_write(Path(path), write)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write results to {path}: {exc.strerror}") from exc


def read_results(path) -> list[dict]:
    """Parse a results CSV back into dicts with float/int fields."""
    out = []
    with open(path, newline="") as fh:
        for rec in csv.DictReader(fh):
            row = {k: float(v) for k, v in rec.items() if k not in ("strategy", "evals")}
            row["strategy"] = rec["strategy"]
            row["evals"] = int(rec["evals"])
            out.append(row)
    return out


