"""Dipole gains and SINR of the legitimate uplinks under jamming.

All powers are normalized by the legitimate transmit power ``P`` so only
``P_M / P`` and ``sigma^2 / P`` appear. Path loss is plain ``1 / d**2``.

The scalar functions follow the model term by term and are the reference
used by the tests. The ``*_batch`` kernels evaluate the same objectives on
arrays of candidate poses for the solvers and the grid oracle; they return
``-inf`` where the pose is degenerate instead of raising.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateGeometryError,
    InfeasibleOrientationError,
    StrategyInapplicableError,
)
from .geometry import (
    EPS_COLOCATE,
    EulerAngles,
    angles_from_direction,
    aoa_cosine,
    as_vec3,
    orientation_vector,
    orientation_vectors,
    unit,
)

#: Cross products shorter than this are treated as parallel node directions.
EPS_PARALLEL = 1e-12

VERTICAL_AXIS = np.array([0.0, 0.0, 1.0])


@dataclass(frozen=True)
class PowerParams:
    """Power ratios relative to the legitimate transmit power."""

    pm_over_p: float
    sigma2_over_p: float
    p_legit: float = 1.0

    def __post_init__(self):
        if not self.sigma2_over_p > 0:
            raise ValueError(f"sigma2_over_p must be > 0, got {self.sigma2_over_p!r}")
        if not self.pm_over_p >= 0:
            raise ValueError(f"pm_over_p must be >= 0, got {self.pm_over_p!r}")
        if self.p_legit != 1.0:
            raise ValueError("powers are normalized: p_legit must be 1")


@dataclass(frozen=True, eq=False)
class Pose:
    """Base-station position and attitude (yaw is always zero)."""

    position: np.ndarray
    angles: EulerAngles = field(default_factory=EulerAngles)

    def __post_init__(self):
        object.__setattr__(self, "position", as_vec3(self.position).copy())
        angles = EulerAngles(*(float(a) for a in self.angles))
        object.__setattr__(self, "angles", angles)
        if angles.yaw != 0.0:
            raise InfeasibleOrientationError("yaw must be 0")
        if not angles.is_feasible():
            raise InfeasibleOrientationError(
                f"roll/pitch outside [-pi/2, pi/2]: {angles.roll!r}, {angles.pitch!r}"
            )

    @property
    def axis(self) -> np.ndarray:
        return orientation_vector(self.angles)

    def __eq__(self, other):
        if not isinstance(other, Pose):
            return NotImplemented
        return np.array_equal(self.position, other.position) and self.angles == other.angles

    def __repr__(self):
        x, y, z = self.position
        return f"Pose(position=[{x!r}, {y!r}, {z!r}], angles={tuple(self.angles)!r})"


def dipole_gain(gamma):
    """Normalized small-dipole power pattern ``sin(gamma)**2``."""
    return np.sin(gamma) ** 2


def _gain_from_axis(target, position, axis) -> float:
    return 1.0 - aoa_cosine(target, position, axis) ** 2


def link_gain(target, pose: Pose) -> float:
    """Antenna power gain towards ``target`` for the given pose."""
    return _gain_from_axis(target, pose.position, pose.axis)


def _distance(a, b) -> float:
    d = float(np.linalg.norm(as_vec3(a) - as_vec3(b)))
    if d <= EPS_COLOCATE:
        raise DegenerateGeometryError(f"colocated points at distance {d:.3g} m")
    return d


def sinr_for_axis(scenario, position, axis) -> list[float]:
    """Per-node SINR for an arbitrary unit antenna axis at ``position``.

    Unlike :func:`sinr_exact` no attitude constraint is imposed, so both
    signs of an axis can be evaluated.
    """
    position = as_vec3(position)
    powers = scenario.powers
    d_m = _distance(scenario.jammer, position)
    jam = _gain_from_axis(scenario.jammer, position, axis) * powers.pm_over_p / d_m**2
    denom = jam + powers.sigma2_over_p
    out = []
    for node in scenario.legit_nodes:
        d_i = _distance(node, position)
        out.append(_gain_from_axis(node, position, axis) / d_i**2 / denom)
    return out


def sinr_exact(scenario, pose: Pose) -> list[float]:
    """SINR of every legitimate link for a full pose."""
    return sinr_for_axis(scenario, pose.position, pose.axis)


def _hemisphere(axis: np.ndarray) -> np.ndarray:
    # gains are even in the axis sign; keep z >= 0 so pitch stays within pi/2
    if axis[2] < 0:
        axis = -axis
    return axis + 0.0


def zero_interference_axis(scenario, position) -> np.ndarray:
    """Antenna axis whose null points at the jammer (upper-hemisphere sign)."""
    return _hemisphere(unit(as_vec3(scenario.jammer) - as_vec3(position)))


def max_gain_axis(scenario, position) -> np.ndarray:
    """Axis orthogonal to both node directions (N = 2), upper-hemisphere sign."""
    nodes = np.asarray(scenario.legit_nodes, dtype=float)
    if len(nodes) != 2:
        raise StrategyInapplicableError(
            f"maximum-gain orientation needs exactly N = 2 legitimate nodes, got {len(nodes)}"
        )
    u1 = unit(nodes[0] - as_vec3(position))
    u2 = unit(nodes[1] - as_vec3(position))
    n = np.cross(u1, u2)
    norm = float(np.linalg.norm(n))
    if norm <= EPS_PARALLEL:
        raise DegenerateGeometryError(
            "node directions are parallel; the cross-product orientation is undefined"
        )
    return _hemisphere(n / norm)


def pose_for_axis(position, axis) -> Pose:
    """Pose realizing ``axis`` or raise if neither sign is admissible."""
    for sign in (1.0, -1.0):
        angles = angles_from_direction(sign * np.asarray(axis))
        if angles.is_feasible():
            return Pose(position, angles)
    raise InfeasibleOrientationError(f"no admissible roll/pitch for axis {axis!r}")


def sinr_zero_interference(scenario, position) -> list[float]:
    """Per-node SINR with the antenna null on the jammer.

    The jammer term vanishes identically, so the result does not depend on
    ``pm_over_p``.
    """
    position = as_vec3(position)
    u_m = unit(as_vec3(scenario.jammer) - position)
    s2 = scenario.powers.sigma2_over_p
    out = []
    for node in scenario.legit_nodes:
        delta = as_vec3(node) - position
        d_i = _distance(node, position)
        c = min(1.0, max(-1.0, float(np.dot(delta / d_i, u_m))))
        out.append((1.0 - c * c) / (d_i**2 * s2))
    return out


def sinr_max_gain(scenario, position) -> list[float]:
    """Per-node SINR with the antenna axis orthogonal to both node directions."""
    position = as_vec3(position)
    n = max_gain_axis(scenario, position)
    powers = scenario.powers
    d_m = _distance(scenario.jammer, position)
    c = aoa_cosine(scenario.jammer, position, n)
    denom = (1.0 - c * c) * powers.pm_over_p / d_m**2 + powers.sigma2_over_p
    return [1.0 / _distance(node, position) ** 2 / denom for node in scenario.legit_nodes]


# --------------------------------------------------------------------------
# batched kernels: positions (..., 3), angles (...,) -> min SINR (...,)


def _rel(points: np.ndarray, positions: np.ndarray):
    """Unit directions and squared distances from positions to points."""
    delta = points[..., :, :] - positions[..., None, :]
    d2 = np.einsum("...k,...k->...", delta, delta)
    with np.errstate(divide="ignore", invalid="ignore"):
        u = delta / np.sqrt(d2)[..., None]
    return u, d2


def _gain(u: np.ndarray, axis: np.ndarray) -> np.ndarray:
    c = np.clip(np.einsum("...nk,...k->...n", u, axis), -1.0, 1.0)
    return 1.0 - c * c


def _finish(num: np.ndarray, denom: np.ndarray, bad: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        obj = np.min(num, axis=-1) / denom
    return np.where(bad, -np.inf, obj)


def _setup(scenario, positions):
    positions = np.asarray(positions, dtype=float)
    nodes = np.asarray(scenario.legit_nodes, dtype=float)
    jammer = np.asarray(scenario.jammer, dtype=float)[None, :]
    u, d2 = _rel(nodes, positions)
    um, dm2 = _rel(jammer, positions)
    eps2 = EPS_COLOCATE**2
    bad = np.any(d2 <= eps2, axis=-1) | (dm2[..., 0] <= eps2)
    return u, d2, um, dm2[..., 0], bad


def min_sinr_axis_batch(scenario, positions, axes) -> np.ndarray:
    u, d2, um, dm2, bad = _setup(scenario, positions)
    axes = np.asarray(axes, dtype=float)
    p = scenario.powers
    num = _gain(u, axes) / d2
    denom = _gain(um, axes)[..., 0] * p.pm_over_p / dm2 + p.sigma2_over_p
    return _finish(num, denom, bad)


def min_sinr_pose_batch(scenario, positions, roll, pitch) -> np.ndarray:
    """Objective of the full pose problem."""
    return min_sinr_axis_batch(scenario, positions, orientation_vectors(roll, pitch))


def min_sinr_vertical_batch(scenario, positions) -> np.ndarray:
    positions = np.asarray(positions, dtype=float)
    axes = np.broadcast_to(VERTICAL_AXIS, positions.shape)
    return min_sinr_axis_batch(scenario, positions, axes)


def min_sinr_zero_interference_batch(scenario, positions) -> np.ndarray:
    u, d2, um, dm2, bad = _setup(scenario, positions)
    gains = _gain(u, um[..., 0, :])
    return _finish(gains / d2, scenario.powers.sigma2_over_p, bad)


def min_sinr_max_gain_batch(scenario, positions) -> np.ndarray:
    if len(scenario.legit_nodes) != 2:
        raise StrategyInapplicableError(
            f"maximum-gain orientation needs exactly N = 2 legitimate nodes, "
            f"got {len(scenario.legit_nodes)}"
        )
    u, d2, um, dm2, bad = _setup(scenario, positions)
    n = np.cross(u[..., 0, :], u[..., 1, :])
    norm = np.sqrt(np.einsum("...k,...k->...", n, n))
    bad = bad | ~(norm > EPS_PARALLEL)
    with np.errstate(divide="ignore", invalid="ignore"):
        n = n / norm[..., None]
    p = scenario.powers
    denom = _gain(um, n)[..., 0] * p.pm_over_p / dm2 + p.sigma2_over_p
    return _finish(1.0 / d2, denom, bad)
