"""Antenna axis geometry.

Positions and directions are plain ``numpy`` arrays of shape ``(3,)`` in the
world frame. Orientation is described by roll/pitch/yaw; the antenna axis is
the image of the body z-axis under those angles.
"""
from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import DegenerateGeometryError, InvalidDirectionError

#: Points closer than this (meters) are treated as colocated.
EPS_COLOCATE = 1e-6
#: Tolerance on the norm of a vector used as a direction.
UNIT_TOL = 1e-9


class EulerAngles(NamedTuple):
    """Roll, pitch and yaw in radians."""

    roll: float = 0.0
    pitch: float = 0.0
    yaw: float = 0.0

    def is_feasible(self) -> bool:
        half_pi = math.pi / 2
        return abs(self.roll) <= half_pi and abs(self.pitch) <= half_pi


def as_vec3(v) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {arr.shape}")
    return arr


def orientation_vector(angles: EulerAngles) -> np.ndarray:
    """Unit antenna axis for the given roll, pitch and yaw."""
    phi, theta, psi = angles
    cphi, sphi = math.cos(phi), math.sin(phi)
    cth, sth = math.cos(theta), math.sin(theta)
    cpsi, spsi = math.cos(psi), math.sin(psi)
    return np.array([
        cphi * sth * cpsi + sphi * spsi,
        cphi * sth * spsi - sphi * cpsi,
        cphi * cth,
    ])


def orientation_vectors(roll, pitch) -> np.ndarray:
    """Batched axis map with yaw fixed to zero; returns shape ``(..., 3)``."""
    roll = np.asarray(roll, dtype=float)
    pitch = np.asarray(pitch, dtype=float)
    cphi = np.cos(roll)
    return np.stack([cphi * np.sin(pitch), -np.sin(roll), cphi * np.cos(pitch)], axis=-1)


def angles_from_direction(direction) -> EulerAngles:
    """Invert :func:`orientation_vector` with yaw fixed to zero.

    Roll is the principal arcsine, so ``|roll| <= pi/2`` always holds. Pitch
    lies in ``(-pi, pi]`` and exceeds ``pi/2`` in magnitude only for axes
    pointing below the horizon. On the ``[0, +-1, 0]`` rays pitch is
    arbitrary and is reported as 0.
    """
    d = as_vec3(direction)
    norm = float(np.linalg.norm(d))
    if not abs(norm - 1.0) <= UNIT_TOL:
        raise InvalidDirectionError(f"direction must be unit length, |d| = {norm!r}")
    x, y, z = (float(c) for c in d)
    # same as asin(-y) on unit vectors, without asin's precision loss near |y| = 1
    roll = math.atan2(-y, math.hypot(x, z))
    if math.hypot(x, z) <= UNIT_TOL:
        pitch = 0.0
    else:
        # adding +0.0 clears signed zeros so atan2 stays in (-pi, pi]
        pitch = math.atan2(x + 0.0, z + 0.0)
        if pitch == -math.pi:
            pitch = math.pi
    return EulerAngles(roll, pitch, 0.0)


def unit(v) -> np.ndarray:
    v = as_vec3(v)
    n = float(np.linalg.norm(v))
    if n <= EPS_COLOCATE:
        raise DegenerateGeometryError("cannot normalize a (near) zero vector")
    return v / n


def aoa_cosine(target, bs_position, antenna_dir) -> float:
    """Cosine between the antenna axis and the line from the base station to ``target``."""
    delta = as_vec3(target) - as_vec3(bs_position)
    dist = float(np.linalg.norm(delta))
    if dist <= EPS_COLOCATE:
        raise DegenerateGeometryError(
            f"target and base station are colocated (distance {dist:.3g} m)"
        )
    c = float(np.dot(delta / dist, as_vec3(antenna_dir)))
    return min(1.0, max(-1.0, c))
