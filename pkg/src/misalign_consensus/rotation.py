"""Planar rotation matrices and per-agent orientation-bias profiles."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi


def normalize_angle(theta: float) -> float:
    """Map an angle to the canonical interval (-pi, pi], boundary to +pi."""
    if not math.isfinite(theta):
        raise ValueError(f"angle must be finite, got {theta!r}")
    r = math.remainder(theta, TWO_PI)
    if r <= -math.pi:
        r += TWO_PI
    return r


@dataclass(frozen=True)
class AngleProfile:
    """One orientation-bias angle per agent, in radians.

    Angles are normalized to (-pi, pi] on construction.
    """

    theta: tuple[float, ...]

    def __init__(self, theta) -> None:
        object.__setattr__(
            self, "theta", tuple(normalize_angle(float(t)) for t in theta)
        )

    def __len__(self) -> int:
        return len(self.theta)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.theta)


def rot(theta: float) -> np.ndarray:
    """2x2 rotation matrix [[cos, -sin], [sin, cos]] for a finite angle."""
    if not math.isfinite(theta):
        raise ValueError(f"angle must be finite, got {theta!r}")
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def block_rotation(profile: AngleProfile) -> np.ndarray:
    """Block-diagonal matrix with one 2x2 rotation block per agent (2n x 2n)."""
    n = len(profile)
    out = np.zeros((2 * n, 2 * n))
    for i, t in enumerate(profile.theta):
        out[2 * i : 2 * i + 2, 2 * i : 2 * i + 2] = rot(t)
    return out


def to_local_frame(phi: float, z) -> np.ndarray:
    """Express a displacement given in the global frame in a frame rotated by ``phi``.

    Applies the inverse rotation: the result is ``rot(-phi) @ z``.
    """
    z = np.asarray(z, dtype=float)
    if not np.all(np.isfinite(z)):
        raise ValueError("displacement must be finite")
    return rot(-phi) @ z
