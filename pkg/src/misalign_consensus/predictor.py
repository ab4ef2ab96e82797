"""Closed-form prediction of the consensus point.

The quantity sum_i rot(theta_i)^T p_i is constant along every trajectory,
so when the agents do converge to a common point that point is pinned down
by the initial conditions alone: invert the summed transposed rotations
and apply them to the conserved value.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PredictionUnavailableError
from .graph import Graph, is_connected
from .rotation import AngleProfile, rot

# Determinant guard for the closed-form 2x2 inversion.
SINGULAR_TOL = 1e-12


@dataclass(frozen=True)
class ConsensusPrediction:
    """Predicted meeting point with the ingredients that produced it.

    ``extrapolated`` is set when some misalignment cosine is non-positive:
    the formula then rests on observed convergence rather than on the
    all-positive-cosine guarantee.
    """

    point: np.ndarray
    mixing: np.ndarray
    conserved_value: np.ndarray
    extrapolated: bool = False


def conserved_functional(profile: AngleProfile, p) -> np.ndarray:
    """Evaluate sum_i rot(theta_i)^T p_i, the trajectory invariant."""
    p = np.asarray(p, dtype=float).ravel()
    if p.size != 2 * len(profile):
        raise ValueError(
            f"state has {p.size} components but profile has {len(profile)} agents"
        )
    out = np.zeros(2)
    for i, t in enumerate(profile.theta):
        out += rot(t).T @ p[2 * i : 2 * i + 2]
    return out


def mixing_sum(profile: AngleProfile) -> np.ndarray:
    """Sum of transposed per-agent rotations (a 2x2 matrix)."""
    a = float(np.sum(np.cos(profile.as_array())))
    b = float(np.sum(np.sin(profile.as_array())))
    return np.array([[a, b], [-b, a]])


def consensus_point(
    g: Graph,
    profile: AngleProfile,
    p0,
    allow_beyond_hypothesis: bool = False,
) -> ConsensusPrediction:
    """Predict the common point the agents converge to.

    Requires a connected graph.  When some cosine is non-positive the
    guarantee behind the formula no longer applies; pass
    ``allow_beyond_hypothesis=True`` (e.g. backed by a spectral Consensus
    verdict) to compute the prediction anyway, flagged as extrapolated.
    """
    if len(profile) != g.n:
        raise ValueError(
            f"profile has {len(profile)} angles but graph has {g.n} agents"
        )
    if not is_connected(g):
        raise PredictionUnavailableError(
            "graph is disconnected: components evolve independently, so no "
            "single consensus point exists"
        )
    cosines = np.cos(profile.as_array())
    beyond = not bool(np.all(cosines > 0.0))
    if beyond and not allow_beyond_hypothesis:
        raise PredictionUnavailableError(
            "some misalignment cosine is non-positive; prediction requires "
            "independent evidence of convergence (allow_beyond_hypothesis)"
        )
    w = mixing_sum(profile)
    det = w[0, 0] * w[1, 1] - w[0, 1] * w[1, 0]
    if abs(det) < SINGULAR_TOL:
        raise PredictionUnavailableError(
            f"summed rotations are singular (det {det:.3e}); prediction unavailable"
        )
    mixing = np.array([[w[1, 1], -w[0, 1]], [-w[1, 0], w[0, 0]]]) / det
    conserved = conserved_functional(profile, p0)
    return ConsensusPrediction(mixing @ conserved, mixing, conserved, beyond)
