"""Rotation-biased adjacency, out-degree, and Laplacian matrices.

Every agent applies its own planar rotation to the diffusive coupling it
implements, so edge weight blocks are ``a_ij * rot(theta_i)`` and the
resulting Laplacian is generally nonsymmetric.  The stacking convention is
agent-major throughout: state vectors read (x1, y1, x2, y2, ...).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import rotation
from .errors import InternalConsistencyError
from .graph import Graph, degrees, topology_laplacian
from .rotation import AngleProfile

# Structural self-check tolerance used by build(); violations indicate a
# construction bug, not bad input.
SELF_CHECK_TOL = 1e-12


def _check_lengths(g: Graph, profile: AngleProfile) -> None:
    if len(profile) != g.n:
        raise ValueError(
            f"profile has {len(profile)} angles but graph has {g.n} agents"
        )


def even_ones(n: int) -> np.ndarray:
    """(1, 0, 1, 0, ...) in R^{2n}: common x-displacement direction."""
    v = np.zeros(2 * n)
    v[0::2] = 1.0
    return v


def odd_ones(n: int) -> np.ndarray:
    """(0, 1, 0, 1, ...) in R^{2n}: common y-displacement direction."""
    v = np.zeros(2 * n)
    v[1::2] = 1.0
    return v


def adjacency(g: Graph, profile: AngleProfile) -> np.ndarray:
    """Block adjacency matrix: block (i, j) is ``a_ij * rot(theta_i)``.

    Nonzero blocks in row i all carry agent i's rotation, so the matrix is
    not block-symmetric whenever two connected agents disagree in angle.
    """
    _check_lengths(g, profile)
    n = g.n
    out = np.zeros((2 * n, 2 * n))
    for i, j in g.edges:
        out[2 * i : 2 * i + 2, 2 * j : 2 * j + 2] = rotation.rot(profile.theta[i])
        out[2 * j : 2 * j + 2, 2 * i : 2 * i + 2] = rotation.rot(profile.theta[j])
    return out


def out_degree(g: Graph, profile: AngleProfile) -> np.ndarray:
    """Block-diagonal out-degree matrix: block i is ``degree(i) * rot(theta_i)``."""
    _check_lengths(g, profile)
    n = g.n
    deg = degrees(g)
    out = np.zeros((2 * n, 2 * n))
    for i in range(n):
        out[2 * i : 2 * i + 2, 2 * i : 2 * i + 2] = deg[i] * rotation.rot(
            profile.theta[i]
        )
    return out


@dataclass(frozen=True)
class WeightedLaplacian:
    """Rotation-biased Laplacian together with its two factors.

    ``matrix`` equals ``factor_rotation @ factor_topology``: the block
    rotation applied to the plain topology Laplacian.  Built instances have
    passed the structural self-checks in :func:`build`.
    """

    n: int
    matrix: np.ndarray
    factor_rotation: np.ndarray
    factor_topology: np.ndarray


def build(g: Graph, profile: AngleProfile) -> WeightedLaplacian:
    """Construct the rotation-biased Laplacian (out-degree minus adjacency).

    Verifies on construction that the factorization into block rotation
    times topology Laplacian holds, that the two common-translation
    directions are annihilated, and that every row sums to zero.  Raises
    :class:`InternalConsistencyError` if any check fails.
    """
    _check_lengths(g, profile)
    n = g.n
    matrix = out_degree(g, profile) - adjacency(g, profile)
    factor_rotation = rotation.block_rotation(profile)
    factor_topology = topology_laplacian(g)

    residual = np.max(np.abs(matrix - factor_rotation @ factor_topology))
    if residual > SELF_CHECK_TOL:
        raise InternalConsistencyError(
            f"factorization residual {residual:.3e} exceeds {SELF_CHECK_TOL:.0e}"
        )
    for name, v in (("even", even_ones(n)), ("odd", odd_ones(n))):
        kernel_residual = np.max(np.abs(matrix @ v))
        if kernel_residual > SELF_CHECK_TOL:
            raise InternalConsistencyError(
                f"{name} translation direction not annihilated "
                f"(residual {kernel_residual:.3e})"
            )
    row_residual = np.max(np.abs(matrix.sum(axis=1)))
    if row_residual > SELF_CHECK_TOL:
        raise InternalConsistencyError(
            f"row sums deviate from zero by {row_residual:.3e}"
        )
    return WeightedLaplacian(n, matrix, factor_rotation, factor_topology)
