"""Eigenvalue analysis and stability classification of the biased Laplacian.

The sign pattern of the misalignment cosines gives closed-form verdicts:
all positive means convergence to consensus, all negative means divergence,
and all zero puts the spectrum on the imaginary axis.  Mixed-sign profiles
carry no general rule and are judged directly from the computed spectrum.
Block Gershgorin disks bound where the eigenvalues can sit in every case.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import EigensolverError, InternalConsistencyError
from .graph import Graph, degrees, is_connected, scalar_laplacian
from .laplacian import WeightedLaplacian, _check_lengths
from .rotation import AngleProfile, normalize_angle

# Modulus threshold for structural zeros, relative to the matrix 1-norm.
ZERO_TOL_REL = 1e-8
# Absolute threshold on real parts when classifying stability.
STABILITY_TOL = 1e-8
# Threshold on cos(theta) when selecting a closed-form classification route.
ANGLE_TOL = 1e-12
# Conjugate-pairing tolerance for the computed spectrum.
PAIR_TOL = 1e-9

KINDS = ("Consensus", "Divergent", "Oscillatory", "Indeterminate")
BASES = ("Theorem1", "Theorem3-negative", "Theorem3-imaginary", "Spectral")


@dataclass(frozen=True)
class StabilityClass:
    """Stability verdict plus the rule that produced it.

    ``basis`` records whether a closed-form angle condition applied
    ("Theorem1", "Theorem3-negative", "Theorem3-imaginary") or the verdict
    was read off the computed spectrum ("Spectral").  ``note`` is
    "marginal" when eigenvalues beyond the two structural zeros sit too
    close to the imaginary axis for a confident verdict.
    """

    kind: str
    basis: str
    note: str = ""


@dataclass(frozen=True)
class Spectrum:
    """All 2n eigenvalues, sorted by real then imaginary part."""

    eigenvalues: np.ndarray
    zero_count: int
    classification: StabilityClass


@dataclass(frozen=True)
class GershgorinRegion:
    """Union of per-agent eigenvalue-localization disks.

    Each agent with degree m and angle t contributes the conjugate disk
    pair centered at m*(cos t +/- j sin t) with radius m.
    """

    disks: tuple[tuple[complex, float], ...]

    def contains(self, lam: complex, slack: float = 1e-8) -> bool:
        """Whether ``lam`` lies in the disk union (boundary inclusive)."""
        return any(abs(lam - c) <= r + slack for c, r in self.disks)


def sort_spectrum(vals: np.ndarray) -> np.ndarray:
    """Deterministic eigenvalue ordering: ascending real part, then imaginary."""
    vals = np.asarray(vals, dtype=complex).ravel()
    return vals[np.lexsort((vals.imag, vals.real))]


def pair_conjugates(vals: np.ndarray, tol: float = PAIR_TOL) -> np.ndarray:
    """Enforce conjugate symmetry on the spectrum of a real matrix.

    Eigenvalues with imaginary part beyond ``tol`` are matched into
    conjugate pairs and each pair is replaced by its exact-conjugate
    canonical form.  An unpairable eigenvalue raises
    :class:`EigensolverError` rather than passing through silently.
    """
    vals = np.asarray(vals, dtype=complex).ravel()
    near_real = [v for v in vals if abs(v.imag) <= tol]
    upper = sorted((v for v in vals if v.imag > tol), key=lambda z: (z.real, z.imag))
    lower = [v for v in vals if v.imag < -tol]
    if len(upper) != len(lower):
        raise EigensolverError(
            f"complex eigenvalues do not pair up: {len(upper)} above vs "
            f"{len(lower)} below the real axis"
        )
    out = list(near_real)
    for u in upper:
        dists = [abs(np.conj(v) - u) for v in lower]
        k = int(np.argmin(dists))
        if dists[k] > tol:
            raise EigensolverError(
                f"no conjugate partner within {tol:.1e} for eigenvalue {u}"
            )
        v = lower.pop(k)
        re = 0.5 * (u.real + v.real)
        im = 0.5 * (u.imag - v.imag)
        out.extend([complex(re, im), complex(re, -im)])
    return np.asarray(out, dtype=complex)


def _spectral_classification(vals: np.ndarray, zero_tol: float) -> StabilityClass:
    zero_mask = np.abs(vals) <= zero_tol
    others = vals[~zero_mask]
    zero_count = int(zero_mask.sum())
    marginal = zero_count > 2 or bool(
        np.any(np.abs(others.real) <= STABILITY_TOL)
    )
    if np.any(others.real < -STABILITY_TOL):
        return StabilityClass("Divergent", "Spectral")
    if zero_count == 2 and (others.size == 0 or np.all(others.real > STABILITY_TOL)):
        return StabilityClass("Consensus", "Spectral")
    if np.all(np.abs(vals.real) <= STABILITY_TOL) and np.any(
        np.abs(others.imag) > STABILITY_TOL
    ):
        return StabilityClass("Oscillatory", "Spectral")
    return StabilityClass("Indeterminate", "Spectral", "marginal" if marginal else "")


def eigenvalues(L: WeightedLaplacian) -> Spectrum:
    """Full spectrum of the biased Laplacian via a dense eigensolver.

    Conjugate symmetry is enforced by post-processing; solver
    non-convergence surfaces as :class:`EigensolverError`, never as silent
    garbage.
    """
    m = np.asarray(L.matrix, dtype=float)
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains non-finite entries")
    try:
        vals = np.linalg.eigvals(m)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"eigenvalue iteration failed: {exc}") from exc
    vals = sort_spectrum(pair_conjugates(vals))
    zero_tol = ZERO_TOL_REL * np.linalg.norm(m, 1)
    zero_count = int(np.sum(np.abs(vals) <= zero_tol))
    return Spectrum(vals, zero_count, _spectral_classification(vals, zero_tol))


def rank(L: WeightedLaplacian, tol: float = 1e-9) -> int:
    """Numerical rank: singular values above ``tol`` times the largest one."""
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    s = np.linalg.svd(np.asarray(L.matrix, dtype=float), compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > tol * s[0]))


def gershgorin(g: Graph, profile: AngleProfile) -> GershgorinRegion:
    """Per-agent localization disks containing every Laplacian eigenvalue."""
    _check_lengths(g, profile)
    deg = degrees(g)
    disks: list[tuple[complex, float]] = []
    for i, t in enumerate(profile.theta):
        m = float(deg[i])
        re, im = m * np.cos(t), m * np.sin(t)
        disks.append((complex(re, im), m))
        disks.append((complex(re, -im), m))
    return GershgorinRegion(tuple(disks))


def _expect(condition: bool, route: str, spectral: StabilityClass, s: Spectrum) -> None:
    if not condition:
        raise InternalConsistencyError(
            f"{route} verdict contradicts spectral evidence "
            f"({spectral.kind}, zeros={s.zero_count}); this flags an "
            "eigensolver or analysis bug"
        )


def classify(g: Graph, profile: AngleProfile, s: Spectrum) -> StabilityClass:
    """Stability verdict for the system built from ``g`` and ``profile``.

    Uses the closed-form angle routes when every agent's cosine shares a
    sign (connected graphs with at least one edge); the route's claim is
    cross-checked against the computed spectrum and any contradiction is a
    hard error.  Mixed-sign, disconnected, edgeless, and marginal spectra
    fall back to the purely spectral verdict.
    """
    _check_lengths(g, profile)
    spectral = s.classification
    if spectral.kind == "Indeterminate" and spectral.note == "marginal":
        return spectral
    cosines = np.cos(profile.as_array())
    if is_connected(g) and len(g.edges) > 0:
        if np.all(cosines > ANGLE_TOL):
            _expect(spectral.kind == "Consensus", "all-positive-cosine", spectral, s)
            return StabilityClass("Consensus", "Theorem1")
        if np.all(cosines < -ANGLE_TOL):
            _expect(spectral.kind == "Divergent", "all-negative-cosine", spectral, s)
            return StabilityClass("Divergent", "Theorem3-negative")
        if np.all(np.abs(cosines) <= ANGLE_TOL):
            on_axis = bool(np.all(np.abs(s.eigenvalues.real) <= STABILITY_TOL))
            _expect(
                on_axis and spectral.kind == "Oscillatory",
                "all-zero-cosine",
                spectral,
                s,
            )
            return StabilityClass("Oscillatory", "Theorem3-imaginary")
    return spectral


def common_angle_spectrum(g: Graph, theta: float) -> np.ndarray:
    """Predicted spectrum when every agent shares one angle.

    Each eigenvalue of the scalar topology Laplacian appears rotated by
    ``+theta`` and by ``-theta``.
    """
    mu = np.linalg.eigvalsh(scalar_laplacian(g))
    z = np.exp(1j * theta)
    return sort_spectrum(np.concatenate([mu * z, mu * np.conj(z)]))


def two_agent_exact(theta1: float, theta2: float) -> np.ndarray:
    """Closed-form spectrum for a single connected agent pair."""
    lam = complex(
        np.cos(theta1) + np.cos(theta2), np.sin(theta1) + np.sin(theta2)
    )
    return sort_spectrum(np.array([0.0, 0.0, lam, np.conj(lam)], dtype=complex))


def two_agent_consensus(theta1: float, theta2: float) -> bool:
    """Exact consensus condition for two agents: positive cosine sum."""
    return np.cos(theta1) + np.cos(theta2) > 0.0


def three_agent_exact(theta1: float, theta2: float) -> np.ndarray:
    """Closed-form spectrum for a complete triangle with angles (t1, t2, t2)."""
    a = complex(3.0 * np.cos(theta2), 3.0 * np.sin(theta2))
    b = complex(
        2.0 * np.cos(theta1) + np.cos(theta2),
        2.0 * np.sin(theta1) + np.sin(theta2),
    )
    return sort_spectrum(
        np.array([0.0, 0.0, a, np.conj(a), b, np.conj(b)], dtype=complex)
    )


def three_agent_consensus(theta1: float, theta2: float) -> bool:
    """Exact consensus condition for the triangle with angles (t1, t2, t2)."""
    t2 = normalize_angle(theta2)
    return abs(t2) < np.pi / 2 and 2.0 * np.cos(theta1) + np.cos(t2) > 0.0


def match_eigenvalues(a, b) -> float:
    """Largest per-component distance under the optimal multiset matching.

    Spectra have no canonical ordering across algorithms, so comparison
    uses minimum-weight bipartite matching on pairwise distances.
    """
    a = np.asarray(a, dtype=complex).ravel()
    b = np.asarray(b, dtype=complex).ravel()
    if a.size != b.size:
        raise ValueError(f"spectra differ in size: {a.size} vs {b.size}")
    if a.size == 0:
        return 0.0
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())
