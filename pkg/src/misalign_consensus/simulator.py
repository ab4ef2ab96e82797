"""Fixed-step integration of the biased consensus dynamics.

The state obeys a linear autonomous system, so a classical fourth-order
Runge-Kutta step equals the degree-4 Taylor polynomial of the exact
transition map.  The simulator exploits that: it forms the one-step matrix
once, raises it to the recording stride, and iterates matrix-vector
products, which is algebraically identical to stepping and orders of
magnitude faster.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ScenarioError
from .graph import Graph
from .laplacian import WeightedLaplacian, build
from .rotation import AngleProfile

CONVERGENCE_TOL = 1e-6        # max pairwise distance counted as "met"
DIVERGENCE_FACTOR = 1e6       # threshold = factor * initial disagreement
STALL_WINDOW_FRACTION = 0.1   # trailing fraction of samples examined for a stall
STALL_TOL = 1e-3              # relative disagreement variation over the window
DEFAULT_HORIZON = 100.0
DEFAULT_STEP = 1e-3
DEFAULT_RECORD_STRIDE = 10
# Step-size cap: h * spectral_radius must stay below this (the real-axis
# stability interval of the integrator is about 2.785; keep a margin).
RK4_STABILITY_LIMIT = 2.5


@dataclass(frozen=True, eq=False)
class Scenario:
    """A simulation setup: topology, angles, initial positions, and timing."""

    graph: Graph
    profile: AngleProfile
    initial: np.ndarray
    horizon: float = DEFAULT_HORIZON
    step: float = DEFAULT_STEP
    label: str = ""
    theta_literals: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "initial", np.asarray(self.initial, dtype=float).ravel()
        )
        if len(self.profile) != self.graph.n:
            raise ScenarioError(
                f"scenario '{self.label}': {len(self.profile)} angles for "
                f"{self.graph.n} agents"
            )
        if self.initial.size != 2 * self.graph.n:
            raise ScenarioError(
                f"scenario '{self.label}': initial state has {self.initial.size} "
                f"components, expected {2 * self.graph.n}"
            )
        if not np.all(np.isfinite(self.initial)):
            raise ScenarioError(f"scenario '{self.label}': non-finite initial state")
        if not (self.horizon > 0):
            raise ScenarioError(f"scenario '{self.label}': horizon must be positive")
        if not (0 < self.step <= self.horizon):
            raise ScenarioError(
                f"scenario '{self.label}': step must satisfy 0 < h <= horizon"
            )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Scenario):
            return NotImplemented
        return (
            self.graph == other.graph
            and self.profile == other.profile
            and np.array_equal(self.initial, other.initial)
            and self.horizon == other.horizon
            and self.step == other.step
            and self.label == other.label
            and self.theta_literals == other.theta_literals
        )


@dataclass(frozen=True)
class Outcome:
    """Terminal verdict of a simulation run.

    ``kind`` is one of "converged", "diverged", "stalled", "horizon".
    ``point`` is the meeting point for converged runs; ``time`` is the
    sample time at which convergence or divergence was detected.
    """

    kind: str
    point: np.ndarray | None = None
    time: float | None = None


@dataclass(frozen=True)
class Trajectory:
    """Recorded samples of one run plus its outcome."""

    times: np.ndarray
    states: np.ndarray
    outcome: Outcome
    disagreement: np.ndarray


def spectral_radius(L: WeightedLaplacian) -> float:
    return float(np.max(np.abs(np.linalg.eigvals(L.matrix)))) if L.n else 0.0


def validate_step_bound(s: Scenario, L: WeightedLaplacian | None = None) -> None:
    """Reject step sizes outside the integrator's stability region."""
    if L is None:
        L = build(s.graph, s.profile)
    rho = spectral_radius(L)
    if s.step * rho > RK4_STABILITY_LIMIT:
        suggested = RK4_STABILITY_LIMIT / rho
        raise ScenarioError(
            f"scenario '{s.label}': step {s.step:g} exceeds the stability "
            f"bound for spectral radius {rho:.4g}; use h <= {suggested:.4g}"
        )


def step_rk4(L: WeightedLaplacian, p, h: float) -> np.ndarray:
    """One classical fourth-order Runge-Kutta step of the consensus flow.

    For this linear system the result equals the degree-4 Taylor
    polynomial of the exact transition map applied to ``p``.
    """
    if h <= 0:
        raise ValueError(f"step size must be positive, got {h}")
    p = np.asarray(p, dtype=float).ravel()
    m = L.matrix
    with np.errstate(over="ignore", invalid="ignore"):
        k1 = -(m @ p)
        k2 = -(m @ (p + 0.5 * h * k1))
        k3 = -(m @ (p + 0.5 * h * k2))
        k4 = -(m @ (p + h * k3))
        out = p + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    if not np.all(np.isfinite(out)):
        raise OverflowError("state became non-finite during the step")
    return out


def transition_matrix(L: WeightedLaplacian, h: float) -> np.ndarray:
    """One-step map of the integrator: degree-4 Taylor series of exp(-h L)."""
    hm = h * L.matrix
    eye = np.eye(2 * L.n)
    hm2 = hm @ hm
    return eye - hm + hm2 / 2.0 - (hm2 @ hm) / 6.0 + (hm2 @ hm2) / 24.0


def disagreement(state: np.ndarray, n: int) -> float:
    """Maximum pairwise inter-agent distance of a stacked state."""
    pos = np.asarray(state, dtype=float).reshape(n, 2)
    if n == 1:
        return 0.0
    diff = pos[:, None, :] - pos[None, :, :]
    return float(np.sqrt(np.max(np.sum(diff * diff, axis=-1))))


def _centroid(state: np.ndarray, n: int) -> np.ndarray:
    return np.asarray(state, dtype=float).reshape(n, 2).mean(axis=0)


def detect_outcome(disagreement_seq, state) -> Outcome:
    """Classify a finished run from its disagreement history.

    Converged if the last sample is within tolerance; diverged if it blew
    past the threshold relative to the initial disagreement; stalled if the
    trailing window is flat while still apart; otherwise the horizon simply
    ran out.
    """
    seq = np.asarray(disagreement_seq, dtype=float).ravel()
    if seq.size == 0:
        raise ValueError("disagreement sequence is empty")
    state = np.asarray(state, dtype=float).ravel()
    n = state.size // 2
    last = seq[-1]
    if last <= CONVERGENCE_TOL:
        return Outcome("converged", point=_centroid(state, n))
    if last >= DIVERGENCE_FACTOR * seq[0]:
        return Outcome("diverged")
    window = seq[-max(2, int(round(seq.size * STALL_WINDOW_FRACTION))) :]
    peak = float(window.max())
    if peak > 0 and (peak - float(window.min())) / peak < STALL_TOL:
        return Outcome("stalled")
    return Outcome("horizon")


def simulate(s: Scenario, record_stride: int = DEFAULT_RECORD_STRIDE) -> Trajectory:
    """Integrate a scenario, recording every ``record_stride`` steps.

    Terminates early once the agents meet (converged) or the disagreement
    exceeds its divergence threshold; numerical overflow also counts as
    divergence at the time it appears.
    """
    if record_stride < 1:
        raise ValueError("record_stride must be >= 1")
    L = build(s.graph, s.profile)
    validate_step_bound(s, L)
    n = s.graph.n

    n_steps = max(1, int(round(s.horizon / s.step)))
    whole, rest = divmod(n_steps, record_stride)
    phi = transition_matrix(L, s.step)
    phi_rec = np.linalg.matrix_power(phi, record_stride)
    chunks = [(phi_rec, record_stride)] * whole
    if rest:
        chunks.append((np.linalg.matrix_power(phi, rest), rest))

    p = s.initial.copy()
    d0 = disagreement(p, n)
    times = [0.0]
    states = [p.copy()]
    dis = [d0]
    outcome: Outcome | None = None
    threshold = DIVERGENCE_FACTOR * d0

    if d0 <= CONVERGENCE_TOL:
        outcome = Outcome("converged", point=_centroid(p, n), time=0.0)

    steps_done = 0
    if outcome is None:
        for mat, width in chunks:
            with np.errstate(over="ignore", invalid="ignore"):
                p = mat @ p
            steps_done += width
            t = steps_done * s.step
            if not np.all(np.isfinite(p)):
                outcome = Outcome("diverged", time=t)
                break
            d = disagreement(p, n)
            times.append(t)
            states.append(p.copy())
            dis.append(d)
            if d <= CONVERGENCE_TOL:
                outcome = Outcome("converged", point=_centroid(p, n), time=t)
                break
            if d >= threshold:
                outcome = Outcome("diverged", time=t)
                break
    if outcome is None:
        final = detect_outcome(dis, states[-1])
        if final.kind == "converged":
            final = Outcome("converged", point=final.point, time=times[-1])
        outcome = final
    return Trajectory(
        np.asarray(times), np.asarray(states), outcome, np.asarray(dis)
    )
